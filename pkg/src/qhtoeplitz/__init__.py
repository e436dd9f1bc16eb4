"""Quasihomogeneous Toeplitz operators on the Bergman and harmonic Bergman spaces.

Weighted-shift arithmetic on monomial bases, Mellin symbol calculus,
finite-rank detection with canonical forms, and executable classification
theorems for commutators and generalized semicommutators.
"""

__version__ = "0.1.0"

from .mellin import (GammaRatioTransform, MellinTransform, NotRational, RadialSymbol,  # noqa: E402
                     SymbolError, SymbolParseError, gamma_ratio_eval,
                     gamma_ratio_to_partial_fractions, mellin_convolve, monotonicity_certificate,
                     parse_symbol, t_function_classify)
from .operators import (CoeffMap, QHOperator, apply_bergman, apply_harmonic,  # noqa: E402
                        commutator_map, gen_semicommutator_map, lamre_check)
from .oracle import KernelEvaluator, quad_mellin, quad_projection_coeff  # noqa: E402
from .rank import (CanonicalTerm, RankReport, detect_rank, extract_canonical_form,  # noqa: E402
                   pairing_check, parity_and_bounds, rank_equivalence_check, svd_rank)
from .support import BERGMAN, COMMUTATOR, GENSEMI, HARMONIC, SupportWindow  # noqa: E402
from .theorems import (TheoremVerdict, classify_b_commutator, classify_b_gensemi,  # noqa: E402
                       classify_corollary, classify_h_commutator, classify_h_gensemi,
                       classify_symbols, rank_gap_check, cross_space_checks, cross_validate,
                       negative_control, verify_corollaries, verify_grid)
from .catalog import EXAMPLES, run_examples  # noqa: E402

import types as _types  # noqa: E402

__all__ = [n for n, v in list(globals().items())
           if not n.startswith("_") and not isinstance(v, _types.ModuleType)]

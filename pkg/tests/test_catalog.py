import pytest

from qhtoeplitz.catalog import (EXAMPLES, INTRO_CASES, commutator_m_example, gensemi_m_example,
                                parametric_sweep, run_example, run_examples)


@pytest.mark.parametrize("example", EXAMPLES + INTRO_CASES, ids=lambda e: e.name)
def test_example(example):
    r = run_example(example)
    assert r.passed, r.mismatch


def test_all_examples_summary():
    rep = run_examples()
    assert rep.passed and rep.summary == f"{len(EXAMPLES) + len(INTRO_CASES)}/{len(EXAMPLES) + len(INTRO_CASES)}"


def test_at_m_one():
    assert commutator_m_example(1.0).expected == pytest.approx({1: -2 / 3, 2: 2 / 3})
    e = gensemi_m_example(1.0)
    assert e.expected == pytest.approx({1: -1.0, 2: -1 / 3}) and run_example(e).passed


def test_parametric_families():
    assert parametric_sweep().passed


def test_family_domains():
    with pytest.raises(ValueError):
        commutator_m_example(-1.0)
    with pytest.raises(ValueError):
        gensemi_m_example(0.0)


def test_wrong_expectation_fails():
    e = EXAMPLES[0]
    bad = type(e)(e.name, e.space, e.kind, e.k1, e.sym1, e.k2, e.sym2, {0: 0.25, -2: -0.25})
    assert not run_example(bad).passed

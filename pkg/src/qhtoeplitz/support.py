"""Index thresholds and index sets bounding where products act nontrivially."""

from __future__ import annotations

from dataclasses import dataclass

COMMUTATOR = "commutator"
GENSEMI = "gensemi"
HARMONIC = "harmonic"
BERGMAN = "bergman"


def normalize_space(space: str) -> str:
    s = space.lower()
    if s in ("h", "harmonic", "l2h"):
        return HARMONIC
    if s in ("a", "b", "bergman", "l2a"):
        return BERGMAN
    raise ValueError(f"unknown space {space!r}")


@dataclass(frozen=True)
class SupportWindow:
    """N1, N2, N3 and the sets Lambda1, Lambda_half, Lambda2 for degrees (k1, k2)."""

    k1: int
    k2: int

    @property
    def K(self) -> int:
        return self.k1 + self.k2

    @property
    def N1(self) -> int:
        return max(0, -self.k1, -self.k2, -self.K)

    @property
    def N2(self) -> int:
        return max(0, -self.k2, -self.K)

    @property
    def N3(self) -> int:
        return max(0, self.k2, self.K)

    @property
    def symmetry_index(self) -> int | None:
        """Source index (-k1-k2)/2 that every harmonic commutator kills."""
        return -self.K // 2 if self.K % 2 == 0 else None

    @property
    def Lambda1(self) -> frozenset[int]:
        return frozenset(k for k in range(-self.N1 + 1, self.N1 + self.K)
                         if 2 * k != self.K)

    @property
    def LambdaHalf(self) -> frozenset[int]:
        return frozenset(k for k in range(-self.N1 + 1, self.N1 + self.K) if 2 * k > self.K)

    @property
    def Lambda2(self) -> frozenset[int]:
        return frozenset(range(-self.N3 + self.K + 1, self.N2 + self.K))

    def sources(self, kind: str, space: str) -> tuple[int, int]:
        """Inclusive source range outside of which the map must vanish (may be empty)."""
        space = normalize_space(space)
        if kind == COMMUTATOR:
            if space == HARMONIC:
                return -self.N1 - self.K + 1, self.N1 - 1
            return 0, self.N1 - 1
        if kind == GENSEMI:
            if space == HARMONIC:
                return -self.N3 + 1, self.N2 - 1
            return 0, self.N2 - 1
        raise ValueError(f"unknown kind {kind!r}")

    def allowed_range(self, kind: str, space: str) -> frozenset[int]:
        space = normalize_space(space)
        if space == HARMONIC:
            return self.Lambda1 if kind == COMMUTATOR else self.Lambda2
        lo, hi = self.sources(kind, space)
        return frozenset(n + self.K for n in range(lo, hi + 1) if n + self.K >= 0)

    def window(self, kind: str, space: str, margin: int = 20) -> tuple[int, int]:
        lo, hi = self.sources(kind, space)
        if normalize_space(space) == BERGMAN:
            return 0, max(hi, 0) + margin
        return min(lo, 0) - margin, max(hi, 0) + margin

"""Truncated Gelfand-Zetlin basis for the two-mode paraboson Fock space.

Basis states are labelled by integer patterns (m12, m22; m11) subject to the
betweenness conditions m12 >= m11 >= m22 >= 0.  Truncation keeps every pattern
with m12 <= cutoff, which leaves the retained set closed under the lowering
generators; raising generators can leave the set only through the m12 = cutoff
shell, and the operator builders in :mod:`parafock.algebra` track exactly
which source states are clipped that way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


def even_ind(n: int) -> int:
    """Indicator of n being even, extended to negative integers mod 2."""
    return 1 - (n % 2)


def odd_ind(n: int) -> int:
    """Indicator of n being odd, extended to negative integers mod 2."""
    return n % 2


class Weight(NamedTuple):
    """Joint eigenvalue of the two Cartan generators (h1, h2)."""

    w1: float
    w2: float


@dataclass(frozen=True)
class GZPattern:
    """Pattern (m12, m22; m11) with m12 >= m11 >= m22 >= 0."""

    m12: int
    m22: int
    m11: int

    def __post_init__(self) -> None:
        for name in ("m12", "m22", "m11"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        if not (self.m12 >= self.m11 >= self.m22 >= 0):
            raise ValueError(
                f"betweenness violated: need m12 >= m11 >= m22 >= 0, "
                f"got ({self.m12}, {self.m22}; {self.m11})"
            )

    @property
    def degree(self) -> int:
        """Total excitation m12 + m22; each raising step increases it by 1."""
        return self.m12 + self.m22

    def sort_key(self) -> tuple[int, int, int]:
        return (self.degree, self.m12, self.m11)


def weight_of(m: GZPattern, p: float) -> Weight:
    """Cartan weight of the basis state labelled by ``m`` at parameter ``p``."""
    return Weight(p / 2.0 + m.m11, p / 2.0 + m.m12 + m.m22 - m.m11)


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Ordered pattern set with p, the cutoff, and the index lookup table.

    Ordering is ascending in (degree, m12, m11), so index 0 is the vacuum
    pattern (0, 0; 0) and all states of equal degree are contiguous.
    """

    p: float
    cutoff: int
    patterns: tuple[GZPattern, ...]
    index: dict[GZPattern, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.patterns)

    def interior_indices(self, margin: int) -> list[int]:
        """Indices of patterns whose degree is at most cutoff - margin.

        Applying ``margin`` raising generators to such a state cannot reach
        the truncation shell, so operator identities built from at most
        ``margin`` generator factors hold exactly on these columns.
        """
        dmax = self.cutoff - margin
        return [i for i, m in enumerate(self.patterns) if m.degree <= dmax]

    def weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (w1, w2) of the Cartan weights in basis order."""
        w1 = np.array([self.p / 2.0 + m.m11 for m in self.patterns])
        w2 = np.array([self.p / 2.0 + m.m12 + m.m22 - m.m11 for m in self.patterns])
        return w1, w2


def enumerate_basis(p: float, cutoff: int) -> FockBasis:
    """Enumerate all patterns with m12 <= cutoff for a generic parameter p > 1.

    The pattern count is binomial(cutoff + 3, 3).
    """
    if not p > 1:
        raise ValueError(f"representation parameter must satisfy p > 1, got {p}")
    if isinstance(cutoff, bool) or not isinstance(cutoff, (int, np.integer)):
        raise TypeError(f"cutoff must be an integer, got {cutoff!r}")
    if cutoff < 0:
        raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
    patterns = sorted(
        (
            GZPattern(m12, m22, m11)
            for m12 in range(cutoff + 1)
            for m22 in range(m12 + 1)
            for m11 in range(m22, m12 + 1)
        ),
        key=GZPattern.sort_key,
    )
    index = {m: i for i, m in enumerate(patterns)}
    return FockBasis(p=float(p), cutoff=int(cutoff), patterns=tuple(patterns), index=index)


@dataclass(eq=False)
class FockVector:
    """Coefficient vector over a FockBasis."""

    basis: FockBasis
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.coefficients, dtype=np.complex128)
        if arr.shape != (self.basis.size,):
            raise ValueError(
                f"coefficient shape {arr.shape} does not match basis size {self.basis.size}"
            )
        self.coefficients = arr

    @classmethod
    def zero(cls, basis: FockBasis) -> "FockVector":
        return cls(basis, np.zeros(basis.size, dtype=np.complex128))

    @classmethod
    def unit(cls, basis: FockBasis, pattern: GZPattern) -> "FockVector":
        v = np.zeros(basis.size, dtype=np.complex128)
        v[basis.index[pattern]] = 1.0
        return cls(basis, v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def inner(self, other: "FockVector") -> complex:
        """Inner product, conjugate-linear in ``self``."""
        if other.basis is not self.basis and other.basis.size != self.basis.size:
            raise ValueError("vectors live on different bases")
        return complex(np.vdot(self.coefficients, other.coefficients))

    def copy(self) -> "FockVector":
        return FockVector(self.basis, self.coefficients.copy())

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.basis, self.coefficients + other.coefficients)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.basis, self.coefficients - other.coefficients)

    def __mul__(self, scalar: complex) -> "FockVector":
        return FockVector(self.basis, self.coefficients * scalar)

    __rmul__ = __mul__

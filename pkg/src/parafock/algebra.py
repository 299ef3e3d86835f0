"""Generator matrices of the paraboson algebra on the truncated basis.

The four odd generators act on a Gelfand-Zetlin pattern by moving one of
m12, m22 up or down by one while m11 follows the mode index; every matrix
element is a square root of an integer times one of two structure
coefficients.  All entry formulas self-regulate at the pattern boundaries:
whenever a move would leave the betweenness region the accompanying
coefficient vanishes identically, so the builders never store zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .fockspace import FockBasis, FockVector, GZPattern, even_ind, odd_ind

GENERATOR_NAMES = ("b1+", "b1-", "b2+", "b2-", "h1", "h2")

_BRACKET_KINDS = ("commutator", "anticommutator")


def structure_f(m12: int, m22: int, p: float) -> tuple[float, float]:
    """Structure coefficients (f1, f2) at pattern row (m12, m22).

    f1 carries the sign (-1)**m22; both are real for p > 1.  The parity
    indicators switch the p dependence on and off between adjacent rows.
    """
    if m12 < m22 or m22 < 0:
        raise ValueError(f"need m12 >= m22 >= 0, got ({m12}, {m22})")
    if not p > 1:
        raise ValueError(f"need p > 1, got {p}")
    sign = -1.0 if m22 % 2 else 1.0
    f1 = sign * math.sqrt(
        (m12 + 2 + even_ind(m12) * (p - 2)) / (m12 - m22 + 1 + odd_ind(m12 - m22))
    )
    f2 = math.sqrt(
        (m22 + 1 + even_ind(m22) * (p - 2)) / (m12 - m22 + 1 - odd_ind(m12 - m22))
    )
    return f1, f2


class SparseOperator:
    """Column-indexed sparse matrix on a FockBasis-sized space.

    ``boundary_rows`` records the source indices whose raising image crossed
    the cutoff shell and was clipped; columns listed there are inexact and
    every verification routine restricts itself to interior columns instead.
    """

    __slots__ = ("dim", "_cols", "boundary_rows")

    def __init__(self, dim: int, cols: list[dict[int, complex]], boundary_rows=frozenset()):
        if len(cols) != dim:
            raise ValueError(f"expected {dim} columns, got {len(cols)}")
        self.dim = dim
        self._cols = cols
        self.boundary_rows = frozenset(boundary_rows)

    @classmethod
    def zero(cls, dim: int) -> "SparseOperator":
        return cls(dim, [dict() for _ in range(dim)])

    @classmethod
    def from_entries(cls, dim: int, entries, boundary_rows=frozenset()) -> "SparseOperator":
        cols: list[dict[int, complex]] = [dict() for _ in range(dim)]
        for row, col, value in entries:
            if value != 0:
                cols[col][row] = cols[col].get(row, 0.0) + value
        return cls(dim, cols, boundary_rows)

    @property
    def entries(self) -> list[tuple[int, int, complex]]:
        """All stored entries as (row, col, value), sorted by (col, row)."""
        out = []
        for col, column in enumerate(self._cols):
            for row in sorted(column):
                out.append((row, col, column[row]))
        return out

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def column(self, col: int) -> dict[int, complex]:
        return dict(self._cols[col])

    def apply(self, vec):
        """Matrix-vector product; accepts and returns FockVector or ndarray."""
        if isinstance(vec, FockVector):
            return FockVector(vec.basis, self.apply(vec.coefficients))
        x = np.asarray(vec)
        if x.shape != (self.dim,):
            raise ValueError(f"vector shape {x.shape} does not match dim {self.dim}")
        y = np.zeros(self.dim, dtype=np.complex128)
        for col, column in enumerate(self._cols):
            xc = x[col]
            if xc == 0 or not column:
                continue
            for row, value in column.items():
                y[row] += value * xc
        return y

    def adjoint(self) -> "SparseOperator":
        cols: list[dict[int, complex]] = [dict() for _ in range(self.dim)]
        for col, column in enumerate(self._cols):
            for row, value in column.items():
                cols[row][col] = np.conjugate(value) if isinstance(value, complex) else value
        return SparseOperator(self.dim, cols, self.boundary_rows)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols: list[dict[int, complex]] = [dict() for _ in range(self.dim)]
        for col, bcol in enumerate(other._cols):
            if not bcol:
                continue
            out = cols[col]
            for k, bv in bcol.items():
                for row, av in self._cols[k].items():
                    s = out.get(row, 0.0) + av * bv
                    if s == 0:
                        out.pop(row, None)
                    else:
                        out[row] = s
        return SparseOperator(self.dim, cols, self.boundary_rows | other.boundary_rows)

    def _combine(self, other: "SparseOperator", sign: float) -> "SparseOperator":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols = [dict(c) for c in self._cols]
        for col, column in enumerate(other._cols):
            out = cols[col]
            for row, value in column.items():
                s = out.get(row, 0.0) + sign * value
                if s == 0:
                    out.pop(row, None)
                else:
                    out[row] = s
        return SparseOperator(self.dim, cols, self.boundary_rows | other.boundary_rows)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return self._combine(other, 1.0)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self._combine(other, -1.0)

    def __mul__(self, scalar) -> "SparseOperator":
        cols = [
            {row: scalar * value for row, value in column.items()}
            for column in self._cols
        ]
        return SparseOperator(self.dim, cols, self.boundary_rows)

    __rmul__ = __mul__

    def __neg__(self) -> "SparseOperator":
        return self * (-1.0)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for col, column in enumerate(self._cols):
            for row, value in column.items():
                dense[row, col] = value
        return dense

    def max_abs(self, columns=None) -> float:
        """Largest entry magnitude, optionally over a subset of columns."""
        cols = range(self.dim) if columns is None else columns
        best = 0.0
        for col in cols:
            for value in self._cols[col].values():
                mag = abs(value)
                if mag > best:
                    best = mag
        return best


def build_generator(basis: FockBasis, name: str) -> SparseOperator:
    """Matrix of one generator in the pattern basis.

    ``name`` is one of b1+, b1-, b2+, b2-, h1, h2.  Raising entries that
    would cross the cutoff are dropped and the source index is recorded in
    ``boundary_rows``; lowering and Cartan generators are always exact.
    """
    if name not in GENERATOR_NAMES:
        raise ValueError(f"unknown generator {name!r}; expected one of {GENERATOR_NAMES}")
    p = basis.p
    cols: list[dict[int, complex]] = [dict() for _ in range(basis.size)]
    boundary: set[int] = set()

    for c, m in enumerate(basis.patterns):
        col = cols[c]
        if name == "h1":
            col[c] = p / 2.0 + m.m11
            continue
        if name == "h2":
            col[c] = p / 2.0 + m.m12 + m.m22 - m.m11
            continue

        if name == "b1+":
            if m.m12 + 1 <= basis.cutoff:
                f1, _ = structure_f(m.m12, m.m22, p)
                target = GZPattern(m.m12 + 1, m.m22, m.m11 + 1)
                col[basis.index[target]] = math.sqrt(m.m11 - m.m22 + 1) * f1
            else:
                boundary.add(c)
            if m.m12 > m.m11:
                _, f2 = structure_f(m.m12, m.m22, p)
                target = GZPattern(m.m12, m.m22 + 1, m.m11 + 1)
                col[basis.index[target]] = -math.sqrt(m.m12 - m.m11) * f2
        elif name == "b2+":
            if m.m12 + 1 <= basis.cutoff:
                f1, _ = structure_f(m.m12, m.m22, p)
                target = GZPattern(m.m12 + 1, m.m22, m.m11)
                col[basis.index[target]] = math.sqrt(m.m12 - m.m11 + 1) * f1
            else:
                boundary.add(c)
            if m.m11 > m.m22:
                _, f2 = structure_f(m.m12, m.m22, p)
                target = GZPattern(m.m12, m.m22 + 1, m.m11)
                col[basis.index[target]] = math.sqrt(m.m11 - m.m22) * f2
        elif name == "b1-":
            if m.m11 > m.m22:
                f1, _ = structure_f(m.m12 - 1, m.m22, p)
                target = GZPattern(m.m12 - 1, m.m22, m.m11 - 1)
                col[basis.index[target]] = math.sqrt(m.m11 - m.m22) * f1
            if m.m22 >= 1:
                _, f2 = structure_f(m.m12, m.m22 - 1, p)
                target = GZPattern(m.m12, m.m22 - 1, m.m11 - 1)
                col[basis.index[target]] = -math.sqrt(m.m12 - m.m11 + 1) * f2
        elif name == "b2-":
            if m.m12 > m.m11:
                f1, _ = structure_f(m.m12 - 1, m.m22, p)
                target = GZPattern(m.m12 - 1, m.m22, m.m11)
                col[basis.index[target]] = math.sqrt(m.m12 - m.m11) * f1
            if m.m22 >= 1:
                _, f2 = structure_f(m.m12, m.m22 - 1, p)
                target = GZPattern(m.m12, m.m22 - 1, m.m11)
                col[basis.index[target]] = math.sqrt(m.m11 - m.m22 + 1) * f2

    return SparseOperator(basis.size, cols, frozenset(boundary))


def bracket(a: SparseOperator, b: SparseOperator, kind: str) -> SparseOperator:
    """Commutator or anticommutator of two operators."""
    if kind not in _BRACKET_KINDS:
        raise ValueError(f"kind must be one of {_BRACKET_KINDS}, got {kind!r}")
    ab = a @ b
    ba = b @ a
    return ab + ba if kind == "anticommutator" else ab - ba


@dataclass(frozen=True)
class RelationDeviation:
    """Deviation of one triple relation, identified by signs and mode indices."""

    xi: int
    eta: int
    eps: int
    j: int
    k: int
    l: int
    deviation: float


@dataclass(frozen=True)
class TripleReport:
    relations: tuple[RelationDeviation, ...]
    max_deviation: float
    interior_degree: int
    tol: float
    passed: bool


def verify_triple_relations(basis: FockBasis, tol: float = 1e-12) -> TripleReport:
    """Check [{b_j^xi, b_k^eta}, b_l^eps] = (eps-xi) d_jl b_k^eta + (eps-eta) d_kl b_j^xi.

    All 64 sign and index combinations are evaluated on interior columns
    (degree <= cutoff - 3), where the threefold product is exact.
    """
    gens = {
        (mode, sign): build_generator(basis, f"b{mode}{'+' if sign > 0 else '-'}")
        for mode in (1, 2)
        for sign in (-1, 1)
    }
    interior = basis.interior_indices(3)
    zero = SparseOperator.zero(basis.size)
    results = []
    worst = 0.0
    for (j, xi), (k, eta) in product(gens.keys(), repeat=2):
        anti = bracket(gens[(j, xi)], gens[(k, eta)], "anticommutator")
        for (l, eps) in gens.keys():
            lhs = bracket(anti, gens[(l, eps)], "commutator")
            rhs = zero
            if l == j and eps != xi:
                rhs = rhs + float(eps - xi) * gens[(k, eta)]
            if l == k and eps != eta:
                rhs = rhs + float(eps - eta) * gens[(j, xi)]
            dev = (lhs - rhs).max_abs(columns=interior)
            results.append(RelationDeviation(xi, eta, eps, j, k, l, dev))
            worst = max(worst, dev)
    return TripleReport(
        relations=tuple(results),
        max_deviation=worst,
        interior_degree=basis.cutoff - 3,
        tol=tol,
        passed=worst <= tol,
    )


def adjointness_deviation(basis: FockBasis) -> float:
    """Largest entry of adjoint(b_j^+) - b_j^- over both modes.

    Exact on the whole truncated basis, including the cutoff shell: the
    clipped raising entries pair with lowering entries from patterns outside
    the basis, so no retained matrix element is affected.
    """
    worst = 0.0
    for mode in (1, 2):
        plus = build_generator(basis, f"b{mode}+")
        minus = build_generator(basis, f"b{mode}-")
        worst = max(worst, (plus.adjoint() - minus).max_abs())
    return worst


def pair_anticommutator_deviation(basis: FockBasis) -> float:
    """Largest interior entry of {b_j^-, b_j^+} - 2 h_j over both modes."""
    interior = basis.interior_indices(2)
    worst = 0.0
    for mode in (1, 2):
        plus = build_generator(basis, f"b{mode}+")
        minus = build_generator(basis, f"b{mode}-")
        h = build_generator(basis, f"h{mode}")
        dev = (bracket(minus, plus, "anticommutator") - 2.0 * h).max_abs(columns=interior)
        worst = max(worst, dev)
    return worst


def t1_inverse_apply(vec: FockVector, zeta1: float) -> FockVector:
    """Apply the inverse of T1 = b1- b1+ on the ladder span above weight zeta1.

    T1 acts diagonally in the h1 grading: a component with h1 weight
    zeta1 + n is divided by n + 1 + E_n (2 zeta1 - 1).  Every populated
    component must sit at a nonnegative integer offset n from zeta1.
    """
    basis = vec.basis
    j_float = zeta1 - basis.p / 2.0
    j = round(j_float)
    if j < 0 or abs(j_float - j) > 1e-9:
        raise ValueError(
            f"zeta1 = {zeta1} is not of the form p/2 + j for integer j >= 0 at p = {basis.p}"
        )
    twoz = 2.0 * zeta1 - 1.0
    out = vec.coefficients.copy()
    for i, m in enumerate(basis.patterns):
        if out[i] == 0:
            continue
        n = m.m11 - j
        if n < 0:
            raise ValueError(
                f"populated component at pattern {m} lies below the ladder floor m11 = {j}"
            )
        eigenvalue = (n + 1.0 + twoz) if n % 2 == 0 else (n + 1.0)
        out[i] /= eigenvalue
    return FockVector(basis, out)

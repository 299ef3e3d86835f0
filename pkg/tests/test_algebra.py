"""Tests for generator matrices and the defining algebraic relations."""

import math

import numpy as np
import pytest

from parafock import (
    FockVector,
    GZPattern,
    SparseOperator,
    adjointness_deviation,
    bracket,
    build_generator,
    enumerate_basis,
    pair_anticommutator_deviation,
    structure_f,
    t1_inverse_apply,
    verify_triple_relations,
    zero_mode_vector,
)

RELATION_TOL = 1e-12
ENTRY_TOL = 1e-13
P_TEST = 2.7


def test_structure_f_known_values():
    for p in (1.3, 2.0, 3.0, 4.7):
        f1, f2 = structure_f(0, 0, p)
        assert abs(f1 - math.sqrt(p)) < ENTRY_TOL
        assert abs(f2 - math.sqrt(p - 1.0)) < ENTRY_TOL
        f1, _ = structure_f(1, 0, p)
        assert abs(f1 - 1.0) < ENTRY_TOL
        f1, _ = structure_f(1, 1, p)
        assert abs(f1 + math.sqrt(3.0)) < ENTRY_TOL


def test_structure_f_rejects_bad_rows():
    with pytest.raises(ValueError):
        structure_f(1, 2, 3.0)
    with pytest.raises(ValueError):
        structure_f(2, -1, 3.0)
    with pytest.raises(ValueError):
        structure_f(0, 0, 1.0)


def test_b1_plus_vacuum_column():
    basis = enumerate_basis(3.0, 4)
    op = build_generator(basis, "b1+")
    column = op.column(0)
    target = basis.index[GZPattern(1, 0, 1)]
    assert set(column) == {target}
    assert abs(column[target] - math.sqrt(3.0)) < ENTRY_TOL


def test_cartan_generators_are_the_weights():
    basis = enumerate_basis(P_TEST, 5)
    w1, w2 = basis.weights()
    h1 = build_generator(basis, "h1")
    h2 = build_generator(basis, "h2")
    for i in range(basis.size):
        assert h1.column(i) == {i: w1[i]}
        assert h2.column(i) == {i: w2[i]}


def test_adjoint_is_an_involution():
    basis = enumerate_basis(P_TEST, 4)
    op = build_generator(basis, "b2+")
    assert (op.adjoint().adjoint() - op).max_abs() == 0.0


def test_raising_adjoint_equals_lowering_exactly():
    # identical square-root expressions on both sides, so the deviation is 0.0
    for p in (1.3, 2.0, 2.5, 4.7):
        basis = enumerate_basis(p, 6)
        assert adjointness_deviation(basis) == 0.0


def test_pair_anticommutator_is_twice_cartan():
    for p in (1.3, 2.5, 4.7):
        basis = enumerate_basis(p, 6)
        assert pair_anticommutator_deviation(basis) <= RELATION_TOL


def test_triple_relations_report():
    basis = enumerate_basis(P_TEST, 6)
    report = verify_triple_relations(basis, tol=RELATION_TOL)
    assert report.passed
    assert len(report.relations) == 64
    assert report.interior_degree == 3
    assert report.max_deviation <= RELATION_TOL


def test_cartan_commutators_grade_the_odd_generators():
    # [h_j, b_j^+-] = +- b_j^+- holds entrywise on every stored entry
    basis = enumerate_basis(P_TEST, 5)
    for mode in (1, 2):
        h = build_generator(basis, f"h{mode}")
        for sign, expect in (("+", 1.0), ("-", -1.0)):
            b = build_generator(basis, f"b{mode}{sign}")
            dev = (bracket(h, b, "commutator") - expect * b).max_abs()
            assert dev <= RELATION_TOL, (mode, sign)


def test_b2_squared_commutes_with_mode_one():
    basis = enumerate_basis(P_TEST, 7)
    interior = basis.interior_indices(3)
    for square_sign in ("+", "-"):
        b2 = build_generator(basis, f"b2{square_sign}")
        b2sq = b2 @ b2
        for other in ("b1+", "b1-"):
            b1 = build_generator(basis, other)
            dev = bracket(b2sq, b1, "commutator").max_abs(columns=interior)
            assert dev <= RELATION_TOL, (square_sign, other)


def test_lowering_chain_on_the_ladder():
    # b1- (b1+)^n zeta = (n + O_n (2 zeta1 - 1)) (b1+)^(n-1) zeta
    p = 2.5
    basis = enumerate_basis(p, 10)
    b1p = build_generator(basis, "b1+")
    b1m = build_generator(basis, "b1-")
    for (j, k) in ((0, 0), (1, 2), (2, 3)):
        zeta1 = p / 2.0 + j
        vec = zero_mode_vector(basis, j, k)
        powers = [vec]
        for _ in range(basis.cutoff - k - j - 1):
            powers.append(b1p.apply(powers[-1]))
        for n in range(1, len(powers) - 1):
            coeff = n + (n % 2) * (2.0 * zeta1 - 1.0)
            dev = (b1m.apply(powers[n]) - coeff * powers[n - 1]).norm()
            assert dev <= 1e-10 * max(1.0, powers[n].norm()), (j, k, n)


def test_t1_inverse_divisors():
    # offset 0 divides by 2 zeta1, offset 1 divides by 2
    p = 3.0
    j, k = 1, 1
    basis = enumerate_basis(p, 8)
    zeta1 = p / 2.0 + j
    b1p = build_generator(basis, "b1+")
    vec = zero_mode_vector(basis, j, k)
    out = t1_inverse_apply(vec, zeta1)
    assert (out - (1.0 / (2.0 * zeta1)) * vec).norm() <= ENTRY_TOL
    lifted = b1p.apply(vec)
    out = t1_inverse_apply(lifted, zeta1)
    assert (out - 0.5 * lifted).norm() <= ENTRY_TOL


def test_t1_inverse_inverts_t1():
    p = 2.5
    basis = enumerate_basis(p, 9)
    b1p = build_generator(basis, "b1+")
    b1m = build_generator(basis, "b1-")
    j, k = 1, 2
    zeta1 = p / 2.0 + j
    vec = zero_mode_vector(basis, j, k)
    mixed = vec + 0.7 * b1p.apply(vec) + (0.2 - 0.1j) * b1p.apply(b1p.apply(vec))
    image = b1m.apply(b1p.apply(mixed))
    recovered = t1_inverse_apply(image, zeta1)
    assert (recovered - mixed).norm() <= 1e-12


def test_t1_inverse_rejects_misaligned_weight():
    basis = enumerate_basis(2.5, 3)
    vec = FockVector.unit(basis, GZPattern(0, 0, 0))
    with pytest.raises(ValueError):
        t1_inverse_apply(vec, 2.5 / 2.0 + 0.37)


def test_operator_algebra_consistency():
    basis = enumerate_basis(P_TEST, 4)
    a = build_generator(basis, "b1+")
    b = build_generator(basis, "b2-")
    left = (a + b).to_dense()
    assert np.allclose(left, a.to_dense() + b.to_dense(), atol=0, rtol=0)
    prod = (a @ b).to_dense()
    assert np.max(np.abs(prod - a.to_dense() @ b.to_dense())) <= 1e-13
    assert (2.0 * a - a - a).max_abs() == 0.0


def test_from_entries_accumulates():
    op = SparseOperator.from_entries(3, [(0, 1, 1.0), (0, 1, 0.5), (2, 0, -1.0)])
    assert op.column(1) == {0: 1.5}
    assert op.column(0) == {2: -1.0}
    assert op.nnz == 2

"""Tests for lowering-kernel vectors, ladder states, and squared-shift scalars."""

import math

import numpy as np
import pytest

from parafock import (
    b2sq_shift,
    build_generator,
    enumerate_basis,
    even_ind,
    kernel_oracle,
    ladder_family,
    ladder_normalization,
    ladder_state,
    ladder_step,
    odd_ind,
    zero_mode_coeffs,
    zero_mode_vector,
)

EXACT_TOL = 1e-14
RESIDUAL_TOL = 1e-12
GRAM_TOL = 1e-12

P_GRID = (1.3, 2.0, 2.5, 3.0, 4.7)

# frozen from an exact-arithmetic nullspace of the restricted lowering block
FROZEN_COEFFS = {
    (1, 1, 3.0): (math.sqrt(3.0) / 3.0, math.sqrt(6.0) / 3.0),
    (1, 2, 2.5): (math.sqrt(15.0) / 5.0, math.sqrt(10.0) / 5.0),
    (2, 3, 3.0): (math.sqrt(105.0) / 15.0, -2.0 * math.sqrt(21.0) / 15.0, -0.4),
}


def test_trivial_and_telescoping_cases():
    for p in P_GRID:
        np.testing.assert_allclose(zero_mode_coeffs(0, 0, p), [1.0], atol=EXACT_TOL)
        np.testing.assert_allclose(zero_mode_coeffs(0, 1, p), [1.0], atol=EXACT_TOL)
        np.testing.assert_allclose(zero_mode_coeffs(0, 5, p), [1.0], atol=EXACT_TOL)


def test_frozen_exact_coefficients():
    for (j, k, p), expected in FROZEN_COEFFS.items():
        got = zero_mode_coeffs(j, k, p)
        np.testing.assert_allclose(got, expected, rtol=0, atol=EXACT_TOL)


def test_normalization_identity():
    for p in P_GRID:
        for k in range(9):
            for j in range(k + 1):
                c = zero_mode_coeffs(j, k, p)
                assert abs(float(np.dot(c, c)) - 1.0) <= RESIDUAL_TOL, (j, k, p)


def test_rejects_j_above_k():
    with pytest.raises(ValueError):
        zero_mode_coeffs(2, 1, 3.0)


def test_two_term_recursion():
    # c_(i+1)/c_i ratio displayed in the kernel-construction proof
    for p in (1.3, 2.5, 3.0):
        for k in range(2, 8):
            for j in range(1, k + 1):
                c = zero_mode_coeffs(j, k, p)
                for i in range(j):
                    sign = (-1.0) ** (j - i - 1)
                    num = (
                        (k + i - j + 1)
                        * (j - i + even_ind(j - i - 1) * (p - 2.0))
                        * (k - j + 2 * i + 2 + odd_ind(k + j - 1))
                    )
                    den = (
                        (i + 1)
                        * (k + i + 2 + even_ind(k + i) * (p - 2.0))
                        * (k - j + 2 * i + 2 - odd_ind(k + j - 1))
                    )
                    expected = sign * math.sqrt(num / den) * c[i]
                    assert abs(c[i + 1] - expected) <= 1e-13, (p, j, k, i)


def test_annihilation_and_weight_support():
    p = 2.5
    basis = enumerate_basis(p, 9)
    b1m = build_generator(basis, "b1-")
    for (j, k) in ((0, 0), (1, 1), (1, 3), (2, 4), (3, 5)):
        vec = zero_mode_vector(basis, j, k)
        assert abs(vec.norm() - 1.0) <= RESIDUAL_TOL
        assert b1m.apply(vec).norm() <= RESIDUAL_TOL
        for idx in np.nonzero(vec.coefficients)[0]:
            m = basis.patterns[idx]
            assert m.m11 == j and m.degree == k + j


def test_zero_modes_are_orthonormal_across_families():
    p = 3.0
    basis = enumerate_basis(p, 8)
    family = [(j, k) for k in range(4) for j in range(k + 1)]
    vectors = [zero_mode_vector(basis, j, k) for j, k in family]
    for a, va in enumerate(vectors):
        for b, vb in enumerate(vectors):
            expected = 1.0 if a == b else 0.0
            assert abs(va.inner(vb) - expected) <= GRAM_TOL


def test_kernel_oracle_dimensions():
    basis = enumerate_basis(2.5, 8)
    assert kernel_oracle(basis, 0, 0)[0] == 1
    assert kernel_oracle(basis, 2, 1)[0] == 0
    assert kernel_oracle(basis, 3, 2)[0] == 0
    for k in range(4):
        for j in range(k + 1):
            assert kernel_oracle(basis, j, k)[0] == 1, (j, k)


def test_kernel_oracle_spans_the_constructed_vector():
    basis = enumerate_basis(2.5, 6)
    dim, vectors = kernel_oracle(basis, 1, 3)
    assert dim == 1
    vec = zero_mode_vector(basis, 1, 3)
    overlap = abs(vectors[0].inner(vec))
    assert abs(overlap - 1.0) <= 1e-10


def test_ladder_step_and_normalization():
    p, j = 2.5, 1
    nu = p / 2.0 + j
    for n in range(8):
        expected = math.sqrt(n + p + 2 * j) if n % 2 == 0 else math.sqrt(n + 1.0)
        assert ladder_step(p, j, n) == expected
    # pi_2m = 2^2m m! (nu)_m and pi_(2m+1) = 2^(2m+1) m! (nu)_(m+1)
    for m in range(4):
        poch = math.gamma(nu + m) / math.gamma(nu)
        even_sq = 4.0**m * math.factorial(m) * poch
        odd_sq = 2.0 * even_sq * (nu + m)
        assert ladder_normalization(p, j, 2 * m) == pytest.approx(math.sqrt(even_sq), rel=1e-13)
        assert ladder_normalization(p, j, 2 * m + 1) == pytest.approx(math.sqrt(odd_sq), rel=1e-13)


def test_ladder_raising_action():
    # b1+ |zeta;n> = sqrt((p+2j) E_n + n + O_n) |zeta;n+1>
    p = 3.0
    basis = enumerate_basis(p, 10)
    b1p = build_generator(basis, "b1+")
    for (j, k) in ((0, 0), (1, 2)):
        family = ladder_family(basis, j, k, basis.cutoff - k - j)
        for n in range(len(family) - 1):
            coeff = (p + 2.0 * j) * even_ind(n) + n + odd_ind(n)
            dev = (b1p.apply(family[n]) - math.sqrt(coeff) * family[n + 1]).norm()
            assert dev <= RESIDUAL_TOL, (j, k, n)


def test_ladder_family_is_orthonormal():
    p = 2.5
    basis = enumerate_basis(p, 9)
    family = ladder_family(basis, 1, 1, 7)
    gram = np.array([[u.inner(v) for v in family] for u in family])
    np.testing.assert_allclose(gram, np.eye(len(family)), atol=GRAM_TOL)


def test_ladder_state_matches_family():
    p = 2.5
    basis = enumerate_basis(p, 7)
    family = ladder_family(basis, 0, 1, 4)
    one = ladder_state(basis, 0, 1, 3)
    assert (one - family[3]).norm() == 0.0


def test_ladder_family_rejects_small_cutoff():
    basis = enumerate_basis(2.5, 4)
    with pytest.raises(ValueError):
        ladder_family(basis, 1, 2, 3)


def test_b2sq_shift_values():
    for p in P_GRID:
        assert b2sq_shift(0, 2, p, "lower") == pytest.approx(math.sqrt(2.0 * p), rel=1e-14)
        assert b2sq_shift(0, 0, p, "lower") == 0.0
        assert b2sq_shift(1, 2, p, "lower") == 0.0
    with pytest.raises(ValueError):
        b2sq_shift(0, 0, 2.5, "sideways")


def test_b2sq_shift_matches_matrix_action():
    p = 2.7
    basis = enumerate_basis(p, 9)
    b2p = build_generator(basis, "b2+")
    b2m = build_generator(basis, "b2-")
    for (j, k) in ((0, 0), (0, 2), (1, 1), (1, 3), (2, 4)):
        vec = zero_mode_vector(basis, j, k)
        up = b2p.apply(b2p.apply(vec))
        target = zero_mode_vector(basis, j, k + 2)
        assert (up - b2sq_shift(j, k, p, "raise") * target).norm() <= RESIDUAL_TOL
        down = b2m.apply(b2m.apply(vec))
        if k - j >= 2:
            target = zero_mode_vector(basis, j, k - 2)
            assert (down - b2sq_shift(j, k, p, "lower") * target).norm() <= RESIDUAL_TOL
        else:
            assert down.norm() <= RESIDUAL_TOL


def test_b2sq_raise_then_lower_is_the_diagonal_product():
    p = 3.3
    basis = enumerate_basis(p, 8)
    b2p = build_generator(basis, "b2+")
    b2m = build_generator(basis, "b2-")
    for (j, k) in ((0, 0), (1, 1), (1, 2)):
        vec = zero_mode_vector(basis, j, k)
        cycled = b2m.apply(b2m.apply(b2p.apply(b2p.apply(vec))))
        scalar = b2sq_shift(j, k + 2, p, "lower") * b2sq_shift(j, k, p, "raise")
        assert (cycled - scalar * vec).norm() <= 1e-11 * max(1.0, abs(scalar))

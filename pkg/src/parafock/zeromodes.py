"""Zero modes of the first lowering generator and the raising ladder above them.

For each weight (p/2 + j, p/2 + k) with 0 <= j <= k there is exactly one
normalized state annihilated by b1-; it is supported on the j + 1 patterns
(k + i, j - i; j).  Repeated application of b1+ turns each zero mode into an
orthonormal ladder indexed by the rung number n, and the squared second-mode
lowering generator shifts k by two with a scalar coefficient.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import SparseOperator, build_generator
from .fockspace import FockBasis, FockVector, GZPattern, even_ind, odd_ind


def _validate_family(j: int, k: int, p: float) -> None:
    if isinstance(j, bool) or isinstance(k, bool):
        raise TypeError("j and k must be integers")
    if not isinstance(j, (int, np.integer)) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"j and k must be integers, got {j!r}, {k!r}")
    if not (0 <= j <= k):
        raise ValueError(f"need 0 <= j <= k, got j = {j}, k = {k}")
    if not p > 1:
        raise ValueError(f"need p > 1, got {p}")


def zero_mode_coeffs(j: int, k: int, p: float) -> np.ndarray:
    """Coefficients c_i of the zero mode on patterns (k + i, j - i; j), i = 0..j.

    Evaluated in log space with the sign tracked separately; every ratio
    under the square roots is positive for p > 1, and c_0 > 0 fixes the
    overall sign.  The result is unit normalized.
    """
    _validate_family(j, k, p)
    base = 0.0
    for r in range(k - j + 1):
        num = r + 1 + odd_ind(r) * (p - 2 + 2 * j)
        den = k + 1 - r + odd_ind(k - r) * (p - 2)
        base += math.log(num) - math.log(den)

    coeffs = np.empty(j + 1)
    parity_kj = odd_ind(k + j - 1)
    step_sum = 0.0
    sign = 1.0
    log_binom_den = math.lgamma(k - j + 1)
    for i in range(j + 1):
        if i > 0:
            s = i
            num = (j + 1 - s + even_ind(j - s) * (p - 2)) * (k - j + 2 * s + parity_kj)
            den = (k + 1 + s + even_ind(k + s - 1) * (p - 2)) * (k - j + 2 * s - parity_kj)
            step_sum += math.log(num) - math.log(den)
            if (j - s) % 2:
                sign = -sign
        log_binom = math.lgamma(k - j + i + 1) - math.lgamma(i + 1) - log_binom_den
        coeffs[i] = sign * math.exp(0.5 * (log_binom + base + step_sum))
    return coeffs


def zero_mode_vector(basis: FockBasis, j: int, k: int) -> FockVector:
    """The zero mode as a vector on ``basis``; needs cutoff >= k + j."""
    _validate_family(j, k, basis.p)
    if k + j > basis.cutoff:
        raise ValueError(f"cutoff {basis.cutoff} too small for the weight (j, k) = ({j}, {k})")
    coeffs = zero_mode_coeffs(j, k, basis.p)
    vec = np.zeros(basis.size, dtype=np.complex128)
    for i, c in enumerate(coeffs):
        vec[basis.index[GZPattern(k + i, j - i, j)]] = c
    return FockVector(basis, vec)


def kernel_oracle(
    basis: FockBasis, j: int, k: int, op: SparseOperator | None = None, tol: float = 1e-10
) -> tuple[int, list[FockVector]]:
    """Kernel of b1- restricted to the weight block (p/2 + j, p/2 + k), via SVD.

    Returns the kernel dimension and an orthonormal basis of the null space
    embedded in the full space.  This is a formula-free route: it only uses
    the generator matrix and dense linear algebra, so it cross-checks the
    closed-form coefficients independently.  ``j > k`` blocks are allowed
    (their kernel is empty).
    """
    if not (0 <= j and 0 <= k):
        raise ValueError(f"need j, k >= 0, got j = {j}, k = {k}")
    if k + j > basis.cutoff:
        raise ValueError(f"cutoff {basis.cutoff} too small for the weight (j, k) = ({j}, {k})")
    if op is None:
        op = build_generator(basis, "b1-")
    source = [
        i
        for i, m in enumerate(basis.patterns)
        if m.m11 == j and m.degree == k + j
    ]
    target = [
        i
        for i, m in enumerate(basis.patterns)
        if m.m11 == j - 1 and m.degree == k + j - 1
    ]
    if not source:
        return 0, []
    target_pos = {idx: r for r, idx in enumerate(target)}
    block = np.zeros((len(target), len(source)))
    for c, col_idx in enumerate(source):
        for row_idx, value in op.column(col_idx).items():
            if row_idx in target_pos:
                block[target_pos[row_idx], c] = value.real if isinstance(value, complex) else value
    n = len(source)
    if len(target) == 0:
        null_dim = n
        null_vectors = np.eye(n)
    else:
        _, s, vh = np.linalg.svd(block)
        threshold = tol * max(1.0, float(s[0]) if s.size else 1.0)
        rank = int(np.sum(s > threshold))
        null_dim = n - rank
        null_vectors = vh[rank:].conj().T
    vectors = []
    for c in range(null_dim):
        full = np.zeros(basis.size, dtype=np.complex128)
        for r, idx in enumerate(source):
            full[idx] = null_vectors[r, c]
        vectors.append(FockVector(basis, full))
    return null_dim, vectors


def ladder_step(p: float, j: int, n: int) -> float:
    """Raising coefficient from rung n to rung n + 1 above the zero mode at j.

    The same value is the lowering coefficient from rung n + 1 back to n,
    so a single definition keeps the two directions exactly inverse at the
    floating-point level.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return math.sqrt(n + p + 2 * j) if n % 2 == 0 else math.sqrt(n + 1.0)


def ladder_normalization(p: float, j: int, n: int) -> float:
    """Norm of (b1+)^n applied to a zero mode at j, in closed form.

    Equals sqrt(2^n ((n - O_n)/2)! (p/2 + j)_((n + O_n)/2)), evaluated
    through log-gamma differences.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    half_down = (n - odd_ind(n)) // 2
    half_up = (n + odd_ind(n)) // 2
    nu = p / 2.0 + j
    log_sq = (
        n * math.log(2.0)
        + math.lgamma(half_down + 1.0)
        + math.lgamma(nu + half_up)
        - math.lgamma(nu)
    )
    return math.exp(0.5 * log_sq)


def ladder_family(basis: FockBasis, j: int, k: int, nmax: int) -> list[FockVector]:
    """Orthonormal ladder states over rungs 0..nmax above the (j, k) zero mode.

    Exactness of every rung needs k + j + nmax <= cutoff, since each raising
    step can push m12 up by one from its maximum k + j on the zero mode.
    """
    _validate_family(j, k, basis.p)
    if nmax < 0:
        raise ValueError(f"need nmax >= 0, got {nmax}")
    if k + j + nmax > basis.cutoff:
        raise ValueError(
            f"cutoff {basis.cutoff} too small: rung {nmax} above (j, k) = ({j}, {k}) "
            f"needs cutoff >= {k + j + nmax}"
        )
    raise_op = build_generator(basis, "b1+")
    states = [zero_mode_vector(basis, j, k)]
    for n in range(nmax):
        nxt = raise_op.apply(states[-1].coefficients) / ladder_step(basis.p, j, n)
        states.append(FockVector(basis, nxt))
    return states


def ladder_state(basis: FockBasis, j: int, k: int, n: int) -> FockVector:
    """Rung n of the ladder above the (j, k) zero mode."""
    return ladder_family(basis, j, k, n)[n]


def b2sq_shift(j: int, k: int, p: float, direction: str) -> float:
    """Scalar coefficient of (b2-)^2 or (b2+)^2 mapping the (j, k) zero mode to k -+ 2.

    The lowering direction vanishes identically for k - j < 2, where no
    target weight exists.
    """
    _validate_family(j, k, p)
    if direction == "raise":
        return math.sqrt(
            (k + 1 - j + even_ind(k - j)) * (p + k + j + odd_ind(k + j))
        )
    if direction == "lower":
        if k - j < 2:
            return 0.0
        return math.sqrt(
            (k - 1 - j + even_ind(k - j)) * (p + k - 2 + j + odd_ind(k + j))
        )
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")

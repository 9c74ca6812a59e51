"""Small numeric kernels: low-degree complex polynomial roots, a dense
complex linear solve with partial pivoting, and guarded bisection.

Everything here is deliberately tiny (degree <= 4, dimension <= 8). At that
scale robustness beats sophistication: roots are found simultaneously with no
deflation, and every result is residual-checked before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError, RangeError, SingularError

COEFF_TRIM_REL = 1e-15
ROOT_RESIDUAL_REL = 1e-10
PIVOT_REL = 1e-13
SOLVE_RESIDUAL_REL = 1e-10
MAX_DEGREE = 4
MAX_DIM = 8


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial with coefficients in ascending degree order."""

    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coefficients, dtype=np.float64))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise RangeError("coefficients must be a nonempty 1-d sequence")
        scale = float(np.max(np.abs(coeffs)))
        if scale == 0.0:
            raise RangeError("the zero polynomial has no defined degree")
        # trim high-order coefficients that are numerically zero
        keep = coeffs.size
        while keep > 1 and abs(coeffs[keep - 1]) < COEFF_TRIM_REL * scale:
            keep -= 1
        coeffs = coeffs[:keep].copy()
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, z):
        acc = 0.0
        for coeff in self.coefficients[::-1]:
            acc = acc * z + coeff
        return acc


@dataclass(frozen=True)
class ComplexRootSet:
    """All roots of a polynomial together with their certified residuals."""

    roots: np.ndarray
    residuals: np.ndarray


def polynomial_roots(poly: Polynomial, max_iter: int = 500) -> ComplexRootSet:
    """All complex roots of a degree 1..4 polynomial.

    Uses simultaneous Weierstrass/Durand-Kerner iteration (no deflation), then
    certifies each root by |P(z)| < 1e-10 * max|coefficient|. Conjugate pairs
    come out adjacent in the (real, imag)-sorted result.
    """
    degree = poly.degree
    if not 1 <= degree <= MAX_DEGREE:
        raise RangeError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
    coeffs = poly.coefficients
    scale = float(np.max(np.abs(coeffs)))

    if degree == 1:
        roots = np.array([-coeffs[0] / coeffs[1]], dtype=complex)
    else:
        monic = (coeffs / coeffs[-1]).astype(complex)
        radius = 1.0 + float(np.max(np.abs(monic[:-1])))
        angles = 2.0 * np.pi * np.arange(degree) / degree + 0.7
        roots = radius * np.exp(1j * angles)
        step_tol = 1e-14 * max(1.0, radius)
        for _ in range(max_iter):
            values = np.polyval(monic[::-1], roots)
            new_roots = roots.copy()
            for i in range(degree):
                denom = np.prod(roots[i] - np.delete(roots, i))
                if denom == 0:  # collided iterates; nudge apart
                    denom = step_tol
                new_roots[i] = roots[i] - values[i] / denom
            shift = float(np.max(np.abs(new_roots - roots)))
            roots = new_roots
            if shift < step_tol:
                break

    order = np.lexsort((roots.imag, roots.real))
    roots = roots[order]
    residuals = np.abs([poly(z) for z in roots])
    # For |z| >> 1 the evaluation of P(z) itself carries rounding noise of
    # order eps * sum |a_i z^i|, so the certificate is normalized by that
    # scale; for |z| <= 1 it reduces to the flat 1e-10 * max|coeff| bound.
    powers = np.abs(roots)[:, None] ** np.arange(coeffs.size)[None, :]
    eval_scale = powers @ np.abs(coeffs)
    bounds = ROOT_RESIDUAL_REL * np.maximum(scale, eval_scale)
    if np.any(residuals >= bounds):
        raise ConvergenceError(
            f"root residuals {residuals} exceed tolerances {bounds}")
    return ComplexRootSet(roots, residuals)


def solve_linear_system(matrix, rhs) -> np.ndarray:
    """Solve a small dense complex system by Gaussian elimination.

    Scaled partial pivoting; raises SingularError when the best available
    pivot is below 1e-13 of its row scale. The solution is verified against
    the backward residual ||Ax - b||_inf < 1e-10 ||b||_inf.
    """
    a = np.array(matrix, dtype=complex)
    b = np.array(rhs, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise RangeError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_DIM or b.shape != (n,):
        raise RangeError(f"system must be at most {MAX_DIM}x{MAX_DIM} with matching rhs")

    scales = np.max(np.abs(a), axis=1)
    if np.any(scales == 0.0):
        raise SingularError("matrix has an identically zero row")
    original_a, original_b = a.copy(), b.copy()

    for col in range(n):
        ratios = np.abs(a[col:, col]) / scales[col:]
        pivot_row = col + int(np.argmax(ratios))
        if np.abs(a[pivot_row, col]) < PIVOT_REL * scales[pivot_row]:
            raise SingularError(f"pivot in column {col} below threshold")
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            b[[col, pivot_row]] = b[[pivot_row, col]]
            scales[[col, pivot_row]] = scales[[pivot_row, col]]
        factors = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= np.outer(factors, a[col, col:])
        b[col + 1:] -= factors * b[col]

    x = np.zeros(n, dtype=complex)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - np.dot(a[row, row + 1:], x[row + 1:])) / a[row, row]

    rhs_norm = float(np.max(np.abs(original_b)))
    if rhs_norm > 0.0:
        residual = float(np.max(np.abs(original_a @ x - original_b)))
        if residual >= SOLVE_RESIDUAL_REL * rhs_norm:
            raise SingularError(
                f"backward residual {residual} exceeds {SOLVE_RESIDUAL_REL * rhs_norm}")
    return x


def fixed_point_root(f: Callable[[float], float], lo: float, hi: float,
                     tol: float, max_iter: int = 200) -> float:
    """Root of a continuous scalar function by bisection.

    Requires a sign change on [lo, hi]; returns x with |f(x)| < tol and final
    bracket width < tol. Convergence is guaranteed for any continuous f, which
    is why bisection is used over anything faster.
    """
    if tol <= 0.0:
        raise RangeError(f"tol must be positive, got {tol}")
    if not lo < hi:
        raise RangeError(f"need lo < hi, got [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise BracketError(f"f({lo})={flo} and f({hi})={fhi} have the same sign")

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:  # bracket exhausted at float resolution
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (fhi > 0.0):
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
        if hi - lo < tol and min(abs(flo), abs(fhi)) < tol:
            break

    x, fx = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    if hi - lo < tol and abs(fx) < tol:
        return x
    raise ConvergenceError(
        f"bisection stalled: bracket width {hi - lo}, |f| {abs(fx)}, tol {tol}")

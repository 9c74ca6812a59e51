"""Analytic pipeline for the discrete-time multi-server queue.

Computes, in order: the geometric tail decay rate omega (fixed point of
w = (qw+p)(rw+s)^c in (0,1)), the stationary distribution (boundary masses by
back-substitution against the geometric tail), the level hitting/return
probabilities of the fully-busy random walk (via generating-function numerator
conditions at selected denominator roots), and from those the clump rate

    beta = pi_c * (1 - nu0) / omega^(c-1)

which drives the running-maximum law P{M_n <= k} ~ exp(-beta * n * omega^k)
and its affine-in-ln(n) expected maximum.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import exp, log, sqrt
from typing import Optional

import numpy as np

from .errors import DegenerateRootsError, HeuristicRangeWarning, RangeError, UnsupportedError
from .numerics import Polynomial, fixed_point_root, polynomial_roots, solve_linear_system
from .params import GeoParams, increment_distribution
from .stats import EULER_GAMMA

OMEGA_BRACKET_DELTA = 1e-12
OMEGA_TOL = 1e-13
INTERIOR_MARGIN = 1e-9
MODULUS_TIE_TOL = 1e-9
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class NuRecord:
    """Hitting/return probabilities of the fully-busy increment walk.

    nu0: probability of returning to the starting level.
    nu_minus1: probability of ever reaching the level from one step above.
    nu_up: probabilities of reaching the level from 1..c-1 steps below
    (empty for a single server, where they are not separate unknowns).
    """

    nu0: float
    nu_minus1: float
    nu_up: tuple[float, ...]

    def __post_init__(self):
        # nu_minus1 equals 1 exactly for a single server (the walk cannot jump
        # over the level from above), so the upper bound is closed
        for name, value in [("nu0", self.nu0), ("nu_minus1", self.nu_minus1)] + [
                (f"nu{i + 1}", v) for i, v in enumerate(self.nu_up)]:
            if not 0.0 < value <= 1.0:
                raise DegenerateRootsError(f"{name}={value} is not in (0, 1]")


@dataclass(frozen=True)
class GeoAnalysis:
    """Full analytic description of one parameter set."""

    params: GeoParams
    omega: float
    pi_boundary: tuple[float, ...]
    pi_c: float
    nu: NuRecord
    beta: float

    def __post_init__(self):
        if not 0.0 < self.omega < 1.0:
            raise DegenerateRootsError(f"omega={self.omega} is not in (0, 1)")
        if any(not 0.0 < b < 1.0 for b in self.pi_boundary) or not 0.0 < self.pi_c < 1.0:
            raise DegenerateRootsError("stationary masses must lie in (0, 1)")
        if not self.beta > 0.0:
            raise DegenerateRootsError(f"beta={self.beta} must be positive")

    def pi(self, j: int) -> float:
        """Stationary mass at queue length j (geometric beyond the boundary)."""
        if j < 0:
            raise RangeError(f"state must be nonnegative, got {j}")
        c = self.params.c
        if j < c:
            return self.pi_boundary[j]
        return self.omega ** (j - c) * self.pi_c


def decay_rate_omega(params: GeoParams) -> float:
    """Unique root in (0, 1) of w = (qw+p)(rw+s)^c.

    Under stability the bracket (delta, 1-delta) is valid: the fixed-point map
    is convex increasing with value p*s^c > 0 at 0 and slope q + c*r > 1 at 1.
    """
    p, q, r, s, c = params.p, params.q, params.r, params.s, params.c

    def gap(w: float) -> float:
        return w - (q * w + p) * (r * w + s) ** c

    return fixed_point_root(gap, OMEGA_BRACKET_DELTA, 1.0 - OMEGA_BRACKET_DELTA, OMEGA_TOL)


def decay_rate_omega_closed_form(params: GeoParams) -> Optional[float]:
    """Closed-form cubic solution for the three-server decay rate.

    Cross-check only. Returns None when the radicand 4(3q-r)^3 r^3 + chi^2 is
    negative (real cube-root arithmetic then no longer applies and the
    bisection path is authoritative).
    """
    if params.c != 3:
        raise UnsupportedError("closed form exists only for c = 3")
    p, q, r, s = params.p, params.q, params.r, params.s
    chi = -9.0 * q * r**2 + 2.0 * r**3 - 27.0 * q**2 * s
    radicand = 4.0 * (3.0 * q - r) ** 3 * r**3 + chi**2
    if radicand < 0.0:
        return None
    theta = sqrt(radicand)
    if chi + theta <= 0.0:
        return None

    def cbrt(x: float) -> float:
        return x ** (1.0 / 3.0) if x >= 0.0 else -((-x) ** (1.0 / 3.0))

    return ((-3.0 + 2.0 * r + 3.0 * p * s)
            + (3.0 * q - r) * r * cbrt(2.0 / (chi + theta))
            - cbrt((chi + theta) / 2.0)) / (3.0 * q * r)


def _stationary_from_omega(params: GeoParams, omega: float):
    """Boundary masses and pi_c by back-substituting the balance equations
    of columns c..1 against the geometric tail pi_j = omega^(j-c) pi_c."""
    c = params.c
    pmfs = [increment_distribution(params, min(j, c)) for j in range(2 * c + 2)]

    def trans(j: int, k: int) -> float:
        return pmfs[j].prob(k - j)

    ratio = {j: omega ** (j - c) for j in range(c, 2 * c + 2)}  # pi_j / pi_c
    for k in range(c, 0, -1):
        acc = ratio[k]
        for j in range(k, k + c + 1):
            acc -= ratio[j] * trans(j, k)
        ratio[k - 1] = acc / trans(k - 1, k)  # trans(k-1, k) = p*s^busy > 0
    pi_c = 1.0 / (1.0 / (1.0 - omega) + sum(ratio[j] for j in range(c)))
    boundary = tuple(ratio[j] * pi_c for j in range(c))
    return boundary, pi_c


def stationary_distribution(params: GeoParams):
    """(pi_0..pi_{c-1}, pi_c); states beyond c carry mass omega^(j-c) * pi_c."""
    return _stationary_from_omega(params, decay_rate_omega(params))


def _step_probabilities(params: GeoParams):
    """alpha[-c..1] of the fully-busy walk as a dict keyed by increment."""
    pmf = increment_distribution(params, params.c)
    return {int(k): float(v) for k, v in zip(pmf.support, pmf.probabilities)}


def _divide_out_root_at_one(coeffs: np.ndarray) -> np.ndarray:
    """Quotient of a polynomial (ascending coeffs) by its (1 - z) factor.

    With D(z) = (1 - z) C(z), the quotient coefficients are the partial sums
    of D's. The remainder must vanish, which is asserted against rounding.
    """
    quotient = np.cumsum(coeffs[:-1])
    scale = float(np.max(np.abs(coeffs)))
    if abs(quotient[-1] + coeffs[-1]) > 1e-12 * max(scale, 1e-30):
        raise DegenerateRootsError("polynomial does not vanish at z = 1")
    return quotient


def hitting_probabilities(params: GeoParams) -> NuRecord:
    """Solve the linear system defining nu0, nu_minus1 and nu_1..nu_{c-1}.

    The ascent generating function F(z) = sum nu_j z^j and descent analogue
    G(z) are rational with known denominators. Analyticity forces the
    numerator N_F to vanish at z = 1 and at each denominator root inside the
    unit disk (exactly c-1 of them), and N_G to vanish at the smallest-modulus
    root z4 of its denominator; that yields c+1 equations for c+1 unknowns,
    solved over the complex field with imaginary parts required to vanish.
    """
    c = params.c
    alpha = _step_probabilities(params)
    a_up, a_zero = alpha[1], alpha[0]

    # ascent denominator: sum_m alpha_{-m} z^{c-m} - (1-alpha_0) z^c + alpha_1 z^{c+1}
    df = np.zeros(c + 2)
    for m in range(1, c + 1):
        df[c - m] += alpha[-m]
    df[c] -= 1.0 - a_zero
    df[c + 1] += a_up
    ascent_cubic = Polynomial(_divide_out_root_at_one(df))

    # descent denominator: alpha_1 - (1-alpha_0) z + sum_m alpha_{-m} z^{m+1}
    dg = np.zeros(c + 2)
    dg[0] += a_up
    dg[1] -= 1.0 - a_zero
    for m in range(1, c + 1):
        dg[m + 1] += alpha[-m]
    descent_cubic = Polynomial(_divide_out_root_at_one(dg))

    ascent_roots = polynomial_roots(ascent_cubic).roots
    interior = [z for z in ascent_roots if abs(z) < 1.0 - INTERIOR_MARGIN]
    if len(interior) != c - 1:
        raise DegenerateRootsError(
            f"expected {c - 1} ascent-denominator roots inside the unit disk, "
            f"found {len(interior)} among {ascent_roots}")

    descent_roots = sorted(polynomial_roots(descent_cubic).roots, key=abs)
    z4 = descent_roots[0]
    if len(descent_roots) > 1 and abs(descent_roots[1]) - abs(z4) < MODULUS_TIE_TOL:
        raise DegenerateRootsError(
            f"smallest-modulus descent root is not unique: {descent_roots}")

    # unknown vector [nu0, nu_minus1, nu_1, ..., nu_{c-1}]
    def ascent_condition(z):
        row = np.zeros(c + 1, dtype=complex)
        row[0] = z**c
        row[1] = -a_up * z**c
        for i in range(1, c):
            row[1 + i] = sum(alpha[-m] * z ** (c - m + i) for m in range(i + 1, c + 1))
        return row, a_zero * z**c + a_up * z ** (c + 1)

    def descent_condition(z):
        row = np.zeros(c + 1, dtype=complex)
        row[1] = a_up * z
        for i in range(1, c):
            row[1 + i] = -sum(alpha[-m] * z ** (m + 1 - i) for m in range(i + 1, c + 1))
        return row, sum(alpha[-m] * z ** (m + 1) for m in range(1, c + 1))

    rows, rhs = [], []
    for z in [1.0, *interior]:
        row, value = ascent_condition(z)
        rows.append(row)
        rhs.append(value)
    row, value = descent_condition(z4)
    rows.append(row)
    rhs.append(value)

    solution = solve_linear_system(np.array(rows), np.array(rhs))
    if float(np.max(np.abs(solution.imag))) > IMAG_TOL:
        raise DegenerateRootsError(
            f"hitting probabilities came out complex: {solution}")

    def settle(value: float) -> float:
        # certain hits (single-server descent) may overshoot 1 by rounding
        return 1.0 if 1.0 < value <= 1.0 + 1e-9 else value

    real = [settle(float(v)) for v in solution.real]
    return NuRecord(real[0], real[1], tuple(real[2:]))


def clump_rate(analysis: GeoAnalysis) -> float:
    """Rate constant beta = pi_c (1 - nu0) / omega^(c-1) of the maximum law.

    1/(1 - nu0) is the expected number of visits to a high level per clump,
    and pi_k n / E(visits) with the geometric tail gives beta * n * omega^k.
    """
    return analysis.pi_c * (1.0 - analysis.nu.nu0) / analysis.omega ** (analysis.params.c - 1)


def analyze_geo(params: GeoParams) -> GeoAnalysis:
    """Run the full pipeline once and package the results."""
    omega = decay_rate_omega(params)
    boundary, pi_c = _stationary_from_omega(params, omega)
    nu = hitting_probabilities(params)
    beta = pi_c * (1.0 - nu.nu0) / omega ** (params.c - 1)
    return GeoAnalysis(params, omega, boundary, pi_c, nu, beta)


@dataclass(frozen=True)
class MaxLengthLaw:
    """Running-maximum law over an n-step horizon.

    P{M_n <= k} = exp(-beta n omega^k); the expected maximum is
    slope * ln(n) + intercept with slope = 1/ln(1/omega) and
    intercept = (gamma + ln beta)/ln(1/omega) + 1/2. Periodic fluctuation
    corrections to the moments are deliberately omitted.
    """

    omega: float
    beta: float
    n: float
    servers: int

    @property
    def slope(self) -> float:
        return 1.0 / log(1.0 / self.omega)

    @property
    def intercept(self) -> float:
        return (EULER_GAMMA + log(self.beta)) / log(1.0 / self.omega) + 0.5

    def cdf(self, k: int) -> float:
        """P{M_n <= k}. Warns (but still evaluates) below the boundary level."""
        if k < self.servers:
            warnings.warn(
                f"maximum-law CDF evaluated at k={k} below the {self.servers}-server "
                "boundary; the asymptotic approximation is unreliable there",
                HeuristicRangeWarning, stacklevel=2)
        return exp(-self.beta * self.n * self.omega**k)

    def mean(self) -> float:
        return self.slope * log(self.n) + self.intercept


def max_length_law(analysis: GeoAnalysis, n: float) -> MaxLengthLaw:
    if n < 1:
        raise RangeError(f"horizon must be at least 1 step, got {n}")
    return MaxLengthLaw(analysis.omega, analysis.beta, float(n), analysis.params.c)


def max_length_cdf(analysis: GeoAnalysis, n: float, k: int) -> float:
    """Asymptotic P{M_n <= k} for the queue-length maximum."""
    return max_length_law(analysis, n).cdf(k)


def expected_max_length(analysis: GeoAnalysis, n: float) -> float:
    """Asymptotic E(M_n) = slope * ln(n) + intercept."""
    if n < 2:
        raise RangeError(f"expected-maximum expansion needs n >= 2, got {n}")
    return max_length_law(analysis, n).mean()


def mean_queue_length(params: GeoParams) -> float:
    """Stationary mean queue length sum_j j pi_j.

    Boundary terms are summed directly; the geometric tail contributes
    pi_c (c - (c-1) omega)/(1 - omega)^2 in closed form.
    """
    omega = decay_rate_omega(params)
    boundary, pi_c = _stationary_from_omega(params, omega)
    tail = (params.c - (params.c - 1) * omega) / (1.0 - omega) ** 2 * pi_c
    return sum(j * mass for j, mass in enumerate(boundary)) + tail

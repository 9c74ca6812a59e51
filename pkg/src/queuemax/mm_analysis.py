"""Closed forms for the continuous-time queue.

Single-server maximum waits obey a Gumbel limit: with rho = lambda/mu,

    P{max wait <= y} ~ exp[-A n exp(-(mu - lambda) y)]

where A = lambda (1-rho)^2 for the wait in system and an extra factor rho for
the wait in queue, giving E(max) = [ln(n) + gamma + ln A] / (mu - lambda).
For two or more servers no analogous formulas are known and the simulator
fills the gap; stationary mean waits, however, have exact rational forms for
c = 1, 2, 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import exp, log
from typing import Literal

import numpy as np

from .errors import RangeError, StabilityError, UnsupportedError
from .stats import EULER_GAMMA

Kind = Literal["system", "queue"]
MAX_MEAN_WAIT_SERVERS = 3


def _check_kind(kind: str) -> str:
    if kind not in ("system", "queue"):
        raise RangeError(f"kind must be 'system' or 'queue', got {kind!r}")
    return kind


@dataclass(frozen=True)
class MMParams:
    """Poisson-arrival, exponential-service queue parameters.

    lam is the arrival rate, mu the per-server service rate, c the server
    count. Stability requires lam < c*mu.
    """

    lam: float
    mu: float
    c: int

    def __post_init__(self):
        if int(self.c) != self.c or self.c < 1:
            raise UnsupportedError(f"server count must be a positive integer, got {self.c!r}")
        for name, value in (("lam", self.lam), ("mu", self.mu)):
            if not value > 0.0:
                raise RangeError(f"{name} must be positive, got {value}")
        if self.lam >= self.c * self.mu:
            raise StabilityError(
                f"unstable parameters: lam={self.lam} >= c*mu={self.c * self.mu}")

    @property
    def rho_single(self) -> float:
        """lambda/mu, the load ratio used by the single-server formulas."""
        return self.lam / self.mu

    @property
    def utilization(self) -> float:
        """lambda/(c mu), the per-server traffic intensity."""
        return self.lam / (self.c * self.mu)


def validate_mm_params(lam: float, mu: float, c: int) -> MMParams:
    if int(c) != c:
        raise UnsupportedError(f"server count must be an integer, got {c!r}")
    return MMParams(float(lam), float(mu), int(c))


@dataclass(frozen=True)
class MM1Asymptotics:
    """Scaling constants of the single-server maximum-wait Gumbel limit."""

    kind: str
    scale: float          # 1 / (mu - lambda)
    rate_constant: float  # lambda (1-rho)^2, times rho for the queue wait

    def __post_init__(self):
        _check_kind(self.kind)
        if not (self.scale > 0.0 and self.rate_constant > 0.0):
            raise RangeError("scale and rate constant must be positive")


def mm1_asymptotics(params: MMParams, kind: Kind) -> MM1Asymptotics:
    _check_kind(kind)
    if params.c != 1:
        raise UnsupportedError(
            "maximum-wait asymptotics are only known for a single server")
    rho = params.rho_single
    rate = params.lam * (1.0 - rho) ** 2
    if kind == "queue":
        rate *= rho
    return MM1Asymptotics(kind, 1.0 / (params.mu - params.lam), rate)


def max_wait_cdf_mm1(params: MMParams, kind: Kind, n: float, y) -> float:
    """P{max wait over [0, n] <= y} under the Gumbel approximation."""
    if n <= 0:
        raise RangeError(f"horizon must be positive, got {n}")
    asym = mm1_asymptotics(params, kind)
    y_arr = np.asarray(y, dtype=np.float64)
    if np.any(y_arr < 0.0):
        raise RangeError("wait times are nonnegative")
    out = np.exp(-asym.rate_constant * n * np.exp(-y_arr / asym.scale))
    return float(out) if np.ndim(y) == 0 else out


def expected_max_wait_mm1(params: MMParams, kind: Kind, n: float) -> float:
    """E(max wait over [0, n]) = [ln(n) + gamma + ln A] / (mu - lambda)."""
    if n <= 0:
        raise RangeError(f"horizon must be positive, got {n}")
    asym = mm1_asymptotics(params, kind)
    return asym.scale * (log(n) + EULER_GAMMA + log(asym.rate_constant))


def mean_wait(params: MMParams, kind: Kind) -> float:
    """Stationary mean wait; exact rational expressions for c = 1, 2, 3.

    The system wait exceeds the queue wait by the mean service time 1/mu.
    """
    _check_kind(kind)
    lam, mu, c = params.lam, params.mu, params.c
    if c == 1:
        queue_wait = lam / ((mu - lam) * mu)
    elif c == 2:
        queue_wait = lam**2 / ((2.0 * mu - lam) * (2.0 * mu + lam) * mu)
    elif c == 3:
        queue_wait = lam**3 / ((3.0 * mu - lam) * (lam**2 + 4.0 * lam * mu + 6.0 * mu**2) * mu)
    else:
        raise UnsupportedError(
            f"mean-wait closed forms cover c <= {MAX_MEAN_WAIT_SERVERS}, got c={c}")
    return queue_wait + (1.0 / mu if kind == "system" else 0.0)

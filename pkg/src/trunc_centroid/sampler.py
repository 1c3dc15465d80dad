"""Seeded draws from the Gaussian conditioned outside the hole.

Two strategies share one counter discipline:

  * exterior mass >= 0.05: vectorized rejection.  Attempt k for draw i
    uses the Philox block at counter (k, i, 0, stream 0), so the value a
    draw index settles on is independent of batch size and of every
    other lane.  Acceptance is decided on the observable value, making
    the support invariant immediate.
  * exterior mass < 0.05: pick a tail with the conditional probability,
    then invert the log tail function inside it (bisection-guarded
    Newton to 1e-14).  Uses stream 1, one block per draw, so switching
    strategies never reuses randomness.

The estimate handed back by monte_carlo_centroid is the plain sample
mean with its standard error; the test suite checks it against the
closed form at 4 standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DeepTruncationError, DomainError, ParameterError
from .model import ExcludedInterval, GaussianParams
from .philox import philox4x64, uniform_closed_open, uniform_open_closed
from .special import log_std_cdf, log_std_tail, mills_ratio, std_cdf, std_tail

MIXTURE_MASS_THRESHOLD = 0.05
_MASS_FLOOR = 1e-290
_TWO_PI = 2.0 * math.pi
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class SampleBatch:
    values: np.ndarray
    seed: int
    acceptance_rate: float


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    std_error: float
    n: int


def sample_exterior(
    params: GaussianParams,
    hole: ExcludedInterval,
    shift: float,
    n: int,
    seed: int,
) -> SampleBatch:
    """n independent draws from N(mu + shift, sigma^2) given the exterior."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n!r}")
    shift = float(shift)
    if not math.isfinite(shift):
        raise DomainError(f"shift must be finite, got {shift!r}")
    seed = int(seed) & _MASK64
    loc = params.mu + shift
    a = (hole.lower - loc) / params.sigma
    b = (hole.upper - loc) / params.sigma
    left = std_cdf(a)
    right = std_tail(b)
    mass = left + right
    if mass < _MASS_FLOOR:
        raise DeepTruncationError(
            f"exterior mass {mass:.3e} is at underflow scale; sampling "
            f"would effectively never terminate"
        )
    if mass >= MIXTURE_MASS_THRESHOLD:
        values, rate = _rejection(loc, params.sigma, hole, n, seed)
    else:
        values = _tail_mixture(loc, params.sigma, hole, n, seed, left, right, a, b)
        rate = 1.0
    return SampleBatch(values=values, seed=seed, acceptance_rate=rate)


def _rejection(
    loc: float, sigma: float, hole: ExcludedInterval, n: int, seed: int
) -> tuple[np.ndarray, float]:
    out = np.empty(n, dtype=np.float64)
    pending = np.arange(n, dtype=np.uint64)
    attempt = 0
    total_attempts = 0
    while pending.size:
        size = pending.size
        c0 = np.full(size, attempt, dtype=np.uint64)
        zeros = np.zeros(size, dtype=np.uint64)
        w0, w1, _, _ = philox4x64(c0, pending, zeros, zeros, seed, 0)
        u1 = uniform_open_closed(w0)
        u2 = uniform_closed_open(w1)
        z = np.sqrt(-2.0 * np.log(u1)) * np.cos(_TWO_PI * u2)
        x = loc + sigma * z
        ok = (x <= hole.lower) | (x >= hole.upper)
        out[pending[ok]] = x[ok]
        total_attempts += size
        pending = pending[~ok]
        attempt += 1
        if attempt >= (1 << 20):
            raise ParameterError(
                "rejection did not terminate; exterior mass too small for "
                "this strategy"
            )
    return out, n / total_attempts


def _tail_mixture(
    loc: float,
    sigma: float,
    hole: ExcludedInterval,
    n: int,
    seed: int,
    left: float,
    right: float,
    a: float,
    b: float,
) -> np.ndarray:
    # Mass < 0.05 forces both hole edges well into the tails, so the
    # standardized edges -a and b are comfortably positive.
    idx = np.arange(n, dtype=np.uint64)
    zeros = np.zeros(n, dtype=np.uint64)
    stream = np.ones(n, dtype=np.uint64)
    w0, w1, _, _ = philox4x64(zeros, idx, zeros, stream, seed, 0)
    u_side = uniform_closed_open(w0)
    u_tail = uniform_open_closed(w1)
    go_left = u_side < left / (left + right)
    log_u = np.log(u_tail)
    log_left = log_std_cdf(a)
    log_right = log_std_tail(b)
    z = np.empty(n, dtype=np.float64)
    for i in np.flatnonzero(go_left):
        z[i] = -_invert_log_tail(log_u[i] + log_left, -a)
    for i in np.flatnonzero(~go_left):
        z[i] = _invert_log_tail(log_u[i] + log_right, b)
    x = loc + sigma * z
    # Rounding in loc + sigma*z may land a hair inside; pin to the edge.
    np.minimum(x, hole.lower, out=x, where=go_left)
    np.maximum(x, hole.upper, out=x, where=~go_left)
    return x


def _invert_log_tail(target: float, edge: float) -> float:
    """Solve log_std_tail(y) == target for y >= edge > 0."""
    lo = edge
    step = 1.0
    hi = lo + step
    while log_std_tail(hi) > target:
        lo = hi
        step *= 2.0
        hi += step
    y = 0.5 * (lo + hi)
    for _ in range(100):
        residual = log_std_tail(y) - target
        if residual >= 0.0:
            lo = y
        else:
            hi = y
        y_next = y + residual * mills_ratio(y)
        if not lo < y_next < hi:
            y_next = 0.5 * (lo + hi)
        if abs(y_next - y) <= 1e-14 * max(1.0, abs(y_next)):
            return y_next
        y = y_next
    return y


def monte_carlo_centroid(batch: SampleBatch) -> MonteCarloEstimate:
    """Sample mean of a batch with its standard error."""
    n = int(batch.values.size)
    if n < 2:
        raise ParameterError(f"standard error needs n >= 2, got n = {n}")
    mean = float(np.mean(batch.values))
    spread = float(np.std(batch.values, ddof=1))
    return MonteCarloEstimate(mean=mean, std_error=spread / math.sqrt(n), n=n)

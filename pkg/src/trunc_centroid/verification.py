"""Numerical sweeps over every strict inequality behind the centroid result.

Each verify_* function walks a grid (or a seeded random cloud) of inputs,
evaluates one family of strict inequalities, and returns a report instead
of raising: a sweep is an experiment, and the acceptance suite decides
what its output means.

Margins below 1e-280 sit beneath anything double precision can vouch
for, so those points are set aside as "untestable-strict" rather than
counted as passes or failures.  Reports are deterministic for a given
(spec, seed) and independent of how many worker threads ran the sweep;
the TRUNC_CENTROID_THREADS environment variable caps parallelism.

CSV rendering uses the fixed column set

    check,x1,x2,h,lhs,rhs,margin

with 17-significant-digit decimals; columns a check does not use hold
nan.  The same module writes the reference-example CSV (masked densities
of the base and shifted configurations plus both centroids).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .centroid import (
    _slope_quotient_form,
    centroid_exterior,
    slope_certificate,
    std_exterior_centroid,
    std_exterior_centroid_slope,
)
from .errors import ParameterError
from .model import ExcludedInterval, GaussianParams
from .philox import CounterStream
from .special import (
    mills_lower_bound_cdf,
    mills_lower_bound_tail,
    std_cdf,
    std_pdf,
    std_tail,
)

UNTESTABLE_FLOOR = 1e-280
THREADS_ENV_VAR = "TRUNC_CENTROID_THREADS"
_CHUNK = 64

# Reference example: base density N(1, 4) with hole (-1, 4), shifted by 2.
REFERENCE_PARAMS = GaussianParams(mu=1.0, sigma=2.0)
REFERENCE_HOLE = ExcludedInterval(lower=-1.0, upper=4.0)
REFERENCE_SHIFT = 2.0


@dataclass(frozen=True)
class SweepSpec:
    l_range: tuple[float, float, float]
    u_range: tuple[float, float, float]
    h_range: tuple[float, float, float]
    mode: str = "grid"
    n_random: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        for name, rng in (
            ("l_range", self.l_range),
            ("u_range", self.u_range),
            ("h_range", self.h_range),
        ):
            lo, hi, step = rng
            if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
                raise ParameterError(f"{name} must be finite, got {rng!r}")
            if not lo < hi:
                raise ParameterError(f"{name} needs min < max, got {rng!r}")
            if not step > 0.0:
                raise ParameterError(f"{name} needs step > 0, got {rng!r}")
        if self.mode not in ("grid", "random"):
            raise ParameterError(f"mode must be grid or random, got {self.mode!r}")
        if self.mode == "random" and self.n_random < 1:
            raise ParameterError("random mode needs n_random >= 1")


@dataclass(frozen=True)
class CheckRecord:
    check: str
    x1: float
    x2: float
    h: float
    lhs: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class VerificationReport:
    name: str
    checks_run: int
    violations: tuple[CheckRecord, ...]
    untestable: tuple[CheckRecord, ...]
    min_margin: float
    min_margin_record: CheckRecord | None

    @property
    def passed(self) -> bool:
        return not self.violations


DEFAULT_MONOTONICITY_SPEC = SweepSpec(
    l_range=(-5.0, 5.0, 0.5),
    u_range=(-5.0, 5.0, 0.5),
    h_range=(-3.0, 3.0, 0.5),
)
DEFAULT_CERTIFICATE_SPEC = SweepSpec(
    l_range=(-8.0, 8.0, 0.05),
    u_range=(-8.0, 8.0, 0.05),
    h_range=(0.0, 1.0, 1.0),
)
DEFAULT_BOUNDS_SPEC = SweepSpec(
    l_range=(-8.0, 8.0, 0.05),
    u_range=(-8.0, 8.0, 0.05),
    h_range=(0.0, 1.0, 1.0),
)
DEFAULT_DERIVATIVE_SPEC = SweepSpec(
    l_range=(-4.0, 3.0, 0.5),
    u_range=(-3.5, 4.0, 0.5),
    h_range=(-2.0, 2.0, 0.25),
)


def _grid(rng: tuple[float, float, float]) -> list[float]:
    lo, hi, step = rng
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(count + 1)]


def _sort_key(record: CheckRecord):
    def k(v: float):
        return (1, 0.0) if math.isnan(v) else (0, v)

    return (record.check, k(record.x1), k(record.x2), k(record.h))


class _Collector:
    """Accumulates one sweep chunk's counts, violations, and minimum."""

    def __init__(self) -> None:
        self.checks_run = 0
        self.violations: list[CheckRecord] = []
        self.untestable: list[CheckRecord] = []
        self.min_record: CheckRecord | None = None

    def add(
        self,
        check: str,
        x1: float,
        x2: float,
        h: float,
        lhs: float,
        rhs: float,
        margin: float,
    ) -> None:
        self.checks_run += 1
        record = CheckRecord(check, x1, x2, h, lhs, rhs, margin)
        if abs(margin) < UNTESTABLE_FLOOR:
            self.untestable.append(record)
            return
        if margin <= 0.0:
            self.violations.append(record)
        current = self.min_record
        if (
            current is None
            or margin < current.margin
            or (margin == current.margin and _sort_key(record) < _sort_key(current))
        ):
            self.min_record = record


def thread_count() -> int:
    """Worker cap from TRUNC_CENTROID_THREADS; defaults to 1."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(
            f"{THREADS_ENV_VAR} must be an integer >= 1, got {raw!r}"
        ) from None
    if value < 1:
        raise ParameterError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
    return value


def _sweep(
    name: str, items: Sequence, worker: Callable[[Sequence], _Collector]
) -> VerificationReport:
    chunks = [items[i : i + _CHUNK] for i in range(0, len(items), _CHUNK)]
    workers = thread_count()
    if workers == 1 or len(chunks) <= 1:
        collected = [worker(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            collected = list(pool.map(worker, chunks))
    checks_run = sum(c.checks_run for c in collected)
    violations = sorted(
        (r for c in collected for r in c.violations), key=_sort_key
    )
    untestable = sorted(
        (r for c in collected for r in c.untestable), key=_sort_key
    )
    min_record = None
    for c in collected:
        r = c.min_record
        if r is None:
            continue
        if (
            min_record is None
            or r.margin < min_record.margin
            or (r.margin == min_record.margin and _sort_key(r) < _sort_key(min_record))
        ):
            min_record = r
    return VerificationReport(
        name=name,
        checks_run=checks_run,
        violations=tuple(violations),
        untestable=tuple(untestable),
        min_margin=math.nan if min_record is None else min_record.margin,
        min_margin_record=min_record,
    )


def _uniform(stream: CounterStream, lo: float, hi: float, n: int):
    return [lo + u * (hi - lo) for u in stream.take(n)]


def _hole_pairs_random(spec: SweepSpec, stream: CounterStream) -> list[tuple[float, float]]:
    raw_l = _uniform(stream, spec.l_range[0], spec.l_range[1], spec.n_random)
    raw_u = _uniform(stream, spec.u_range[0], spec.u_range[1], spec.n_random)
    pairs = []
    for l, u in zip(raw_l, raw_u):
        lo, hi = min(l, u), max(l, u)
        if hi > lo:
            pairs.append((lo, hi))
    return pairs


def verify_monotonicity(spec: SweepSpec = DEFAULT_MONOTONICITY_SPEC) -> VerificationReport:
    """Centroid strictly increases with the shift, for every hole.

    Rows: x1 = hole lower, x2 = hole upper, h = the larger shift of the
    pair; lhs/rhs are the centroids at the larger and smaller shift.
    The companion shift_sign rows compare a shifted centroid against the
    unshifted one through shift_comparison.
    """
    if spec.mode == "grid":
        ls = _grid(spec.l_range)
        us = _grid(spec.u_range)
        hs = _grid(spec.h_range)
        items = [
            (l, u, hs[i], hs[i + 1])
            for l in ls
            for u in us
            if u > l
            for i in range(len(hs) - 1)
        ]
    else:
        stream = CounterStream(spec.seed, stream=2)
        pairs = _hole_pairs_random(spec, stream)
        raw_h1 = _uniform(stream, spec.h_range[0], spec.h_range[1], len(pairs))
        raw_h2 = _uniform(stream, spec.h_range[0], spec.h_range[1], len(pairs))
        items = [
            (l, u, min(h1, h2), max(h1, h2))
            for (l, u), h1, h2 in zip(pairs, raw_h1, raw_h2)
            if h1 != h2
        ]

    def worker(chunk) -> _Collector:
        out = _Collector()
        for l, u, h1, h2 in chunk:
            psi1 = std_exterior_centroid(h1, l, u)
            psi2 = std_exterior_centroid(h2, l, u)
            out.add("monotonicity", l, u, h2, psi2, psi1, psi2 - psi1)
            if h2 != 0.0:
                psi0 = std_exterior_centroid(0.0, l, u)
                delta = psi2 - psi0
                signed = delta if h2 > 0.0 else -delta
                out.add("shift_sign", l, u, h2, delta, 0.0, signed)
        return out

    return _sweep("monotonicity", items, worker)


def verify_certificate_positive(
    spec: SweepSpec = DEFAULT_CERTIFICATE_SPEC,
) -> VerificationReport:
    """The slope certificate is positive over the (x1, x2) plane.

    l_range and u_range parameterize the two arguments directly; there
    is no ordering constraint between them.
    """
    if spec.mode == "grid":
        xs1 = _grid(spec.l_range)
        xs2 = _grid(spec.u_range)
        items = [(x1, x2) for x1 in xs1 for x2 in xs2]
    else:
        stream = CounterStream(spec.seed, stream=3)
        raw1 = _uniform(stream, spec.l_range[0], spec.l_range[1], spec.n_random)
        raw2 = _uniform(stream, spec.u_range[0], spec.u_range[1], spec.n_random)
        items = list(zip(raw1, raw2))

    def worker(chunk) -> _Collector:
        out = _Collector()
        for x1, x2 in chunk:
            value = slope_certificate(x1, x2)
            out.add("certificate_positive", x1, x2, math.nan, value, 0.0, value)
        return out

    return _sweep("certificate_positive", items, worker)


def verify_bounds(spec: SweepSpec = DEFAULT_BOUNDS_SPEC) -> VerificationReport:
    """The Mills-ratio bounds, their linear forms, and the summed form.

    One-dimensional checks run over l_range (as x1); the summed
    two-variable form runs over l_range x u_range.
    """
    if spec.mode == "grid":
        xs1 = _grid(spec.l_range)
        xs2 = _grid(spec.u_range)
    else:
        stream = CounterStream(spec.seed, stream=4)
        xs1 = _uniform(stream, spec.l_range[0], spec.l_range[1], spec.n_random)
        xs2 = _uniform(stream, spec.u_range[0], spec.u_range[1], spec.n_random)

    single = [(x,) for x in xs1]

    def worker_single(chunk) -> _Collector:
        out = _Collector()
        for (x,) in chunk:
            f = std_pdf(x)
            lhs = std_tail(x) / (2.0 * f)
            rhs = mills_lower_bound_tail(x)
            out.add("tail_ratio_bound", x, math.nan, math.nan, lhs, rhs, lhs - rhs)
            lhs = std_cdf(x) / (2.0 * f)
            rhs = mills_lower_bound_cdf(x)
            out.add("cdf_ratio_bound", x, math.nan, math.nan, lhs, rhs, lhs - rhs)
            root = math.sqrt(x * x + 4.0)
            lhs = 2.0 * std_tail(x) + x * f
            rhs = root * f
            out.add("tail_linear_bound", x, math.nan, math.nan, lhs, rhs, lhs - rhs)
            lhs = 2.0 * std_cdf(x) - x * f
            out.add("cdf_linear_bound", x, math.nan, math.nan, lhs, rhs, lhs - rhs)
        return out

    report_single = _sweep("bounds", single, worker_single)

    if spec.mode == "grid":
        pairs = [(x1, x2) for x1 in xs1 for x2 in xs2]
    else:
        pairs = list(zip(xs1, xs2))

    def worker_summed(chunk) -> _Collector:
        out = _Collector()
        for x1, x2 in chunk:
            f1 = std_pdf(x1)
            f2 = std_pdf(x2)
            lhs = 2.0 * (std_tail(x1) + std_cdf(x2)) + (x1 * f1 - x2 * f2)
            rhs = math.sqrt(x1 * x1 + 4.0) * f1 + math.sqrt(x2 * x2 + 4.0) * f2
            out.add("summed_bound", x1, x2, math.nan, lhs, rhs, lhs - rhs)
        return out

    report_summed = _sweep("bounds", pairs, worker_summed)

    best = min(
        (
            r.min_margin_record
            for r in (report_single, report_summed)
            if r.min_margin_record is not None
        ),
        key=lambda r: (r.margin, _sort_key(r)),
        default=None,
    )
    return VerificationReport(
        name="bounds",
        checks_run=report_single.checks_run + report_summed.checks_run,
        violations=tuple(
            sorted(
                report_single.violations + report_summed.violations, key=_sort_key
            )
        ),
        untestable=tuple(
            sorted(
                report_single.untestable + report_summed.untestable, key=_sort_key
            )
        ),
        min_margin=math.nan if best is None else best.margin,
        min_margin_record=best,
    )


def verify_derivative(spec: SweepSpec = DEFAULT_DERIVATIVE_SPEC) -> VerificationReport:
    """Analytic slope vs central differences, plus the two algebraic forms.

    Rows: x1 = hole lower, x2 = hole upper, h = shift.  The derivative_fd
    margin is 1e-6 minus the relative error; derivative_forms margin is
    the scaled 1e-10 agreement slack; derivative_positive is the value.
    """
    eps = 1e-5
    if spec.mode == "grid":
        ls = _grid(spec.l_range)
        us = _grid(spec.u_range)
        hs = _grid(spec.h_range)
        items = [(l, u, h) for l in ls for u in us if u > l for h in hs]
    else:
        stream = CounterStream(spec.seed, stream=5)
        pairs = _hole_pairs_random(spec, stream)
        raw_h = _uniform(stream, spec.h_range[0], spec.h_range[1], len(pairs))
        items = [(l, u, h) for (l, u), h in zip(pairs, raw_h)]

    def worker(chunk) -> _Collector:
        out = _Collector()
        for l, u, h in chunk:
            analytic = std_exterior_centroid_slope(h, l, u)
            out.add("derivative_positive", l, u, h, analytic, 0.0, analytic)
            quotient = _slope_quotient_form(h, l, u)
            scale = max(1.0, abs(analytic), abs(quotient))
            gap = abs(analytic - quotient)
            out.add(
                "derivative_forms",
                l,
                u,
                h,
                analytic,
                quotient,
                1e-10 * scale - gap,
            )
            if abs(analytic) > 1e-8:
                fd = (
                    std_exterior_centroid(h + eps, l, u)
                    - std_exterior_centroid(h - eps, l, u)
                ) / (2.0 * eps)
                rel_err = abs(analytic - fd) / max(abs(fd), 1e-300)
                out.add("derivative_fd", l, u, h, analytic, fd, 1e-6 - rel_err)
        return out

    return _sweep("derivative", items, worker)


def render_report_csv(reports: Iterable[VerificationReport]) -> str:
    """Fixed-schema CSV for one or more sweep reports.

    Emits every violation row, every untestable-strict row (check name
    suffixed ':untestable-strict'), and one ':min_margin' summary row
    per report, in that order.
    """
    lines = ["check,x1,x2,h,lhs,rhs,margin"]

    def row(check: str, r: CheckRecord) -> str:
        cells = [check] + [
            format(v, ".17g") for v in (r.x1, r.x2, r.h, r.lhs, r.rhs, r.margin)
        ]
        return ",".join(cells)

    for report in reports:
        for r in report.violations:
            lines.append(row(r.check, r))
        for r in report.untestable:
            lines.append(row(f"{r.check}:untestable-strict", r))
        if report.min_margin_record is not None:
            r = report.min_margin_record
            lines.append(row(f"{r.check}:min_margin", r))
    return "\n".join(lines) + "\n"


def write_report_csv(reports: Iterable[VerificationReport], output_path: str) -> None:
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_report_csv(reports))


def reference_example_rows() -> list[tuple[float, float, float]]:
    """Masked densities of the base and shifted reference configurations.

    x walks [-8, 12] in steps of 0.01; the mask keeps density only on
    the closed exterior (x <= -1 or x >= 4).
    """
    mu = REFERENCE_PARAMS.mu
    sigma = REFERENCE_PARAMS.sigma
    shifted_mu = mu + REFERENCE_SHIFT
    lower = REFERENCE_HOLE.lower
    upper = REFERENCE_HOLE.upper
    rows = []
    for k in range(2001):
        x = (k - 800) / 100.0
        on_support = x <= lower or x >= upper
        base = std_pdf((x - mu) / sigma) / sigma if on_support else 0.0
        shifted = std_pdf((x - shifted_mu) / sigma) / sigma if on_support else 0.0
        rows.append((x, base, shifted))
    return rows


def render_reference_figure() -> tuple[str, float, float]:
    """Reference-example CSV text plus the (base, shifted) centroids."""
    base = centroid_exterior(REFERENCE_PARAMS, REFERENCE_HOLE, 0.0).value
    shifted = centroid_exterior(REFERENCE_PARAMS, REFERENCE_HOLE, REFERENCE_SHIFT).value
    lines = ["x,fX_masked,fY_masked"]
    for x, fx, fy in reference_example_rows():
        lines.append(
            f"{format(x, '.17g')},{format(fx, '.17g')},{format(fy, '.17g')}"
        )
    lines.append(f"centroid,{format(base, '.17g')},{format(shifted, '.17g')}")
    return "\n".join(lines) + "\n", base, shifted


def write_reference_figure(output_path: str) -> tuple[float, float]:
    """Write the reference-example CSV; returns (base, shifted) centroids."""
    text, base, shifted = render_reference_figure()
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return base, shifted

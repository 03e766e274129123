"""Scalar test functions with declared analytic classes, plus validators.

Operator monotonicity is declared from known theory; the 2x2 spot check only
guards against mislabelled entries.  Convexity and geometric convexity are
validated numerically on geometric grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import matcore
from .errors import DomainViolation, NotInvertible
from .prng import as_rng

GRID_POINTS = 200
GRID_EDGE = 1e-3
GRID_INF = 1e3
VALIDATOR_TOL = 1e-10
GEO_ALPHAS = tuple(np.round(np.arange(1, 10) / 10, 1))

INCREASING = "increasing"
DECREASING = "decreasing"


@dataclass(frozen=True)
class FunctionDescriptor:
    """A scalar function with its domain and declared classes.

    ``convexity`` is one of concave / convex / affine / neither and
    ``geometric`` one of concave / convex / both / neither; affine and both
    count for either side.  ``operator_monotone`` is read in the direction of
    ``monotone``: for a decreasing entry it means operator monotone
    decreasing.
    """

    name: str
    fn: Callable = field(repr=False, compare=False)
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False
    monotone: str = INCREASING
    convexity: str = "neither"
    geometric: str = "neither"
    operator_monotone: bool = False
    inverse: Callable | None = field(default=None, repr=False, compare=False)
    matrix_suites: bool = True

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=np.float64))

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        lo_ok = x >= self.lo if self.lo_closed else x > self.lo
        hi_ok = x <= self.hi if self.hi_closed else x < self.hi
        return lo_ok & hi_ok

    @property
    def increasing(self) -> bool:
        return self.monotone == INCREASING

    @property
    def decreasing(self) -> bool:
        return self.monotone == DECREASING

    @property
    def concave(self) -> bool:
        return self.convexity in ("concave", "affine")

    @property
    def convex(self) -> bool:
        return self.convexity in ("convex", "affine")

    @property
    def geo_concave(self) -> bool:
        return self.geometric in ("concave", "both")

    @property
    def geo_convex(self) -> bool:
        return self.geometric in ("convex", "both")

    @property
    def doubly_concave(self) -> bool:
        return self.concave and self.geo_concave

    @property
    def doubly_convex(self) -> bool:
        return self.convex and self.geo_convex

    @property
    def from_zero(self) -> bool:
        """Defined on [0, inf)."""
        return self.lo == 0.0 and self.lo_closed and math.isinf(self.hi)

    @property
    def on_positive_axis(self) -> bool:
        """Defined on all of (0, inf)."""
        return self.lo <= 0.0 and math.isinf(self.hi)

    def invert(self, y) -> np.ndarray:
        if self.inverse is None:
            raise NotInvertible(f"{self.name} has no declared inverse")
        return self.inverse(np.asarray(y, dtype=np.float64))


def _power(p: float) -> Callable:
    return lambda t: np.power(t, p)


def _cubic_plus_linear_inverse(y):
    # real root of t^3 + t - y = 0; Cardano with the second cube root written as
    # -1/(3u) to avoid cancellation, then one Newton step
    u = np.cbrt(y / 2.0 + np.sqrt(y * y / 4.0 + 1.0 / 27.0))
    t = u - 1.0 / (3.0 * u)
    return t - (t**3 + t - y) / (3.0 * t * t + 1.0)


def _neg_t_log_t(t):
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -t * np.log(t)
    return np.where(t == 0.0, 0.0, out)


INF = math.inf


def _catalog() -> tuple[FunctionDescriptor, ...]:
    D = FunctionDescriptor
    return (
        # increasing, operator monotone, doubly concave on [0, inf)
        D("t", lambda t: t, 0.0, INF, True, monotone=INCREASING, convexity="affine",
          geometric="both", operator_monotone=True, inverse=lambda y: y),
        D("sqrt", np.sqrt, 0.0, INF, True, convexity="concave", geometric="both",
          operator_monotone=True, inverse=lambda y: y * y),
        D("t^0.3", _power(0.3), 0.0, INF, True, convexity="concave", geometric="both",
          operator_monotone=True, inverse=_power(1 / 0.3)),
        D("t/(t+1)", lambda t: t / (t + 1.0), 0.0, INF, True, convexity="concave",
          geometric="concave", operator_monotone=True),
        D("t/sqrt(t+1)", lambda t: t / np.sqrt(t + 1.0), 0.0, INF, True,
          convexity="concave", geometric="concave", operator_monotone=True),
        D("log(1+t)", np.log1p, 0.0, INF, True, convexity="concave",
          geometric="concave", operator_monotone=True),
        # doubly concave, not operator monotone
        D("1-exp(-t)", lambda t: -np.expm1(-t), 0.0, INF, True, convexity="concave",
          geometric="concave", operator_monotone=False),
        # doubly concave on [1, inf) or [0, 1]
        D("log", np.log, 1.0, INF, True, convexity="concave", geometric="concave",
          operator_monotone=True),
        D("(t-1)^0.5", lambda t: np.sqrt(t - 1.0), 1.0, INF, True, convexity="concave",
          geometric="concave", operator_monotone=True),
        D("-t*log(t)", _neg_t_log_t, 0.0, 1.0, True, True, monotone="neither",
          convexity="concave", geometric="concave", matrix_suites=False),
        D("t-1", lambda t: t - 1.0, 1.0, INF, convexity="affine", geometric="concave",
          operator_monotone=True, inverse=lambda y: y + 1.0),
        # increasing doubly convex
        D("t^2", _power(2.0), 0.0, INF, True, convexity="convex", geometric="both",
          inverse=np.sqrt),
        D("t^1.5", _power(1.5), 0.0, INF, True, convexity="convex", geometric="both",
          inverse=_power(1 / 1.5)),
        D("t^3+t", lambda t: t**3 + t, 0.0, INF, True, convexity="convex",
          geometric="convex", inverse=_cubic_plus_linear_inverse),
        # decreasing
        D("t^-1", _power(-1.0), 0.0, INF, monotone=DECREASING, convexity="convex",
          geometric="both", operator_monotone=True, inverse=_power(-1.0)),
        D("t^-0.5", _power(-0.5), 0.0, INF, monotone=DECREASING, convexity="convex",
          geometric="both", operator_monotone=True, inverse=_power(-2.0)),
        D("t^-2", _power(-2.0), 0.0, INF, monotone=DECREASING, convexity="convex",
          geometric="both", operator_monotone=False, inverse=_power(-0.5)),
        D("t^-1+t^-2", lambda t: 1.0 / t + 1.0 / (t * t), 0.0, INF, monotone=DECREASING,
          convexity="convex", geometric="convex", operator_monotone=False),
        D("1/(1+t)", lambda t: 1.0 / (1.0 + t), 0.0, INF, True, monotone=DECREASING,
          convexity="convex", geometric="concave", operator_monotone=True),
        D("csc", lambda t: 1.0 / np.sin(t), 0.0, math.pi / 2, monotone=DECREASING,
          convexity="convex", geometric="convex", matrix_suites=False),
    )


_CATALOG = _catalog()


def builtin_catalog() -> list[FunctionDescriptor]:
    return list(_CATALOG)


def get(name: str) -> FunctionDescriptor:
    for d in _CATALOG:
        if d.name == name:
            return d
    raise KeyError(name)


def shifted_identity(n_terms: int) -> FunctionDescriptor:
    """``t - 1/(n-1)`` on ``(1/(n-1), inf)``, the shift behind the Aczel counterpart."""
    if n_terms < 2:
        raise ValueError("need at least two terms")
    c = 1.0 / (n_terms - 1)
    return FunctionDescriptor(
        f"t-1/{n_terms - 1}", lambda t: t - c, c, INF, convexity="affine",
        geometric="neither", operator_monotone=True, inverse=lambda y: y + c,
        matrix_suites=False,
    )


def default_grid(f: FunctionDescriptor, points: int = GRID_POINTS) -> np.ndarray:
    """Geometric grid inside the domain.

    Open endpoints and 0 are moved 1e-3 inward; an infinite upper end is
    truncated at 1e3.
    """
    lo = f.lo + GRID_EDGE if (f.lo <= 0.0 or not f.lo_closed) else f.lo
    if math.isinf(f.hi):
        hi = GRID_INF
    else:
        hi = f.hi if f.hi_closed else f.hi - GRID_EDGE
    return np.geomspace(lo, hi, points)


def _grid(f, grid):
    x = default_grid(f) if grid is None else np.asarray(grid, dtype=np.float64)
    ok = f.contains(x)
    if not np.all(ok):
        raise DomainViolation(f"grid point {x[~ok][0]!r} outside the domain of {f.name}")
    return x


def _result(check_id, slacks, raw, f, mode, tol):
    from .checkers import CheckResult

    k = int(np.argmin(slacks))
    return CheckResult(
        check_id=check_id,
        slack=float(slacks[k]),
        raw_slack=float(raw[k]),
        constant_used=1.0,
        tol=tol,
        trial_meta={"function": f.name, "mode": mode, "pairs": int(slacks.size)},
    )


def validate_geo_convexity(f: FunctionDescriptor, mode: str, grid=None,
                           tol: float = VALIDATOR_TOL):
    """Evaluate ``f(x^a y^(1-a))`` against ``f(x)^a f(y)^(1-a)`` on all grid pairs.

    Concave mode wants the left side larger, convex mode the right side.
    Slack is relative to ``max(1, |lhs|, |rhs|)``.
    """
    if mode not in ("concave", "convex"):
        raise ValueError(f"mode must be concave or convex, got {mode!r}")
    x = _grid(f, grid)
    fx = f(x)
    i, j = np.triu_indices(x.size, k=1)
    a = np.asarray(GEO_ALPHAS)[:, None]
    lx, ly = np.log(x[i]), np.log(x[j])
    mid = np.exp(a * lx + (1 - a) * ly)
    lhs = f(mid)
    with np.errstate(divide="ignore"):
        rhs = np.exp(a * np.log(fx[i]) + (1 - a) * np.log(fx[j]))
    raw = lhs - rhs if mode == "concave" else rhs - lhs
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return _result(f"geo_{mode}", (raw / scale).ravel(), raw.ravel(), f, mode, tol)


def validate_convexity(f: FunctionDescriptor, mode: str, grid=None,
                       tol: float = VALIDATOR_TOL):
    """Midpoint convexity slack on all grid pairs."""
    if mode not in ("concave", "convex"):
        raise ValueError(f"mode must be concave or convex, got {mode!r}")
    x = _grid(f, grid)
    fx = f(x)
    i, j = np.triu_indices(x.size, k=1)
    lhs = f(0.5 * (x[i] + x[j]))
    rhs = 0.5 * (fx[i] + fx[j])
    raw = lhs - rhs if mode == "concave" else rhs - lhs
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return _result(f"convexity_{mode}", raw / scale, raw, f, mode, tol)


def validate_monotone(f: FunctionDescriptor, grid=None, tol: float = VALIDATOR_TOL):
    x = _grid(f, grid)
    fx = f(x)
    d = np.diff(fx) if f.increasing else -np.diff(fx)
    scale = np.maximum(1.0, np.abs(fx[1:]))
    return _result("monotone", d / scale, d, f, f.monotone, tol)


def operator_monotone_spot_check(f: FunctionDescriptor, trials: int = 200, seed: int = 0,
                                 tol: float = 1e-8):
    """Random 2x2 pairs ``A <= B`` inside the domain; checks ``f(A) <= f(B)``.

    For decreasing entries the expected order is reversed.  Returns the worst
    normalized Loewner slack.
    """
    rng = as_rng(seed)
    lo = f.lo + (GRID_EDGE if (f.lo <= 0 or not f.lo_closed) else 0.0)
    hi = min(f.hi - GRID_EDGE, 50.0) if not math.isinf(f.hi) else 50.0
    worst = math.inf
    worst_raw = math.inf
    for _ in range(trials):
        theta = rng.uniform(0.0, math.pi)
        c, s = math.cos(theta), math.sin(theta)
        Q = np.array([[c, -s], [s, c]])
        # A's spectrum in [lo, mid]; B = A + rank-one PSD with spectrum below hi
        mid = lo + 0.5 * (hi - lo)
        lam = np.sort(rng.uniform(lo, mid, 2))[::-1]
        A = matcore.from_spectrum(Q, lam)
        v = rng.normal(2)
        v /= np.linalg.norm(v)
        gap = rng.uniform(0.0, hi - mid) * 0.99
        B = A + gap * np.outer(v, v)
        fa = matcore.apply_fn(A, f)
        fb = matcore.apply_fn(B, f)
        lo_m, hi_m = (fa, fb) if f.increasing else (fb, fa)
        raw = float(matcore.eigvals_sym(hi_m - lo_m)[-1])
        scale = max(1.0, matcore.spectral_norm(fa), matcore.spectral_norm(fb))
        if raw / scale < worst:
            worst, worst_raw = raw / scale, raw
    from .checkers import CheckResult

    return CheckResult(
        check_id="operator_monotone_2x2",
        slack=worst,
        raw_slack=worst_raw,
        constant_used=1.0,
        tol=tol,
        trial_meta={"function": f.name, "trials": trials, "seed": seed},
    )


def validate_declared(f: FunctionDescriptor, grid=None) -> list:
    """Run every validator implied by the declared flags."""
    out = []
    if f.monotone in (INCREASING, DECREASING):
        out.append(validate_monotone(f, grid))
    for mode in ("concave", "convex"):
        if (mode == "concave" and f.concave) or (mode == "convex" and f.convex):
            out.append(validate_convexity(f, mode, grid))
        if (mode == "concave" and f.geo_concave) or (mode == "convex" and f.geo_convex):
            out.append(validate_geo_convexity(f, mode, grid))
    if f.operator_monotone:
        out.append(operator_monotone_spot_check(f))
    return out

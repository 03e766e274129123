"""Seeded verification campaigns over every checker.

A trial is fully determined by ``(suite, n, trial_seed)`` with
``trial_seed = seed ^ trial_index``.  The function, weight, exponents and
instance are all drawn from one generator seeded with ``trial_seed``, so a
campaign with ``--seed <trial_seed> --trials 1`` for the same suite and
dimension replays that trial exactly.
"""

from __future__ import annotations

import math
import os
import platform
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import checkers as ck
from . import funcatalog as fc
from . import generators as gen
from .errors import ConfigError, HypothesisUnsatisfied, NotInvertible
from .prng import Xoshiro256

SCHEMA_VERSION = 1
MAX_DIM = 32
PROBES_PER_TRIAL = 8
SANDWICH_RANGE = (0.2, 5.0)
P_RANGE = (1.2, 5.0)
NORM_FLOOR = 1.2
MAX_REGENERATIONS = 200
FAILURES_KEPT = 5
THREADS_ENV = "LOEWNER_LAB_THREADS"

MATRIX = "matrix"
SCALAR = "scalar"


@dataclass
class CampaignConfig:
    suites: list[str]
    dims: list[int]
    trials: int = 100
    seed: int = 0
    tol_matrix: float = ck.TOL_MATRIX
    tol_scalar: float = ck.TOL_SCALAR
    spectrum: tuple[float, float] = gen.DEFAULT_SPECTRUM
    exponents: list[tuple[float, float]] = field(default_factory=list)

    def validate(self):
        if not self.suites:
            raise ConfigError("no suites selected")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)}")
        if not self.dims:
            raise ConfigError("no dimensions selected")
        for n in self.dims:
            if not 2 <= n <= MAX_DIM:
                raise ConfigError(f"dimension {n} outside [2, {MAX_DIM}]")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not (self.tol_matrix > 0 and self.tol_scalar > 0):
            raise ConfigError("tolerances must be positive")
        lo, hi = self.spectrum
        if not (0 < lo <= hi and math.isfinite(hi)):
            raise ConfigError(f"invalid spectrum range ({lo}, {hi})")
        for p, q in self.exponents:
            if not (p > 1 and q > 1 and abs(1 / p + 1 / q - 1) <= 1e-12):
                raise ConfigError(f"({p}, {q}) are not conjugate exponents")

    def echo(self) -> dict:
        return {
            "suites": list(self.suites),
            "dims": list(self.dims),
            "trials": self.trials,
            "seed": self.seed,
            "tol_matrix": self.tol_matrix,
            "tol_scalar": self.tol_scalar,
            "spectrum": list(self.spectrum),
            "exponents": [list(e) for e in self.exponents],
        }


# -- per-suite draws -------------------------------------------------------


def _names(pred) -> tuple[str, ...]:
    return tuple(f.name for f in fc.builtin_catalog() if f.matrix_suites and pred(f))


OPMONO_INC = _names(lambda f: f.increasing and f.operator_monotone and f.on_positive_axis)
OPMONO_DEC = _names(lambda f: f.decreasing and f.operator_monotone and f.on_positive_axis)
DOUBLY_CONCAVE = _names(lambda f: f.increasing and f.doubly_concave and f.from_zero)
GEN_KANT = _names(lambda f: f.increasing and f.doubly_concave and f.from_zero
                  and f.operator_monotone)
DOUBLY_CONVEX_INC = _names(lambda f: f.increasing and f.doubly_convex
                           and f.on_positive_axis and f.inverse is not None)
DEC_GEOCONVEX = _names(lambda f: f.decreasing and f.geo_convex and f.on_positive_axis)
DEC_DOUBLY_CONVEX = _names(lambda f: f.decreasing and f.doubly_convex and f.on_positive_axis)
SUM_FUNCTIONS = _names(lambda f: f.increasing and f.on_positive_axis) + ("shift",)


def _alpha(rng: Xoshiro256) -> float:
    return rng.uniform(0.0, 1.0)


def _pq(rng: Xoshiro256, cfg: CampaignConfig) -> tuple[float, float]:
    if cfg.exponents:
        return cfg.exponents[rng.integers(len(cfg.exponents))]
    p = rng.log_uniform(*P_RANGE)
    return p, p / (p - 1.0)


def _targets(rng: Xoshiro256) -> tuple[float, float]:
    a, b = rng.log_uniform(*SANDWICH_RANGE, 2)
    return float(min(a, b)), float(max(a, b))


def _fn(rng: Xoshiro256, names) -> fc.FunctionDescriptor:
    return fc.get(rng.choice(names))


def _pair(n, rng, cfg):
    s, t = _targets(rng)
    return gen.rand_sandwich_pair(n, s, t, rng, cfg.spectrum)


def _probes(n, rng):
    return gen.rand_probes(n, PROBES_PER_TRIAL, rng)


def _t_young(n, rng, cfg):
    alpha = _alpha(rng)
    return ck.check_young(_pair(n, rng, cfg), alpha, cfg.tol_matrix)


def _t_reverse_young(n, rng, cfg):
    alpha = _alpha(rng)
    return ck.check_reverse_young(_pair(n, rng, cfg), alpha, cfg.tol_matrix)


def _t_lemma_gdec(n, rng, cfg):
    g = _fn(rng, OPMONO_DEC)
    alpha = _alpha(rng)
    return ck.check_lemma_gdec(_pair(n, rng, cfg), alpha, g, cfg.tol_matrix)


def _t_lemma_fmono(n, rng, cfg):
    f = _fn(rng, OPMONO_INC)
    alpha = _alpha(rng)
    return ck.check_lemma_fmono(_pair(n, rng, cfg), alpha, f, cfg.tol_matrix)


def _t_aczel_variant(n, rng, cfg):
    f = _fn(rng, OPMONO_INC)
    p, q = _pq(rng, cfg)
    pair = _pair(n, rng, cfg)
    return ck.check_aczel_variant(pair, p, q, f, _probes(n, rng), cfg.tol_matrix)


def _t_scalar_sandwich(n, rng, cfg):
    alpha = _alpha(rng)
    pair = _pair(n, rng, cfg)
    return ck.check_scalar_sandwich(pair, alpha, _probes(n, rng), cfg.tol_matrix)


def _t_eig_doubly_concave(n, rng, cfg):
    f = _fn(rng, DOUBLY_CONCAVE)
    alpha = _alpha(rng)
    return ck.check_eig_doubly_concave(_pair(n, rng, cfg), alpha, f, cfg.tol_matrix)


def _t_unitary(n, rng, cfg):
    f = _fn(rng, DOUBLY_CONCAVE)
    alpha = _alpha(rng)
    return ck.check_unitary_form_concave(_pair(n, rng, cfg), alpha, f, cfg.tol_matrix)


def _t_gen_kantorovich(n, rng, cfg):
    names = GEN_KANT + ("t-1",)
    f = _fn(rng, names)
    p, q = _pq(rng, cfg)
    if f.name == "t-1":
        # commuting pair with spectra of A^p and B^q above 1
        s = rng.log_uniform(*gen.STRADDLE_LOW)
        t = rng.log_uniform(*gen.STRADDLE_HIGH)
        a_lo = max(NORM_FLOOR, (1.05 / s) ** (1.0 / p), cfg.spectrum[0])
        a_hi = max(a_lo, cfg.spectrum[1])
        cp = gen.rand_commuting_sandwich(n, p, q, s, t, rng, (a_lo, a_hi))
        pair = gen.commuting_power_pair(cp, p, q)
        if min(cp.a**p) <= 1 or min(cp.b**q) <= 1:
            raise HypothesisUnsatisfied("spectra of A^p and B^q must exceed 1")
        return ck.check_aczel_gen_kantorovich(pair, p, q, f, _probes(n, rng),
                                              cfg.tol_matrix, norm_form=True)
    pair = gen.rand_sandwich_straddle(n, rng, cfg.spectrum)
    return ck.check_aczel_gen_kantorovich(pair, p, q, f, _probes(n, rng), cfg.tol_matrix)


def _gimage(n, rng, cfg, g):
    s, t = _targets(rng)
    return gen.rand_gimage_sandwich(n, g, s, t, rng, cfg.spectrum)


def _t_eig_doubly_convex(n, rng, cfg):
    g = _fn(rng, DOUBLY_CONVEX_INC)
    alpha = _alpha(rng)
    return ck.check_eig_doubly_convex(_gimage(n, rng, cfg, g), alpha, g, cfg.tol_matrix)


def _t_reverse_aczel(n, rng, cfg):
    g = _fn(rng, DOUBLY_CONVEX_INC)
    p, q = _pq(rng, cfg)
    pair = _gimage(n, rng, cfg, g)
    return ck.check_reverse_aczel(pair, p, q, g, _probes(n, rng), cfg.tol_matrix)


def _t_eig_dec_geoconvex(n, rng, cfg):
    g = _fn(rng, DEC_GEOCONVEX)
    alpha = _alpha(rng)
    return ck.check_eig_dec_geoconvex(_pair(n, rng, cfg), alpha, g, cfg.tol_matrix)


def _t_reverse_aczel_dec(n, rng, cfg):
    g = _fn(rng, DEC_DOUBLY_CONVEX)
    p, q = _pq(rng, cfg)
    pair = _pair(n, rng, cfg)
    return ck.check_reverse_aczel_dec(pair, p, q, g, _probes(n, rng), cfg.tol_matrix)


def _t_commuting_product(n, rng, cfg):
    f = _fn(rng, OPMONO_INC)
    p, q = _pq(rng, cfg)
    s, t = _targets(rng)
    a_range = cfg.spectrum
    if rng.random() < 0.5:
        # half the trials keep both spectra above 1 so the norm form is exercised
        s = max(s, 1.05 * NORM_FLOOR ** (-p))
        t = max(t, s)
        a_range = (max(NORM_FLOOR, cfg.spectrum[0]), max(NORM_FLOOR, cfg.spectrum[1]))
    cp = gen.rand_commuting_sandwich(n, p, q, s, t, rng, a_range)
    return ck.check_commuting_product(cp, p, q, f, _probes(n, rng), cfg.tol_matrix)


def _t_aczel_classic(n, rng, cfg):
    a, b = gen.rand_popoviciu_instance(n, 2.0, rng)
    return ck.check_aczel_classic(a, b, cfg.tol_scalar)


def _t_popoviciu(n, rng, cfg):
    p, q = _pq(rng, cfg)
    a, b = gen.rand_popoviciu_instance(n, p, rng)
    return ck.check_popoviciu(a, b, p, q, cfg.tol_scalar)


def _t_sum_counterpart(n, rng, cfg):
    name = rng.choice(SUM_FUNCTIONS)
    f = fc.shifted_identity(n) if name == "shift" else fc.get(name)
    p, _ = _pq(rng, cfg)
    inst = gen.rand_scalar_instance(n, p, rng)
    return ck.check_sum_counterpart(inst, f, cfg.tol_scalar)


def _t_aczel_counterpart(n, rng, cfg):
    p, _ = _pq(rng, cfg)
    inst = gen.rand_scalar_instance(n, p, rng, rescale=True)
    return ck.check_aczel_counterpart(inst, cfg.tol_scalar)


@dataclass(frozen=True)
class Suite:
    run: Callable
    kind: str


SUITES: dict[str, Suite] = {
    "check_young": Suite(_t_young, MATRIX),
    "check_reverse_young": Suite(_t_reverse_young, MATRIX),
    "check_lemma_gdec": Suite(_t_lemma_gdec, MATRIX),
    "check_lemma_fmono": Suite(_t_lemma_fmono, MATRIX),
    "check_aczel_variant": Suite(_t_aczel_variant, MATRIX),
    "check_scalar_sandwich": Suite(_t_scalar_sandwich, MATRIX),
    "check_eig_doubly_concave": Suite(_t_eig_doubly_concave, MATRIX),
    "check_unitary_form_concave": Suite(_t_unitary, MATRIX),
    "check_aczel_gen_kantorovich": Suite(_t_gen_kantorovich, MATRIX),
    "check_eig_doubly_convex": Suite(_t_eig_doubly_convex, MATRIX),
    "check_reverse_aczel": Suite(_t_reverse_aczel, MATRIX),
    "check_eig_dec_geoconvex": Suite(_t_eig_dec_geoconvex, MATRIX),
    "check_reverse_aczel_dec": Suite(_t_reverse_aczel_dec, MATRIX),
    "check_commuting_product": Suite(_t_commuting_product, MATRIX),
    "check_aczel_classic": Suite(_t_aczel_classic, SCALAR),
    "check_popoviciu": Suite(_t_popoviciu, SCALAR),
    "check_sum_counterpart": Suite(_t_sum_counterpart, SCALAR),
    "check_aczel_counterpart": Suite(_t_aczel_counterpart, SCALAR),
}

REGENERATE = (HypothesisUnsatisfied, NotInvertible)


# -- trial execution -------------------------------------------------------


@dataclass
class TrialOutcome:
    suite: str
    n: int
    seed: int
    result: ck.CheckResult | None
    regenerations: int = 0
    error: str | None = None


def run_trial(suite: str, n: int, trial_seed: int, cfg: CampaignConfig) -> TrialOutcome:
    """One trial; hypothesis failures are redrawn from the same stream."""
    rng = Xoshiro256(trial_seed)
    run = SUITES[suite].run
    for k in range(MAX_REGENERATIONS):
        try:
            res = run(n, rng, cfg)
        except REGENERATE:
            continue
        except Exception as exc:  # recorded, never skipped
            return TrialOutcome(suite, n, trial_seed, None, k, f"{type(exc).__name__}: {exc}")
        res.trial_meta["seed"] = trial_seed
        if not math.isfinite(res.slack):
            return TrialOutcome(suite, n, trial_seed, res, k, "non-finite slack")
        return TrialOutcome(suite, n, trial_seed, res, k)
    return TrialOutcome(suite, n, trial_seed, None, MAX_REGENERATIONS,
                        "HypothesisUnsatisfied: regeneration budget exhausted")


def _run_block(args) -> list[TrialOutcome]:
    suite, n, cfg = args
    return [run_trial(suite, n, cfg.seed ^ i, cfg) for i in range(cfg.trials)]


def thread_count() -> int:
    cap = os.environ.get(THREADS_ENV)
    cpus = os.cpu_count() or 1
    if cap is None:
        return cpus
    try:
        v = int(cap)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    if v < 1:
        raise ConfigError(f"{THREADS_ENV} must be at least 1")
    return min(v, cpus)


def _execute(cfg: CampaignConfig, threads: int) -> list[list[TrialOutcome]]:
    blocks = [(s, n, cfg) for s in cfg.suites for n in cfg.dims]
    if threads <= 1 or len(blocks) == 1:
        return [_run_block(b) for b in blocks]
    import multiprocessing as mp

    with mp.get_context("fork").Pool(threads) as pool:
        return pool.map(_run_block, blocks, chunksize=1)


# -- aggregation -----------------------------------------------------------


def _f(x):
    """JSON-safe float."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _aggregate(suite: str, outcomes: list[TrialOutcome], cfg: CampaignConfig) -> dict:
    kind = SUITES[suite].kind
    tol = cfg.tol_matrix if kind == MATRIX else cfg.tol_scalar
    done = [o for o in outcomes if o.result is not None and o.error is None]
    errors = [o for o in outcomes if o.error is not None]
    violations = [o for o in done if not o.result.passed]
    agg = {
        "kind": kind,
        "tol": tol,
        "trials": len(outcomes),
        "evaluated": len(done),
        "violations": len(violations),
        "errors": len(errors),
        "regenerations": int(sum(o.regenerations for o in outcomes)),
        "min_slack": None,
        "argmin_seed": None,
        "argmin_n": None,
        "argmin_meta": None,
        "constant_min": None,
        "constant_max": None,
        "constant_mean": None,
        "worst_ratio": None,
        "min_slack_by_function": {},
        "failures": [],
        "status": "pass",
    }
    if done:
        # ties broken by (n, seed) so the argmin does not depend on block order
        worst = min(done, key=lambda o: (o.result.slack, o.n, o.seed))
        consts = np.array([o.result.constant_used for o in done])
        agg.update(
            min_slack=_f(worst.result.slack),
            argmin_seed=worst.seed,
            argmin_n=worst.n,
            argmin_meta=_jsonable(worst.result.trial_meta),
            constant_min=_f(consts.min()),
            constant_max=_f(consts.max()),
            constant_mean=_f(consts.mean()),
        )
        ratios = [o.result.ratio for o in done if o.result.ratio is not None]
        if ratios:
            agg["worst_ratio"] = _f(max(ratios))
        by_fn: dict[str, float] = {}
        for o in done:
            name = o.result.trial_meta.get("function")
            if name is not None:
                by_fn[name] = min(by_fn.get(name, math.inf), o.result.slack)
        agg["min_slack_by_function"] = {k: _f(by_fn[k]) for k in sorted(by_fn)}
    bad = sorted(violations, key=lambda o: (o.result.slack, o.n, o.seed))[:FAILURES_KEPT]
    agg["failures"] = [
        {"seed": o.seed, "n": o.n, "slack": _f(o.result.slack),
         "meta": _jsonable(o.result.trial_meta)} for o in bad
    ] + [
        {"seed": o.seed, "n": o.n, "error": o.error}
        for o in sorted(errors, key=lambda o: (o.n, o.seed))[:FAILURES_KEPT]
    ]
    if violations:
        agg["status"] = "violation"
    elif errors:
        agg["status"] = "error"
    return agg


def _jsonable(meta: dict) -> dict:
    out = {}
    for k in sorted(meta):
        v = meta[k]
        if isinstance(v, np.generic):
            v = v.item()
        if isinstance(v, float):
            v = _f(v)
        out[k] = v
    return out


def _versions() -> dict:
    import numba

    from . import __version__

    return {
        "loewner_lab": __version__,
        "numpy": np.__version__,
        "numba": numba.__version__,
        "python": platform.python_version(),
    }


def run(cfg: CampaignConfig, include_timing: bool = True) -> dict:
    """Run a campaign and return the report as an ordered dict."""
    cfg.validate()
    threads = thread_count()
    t0 = time.perf_counter()
    blocks = _execute(cfg, threads)
    wall = time.perf_counter() - t0
    by_suite: dict[str, list[TrialOutcome]] = {s: [] for s in cfg.suites}
    for block in blocks:
        for o in block:
            by_suite[o.suite].append(o)
    checks = {s: _aggregate(s, by_suite[s], cfg) for s in cfg.suites}
    statuses = {c["status"] for c in checks.values()}
    if "violation" in statuses:
        status, code = "violation", 1
    elif "error" in statuses:
        status, code = "error", 2
    else:
        status, code = "pass", 0
    report = {
        "schema_version": SCHEMA_VERSION,
        "status": status,
        "exit_code": code,
        "config": cfg.echo(),
        "checks": checks,
        "versions": _versions(),
    }
    if include_timing:
        report["wall_time_s"] = round(wall, 3)
        report["threads"] = threads
    return report

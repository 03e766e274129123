"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a one-line verdict that conftest prints in the terminal
summary, so ``pytest -v`` output ends with a pass/fail line per criterion.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

import commuting_cases as cc
from loewner_lab import campaign
from loewner_lab import checkers as ck
from loewner_lab import funcatalog as fc
from loewner_lab import generators as gen
from loewner_lab import matcore
from loewner_lab.constants import kantorovich, kantorovich_gen, specht
from loewner_lab.generators import SandwichPair
from loewner_lab.prng import Xoshiro256

VERDICTS: dict[int, str] = {}


def _record(k, ok, detail):
    VERDICTS[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


def test_criterion_1_reference_constants():
    t0 = time.perf_counter()
    out = subprocess.run([sys.executable, "-m", "loewner_lab.cli", "constants",
                          "--h", "0.01,5", "--R", "0.6", "--format", "csv"],
                         capture_output=True, text=True, check=True).stdout
    elapsed = time.perf_counter() - t0
    rows = [r.split(",") for r in out.splitlines()]
    small = float(rows[1][-1])
    big = float(rows[2][-1])
    exact_small = kantorovich(0.01) ** 0.6 - specht(0.01)
    exact_big = kantorovich(5.0) ** 0.6 - specht(5.0)
    ok = (abs(small + 1.30357) <= 1e-4 and abs(big - 0.0556589) <= 1e-6
          and abs(exact_small + 1.30357) <= 1e-4 and abs(exact_big - 0.0556589) <= 1e-6
          and elapsed < 1.0)
    _record(1, ok, f"h=0.01 -> {small}, h=5 -> {big}, wall {elapsed:.2f}s (process incl. startup)")
    assert ok


@pytest.fixture(scope="module")
def full_campaign():
    cfg = campaign.CampaignConfig(
        suites=list(campaign.SUITES), dims=[2, 3, 5, 8], trials=1000, seed=42,
        spectrum=(0.1, 10.0),
    )
    t0 = time.perf_counter()
    report = campaign.run(cfg)
    return report, time.perf_counter() - t0


@pytest.mark.slow
def test_criterion_2_full_campaign(full_campaign):
    report, elapsed = full_campaign
    failing = []
    lines = []
    for cid, agg in report["checks"].items():
        tol = 1e-8 if agg["kind"] == "matrix" else 1e-12
        ok = agg["min_slack"] is not None and agg["min_slack"] >= -tol and agg["errors"] == 0
        lines.append(f"    {'ok ' if ok else 'BAD'} {cid:30s} min_slack={agg['min_slack']:.3e} "
                     f"violations={agg['violations']}/{agg['trials']} "
                     f"argmin_seed={agg['argmin_seed']} n={agg['argmin_n']}")
        if not ok:
            worst_fn = agg["argmin_meta"].get("function", "-")
            failing.append(f"{cid}[{worst_fn}]")
    ok = not failing and report["exit_code"] == 0 and elapsed < 120
    detail = (f"exit {report['exit_code']}, {elapsed:.1f}s on {report['threads']} thread(s); "
              f"failing: {', '.join(failing) or 'none'}\n" + "\n".join(lines))
    _record(2, ok, detail)
    assert ok, detail


def test_criterion_3_oracle_equivalence():
    worst = {name: cc.max_deviation(name, count=200, seed=2024) for name in cc.MATRIX_CHECKS}
    top = max(worst, key=worst.get)
    ok = worst[top] <= 1e-9
    _record(3, ok, f"max |checker - oracle| = {worst[top]:.2e} ({top}), 200 instances x "
                   f"{len(worst)} checkers")
    assert ok


def test_criterion_4_eigensolver():
    rng = Xoshiro256(4)
    worst_rec = worst_orth = 0.0
    for i in range(1000):
        n = 1 + i % 12
        cond = rng.log_uniform(1.0, 100.0)
        A = gen.rand_spd(n, (1.0, cond), rng)
        d = matcore.eig_sym(A)
        fro = np.linalg.norm(A)
        worst_rec = max(worst_rec, np.linalg.norm(d.Q @ np.diag(d.lam) @ d.Q.T - A) / fro)
        worst_orth = max(worst_orth, np.linalg.norm(d.Q.T @ d.Q - np.eye(n)) / n)
    ok = worst_rec <= 1e-12 and worst_orth <= 1e-12
    _record(4, ok, f"reconstruction {worst_rec:.2e}*||A||_F, orthogonality {worst_orth:.2e}*n")
    assert ok


def test_criterion_5_degenerate_equality():
    worst = 0.0
    rng = Xoshiro256(5)
    sqrt = fc.get("sqrt")
    for i in range(50):
        n = (2, 3, 5, 8)[i % 4]
        A = gen.rand_spd(n, (0.1, 10.0), rng)
        pair = SandwichPair(A, A.copy(), *gen.measure_sandwich(A, A))
        alpha = rng.uniform(0.0, 1.0)
        p = rng.log_uniform(1.2, 5.0)
        q = p / (p - 1)
        x = gen.rand_probes(n, 8, rng)
        slacks = [
            ck.check_young(pair, alpha).slack,
            ck.check_reverse_young(pair, alpha).slack,
            ck.check_scalar_sandwich(pair, alpha, x).slack,
            ck.check_aczel_variant(pair, p, q, sqrt, x).slack,
            ck.check_aczel_gen_kantorovich(pair, p, q, sqrt, x).slack,
        ]
        worst = max(worst, max(abs(s) for s in slacks))
    exact = kantorovich(1.0) == 1.0 and specht(1.0) == 1.0 and all(
        kantorovich_gen(1.0, a) == 1.0 for a in (0.0, 0.25, 0.5, 0.75, 1.0))
    ok = worst <= 1e-10 and exact
    _record(5, ok, f"max |slack| on B = A: {worst:.2e}; K(1) = K(1,a) = S(1) = 1 exactly: {exact}")
    assert ok


def test_criterion_6_classical_consistency():
    rng = Xoshiro256(6)
    disagree = 0
    for i in range(1000):
        a, b = gen.rand_popoviciu_instance(2 + i % 7, 2.0, rng)
        c = ck.check_aczel_classic(a, b).raw_slack
        p = ck.check_popoviciu(a, b, 2.0, 2.0).raw_slack
        disagree += (c >= 0) != (p >= 0)
    h1 = ck.check_aczel_classic([2, 1], [2, 1]).raw_slack
    h2 = ck.check_aczel_classic([2, 1], [3, 1]).raw_slack
    ok = disagree == 0 and h1 == 0.0 and h2 == 1.0
    _record(6, ok, f"sign disagreements {disagree}/1000; hand slacks {h1}, {h2}")
    assert ok


def test_criterion_7_catalog_integrity():
    bad = []
    count = 0
    for f in fc.builtin_catalog():
        for r in fc.validate_declared(f):
            count += 1
            if not r.passed:
                bad.append(f"{f.name}:{r.check_id}")
    ok = not bad
    _record(7, ok, f"{count} validator runs over {len(fc.builtin_catalog())} entries; "
                   f"violations: {', '.join(bad) or 'none'}")
    assert ok

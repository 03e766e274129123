"""Command-line entry point: ``loewner-lab run`` and ``loewner-lab constants``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import campaign
from .constants import kantorovich, kantorovich_gen, specht
from .errors import ConfigError, LabError

DEFAULT_H = (0.01, 0.5, 1.0, 2.0, 5.0)
DEFAULT_R = 0.6
DEFAULT_W = (1.0, 2.0, 4.0, 10.0)
DEFAULT_ALPHA = (0.25, 0.5, 0.75)

CSV_FIELDS = (
    "check_id", "kind", "status", "tol", "trials", "evaluated", "violations", "errors",
    "regenerations", "min_slack", "argmin_seed", "argmin_n", "constant_min",
    "constant_max", "constant_mean", "worst_ratio",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _pq_list(text: str) -> list[tuple[float, float]]:
    """``"2,3:1.5"`` -> [(2, 2), (3, 1.5)]; q defaults to the conjugate of p."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ":" in item:
                p, q = (float(x) for x in item.split(":"))
            else:
                p = float(item)
                q = p / (p - 1.0) if p != 1 else float("inf")
        except ValueError:
            raise ConfigError(f"bad exponent pair {item!r}") from None
        out.append((p, q))
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loewner-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    r = sub.add_parser("run", help="run a verification campaign")
    r.add_argument("--suites", default="all",
                   help="comma-separated check ids, or 'all'")
    r.add_argument("--dims", default="2,3,5,8")
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tol-matrix", type=float, default=campaign.ck.TOL_MATRIX)
    r.add_argument("--tol-scalar", type=float, default=campaign.ck.TOL_SCALAR)
    r.add_argument("--spectrum", type=float, nargs=2, metavar=("LO", "HI"))
    r.add_argument("--spectrum-lo", type=float)
    r.add_argument("--spectrum-hi", type=float)
    r.add_argument("--pq", help="exponents as p or p:q, comma-separated")
    r.add_argument("--out", help="report path (stdout summary only when omitted)")
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.add_argument("--omit-timing", action="store_true",
                   help="leave wall time out so reports are bit-identical")
    r.add_argument("--quiet", action="store_true")

    c = sub.add_parser("constants", help="print Kantorovich / Specht tables")
    c.add_argument("--h", default=",".join(str(x) for x in DEFAULT_H))
    c.add_argument("--R", type=float, default=DEFAULT_R)
    c.add_argument("--w", default=",".join(str(x) for x in DEFAULT_W))
    c.add_argument("--alpha", default=",".join(str(x) for x in DEFAULT_ALPHA))
    c.add_argument("--format", choices=("text", "csv"), default="text")
    return parser


def config_from_args(args) -> campaign.CampaignConfig:
    suites = list(campaign.SUITES) if args.suites.strip() == "all" else [
        s.strip() for s in args.suites.split(",") if s.strip()
    ]
    lo, hi = campaign.gen.DEFAULT_SPECTRUM
    if args.spectrum:
        lo, hi = args.spectrum
    if args.spectrum_lo is not None:
        lo = args.spectrum_lo
    if args.spectrum_hi is not None:
        hi = args.spectrum_hi
    cfg = campaign.CampaignConfig(
        suites=suites,
        dims=_ints(args.dims),
        trials=args.trials,
        seed=args.seed,
        tol_matrix=args.tol_matrix,
        tol_scalar=args.tol_scalar,
        spectrum=(lo, hi),
        exponents=_pq_list(args.pq) if args.pq else [],
    )
    cfg.validate()
    return cfg


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_FIELDS)
    for cid, agg in report["checks"].items():
        w.writerow([cid] + ["" if agg[k] is None else agg[k] for k in CSV_FIELDS[1:]])
    return buf.getvalue()


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def _summary(report: dict) -> str:
    lines = []
    for cid, agg in report["checks"].items():
        ms = agg["min_slack"]
        ms = "n/a" if ms is None else f"{ms:.3e}"
        lines.append(f"{agg['status'].upper():9s} {cid:30s} trials={agg['trials']:<6d} "
                     f"min_slack={ms} argmin_seed={agg['argmin_seed']} n={agg['argmin_n']}")
    lines.append(f"status: {report['status']} (exit {report['exit_code']})")
    return "\n".join(lines)


def cmd_run(args) -> int:
    cfg = config_from_args(args)
    report = campaign.run(cfg, include_timing=not args.omit_timing)
    if args.out:
        text = report_csv(report) if args.format == "csv" else report_json(report)
        newline = "" if args.format == "csv" else None
        try:
            with open(args.out, "w", encoding="utf-8", newline=newline) as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 2
    if not args.quiet:
        print(_summary(report))
    return report["exit_code"]


def _g(x: float) -> str:
    return f"{x:.6g}"


def constants_rows(hs, R, ws, alphas):
    """Rows ``(h, K(h), K(h)^R, S(h), K(h)^R - S(h))`` and ``(w, alpha, K(w, alpha))``."""
    if not 0 <= R <= 1:
        raise ConfigError(f"R={R} outside [0, 1]")
    rows = []
    for h in hs:
        if not h > 0:
            raise ConfigError(f"h={h} must be positive")
        k = kantorovich(h)
        kr = k**R
        s = specht(h)
        rows.append((h, k, kr, s, kr - s))
    grid = []
    for w in ws:
        for a in alphas:
            if not (w > 0 and 0 <= a <= 1):
                raise ConfigError(f"invalid grid point w={w}, alpha={a}")
            grid.append((w, a, kantorovich_gen(w, a)))
    return rows, grid


def cmd_constants(args) -> int:
    rows, grid = constants_rows(_floats(args.h), args.R, _floats(args.w), _floats(args.alpha))
    R = _g(args.R)
    head = ("h", "K(h)", f"K(h)^{R}", "S(h)", f"K(h)^{R}-S(h)")
    ghead = ("w", "alpha", "K(w,alpha)")
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(head)
        w.writerows([_g(x) for x in r] for r in rows)
        w.writerow([])
        w.writerow(ghead)
        w.writerows([_g(x) for x in r] for r in grid)
        sys.stdout.write(buf.getvalue())
        return 0
    fmt = "{:>15s}" * len(head)
    print(fmt.format(*head))
    for r in rows:
        print(fmt.format(*(_g(x) for x in r)))
    print()
    gfmt = "{:>15s}" * len(ghead)
    print(gfmt.format(*ghead))
    for r in grid:
        print(gfmt.format(*(_g(x) for x in r)))
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0].startswith("-") and argv[0] not in ("-h", "--help"):
        argv = ["run"] + argv
    try:
        args = _build_parser().parse_args(argv)
        if args.command == "constants":
            return cmd_constants(args)
        return cmd_run(args)
    except LabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""``ftk``: command-line front end.

Every command writes one JSON record per line to stdout (``table --format
csv`` writes CSV instead). Record layout::

    {"schema_version": 1, "command": ..., "inputs": {...}, "values": {...},
     "residuals": [...] | null, "status": "ok" | "fail", "elapsed_ms": int}

Floats are written as ``repr`` strings, which round-trip exactly; integers
as decimal strings. ``elapsed_ms`` is 0 unless ``--timing`` is given, so
repeated runs are byte-identical.

Every flag can also be set through an environment variable named
``FTK_<FLAG>`` (``FTK_KMAX=10``, ``FTK_FORMAT=csv``, ``FTK_TIMING=1``).

Exit codes: 0 success, 2 bad input, 3 verification failure, 4 non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .errors import ConvergenceError, CostGuardError, DomainError
from .qseries import coeffs_f, unimodal_count
from .rademacher import TABLE_KMAX, TABLE_ROWS, RademacherConfig, coefficient_table, u_rademacher

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CONVERGENCE = 0, 2, 3, 4


def _num(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _env(name: str, default):
    return os.environ.get(f"FTK_{name.upper()}", default)


def _env_flag(name: str) -> bool:
    return _env(name, "").strip().lower() in {"1", "true", "yes", "on"}


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("kmax values must be integers >= 1")
    return vals


def _record(command, inputs, values, residuals=None, status="ok", elapsed_ms=0):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": {k: _num(v) if isinstance(v, (int, float)) else v for k, v in inputs.items()},
        "values": values,
        "residuals": residuals,
        "status": status,
        "elapsed_ms": int(elapsed_ms),
    }


def _emit(rec, out):
    out.write(json.dumps(rec, sort_keys=False) + "\n")


# ---------------------------------------------------------------------------

def cmd_unimodal(args):
    if args.n < 1:
        raise DomainError("n must be >= 1 (the generating function gives u(0) = 0 by convention)")
    values, status = {}, "ok"
    if args.mode in ("exact", "both"):
        values["exact"] = _num(unimodal_count(args.n))
    if args.mode in ("rademacher", "both"):
        res = u_rademacher(args.n, RademacherConfig(kmax=args.kmax))
        values.update(approx=_num(res.approx), rounded=_num(res.rounded), flagged=res.flagged,
                      alpha_g=_num(res.alpha_g), alpha_f=_num(res.alpha_f))
        if res.flagged:
            status = "fail"
        if args.mode == "both" and res.rounded != unimodal_count(args.n):
            status = "fail"
    return _record("unimodal", {"n": args.n, "mode": args.mode, "kmax": args.kmax}, values,
                   status=status), status == "ok"


def cmd_table(args):
    grid = coefficient_table(args.kmax_list)
    rows = list(TABLE_ROWS)
    exact = coeffs_f(max(rows) + 1).coeffs
    table = [{"n": _num(n), "exact": _num(exact[n]),
              **{f"kmax={k}": _num(grid[(n, k)]) for k in args.kmax_list}} for n in rows]
    return _record("table", {"kmax_list": ",".join(map(str, args.kmax_list))}, {"rows": table}), True


def cmd_verify(args):
    from .theta.suites import SUITES

    cases = SUITES[args.suite](args.seed, args.count)
    residuals = [{"label": c.label, "residual": _num(c.residual), "threshold": _num(c.threshold),
                  "ok": c.ok} for c in cases]
    ok = all(c.ok for c in cases)
    values = {"cases": _num(len(cases)), "max_residual": _num(max((c.residual for c in cases), default=0.0))}
    inputs = {"suite": args.suite, "seed": args.seed,
              "count": "default" if args.count is None else args.count}
    return _record("verify", inputs, values, residuals, "ok" if ok else "fail"), ok


def _table_csv(rec) -> str:
    rows = rec["values"]["rows"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ftk", description="False theta and unimodal-sequence toolkit.")
    p.add_argument("--timing", action="store_true", default=_env_flag("timing"),
                   help="record wall time in elapsed_ms (otherwise 0)")
    sub = p.add_subparsers(dest="command", required=True)

    u = sub.add_parser("unimodal", help="u(n) exactly and/or from the convergent series")
    u.add_argument("--n", type=int, default=_env("n", None), required=_env("n", None) is None)
    u.add_argument("--mode", choices=("exact", "rademacher", "both"), default=_env("mode", "exact"))
    u.add_argument("--kmax", type=int, default=int(_env("kmax", 20)))
    u.set_defaults(func=cmd_unimodal)

    t = sub.add_parser("table", help="truncated series for alpha_f at several kmax")
    t.add_argument("--kmax-list", type=_int_list,
                   default=_int_list(_env("kmax_list", ",".join(map(str, TABLE_KMAX)))))
    t.add_argument("--format", choices=("json", "csv"), default=_env("format", "json"))
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run a numerical identity suite")
    v.add_argument("--suite", choices=("jacobi", "quantum", "obstruction", "selfdual", "eichler"),
                   default=_env("suite", "jacobi"))
    v.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    count_env = _env("count", None)
    v.add_argument("--count", type=int, default=None if count_env is None else int(count_env))
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n", None) is not None:
        args.n = int(args.n)
    if getattr(args, "count", None) is not None and args.count < 1:
        print("ftk: error: --count must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        rec, ok = args.func(args)
    except (DomainError, CostGuardError) as exc:
        print(f"ftk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"ftk: did not converge: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    if args.timing:
        rec["elapsed_ms"] = int(round(1000 * (time.perf_counter() - t0)))
    if args.command == "table" and args.format == "csv":
        out.write(_table_csv(rec))
    else:
        _emit(rec, out)
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())

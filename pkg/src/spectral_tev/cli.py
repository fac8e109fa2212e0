"""Command-line front end: ``solve``, ``table``, ``converge`` and ``oracle``.

Exit codes: 0 on success, 2 for usage errors, 3 when the refractive index
violates the contrast assumption, 1 for any other solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from spectral_tev.errors import ContrastViolation, TevError
from spectral_tev.oracle import oracle_roots
from spectral_tev.problem import Mode, RefractiveIndex, TransmissionEigenvalue
from spectral_tev.published import get_table
from spectral_tev.te_solver import DEFAULT_BRANCHES, TeProblem, find_te_eigenvalues
from spectral_tev.tm_solver import TmProblem, solve_tm

__all__ = ["main", "solve_one"]

TE_DEFAULT_K_MAX = 5.0
ERROR_FLOOR = 1e-16
RECORD_KEYS = ("mode", "l", "N", "index", "k", "tau", "multiplicity")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    """``"3"``, ``"1,2,5"``, ``"1-3"`` or ``"10:30:5"`` (inclusive stop)."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part:
                a, b, *rest = (int(v) for v in part.split(":"))
                step = rest[0] if rest else 1
                if step <= 0:
                    raise ValueError
                out.extend(range(a, b + 1, step))
            elif "-" in part[1:]:
                a, b = (int(v) for v in part.split("-", 1))
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError(f"empty integer list {text!r}")
    return out


def _index(text: str) -> RefractiveIndex:
    try:
        return RefractiveIndex(tuple(float(v) for v in text.split(",")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid coefficient list {text!r}") from None


def _mode(text: str) -> Mode:
    try:
        return Mode(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"mode must be te or tm, got {text!r}") from None


def _add_problem_args(p: argparse.ArgumentParser, with_mode: bool = True) -> None:
    if with_mode:
        p.add_argument("--mode", type=_mode, default=Mode.TE, help="te or tm (default te)")
    p.add_argument("--l", type=_int_list, default=[1], help="mode index, list or range such as 1-3")
    p.add_argument("--R", type=float, default=1.0, help="ball radius")
    p.add_argument("--n", type=_index, default=RefractiveIndex((16.0,)),
                   help="refractive index coefficients in ascending powers of r, e.g. 8,0,4")
    p.add_argument("--count", type=int, default=4, help="eigenvalues per (l, N)")
    p.add_argument("--k-max", type=float, default=None,
                   help=f"largest k searched (TE default {TE_DEFAULT_K_MAX}, TM unlimited)")
    p.add_argument("--branches", type=int, default=DEFAULT_BRANCHES, help="TE branches tracked")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out", default=None, help="output file (default standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectral-tev", description="Maxwell transmission eigenvalues of a ball")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="eigenvalues for given (l, N)")
    _add_problem_args(p)
    p.add_argument("--N", type=_int_list, default=[30], help="truncation degree(s)")
    _add_output_args(p)

    p = sub.add_parser("table", help="recompute a published table and diff it")
    p.add_argument("table_id", help="6.1 to 6.6, 6.8 or 6.9")
    _add_output_args(p)

    p = sub.add_parser("converge", help="errors against a high-degree reference")
    _add_problem_args(p)
    p.add_argument("--N", type=_int_list, default=list(range(10, 56, 5)), help="ascending degree list")
    p.add_argument("--ref", type=int, default=60, help="reference degree")
    _add_output_args(p)

    p = sub.add_parser("oracle", help="compare TE roots with the Bessel determinant")
    _add_problem_args(p)
    p.add_argument("--N", type=_int_list, default=[30])
    _add_output_args(p)
    return parser


def _validate(args) -> None:
    if any(l < 1 for l in args.l):
        raise UsageError("l must be ≥ 1")
    if args.count < 1:
        raise UsageError("count must be ≥ 1")
    if args.k_max is not None and not args.k_max > 0:
        raise UsageError("k-max must be positive")
    if not args.R > 0:
        raise UsageError("R must be positive")
    if args.branches < 1:
        raise UsageError("branches must be ≥ 1")
    lowest = 5 if args.mode is Mode.TE else 2
    if any(N < lowest for N in args.N):
        raise UsageError(f"{args.mode.value} needs N ≥ {lowest}")


def solve_one(mode: Mode, l: int, N: int, index: RefractiveIndex, R: float = 1.0, count: int = 4,
              k_max: float | None = None, branches: int = DEFAULT_BRANCHES) -> list[TransmissionEigenvalue]:
    if mode is Mode.TE:
        k_max = TE_DEFAULT_K_MAX if k_max is None else k_max
        return find_te_eigenvalues(TeProblem(R, l, index, N), k_max, M=branches, count=count)
    return solve_tm(TmProblem(R, l, index, N), k_max=math.inf if k_max is None else k_max, count=count)


def _solve_grid(args, mode: Mode, ls, Ns) -> dict:
    """``{(l, N): eigenvalues}``, computed concurrently, returned in sorted key order."""
    keys = sorted({(l, N) for l in ls for N in Ns})
    with ThreadPoolExecutor() as pool:
        futures = {
            key: pool.submit(solve_one, mode, key[0], key[1], args.n, args.R, args.count, args.k_max, args.branches)
            for key in keys
        }
        return {key: futures[key].result() for key in keys}


def _fmt_text(x: float) -> str:
    return f"{x:.16g}"


def _fmt_csv(x: float) -> str:
    # 17 significant digits round-trip every double
    return f"{x:.17g}"


def _emit_records(records: list[dict], fmt: str, columns=RECORD_KEYS) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([_fmt_csv(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
        return buf.getvalue()
    lines = ["  ".join(columns)]
    for r in records:
        lines.append("  ".join(_fmt_text(r[c]) if isinstance(r[c], float) else str(r[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _record(ev: TransmissionEigenvalue, N: int, index: int) -> dict:
    return {
        "mode": ev.mode.value, "l": ev.l, "N": N, "index": index,
        "k": ev.k, "tau": ev.tau, "multiplicity": ev.multiplicity_3d,
    }


def cmd_solve(args) -> str:
    _validate(args)
    results = _solve_grid(args, args.mode, args.l, args.N)
    records = [_record(ev, N, i + 1) for (l, N), evs in results.items() for i, ev in enumerate(evs)]
    return _emit_records(records, args.format)


def cmd_table(args) -> str:
    try:
        table = get_table(args.table_id)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    mode = Mode(table.mode)
    index = RefractiveIndex(table.n)
    k_max = max(max(row) for row in table.rows.values()) + 0.5
    keys = table.degrees
    with ThreadPoolExecutor() as pool:
        futures = {N: pool.submit(solve_one, mode, table.l, N, index, table.R, 4, k_max) for N in keys}
        computed = {N: futures[N].result() for N in keys}
    records = []
    for N in keys:
        for i, published in enumerate(table.rows[N]):
            evs = computed[N]
            k = evs[i].k if i < len(evs) else math.nan
            records.append({"table": table.table_id, "N": N, "index": i + 1, "k": k,
                            "published": published, "abs_diff": abs(k - published)})
    if args.format == "text":
        lines = [f"Table {table.table_id}: {mode.value}, l={table.l}, n={index}"]
        lines.append("N    " + "  ".join(f"{'k' + str(i + 1):>18}" for i in range(4)) + "  max |diff|")
        for N in keys:
            row = [r for r in records if r["N"] == N]
            cells = "  ".join(f"{_fmt_text(r['k']):>18}" for r in row)
            lines.append(f"{N:<4} {cells}  {max(r['abs_diff'] for r in row):.2e}")
        return "\n".join(lines) + "\n"
    return _emit_records(records, args.format, ("table", "N", "index", "k", "published", "abs_diff"))


def cmd_converge(args) -> str:
    _validate(args)
    if args.N != sorted(args.N):
        raise UsageError("N list must be ascending")
    if args.ref <= max(args.N):
        raise UsageError(f"reference N={args.ref} must exceed every N in the list")
    lowest = 5 if args.mode is Mode.TE else 2
    if args.ref < lowest:
        raise UsageError(f"{args.mode.value} needs N ≥ {lowest}")
    results = _solve_grid(args, args.mode, args.l, args.N + [args.ref])
    records = []
    for l in sorted(set(args.l)):
        ref = results[(l, args.ref)]
        for N in args.N:
            rec = {"mode": args.mode.value, "l": l, "N": N}
            evs = results[(l, N)]
            for i in range(args.count):
                if i < len(evs) and i < len(ref):
                    rec[f"err_{i + 1}"] = max(abs(evs[i].k - ref[i].k), ERROR_FLOOR)
                else:
                    rec[f"err_{i + 1}"] = math.nan
            records.append(rec)
    columns = ("mode", "l", "N") + tuple(f"err_{i + 1}" for i in range(args.count))
    if args.format == "text":
        lines = ["  ".join(columns)]
        for r in records:
            lines.append("  ".join(f"{r[c]:.3e}" if isinstance(r[c], float) else str(r[c]) for c in columns))
        return "\n".join(lines) + "\n"
    return _emit_records(records, args.format, columns)


def cmd_oracle(args) -> str:
    if args.mode is not Mode.TE:
        raise UsageError("oracle covers TE only")
    if not args.n.is_constant:
        raise UsageError("oracle requires constant n")
    _validate(args)
    n = args.n.coeffs[0]
    k_max = TE_DEFAULT_K_MAX if args.k_max is None else args.k_max
    args.k_max = k_max
    results = _solve_grid(args, Mode.TE, args.l, args.N)
    records = []
    for (l, N), evs in results.items():
        exact = oracle_roots(l, n, args.R, k_max)[: args.count]
        solver = [ev.k for ev in evs]
        paired = list(zip(exact, solver))
        diff = max((abs(a - b) for a, b in paired), default=0.0)
        if len(exact) != len(solver):
            diff = math.inf
        records.append({"l": l, "N": N, "oracle": exact, "solver": solver, "max_diff": diff})
    if args.format == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("l", "N", "index", "oracle", "solver", "abs_diff"))
        for r in records:
            for i in range(max(len(r["oracle"]), len(r["solver"]))):
                a = r["oracle"][i] if i < len(r["oracle"]) else math.nan
                b = r["solver"][i] if i < len(r["solver"]) else math.nan
                w.writerow((r["l"], r["N"], i + 1, _fmt_csv(a), _fmt_csv(b), _fmt_csv(abs(a - b))))
        return buf.getvalue()
    lines = []
    for r in records:
        lines.append(f"l={r['l']} N={r['N']} n={n:g} k_max={k_max:g}")
        lines.append("  oracle: " + ", ".join(_fmt_text(k) for k in r["oracle"]))
        lines.append("  solver: " + ", ".join(_fmt_text(k) for k in r["solver"]))
        lines.append(f"  max |solver - oracle| = {r['max_diff']:.3e}")
    return "\n".join(lines) + "\n"


COMMANDS = {"solve": cmd_solve, "table": cmd_table, "converge": cmd_converge, "oracle": cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except ContrastViolation as exc:
        print(f"{parser.prog}: contrast assumption violated: {exc}", file=sys.stderr)
        return 3
    except TevError as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0

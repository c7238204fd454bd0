"""Command line front end: generate programs, solve bounds, reproduce tables.

Four subcommands.  gen writes a program in sparse SDPA form next to a
registry dump and a run manifest.  bound generates, solves and prints
a certified integer bound.  table runs a named selection of rows under
per-row time caps and writes a delimited report plus a comparison
figure.  oracle runs the exact search at toy scale.

Heavy imports happen inside the command functions so that the thread
environment variable can take effect before the numeric stack loads.
"""

from __future__ import annotations

import argparse
import csv
import os
import subprocess
import sys
import time


def _utc_stamp() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def _normalize_w(n: int, w: int) -> tuple[int, bool]:
    """Replace w by n-w when w is in the upper half; bound is unchanged."""
    if w > n - w:
        return n - w, True
    return w, False


def _write_manifest(path: str, pairs) -> None:
    with open(path, "w") as fh:
        for key, value in pairs:
            fh.write(f"{key} = {value}\n")


def _paths(stem: str):
    return stem + ".dat-s", stem + ".orbits.txt", stem + ".manifest.txt"


def _default_stem(args, w: int) -> str:
    return os.path.join(
        args.out_dir, f"cwbound_n{args.n}d{args.d}w{w}_{args.variant}_{args.formulation}"
    )


def _generate(args):
    from .assembler import DEFAULT_FORMULATION, assemble

    if args.formulation == "default":
        args.formulation = DEFAULT_FORMULATION[args.variant]
    w, complemented = _normalize_w(args.n, args.w)
    prog = assemble(args.n, args.d, w, variant=args.variant, formulation=args.formulation)
    return prog, w, complemented


def _manifest_rows(args, prog, w, complemented, extra=()):
    rows = [
        ("n", prog.n),
        ("d", prog.d),
        ("w", w),
        ("w_input", args.w),
        ("complemented", "yes" if complemented else "no"),
        ("variant", prog.variant),
        ("formulation", prog.formulation),
        ("tol", repr(args.tol)),
        ("precision_mode", args.precision),
        ("seed", args.seed),
        ("created_utc", _utc_stamp()),
        ("registry_sha", prog.registry.sha()),
        ("variables", len(prog.free_ids)),
        ("blocks", len(prog.blocks)),
    ]
    rows.extend(extra)
    return rows


def cmd_gen(args) -> int:
    from .sdpaio import write_sdpa

    prog, w, complemented = _generate(args)
    stem = args.out or _default_stem(args, w)
    os.makedirs(os.path.dirname(os.path.abspath(stem)), exist_ok=True)
    dat, orb, man = _paths(stem)
    write_sdpa(prog, dat)
    with open(orb, "w") as fh:
        fh.write(prog.registry.dump())
    _write_manifest(
        man,
        _manifest_rows(
            args, prog, w, complemented,
            extra=[("program_file", dat), ("orbit_dump_file", orb)],
        ),
    )
    print(prog.inventory(), end="")
    print(f"wrote {dat}")
    return 0


def _solve_external(prog, spec: str):
    from .sdpaio import maximization_value, parse_solver_output, write_sdpa

    binary = spec.split(":", 1)[1]
    if not binary:
        raise ValueError("external solver needs a path, as in external:/usr/bin/sdpa")
    scratch = os.environ.get("CWBOUND_SCRATCH", ".")
    stamp = f"{prog.n}_{prog.d}_{prog.w}_{prog.variant}_{os.getpid()}"
    dat = os.path.join(scratch, f"cwbound_ext_{stamp}.dat-s")
    outp = os.path.join(scratch, f"cwbound_ext_{stamp}.result")
    write_sdpa(prog, dat)
    run = subprocess.run(
        [binary, dat, outp], capture_output=True, text=True, check=False
    )
    parsed = parse_solver_output(run.stdout)
    if parsed.primal is None:
        raise RuntimeError(f"external solver output not parseable (exit {run.returncode})")
    value = maximization_value(parsed, objective_constant=prog.objective.const)
    return value, parsed.status


def cmd_bound(args) -> int:
    from .solver import certify_floor, solve

    t0 = time.time()
    prog, w, complemented = _generate(args)
    if args.solver != "embedded":
        value, status = _solve_external(prog, args.solver)
        print(f"value = {value:.10f}")
        print(f"status = {status}")
        print(f"runtime_seconds = {time.time() - t0:.2f}")
        return 0 if status in ("pdOPT", "pdFEAS") else 3
    res = solve(prog, tol=args.tol, precision=args.precision, time_cap=args.time_cap)
    cert = certify_floor(res)
    stem = args.out or None
    if stem is not None:
        from .sdpaio import write_sdpa

        os.makedirs(os.path.dirname(os.path.abspath(stem)), exist_ok=True)
        dat, orb, man = _paths(stem)
        write_sdpa(prog, dat)
        if args.dump_orbits:
            with open(orb, "w") as fh:
                fh.write(prog.registry.dump())
        _write_manifest(
            man,
            _manifest_rows(
                args, prog, w, complemented,
                extra=[
                    ("program_file", dat),
                    ("value", f"{res.value:.12f}"),
                    ("bound", cert.bound),
                    ("status", res.status),
                    ("finished_utc", _utc_stamp()),
                ],
            ),
        )
    print(f"value = {res.value:.10f}")
    print(f"bound = {cert.bound}")
    print(f"status = {res.status}")
    print(f"precision = {res.precision_mode}")
    print(f"iterations = {res.iterations}")
    print(f"certified = {'yes' if cert.certified else 'no'}")
    print(f"runtime_seconds = {time.time() - t0:.2f}")
    return 0 if res.converged else 3


def _selection_path(name: str) -> str:
    if os.path.sep in name or name.endswith(".csv"):
        return name
    here = os.path.dirname(__file__)
    path = os.path.join(here, "data", name + ".csv")
    if not os.path.exists(path):
        raise FileNotFoundError(f"no selection named {name!r} and no file {path}")
    return path


def _load_selection(name: str):
    rows = []
    with open(_selection_path(name), newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                {
                    "n": int(rec["n"]),
                    "d": int(rec["d"]),
                    "w": int(rec["w"]),
                    "variant": rec["variant"].strip(),
                    "expected": int(rec["expected"]),
                    "cap_seconds": float(rec["cap_seconds"]),
                    "basis": rec.get("basis", "").strip(),
                }
            )
    if not rows:
        raise ValueError(f"selection {name!r} is empty")
    return rows


def _table_figure(results, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"({r['n']},{r['d']},{r['w']}) {r['variant']}" for r in results]
    pos = range(len(results))
    fig, ax = plt.subplots(figsize=(7.5, 0.45 * len(results) + 1.6))
    ax.barh(
        [p + 0.2 for p in pos],
        [r["expected"] for r in results],
        height=0.38,
        color="#b0c4de",
        label="expected",
    )
    computed = [0 if r["bound"] is None else r["bound"] for r in results]
    colors = [
        "#999999" if r["bound"] is None else ("#2e8b57" if r["match"] else "#b22222")
        for r in results
    ]
    ax.barh([p - 0.2 for p in pos], computed, height=0.38, color=colors, label="computed")
    ax.set_yticks(list(pos))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("certified upper bound")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_table(args) -> int:
    from .assembler import assemble
    from .solver import certify_floor, solve

    rows = _load_selection(args.selection)
    os.makedirs(args.out_dir, exist_ok=True)
    base = os.path.basename(_selection_path(args.selection)).removesuffix(".csv")
    report = os.path.join(args.out_dir, base + "_report.csv")
    figure = os.path.join(args.out_dir, base + "_report.png")
    results = []
    misses = 0
    for row in rows:
        cap = row["cap_seconds"] * args.cap_scale
        t0 = time.time()
        w, _ = _normalize_w(row["n"], row["w"])
        outcome = {"bound": None, "value": None, "status": "skipped (time cap)",
                   "match": False, "seconds": 0.0}
        try:
            prog = assemble(row["n"], row["d"], w, variant=row["variant"])
            left = cap - (time.time() - t0)
            if left > 0:
                res = solve(prog, tol=args.tol, precision=args.precision, time_cap=left)
                if res.converged:
                    cert = certify_floor(res)
                    outcome.update(
                        bound=cert.bound,
                        value=res.value,
                        status=res.status,
                        match=cert.bound == row["expected"],
                    )
                    if not outcome["match"]:
                        misses += 1
        except (ValueError, MemoryError) as exc:
            outcome["status"] = f"error: {exc}"
            misses += 1
        outcome["seconds"] = time.time() - t0
        results.append({**row, **outcome})
        shown = "-" if outcome["bound"] is None else outcome["bound"]
        flag = (
            "match" if outcome["match"]
            else ("MISMATCH" if outcome["bound"] is not None else outcome["status"])
        )
        print(
            f"{row['variant']}({row['n']},{row['d']},{row['w']}): "
            f"computed={shown} expected={row['expected']} {flag} "
            f"[{outcome['seconds']:.1f}s]",
            flush=True,
        )
    with open(report, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(
            ["n", "d", "w", "variant", "expected", "bound", "value",
             "match", "status", "seconds", "basis"]
        )
        for r in results:
            wr.writerow(
                [r["n"], r["d"], r["w"], r["variant"], r["expected"],
                 "" if r["bound"] is None else r["bound"],
                 "" if r["value"] is None else f"{r['value']:.10f}",
                 "skipped" if r["bound"] is None else ("yes" if r["match"] else "no"),
                 r["status"],
                 f"{r['seconds']:.2f}", r["basis"]]
            )
    _table_figure(results, figure)
    print(f"report {report}")
    print(f"figure {figure}")
    return 0 if misses == 0 else 4


def cmd_oracle(args) -> int:
    from .oracle import max_code

    t0 = time.time()
    found = max_code(args.n, args.d, args.w, time_cap=args.time_cap)
    kind = "exact" if found.exact else "lower bound only"
    print(f"size = {found.size} ({kind})")
    for word in found.code:
        print(format(word, f"0{args.n}b"))
    print(f"runtime_seconds = {time.time() - t0:.2f}")
    return 0


def _add_common(sub, with_formulation=True):
    sub.add_argument("n", type=int)
    sub.add_argument("d", type=int)
    sub.add_argument("w", type=int)
    if with_formulation:
        sub.add_argument("--variant", choices=("a2", "a3", "b4", "a4"), default="a2")
        sub.add_argument(
            "--formulation",
            choices=("default", "raw", "normalized", "pinned"),
            default="default",
        )
        sub.add_argument("--tol", type=float, default=1e-8)
        sub.add_argument(
            "--precision", choices=("auto", "double", "extended"), default="auto"
        )
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--dump-orbits", action="store_true")


def main(argv=None) -> int:
    threads = os.environ.get("CWBOUND_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)

    ap = argparse.ArgumentParser(
        prog="cwbound",
        description="Semidefinite programming upper bounds for constant-weight binary codes",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="write program, orbit dump and manifest")
    _add_common(gen)
    gen.add_argument("--out", help="output stem; expands to .dat-s/.orbits.txt/.manifest.txt")
    gen.add_argument("--out-dir", default=".")
    gen.set_defaults(func=cmd_gen)

    bound = subs.add_parser("bound", help="generate, solve, certify an integer bound")
    _add_common(bound)
    bound.add_argument("--time-cap", type=float, default=None)
    bound.add_argument(
        "--solver",
        default="embedded",
        help="embedded, or external:<path> for an SDPA-format binary",
    )
    bound.add_argument("--out", help="optional stem to save program and manifest")
    bound.add_argument("--out-dir", default=".")
    bound.set_defaults(func=cmd_bound)

    table = subs.add_parser("table", help="run a row selection and write a report")
    table.add_argument("selection", help="named selection or path to a selection csv")
    table.add_argument("--out-dir", default=".")
    table.add_argument("--tol", type=float, default=1e-8)
    table.add_argument(
        "--precision", choices=("auto", "double", "extended"), default="auto"
    )
    table.add_argument(
        "--cap-scale", type=float, default=1.0, help="multiply every per-row time cap"
    )
    table.set_defaults(func=cmd_table)

    oracle = subs.add_parser("oracle", help="exact search at toy scale")
    _add_common(oracle, with_formulation=False)
    oracle.add_argument("--time-cap", type=float, default=None)
    oracle.set_defaults(func=cmd_oracle)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

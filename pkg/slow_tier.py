"""One-shot driver for the slow bound rows; logs results as they land."""

import time
import traceback

from cwbound.assembler import assemble
from cwbound.solver import certify_floor, solve

ROWS = [
    ("a4", 17, 6, 7, "normalized"),
    ("b4", 17, 6, 7, "pinned"),
    ("b4", 18, 6, 7, "pinned"),
    ("b4", 19, 6, 7, "pinned"),
    ("b4", 22, 10, 10, "pinned"),
    ("b4", 22, 10, 11, "pinned"),
]

LOG = "/root/pkg/slow_tier_log.txt"


def log(line):
    with open(LOG, "a") as fh:
        fh.write(line + "\n")
    print(line, flush=True)


def main():
    log(f"start {time.strftime('%H:%M:%S')}")
    for variant, n, d, w, form in ROWS:
        t0 = time.time()
        try:
            prog = assemble(n, d, w, variant=variant, formulation=form)
            t1 = time.time()
            res = solve(prog, tol=1e-7)
            cert = certify_floor(res)
            log(
                f"{variant}({n},{d},{w}) {form}: value={res.value:.9f} "
                f"status={res.status} floor={cert.bound} certified={cert.certified} "
                f"iters={res.iterations} prec={res.precision_mode} "
                f"assemble={t1 - t0:.1f}s solve={time.time() - t1:.1f}s"
            )
        except Exception:
            log(f"{variant}({n},{d},{w}) {form}: FAILED after {time.time() - t0:.1f}s")
            log(traceback.format_exc())
    log(f"done {time.strftime('%H:%M:%S')}")


if __name__ == "__main__":
    main()

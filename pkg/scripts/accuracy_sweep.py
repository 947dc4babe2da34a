"""Fidelity / MSE / predicted cost for QFT, RQC and the PSR ansatz over a range of n.

    python scripts/accuracy_sweep.py --n 10..17 --tasks qft,rqc,psr --out results/
    python scripts/accuracy_sweep.py --n 10..14 --rounding truncate
"""

import argparse
import logging
import os
import time
from pathlib import Path

from wfemu import bench
from wfemu.cli import parse_range

log = logging.getLogger("accuracy_sweep")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="10..17")
    ap.add_argument("--tasks", default="qft,rqc,psr")
    ap.add_argument("--formats", default="fx16,fx24,fx32,fp16,fp32")
    ap.add_argument("--rounding", choices=("rne", "truncate"), default="rne")
    ap.add_argument("--depth", type=int, default=10)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    formats = args.formats.split(",")
    for task in args.tasks.split(","):
        t0 = time.perf_counter()
        rows = bench.sweep(task, parse_range(args.n), formats, jobs=args.jobs, depth=args.depth,
                           seed=args.seed, rounding=args.rounding)
        stem = f"{task}_{args.rounding}"
        bench.write_csv(rows, out / f"{stem}.csv")
        (out / f"{stem}.md").write_text(bench.to_markdown(rows))
        log.info("%s: %d rows in %.1f s", task, len(rows), time.perf_counter() - t0)
        print(bench.to_markdown(rows))


if __name__ == "__main__":
    main()

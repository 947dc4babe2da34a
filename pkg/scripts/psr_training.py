"""Gradient descent on the ZXZ ansatz in several formats, from the same start point.

    python scripts/psr_training.py --n 4 --iters 50 --formats reference,fx16,fx32
"""

import argparse
from pathlib import Path

from wfemu import psr
from wfemu.circuits import random_thetas
from wfemu.numerics import get_format


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--iters", type=int, default=50)
    ap.add_argument("--gamma", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--formats", default="reference,fx16,fx24,fx32,fp16,fp32")
    ap.add_argument("--psr-constant", choices=("standard", "paper"), default="standard")
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    kappa = psr.KAPPA_PAPER if args.psr_constant == "paper" else psr.KAPPA_STANDARD
    theta0 = random_thetas(args.n, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.formats.split(","):
        fmt = get_format(name)
        opt = psr.optimize(args.n, theta0, args.gamma, args.iters, fmt, kappa)
        psr.write_trace(opt, out / f"psr_n{args.n}_{name}.csv")
        costs = [c for _, c in opt.history]
        print(f"{name:>9}: cost {costs[0]:.6f} -> {costs[-1]:.6f}  ({opt.sessions} sessions)")


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 circuit parse error, 3 capacity violation
(qubit cap or context-memory depth).  ``WFEMU_FORMAT`` and ``WFEMU_OUTDIR``
override the default number format and output directory.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bench, circuitfile, costmodel, metrics, psr, qstate
from .circuits import build_rqc, random_thetas
from .kernel import simulate
from .numerics import REFERENCE, RNE, TRUNCATE, FormatError, get_format
from .qstate import CapacityError

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAPACITY = 0, 1, 2, 3
MSE_ALARM = 1e-3

log = logging.getLogger("wfemu")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    format: str = "fx32"
    allow_large: bool = False
    rounding: str = RNE
    seed: int = 7
    watts: float = costmodel.DEFAULT_WATTS
    out_dir: Path = Path(".")

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(
            format=getattr(args, "format", None) or default_format(),
            allow_large=getattr(args, "no_cap", False),
            rounding=getattr(args, "rounding", RNE),
            seed=getattr(args, "seed", 7),
            watts=getattr(args, "power", costmodel.DEFAULT_WATTS),
            out_dir=Path(getattr(args, "out_dir", None) or default_out_dir()),
        )

    @property
    def number_format(self):
        fmt = get_format(self.format)
        return fmt.with_rounding(self.rounding) if fmt.is_fixed else fmt


def default_format() -> str:
    return os.environ.get("WFEMU_FORMAT", "fx32")


def default_out_dir() -> str:
    return os.environ.get("WFEMU_OUTDIR", ".")


def parse_range(spec: str) -> list[int]:
    """'3..17' -> [3..17]; '5' -> [5]; '3,5,9' -> [3, 5, 9]."""
    out: list[int] = []
    try:
        for part in spec.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {spec!r}") from None
    if not out:
        raise UsageError(f"empty range {spec!r}")
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_run(args) -> int:
    cfg = RunConfig.from_args(args)
    fmt = cfg.number_format
    circuit = circuitfile.load(args.circuit)
    state = simulate(circuit, fmt, allow_large=cfg.allow_large)
    ref = simulate(circuit, REFERENCE, allow_large=True)
    task = args.task or Path(args.circuit).stem
    report = metrics.compare(state, ref, task)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stem = args.prefix or Path(args.circuit).stem
    qstate.dump_amplitudes(state, cfg.out_dir / f"{stem}.amplitudes.csv")
    metrics.write_reports([report], cfg.out_dir / f"{stem}.accuracy.csv")
    print(f"{task}: n={circuit.n} format={fmt} gates={len(circuit)}")
    print(f"fidelity={report.fidelity:.12g} mse={report.mse:.6g}")
    if report.mse > MSE_ALARM:
        print(f"WARNING: mse {report.mse:.3g} >> {MSE_ALARM:g}; {fmt} output is not usable")
    if fmt.name in costmodel.PROFILES:
        cost = costmodel.predict(circuit, costmodel.profile_for(fmt), costmodel.PowerProfile(cfg.watts))
        with open(cfg.out_dir / f"{stem}.cost.csv", "w") as fh:
            fh.write("task,n,format,gates,cycles,time_s,ngs,pdp_j\n")
            fh.write(",".join(map(str, [task, circuit.n, fmt] + cost.row())) + "\n")
        print(f"predicted time={cost.time_s:.6g} s ngs={cost.ngs:.4g} pdp={cost.pdp_joules:.4g} J")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = RunConfig.from_args(args)
    ns = parse_range(args.n)
    formats = [f.strip() for f in (args.formats or default_format()).split(",") if f.strip()]
    for f in formats:
        get_format(f)
    rows = bench.sweep(
        args.task, ns, formats, jobs=args.jobs, depth=args.depth, seed=cfg.seed,
        rounding=cfg.rounding, accuracy=not args.no_accuracy, allow_large=cfg.allow_large,
        watts=cfg.watts,
    )
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.out_dir / (args.out or f"bench_{args.task}.csv")
    bench.write_csv(rows, out)
    if args.markdown:
        (cfg.out_dir / args.markdown).write_text(bench.to_markdown(rows))
    print(bench.to_markdown(rows), end="")
    log.info("wrote %d rows to %s", len(rows), out)
    return EXIT_OK


def cmd_rqc(args) -> int:
    circuit = build_rqc(args.n, args.depth, args.seed)
    text = circuitfile.dumps(circuit)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return EXIT_OK


def cmd_psr(args) -> int:
    cfg = RunConfig.from_args(args)
    fmt = cfg.number_format
    kappa = psr.KAPPA_PAPER if args.psr_constant == "paper" else psr.KAPPA_STANDARD
    theta0 = random_thetas(args.n, cfg.seed)
    qstate.check_qubits(args.n, fmt, cfg.allow_large)
    opt = psr.optimize(args.n, theta0, args.gamma, args.iters, fmt, kappa, cfg.allow_large)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.out_dir / (args.out or f"psr_n{args.n}_{fmt.name}.csv")
    psr.write_trace(opt, out)
    final = opt.history[-1][1] if opt.history else float("nan")
    print(f"psr: n={args.n} format={fmt} kappa={kappa:.6g} iters={args.iters} final cost={final:.6g}")
    print(f"emulator sessions: {opt.sessions}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wfemu", description="Wave-function accelerator emulator")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_format=True):
        if with_format:
            sp.add_argument("--format", "-f", default=None, help="fp16|fp32|fx16|fx24|fx32|reference")
            sp.add_argument("--rounding", choices=(RNE, TRUNCATE), default=RNE,
                            help="fixed-point rounding (default: round-to-nearest-even)")
        sp.add_argument("--no-cap", action="store_true", help="lift the 17/18-qubit hardware caps")
        sp.add_argument("--power", type=float, default=costmodel.DEFAULT_WATTS, help="power in watts for PDP")
        sp.add_argument("--seed", type=int, default=7)
        sp.add_argument("--out-dir", default=None)

    sp = sub.add_parser("run", help="emulate a circuit file")
    sp.add_argument("circuit")
    sp.add_argument("--task", default=None, help="label for the report rows")
    sp.add_argument("--prefix", default=None, help="output file stem")
    common(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("bench", help="sweep a benchmark task")
    sp.add_argument("task", choices=("qft", "rqc", "psr"))
    sp.add_argument("--n", default="3..10", help="qubit range, e.g. 3..17")
    sp.add_argument("--formats", default=None, help="comma-separated formats")
    sp.add_argument("--depth", type=int, default=10)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-accuracy", action="store_true", help="cost model only")
    sp.add_argument("--out", default=None)
    sp.add_argument("--markdown", default=None)
    common(sp, with_format=False)
    sp.add_argument("--rounding", choices=(RNE, TRUNCATE), default=RNE)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("rqc", help="write a random circuit file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--depth", type=int, default=10)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_rqc)

    sp = sub.add_parser("psr", help="gradient descent on the ZXZ ansatz")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--iters", type=int, default=100)
    sp.add_argument("--gamma", type=float, default=0.1)
    sp.add_argument("--psr-constant", choices=("standard", "paper"), default="standard",
                    help="standard: 1/2; paper: 1/sqrt(2)")
    sp.add_argument("--out", default=None)
    common(sp)
    sp.set_defaults(func=cmd_psr)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * args.verbose
    logging.basicConfig(level=max(level, logging.DEBUG), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except circuitfile.ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

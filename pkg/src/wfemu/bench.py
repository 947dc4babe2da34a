"""Sweeps over (task, n, format): accuracy against the double run plus predicted cost."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import costmodel, metrics
from .circuits import CircuitRecipe
from .kernel import simulate
from .numerics import REFERENCE, RNE, get_format
from .qstate import check_qubits

BENCH_FIELDS = ("task", "n", "format", "gates", "fidelity", "mse", "cycles", "time_s", "ngs", "pdp_j")


@dataclass(frozen=True)
class BenchRow:
    task: str
    n: int
    format: str
    gates: int
    fidelity: float | None
    mse: float | None
    cost: costmodel.CostReport | None

    def row(self) -> list:
        acc = ["", ""] if self.fidelity is None else [repr(self.fidelity), repr(self.mse)]
        cost = ["", "", "", ""] if self.cost is None else self.cost.row()[1:]
        return [self.task, self.n, self.format, self.gates, *acc, *cost]


def recipe(task: str, n: int, depth: int = 10, seed: int = 7) -> CircuitRecipe:
    return CircuitRecipe(task.lower(), n, depth=depth, seed=seed)


def run_group(task: str, n: int, formats, depth=10, seed=7, rounding=RNE, accuracy=True,
              allow_large=False, watts=costmodel.DEFAULT_WATTS) -> list[BenchRow]:
    """All formats for one (task, n); the double-precision run is shared."""
    circuit = recipe(task, n, depth, seed).build()
    ref = simulate(circuit, REFERENCE, allow_large=True) if accuracy else None
    rows = []
    for name in formats:
        fmt = get_format(name, rounding if get_format(name).is_fixed else RNE)
        fid = err = None
        if accuracy:
            state = simulate(circuit, fmt, allow_large=allow_large)
            fid, err = metrics.fidelity(state, ref), metrics.mse(state, ref)
        else:
            check_qubits(n, fmt, allow_large)
        cost = None
        if fmt.name in costmodel.PROFILES:
            cost = costmodel.predict(circuit, costmodel.profile_for(fmt), costmodel.PowerProfile(watts))
        rows.append(BenchRow(task, n, str(fmt), len(circuit), fid, err, cost))
    return rows


def sweep(task: str, ns, formats, jobs: int = 1, **kw) -> list[BenchRow]:
    ns = sorted(ns)
    if jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_group_star, [(task, n, tuple(formats), kw) for n in ns]))
    else:
        groups = [run_group(task, n, formats, **kw) for n in ns]
    return [r for g in groups for r in g]


def _group_star(args):
    task, n, formats, kw = args
    return run_group(task, n, formats, **kw)


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(BENCH_FIELDS)
        for r in rows:
            w.writerow(r.row())


def to_markdown(rows) -> str:
    lines = ["| " + " | ".join(BENCH_FIELDS) + " |", "|" + "---|" * len(BENCH_FIELDS)]
    for r in rows:
        cells = []
        for v in r.row():
            if isinstance(v, str) and v and v[0] in "-0123456789" and any(c in v for c in ".e"):
                v = f"{float(v):.4g}"
            cells.append(str(v))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"

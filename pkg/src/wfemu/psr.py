"""Differentiable-programming task: cost, two-term parameter shift, gradient descent."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import build_zxz
from .kernel import simulate
from .numerics import REFERENCE, NumberFormat
from .qstate import StateVector

log = logging.getLogger(__name__)

KAPPA_STANDARD = 0.5
KAPPA_PAPER = 1.0 / math.sqrt(2.0)
SHIFT = math.pi / 2


def cost(s: StateVector | np.ndarray) -> float:
    """sum_j j * |alpha_j|^2, in double precision."""
    probs = s.probabilities() if isinstance(s, StateVector) else np.abs(np.asarray(s)) ** 2
    return float(np.dot(np.arange(probs.size, dtype=np.float64), probs))


class Evaluator:
    """Runs the ZXZ ansatz in one format and counts emulator sessions."""

    def __init__(self, n: int, fmt: NumberFormat = REFERENCE, allow_large: bool = False):
        self.n = n
        self.fmt = fmt
        self.allow_large = allow_large
        self.sessions = 0

    def state(self, thetas) -> StateVector:
        self.sessions += 1
        log.debug("session %d: %s", self.sessions, self.fmt)
        return simulate(build_zxz(self.n, thetas), self.fmt, allow_large=self.allow_large)

    def cost(self, thetas) -> float:
        return cost(self.state(thetas))


def grad_psr(evaluator: Evaluator, thetas, j: int, kappa: float = KAPPA_STANDARD) -> float:
    thetas = np.asarray(thetas, dtype=np.float64)
    if not 0 <= j < thetas.size:
        raise IndexError(f"parameter index {j} out of range")
    plus, minus = thetas.copy(), thetas.copy()
    plus[j] += SHIFT
    minus[j] -= SHIFT
    return kappa * (evaluator.cost(plus) - evaluator.cost(minus))


def gradient(evaluator: Evaluator, thetas, kappa: float = KAPPA_STANDARD) -> np.ndarray:
    return np.array([grad_psr(evaluator, thetas, j, kappa) for j in range(len(thetas))])


@dataclass
class Optimizer:
    thetas: np.ndarray
    gamma: float
    iterations: int = 0
    history: list[tuple[int, float]] = field(default_factory=list)
    trace: list[np.ndarray] = field(default_factory=list)
    sessions: int = 0


def optimize(
    n: int,
    theta0,
    gamma: float = 0.1,
    iters: int = 100,
    fmt: NumberFormat = REFERENCE,
    kappa: float = KAPPA_STANDARD,
    allow_large: bool = False,
) -> Optimizer:
    """Plain gradient descent; each iteration = 2*len(theta) shifted runs + 1 cost run."""
    if gamma < 0:
        raise ValueError("learning rate must be non-negative")
    ev = Evaluator(n, fmt, allow_large)
    opt = Optimizer(np.asarray(theta0, dtype=np.float64).copy(), gamma)
    if opt.thetas.size != 3 * n:
        raise ValueError(f"expected {3 * n} parameters, got {opt.thetas.size}")
    for t in range(1, iters + 1):
        opt.thetas = opt.thetas - gamma * gradient(ev, opt.thetas, kappa)
        c = ev.cost(opt.thetas)
        opt.iterations = t
        opt.history.append((t, c))
        opt.trace.append(opt.thetas.copy())
        if len(opt.history) > 1 and c > opt.history[-2][1]:
            log.info("iteration %d: cost rose to %.6g", t, c)
    opt.sessions = ev.sessions
    log.info("emulator sessions: %d", ev.sessions)
    return opt


def write_trace(opt: Optimizer, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iter", "cost"] + [f"theta_{k}" for k in range(opt.thetas.size)])
        for (t, c), th in zip(opt.history, opt.trace):
            w.writerow([t, repr(c)] + [repr(float(x)) for x in th])

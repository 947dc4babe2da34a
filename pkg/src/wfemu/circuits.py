"""Benchmark circuit builders: QFT, random circuits, and the ZXZ ansatz layer."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gates import Circuit, GateSpec

RQC_POOL = ("H", "S", "CX", "RX", "RY", "RZ")


@dataclass(frozen=True)
class CircuitRecipe:
    task: str  # "qft" | "rqc" | "zxz"
    n: int
    depth: int = 10
    seed: int = 0
    thetas: tuple[float, ...] = field(default=())

    def build(self) -> Circuit:
        task = self.task.lower()
        if task == "qft":
            return build_qft(self.n)
        if task == "rqc":
            return build_rqc(self.n, self.depth, self.seed)
        if task in ("zxz", "psr"):
            thetas = self.thetas or tuple(random_thetas(self.n, self.seed))
            return build_zxz(self.n, thetas)
        raise ValueError(f"unknown task {self.task!r}")


def controlled_phase(control: int, target: int, theta: float) -> list[GateSpec]:
    """CP(theta) up to a global phase of exp(-i theta/4): 3 Rz + 2 CX."""
    return [
        GateSpec("RZ", control, theta=theta / 2),
        GateSpec("RZ", target, theta=theta / 2),
        GateSpec("CX", control, target),
        GateSpec("RZ", target, theta=-theta / 2),
        GateSpec("CX", control, target),
    ]


def swap(a: int, b: int) -> list[GateSpec]:
    return [GateSpec("CX", a, b), GateSpec("CX", b, a), GateSpec("CX", a, b)]


def qft_gate_counts(n: int) -> dict[str, int]:
    return {"H": n, "CX": n * (n - 1) + 3 * (n // 2), "RZ": 3 * n * (n - 1) // 2}


def build_qft(n: int) -> Circuit:
    """QFT with qubit 0 as the most significant bit; |j> -> sum_k exp(2 pi i jk/N)|k>/sqrt(N)."""
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    gates: list[GateSpec] = []
    for j in range(n):
        gates.append(GateSpec("H", j))
        for k in range(j + 1, n):
            gates += controlled_phase(k, j, math.pi / 2 ** (k - j))
    for q in range(n // 2):
        gates += swap(q, n - 1 - q)
    return Circuit(n, gates)


def rqc_rng(seed: int) -> np.random.Generator:
    """PCG64 seeded directly from the integer seed (frozen: changing it breaks published seeds)."""
    return np.random.Generator(np.random.PCG64(seed))


def build_rqc(n: int, depth: int, seed: int) -> Circuit:
    """``n * depth`` gates drawn uniformly from {H, S, CX, Rx, Ry, Rz}.

    Per gate the generator is consumed in a fixed order: gate kind, then the
    qubit(s), then the angle (rotations only).  CX is left out when ``n == 1``.
    """
    if n < 1 or depth < 1:
        raise ValueError("n and depth must be positive")
    rng = rqc_rng(seed)
    pool = RQC_POOL if n > 1 else tuple(k for k in RQC_POOL if k != "CX")
    gates = []
    for _ in range(n * depth):
        kind = pool[int(rng.integers(len(pool)))]
        if kind == "CX":
            control, target = (int(q) for q in rng.choice(n, size=2, replace=False))
            gates.append(GateSpec("CX", control, target))
            continue
        q = int(rng.integers(n))
        if kind in ("H", "S"):
            gates.append(GateSpec(kind, q))
        else:
            gates.append(GateSpec(kind, q, theta=float(rng.uniform(0.0, 2 * math.pi))))
    return Circuit(n, gates)


def build_zxz(n: int, thetas) -> Circuit:
    thetas = [float(t) for t in thetas]
    if len(thetas) != 3 * n:
        raise ValueError(f"ZXZ layer on {n} qubits needs {3 * n} parameters, got {len(thetas)}")
    gates = []
    for q in range(n):
        gates.append(GateSpec("RZ", q, theta=thetas[3 * q]))
        gates.append(GateSpec("RX", q, theta=thetas[3 * q + 1]))
        gates.append(GateSpec("RZ", q, theta=thetas[3 * q + 2]))
    return Circuit(n, gates)


def random_thetas(n: int, seed: int) -> np.ndarray:
    return rqc_rng(seed).uniform(0.0, 2 * math.pi, size=3 * n)

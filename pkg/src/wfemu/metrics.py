"""Accuracy of an emulated state against the double-precision run of the same program."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .qstate import StateVector


@dataclass(frozen=True)
class AccuracyReport:
    task: str
    n: int
    format: str
    fidelity: float
    mse: float

    FIELDS = ("task", "n", "format", "fidelity", "mse")

    def row(self) -> list:
        return [self.task, self.n, self.format, repr(self.fidelity), repr(self.mse)]


def _widen(a) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(a, StateVector):
        z = a.to_complex()
    else:
        z = np.asarray(a, dtype=np.complex128)
    return z.real, z.imag


def _pair(a, b):
    ar, ai = _widen(a)
    br, bi = _widen(b)
    if ar.shape != br.shape:
        raise ValueError(f"state length mismatch: {ar.size} vs {br.size}")
    return ar, ai, br, bi


def fidelity(a, b) -> float:
    """|<a|b>|^2 with double accumulation; symmetric bit for bit in its arguments."""
    ar, ai, br, bi = _pair(a, b)
    re = float(np.sum(ar * br + ai * bi))
    im = float(np.sum(ar * bi - ai * br))
    return re * re + im * im


def mse(a, b) -> float:
    """Mean over basis states of |a_j - b_j|^2."""
    ar, ai, br, bi = _pair(a, b)
    dr, di = ar - br, ai - bi
    return float(np.sum(dr * dr + di * di)) / ar.size


def compare(state: StateVector, reference, task: str = "") -> AccuracyReport:
    return AccuracyReport(task, state.n, str(state.fmt), fidelity(state, reference), mse(state, reference))


def write_reports(reports, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AccuracyReport.FIELDS)
        for r in reports:
            w.writerow(r.row())

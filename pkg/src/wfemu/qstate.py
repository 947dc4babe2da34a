"""Amplitude storage: state vectors and the ping/pong buffer pair."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .numerics import ComplexScalar, NumberFormat, from_storage, to_float, to_storage


class CapacityError(ValueError):
    """A qubit cap or context-memory limit was exceeded."""


MAX_QUBITS = 32  # qubit fields are 5 bits wide


def check_qubits(n: int, fmt: NumberFormat, allow_large: bool = False) -> None:
    if n < 1:
        raise CapacityError(f"need at least one qubit, got {n}")
    limit = MAX_QUBITS if allow_large else fmt.qubit_cap
    if n > limit:
        raise CapacityError(f"qubit cap exceeded: n={n} > {limit} for {fmt}")


@dataclass
class StateVector:
    """2**n amplitudes; ``re``/``im`` hold the format's storage arrays.

    Index ``j`` is basis state ``|j>`` with qubit 0 as the most significant bit.
    """

    n: int
    fmt: NumberFormat
    re: np.ndarray
    im: np.ndarray

    @classmethod
    def zeros(cls, n: int, fmt: NumberFormat) -> StateVector:
        size = 1 << n
        return cls(n, fmt, np.zeros(size, dtype=fmt.dtype), np.zeros(size, dtype=fmt.dtype))

    @classmethod
    def from_complex(cls, amps, fmt: NumberFormat) -> StateVector:
        amps = np.asarray(amps, dtype=np.complex128)
        n = int(amps.size).bit_length() - 1
        if amps.size != 1 << n:
            raise ValueError(f"amplitude count {amps.size} is not a power of two")
        return cls(n, fmt, to_storage(amps.real, fmt), to_storage(amps.imag, fmt))

    def __len__(self) -> int:
        return self.re.size

    def __getitem__(self, j: int) -> ComplexScalar:
        return ComplexScalar(from_storage(self.re[j], self.fmt), from_storage(self.im[j], self.fmt))

    def to_complex(self) -> np.ndarray:
        out = np.empty(self.re.size, dtype=np.complex128)
        out.real = to_float(self.re, self.fmt)
        out.imag = to_float(self.im, self.fmt)
        return out

    def probabilities(self) -> np.ndarray:
        re, im = to_float(self.re, self.fmt), to_float(self.im, self.fmt)
        return re * re + im * im

    def is_zero(self) -> bool:
        return not (np.any(self.re) or np.any(self.im))

    def clear(self) -> None:
        self.re[...] = 0
        self.im[...] = 0

    def copy(self) -> StateVector:
        return StateVector(self.n, self.fmt, self.re.copy(), self.im.copy())

    def bit_equal(self, other: StateVector) -> bool:
        return (
            self.fmt == other.fmt
            and np.array_equal(self.re.view(_uint(self.re)), other.re.view(_uint(other.re)))
            and np.array_equal(self.im.view(_uint(self.im)), other.im.view(_uint(other.im)))
        )


def _uint(a: np.ndarray):
    return {1: np.uint8, 2: np.uint16, 4: np.uint32, 8: np.uint64}[a.dtype.itemsize]


def norm_sq(s: StateVector) -> float:
    """Sum of |alpha_j|^2, accumulated in double precision."""
    return float(np.sum(s.probabilities()))


PING, PONG = "ping", "pong"


@dataclass
class PingPong:
    ping: StateVector
    pong: StateVector
    active: str = PING
    swaps: int = field(default=0, repr=False)

    @property
    def current(self) -> StateVector:
        return self.ping if self.active == PING else self.pong

    @property
    def other(self) -> StateVector:
        return self.pong if self.active == PING else self.ping

    def swap(self) -> None:
        self.active = PONG if self.active == PING else PING
        self.swaps += 1


def init(n: int, fmt: NumberFormat, allow_large: bool = False) -> PingPong:
    """Ping holds |0...0>, pong is all zero."""
    check_qubits(n, fmt, allow_large)
    ping = StateVector.zeros(n, fmt)
    ping.re[0] = to_storage([1.0], fmt)[0]
    return PingPong(ping, StateVector.zeros(n, fmt))


def load(amps, fmt: NumberFormat, allow_large: bool = False) -> PingPong:
    """Buffers seeded with arbitrary initial amplitudes (quantized to ``fmt``)."""
    ping = StateVector.from_complex(amps, fmt)
    check_qubits(ping.n, fmt, allow_large)
    return PingPong(ping, StateVector.zeros(ping.n, fmt))


# ---------------------------------------------------------------------------
# amplitude dump: index,re,im,prob
# ---------------------------------------------------------------------------

def dump_amplitudes(s: StateVector, path) -> None:
    amps = s.to_complex()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "re", "im", "prob"])
        for j, a in enumerate(amps):
            re, im = float(a.real), float(a.imag)
            w.writerow([j, repr(re), repr(im), repr(re * re + im * im)])


def read_amplitudes(path) -> np.ndarray:
    rows = list(csv.DictReader(Path(path).read_text().splitlines()))
    out = np.zeros(len(rows), dtype=np.complex128)
    for r in rows:
        out[int(r["index"])] = complex(float(r["re"]), float(r["im"]))
    return out


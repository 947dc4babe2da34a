"""Gate definitions, lowering to the six basic opcodes, and the context-word codec."""

from __future__ import annotations

import enum
import math
import struct
from dataclasses import dataclass, field

from .numerics import (
    REFERENCE,
    ComplexScalar,
    NumberFormat,
    Scalar,
    neg,
    quantize,
    zero,
)
from .qstate import CapacityError

CONTEXT_DEPTH = 2048
INV_SQRT2 = 1.0 / math.sqrt(2.0)


class ContextOverflowError(CapacityError):
    pass


class DecodeError(ValueError):
    pass


class Opcode(enum.IntEnum):
    H = 0
    S = 1
    CX = 2
    RX = 3
    RY = 4
    RZ = 5


ROTATIONS = frozenset({"RX", "RY", "RZ"})
GATE_KINDS = ("H", "S", "CX", "RX", "RY", "RZ", "T", "X", "Y", "Z")

# derived gate -> (basic rotation, angle)
_DERIVED = {
    "T": ("RZ", math.pi / 4),
    "X": ("RX", math.pi),
    "Y": ("RY", math.pi),
    "Z": ("RZ", math.pi),
}


@dataclass(frozen=True)
class GateSpec:
    """A gate as written in a circuit.  For CX, ``w0`` is the control and ``w1`` the target."""

    kind: str
    w0: int
    w1: int | None = None
    theta: float | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        if (self.theta is not None) != (kind in ROTATIONS):
            raise ValueError(f"{kind}: angle given iff the gate is a rotation")
        if (self.w1 is not None) != (kind == "CX"):
            raise ValueError(f"{kind}: second qubit given iff the gate is CX")
        if kind == "CX" and self.w0 == self.w1:
            raise ValueError("control equals target")
        if self.w0 < 0 or (self.w1 is not None and self.w1 < 0):
            raise ValueError("negative qubit index")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.w0,) if self.w1 is None else (self.w0, self.w1)


@dataclass(frozen=True)
class Instruction:
    """One context-memory word."""

    opcode: Opcode
    w0: int
    w1: int
    sin_half: Scalar
    cos_half: Scalar

    @property
    def fmt(self) -> NumberFormat:
        return self.sin_half.fmt


def _instruction(op: Opcode, w0: int, w1: int, sin_half: float, cos_half: float, fmt: NumberFormat) -> Instruction:
    return Instruction(op, w0, w1, quantize(sin_half, fmt), quantize(cos_half, fmt))


def opcode_of(g: GateSpec) -> Opcode:
    """Basic opcode a gate lowers to."""
    return Opcode[_DERIVED[g.kind][0] if g.kind in _DERIVED else g.kind]


def lower(g: GateSpec, fmt: NumberFormat) -> list[Instruction]:
    """Map a gate to basic-opcode instructions with pre-quantized sin/cos of the half angle."""
    kind, theta = g.kind, g.theta
    if kind in _DERIVED:
        kind, theta = _DERIVED[kind]
    if kind == "H":
        return [_instruction(Opcode.H, g.w0, 0, INV_SQRT2, INV_SQRT2, fmt)]
    if kind == "S":
        return [_instruction(Opcode.S, g.w0, 0, 0.0, 0.0, fmt)]
    if kind == "CX":
        return [_instruction(Opcode.CX, g.w0, g.w1, 0.0, 0.0, fmt)]
    return [_instruction(Opcode[kind], g.w0, 0, math.sin(theta / 2), math.cos(theta / 2), fmt)]


def coeffs(ins: Instruction) -> tuple[ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar]:
    """Matrix entries (a, b, c, d) of ``[[a, b], [c, d]]`` in the instruction's format."""
    fmt = ins.fmt
    z = zero(fmt)
    one = quantize(1.0, fmt)
    s, c = ins.sin_half, ins.cos_half
    op = ins.opcode
    if op == Opcode.H:
        h = ins.cos_half
        return (ComplexScalar(h, z), ComplexScalar(h, z), ComplexScalar(h, z), ComplexScalar(neg(h), z))
    if op == Opcode.S:
        return (ComplexScalar(one, z), ComplexScalar(z, z), ComplexScalar(z, z), ComplexScalar(z, one))
    if op == Opcode.RX:
        mis = ComplexScalar(z, neg(s))
        return (ComplexScalar(c, z), mis, mis, ComplexScalar(c, z))
    if op == Opcode.RY:
        return (ComplexScalar(c, z), ComplexScalar(neg(s), z), ComplexScalar(s, z), ComplexScalar(c, z))
    if op == Opcode.RZ:
        return (ComplexScalar(c, neg(s)), ComplexScalar(z, z), ComplexScalar(z, z), ComplexScalar(c, s))
    raise ValueError("CX has no 2x2 coefficient matrix")


@dataclass(frozen=True)
class Program:
    """A compiled, format-specific instruction list for one session."""

    n: int
    instrs: tuple[Instruction, ...]
    fmt: NumberFormat = REFERENCE

    def __post_init__(self):
        if len(self.instrs) > CONTEXT_DEPTH:
            raise ContextOverflowError(
                f"context memory overflow: {len(self.instrs)} instructions > {CONTEXT_DEPTH}"
            )
        for ins in self.instrs:
            qs = (ins.w0, ins.w1) if ins.opcode == Opcode.CX else (ins.w0,)
            if any(q >= self.n for q in qs):
                raise ValueError(f"qubit index out of range for n={self.n}: {ins}")

    def __len__(self) -> int:
        return len(self.instrs)

    def __add__(self, other: Program) -> Program:
        if other.n != self.n or other.fmt != self.fmt:
            raise ValueError("can only concatenate programs with equal n and format")
        return Program(self.n, self.instrs + other.instrs, self.fmt)

    def opcode_counts(self) -> dict[Opcode, int]:
        counts = {op: 0 for op in Opcode}
        for ins in self.instrs:
            counts[ins.opcode] += 1
        return counts


@dataclass(frozen=True)
class Circuit:
    """Format-independent gate list; angles are kept at full precision."""

    n: int
    gates: tuple[GateSpec, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n < 1:
            raise ValueError("a circuit needs at least one qubit")
        for g in self.gates:
            if max(g.qubits) >= self.n:
                raise ValueError(f"qubit index out of range for n={self.n}: {g}")
        if self.lowered_size() > CONTEXT_DEPTH:
            raise ContextOverflowError(
                f"context memory overflow: {self.lowered_size()} instructions > {CONTEXT_DEPTH}"
            )

    def __len__(self) -> int:
        return len(self.gates)

    def lowered_size(self) -> int:
        return len(self.gates)  # every gate lowers to exactly one instruction

    def compile(self, fmt: NumberFormat) -> Program:
        instrs = []
        for g in self.gates:
            instrs.extend(lower(g, fmt))
        return Program(self.n, tuple(instrs), fmt)

    def kind_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for g in self.gates:
            counts[g.kind] = counts.get(g.kind, 0) + 1
        return counts


# ---------------------------------------------------------------------------
# binary context format
# ---------------------------------------------------------------------------

RECORD = struct.Struct("<BBBBdd")  # opcode, w0, w1, reserved, sin_half, cos_half
HEADER = struct.Struct("<4sBBH")  # magic, version, n, instruction count
MAGIC = b"WFCX"


def encode(ins: Instruction) -> bytes:
    if ins.w0 >= 32 or ins.w1 >= 32:
        raise ValueError("qubit fields are 5 bits wide")
    return RECORD.pack(int(ins.opcode), ins.w0, ins.w1, 0, ins.sin_half.value, ins.cos_half.value)


def decode(data: bytes, fmt: NumberFormat) -> Instruction:
    if len(data) < RECORD.size:
        raise DecodeError(f"truncated record: {len(data)} < {RECORD.size} bytes")
    op, w0, w1, _, s, c = RECORD.unpack_from(data)
    if op > 5:
        raise DecodeError(f"invalid opcode {op}")
    if w0 >= 32 or w1 >= 32:
        raise DecodeError("qubit field out of range")
    return Instruction(Opcode(op), w0, w1, quantize(s, fmt), quantize(c, fmt))


def encode_program(prog: Program) -> bytes:
    return HEADER.pack(MAGIC, 1, prog.n, len(prog)) + b"".join(encode(i) for i in prog.instrs)


def decode_program(data: bytes, fmt: NumberFormat) -> Program:
    if len(data) < HEADER.size:
        raise DecodeError("truncated header")
    magic, version, n, count = HEADER.unpack_from(data)
    if magic != MAGIC or version != 1:
        raise DecodeError("not a context image")
    if count > CONTEXT_DEPTH:
        raise ContextOverflowError(f"context memory overflow: {count} instructions > {CONTEXT_DEPTH}")
    body = data[HEADER.size:]
    if len(body) != count * RECORD.size:
        raise DecodeError(f"expected {count} records, got {len(body)} bytes")
    instrs = tuple(decode(body[k * RECORD.size:(k + 1) * RECORD.size], fmt) for k in range(count))
    return Program(n, instrs, fmt)

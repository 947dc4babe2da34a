"""Gate kernels and the program-counter / ping-pong session loop."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import qstate
from .gates import Circuit, Instruction, Opcode, Program, coeffs
from .numerics import NumberFormat, aadd, acmul, scalar_storage
from .qstate import PingPong, StateVector


class KernelError(ValueError):
    pass


def _check_pair(ins: Instruction, src: StateVector, dst: StateVector) -> None:
    if src.n != dst.n or src.fmt != dst.fmt:
        raise KernelError("source and destination buffers differ in size or format")
    if ins.fmt != src.fmt:
        raise KernelError(f"instruction format {ins.fmt} does not match buffer format {src.fmt}")
    if not dst.is_zero():
        raise KernelError("destination buffer is not zeroed")


def apply_single(ins: Instruction, src: StateVector, dst: StateVector) -> None:
    """Apply a 2x2 gate on qubit ``w0`` (qubit 0 = most significant index bit).

    For each pair (i0, i1 = i0 + cut) the scan in ascending index order gives

        dst[i0] = (dst[i0] + a*src[i0]) + b*src[i1]
        dst[i1] = (dst[i1] + c*src[i0]) + d*src[i1]

    with every multiply and add rounded in the session format.
    """
    if ins.opcode == Opcode.CX:
        raise KernelError("CX goes through apply_cx")
    _check_pair(ins, src, dst)
    n, w0 = src.n, ins.w0
    if not 0 <= w0 < n:
        raise KernelError(f"target qubit {w0} out of range for n={n}")
    fmt = src.fmt
    cut = 1 << (n - w0 - 1)
    shape = (1 << w0, 2, cut)
    sre, sim = src.re.reshape(shape), src.im.reshape(shape)
    dre, dim = dst.re.reshape(shape), dst.im.reshape(shape)
    x0re, x0im, x1re, x1im = sre[:, 0], sim[:, 0], sre[:, 1], sim[:, 1]
    a, b, c, d = ((scalar_storage(z.re), scalar_storage(z.im)) for z in coeffs(ins))

    ar, ai = acmul(*a, x0re, x0im, fmt)
    cr, ci = acmul(*c, x0re, x0im, fmt)
    br, bi = acmul(*b, x1re, x1im, fmt)
    dr, di = acmul(*d, x1re, x1im, fmt)
    if fmt.is_fixed:
        # dst is zero and 0 + x == x exactly for integers; floats keep the add for signed zeros
        n0re, n0im = aadd(ar, br, fmt), aadd(ai, bi, fmt)
        n1re, n1im = aadd(cr, dr, fmt), aadd(ci, di, fmt)
    else:
        n0re = aadd(aadd(dre[:, 0], ar, fmt), br, fmt)
        n0im = aadd(aadd(dim[:, 0], ai, fmt), bi, fmt)
        n1re = aadd(aadd(dre[:, 1], cr, fmt), dr, fmt)
        n1im = aadd(aadd(dim[:, 1], ci, fmt), di, fmt)
    dre[:, 0], dim[:, 0], dre[:, 1], dim[:, 1] = n0re, n0im, n1re, n1im


@lru_cache(maxsize=64)
def _cx_destinations(n: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    ctrl = (idx >> (n - 1 - control)) & 1
    return idx ^ (ctrl << (n - 1 - target))


def apply_cx(ins: Instruction, src: StateVector, dst: StateVector) -> None:
    """Controlled-X with control ``w0`` and target ``w1``: a pure amplitude move."""
    _check_pair(ins, src, dst)
    n, control, target = src.n, ins.w0, ins.w1
    if control == target:
        raise KernelError("control equals target")
    if not (0 <= control < n and 0 <= target < n):
        raise KernelError(f"CX qubits ({control}, {target}) out of range for n={n}")
    dest = _cx_destinations(n, control, target)
    dst.re[dest] = src.re
    dst.im[dest] = src.im


def apply(ins: Instruction, src: StateVector, dst: StateVector) -> None:
    if ins.opcode == Opcode.CX:
        apply_cx(ins, src, dst)
    else:
        apply_single(ins, src, dst)


@dataclass
class Session:
    program: Program
    buffers: PingPong
    pc: int = 0
    done: bool = False

    def __post_init__(self):
        if self.buffers.ping.fmt != self.program.fmt:
            raise KernelError(f"buffers are {self.buffers.ping.fmt}, program is {self.program.fmt}")
        if self.buffers.ping.n != self.program.n:
            raise KernelError("buffer size does not match the program's qubit count")
        self.done = self.pc == len(self.program)

    def step(self) -> None:
        """Execute the instruction at ``pc``, flip buffers, clear the new destination."""
        if self.done:
            return
        bufs = self.buffers
        apply(self.program.instrs[self.pc], bufs.current, bufs.other)
        bufs.swap()
        bufs.other.clear()
        self.pc += 1
        self.done = self.pc == len(self.program)


def run(session: Session) -> StateVector:
    while not session.done:
        session.step()
    return session.buffers.current


def simulate(
    circuit: Circuit | Program,
    fmt: NumberFormat | None = None,
    initial=None,
    allow_large: bool = False,
) -> StateVector:
    """Compile (if needed) and run a circuit from |0...0> or from ``initial`` amplitudes."""
    if isinstance(circuit, Circuit):
        if fmt is None:
            raise ValueError("a format is required to compile a circuit")
        program = circuit.compile(fmt)
    else:
        program = circuit
    fmt = program.fmt
    if initial is None:
        bufs = qstate.init(program.n, fmt, allow_large)
    else:
        bufs = qstate.load(initial, fmt, allow_large)
    return run(Session(program, bufs))

"""Independent reference implementations used only by the tests.

Nothing here imports the kernel or the array arithmetic: gates are dense
complex128 matrices built from their textbook definitions, and the scalar
kernel runs every rounding through the Fraction-based route.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from wfemu import numerics as nm
from wfemu.gates import Opcode, coeffs

I2 = np.eye(2, dtype=np.complex128)


def gate_matrix(kind: str, theta: float | None = None) -> np.ndarray:
    h = 1 / math.sqrt(2)
    if kind == "H":
        return np.array([[h, h], [h, -h]], dtype=np.complex128)
    if kind == "S":
        return np.diag([1, 1j])
    if kind == "T":
        return np.diag([1, np.exp(1j * math.pi / 4)])
    if kind == "X":
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if kind == "Y":
        return np.array([[0, -1j], [1j, 0]])
    if kind == "Z":
        return np.diag([1, -1]).astype(np.complex128)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if kind == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind == "RY":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if kind == "RZ":
        return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    raise ValueError(kind)


def embed(u: np.ndarray, q: int, n: int) -> np.ndarray:
    """Full 2**n operator for a 1-qubit gate on q; qubit 0 is the leftmost Kronecker factor."""
    out = np.ones((1, 1), dtype=np.complex128)
    for k in range(n):
        out = np.kron(out, u if k == q else I2)
    return out


def cx_matrix(control: int, target: int, n: int) -> np.ndarray:
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        bits = [(j >> (n - 1 - k)) & 1 for k in range(n)]
        if bits[control]:
            bits[target] ^= 1
        i = sum(b << (n - 1 - k) for k, b in enumerate(bits))
        m[i, j] = 1
    return m


def unitary(circuit) -> np.ndarray:
    n = circuit.n
    u = np.eye(1 << n, dtype=np.complex128)
    for g in circuit.gates:
        if g.kind == "CX":
            m = cx_matrix(g.w0, g.w1, n)
        else:
            m = embed(gate_matrix(g.kind, g.theta), g.w0, n)
        u = m @ u
    return u


def dense_state(circuit, initial=None) -> np.ndarray:
    psi = np.zeros(1 << circuit.n, dtype=np.complex128)
    if initial is None:
        psi[0] = 1
    else:
        psi[:] = initial
    return unitary(circuit) @ psi


def dft_state(n: int, j: int = 0) -> np.ndarray:
    dim = 1 << n
    k = np.arange(dim)
    return np.exp(2j * np.pi * j * k / dim) / math.sqrt(dim)


# ---------------------------------------------------------------------------
# scalar kernel on the exact (Fraction) route
# ---------------------------------------------------------------------------

def scalar_apply(ins, amps: list) -> list:
    """One instruction over a list of ComplexScalar, one pair at a time."""
    fmt = ins.fmt
    size = len(amps)
    n = size.bit_length() - 1
    zero = nm.ComplexScalar(nm.zero(fmt), nm.zero(fmt))
    out = [zero] * size
    if ins.opcode == Opcode.CX:
        for j in range(size):
            i = j ^ ((((j >> (n - 1 - ins.w0)) & 1)) << (n - 1 - ins.w1))
            out[i] = amps[j]
        return out
    a, b, c, d = coeffs(ins)
    cut = 1 << (n - ins.w0 - 1)
    for i0 in range(size):
        if i0 & cut:
            continue
        i1 = i0 + cut
        x0, x1 = amps[i0], amps[i1]
        out[i0] = nm.cadd(nm.cadd(out[i0], nm.cmul(a, x0)), nm.cmul(b, x1))
        out[i1] = nm.cadd(nm.cadd(out[i1], nm.cmul(c, x0)), nm.cmul(d, x1))
    return out


def scalar_run(program, initial: list | None = None) -> list:
    fmt = program.fmt
    size = 1 << program.n
    if initial is None:
        z = nm.zero(fmt)
        amps = [nm.ComplexScalar(z, z)] * size
        amps[0] = nm.ComplexScalar(nm.quantize(1.0, fmt), z)
    else:
        amps = list(initial)
    for ins in program.instrs:
        amps = scalar_apply(ins, amps)
    return amps


def exact_round(x: Fraction, fmt) -> float:
    """Value of x rounded to fmt, computed from scratch (no library rounding)."""
    if fmt.is_fixed:
        scaled = x * (1 << fmt.fraction_bits)
        if fmt.rounding == nm.TRUNCATE:
            k = math.floor(scaled)
        else:
            fl = math.floor(scaled)
            rem = scaled - fl
            k = fl + (rem > Fraction(1, 2) or (rem == Fraction(1, 2) and fl % 2 == 1))
        k = max(fmt.raw_min, min(fmt.raw_max, k))
        return k / (1 << fmt.fraction_bits)
    # binary float with p = mantissa_bits + 1, emin = 2 - 2**(e-1)
    p = fmt.mantissa_bits + 1
    emin = 2 - (1 << (fmt.exponent_bits - 1))
    if x == 0:
        return 0.0
    sign = -1 if x < 0 else 1
    ax = abs(x)
    e = math.floor(math.log2(ax))
    while Fraction(2) ** e > ax:
        e -= 1
    while Fraction(2) ** (e + 1) <= ax:
        e += 1
    e = max(e, emin)
    ulp = Fraction(2) ** (e - p + 1)
    q = ax / ulp
    fl = math.floor(q)
    rem = q - fl
    k = fl + (rem > Fraction(1, 2) or (rem == Fraction(1, 2) and fl % 2 == 1))
    v = k * ulp
    emax = (1 << (fmt.exponent_bits - 1)) - 1
    max_finite = (2 - Fraction(2) ** (1 - p)) * Fraction(2) ** emax
    if v > max_finite:
        return sign * math.inf
    return sign * float(v)

"""Software emulation of the accelerator's number formats.

Two routes compute every primitive:

* ``Scalar`` arithmetic is exact-rational (``fractions.Fraction``) followed by
  one explicit rounding step.  It is slow and serves as the bit-level oracle.
* The ``a*`` array functions (``amul``, ``aadd``, ...) operate on numpy storage
  arrays and are what the kernel uses.  Fixed-point values are held as raw
  ``int64`` integers scaled by ``2**fraction_bits``; FP16/FP32 use the native
  numpy dtypes, whose single operations are correctly rounded (float32/float64
  intermediates satisfy p' >= 2p + 2, so double rounding is innocuous).

Both routes must agree bit for bit; the test-suite checks it.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

RNE = "rne"
TRUNCATE = "truncate"


class FormatError(ValueError):
    """Operands in different formats, or an input the format cannot hold."""


@dataclass(frozen=True)
class NumberFormat:
    name: str
    kind: str  # "fixed" | "float" | "reference"
    total_bits: int
    fraction_bits: int = 0
    exponent_bits: int = 0
    mantissa_bits: int = 0
    qubit_cap: int = 17
    rounding: str = RNE

    @property
    def is_fixed(self) -> bool:
        return self.kind == "fixed"

    @property
    def step(self) -> float:
        """Spacing of representable values (fixed point) or unit roundoff * 2 at 1.0."""
        if self.is_fixed:
            return 2.0 ** -self.fraction_bits
        if self.kind == "float":
            return 2.0 ** -self.mantissa_bits
        return 2.0 ** -52

    @property
    def raw_min(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def raw_max(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    @property
    def dtype(self):
        if self.is_fixed:
            return np.int64
        return {16: np.float16, 32: np.float32, 64: np.float64}[self.total_bits]

    def with_rounding(self, rounding: str) -> NumberFormat:
        if rounding not in (RNE, TRUNCATE):
            raise FormatError(f"unknown rounding mode {rounding!r}")
        if rounding == TRUNCATE and not self.is_fixed:
            raise FormatError("truncation is only available for fixed-point formats")
        return replace(self, rounding=rounding)

    def __str__(self) -> str:
        return self.name if self.rounding == RNE else f"{self.name}/{self.rounding}"


FP16 = NumberFormat("fp16", "float", 16, exponent_bits=5, mantissa_bits=10, qubit_cap=18)
FP32 = NumberFormat("fp32", "float", 32, exponent_bits=8, mantissa_bits=23)
FX16 = NumberFormat("fx16", "fixed", 16, fraction_bits=14, qubit_cap=18)
FX24 = NumberFormat("fx24", "fixed", 24, fraction_bits=22)
FX32 = NumberFormat("fx32", "fixed", 32, fraction_bits=30)
REFERENCE = NumberFormat("reference", "reference", 64, exponent_bits=11, mantissa_bits=52)

HARDWARE_FORMATS = (FP16, FP32, FX16, FX24, FX32)
ALL_FORMATS = HARDWARE_FORMATS + (REFERENCE,)
_BY_NAME = {f.name: f for f in ALL_FORMATS} | {"ref": REFERENCE, "fp64": REFERENCE}


def get_format(name: str | NumberFormat, rounding: str = RNE) -> NumberFormat:
    if isinstance(name, NumberFormat):
        return name if rounding == RNE else name.with_rounding(rounding)
    try:
        fmt = _BY_NAME[name.strip().lower()]
    except KeyError:
        raise FormatError(f"unknown number format {name!r}") from None
    return fmt if rounding == RNE else fmt.with_rounding(rounding)


# ---------------------------------------------------------------------------
# Exact (oracle) route
# ---------------------------------------------------------------------------

def _round_int(q: Fraction, mode: str) -> int:
    if mode == TRUNCATE:
        return math.floor(q)
    return round(q)  # Fraction.__round__ is half-to-even


def _fixed_raw(q: Fraction, fmt: NumberFormat) -> int:
    raw = _round_int(q * (1 << fmt.fraction_bits), fmt.rounding)
    return min(max(raw, fmt.raw_min), fmt.raw_max)


def _float_value(q: Fraction, fmt: NumberFormat) -> float:
    """Round an exact rational to the nearest binary{16,32,64} value (RNE)."""
    if q == 0:
        return 0.0
    p = fmt.mantissa_bits + 1
    bias = (1 << (fmt.exponent_bits - 1)) - 1
    emin = 1 - bias
    sign = -1 if q < 0 else 1
    a = abs(q)
    e = a.numerator.bit_length() - a.denominator.bit_length()
    if Fraction(2) ** e > a:
        e -= 1
    e = max(e, emin)
    ulp = Fraction(2) ** (e - p + 1)
    m = round(a / ulp)
    value = m * ulp
    if value >= Fraction(2) ** (bias + 1):
        return sign * math.inf
    return sign * float(value)


def _pattern(value: float, fmt: NumberFormat) -> int:
    arr = np.array([value], dtype=fmt.dtype)
    return int(arr.view({16: np.uint16, 32: np.uint32, 64: np.uint64}[fmt.total_bits])[0])


@dataclass(frozen=True)
class Scalar:
    """One value in a given format, identified by its raw bit pattern."""

    fmt: NumberFormat
    bits: int

    @property
    def value(self) -> float:
        """Widen to a host double (always exact)."""
        fmt = self.fmt
        if fmt.is_fixed:
            raw = self.bits - (1 << fmt.total_bits) if self.bits >> (fmt.total_bits - 1) else self.bits
            return raw / (1 << fmt.fraction_bits)
        code = {16: "<e", 32: "<f", 64: "<d"}[fmt.total_bits]
        ucode = {16: "<H", 32: "<I", 64: "<Q"}[fmt.total_bits]
        return struct.unpack(code, struct.pack(ucode, self.bits))[0]

    @property
    def raw(self) -> int:
        """Signed integer (fixed point) or the float itself."""
        if self.fmt.is_fixed:
            return round(self.value * (1 << self.fmt.fraction_bits))
        return self.bits

    def exact(self) -> Fraction:
        return Fraction(self.value)

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"Scalar({self.fmt}, {self.value!r})"


def _from_raw(raw: int, fmt: NumberFormat) -> Scalar:
    return Scalar(fmt, raw & ((1 << fmt.total_bits) - 1))


def _from_exact(q: Fraction, fmt: NumberFormat) -> Scalar:
    if fmt.is_fixed:
        return _from_raw(_fixed_raw(q, fmt), fmt)
    return Scalar(fmt, _pattern(_float_value(q, fmt), fmt))


def quantize(x: float, fmt: NumberFormat) -> Scalar:
    """Nearest representable value of ``x`` in ``fmt``.

    Fixed-point inputs outside [-2, 2) saturate.  NaN is rejected for fixed
    point and propagated for floating point.
    """
    x = float(x)
    if math.isnan(x):
        if fmt.is_fixed:
            raise FormatError(f"NaN cannot be represented in {fmt}")
        return Scalar(fmt, _pattern(x, fmt))
    if math.isinf(x):
        if fmt.is_fixed:
            return _from_raw(fmt.raw_max if x > 0 else fmt.raw_min, fmt)
        return Scalar(fmt, _pattern(x, fmt))
    if x == 0.0 and not fmt.is_fixed:
        return Scalar(fmt, _pattern(x, fmt))  # keeps the sign of zero
    return _from_exact(Fraction(x), fmt)


def _check(a: Scalar, b: Scalar) -> NumberFormat:
    if a.fmt != b.fmt:
        raise FormatError(f"format mismatch: {a.fmt} vs {b.fmt}")
    return a.fmt


def _special(a: Scalar, b: Scalar) -> bool:
    return not a.fmt.is_fixed and not (math.isfinite(a.value) and math.isfinite(b.value))


def _ieee(op, a: Scalar, b: Scalar) -> Scalar:
    dt = a.fmt.dtype
    with np.errstate(all="ignore"):
        r = op(np.array([a.value], dtype=dt), np.array([b.value], dtype=dt))[0]
    return Scalar(a.fmt, _pattern(float(r), a.fmt))


def _signed_zero(q: Fraction, a: Scalar, b: Scalar, op: str) -> Scalar | None:
    """IEEE sign-of-zero rules for an exact zero result."""
    if q != 0 or a.fmt.is_fixed:
        return None
    sa, sb = math.copysign(1.0, a.value) < 0, math.copysign(1.0, b.value) < 0
    if op == "mul":
        neg = sa != sb
    elif op == "add":
        neg = sa and sb
    else:
        neg = sa and not sb
    return quantize(-0.0 if neg else 0.0, a.fmt)


def mul(a: Scalar, b: Scalar) -> Scalar:
    fmt = _check(a, b)
    if _special(a, b):
        return _ieee(np.multiply, a, b)
    q = a.exact() * b.exact()
    return _signed_zero(q, a, b, "mul") or _from_exact(q, fmt)


def add(a: Scalar, b: Scalar) -> Scalar:
    fmt = _check(a, b)
    if _special(a, b):
        return _ieee(np.add, a, b)
    q = a.exact() + b.exact()
    return _signed_zero(q, a, b, "add") or _from_exact(q, fmt)


def sub(a: Scalar, b: Scalar) -> Scalar:
    fmt = _check(a, b)
    if _special(a, b):
        return _ieee(np.subtract, a, b)
    q = a.exact() - b.exact()
    return _signed_zero(q, a, b, "sub") or _from_exact(q, fmt)


def neg(a: Scalar) -> Scalar:
    fmt = a.fmt
    if fmt.is_fixed:
        return _from_raw(min(max(-a.raw, fmt.raw_min), fmt.raw_max), fmt)
    return Scalar(fmt, a.bits ^ (1 << (fmt.total_bits - 1)))


def zero(fmt: NumberFormat) -> Scalar:
    return Scalar(fmt, 0)


@dataclass(frozen=True)
class ComplexScalar:
    re: Scalar
    im: Scalar

    @property
    def fmt(self) -> NumberFormat:
        return self.re.fmt

    def __complex__(self) -> complex:
        return complex(self.re.value, self.im.value)

    @classmethod
    def from_complex(cls, z: complex, fmt: NumberFormat) -> ComplexScalar:
        return cls(quantize(z.real, fmt), quantize(z.imag, fmt))


def cmul(a: ComplexScalar, b: ComplexScalar) -> ComplexScalar:
    """(a.re + i a.im)(b.re + i b.im) with every primitive rounded.

    Evaluation order is fixed: ac, bd, ad, bc, then ac - bd and ad + bc.
    """
    ac = mul(a.re, b.re)
    bd = mul(a.im, b.im)
    ad = mul(a.re, b.im)
    bc = mul(a.im, b.re)
    return ComplexScalar(sub(ac, bd), add(ad, bc))


def cadd(a: ComplexScalar, b: ComplexScalar) -> ComplexScalar:
    return ComplexScalar(add(a.re, b.re), add(a.im, b.im))


# ---------------------------------------------------------------------------
# Array route (used by the kernel)
# ---------------------------------------------------------------------------

def to_storage(x, fmt: NumberFormat) -> np.ndarray:
    """Quantize host doubles into the storage representation of ``fmt``."""
    x = np.asarray(x, dtype=np.float64)
    if not fmt.is_fixed:
        return x.astype(fmt.dtype)
    if np.isnan(x).any():
        raise FormatError(f"NaN cannot be represented in {fmt}")
    scaled = x * float(1 << fmt.fraction_bits)  # exact power-of-two scaling
    scaled = np.floor(scaled) if fmt.rounding == TRUNCATE else np.rint(scaled)
    scaled = np.clip(scaled, fmt.raw_min, fmt.raw_max)
    return scaled.astype(np.int64)


def to_float(arr: np.ndarray, fmt: NumberFormat) -> np.ndarray:
    """Widen storage to host doubles (exact)."""
    if fmt.is_fixed:
        return arr.astype(np.float64) / float(1 << fmt.fraction_bits)
    return arr.astype(np.float64)


def scalar_storage(s: Scalar):
    """A ``Scalar`` as a numpy scalar of the storage dtype."""
    if s.fmt.is_fixed:
        return np.int64(s.raw)
    return s.fmt.dtype(s.value)


def from_storage(v, fmt: NumberFormat) -> Scalar:
    if fmt.is_fixed:
        return _from_raw(int(v), fmt)
    return Scalar(fmt, _pattern(float(v), fmt))


def _saturate(raw: np.ndarray, fmt: NumberFormat) -> np.ndarray:
    return np.clip(raw, fmt.raw_min, fmt.raw_max)


def _shift_round(p: np.ndarray, shift: int, mode: str) -> np.ndarray:
    q = p >> shift  # arithmetic shift = floor division
    if mode == TRUNCATE:
        return q
    r = p - (q << shift)
    half = np.int64(1) << (shift - 1)
    up = (r > half) | ((r == half) & ((q & 1) == 1))
    return q + up


def amul(a, b, fmt: NumberFormat) -> np.ndarray:
    if fmt.is_fixed:
        return _saturate(_shift_round(np.multiply(a, b, dtype=np.int64), fmt.fraction_bits, fmt.rounding), fmt)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        return np.multiply(a, b)


def aadd(a, b, fmt: NumberFormat) -> np.ndarray:
    if fmt.is_fixed:
        return _saturate(np.add(a, b, dtype=np.int64), fmt)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.add(a, b)


def asub(a, b, fmt: NumberFormat) -> np.ndarray:
    if fmt.is_fixed:
        return _saturate(np.subtract(a, b, dtype=np.int64), fmt)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.subtract(a, b)


def acmul(cre, cim, xre, xim, fmt: NumberFormat) -> tuple[np.ndarray, np.ndarray]:
    """Array ``cmul`` of a scalar coefficient by an amplitude array, same order as ``cmul``."""
    if fmt.is_fixed and (cre == 0 or cim == 0):
        # integer products by zero vanish and adding 0 is exact, so this is bit-identical
        if cim == 0:
            return amul(cre, xre, fmt), amul(cre, xim, fmt)
        return _saturate(-amul(cim, xim, fmt), fmt), amul(cim, xre, fmt)
    ac = amul(cre, xre, fmt)
    bd = amul(cim, xim, fmt)
    ad = amul(cre, xim, fmt)
    bc = amul(cim, xre, fmt)
    return asub(ac, bd, fmt), aadd(ad, bc, fmt)

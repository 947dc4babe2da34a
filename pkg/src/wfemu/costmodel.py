"""Cycle-level timing model of the accelerator: time, normalized gate speed, PDP.

Each gate sweeps all 2**n amplitudes, so one gate costs
``period * cycles(gate) * 2**n``.  Host<->device transfer is not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gates import Circuit, Opcode, Program, opcode_of
from .numerics import NumberFormat, get_format

_FP_CYCLES = {Opcode.H: 6, Opcode.S: 4, Opcode.CX: 4, Opcode.RX: 6, Opcode.RY: 6, Opcode.RZ: 8}
_FX_CYCLES = {Opcode.H: 4, Opcode.S: 2, Opcode.CX: 2, Opcode.RX: 4, Opcode.RY: 4, Opcode.RZ: 4}

DEFAULT_WATTS = 0.81


@dataclass(frozen=True)
class TimingProfile:
    format: str
    period_ns: float
    cycles_per_gate: dict = field(hash=False)


@dataclass(frozen=True)
class PowerProfile:
    watts: float = DEFAULT_WATTS

    def __post_init__(self):
        if not self.watts > 0:
            raise ValueError("power must be positive")


PROFILES = {
    "fp16": TimingProfile("fp16", 6.66, _FP_CYCLES),
    "fp32": TimingProfile("fp32", 7.35, _FP_CYCLES),
    "fx16": TimingProfile("fx16", 7.35, _FX_CYCLES),
    "fx24": TimingProfile("fx24", 8.00, _FX_CYCLES),
    "fx32": TimingProfile("fx32", 9.35, _FX_CYCLES),
}


def profile_for(fmt: NumberFormat | str) -> TimingProfile:
    name = get_format(fmt).name
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"no hardware timing profile for {name}") from None


@dataclass(frozen=True)
class CostReport:
    n: int
    gates: int
    total_cycles: int
    time_s: float
    ngs: float
    pdp_joules: float

    FIELDS = ("gates", "cycles", "time_s", "ngs", "pdp_j")

    def row(self) -> list:
        return [self.gates, self.total_cycles, repr(self.time_s), repr(self.ngs), repr(self.pdp_joules)]

    def __add__(self, other: CostReport) -> CostReport:
        if other.n != self.n:
            raise ValueError("cost reports for different qubit counts")
        gates = self.gates + other.gates
        time_s = self.time_s + other.time_s
        pdp_total = self.pdp_joules + other.pdp_joules
        return CostReport(self.n, gates, self.total_cycles + other.total_cycles, time_s,
                          time_s / (gates << self.n) if gates else 0.0, pdp_total)


def _opcodes(program: Program | Circuit):
    if isinstance(program, Circuit):
        return program.n, [opcode_of(g) for g in program.gates]
    return program.n, [ins.opcode for ins in program.instrs]


def cycles(program: Program | Circuit, profile: TimingProfile) -> int:
    _, ops = _opcodes(program)
    try:
        return sum(profile.cycles_per_gate[op] for op in ops)
    except KeyError as e:
        raise ValueError(f"opcode {e.args[0]!r} missing from the {profile.format} timing profile") from None


def ngs(report: CostReport, m: int, n: int) -> float:
    """Execution time per (gate x amplitude)."""
    if m <= 0:
        raise ValueError("normalized gate speed is undefined for an empty program")
    return report.time_s / (m * 2 ** n)


def pdp(report: CostReport, power: PowerProfile) -> float:
    return power.watts * report.time_s


def predict(program: Program | Circuit, profile: TimingProfile, power: PowerProfile | None = None) -> CostReport:
    power = power or PowerProfile()
    n, ops = _opcodes(program)
    total = cycles(program, profile)
    time_s = profile.period_ns * 1e-9 * total * 2 ** n
    m = len(ops)
    report = CostReport(n, m, total, time_s, 0.0, power.watts * time_s)
    if m:
        report = CostReport(n, m, total, time_s, ngs(report, m, n), report.pdp_joules)
    return report

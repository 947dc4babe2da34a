"""Software emulator of a wave-function quantum-circuit accelerator.

Runs Clifford+R circuits on a 2**n amplitude state vector in a selectable
number format (fixed point FX16/24/32, IEEE FP16/FP32, or float64 as the
reference), and predicts hardware time, normalized gate speed and PDP.
"""

from .circuits import CircuitRecipe, build_qft, build_rqc, build_zxz
from .costmodel import PowerProfile, TimingProfile, predict, profile_for
from .gates import Circuit, GateSpec, Program, decode, encode
from .kernel import Session, simulate
from .metrics import AccuracyReport, compare, fidelity, mse
from .numerics import ALL_FORMATS, FP16, FP32, FX16, FX24, FX32, REFERENCE, NumberFormat, get_format
from .qstate import CapacityError, StateVector, init, load

__version__ = "0.1.0"

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wfemu import metrics
from wfemu.numerics import FX16
from wfemu.qstate import StateVector

from conftest import unit_states


@settings(max_examples=50)
@given(data=st.data())
def test_fidelity_properties(data):
    n = data.draw(st.integers(1, 4))
    a, b = data.draw(unit_states(n)), data.draw(unit_states(n))
    f = metrics.fidelity(a, b)
    assert f == metrics.fidelity(b, a)  # bitwise symmetric
    assert -1e-12 <= f <= 1 + 1e-12
    assert metrics.fidelity(a, a) == pytest.approx(1.0, abs=1e-12)
    phase = np.exp(1j * data.draw(st.floats(0, 6.28)))
    assert metrics.fidelity(a, phase * a) == pytest.approx(1.0, abs=1e-12)
    assert metrics.fidelity(a, phase * b) == pytest.approx(f, abs=1e-12)


@settings(max_examples=50)
@given(data=st.data())
def test_mse_properties(data):
    n = data.draw(st.integers(1, 4))
    a, b = data.draw(unit_states(n)), data.draw(unit_states(n))
    assert metrics.mse(a, a) == 0.0
    assert metrics.mse(a, b) == metrics.mse(b, a)
    assert metrics.mse(a, b) == pytest.approx(np.mean(np.abs(a - b) ** 2), rel=1e-12)


def test_known_values():
    a = np.array([1, 0])
    b = np.array([0, 1])
    assert metrics.fidelity(a, b) == 0.0
    assert metrics.mse(a, b) == 1.0
    c = np.array([1, 1]) / np.sqrt(2)
    assert metrics.fidelity(a, c) == pytest.approx(0.5)


def test_length_mismatch():
    with pytest.raises(ValueError):
        metrics.mse(np.zeros(2), np.zeros(4))


def test_compare_and_csv(tmp_path):
    s = StateVector.from_complex([0.6, 0.8], FX16)
    rep = metrics.compare(s, np.array([0.6, 0.8]), "demo")
    assert rep.n == 1 and rep.format == "fx16" and rep.mse < FX16.step**2
    path = tmp_path / "acc.csv"
    metrics.write_reports([rep], path)
    lines = path.read_text().splitlines()
    assert lines[0] == "task,n,format,fidelity,mse"
    assert lines[1].startswith("demo,1,fx16,")

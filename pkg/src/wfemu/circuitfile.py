"""Textual circuit format.

    # comment
    qubits 3
    H 0
    CX 0 1          # control, target
    RZ 2 0.7853981633974483

Angles are radians at full double precision; they are quantized only when the
circuit is compiled for a number format.
"""

from __future__ import annotations

from pathlib import Path

from .gates import ROTATIONS, Circuit, GateSpec


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


_ARITY = {"CX": 2}


def parse(text: str) -> Circuit:
    n = None
    gates: list[GateSpec] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        head = head.upper()
        if head == "QUBITS":
            if n is not None:
                raise ParseError(lineno, "duplicate qubits header")
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise ParseError(lineno, "expected 'qubits N' with N >= 1")
            n = int(args[0])
            continue
        if n is None:
            raise ParseError(lineno, "gate before 'qubits N' header")
        nq = _ARITY.get(head, 1)
        expected = nq + (head in ROTATIONS)
        if len(args) != expected:
            raise ParseError(lineno, f"{head} takes {expected} argument(s), got {len(args)}")
        try:
            qs = [int(a) for a in args[:nq]]
        except ValueError:
            raise ParseError(lineno, f"bad qubit index in {line!r}") from None
        if any(q < 0 or q >= n for q in qs):
            raise ParseError(lineno, f"qubit index out of range for {n} qubits")
        theta = None
        if head in ROTATIONS:
            try:
                theta = float(args[-1])
            except ValueError:
                raise ParseError(lineno, f"bad angle {args[-1]!r}") from None
        try:
            gates.append(GateSpec(head, qs[0], qs[1] if nq == 2 else None, theta))
        except ValueError as e:
            raise ParseError(lineno, str(e)) from None
    if n is None:
        raise ParseError(0, "missing 'qubits N' header")
    return Circuit(n, gates)


def format_gate(g: GateSpec) -> str:
    parts = [g.kind, str(g.w0)]
    if g.w1 is not None:
        parts.append(str(g.w1))
    if g.theta is not None:
        parts.append(repr(float(g.theta)))
    return " ".join(parts)


def dumps(circuit: Circuit) -> str:
    return "\n".join([f"qubits {circuit.n}"] + [format_gate(g) for g in circuit.gates]) + "\n"


def load(path) -> Circuit:
    return parse(Path(path).read_text())


def save(circuit: Circuit, path) -> None:
    Path(path).write_text(dumps(circuit))

"""Circuit representation, gate timing and the QAOA-MaxCut test circuit.

Qubit 0 is the leftmost character of every bitstring and the most
significant bit of every flat state index.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ONE_QUBIT_KINDS",
    "ROTATION_KINDS",
    "GATE_KINDS",
    "DurationTable",
    "Gate",
    "Circuit",
    "Observable",
    "QaoaParams",
    "QubitCapError",
    "DEFAULT_QUBIT_CAP",
    "build_qaoa_maxcut",
    "maxcut_observable",
    "ideal_expectation",
    "statevector",
    "gate_matrix",
]

ONE_QUBIT_KINDS = frozenset({"H", "X", "Y", "Z", "I", "RZ", "RX"})
ROTATION_KINDS = frozenset({"RZ", "RX"})
GATE_KINDS = ONE_QUBIT_KINDS | {"CNOT", "MEASURE", "DELAY"}

DEFAULT_QUBIT_CAP = 8
TEXT_HEADER = "qemlab-circuit/1"


class QubitCapError(ValueError):
    """Raised when a circuit is too wide for dense simulation."""


@dataclass(frozen=True)
class DurationTable:
    """Gate durations in nanoseconds.

    These are configuration defaults, not device calibration data.
    """

    one_qubit: float = 35.0
    cnot: float = 300.0
    measure: float = 700.0

    def __post_init__(self):
        for name in ("one_qubit", "cnot", "measure"):
            if not getattr(self, name) > 0:
                raise ValueError(f"duration {name!r} must be positive")

    def lookup(self, kind: str) -> float:
        if kind in ONE_QUBIT_KINDS:
            return self.one_qubit
        if kind == "CNOT":
            return self.cnot
        if kind == "MEASURE":
            return self.measure
        raise ValueError(f"no table duration for gate kind {kind!r}")

    def to_dict(self) -> dict:
        return {"one_qubit": self.one_qubit, "cnot": self.cnot, "measure": self.measure}

    @classmethod
    def from_dict(cls, data: dict) -> "DurationTable":
        return cls(**data)


DEFAULT_DURATIONS = DurationTable()


@dataclass(frozen=True)
class Gate:
    """A single circuit instruction.

    ``angle`` is only set for rotations; ``duration`` is in nanoseconds.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    duration: float = 0.0

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind} {self.qubits}")
        expected = 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != expected:
            raise ValueError(f"{self.kind} acts on {expected} qubit(s), got {self.qubits}")
        if self.kind in ROTATION_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        if self.duration < 0 or not math.isfinite(self.duration):
            raise ValueError("gate duration must be finite and >= 0")
        if self.kind != "DELAY" and self.duration == 0:
            raise ValueError(f"{self.kind} needs a positive duration")
        object.__setattr__(self, "duration", float(self.duration))

    @classmethod
    def make(
        cls,
        kind: str,
        *qubits: int,
        angle: float | None = None,
        durations: DurationTable = DEFAULT_DURATIONS,
    ) -> "Gate":
        """Build a gate, taking its duration from ``durations``."""
        return cls(kind, tuple(qubits), angle, durations.lookup(kind))

    @classmethod
    def delay(cls, qubit: int, duration: float) -> "Gate":
        return cls("DELAY", (qubit,), None, duration)

    def inverse(self) -> "Gate":
        if self.kind == "MEASURE":
            raise ValueError("MEASURE has no inverse")
        if self.kind in ROTATION_KINDS:
            return Gate(self.kind, self.qubits, -self.angle, self.duration)
        # every other kind in the alphabet is self-inverse
        return self

    def to_text(self) -> str:
        s = f"{self.kind} {','.join(map(str, self.qubits))}"
        if self.angle is not None:
            s += f"@{self.angle:.12g}"
        return s + f"#{self.duration:.12g}"

    @classmethod
    def from_text(cls, line: str, durations: DurationTable = DEFAULT_DURATIONS) -> "Gate":
        line = line.strip()
        kind, _, rest = line.partition(" ")
        duration = None
        if "#" in rest:
            rest, _, dur = rest.partition("#")
            duration = float(dur)
        angle = None
        if "@" in rest:
            rest, _, ang = rest.partition("@")
            angle = float(ang)
        qubits = tuple(int(q) for q in rest.split(","))
        if duration is None:
            if kind == "DELAY":
                raise ValueError("DELAY line needs an explicit #duration")
            duration = durations.lookup(kind)
        return cls(kind, qubits, angle, duration)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list on ``n_qubits`` qubits. Immutable."""

    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        object.__setattr__(self, "gates", tuple(self.gates))
        measured: set[int] = set()
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"qubit {q} out of range for {self.n_qubits}-qubit circuit")
                if q in measured:
                    raise ValueError(f"gate {g.kind} on qubit {q} after its measurement")
            if g.kind == "MEASURE":
                measured.update(g.qubits)

    def to_text(self) -> str:
        lines = [f"{TEXT_HEADER} n={self.n_qubits}"]
        lines.extend(g.to_text() for g in self.gates)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, durations: DurationTable = DEFAULT_DURATIONS) -> "Circuit":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith(TEXT_HEADER):
            raise ValueError("missing circuit header")
        n = int(lines[0].split("n=")[1])
        return cls(n, tuple(Gate.from_text(ln, durations) for ln in lines[1:]))

    @cached_property
    def label(self) -> str:
        """Structural identity: a digest of the canonical text form."""
        digest = hashlib.sha256(self.to_text().encode()).hexdigest()
        return f"c{self.n_qubits}-{digest[:20]}"

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    @property
    def has_measurements(self) -> bool:
        return any(g.kind == "MEASURE" for g in self.gates)

    def unitary_part(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.gates if g.kind != "MEASURE")

    def measurements(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.gates if g.kind == "MEASURE")

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_qubits, tuple(gates))

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Observable:
    """Sum of ``coefficient * prod(Z_q for q in support)`` terms."""

    terms: tuple[tuple[float, frozenset[int]], ...]

    def __post_init__(self):
        terms = tuple((float(c), frozenset(s)) for c, s in self.terms)
        supports = [s for _, s in terms]
        if len(set(supports)) != len(supports):
            raise ValueError("duplicate supports in observable")
        object.__setattr__(self, "terms", terms)

    def check_width(self, n_qubits: int) -> None:
        for _, s in self.terms:
            if any(not 0 <= q < n_qubits for q in s):
                raise ValueError(f"observable support {sorted(s)} outside {n_qubits} qubits")

    def diagonal(self, n_qubits: int) -> np.ndarray:
        """Eigenvalue for each computational basis state (flat index order)."""
        self.check_width(n_qubits)
        idx = np.arange(2**n_qubits)
        bits = (idx[:, None] >> (n_qubits - 1 - np.arange(n_qubits))) & 1
        z = 1 - 2 * bits
        out = np.zeros(2**n_qubits)
        for c, s in self.terms:
            out += c * (np.prod(z[:, sorted(s)], axis=1) if s else 1.0)
        return out

    def eigenvalue(self, bitstring: str) -> float:
        z = [1 - 2 * int(b) for b in bitstring]
        return float(sum(c * math.prod(z[q] for q in s) for c, s in self.terms))


@dataclass(frozen=True)
class QaoaParams:
    gamma: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and math.isfinite(self.beta)):
            raise ValueError("QAOA angles must be finite")


def maxcut_observable(n_nodes: int) -> Observable:
    """Cut operator of the complete graph K_n with the constant dropped.

    E = -sum_{i<j} Z_i Z_j, so a basis state scores (#cut - #uncut) edges.
    For K4 the largest eigenvalue is 2.0.
    """
    if n_nodes < 2:
        raise ValueError("need at least two nodes")
    return Observable(
        tuple((-1.0, frozenset(e)) for e in itertools.combinations(range(n_nodes), 2))
    )


def build_qaoa_maxcut(
    params: QaoaParams, durations: DurationTable = DEFAULT_DURATIONS, n_nodes: int = 4
) -> Circuit:
    """One-layer QAOA for MaxCut on the complete graph (4 nodes by default)."""
    mk = lambda kind, *q, angle=None: Gate.make(kind, *q, angle=angle, durations=durations)  # noqa: E731
    gates = [mk("H", q) for q in range(n_nodes)]
    for i, j in itertools.combinations(range(n_nodes), 2):
        gates += [mk("CNOT", i, j), mk("RZ", j, angle=2 * params.gamma), mk("CNOT", i, j)]
    gates += [mk("RX", q, angle=2 * params.beta) for q in range(n_nodes)]
    gates += [mk("MEASURE", q) for q in range(n_nodes)]
    return Circuit(n_nodes, tuple(gates))


_SQRT1_2 = 1 / math.sqrt(2)
_FIXED = {
    "H": np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "I": np.eye(2, dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}


def gate_matrix(gate: Gate) -> np.ndarray:
    """Unitary of ``gate`` on its own qubits (first listed qubit most significant)."""
    if gate.kind == "RZ":
        h = gate.angle / 2
        return np.diag([np.exp(-1j * h), np.exp(1j * h)])
    if gate.kind == "RX":
        c, s = math.cos(gate.angle / 2), math.sin(gate.angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if gate.kind in ("DELAY", "MEASURE"):
        return np.eye(2, dtype=complex)
    return _FIXED[gate.kind]


def _apply_unitary(psi: np.ndarray, u: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    k = len(qubits)
    u = u.reshape((2,) * 2 * k)
    psi = np.tensordot(u, psi, axes=(list(range(k, 2 * k)), list(qubits)))
    return np.moveaxis(psi, list(range(k)), list(qubits))


def statevector(circuit: Circuit, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Noiseless pre-measurement state as a flat vector of length 2**n."""
    n = circuit.n_qubits
    if n > cap:
        raise QubitCapError(f"{n} qubits exceeds the cap of {cap}")
    psi = np.zeros((2,) * n, dtype=complex)
    psi[(0,) * n] = 1.0
    for g in circuit.gates:
        if g.kind in ("MEASURE", "DELAY", "I"):
            continue
        psi = _apply_unitary(psi, gate_matrix(g), g.qubits)
    return psi.reshape(-1)


def ideal_expectation(circuit: Circuit, obs: Observable, cap: int = DEFAULT_QUBIT_CAP) -> float:
    """Noiseless expectation of a Z-diagonal observable before measurement."""
    psi = statevector(circuit, cap)
    return float(np.dot(np.abs(psi) ** 2, obs.diagonal(circuit.n_qubits)))

"""Entropic resource accounting and the combined quality metric."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CircuitUsage",
    "UsageLedger",
    "QualityScore",
    "weighted_shots",
    "entropy",
    "resource",
    "resource_from_parts",
    "quality",
]


@dataclass(frozen=True)
class CircuitUsage:
    label: str
    shots: int
    duration: float  # seconds per shot
    qubits: int

    def __post_init__(self):
        if self.shots < 1 or not self.duration > 0 or self.qubits < 1:
            raise ValueError(f"invalid usage record {self}")


@dataclass
class UsageLedger:
    """Shots per distinct circuit. Repeat runs of one label accumulate."""

    _entries: dict[str, CircuitUsage] = field(default_factory=dict)

    def add(self, label: str, shots: int, duration: float, qubits: int) -> None:
        prev = self._entries.get(label)
        if prev is None:
            self._entries[label] = CircuitUsage(label, int(shots), float(duration), int(qubits))
            return
        if not math.isclose(prev.duration, duration, rel_tol=1e-12) or prev.qubits != qubits:
            raise ValueError(f"conflicting usage for circuit {label}")
        self._entries[label] = CircuitUsage(label, prev.shots + int(shots), prev.duration, prev.qubits)

    def add_circuit(self, circuit, shots: int) -> None:
        from .simulator import schedule

        self.add(circuit.label, shots, schedule(circuit).length_seconds, circuit.n_qubits)

    @property
    def entries(self) -> tuple[CircuitUsage, ...]:
        return tuple(self._entries.values())

    @property
    def q_max(self) -> int:
        return max(e.qubits for e in self._entries.values())

    @property
    def total_shots(self) -> int:
        return sum(e.shots for e in self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "shots", "duration_s", "qubits"])
        for e in self.entries:
            w.writerow([e.label, e.shots, repr(e.duration), e.qubits])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "UsageLedger":
        ledger = cls()
        for row in csv.DictReader(io.StringIO(text)):
            ledger.add(row["label"], int(row["shots"]), float(row["duration_s"]), int(row["qubits"]))
        return ledger

    def to_list(self) -> list[list]:
        return [[e.label, e.shots, e.duration, e.qubits] for e in self.entries]

    @classmethod
    def from_list(cls, rows) -> "UsageLedger":
        ledger = cls()
        for label, shots, duration, qubits in rows:
            ledger.add(label, shots, duration, qubits)
        return ledger


def _weights(ledger: UsageLedger) -> np.ndarray:
    if len(ledger) == 0:
        raise ValueError("ledger is empty")
    q_max = ledger.q_max
    return np.array([e.shots * e.duration * (e.qubits / q_max) for e in ledger.entries])


def weighted_shots(ledger: UsageLedger) -> float:
    """T: duration- and qubit-weighted shot total, in seconds."""
    return float(_weights(ledger).sum())


def entropy(ledger: UsageLedger) -> float:
    """S: Shannon entropy (nats) of the weighted distinct-circuit distribution."""
    w = _weights(ledger)
    p = w / w.sum()
    p = p[p > 0]
    return float(max(0.0, -(p * np.log(p)).sum()))


def resource_from_parts(t: float, s: float) -> float:
    return t * (1.0 + s)


def resource(ledger: UsageLedger) -> float:
    """R = T (1 + S)."""
    return resource_from_parts(weighted_shots(ledger), entropy(ledger))


def quality(psr: float, epsilon: float, r: float) -> float:
    """M = PSR(%) / (epsilon * R)."""
    if epsilon <= 0 or r <= 0:
        raise ValueError("epsilon and R must be positive")
    return 100.0 * psr / (epsilon * r)


@dataclass(frozen=True)
class QualityScore:
    T: float
    S: float
    R: float
    psr: float
    epsilon: float
    M: float
    significant: bool = True

    def to_dict(self) -> dict:
        return {
            "T": self.T, "S": self.S, "R": self.R, "psr": self.psr,
            "epsilon": self.epsilon, "M": self.M, "significant": self.significant,
        }

"""Mitigation building blocks as circuit and count transforms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .circuit import Circuit, DurationTable, DEFAULT_DURATIONS, Gate
from .simulator import CountsMap, NoiseModel, bitstrings, exact_distribution, sample_counts, schedule

__all__ = [
    "RC_TABLE_VERSION",
    "RC_TABLE",
    "RcRow",
    "CalibrationMatrix",
    "EstimationFloorError",
    "IllConditionedError",
    "fold_local_cnot",
    "fold_global",
    "fold",
    "randomize_compile",
    "dress_cnot",
    "insert_dd",
    "calibration_circuits",
    "mem_calibrate",
    "mem_apply",
    "derive_estimation_circuit",
    "estimation_correct",
    "one_minus_p",
]


class IllConditionedError(ValueError):
    """Calibration matrix too close to singular to invert."""


class EstimationFloorError(ValueError):
    """All-zero fraction of an estimation circuit fell below the floor."""

    def __init__(self, value: float, floor: float):
        super().__init__(f"estimation floor breached: 1-p = {value:.4g} < {floor}")
        self.value = value
        self.floor = floor


def _check_scale(scale: int) -> int:
    if int(scale) != scale or scale < 1 or scale % 2 == 0:
        raise ValueError(f"scale factor must be a positive odd integer, got {scale}")
    return int(scale)


def fold_local_cnot(circuit: Circuit, scale: int) -> Circuit:
    """Replace every CNOT with ``scale`` consecutive copies."""
    scale = _check_scale(scale)
    gates: list[Gate] = []
    for g in circuit.gates:
        gates.extend([g] * scale if g.kind == "CNOT" else [g])
    return circuit.with_gates(gates)


def fold_global(circuit: Circuit, scale: int) -> Circuit:
    """Return C (C^-1 C)^((scale-1)/2) followed by the original measurements."""
    scale = _check_scale(scale)
    body = []
    seen_measure = False
    for g in circuit.gates:
        if g.kind == "MEASURE":
            seen_measure = True
        elif seen_measure:
            raise ValueError("global folding needs all measurements at the end")
        else:
            body.append(g)
    inverse = [g.inverse() for g in reversed(body)]
    gates = body + (inverse + body) * ((scale - 1) // 2)
    return circuit.with_gates(gates + list(circuit.measurements()))


def fold(circuit: Circuit, scale: int, kind: str = "local") -> Circuit:
    if kind == "local":
        return fold_local_cnot(circuit, scale)
    if kind == "global":
        return fold_global(circuit, scale)
    raise ValueError(f"unknown folding {kind!r}")


@dataclass(frozen=True)
class RcRow:
    """Paulis P, Q before and R, S after a CNOT (control, target)."""

    p: str
    q: str
    r: str
    s: str


RC_TABLE_VERSION = 1
# P Q R S; (R⊗S)·CNOT·(P⊗Q) equals CNOT up to a global phase for every row
RC_TABLE: tuple[RcRow, ...] = tuple(
    RcRow(*row.split())
    for row in (
        "I I I I", "I X I X", "I Y Z Y", "I Z Z Z",
        "Y I Y X", "Y X Y I", "Y Y X Z", "Y Z X Y",
        "X I X X", "X X X I", "X Y Y Z", "X Z Y Y",
        "Z I Z I", "Z X Z X", "Z Y I Y", "Z Z I Z",
    )
)


def _pauli(kind: str, q: int, durations: DurationTable) -> list[Gate]:
    return [Gate.make(kind, q, durations=durations)]


def dress_cnot(
    gate: Gate, row: RcRow, durations: DurationTable = DEFAULT_DURATIONS, keep_identity: bool = True
) -> list[Gate]:
    """Expand one CNOT into P,Q / CNOT / R,S. Identity Paulis are kept as
    explicit ``I`` gates unless ``keep_identity`` is false."""
    c, t = gate.qubits
    pre = [(row.p, c), (row.q, t)]
    post = [(row.r, c), (row.s, t)]
    out: list[Gate] = []
    for kind, q in pre:
        if keep_identity or kind != "I":
            out += _pauli(kind, q, durations)
    out.append(gate)
    for kind, q in post:
        if keep_identity or kind != "I":
            out += _pauli(kind, q, durations)
    return out


def randomize_compile(
    circuit: Circuit,
    n_duplicates: int,
    seed,
    durations: DurationTable = DEFAULT_DURATIONS,
    rows: Sequence[RcRow] | None = None,
) -> list[Circuit]:
    """Draw ``n_duplicates`` Pauli-dressed copies of ``circuit``.

    Each CNOT independently gets a uniformly drawn row of :data:`RC_TABLE`.
    Pass ``rows`` to force the same row everywhere (testing aid).
    """
    if n_duplicates < 1:
        raise ValueError("n_duplicates must be positive")
    rng = np.random.default_rng(seed)
    n_cnot = circuit.count("CNOT")
    out = []
    for _ in range(n_duplicates):
        picks = rng.integers(0, len(RC_TABLE), size=n_cnot)
        it = iter(picks)
        gates: list[Gate] = []
        for g in circuit.gates:
            if g.kind == "CNOT":
                row = rows[0] if rows else RC_TABLE[next(it)]
                gates += dress_cnot(g, row, durations)
            else:
                gates.append(g)
        out.append(circuit.with_gates(gates))
    return out


def insert_dd(circuit: Circuit, durations: DurationTable = DEFAULT_DURATIONS) -> Circuit:
    """Fill idle windows with tau/4 - X - tau/2 - X - tau/4.

    Windows shorter than two X gates are left alone. Non-idle gates keep
    their scheduled start times.
    """
    sched = schedule(circuit)
    x_dur = durations.lookup("X")
    items: list[tuple[float, float, int, int, Gate]] = []
    for i, g in enumerate(circuit.gates):
        if g.kind == "DELAY":
            continue
        start = sched.starts[i]
        items.append((start, start + g.duration, 0, i, g))
    seq = len(circuit.gates)
    for q, windows in enumerate(sched.gaps):
        for a, b in windows:
            gap = b - a
            if gap >= 2 * x_dur:
                tau = gap - 2 * x_dur
                parts = [
                    Gate.delay(q, tau / 4),
                    Gate.make("X", q, durations=durations),
                    Gate.delay(q, tau / 2),
                    Gate.make("X", q, durations=durations),
                    Gate.delay(q, tau / 4),
                ]
            else:
                parts = _delays_within(circuit, sched, q, a, b)
            t = a
            for g in parts:
                if g.kind == "DELAY" and g.duration == 0:
                    continue
                items.append((t, t + g.duration, 1, seq, g))
                seq += 1
                t += g.duration
    items.sort(key=lambda it: (it[0], it[1], it[2], it[3]))
    return circuit.with_gates(it[4] for it in items)


def _delays_within(circuit: Circuit, sched, q: int, a: float, b: float) -> list[Gate]:
    """Original DELAY gates on qubit ``q`` inside window [a, b)."""
    out = []
    for i, g in enumerate(circuit.gates):
        if g.kind == "DELAY" and g.qubits[0] == q and a - 1e-9 <= sched.starts[i] < b:
            out.append(g)
    total = sum(g.duration for g in out)
    if out and total < b - a - 1e-9:
        # re-pad so the window keeps its length once the DELAYs are re-laid
        out.insert(0, Gate.delay(q, b - a - total))
    return out


@dataclass(frozen=True)
class CalibrationMatrix:
    """Column j is the measured distribution when basis state j is prepared."""

    matrix: np.ndarray
    n_qubits: int
    circuits: tuple[Circuit, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (2**self.n_qubits,) * 2:
            raise ValueError("calibration matrix has the wrong shape")
        if not np.allclose(m.sum(axis=0), 1.0, atol=1e-9):
            raise ValueError("calibration columns must sum to 1")
        object.__setattr__(self, "matrix", m)


def calibration_circuits(n_qubits: int, durations: DurationTable = DEFAULT_DURATIONS) -> list[Circuit]:
    """One circuit per basis state: X on every '1' bit, then measure all."""
    out = []
    for bits in bitstrings(n_qubits):
        gates = [Gate.make("X", q, durations=durations) for q, b in enumerate(bits) if b == "1"]
        gates += [Gate.make("MEASURE", q, durations=durations) for q in range(n_qubits)]
        out.append(Circuit(n_qubits, tuple(gates)))
    return out


def mem_calibrate(
    n_qubits: int,
    noise: NoiseModel,
    shots: int = 10_000,
    seed=None,
    durations: DurationTable = DEFAULT_DURATIONS,
    exact: bool = False,
    ledger=None,
) -> CalibrationMatrix:
    """Estimate the readout confusion matrix from 2**n preparation circuits.

    With ``exact=True`` the columns are the infinite-shot distributions.
    If ``ledger`` is given, each calibration circuit is recorded in it.
    """
    circuits = calibration_circuits(n_qubits, durations)
    rng = np.random.default_rng(seed)
    cols = []
    for c in circuits:
        probs = exact_distribution(c, noise)
        if exact:
            cols.append(probs)
        else:
            cols.append(rng.multinomial(shots, probs) / shots)
        if ledger is not None:
            ledger.add_circuit(c, shots)
    return CalibrationMatrix(np.column_stack(cols), n_qubits, tuple(circuits))


def mem_apply(
    calib: CalibrationMatrix, counts: Mapping[str, float], max_condition: float = 1e6
) -> CountsMap:
    """Solve M x = frequencies and return quasi-counts ``x * shots``.

    Negative entries are kept; no renormalisation is done.
    """
    cond = np.linalg.cond(calib.matrix)
    if not np.isfinite(cond) or cond > max_condition:
        raise IllConditionedError(f"calibration matrix condition number {cond:.3g}")
    n = calib.n_qubits
    vec = np.zeros(2**n)
    for k, v in counts.items():
        if len(k) != n:
            raise ValueError(f"bitstring {k!r} does not match {n} qubits")
        vec[int(k, 2)] = v
    shots = vec.sum()
    if shots <= 0:
        raise ValueError("counts are empty")
    x = np.linalg.solve(calib.matrix, vec / shots) * shots
    return CountsMap.from_vector(x, n, keep_zero=True)


def derive_estimation_circuit(circuit: Circuit) -> Circuit:
    """Keep only CNOTs (with their multiplicity) and the measurements."""
    return circuit.with_gates(g for g in circuit.gates if g.kind in ("CNOT", "MEASURE"))


def one_minus_p(est_counts: Mapping[str, float]) -> float:
    """All-zero fraction of estimation-circuit counts."""
    shots = sum(est_counts.values())
    if shots <= 0:
        raise ValueError("estimation counts are empty")
    n = len(next(iter(est_counts)))
    return est_counts.get("0" * n, 0.0) / shots


def estimation_correct(raw_expectation: float, est_counts: Mapping[str, float], floor: float = 0.05) -> float:
    """Divide a raw expectation by the all-zero fraction of the estimation run."""
    value = one_minus_p(est_counts)
    if value < floor:
        raise EstimationFloorError(value, floor)
    return raw_expectation / value

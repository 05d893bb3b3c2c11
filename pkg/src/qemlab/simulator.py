"""Schedule-aware density-matrix simulation of noisy circuits.

Gate noise: after each gate's unitary, the qubits it touched are replaced by
the maximally mixed state with the depolarizing probability of its arity;
every CNOT is then followed by an extra ``exp(-i θ/2 Z⊗Z)``. Idle windows of
the ASAP schedule (including explicit DELAYs) get phase damping
``exp(-t/T2)`` and a static Z detuning. Readout confusion acts on the final
diagonal.
"""

from __future__ import annotations

import json
import math
import string
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .circuit import DEFAULT_QUBIT_CAP, Circuit, Gate, Observable, QubitCapError, gate_matrix

__all__ = [
    "NoiseModel",
    "CountsMap",
    "Interval",
    "Schedule",
    "schedule",
    "exact_distribution",
    "simulate_counts",
    "exact_expectation",
    "expectation_from_counts",
    "bitstrings",
]


@dataclass(frozen=True)
class NoiseModel:
    """Noise rates. Defaults are tuned for desk-scale experiments, not taken
    from any device.

    ``idle_dephase_t2`` is in microseconds and ``idle_detuning_mhz`` is a
    static frequency offset felt only while a qubit idles.
    """

    depol_1q: float = 0.001
    depol_2q: float = 0.01
    coherent_zz: float = 0.05
    idle_dephase_t2: float = 30.0
    idle_detuning_mhz: float = 0.12
    readout_p10: float = 0.02
    readout_p01: float = 0.03

    def __post_init__(self):
        for name in ("depol_1q", "depol_2q", "readout_p10", "readout_p01"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be a probability, got {v}")
        if not self.idle_dephase_t2 > 0:
            raise ValueError("idle_dephase_t2 must be positive")
        if not (math.isfinite(self.coherent_zz) and math.isfinite(self.idle_detuning_mhz)):
            raise ValueError("coherent terms must be finite")

    @classmethod
    def noiseless(cls) -> "NoiseModel":
        return cls(0.0, 0.0, 0.0, math.inf, 0.0, 0.0, 0.0)

    def replace(self, **changes) -> "NoiseModel":
        return NoiseModel(**{**asdict(self), **changes})

    def to_dict(self) -> dict:
        d = asdict(self)
        if math.isinf(d["idle_dephase_t2"]):
            d["idle_dephase_t2"] = None
        return d

    @classmethod
    def from_dict(cls, data: Mapping) -> "NoiseModel":
        data = dict(data)
        if data.get("idle_dephase_t2", 1.0) is None:
            data["idle_dephase_t2"] = math.inf
        return cls(**data)


class CountsMap(dict):
    """Bitstring -> count. Values may be real for quasi-distributions."""

    @property
    def shots(self) -> float:
        return sum(self.values())

    @property
    def n_qubits(self) -> int:
        return len(next(iter(self)))

    def to_json(self) -> str:
        return json.dumps(dict(sorted(self.items())))

    @classmethod
    def from_json(cls, text: str) -> "CountsMap":
        return cls(json.loads(text))

    @classmethod
    def from_vector(cls, values: np.ndarray, n_qubits: int, keep_zero: bool = False) -> "CountsMap":
        keys = bitstrings(n_qubits)
        return cls((k, v.item()) for k, v in zip(keys, values) if keep_zero or v != 0)

    def to_vector(self) -> np.ndarray:
        n = self.n_qubits
        out = np.zeros(2**n)
        for k, v in self.items():
            out[int(k, 2)] = v
        return out


def bitstrings(n_qubits: int) -> list[str]:
    return [format(i, f"0{n_qubits}b") for i in range(2**n_qubits)]


@dataclass(frozen=True)
class Interval:
    start: float
    end: float
    gate_index: int


@dataclass(frozen=True)
class Schedule:
    """ASAP timeline. ``busy[q]`` holds the non-idle gate intervals on qubit
    ``q``; ``gaps[q]`` holds merged idle windows (explicit DELAYs included)."""

    n_qubits: int
    starts: tuple[float, ...]
    busy: tuple[tuple[Interval, ...], ...]
    gaps: tuple[tuple[tuple[float, float], ...], ...]
    length: float

    @property
    def length_seconds(self) -> float:
        return self.length * 1e-9


_EPS = 1e-9


def _merge(windows: list[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    out: list[list[float]] = []
    for a, b in sorted(windows):
        if b - a <= _EPS:
            continue
        if out and a - out[-1][1] <= _EPS:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


def schedule(circuit: Circuit) -> Schedule:
    """As-soon-as-possible schedule; all MEASURE gates form one final layer."""
    n = circuit.n_qubits
    free = [0.0] * n
    starts = [0.0] * len(circuit.gates)
    busy: list[list[Interval]] = [[] for _ in range(n)]
    idle: list[list[tuple[float, float]]] = [[] for _ in range(n)]
    measures = []
    for i, g in enumerate(circuit.gates):
        if g.kind == "MEASURE":
            measures.append(i)
            continue
        start = max(free[q] for q in g.qubits)
        end = start + g.duration
        starts[i] = start
        for q in g.qubits:
            if start > free[q]:
                idle[q].append((free[q], start))
            if g.kind == "DELAY":
                idle[q].append((start, end))
            else:
                busy[q].append(Interval(start, end, i))
            free[q] = end
    length = max(free)
    if measures:
        t_meas = length
        for i in measures:
            g = circuit.gates[i]
            starts[i] = t_meas
            for q in g.qubits:
                if t_meas > free[q]:
                    idle[q].append((free[q], t_meas))
                busy[q].append(Interval(t_meas, t_meas + g.duration, i))
                free[q] = t_meas + g.duration
        length = t_meas + max(circuit.gates[i].duration for i in measures)
    return Schedule(
        n_qubits=n,
        starts=tuple(starts),
        busy=tuple(tuple(b) for b in busy),
        gaps=tuple(_merge(w) for w in idle),
        length=length,
    )


@lru_cache(maxsize=None)
def _subscripts(n: int, qubits: tuple[int, ...]) -> str:
    letters = string.ascii_letters
    k = len(qubits)
    t_in = list(letters[: 2 * n])
    fresh = letters[2 * n : 2 * n + 2 * k]
    t_out = list(t_in)
    for j, q in enumerate(qubits):
        t_out[q] = fresh[j]
        t_out[n + q] = fresh[k + j]
    s_in = [t_in[q] for q in qubits] + [t_in[n + q] for q in qubits]
    return f"{fresh}{''.join(s_in)},{''.join(t_in)}->{''.join(t_out)}"


def _superop(u: np.ndarray, p: float, zz: float = 0.0) -> np.ndarray:
    """rho -> ZZ . depolarize_p(U rho U^dag) as a (2,)*4k tensor."""
    d = u.shape[0]
    k = d.bit_length() - 1
    # channel on the operator basis |i><j|, i.e. columns of the superoperator
    basis = np.eye(d * d, dtype=complex).reshape(d * d, d, d)
    out = np.einsum("ab,ibc,dc->iad", u, basis, u.conj())
    if p:
        traces = np.trace(out, axis1=1, axis2=2)
        out = (1 - p) * out + p * traces[:, None, None] * (np.eye(d) / d)
    if zz:
        ph = np.exp(-1j * zz / 2 * np.array([1, -1, -1, 1]))
        out = out * ph[None, :, None] * ph.conj()[None, None, :]
    # index order (out ket, out bra, in ket, in bra)
    return out.transpose(1, 2, 0).reshape((2,) * 4 * k)


@lru_cache(maxsize=4096)
def _gate_superop(kind: str, angle, p: float, zz: float) -> np.ndarray:
    op = _superop(gate_matrix(Gate(kind, (0, 1) if kind == "CNOT" else (0,), angle, 1.0)), p, zz)
    op.flags.writeable = False
    return op


class _Density:
    """Density matrix stored as a (2,)*2n tensor; ket axes first."""

    def __init__(self, n: int):
        self.n = n
        self.t = np.zeros((2,) * 2 * n, dtype=complex)
        self.t[(0,) * 2 * n] = 1.0

    def channel(self, superop: np.ndarray, qubits: Sequence[int]) -> None:
        """Apply a local superoperator shaped (2,)*4k: out kets, out bras, in kets, in bras."""
        self.t = np.einsum(_subscripts(self.n, tuple(qubits)), superop, self.t)

    def unitary(self, u: np.ndarray, qubits: Sequence[int]) -> None:
        self.channel(_superop(u, 0.0), qubits)

    def depolarize(self, qubits: Sequence[int], p: float) -> None:
        if p == 0.0:
            return
        self.channel(_superop(np.eye(2 ** len(qubits)), p), qubits)

    def coherence_factor(self, q: int, factor: complex) -> None:
        """Multiply the |0><1| coherence of qubit q by ``factor``."""
        if factor == 1.0:
            return
        shape = [1] * 2 * self.n
        shape[q] = shape[self.n + q] = 2
        mask = np.array([[1.0, factor], [np.conj(factor), 1.0]]).reshape(shape)
        self.t = self.t * mask

    def matrix(self) -> np.ndarray:
        d = 2**self.n
        return self.t.reshape(d, d)

    def check(self, tol: float = 1e-9) -> None:
        rho = self.matrix()
        if abs(np.trace(rho) - 1) > tol:
            raise AssertionError(f"trace drifted to {np.trace(rho)}")
        herm = (rho + rho.conj().T) / 2
        if np.linalg.eigvalsh(herm).min() < -tol:
            raise AssertionError("density matrix lost positivity")


def _readout(probs: np.ndarray, n: int, p10: float, p01: float) -> np.ndarray:
    if p10 == 0 and p01 == 0:
        return probs
    conf = np.array([[1 - p10, p01], [p10, 1 - p01]])
    t = probs.reshape((2,) * n)
    for q in range(n):
        t = np.moveaxis(np.tensordot(conf, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def exact_distribution(
    circuit: Circuit,
    noise: NoiseModel,
    cap: int = DEFAULT_QUBIT_CAP,
    debug: bool = False,
) -> np.ndarray:
    """Outcome probabilities after readout confusion (flat, length 2**n).

    This is the infinite-shot limit of :func:`simulate_counts`.
    """
    n = circuit.n_qubits
    if n > cap:
        raise QubitCapError(f"{n} qubits exceeds the cap of {cap}")
    sched = schedule(circuit)
    events: list[tuple[float, int, int, object]] = []
    for i, g in enumerate(circuit.gates):
        if g.kind not in ("DELAY", "MEASURE"):
            events.append((sched.starts[i], 0, i, g))
    for q, windows in enumerate(sched.gaps):
        for a, b in windows:
            events.append((a, 1, q, (q, b - a)))
    events.sort(key=lambda e: (e[0], e[1], e[2]))

    rho = _Density(n)
    detune = 2 * math.pi * noise.idle_detuning_mhz * 1e-3  # rad per ns
    for _, kind, _, payload in events:
        if kind == 0:
            g: Gate = payload
            if g.kind == "CNOT":
                op = _gate_superop(g.kind, g.angle, noise.depol_2q, noise.coherent_zz)
            else:
                op = _gate_superop(g.kind, g.angle, noise.depol_1q, 0.0)
            rho.channel(op, g.qubits)
        else:
            q, dt = payload
            decay = math.exp(-dt * 1e-3 / noise.idle_dephase_t2)
            rho.coherence_factor(q, decay * np.exp(-1j * detune * dt))
        if debug:
            rho.check()
    probs = np.clip(np.real(np.diagonal(rho.matrix())), 0.0, None)
    probs = _readout(probs, n, noise.readout_p10, noise.readout_p01)
    return probs / probs.sum()


def simulate_counts(
    circuit: Circuit,
    noise: NoiseModel,
    shots: int,
    seed: int | np.random.SeedSequence | np.random.Generator,
    cap: int = DEFAULT_QUBIT_CAP,
) -> CountsMap:
    """Sample ``shots`` measurement outcomes. Deterministic in ``seed``."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    probs = exact_distribution(circuit, noise, cap)
    return sample_counts(probs, circuit.n_qubits, shots, seed)


def sample_counts(
    probs: np.ndarray, n_qubits: int, shots: int, seed
) -> CountsMap:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs / probs.sum())
    return CountsMap.from_vector(draws, n_qubits)


def exact_expectation(
    circuit: Circuit, noise: NoiseModel, obs: Observable, cap: int = DEFAULT_QUBIT_CAP
) -> float:
    probs = exact_distribution(circuit, noise, cap)
    return float(np.dot(probs, obs.diagonal(circuit.n_qubits)))


def expectation_from_counts(counts: Mapping[str, float], obs: Observable) -> float:
    """Frequency-weighted observable eigenvalue. Accepts quasi-counts."""
    total = sum(counts.values())
    if not counts or total == 0:
        raise ValueError("counts are empty")
    return float(sum(v * obs.eigenvalue(b) for b, v in counts.items()) / total)

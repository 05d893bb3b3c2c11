"""Pipeline composition, experiment orchestration, persistence and scoring."""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .circuit import Circuit, build_qaoa_maxcut, ideal_expectation, maxcut_observable
from .config import ConfigError, ExperimentConfig, derive_seed
from .extrapolation import ORDERS, ScaledSamples, ZneEstimate, bootstrap_zero_noise
from .resource import QualityScore, UsageLedger, entropy, quality, resource, weighted_shots
from .simulator import CountsMap, NoiseModel, exact_distribution, expectation_from_counts
from .stats import (
    DegenerateBaselineError,
    ExpectationTriple,
    RemPopulation,
    TestReport,
    ZeroVarianceError,
    median_rem_upper,
    one_sample_prop_test,
    psr,
    sample_rem_population,
    two_sample_prop_test,
)
from .transforms import (
    CalibrationMatrix,
    EstimationFloorError,
    derive_estimation_circuit,
    estimation_correct,
    fold,
    insert_dd,
    mem_apply,
    mem_calibrate,
    randomize_compile,
)

__all__ = [
    "PIPELINE_NAMES",
    "PipelineSpec",
    "Backend",
    "ParamResult",
    "RunRecord",
    "Evaluation",
    "DegenerateStatisticsError",
    "parse_pipelines",
    "run_pipeline",
    "evaluate_pipeline",
    "compare_pipelines",
    "save_record",
    "load_record",
    "load_run",
]

log = logging.getLogger(__name__)

RECORD_SCHEMA = 1
PIPELINE_NAMES = tuple(f"P{i}" for i in range(1, 9)) + tuple(f"P{i}E" for i in range(1, 9))


class DegenerateStatisticsError(ValueError):
    """A pipeline cannot be scored (no usable parameters, zero REM, ...)."""


@dataclass(frozen=True)
class PipelineSpec:
    use_mem: bool = False
    use_dd: bool = False
    use_rc: bool = False
    use_estimation: bool = False
    folding: str = "local"
    fit: str = "linear"

    def __post_init__(self):
        if self.folding not in ("local", "global"):
            raise ValueError(f"unknown folding {self.folding!r}")
        if self.fit not in ORDERS:
            raise ValueError(f"unknown fit {self.fit!r}")

    @property
    def name(self) -> str:
        idx = 1 + self.use_mem + 2 * self.use_dd + 4 * self.use_rc
        return f"P{idx}" + ("E" if self.use_estimation else "")

    @classmethod
    def from_name(cls, name: str, folding: str = "local", fit: str = "linear") -> "PipelineSpec":
        m = re.fullmatch(r"P([1-8])(\^?E)?", name.strip())
        if not m:
            raise ValueError(f"unknown pipeline {name!r}")
        k = int(m.group(1)) - 1
        return cls(
            use_mem=bool(k & 1),
            use_dd=bool(k & 2),
            use_rc=bool(k & 4),
            use_estimation=m.group(2) is not None,
            folding=folding,
            fit=fit,
        )

    def without_dd(self) -> "PipelineSpec":
        return PipelineSpec(self.use_mem, False, self.use_rc, self.use_estimation, self.folding, self.fit)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def parse_pipelines(text: str) -> list[str]:
    """Expand ``P1..P8,P1E..P8E`` style lists; ``all`` means all 16."""
    if text.strip().lower() == "all":
        return list(PIPELINE_NAMES)
    out: list[str] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"P([1-8])(E?)\.\.P([1-8])(E?)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(3))
            if m.group(2) != m.group(4) or lo > hi:
                raise ValueError(f"bad pipeline range {part!r}")
            out += [f"P{i}{m.group(2)}" for i in range(lo, hi + 1)]
        else:
            out.append(PipelineSpec.from_name(part).name)
    return out


class Backend:
    """Noisy simulator with a cache of infinite-shot distributions."""

    def __init__(self, noise: NoiseModel):
        self.noise = noise
        self._cache: dict[str, np.ndarray] = {}

    def distribution(self, circuit: Circuit) -> np.ndarray:
        key = circuit.label
        probs = self._cache.get(key)
        if probs is None:
            probs = exact_distribution(circuit, self.noise)
            self._cache[key] = probs
        return probs


@dataclass
class ParamResult:
    gamma: float
    beta: float
    ideal: float
    samples: tuple[tuple[float, ...], ...]
    zne: dict[str, ZneEstimate] = field(default_factory=dict)
    excluded: str | None = None

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "beta": self.beta,
            "ideal": self.ideal,
            "samples": [list(s) for s in self.samples],
            "zne": {k: v.to_dict() for k, v in self.zne.items()},
            "excluded": self.excluded,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ParamResult":
        return cls(
            gamma=d["gamma"],
            beta=d["beta"],
            ideal=d["ideal"],
            samples=tuple(tuple(s) for s in d["samples"]),
            zne={k: ZneEstimate(**v) for k, v in d["zne"].items()},
            excluded=d["excluded"],
        )


@dataclass
class RunRecord:
    """Everything one pipeline run produced.

    ``ledger`` is the usage ledger of the first parameter pair; every pair
    runs structurally identical circuits, so T and S do not depend on which
    pair is used.
    """

    pipeline: str
    spec: PipelineSpec
    params: list[ParamResult]
    param_ledgers: list[UsageLedger]
    config: dict
    config_hash: str
    seed: int
    started_at: str = ""
    finished_at: str = ""
    schema_version: int = RECORD_SCHEMA
    package_version: str = __version__

    @property
    def ledger(self) -> UsageLedger:
        return self.param_ledgers[0]

    @property
    def experiment_config(self) -> ExperimentConfig:
        return ExperimentConfig.from_dict(self.config)

    def zne_estimates(self, fit: str) -> list[ZneEstimate | None]:
        return [p.zne.get(fit) for p in self.params]

    def to_dict(self, timestamps: bool = True) -> dict:
        d = {
            "schema_version": self.schema_version,
            "package_version": self.package_version,
            "pipeline": self.pipeline,
            "spec": self.spec.to_dict(),
            "config": self.config,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "params": [p.to_dict() for p in self.params],
            "param_ledgers": [lg.to_list() for lg in self.param_ledgers],
        }
        if timestamps:
            d["started_at"] = self.started_at
            d["finished_at"] = self.finished_at
        return d

    def fingerprint(self) -> str:
        """Digest of the record content, timestamps excluded."""
        canon = json.dumps(self.to_dict(timestamps=False), sort_keys=True)
        return hashlib.sha256(canon.encode()).hexdigest()

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        if d.get("schema_version") != RECORD_SCHEMA:
            raise ConfigError(f"unsupported record schema {d.get('schema_version')}")
        cfg = ExperimentConfig.from_dict(d["config"])
        if cfg.hash != d["config_hash"]:
            raise ConfigError("record config hash does not match its config")
        return cls(
            pipeline=d["pipeline"],
            spec=PipelineSpec(**d["spec"]),
            params=[ParamResult.from_dict(p) for p in d["params"]],
            param_ledgers=[UsageLedger.from_list(rows) for rows in d["param_ledgers"]],
            config=d["config"],
            config_hash=d["config_hash"],
            seed=d["seed"],
            started_at=d.get("started_at", ""),
            finished_at=d.get("finished_at", ""),
            schema_version=d["schema_version"],
            package_version=d.get("package_version", ""),
        )


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


@dataclass
class _Executable:
    """The circuits run for one scale: main duplicates and estimation duplicates."""

    main: list[Circuit]
    estimation: list[Circuit]


def _prepare(spec: PipelineSpec, config: ExperimentConfig, base: Circuit, i: int, scale: int) -> _Executable:
    seed_root = (config.master_seed, spec.name, spec.folding, i, scale)
    folded = fold(base, scale, spec.folding)
    main = [folded]
    est = [derive_estimation_circuit(folded)] if spec.use_estimation else []
    if spec.use_rc:
        main = randomize_compile(folded, config.rc_duplicates, derive_seed(*seed_root, "rc"), config.durations)
        if est:
            est = randomize_compile(est[0], config.rc_duplicates, derive_seed(*seed_root, "rc-est"), config.durations)
    if spec.use_dd:
        main = [insert_dd(c, config.durations) for c in main]
        est = [insert_dd(c, config.durations) for c in est]
    return _Executable(main, est)


def _aggregate(
    backend: Backend, circuits: Sequence[Circuit], shots_each: int, rng, exact: bool
) -> CountsMap:
    n = circuits[0].n_qubits
    total = np.zeros(2**n)
    for c in circuits:
        probs = backend.distribution(c)
        if exact:
            total += probs * shots_each
        else:
            total += rng.multinomial(shots_each, probs)
    return CountsMap.from_vector(total, n, keep_zero=exact)


def run_pipeline(
    spec: PipelineSpec, config: ExperimentConfig, backend: Backend | None = None
) -> RunRecord:
    """Execute a pipeline over every parameter pair, scale and repeat."""
    backend = backend or Backend(config.noise)
    if backend.noise != config.noise:
        raise ConfigError("backend noise model differs from the config")
    started = _now()
    obs = maxcut_observable(4)
    shots_each = config.rc_shots_per_duplicate if spec.use_rc else config.shots
    n_dup = config.rc_duplicates if spec.use_rc else 1

    calib: CalibrationMatrix | None = None
    if spec.use_mem:
        calib = mem_calibrate(
            4,
            config.noise,
            config.calibration_shots,
            derive_seed(config.master_seed, spec.name, spec.folding, "mem"),
            config.durations,
            exact=config.exact,
        )

    params: list[ParamResult] = []
    ledgers: list[UsageLedger] = []
    for i, pair in enumerate(config.param_pairs):
        base = build_qaoa_maxcut(pair, config.durations)
        ideal = ideal_expectation(base, obs)
        ledger = UsageLedger()
        if calib is not None:
            for c in calib.circuits:
                ledger.add_circuit(c, config.calibration_shots)
        per_scale: list[list[float]] = []
        excluded = None
        for scale in config.scales:
            ex = _prepare(spec, config, base, i, scale)
            for c in ex.main + ex.estimation:
                ledger.add_circuit(c, config.repeats * shots_each)
            values = []
            for r in range(config.repeats):
                rng = np.random.default_rng(derive_seed(config.master_seed, spec.name, spec.folding, i, scale, r))
                counts = _aggregate(backend, ex.main, shots_each, rng, config.exact)
                if calib is not None:
                    counts = mem_apply(calib, counts)
                value = expectation_from_counts(counts, obs)
                if spec.use_estimation:
                    est_counts = _aggregate(backend, ex.estimation, shots_each, rng, config.exact)
                    if calib is not None:
                        est_counts = mem_apply(calib, est_counts)
                    try:
                        value = estimation_correct(value, est_counts, config.estimation_floor)
                    except EstimationFloorError as exc:
                        excluded = excluded or f"scale {scale}: {exc}"
                values.append(value)
            per_scale.append(values)

        zne: dict[str, ZneEstimate] = {}
        if excluded:
            log.warning("%s: parameter %d excluded (%s)", spec.name, i, excluded)
        else:
            samples = ScaledSamples(tuple(config.scales), tuple(tuple(v) for v in per_scale))
            for fit in ORDERS:
                seed = derive_seed(config.master_seed, spec.name, spec.folding, i, "bootstrap", fit)
                zne[fit] = bootstrap_zero_noise(samples, fit, config.n_boot, seed)
        params.append(
            ParamResult(pair.gamma, pair.beta, ideal, tuple(tuple(v) for v in per_scale), zne, excluded)
        )
        ledgers.append(ledger)

    return RunRecord(
        pipeline=spec.name,
        spec=spec,
        params=params,
        param_ledgers=ledgers,
        config=config.to_dict(),
        config_hash=config.hash,
        seed=config.master_seed,
        started_at=started,
        finished_at=_now(),
    )


@dataclass
class Evaluation:
    pipeline: str
    folding: str
    fit: str
    quality: QualityScore
    population: RemPopulation
    test: TestReport
    excluded: list[int]

    def to_dict(self) -> dict:
        return {
            "pipeline": self.pipeline,
            "folding": self.folding,
            "fit": self.fit,
            "quality": self.quality.to_dict(),
            "successes": self.population.successes,
            "failures": self.population.failures,
            "test": self.test.to_dict(),
            "excluded_params": self.excluded,
        }


def _triples(record: RunRecord, fit: str, ideal_values: Sequence[float] | None) -> tuple[list[ExpectationTriple], list[int]]:
    triples, excluded = [], []
    for i, p in enumerate(record.params):
        est = p.zne.get(fit)
        if p.excluded or est is None:
            excluded.append(i)
            continue
        ideal = p.ideal if ideal_values is None else ideal_values[i]
        triples.append(
            ExpectationTriple(ideal, (est.mu_lambda0, est.sigma_lambda0), (est.mu_lambda1, est.sigma_lambda1))
        )
    return triples, excluded


def rem_population(
    record: RunRecord, fit: str | None = None, ideal_values: Sequence[float] | None = None,
    config: ExperimentConfig | None = None,
) -> tuple[RemPopulation, list[int]]:
    """Algorithm-1 population for one record and fit."""
    config = config or record.experiment_config
    fit = fit or record.spec.fit
    triples, excluded = _triples(record, fit, ideal_values)
    if not triples:
        raise DegenerateStatisticsError(f"{record.pipeline}: every parameter pair was excluded")
    seed = derive_seed(config.master_seed, record.pipeline, record.spec.folding, fit, "algorithm1")
    try:
        pop = sample_rem_population(triples, config.algorithm1_per_param, seed)
    except DegenerateBaselineError as exc:
        raise DegenerateStatisticsError(str(exc)) from exc
    return pop, excluded


def evaluate_pipeline(
    record: RunRecord,
    ideal_values: Sequence[float] | None = None,
    config: ExperimentConfig | None = None,
    fit: str | None = None,
) -> Evaluation:
    """One-sample test, PSR, median-REM bound and the resource metrics."""
    config = config or record.experiment_config
    fit = fit or record.spec.fit
    pop, excluded = rem_population(record, fit, ideal_values, config)
    test = one_sample_prop_test(pop.successes, pop.n, 0.5)
    rate = psr(pop.successes, pop.n)
    eps = median_rem_upper(
        pop.rem_values,
        config.median_n_boot,
        derive_seed(config.master_seed, record.pipeline, record.spec.folding, fit, "median"),
    )
    t, s = weighted_shots(record.ledger), entropy(record.ledger)
    r = resource(record.ledger)
    if eps <= 0:
        raise DegenerateStatisticsError(f"{record.pipeline}: median REM bound is zero")
    score = QualityScore(T=t, S=s, R=r, psr=rate, epsilon=eps, M=quality(rate, eps, r), significant=test.reject)
    return Evaluation(record.pipeline, record.spec.folding, fit, score, pop, test, excluded)


def compare_pipelines(
    rec_a: RunRecord,
    rec_b: RunRecord,
    ideal_values: Sequence[float] | None = None,
    config: ExperimentConfig | None = None,
    fit: str | None = None,
    fit_b: str | None = None,
) -> TestReport:
    """Two-sample test; a positive interval means A succeeds more often."""
    cfg_a = config or rec_a.experiment_config
    cfg_b = config or rec_b.experiment_config
    if cfg_a.param_pairs != cfg_b.param_pairs or cfg_a.algorithm1_per_param != cfg_b.algorithm1_per_param:
        raise ConfigError("records were produced with different parameter pairs or sample sizes")
    pop_a, _ = rem_population(rec_a, fit, ideal_values, cfg_a)
    pop_b, _ = rem_population(rec_b, fit_b or fit, ideal_values, cfg_b)
    try:
        return two_sample_prop_test(pop_a.successes, pop_a.n, pop_b.successes, pop_b.n)
    except ZeroVarianceError as exc:
        raise DegenerateStatisticsError(str(exc)) from exc


def record_filename(record: RunRecord) -> str:
    return f"{record.pipeline}-{record.spec.folding}.json"


def save_record(record: RunRecord, run_dir: str | Path) -> Path:
    """Write a record into an append-only run directory."""
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    path = run_dir / record_filename(record)
    with open(path, "x") as fh:
        json.dump(record.to_dict(), fh, indent=1, sort_keys=True)
    return path


def load_record(path: str | Path) -> RunRecord:
    return RunRecord.from_dict(json.loads(Path(path).read_text()))


def load_run(run_dir: str | Path) -> list[RunRecord]:
    """All records in a run directory, in canonical pipeline order."""
    paths = sorted(Path(run_dir).glob("P*.json"))
    records = [load_record(p) for p in paths]
    order = {name: k for k, name in enumerate(PIPELINE_NAMES)}
    return sorted(records, key=lambda r: (r.spec.folding, order[r.pipeline]))


def run_experiment(
    names: Iterable[str], config: ExperimentConfig, folding: str = "local", out_dir: str | Path | None = None
) -> list[RunRecord]:
    """Run several pipelines sharing one simulator cache."""
    backend = Backend(config.noise)
    records = []
    for name in names:
        rec = run_pipeline(PipelineSpec.from_name(name, folding), config, backend)
        if out_dir is not None:
            save_record(rec, out_dir)
        records.append(rec)
    return records

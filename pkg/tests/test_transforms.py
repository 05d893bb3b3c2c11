import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qemlab.circuit import Circuit, Gate, QaoaParams, build_qaoa_maxcut, gate_matrix, ideal_expectation, maxcut_observable
from qemlab.simulator import CountsMap, NoiseModel, exact_distribution, schedule
from qemlab.transforms import (
    RC_TABLE,
    CalibrationMatrix,
    EstimationFloorError,
    IllConditionedError,
    derive_estimation_circuit,
    dress_cnot,
    estimation_correct,
    fold,
    fold_global,
    insert_dd,
    mem_apply,
    mem_calibrate,
    one_minus_p,
    randomize_compile,
)

OBS = maxcut_observable(4)
angles = st.floats(0.0, 3.1)


def _unitary(gates, n=2):
    u = np.eye(2**n, dtype=complex)
    for g in gates:
        full = np.eye(1)
        if g.kind == "CNOT":
            full = gate_matrix(g)  # control 0, target 1
        else:
            m = gate_matrix(g)
            full = np.kron(m, np.eye(2)) if g.qubits == (0,) else np.kron(np.eye(2), m)
        u = full @ u
    return u


def _equal_up_to_phase(a, b):
    k = np.argmax(np.abs(b))
    phase = a.flat[k] / b.flat[k]
    return np.max(np.abs(a - phase * b))


@pytest.mark.parametrize("row", RC_TABLE, ids=lambda r: f"{r.p}{r.q}{r.r}{r.s}")
def test_rc_row_is_cnot(row):
    cnot = Gate.make("CNOT", 0, 1)
    assert _equal_up_to_phase(_unitary(dress_cnot(cnot, row)), gate_matrix(cnot)) < 1e-10


def test_rc_table_has_sixteen_distinct_rows():
    assert len(set(RC_TABLE)) == 16
    assert {r.p for r in RC_TABLE} == {"I", "X", "Y", "Z"}


@given(angles, angles, st.sampled_from([1, 3, 5]), st.sampled_from(["local", "global"]))
@settings(max_examples=20, deadline=None)
def test_folding_preserves_ideal(g, b, scale, kind):
    c = build_qaoa_maxcut(QaoaParams(g, b))
    assert abs(ideal_expectation(fold(c, scale, kind), OBS) - ideal_expectation(c, OBS)) < 1e-12


def test_fold_gate_counts():
    c = build_qaoa_maxcut(QaoaParams(0.2, 0.3))
    assert fold(c, 5, "local").count("CNOT") == 60
    g = fold_global(c, 3)
    assert g.count("CNOT") == 36
    assert g.count("MEASURE") == 4
    with pytest.raises(ValueError):
        fold(c, 2)


def test_rc_duplicates_keep_logic_and_duration():
    c = build_qaoa_maxcut(QaoaParams(0.9, 0.4))
    dups = randomize_compile(c, 8, seed=3)
    lengths = {schedule(d).length for d in dups}
    assert len(lengths) == 1
    assert len({d.label for d in dups}) == 8
    for d in dups:
        assert abs(ideal_expectation(d, OBS) - ideal_expectation(c, OBS)) < 1e-12


def test_rc_seeded():
    c = build_qaoa_maxcut(QaoaParams(0.9, 0.4))
    a = [d.label for d in randomize_compile(c, 5, seed=11)]
    b = [d.label for d in randomize_compile(c, 5, seed=11)]
    assert a == b


@given(angles, angles, st.sampled_from([1, 3, 5]))
@settings(max_examples=20, deadline=None)
def test_dd_preserves_ideal_and_timing(g, b, scale):
    c = fold(build_qaoa_maxcut(QaoaParams(g, b)), scale)
    d = insert_dd(c)
    assert abs(ideal_expectation(d, OBS) - ideal_expectation(c, OBS)) < 1e-12
    assert schedule(d).length == pytest.approx(schedule(c).length)


def test_dd_fills_long_gaps_only():
    short = Circuit(2, (Gate.make("H", 0), Gate.make("CNOT", 0, 1), Gate.make("MEASURE", 0), Gate.make("MEASURE", 1)))
    assert insert_dd(short).count("X") == 0  # 35 ns gap < 2 x 35 ns
    long = Circuit(2, (Gate.make("CNOT", 0, 1), Gate.make("CNOT", 0, 1), Gate.delay(1, 400.0),
                       Gate.make("MEASURE", 0), Gate.make("MEASURE", 1)))
    d = insert_dd(long)
    # qubit 1 sits in its DELAY; qubit 0 waits for the aligned measure layer
    xs = [g.qubits[0] for g in d.gates if g.kind == "X"]
    assert sorted(xs) == [0, 0, 1, 1]


def test_dd_refocuses_detuning():
    noise = NoiseModel.noiseless().replace(idle_detuning_mhz=0.3)
    ramsey = Circuit(1, (Gate.make("H", 0), Gate.delay(0, 2000.0), Gate.make("H", 0), Gate.make("MEASURE", 0)))
    assert exact_distribution(ramsey, noise)[0] < 0.9
    assert exact_distribution(insert_dd(ramsey), noise)[0] == pytest.approx(1.0, abs=1e-12)


def test_mem_exact_recovery():
    noise = NoiseModel.noiseless().replace(readout_p10=0.02, readout_p01=0.03)
    c = build_qaoa_maxcut(QaoaParams(0.6, 0.35))
    calib = mem_calibrate(4, noise, exact=True)
    noisy = CountsMap.from_vector(exact_distribution(c, noise), 4, keep_zero=True)
    fixed = mem_apply(calib, noisy).to_vector()
    ideal = exact_distribution(c, NoiseModel.noiseless())
    assert np.abs(fixed - ideal).sum() < 1e-8


def test_mem_sampled_calibration_columns():
    calib = mem_calibrate(2, NoiseModel(), shots=500, seed=1)
    np.testing.assert_allclose(calib.matrix.sum(axis=0), 1.0)
    assert len(calib.circuits) == 4


def test_mem_ill_conditioned():
    m = np.full((4, 4), 0.25)
    with pytest.raises(IllConditionedError):
        mem_apply(CalibrationMatrix(m, 2), {"00": 10})
    with pytest.raises(ValueError):
        CalibrationMatrix(np.eye(4) * 2, 2)


def test_mem_keeps_quasi_counts():
    m = np.array([[0.9, 0.2], [0.1, 0.8]])
    out = mem_apply(CalibrationMatrix(m, 1), {"0": 100})
    assert out["1"] < 0
    assert out.shots == pytest.approx(100)


def test_estimation_circuit_skeleton():
    c = fold(build_qaoa_maxcut(QaoaParams(0.2, 0.3)), 3)
    e = derive_estimation_circuit(c)
    assert {g.kind for g in e.gates} == {"CNOT", "MEASURE"}
    assert e.count("CNOT") == 36
    # noiselessly the CNOT skeleton acting on |0000> returns |0000>
    assert exact_distribution(e, NoiseModel.noiseless())[0] == pytest.approx(1.0)


def test_estimation_correction_and_floor():
    assert one_minus_p({"00": 80, "01": 20}) == 0.8
    assert estimation_correct(0.4, {"00": 80, "01": 20}) == pytest.approx(0.5)
    with pytest.raises(EstimationFloorError) as info:
        estimation_correct(0.4, {"00": 4, "11": 96})
    assert info.value.value == pytest.approx(0.04)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qemlab.circuit import (
    Circuit,
    DurationTable,
    Gate,
    Observable,
    QaoaParams,
    QubitCapError,
    build_qaoa_maxcut,
    gate_matrix,
    ideal_expectation,
    maxcut_observable,
    statevector,
)
from qemlab.config import builtin_profile

angles = st.floats(min_value=0.0, max_value=math.pi, allow_nan=False)


def test_duration_table_defaults():
    d = DurationTable()
    assert d.lookup("X") == 35.0
    assert d.lookup("RZ") == 35.0
    assert d.lookup("CNOT") == 300.0
    assert d.lookup("MEASURE") == 700.0
    assert DurationTable.from_dict(d.to_dict()) == d


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate.make("CNOT", 1, 1)
    with pytest.raises(ValueError):
        Gate.make("FOO", 0)
    with pytest.raises(ValueError):
        Gate.make("RZ", 0)  # rotation needs an angle


def test_no_gate_after_measure():
    m = Gate.make("MEASURE", 0)
    with pytest.raises(ValueError):
        Circuit(1, (m, Gate.make("X", 0)))


def test_qubit_out_of_range():
    with pytest.raises(ValueError):
        Circuit(2, (Gate.make("X", 2),))


def test_cap_enforced():
    c = Circuit(9, tuple(Gate.make("H", q) for q in range(9)))
    with pytest.raises(QubitCapError):
        statevector(c)


def test_maxcut_observable_k4():
    obs = maxcut_observable(4)
    assert len(obs.terms) == 6
    # all-equal assignment cuts nothing: every ZZ = +1, so <O> = -6
    assert obs.eigenvalue("0000") == -6
    # a balanced bipartition cuts 4 of 6 edges
    assert obs.eigenvalue("0011") == 2


def test_qaoa_structure():
    c = build_qaoa_maxcut(QaoaParams(0.3, 0.7))
    assert c.n_qubits == 4
    assert c.count("CNOT") == 12
    assert c.count("RZ") == 6
    assert c.count("RX") == 4
    assert c.count("H") == 4
    assert c.count("MEASURE") == 4


def test_qaoa_zero_angles_give_zero():
    # H then nothing: uniform superposition, each ZZ averages to zero
    val = ideal_expectation(build_qaoa_maxcut(QaoaParams(0.0, 0.0)), maxcut_observable(4))
    assert abs(val) < 1e-12


def test_rz_convention():
    g = Gate.make("RZ", 0, angle=0.4)
    np.testing.assert_allclose(gate_matrix(g), np.diag([np.exp(-0.2j), np.exp(0.2j)]))


@given(angles, angles)
@settings(max_examples=30, deadline=None)
def test_text_roundtrip(g, b):
    c = build_qaoa_maxcut(QaoaParams(g, b))
    back = Circuit.from_text(c.to_text())
    assert back.label == c.label
    np.testing.assert_allclose(statevector(back), statevector(c), atol=1e-10)


@given(angles, angles)
@settings(max_examples=30, deadline=None)
def test_expectation_bounded(g, b):
    val = ideal_expectation(build_qaoa_maxcut(QaoaParams(g, b)), maxcut_observable(4))
    assert -6 - 1e-9 <= val <= 6 + 1e-9
    # p=1 on K4 cannot exceed about 1.395 (see decisions ledger)
    assert val <= 1.4


@given(st.floats(-3, 3, allow_nan=False))
@settings(max_examples=20, deadline=None)
def test_inverse_gate(theta):
    g = Gate.make("RX", 0, angle=theta)
    prod = gate_matrix(g.inverse()) @ gate_matrix(g)
    np.testing.assert_allclose(prod, np.eye(2), atol=1e-12)


def test_default_pairs_avoid_small_ideals():
    cfg = builtin_profile("desk")
    assert len(cfg.param_pairs) == 10
    obs = maxcut_observable(4)
    vals = [ideal_expectation(build_qaoa_maxcut(p, cfg.durations), obs) for p in cfg.param_pairs]
    assert all(abs(v) >= 0.2 for v in vals)
    assert len(set(cfg.param_pairs)) == 10


def test_observable_diagonal_matches_eigenvalues():
    obs = Observable(((0.5, frozenset({0, 1})), (-1.0, frozenset({2}))))
    diag = obs.diagonal(3)
    for k in range(8):
        assert diag[k] == obs.eigenvalue(format(k, "03b"))

"""Unit tests for exact protocol evaluation, MAP decoding, and closed forms."""

import json

import numpy as np
import pytest

from lpdiscrim.catalog import (
    Ensemble,
    bell_basis,
    eq1,
    eq4,
    eq9,
    mes,
    nmes,
    no_resource,
    subset,
    two_bells_and_third,
)
from lpdiscrim.engine import (
    bell_discrimination_formula,
    eq5_formula,
    evaluate,
    evaluate_multicopy,
    groisman_formula,
    lp_baseline_formula,
)
from lpdiscrim.protocols import (
    LocalMeasurement,
    Protocol,
    Schedule,
    build_alpha_prime_protocol,
    build_groisman_protocol,
    build_parity_then_bell,
)
from lpdiscrim.states import PureState

E2 = np.eye(2)


def _angle_basis(theta):
    c, s = np.cos(theta), np.sin(theta)
    return [np.array([c, s]), np.array([-s, c])]


def _product_protocol(theta_a, theta_b):
    ma = LocalMeasurement.from_basis("A", (0,), _angle_basis(theta_a))
    mb = LocalMeasurement.from_basis("B", (1,), _angle_basis(theta_b))
    return Protocol(no_resource(), Schedule(1, {"A": [ma], "B": [mb]}))


def _random_ensemble(rng, n_states=4, priors=None):
    m = rng.standard_normal((4, 4))
    q, r = np.linalg.qr(m)
    q = q * np.sign(np.diag(r))
    states = [PureState((2, 2), q[:, k], ("A", "B")) for k in range(n_states)]
    return Ensemble(states, priors=priors)


# ---------------------------------------------------------------------------
# frozen values

def test_eq1_computational_is_three_quarters():
    """Hand enumeration: transcripts (1,0) and (1,1) are 50/50 ties."""
    report = evaluate(eq1(), _product_protocol(0.0, 0.0))
    assert report.p_success == pytest.approx(0.75, abs=1e-12)
    np.testing.assert_allclose(report.per_state_success, [1.0, 1.0, 1.0, 0.0], atol=1e-12)
    assert not report.perfect


def test_groisman_nmes_hits_formula():
    resource = nmes(0.8, squared=True)
    ab = resource.a * resource.b
    report = evaluate(eq1(), build_groisman_protocol(resource))
    assert report.p_success == pytest.approx(0.95, abs=1e-9)
    assert report.p_success == pytest.approx(groisman_formula(ab), abs=1e-9)


def test_groisman_mes_is_perfect():
    report = evaluate(eq1(), build_groisman_protocol(mes()))
    assert report.perfect
    assert report.p_success == pytest.approx(1.0, abs=1e-9)


def test_parity_then_bell_formulas():
    resource = nmes(0.8, squared=True)
    ab = resource.a * resource.b
    three = subset(bell_basis(), (0, 1, 2))
    r3 = evaluate(three, build_parity_then_bell(resource))
    assert r3.p_success == pytest.approx(2.0 / 3.0 + 2.0 * ab / 3.0, abs=1e-9)
    r4 = evaluate(bell_basis(), build_parity_then_bell(resource))
    assert r4.p_success == pytest.approx(0.5 + ab, abs=1e-9)


def test_mixed_family_perfect_with_mes():
    ens = two_bells_and_third("mixed", np.sqrt(0.7), np.sqrt(0.3))
    report = evaluate(ens, build_parity_then_bell(mes()))
    assert report.perfect


def test_two_copy_computational_frozen():
    """z x z on both copies of eq9(0.8): success is exactly a^2."""
    ma = [LocalMeasurement.from_basis("A", (0,), list(E2))] * 2
    mb = [LocalMeasurement.from_basis("B", (1,), list(E2))] * 2
    proto = Protocol(no_resource(), Schedule(2, {"A": ma, "B": mb}))
    report = evaluate_multicopy(eq9(0.8), proto)
    assert report.p_success == pytest.approx(0.8, abs=1e-12)


# ---------------------------------------------------------------------------
# closed forms

def test_formula_values():
    assert lp_baseline_formula(np.pi / 2) == pytest.approx(np.cos(np.pi / 8) ** 2, abs=1e-12)
    assert groisman_formula(0.5) == pytest.approx(1.0, abs=1e-12)
    assert eq5_formula(np.pi / 2, np.pi / 2) == pytest.approx(1.0, abs=1e-12)
    assert bell_discrimination_formula(3, 0.4) == pytest.approx(0.9333333333333333, abs=1e-12)
    assert bell_discrimination_formula(4, 0.4) == pytest.approx(0.9, abs=1e-12)
    with pytest.raises(ValueError):
        bell_discrimination_formula(5, 0.4)


def test_eq5_crossover_identity():
    lhs = eq5_formula(np.pi / 3, np.pi / 2)
    assert lhs == pytest.approx(np.cos(np.pi / 12) ** 2, abs=1e-12)
    assert lhs == pytest.approx(lp_baseline_formula(np.pi / 3), abs=1e-12)


def test_eq5_lower_bounds_map_on_small_grid():
    for alpha in np.linspace(0.2, np.pi / 2, 5):
        for alphaprime in np.linspace(0.2, np.pi / 2, 5):
            got = evaluate(eq4(alpha), build_alpha_prime_protocol(alphaprime)).p_success
            assert got >= eq5_formula(alpha, alphaprime) - 1e-9


# ---------------------------------------------------------------------------
# report structure

def test_report_bookkeeping():
    report = evaluate(eq1(), _product_protocol(0.0, 0.0))
    assert report.stage_labels == ("c0:A", "c0:B")
    assert report.transcripts == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert report.decoding == (0, 1, 2, 2)  # MAP ties resolve to the lower index
    assert report.transcript_probability((1, 0), 2) == pytest.approx(0.5, abs=1e-12)
    assert report.transcript_probability((9, 9), 0) == 0.0
    assert report.recompute_success() == pytest.approx(report.p_success, abs=1e-12)


def test_report_serialization_prunes_zeros():
    report = evaluate(eq1(), _product_protocol(0.0, 0.0))
    doc = json.loads(report.to_json())
    assert doc["p_success"] == 0.75
    first = doc["transcripts"][0]
    assert first["transcript"] == [0, 0]
    assert first["probs"] == {"0": 1.0}  # zero rows pruned
    assert doc["perfect"] is False
    assert doc["stage_labels"] == ["c0:A", "c0:B"]


def test_report_serialization_rounds_to_15_digits():
    report = evaluate(eq1(), _product_protocol(0.3, 0.7))
    doc = report.to_dict()
    for entry in doc["transcripts"]:
        for v in entry["probs"].values():
            assert v == float(f"{v:.15g}")


# ---------------------------------------------------------------------------
# invariants

def test_row_stochasticity_random_inputs():
    rng = np.random.default_rng(21)
    for _ in range(25):
        ens = _random_ensemble(rng)
        proto = _product_protocol(rng.uniform(0, np.pi), rng.uniform(0, np.pi))
        report = evaluate(ens, proto)
        np.testing.assert_allclose(report.table.sum(axis=1), np.ones(4), atol=1e-9)


def test_map_dominates_best_prior():
    rng = np.random.default_rng(22)
    for _ in range(25):
        priors = rng.dirichlet(np.ones(4))
        ens = _random_ensemble(rng, priors=priors)
        proto = _product_protocol(rng.uniform(0, np.pi), rng.uniform(0, np.pi))
        report = evaluate(ens, proto)
        assert report.p_success >= priors.max() - 1e-12


def test_local_unitary_covariance():
    """Rotating states and measurements together leaves the table unchanged."""
    rng = np.random.default_rng(23)
    for _ in range(25):
        ens = _random_ensemble(rng)
        ta, tb = rng.uniform(0, np.pi, size=2)
        ra, rb = rng.uniform(0, np.pi, size=2)

        ua = np.array([[np.cos(ra), -np.sin(ra)], [np.sin(ra), np.cos(ra)]])
        ub = np.array([[np.cos(rb), -np.sin(rb)], [np.sin(rb), np.cos(rb)]])
        u = np.kron(ua, ub)
        rotated = Ensemble(
            [PureState((2, 2), u @ s.amps, s.ownership) for s in ens.states]
        )

        base = evaluate(ens, _product_protocol(ta, tb))
        ma = LocalMeasurement.from_basis("A", (0,), [ua @ v for v in _angle_basis(ta)])
        mb = LocalMeasurement.from_basis("B", (1,), [ub @ v for v in _angle_basis(tb)])
        conj = Protocol(no_resource(), Schedule(1, {"A": [ma], "B": [mb]}))
        moved = evaluate(rotated, conj)

        assert base.transcripts == moved.transcripts
        np.testing.assert_allclose(base.table, moved.table, atol=1e-9)


def test_party_order_invariance():
    rng = np.random.default_rng(24)
    for _ in range(25):
        ens = _random_ensemble(rng)
        proto = _product_protocol(rng.uniform(0, np.pi), rng.uniform(0, np.pi))
        fwd = evaluate(ens, proto)
        rev = evaluate(ens, proto, _party_order=("B", "A"))
        assert abs(fwd.p_success - rev.p_success) < 1e-12
        assert rev.stage_labels == ("c0:B", "c0:A")
        for k, t in enumerate(rev.transcripts):
            swapped = (t[1], t[0])
            for i in range(4):
                assert abs(rev.table[i, k] - fwd.transcript_probability(swapped, i)) < 1e-9


def test_party_order_must_cover_parties():
    with pytest.raises(ValueError):
        evaluate(eq1(), _product_protocol(0.0, 0.0), _party_order=("A", "C"))


# ---------------------------------------------------------------------------
# multicopy guards

def test_multicopy_rejects_resource_and_comm():
    ma = [LocalMeasurement.from_basis("A", (0,), list(E2))]
    mb = [LocalMeasurement.from_basis("B", (1,), list(E2))]
    proto = Protocol(mes(), Schedule(1, {"A": ma, "B": mb}))
    with pytest.raises(ValueError):
        evaluate_multicopy(eq9(0.8), proto)


def test_resource_measured_only_on_first_copy():
    # a 2-copy schedule referencing resource qubits is rejected by the layout
    alice = LocalMeasurement.from_basis("A", (0, 2), list(np.eye(4)))
    mb = LocalMeasurement.from_basis("B", (1,), list(E2))
    sched = Schedule(2, {"A": [None, alice], "B": [mb, mb]})
    proto = Protocol(mes(), sched)
    with pytest.raises(ValueError):
        evaluate(eq9(0.8), proto)

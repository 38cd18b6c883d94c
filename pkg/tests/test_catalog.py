"""Unit tests for the ensemble catalog, resources, and the file format."""

import numpy as np
import pytest

from lpdiscrim.catalog import (
    FAMILY_IDS,
    Ensemble,
    FamilySpec,
    bell_basis,
    build_family,
    domino_basis,
    ensemble_from_dict,
    ensemble_to_dict,
    eq1,
    eq4,
    eq6,
    eq7,
    eq8,
    eq9,
    load_ensemble,
    mes,
    nmes,
    no_resource,
    save_ensemble,
    subset,
    theta_pair,
    two_bells_and_third,
)
from lpdiscrim.states import BipartitionSplit, PureState, negativity, schmidt_coefficients

H = 1.0 / np.sqrt(2.0)


def _gram(ens):
    vecs = np.array([s.amps for s in ens.states])
    return vecs.conj() @ vecs.T


def _assert_orthonormal(ens):
    np.testing.assert_allclose(_gram(ens), np.eye(ens.n_states), atol=1e-9)


# ---------------------------------------------------------------------------
# Ensemble basics

def test_ensemble_rejects_non_orthogonal_states():
    s1 = PureState((2,), [1.0, 0.0])
    s2 = PureState((2,), [H, H])
    with pytest.raises(ValueError):
        Ensemble([s1, s2])


def test_ensemble_rejects_bad_priors():
    s1 = PureState((2,), [1.0, 0.0])
    s2 = PureState((2,), [0.0, 1.0])
    with pytest.raises(ValueError):
        Ensemble([s1, s2], priors=[0.7, 0.7])
    with pytest.raises(ValueError):
        Ensemble([s1, s2], priors=[1.0, 0.0, 0.0])


def test_ensemble_defaults_to_uniform_priors():
    ens = eq1()
    np.testing.assert_allclose(ens.priors, np.full(4, 0.25))
    assert ens.dims == (2, 2)
    assert ens.n_states == 4
    assert len(ens) == 4


def test_subset_renormalizes_priors_and_keeps_labels():
    sub = subset(eq1(), (0, 2))
    assert sub.n_states == 2
    np.testing.assert_allclose(sub.priors, [0.5, 0.5])
    assert sub.labels == ("psi1", "psi3")


# ---------------------------------------------------------------------------
# families

def test_theta_pair_is_rotation():
    th, thp = theta_pair(0.3)
    np.testing.assert_allclose(th, [np.cos(0.3), np.sin(0.3)])
    assert abs(np.dot(th, thp)) < 1e-12
    th0, thp0 = theta_pair(0.0)
    np.testing.assert_allclose(th0, [1.0, 0.0])
    np.testing.assert_allclose(thp0, [0.0, 1.0])


def test_eq1_frozen_vectors():
    ens = eq1()
    expected = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, H, H],
        [0.0, 0.0, H, -H],
    ]
    for s, e in zip(ens.states, expected):
        np.testing.assert_allclose(s.amps, e, atol=1e-12)
    assert ens.labels == ("psi1", "psi2", "psi3", "psi4")
    _assert_orthonormal(ens)


def test_eq4_endpoints():
    # alpha = pi/2 reproduces eq1; alpha = 0 is the computational product basis
    top = eq4(np.pi / 2)
    for s, e in zip(top.states, eq1().states):
        np.testing.assert_allclose(s.amps, e.amps, atol=1e-12)
    flat = eq4(0.0)
    expected = [np.eye(4)[0], np.eye(4)[1], np.eye(4)[2], -np.eye(4)[3]]
    for s, e in zip(flat.states, expected):
        np.testing.assert_allclose(s.amps, e, atol=1e-12)


def test_eq4_alpha_domain():
    with pytest.raises(ValueError):
        eq4(-0.2)
    with pytest.raises(ValueError):
        eq4(np.pi / 2 + 0.1)


def test_eq4_theta_rotates_second_qubit():
    ens = eq4(np.pi / 3, theta=0.4)
    th, _ = theta_pair(0.4)
    np.testing.assert_allclose(ens.states[0].amps, np.kron([1.0, 0.0], th), atol=1e-12)
    _assert_orthonormal(ens)


def test_eq6_eq7_orthogonal_on_parameter_grid():
    """Entangled-family orthogonality across a 10-point parameter sweep."""
    for k in range(10):
        alpha = (k + 1) / 10.0 * np.pi / 2.0
        phi = 0.15 + 0.12 * k
        a1, a2 = np.cos(phi), np.sin(phi)
        _assert_orthonormal(eq6(alpha, a1, a2, a2, a1))
        _assert_orthonormal(eq7(alpha, a1, a2, theta=0.1 * k))


def test_eq6_rejects_bad_amplitudes():
    with pytest.raises(ValueError):
        eq6(np.pi / 4, 0.9, 0.9, 0.6, 0.8)
    with pytest.raises(ValueError):
        eq7(np.pi / 4, -0.6, 0.8)


def test_eq8_frozen_vectors():
    a, b = np.sqrt(0.8), np.sqrt(0.2)
    c, d = np.sqrt(0.64), np.sqrt(0.36)
    ens = eq8(0.8, 0.64)
    expected = [
        [a, 0.0, 0.0, b],
        [b, 0.0, 0.0, -a],
        [0.0, c, d, 0.0],
        [0.0, d, -c, 0.0],
    ]
    for s, e in zip(ens.states, expected):
        np.testing.assert_allclose(s.amps, e, atol=1e-12)
    _assert_orthonormal(ens)


def test_eq8_schmidt_structure():
    """Schmidt coefficients {a, b} / {c, d} as labeled; negativity of phi1 is ab."""
    ens = eq8(0.8, 0.64)
    split = BipartitionSplit((0,))
    a, b = np.sqrt(0.8), np.sqrt(0.2)
    c, d = np.sqrt(0.64), np.sqrt(0.36)
    for i, pair in [(0, (a, b)), (1, (a, b)), (2, (c, d)), (3, (c, d))]:
        np.testing.assert_allclose(
            schmidt_coefficients(ens.states[i], split), pair, atol=1e-12
        )
    assert negativity(ens.states[0], split) == pytest.approx(a * b, abs=1e-12)


def test_eq8_strictness():
    # c = a collides in strict mode, d = a likewise; override allows both
    with pytest.raises(ValueError):
        eq8(0.8, 0.8)
    with pytest.raises(ValueError):
        eq8(0.8, 0.2)  # d^2 = 0.8 so d = a
    assert eq8(0.8, 0.8, strict=False).n_states == 4


def test_eq8_parameter_domain():
    with pytest.raises(ValueError):
        eq8(0.5, 0.7)
    with pytest.raises(ValueError):
        eq8(1.0, 0.7)


def test_eq9_two_states():
    a, b = np.sqrt(0.8), np.sqrt(0.2)
    ens = eq9(0.8)
    assert ens.n_states == 2
    np.testing.assert_allclose(ens.states[0].amps, [a, 0.0, 0.0, b], atol=1e-12)
    np.testing.assert_allclose(ens.states[1].amps, [b, 0.0, 0.0, -a], atol=1e-12)
    with pytest.raises(ValueError):
        eq9(0.5)


def test_bell_basis_frozen():
    ens = bell_basis()
    expected = [
        [H, 0.0, 0.0, H],
        [H, 0.0, 0.0, -H],
        [0.0, H, H, 0.0],
        [0.0, H, -H, 0.0],
    ]
    for s, e in zip(ens.states, expected):
        np.testing.assert_allclose(s.amps, e, atol=1e-12)
    assert ens.labels == ("phi+", "phi-", "psi+", "psi-")


def test_two_bells_and_third_variants():
    a, b = np.sqrt(0.6), np.sqrt(0.4)
    for variant in ("phi", "psi", "mixed"):
        ens = two_bells_and_third(variant, a, b)
        assert ens.n_states == 3
        _assert_orthonormal(ens)
    mixed = two_bells_and_third("mixed", a, b)
    np.testing.assert_allclose(
        mixed.states[2].amps, np.array([a, b, -b, -a]) / np.sqrt(2.0), atol=1e-12
    )
    with pytest.raises(ValueError):
        two_bells_and_third("nope", a, b)


def test_domino_basis_is_complete():
    ens = domino_basis()
    assert ens.n_states == 9
    assert ens.dims == (3, 3)
    _assert_orthonormal(ens)
    total = sum(np.outer(s.amps, s.amps) for s in ens.states)
    np.testing.assert_allclose(total, np.eye(9), atol=1e-9)
    # every tile is a product state
    split = BipartitionSplit((0,))
    for s in ens.states:
        coeffs = schmidt_coefficients(s, split)
        assert coeffs[1] < 1e-12


def test_build_family_dispatch():
    samples = {
        "eq1": {},
        "eq4": {"alpha": np.pi / 3},
        "eq6": {"alpha": np.pi / 4, "a1": 0.6, "a2": 0.8, "a3": 0.8, "a4": 0.6},
        "eq7": {"alpha": np.pi / 4, "a1": 0.6, "a2": 0.8},
        "eq8": {"a_sq": 0.8, "c_sq": 0.64},
        "eq9": {"a_sq": 0.8},
        "bell": {},
        "domino-3x3": {},
    }
    assert set(samples) == set(FAMILY_IDS)
    for family, params in samples.items():
        ens = build_family(FamilySpec(family, params))
        assert ens.n_states >= 2
    with pytest.raises(ValueError):
        FamilySpec("eq2")


def test_build_family_priors_override():
    ens = build_family(FamilySpec("eq9", {"a_sq": 0.8}, priors=[0.9, 0.1]))
    np.testing.assert_allclose(ens.priors, [0.9, 0.1])


# ---------------------------------------------------------------------------
# resources

def test_nmes_from_amplitudes_and_squared():
    r1 = nmes(np.sqrt(0.8), np.sqrt(0.2))
    r2 = nmes(0.8, squared=True)
    np.testing.assert_allclose(r1.amplitudes, r2.amplitudes, atol=1e-12)
    np.testing.assert_allclose(r1.amplitudes, [np.sqrt(0.8), np.sqrt(0.2)], atol=1e-12)


def test_nmes_validation():
    with pytest.raises(ValueError):
        nmes(0.5, 0.6)  # not normalized
    with pytest.raises(ValueError):
        nmes(np.sqrt(0.2), np.sqrt(0.8))  # a < b
    with pytest.raises(ValueError):
        nmes(1.0, 0.0)  # b must stay positive
    with pytest.raises(ValueError):
        nmes(0.4, squared=True)


def test_mes_is_symmetric_nmes():
    r = mes()
    np.testing.assert_allclose(r.amplitudes, [H, H], atol=1e-12)
    st = r.state()
    assert st.ownership == ("A", "B")
    np.testing.assert_allclose(st.amps, [H, 0.0, 0.0, H], atol=1e-12)


def test_no_resource_has_no_state():
    r = no_resource()
    assert r.kind == "none"
    with pytest.raises(ValueError):
        r.amplitudes


# ---------------------------------------------------------------------------
# serialization

def test_ensemble_round_trip_is_exact(tmp_path):
    ens = eq8(0.8, 0.64)
    path = tmp_path / "ens.json"
    save_ensemble(ens, path)
    back = load_ensemble(path)
    assert back.labels == ens.labels
    np.testing.assert_array_equal(back.priors, ens.priors)
    for s, t in zip(ens.states, back.states):
        np.testing.assert_array_equal(s.amps, t.amps)
        assert s.dims == t.dims
        assert s.ownership == t.ownership


def test_complex_amplitudes_round_trip():
    s1 = PureState((2, 2), [H, 1j * H, 0.0, 0.0])
    s2 = PureState((2, 2), [H, -1j * H, 0.0, 0.0])
    ens = Ensemble([s1, s2])
    doc = ensemble_to_dict(ens)
    back = ensemble_from_dict(doc)
    for s, t in zip(ens.states, back.states):
        np.testing.assert_array_equal(s.amps, t.amps)

"""Unit tests for the tensor core: states, projectors, splits, entanglement."""

import numpy as np
import pytest

from lpdiscrim.states import (
    ATOL,
    BipartitionSplit,
    Projector,
    PureState,
    apply_local_projector,
    negativity,
    schmidt_coefficients,
    tensor,
)

H = 1.0 / np.sqrt(2.0)
PLUS = np.array([H, H])
MES_AMPS = np.array([H, 0.0, 0.0, H])


def _random_state(rng, dims, complex_amps=False):
    d = int(np.prod(dims))
    v = rng.standard_normal(d)
    if complex_amps:
        v = v + 1j * rng.standard_normal(d)
    return PureState(dims, v / np.linalg.norm(v))


def _random_orthonormal(rng, d, complex_amps=False):
    m = rng.standard_normal((d, d))
    if complex_amps:
        m = m + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(m)
    return q * np.sign(np.diag(r))


# ---------------------------------------------------------------------------
# PureState

def test_pure_state_requires_normalization():
    with pytest.raises(ValueError):
        PureState((2,), [1.0, 1.0])


def test_pure_state_requires_matching_length():
    with pytest.raises(ValueError):
        PureState((2, 2), [1.0, 0.0])


def test_pure_state_ownership_length_checked():
    with pytest.raises(ValueError):
        PureState((2, 2), MES_AMPS, ownership=("A",))


def test_default_ownership_is_one_party_per_subsystem():
    s = PureState((2, 3, 2), np.eye(12)[0])
    assert s.ownership == ("A", "B", "C")
    assert s.parties == ("A", "B", "C")


def test_subsystems_of_groups_interleaved_ownership():
    s = PureState((2, 2, 2, 2), np.eye(16)[0], ownership=("A", "B", "A", "B"))
    assert s.subsystems_of("A") == (0, 2)
    assert s.subsystems_of("B") == (1, 3)
    assert s.parties == ("A", "B")


def test_tensor_concatenates_dims_and_ownership():
    a = PureState((2,), [0.0, 1.0], ownership=("A",))
    b = PureState((2, 2), MES_AMPS, ownership=("A", "B"))
    t = tensor(a, b)
    assert t.dims == (2, 2, 2)
    assert t.ownership == ("A", "A", "B")
    np.testing.assert_allclose(t.amps, np.kron([0.0, 1.0], MES_AMPS))


# ---------------------------------------------------------------------------
# Projector

def test_projector_from_vectors_is_idempotent_hermitian():
    p = Projector.from_vectors((2, 2), [MES_AMPS])
    assert p.rank == 1
    np.testing.assert_allclose(p.matrix, p.matrix.conj().T, atol=1e-12)
    np.testing.assert_allclose(p.matrix @ p.matrix, p.matrix, atol=1e-12)


def test_projector_rejects_non_projection_matrix():
    with pytest.raises(ValueError):
        Projector((2,), matrix=np.array([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        Projector((2,), matrix=np.array([[0.5, 0.0], [0.0, 0.0]]))


def test_projector_orthonormal_vectors_round_trip():
    vecs = [np.array([1.0, 0.0, 0.0, 0.0]), np.array([0.0, H, H, 0.0])]
    p = Projector.from_vectors((2, 2), vecs)
    got = p.orthonormal_vectors()
    assert len(got) == 2
    rebuilt = Projector.from_vectors((2, 2), got)
    np.testing.assert_allclose(rebuilt.matrix, p.matrix, atol=1e-12)


def test_projector_rejects_non_orthonormal_generators():
    vecs = [np.array([1.0, 0.0]), np.array([H, H])]
    with pytest.raises(ValueError):
        Projector.from_vectors((2,), vecs)


# ---------------------------------------------------------------------------
# apply_local_projector

def test_apply_local_projector_frozen_branch():
    """Hand-worked 16-dim branch: prob exactly 1/2, post is |1,+,+,+>."""
    sig = PureState((2, 2), np.kron([0.0, 1.0], PLUS), ownership=("A", "B"))
    res = PureState((2, 2), MES_AMPS, ownership=("A", "B"))
    full = tensor(sig, res)
    assert full.ownership == ("A", "B", "A", "B")

    proj = Projector.from_vectors((2, 2), [np.kron([0.0, 1.0], PLUS)])
    post, prob = apply_local_projector(full, proj, (0, 2))

    assert prob == pytest.approx(0.5, abs=1e-12)
    expected = np.kron(np.kron([0.0, 1.0], PLUS), np.kron(PLUS, PLUS))
    np.testing.assert_allclose(post.amps, expected, atol=1e-12)


def test_apply_local_projector_zero_branch_left_unnormalized():
    s = PureState((2,), [1.0, 0.0])
    proj = Projector.from_vectors((2,), [np.array([0.0, 1.0])])
    post, prob = apply_local_projector(s, proj, (0,))
    assert prob < 1e-12
    assert np.linalg.norm(post.amps) < 1e-6


def test_apply_local_projector_validates_subsystems():
    s = PureState((2, 2), MES_AMPS)
    proj = Projector.from_vectors((2,), [np.array([1.0, 0.0])])
    with pytest.raises(ValueError):
        apply_local_projector(s, proj, (3,))
    with pytest.raises(ValueError):
        apply_local_projector(s, proj, (0, 0))
    big = Projector.from_vectors((2, 2), [MES_AMPS])
    with pytest.raises(ValueError):
        apply_local_projector(s, big, (0,))


def test_complete_projector_set_probabilities_sum_to_one():
    """Born-rule completeness on random states, real and complex."""
    rng = np.random.default_rng(11)
    for trial in range(25):
        dims = [(2, 2), (2, 3), (3, 3)][trial % 3]
        cplx = trial % 2 == 1
        state = _random_state(rng, dims, complex_amps=cplx)
        sub = trial % len(dims)
        basis = _random_orthonormal(rng, dims[sub], complex_amps=cplx)
        total = 0.0
        for k in range(dims[sub]):
            proj = Projector.from_vectors((dims[sub],), [basis[:, k]])
            _, p = apply_local_projector(state, proj, (sub,))
            total += p
        assert abs(total - 1.0) < 1e-9


def test_disjoint_projectors_commute():
    """Measurement order across parties is irrelevant for disjoint supports."""
    rng = np.random.default_rng(7)
    for _ in range(25):
        state = _random_state(rng, (2, 2), complex_amps=True)
        va = _random_orthonormal(rng, 2, complex_amps=True)[:, 0]
        vb = _random_orthonormal(rng, 2, complex_amps=True)[:, 0]
        pa = Projector.from_vectors((2,), [va])
        pb = Projector.from_vectors((2,), [vb])

        s1, p1 = apply_local_projector(state, pa, (0,))
        s1, q1 = apply_local_projector(s1, pb, (1,))
        s2, p2 = apply_local_projector(state, pb, (1,))
        s2, q2 = apply_local_projector(s2, pa, (0,))

        assert abs(p1 * q1 - p2 * q2) < 1e-9
        if p1 * q1 > 1e-9:
            # same post state up to global phase
            overlap = abs(np.vdot(s1.amps, s2.amps))
            assert abs(overlap - 1.0) < 1e-9


# ---------------------------------------------------------------------------
# splits, Schmidt, negativity

def test_bipartition_split_validation():
    with pytest.raises(ValueError):
        BipartitionSplit(())
    split = BipartitionSplit((1, 0))
    assert split.left == (0, 1)
    with pytest.raises(ValueError):
        split.right(2)  # nothing left on the right
    assert split.right(3) == (2,)


def test_split_by_party():
    s = PureState((2, 2, 2, 2), np.eye(16)[0], ownership=("A", "B", "A", "B"))
    assert BipartitionSplit.by_party(s, "A").left == (0, 2)
    with pytest.raises(ValueError):
        BipartitionSplit.by_party(s, "C")


def test_schmidt_mes_and_product():
    mes = PureState((2, 2), MES_AMPS)
    np.testing.assert_allclose(
        schmidt_coefficients(mes, BipartitionSplit((0,))), [H, H], atol=1e-12
    )
    prod = PureState((2, 2), np.kron(PLUS, [1.0, 0.0]))
    np.testing.assert_allclose(
        schmidt_coefficients(prod, BipartitionSplit((0,))), [1.0, 0.0], atol=1e-12
    )


def test_schmidt_frozen_antidiagonal():
    # amplitude matrix [[0, 0.6], [-0.8, 0]] has singular values 0.8, 0.6
    s = PureState((2, 2), [0.0, 0.6, -0.8, 0.0])
    np.testing.assert_allclose(
        schmidt_coefficients(s, BipartitionSplit((0,))), [0.8, 0.6], atol=1e-12
    )


def test_schmidt_interleaved_party_split():
    sig = PureState((2, 2), np.kron([0.0, 1.0], PLUS), ownership=("A", "B"))
    res = PureState((2, 2), MES_AMPS, ownership=("A", "B"))
    full = tensor(sig, res)
    coeffs = schmidt_coefficients(full, BipartitionSplit.by_party(full, "A"))
    np.testing.assert_allclose(coeffs, [H, H, 0.0, 0.0], atol=1e-12)


def test_negativity_mes_is_half():
    mes = PureState((2, 2), MES_AMPS)
    assert negativity(mes, BipartitionSplit((0,))) == pytest.approx(0.5, abs=1e-12)


def test_negativity_product_is_zero():
    prod = PureState((2, 2), np.kron(PLUS, PLUS))
    assert negativity(prod, BipartitionSplit((0,))) == pytest.approx(0.0, abs=1e-9)


def test_negativity_frozen_against_partial_transpose():
    """a^2 = 0.8: negativity is a*b = 0.4, cross-checked by eigendecomposition."""
    a, b = np.sqrt(0.8), np.sqrt(0.2)
    s = PureState((2, 2), [a, 0.0, 0.0, b])
    got = negativity(s, BipartitionSplit((0,)))
    assert got == pytest.approx(0.4, abs=1e-12)

    # independent reference: transpose the B indices of the density matrix
    rho = np.outer(s.amps, s.amps.conj()).reshape(2, 2, 2, 2)
    rho_tb = rho.transpose(0, 3, 2, 1).reshape(4, 4)
    eigs = np.linalg.eigvalsh(rho_tb)
    assert -eigs[eigs < 0].sum() == pytest.approx(got, abs=1e-12)


def test_negativity_local_unitary_invariant():
    rng = np.random.default_rng(3)
    base = PureState((2, 2), [np.sqrt(0.7), 0.0, 0.0, np.sqrt(0.3)])
    split = BipartitionSplit((0,))
    ref = negativity(base, split)
    for _ in range(25):
        ua = _random_orthonormal(rng, 2, complex_amps=True)
        ub = _random_orthonormal(rng, 2, complex_amps=True)
        rotated = PureState((2, 2), np.kron(ua, ub) @ base.amps)
        assert abs(negativity(rotated, split) - ref) < 1e-9


def test_atol_value_is_contractual():
    assert ATOL == 1e-9

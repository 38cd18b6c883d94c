"""Pure multipartite states, local projectors, and bipartite entanglement measures.

Everything downstream (catalogs, protocols, the transcript engine, the searches)
is built on the small set of dense-tensor operations in this module. States are
kept as flat complex amplitude vectors together with a subsystem dimension list
and a party label per subsystem.
"""

from __future__ import annotations

import numpy as np

# Shared numerical contract: normalization, orthogonality and idempotence are
# enforced to ATOL; measurement branches below PRUNE_TOL are treated as dead.
ATOL = 1e-9
PRUNE_TOL = 1e-12

_PARTY_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _default_ownership(n: int) -> tuple[str, ...]:
    if n > len(_PARTY_LETTERS):
        raise ValueError(f"cannot assign default party labels to {n} subsystems")
    return tuple(_PARTY_LETTERS[i] for i in range(n))


class PureState:
    """Pure state of a multipartite system.

    Parameters
    ----------
    dims : sequence of int
        Dimension of each subsystem, in tensor order.
    amps : array_like
        Flat amplitude vector of length ``prod(dims)``; normalized to 1
        within ``ATOL``.
    ownership : sequence of str, optional
        Party label owning each subsystem. Defaults to one letter per
        subsystem: "A", "B", ...
    """

    __slots__ = ("dims", "amps", "ownership")

    def __init__(self, dims, amps, ownership=None, validate: bool = True):
        self.dims = tuple(int(d) for d in dims)
        self.amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        if ownership is None:
            ownership = _default_ownership(len(self.dims))
        self.ownership = tuple(str(p) for p in ownership)
        if validate:
            self._validate()

    def _validate(self) -> None:
        if any(d < 1 for d in self.dims):
            raise ValueError(f"subsystem dimensions must be >= 1, got {self.dims}")
        expect = int(np.prod(self.dims))
        if self.amps.shape != (expect,):
            raise ValueError(
                f"amplitude vector has length {self.amps.shape[0]}, "
                f"dims {self.dims} require {expect}"
            )
        if len(self.ownership) != len(self.dims):
            raise ValueError("ownership must assign exactly one party per subsystem")
        norm = float(np.linalg.norm(self.amps))
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    @property
    def parties(self) -> tuple[str, ...]:
        seen = []
        for p in self.ownership:
            if p not in seen:
                seen.append(p)
        return tuple(sorted(seen))

    def subsystems_of(self, party: str) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.ownership) if p == party)

    def as_tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def is_real(self, atol: float = ATOL) -> bool:
        return bool(np.max(np.abs(self.amps.imag)) <= atol)

    def __repr__(self) -> str:  # pragma: no cover
        return f"PureState(dims={self.dims}, ownership={self.ownership})"


def tensor(*states: PureState) -> PureState:
    """Tensor product of one or more pure states.

    Subsystems are concatenated in argument order and keep their party labels,
    so tensoring a two-party state with a two-party resource yields a four
    subsystem state where each party owns two subsystems.
    """
    if not states:
        raise ValueError("tensor() needs at least one factor, got none")
    amps = states[0].amps
    for s in states[1:]:
        amps = np.kron(amps, s.amps)
    dims = tuple(d for s in states for d in s.dims)
    ownership = tuple(p for s in states for p in s.ownership)
    return PureState(dims, amps, ownership)


class Projector:
    """Orthogonal projector on one or more subsystems.

    Parameters
    ----------
    dims : sequence of int
        Dimensions of the subsystems the projector acts on, in the order the
        caller will list them when applying it.
    matrix : array_like, optional
        Explicit ``d x d`` projector matrix. Exactly one of ``matrix`` and
        ``vectors`` must be given.
    vectors : sequence of array_like, optional
        Orthonormal generating vectors; the projector is the sum of their
        outer products and its rank is the number of vectors.
    """

    __slots__ = ("dims", "matrix", "vectors")

    def __init__(self, dims, matrix=None, vectors=None):
        self.dims = tuple(int(d) for d in dims)
        d = int(np.prod(self.dims))
        if (matrix is None) == (vectors is None):
            raise ValueError("give exactly one of matrix= or vectors=")
        if vectors is not None:
            vecs = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
            for v in vecs:
                if v.shape != (d,):
                    raise ValueError(f"generating vector has length {v.shape[0]}, expected {d}")
            gram = np.array([[np.vdot(u, v) for v in vecs] for u in vecs])
            if not np.allclose(gram, np.eye(len(vecs)), atol=ATOL):
                raise ValueError("generating vectors are not orthonormal")
            self.vectors = tuple(vecs)
            self.matrix = sum(np.outer(v, v.conj()) for v in vecs)
        else:
            self.matrix = np.asarray(matrix, dtype=np.complex128)
            if self.matrix.shape != (d, d):
                raise ValueError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")
            if not np.allclose(self.matrix, self.matrix.conj().T, atol=ATOL):
                raise ValueError("projector matrix is not Hermitian")
            if not np.allclose(self.matrix @ self.matrix, self.matrix, atol=ATOL):
                raise ValueError("projector matrix is not idempotent")
            self.vectors = None

    @classmethod
    def from_vectors(cls, dims, vectors) -> "Projector":
        return cls(dims, vectors=vectors)

    @property
    def rank(self) -> int:
        return int(round(float(np.trace(self.matrix).real)))

    def orthonormal_vectors(self) -> tuple[np.ndarray, ...]:
        """Orthonormal basis of the range, for serialization.

        Returns the generating vectors when the projector was built from some,
        otherwise the eigenvalue-1 eigenvectors of the matrix.
        """
        if self.vectors is not None:
            return self.vectors
        evals, evecs = np.linalg.eigh(self.matrix)
        keep = [evecs[:, i] for i in range(len(evals)) if evals[i] > 0.5]
        return tuple(keep)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Projector(dims={self.dims}, rank={self.rank})"


def apply_local_projector(state: PureState, proj: Projector, subsystems) -> tuple[PureState, float]:
    """Apply a projector to selected subsystems of a pure state.

    Parameters
    ----------
    state : PureState
    proj : Projector
        Its ``dims`` must match the selected subsystem dimensions in listed
        order.
    subsystems : sequence of int
        Distinct subsystem indices of ``state``; the first listed index is the
        most significant axis of the projector.

    Returns
    -------
    (PureState, float)
        The post-measurement state and the branch probability. The state is
        renormalized when the probability exceeds ``PRUNE_TOL``; otherwise the
        raw (near-zero) projected vector is returned unnormalized.
    """
    subsystems = [int(s) for s in subsystems]
    if len(set(subsystems)) != len(subsystems):
        raise ValueError(f"subsystem indices must be distinct, got {subsystems}")
    for s in subsystems:
        if not 0 <= s < state.n_subsystems:
            raise ValueError(f"subsystem index {s} out of range for dims {state.dims}")
    sel_dims = tuple(state.dims[s] for s in subsystems)
    if proj.dims != sel_dims:
        raise ValueError(f"projector dims {proj.dims} do not match selected subsystems {sel_dims}")

    k = len(subsystems)
    arr = state.as_tensor()
    moved = np.moveaxis(arr, subsystems, range(k))
    rest_shape = moved.shape[k:]
    flat = moved.reshape(int(np.prod(sel_dims)), -1)
    out = proj.matrix @ flat
    back = np.moveaxis(out.reshape(sel_dims + rest_shape), range(k), subsystems)
    new_amps = back.reshape(-1)
    prob = float(np.vdot(new_amps, new_amps).real)
    if prob > PRUNE_TOL:
        new_amps = new_amps / np.sqrt(prob)
        post = PureState(state.dims, new_amps, state.ownership)
    else:
        post = PureState(state.dims, new_amps, state.ownership, validate=False)
    return post, prob


class BipartitionSplit:
    """Bipartition of the subsystems into a left group and the rest."""

    __slots__ = ("left",)

    def __init__(self, left):
        self.left = tuple(sorted(int(s) for s in left))
        if len(set(self.left)) != len(self.left) or not self.left:
            raise ValueError(f"left group must be a nonempty set of indices, got {left}")

    def right(self, n_subsystems: int) -> tuple[int, ...]:
        if any(s >= n_subsystems or s < 0 for s in self.left):
            raise ValueError(f"split {self.left} out of range for {n_subsystems} subsystems")
        r = tuple(s for s in range(n_subsystems) if s not in self.left)
        if not r:
            raise ValueError("split must leave at least one subsystem on the right")
        return r

    @classmethod
    def by_party(cls, state: PureState, party: str) -> "BipartitionSplit":
        subs = state.subsystems_of(party)
        if not subs:
            raise ValueError(f"party {party!r} owns no subsystem of {state!r}")
        return cls(subs)


def _split_matrix(state: PureState, split: BipartitionSplit) -> np.ndarray:
    left = split.left
    right = split.right(state.n_subsystems)
    dL = int(np.prod([state.dims[s] for s in left]))
    dR = int(np.prod([state.dims[s] for s in right]))
    arr = state.as_tensor().transpose(left + right)
    return arr.reshape(dL, dR)


def schmidt_coefficients(state: PureState, split: BipartitionSplit) -> np.ndarray:
    """Schmidt coefficients across a bipartition, in descending order."""
    m = _split_matrix(state, split)
    return np.linalg.svd(m, compute_uv=False)


def negativity(state: PureState, split: BipartitionSplit) -> float:
    """Negativity of a pure state across a bipartition.

    Sum of the absolute values of the negative eigenvalues of the partial
    transpose of the density matrix over the left group. For a two-qubit
    state ``a|00> + b|11>`` this equals ``a*b``.
    """
    m = _split_matrix(state, split)
    dL, dR = m.shape
    psi = m.reshape(-1)
    rho = np.outer(psi, psi.conj())
    rho_pt = rho.reshape(dL, dR, dL, dR).transpose(2, 1, 0, 3).reshape(dL * dR, dL * dR)
    evals = np.linalg.eigvalsh(rho_pt)
    return float(-np.sum(evals[evals < 0.0]))

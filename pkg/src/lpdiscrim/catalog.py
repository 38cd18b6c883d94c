"""Catalog of the orthogonal state ensembles and entangled resources under study.

Every family is real-valued and lives on qubits except the 3x3 domino basis.
Two-party states put Alice on subsystem 0 and Bob on subsystem 1; appended
resources add one qubit per party.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .states import ATOL, PureState

SQ2 = np.sqrt(2.0)

FAMILY_IDS = ("eq1", "eq4", "eq6", "eq7", "eq8", "eq9", "bell", "domino-3x3")


class Ensemble:
    """Finite set of mutually orthogonal pure states with prior probabilities."""

    __slots__ = ("states", "priors", "labels")

    def __init__(self, states, priors=None, labels=None):
        self.states = list(states)
        if not self.states:
            raise ValueError("ensemble needs at least one state")
        n = len(self.states)
        if priors is None:
            priors = np.full(n, 1.0 / n)
        self.priors = np.asarray(priors, dtype=float).reshape(-1)
        if labels is None:
            labels = tuple(f"state{i + 1}" for i in range(n))
        self.labels = tuple(labels)
        self._validate()

    def _validate(self) -> None:
        first = self.states[0]
        for s in self.states[1:]:
            if s.dims != first.dims:
                raise ValueError(f"mixed dims in ensemble: {s.dims} vs {first.dims}")
            if s.ownership != first.ownership:
                raise ValueError("mixed ownership in ensemble")
        for i in range(len(self.states)):
            for j in range(i + 1, len(self.states)):
                ov = abs(np.vdot(self.states[i].amps, self.states[j].amps))
                if ov > ATOL:
                    raise ValueError(
                        f"states {i} and {j} are not orthogonal: |overlap| = {ov:.3e}"
                    )
        if self.priors.shape != (len(self.states),):
            raise ValueError("priors length does not match the number of states")
        if np.any(self.priors < 0.0):
            raise ValueError("priors must be nonnegative")
        if abs(float(self.priors.sum()) - 1.0) > 1e-12:
            raise ValueError(f"priors sum to {self.priors.sum()!r}, expected 1")
        if len(self.labels) != len(self.states):
            raise ValueError("labels length does not match the number of states")

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.states[0].dims

    @property
    def ownership(self) -> tuple[str, ...]:
        return self.states[0].ownership

    def __len__(self) -> int:
        return len(self.states)


def subset(ensemble: Ensemble, indices) -> Ensemble:
    """Sub-ensemble at the given state indices, priors re-uniformized."""
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ValueError(f"subset indices must be distinct, got {idx}")
    for i in idx:
        if not 0 <= i < ensemble.n_states:
            raise ValueError(f"subset index {i} out of range")
    return Ensemble(
        [ensemble.states[i] for i in idx],
        labels=[ensemble.labels[i] for i in idx],
    )


# ---------------------------------------------------------------------------
# qubit helpers

def theta_pair(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Real orthonormal qubit pair |theta>, |theta'>.

    |theta> = cos(theta)|0> + sin(theta)|1> and |theta'> is its +90 degree
    rotation, so theta = 0 gives the computational basis in order.
    """
    c, s = np.cos(theta), np.sin(theta)
    return np.array([c, s]), np.array([-s, c])


def _two_qubit(amps, labelled=("A", "B")) -> PureState:
    return PureState((2, 2), amps, labelled)


def _kron_state(va, vb) -> PureState:
    return _two_qubit(np.kron(va, vb))


# ---------------------------------------------------------------------------
# families

def eq1() -> Ensemble:
    """Four product states: two flag qubit 0 with an orthogonal pair, two flag
    qubit 1 with the conjugate (+/-) pair."""
    plus = np.array([1.0, 1.0]) / SQ2
    minus = np.array([1.0, -1.0]) / SQ2
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    states = [
        _kron_state(zero, zero),
        _kron_state(zero, one),
        _kron_state(one, plus),
        _kron_state(one, minus),
    ]
    return Ensemble(states, labels=("psi1", "psi2", "psi3", "psi4"))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not -ATOL <= alpha <= np.pi / 2 + ATOL:
        raise ValueError(f"alpha must lie in [0, pi/2], got {alpha}")
    return alpha


def eq4(alpha: float, theta: float = 0.0) -> Ensemble:
    """General two-qubit product basis with interpolation angle alpha.

    alpha = pi/2 with theta = 0 reproduces :func:`eq1` exactly; alpha = 0
    degenerates to a rotated computational product basis.
    """
    alpha = _check_alpha(alpha)
    th, thp = theta_pair(theta)
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    ca, sa = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    states = [
        _kron_state(zero, th),
        _kron_state(zero, thp),
        _kron_state(one, ca * th + sa * thp),
        _kron_state(one, sa * th - ca * thp),
    ]
    return Ensemble(states, labels=("psi1", "psi2", "psi3", "psi4"))


def _positive_unit_pair(x: float, y: float, names: str) -> tuple[float, float]:
    x, y = float(x), float(y)
    if x <= 0.0 or y <= 0.0:
        raise ValueError(f"{names} must be strictly positive, got ({x}, {y})")
    if abs(x * x + y * y - 1.0) > ATOL:
        raise ValueError(f"{names} must satisfy {names[0]}^2 + {names[-1]}^2 = 1")
    return x, y


def eq6(alpha: float, a1: float, a2: float, a3: float, a4: float, theta: float = 0.0) -> Ensemble:
    """Two orthogonal entangled states built on the eq4 product structure."""
    alpha = _check_alpha(alpha)
    a1, a2 = _positive_unit_pair(a1, a2, "a1,a2")
    a3, a4 = _positive_unit_pair(a3, a4, "a3,a4")
    th, thp = theta_pair(theta)
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    ca, sa = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    s1 = a1 * np.kron(zero, th) + a2 * np.kron(one, ca * th + sa * thp)
    s2 = a3 * np.kron(zero, thp) + a4 * np.kron(one, sa * th - ca * thp)
    return Ensemble([_two_qubit(s1), _two_qubit(s2)], labels=("psibar1", "psibar2"))


def eq7(alpha: float, a1: float, a2: float, theta: float = 0.0) -> Ensemble:
    """One entangled state plus the two compatible eq4 product states."""
    alpha = _check_alpha(alpha)
    a1, a2 = _positive_unit_pair(a1, a2, "a1,a2")
    th, thp = theta_pair(theta)
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    ca, sa = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    s1 = a1 * np.kron(zero, th) + a2 * np.kron(one, ca * th + sa * thp)
    s2 = np.kron(zero, thp)
    s3 = np.kron(one, sa * th - ca * thp)
    return Ensemble(
        [_two_qubit(s1), _two_qubit(s2), _two_qubit(s3)],
        labels=("psibar1", "psitilde2", "psitilde4"),
    )


def _split_amplitude(a2: float, name: str) -> tuple[float, float]:
    """Larger/smaller Schmidt amplitudes (x, y) from x^2 = a2, x > y > 0."""
    a2 = float(a2)
    if not 0.5 < a2 < 1.0:
        raise ValueError(f"{name}^2 must lie in (1/2, 1), got {a2}")
    return float(np.sqrt(a2)), float(np.sqrt(1.0 - a2))


def eq8(a_sq: float, c_sq: float, strict: bool = True) -> Ensemble:
    """Four orthogonal partially entangled states in two Schmidt-amplitude pairs.

    Parameters
    ----------
    a_sq, c_sq : float
        Squared larger amplitudes of the even and odd pairs; both in (1/2, 1).
    strict : bool
        When True (default), (a, c, d) must be pairwise distinct beyond 1e-9.
        Pass False for the deliberate a = c special family where all four
        states become perfectly distinguishable with one cbit.
    """
    a, b = _split_amplitude(a_sq, "a")
    c, d = _split_amplitude(c_sq, "c")
    if strict:
        for x, y, names in ((a, c, "a, c"), (a, d, "a, d"), (c, d, "c, d")):
            if abs(x - y) <= ATOL:
                raise ValueError(
                    f"{names} coincide ({x}); pass strict=False to build this family anyway"
                )
    states = [
        _two_qubit([a, 0.0, 0.0, b]),
        _two_qubit([b, 0.0, 0.0, -a]),
        _two_qubit([0.0, c, d, 0.0]),
        _two_qubit([0.0, d, -c, 0.0]),
    ]
    return Ensemble(states, labels=("phi1", "phi2", "phi3", "phi4"))


def eq9(a_sq: float) -> Ensemble:
    """The two even-parity partially entangled states alone."""
    a, b = _split_amplitude(a_sq, "a")
    states = [_two_qubit([a, 0.0, 0.0, b]), _two_qubit([b, 0.0, 0.0, -a])]
    return Ensemble(states, labels=("phi1", "phi2"))


def bell_basis() -> Ensemble:
    """The four Bell states, ordered phi+, phi-, psi+, psi-."""
    states = [
        _two_qubit([1.0, 0.0, 0.0, 1.0] / np.array(SQ2)),
        _two_qubit([1.0, 0.0, 0.0, -1.0] / np.array(SQ2)),
        _two_qubit([0.0, 1.0, 1.0, 0.0] / np.array(SQ2)),
        _two_qubit([0.0, 1.0, -1.0, 0.0] / np.array(SQ2)),
    ]
    return Ensemble(states, labels=("phi+", "phi-", "psi+", "psi-"))


def two_bells_and_third(variant: str, a: float, b: float) -> Ensemble:
    """Two Bell states plus an orthogonal partially entangled third state.

    Variants: "phi" pairs phi+/phi- with a|01> + b|10>; "psi" pairs psi+/psi-
    with a|00> + b|11>; "mixed" pairs phi+/psi+ with the normalized
    a(|00> - |11>) + b(|01> - |10>).
    """
    a, b = _positive_unit_pair(a, b, "a,b")
    bell = bell_basis()
    if variant == "phi":
        states = [bell.states[0], bell.states[1], _two_qubit([0.0, a, b, 0.0])]
    elif variant == "psi":
        states = [bell.states[2], bell.states[3], _two_qubit([a, 0.0, 0.0, b])]
    elif variant == "mixed":
        third = np.array([a, b, -b, -a]) / SQ2
        states = [bell.states[0], bell.states[2], _two_qubit(third)]
    else:
        raise ValueError(f"unknown variant {variant!r}, expected phi, psi or mixed")
    return Ensemble(states, labels=("first", "second", "third"))


def domino_basis() -> Ensemble:
    """The nine-tile product basis of two qutrits."""
    z = [np.zeros(3) for _ in range(3)]
    for i in range(3):
        z[i][i] = 1.0
    p01, m01 = (z[0] + z[1]) / SQ2, (z[0] - z[1]) / SQ2
    p12, m12 = (z[1] + z[2]) / SQ2, (z[1] - z[2]) / SQ2
    pairs = [
        (z[1], z[1]),
        (z[0], p01), (z[0], m01),
        (z[2], p12), (z[2], m12),
        (p12, z[0]), (m12, z[0]),
        (p01, z[2]), (m01, z[2]),
    ]
    states = [PureState((3, 3), np.kron(va, vb), ("A", "B")) for va, vb in pairs]
    return Ensemble(states, labels=tuple(f"tile{i + 1}" for i in range(9)))


# ---------------------------------------------------------------------------
# family spec dispatch

@dataclass
class FamilySpec:
    """Declarative handle on a catalog family: id plus its parameters."""

    family: str
    params: dict = field(default_factory=dict)
    priors: list | None = None

    def __post_init__(self):
        if self.family not in FAMILY_IDS:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILY_IDS}")


_BUILDERS = {
    "eq1": eq1,
    "eq4": eq4,
    "eq6": eq6,
    "eq7": eq7,
    "eq8": eq8,
    "eq9": eq9,
    "bell": bell_basis,
    "domino-3x3": domino_basis,
}


def build_family(spec: FamilySpec) -> Ensemble:
    """Build the ensemble a FamilySpec describes."""
    ens = _BUILDERS[spec.family](**spec.params)
    if spec.priors is not None:
        ens = Ensemble(ens.states, priors=spec.priors, labels=ens.labels)
    return ens


# ---------------------------------------------------------------------------
# entangled resources

@dataclass(frozen=True)
class ResourceSpec:
    """Two-qubit entangled resource appended to every ensemble state.

    kind is one of "none", "nmes" (a|00> + b|11| with a >= b > 0) or "mes".
    ``parties`` assigns the two resource qubits, in order.
    """

    kind: str = "none"
    a: float | None = None
    b: float | None = None
    parties: tuple[str, str] = ("A", "B")

    def __post_init__(self):
        if self.kind not in ("none", "nmes", "mes"):
            raise ValueError(f"unknown resource kind {self.kind!r}")
        if self.kind == "nmes":
            if self.a is None:
                raise ValueError("nmes resource needs amplitude a (and optionally b)")
            a = float(self.a)
            b = float(self.b) if self.b is not None else float(np.sqrt(1.0 - a * a))
            if not a >= b > 0.0:
                raise ValueError(f"nmes amplitudes must satisfy a >= b > 0, got ({a}, {b})")
            if abs(a * a + b * b - 1.0) > ATOL:
                raise ValueError("nmes amplitudes must be normalized")
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        elif self.a is not None or self.b is not None:
            raise ValueError(f"resource kind {self.kind!r} takes no amplitudes")

    @property
    def amplitudes(self) -> tuple[float, float]:
        if self.kind == "nmes":
            return self.a, self.b
        if self.kind == "mes":
            return 1.0 / SQ2, 1.0 / SQ2
        raise ValueError("resource kind 'none' has no amplitudes")

    def state(self) -> PureState:
        a, b = self.amplitudes
        return PureState((2, 2), [a, 0.0, 0.0, b], self.parties)


def nmes(a_or_a2: float, b: float | None = None, *, squared: bool = False) -> ResourceSpec:
    """nMES resource from amplitudes (a, b) or from a^2 with squared=True."""
    if squared:
        a2 = float(a_or_a2)
        if not 0.5 <= a2 < 1.0:
            raise ValueError(f"a^2 must lie in [1/2, 1), got {a2}")
        return ResourceSpec("nmes", float(np.sqrt(a2)), float(np.sqrt(1.0 - a2)))
    return ResourceSpec("nmes", float(a_or_a2), b)


def mes() -> ResourceSpec:
    return ResourceSpec("mes")


def no_resource() -> ResourceSpec:
    return ResourceSpec("none")


# ---------------------------------------------------------------------------
# ensemble file format

def _amps_to_json(amps: np.ndarray) -> list:
    out = []
    for z in amps:
        if abs(z.imag) == 0.0:
            out.append(float(z.real))
        else:
            out.append([float(z.real), float(z.imag)])
    return out


def _amps_from_json(raw) -> np.ndarray:
    vals = []
    for entry in raw:
        if isinstance(entry, (list, tuple)):
            if len(entry) != 2:
                raise ValueError(f"complex amplitude entries must be [re, im], got {entry}")
            vals.append(complex(entry[0], entry[1]))
        else:
            vals.append(complex(entry))
    return np.array(vals, dtype=np.complex128)


def ensemble_to_dict(ens: Ensemble) -> dict:
    return {
        "dims": list(ens.dims),
        "ownership": list(ens.ownership),
        "states": [_amps_to_json(s.amps) for s in ens.states],
        "priors": [float(p) for p in ens.priors],
        "labels": list(ens.labels),
    }


def ensemble_from_dict(doc: dict) -> Ensemble:
    for key in ("dims", "states"):
        if key not in doc:
            raise ValueError(f"ensemble document is missing the {key!r} field")
    dims = [int(d) for d in doc["dims"]]
    ownership = doc.get("ownership")
    states = [PureState(dims, _amps_from_json(raw), ownership) for raw in doc["states"]]
    return Ensemble(states, priors=doc.get("priors"), labels=doc.get("labels"))


def save_ensemble(ens: Ensemble, path) -> None:
    with open(path, "w") as fh:
        json.dump(ensemble_to_dict(ens), fh, indent=1)
        fh.write("\n")


def load_ensemble(path) -> Ensemble:
    with open(path) as fh:
        return ensemble_from_dict(json.load(fh))

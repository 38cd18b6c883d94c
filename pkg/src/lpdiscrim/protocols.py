"""Measurement protocols: local measurements, fixed schedules, one-cbit plans.

A Protocol bundles an entangled resource, a per-party measurement schedule
over one or more copies of the unknown state, and an optional one-classical-bit
communication plan. Schedules are fixed in advance; the single adaptive element
anywhere in the model is the receiver's measurement choice inside CommPlan.

Subsystem addressing convention: measurements use single-copy subsystem
indices; the engine shifts them per copy. Indices at or beyond the single-copy
subsystem count address the two appended resource qubits and are legal on the
first copy only (the resource is consumed once).
"""

from __future__ import annotations

import json
import warnings

import numpy as np

from .catalog import ResourceSpec, _amps_from_json, _amps_to_json, mes
from .states import ATOL, Projector

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


class LocalMeasurement:
    """Complete projective measurement performed by one party.

    Parameters
    ----------
    party : str
        The party performing it.
    subsystems : sequence of int
        Subsystem indices measured, in the order the outcome projectors are
        written (first index = most significant factor).
    outcomes : sequence of Projector
        Pairwise orthogonal projectors summing to the identity; ranks >= 1.
    """

    __slots__ = ("party", "subsystems", "outcomes")

    def __init__(self, party: str, subsystems, outcomes):
        self.party = str(party)
        self.subsystems = tuple(int(s) for s in subsystems)
        self.outcomes = tuple(outcomes)
        if len(set(self.subsystems)) != len(self.subsystems):
            raise ValueError(f"measured subsystems must be distinct, got {self.subsystems}")
        if not self.outcomes:
            raise ValueError("measurement needs at least one outcome")
        dims = self.outcomes[0].dims
        d = int(np.prod(dims))
        total = np.zeros((d, d), dtype=np.complex128)
        for p in self.outcomes:
            if p.dims != dims:
                raise ValueError("all outcome projectors must share the same dims")
            total += p.matrix
        for i in range(len(self.outcomes)):
            for j in range(i + 1, len(self.outcomes)):
                cross = self.outcomes[i].matrix @ self.outcomes[j].matrix
                if np.max(np.abs(cross)) > ATOL:
                    raise ValueError(f"outcome projectors {i} and {j} are not orthogonal")
        if not np.allclose(total, np.eye(d), atol=ATOL):
            raise ValueError("outcome projectors do not sum to the identity")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.outcomes[0].dims

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @classmethod
    def from_basis(cls, party: str, subsystems, vectors) -> "LocalMeasurement":
        """Rank-1 measurement from an orthonormal basis, one vector per outcome."""
        vectors = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
        d = vectors[0].shape[0]
        if len(vectors) != d:
            raise ValueError(f"need {d} basis vectors for a rank-1 measurement, got {len(vectors)}")
        dims = _infer_dims(subsystems, d)
        outcomes = [Projector.from_vectors(dims, [v]) for v in vectors]
        return cls(party, subsystems, outcomes)


def _infer_dims(subsystems, total_dim: int) -> tuple[int, ...]:
    # qubit factors unless a single subsystem carries the whole dimension
    n = len(tuple(subsystems))
    if n == 1:
        return (total_dim,)
    if 2 ** n == total_dim:
        return (2,) * n
    raise ValueError(
        f"cannot infer subsystem dims for {n} subsystems of total dimension {total_dim}; "
        "construct the projectors explicitly"
    )


class Schedule:
    """Fixed measurement schedule: per party, one optional measurement per copy."""

    __slots__ = ("copies", "assignments")

    def __init__(self, copies: int, assignments: dict):
        self.copies = int(copies)
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {copies}")
        self.assignments = {str(p): list(ms) for p, ms in assignments.items()}
        for party, ms in self.assignments.items():
            if len(ms) != self.copies:
                raise ValueError(
                    f"party {party!r} lists {len(ms)} slots, schedule has {self.copies} copies"
                )
            for m in ms:
                if m is not None and m.party != party:
                    raise ValueError(f"measurement for party {m.party!r} filed under {party!r}")

    @property
    def parties(self) -> tuple[str, ...]:
        return tuple(sorted(self.assignments))

    def measurement(self, party: str, copy: int):
        return self.assignments[party][copy]


class CommPlan:
    """One classical bit from a sender to a receiver, selecting a measurement.

    The sender's outcome index is mapped to a bit through ``message_map``; the
    receiver performs ``conditional[bit]``. The full sender outcome still
    enters the pooled transcript; only the receiver's basis choice is limited
    to the single bit.
    """

    __slots__ = ("sender", "message_map", "conditional", "receiver")

    kind = "one-cbit"

    def __init__(self, sender: str, message_map, conditional: dict):
        self.sender = str(sender)
        self.message_map = tuple(int(b) for b in message_map)
        if any(b not in (0, 1) for b in self.message_map):
            raise ValueError(f"message map must be over bits, got {self.message_map}")
        self.conditional = {int(k): v for k, v in conditional.items()}
        if sorted(self.conditional) != [0, 1]:
            raise ValueError("conditional must provide a measurement for bit 0 and bit 1")
        receivers = {m.party for m in self.conditional.values()}
        if len(receivers) != 1:
            raise ValueError("both conditional measurements must belong to the same receiver")
        self.receiver = next(iter(receivers))
        if self.receiver == self.sender:
            raise ValueError("sender cannot be its own receiver")
        counts = [self.message_map.count(0), self.message_map.count(1)]
        if 0 in counts:
            raise ValueError("message map never sends one of the bits")
        if counts[0] != counts[1]:
            warnings.warn(
                f"message map {self.message_map} is not balanced across outcomes",
                stacklevel=2,
            )


class Protocol:
    """Resource + schedule + optional communication plan."""

    __slots__ = ("resource", "schedule", "comm")

    def __init__(self, resource: ResourceSpec, schedule: Schedule, comm: CommPlan | None = None):
        self.resource = resource
        self.schedule = schedule
        self.comm = comm
        if comm is not None:
            if schedule.copies != 1:
                raise ValueError("one-cbit protocols are single-copy")
            if comm.sender not in schedule.assignments:
                raise ValueError(f"sender {comm.sender!r} has no schedule entry")
            if schedule.measurement(comm.sender, 0) is None:
                raise ValueError("sender must measure on the single copy")
            recv = schedule.assignments.get(comm.receiver)
            if recv is not None and recv[0] is not None:
                raise ValueError(
                    "receiver's measurement comes from the comm plan; its schedule slot must be idle"
                )
            n_out = schedule.measurement(comm.sender, 0).n_outcomes
            if len(comm.message_map) != n_out:
                raise ValueError(
                    f"message map covers {len(comm.message_map)} outcomes, sender has {n_out}"
                )

    @property
    def parties(self) -> tuple[str, ...]:
        ps = set(self.schedule.parties)
        if self.comm is not None:
            ps.add(self.comm.receiver)
        return tuple(sorted(ps))


# ---------------------------------------------------------------------------
# standard bases and builders

def bell_vectors() -> list[np.ndarray]:
    s = 1.0 / np.sqrt(2.0)
    return [
        np.array([s, 0.0, 0.0, s]),
        np.array([s, 0.0, 0.0, -s]),
        np.array([0.0, s, s, 0.0]),
        np.array([0.0, s, -s, 0.0]),
    ]


def bell_measurement(party: str, subsystems) -> LocalMeasurement:
    """Rank-1 Bell-basis measurement on two qubits, ordered phi+, phi-, psi+, psi-."""
    return LocalMeasurement.from_basis(party, subsystems, bell_vectors())


def build_groisman_protocol(resource: ResourceSpec) -> Protocol:
    """Appended-resource protocol for the eq1 ensemble.

    Alice measures her state qubit and resource qubit in the semilocal basis
    {|00>, |01>, (|10> +/- |11>)/sqrt2}; Bob measures his pair in the Bell
    basis. Outcomes are pooled afterwards, no communication during.
    """
    if resource.kind == "none":
        raise ValueError("this protocol needs an entangled resource")
    s = 1.0 / np.sqrt(2.0)
    alice_vecs = [
        np.array([1.0, 0.0, 0.0, 0.0]),
        np.array([0.0, 1.0, 0.0, 0.0]),
        np.array([0.0, 0.0, s, s]),
        np.array([0.0, 0.0, s, -s]),
    ]
    alice = LocalMeasurement.from_basis("A", (0, 2), alice_vecs)
    bob = bell_measurement("B", (1, 3))
    schedule = Schedule(1, {"A": [alice], "B": [bob]})
    return Protocol(resource, schedule)


def build_alpha_prime_protocol(alphaprime: float, theta: float = 0.0,
                               resource: ResourceSpec | None = None) -> Protocol:
    """Entangled-basis protocol for the eq4 ensembles.

    Alice keeps the semilocal basis of :func:`build_groisman_protocol`; Bob
    measures his state/resource pair in the four entangled vectors
    interpolating at angle ``alphaprime`` between his product pair and its
    conjugate. alphaprime = pi/2 with theta = 0 reproduces the Bell basis in
    order, making the protocol engine-identical to the appended-MES one.
    """
    ap = float(alphaprime)
    if not -ATOL <= ap <= np.pi / 2 + ATOL:
        raise ValueError(f"alphaprime must lie in [0, pi/2], got {alphaprime}")
    if resource is None:
        resource = mes()
    if resource.kind == "none":
        raise ValueError("this protocol needs an entangled resource")
    c, sn = np.cos(theta), np.sin(theta)
    th, thp = np.array([c, sn]), np.array([-sn, c])
    e0, e1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    ca, sa = np.cos(ap / 2.0), np.sin(ap / 2.0)
    bob_vecs = [
        ca * np.kron(th, e0) + sa * np.kron(thp, e1),
        sa * np.kron(th, e0) - ca * np.kron(thp, e1),
        ca * np.kron(th, e1) + sa * np.kron(thp, e0),
        sa * np.kron(th, e1) - ca * np.kron(thp, e0),
    ]
    s = 1.0 / np.sqrt(2.0)
    alice_vecs = [
        np.array([1.0, 0.0, 0.0, 0.0]),
        np.array([0.0, 1.0, 0.0, 0.0]),
        np.array([0.0, 0.0, s, s]),
        np.array([0.0, 0.0, s, -s]),
    ]
    alice = LocalMeasurement.from_basis("A", (0, 2), alice_vecs)
    bob = LocalMeasurement.from_basis("B", (1, 3), bob_vecs)
    schedule = Schedule(1, {"A": [alice], "B": [bob]})
    return Protocol(resource, schedule)


def build_parity_then_bell(resource: ResourceSpec) -> Protocol:
    """Both parties Bell-measure their state/resource qubit pairs.

    The two-outcome even/odd parity measurement followed by a Bell refinement
    equals a single Bell measurement with coarse-grained labels (the Bell
    projectors commute with the parity projectors), so the engine evaluates
    the refined version directly.
    """
    if resource.kind == "none":
        raise ValueError("this protocol needs an entangled resource")
    alice = bell_measurement("A", (0, 2))
    bob = bell_measurement("B", (1, 3))
    schedule = Schedule(1, {"A": [alice], "B": [bob]})
    return Protocol(resource, schedule)


def build_ictp(bob_if_0: LocalMeasurement, bob_if_1: LocalMeasurement,
               message_map=(0, 1, 0, 1)) -> Protocol:
    """Incomplete teleportation protocol: Bell measurement, one cbit, MES resource.

    Alice Bell-measures her state/resource pair and sends the single bit
    ``message_map[outcome]``; the default map sends whether she clicked in the
    {|00> + |11>, |01> + |10>} span. Bob then performs ``bob_if_0`` or
    ``bob_if_1`` on his resource/state pair.
    """
    alice = bell_measurement("A", (0, 2))
    comm = CommPlan("A", message_map, {0: bob_if_0, 1: bob_if_1})
    schedule = Schedule(1, {"A": [alice], "B": [None]})
    return Protocol(mes(), schedule, comm)


# ---------------------------------------------------------------------------
# serialization

def _measurement_to_dict(meas: LocalMeasurement | None):
    if meas is None:
        return None
    return {
        "party": meas.party,
        "subsystems": list(meas.subsystems),
        "dims": list(meas.dims),
        "outcomes": [
            [_amps_to_json(v) for v in p.orthonormal_vectors()] for p in meas.outcomes
        ],
    }


def _measurement_from_dict(doc) -> LocalMeasurement | None:
    if doc is None:
        return None
    dims = tuple(int(d) for d in doc["dims"])
    outcomes = [
        Projector.from_vectors(dims, [_amps_from_json(v) for v in vecs])
        for vecs in doc["outcomes"]
    ]
    return LocalMeasurement(doc["party"], doc["subsystems"], outcomes)


def _resource_to_dict(res: ResourceSpec) -> dict:
    doc = {"kind": res.kind, "parties": list(res.parties)}
    if res.kind == "nmes":
        doc["a"] = res.a
        doc["b"] = res.b
    return doc


def _resource_from_dict(doc) -> ResourceSpec:
    return ResourceSpec(
        doc["kind"],
        doc.get("a"),
        doc.get("b"),
        tuple(doc.get("parties", ("A", "B"))),
    )


def protocol_to_dict(protocol: Protocol) -> dict:
    doc = {
        "resource": _resource_to_dict(protocol.resource),
        "copies": protocol.schedule.copies,
        "schedule": {
            party: [_measurement_to_dict(m) for m in slots]
            for party, slots in protocol.schedule.assignments.items()
        },
        "comm": None,
    }
    if protocol.comm is not None:
        doc["comm"] = {
            "kind": CommPlan.kind,
            "sender": protocol.comm.sender,
            "message_map": list(protocol.comm.message_map),
            "conditional": {
                str(bit): _measurement_to_dict(m)
                for bit, m in protocol.comm.conditional.items()
            },
        }
    return doc


def protocol_from_dict(doc: dict) -> Protocol:
    resource = _resource_from_dict(doc["resource"])
    schedule = Schedule(
        doc["copies"],
        {
            party: [_measurement_from_dict(m) for m in slots]
            for party, slots in doc["schedule"].items()
        },
    )
    comm = None
    if doc.get("comm") is not None:
        cdoc = doc["comm"]
        if cdoc.get("kind") != CommPlan.kind:
            raise ValueError(f"unknown comm plan kind {cdoc.get('kind')!r}")
        comm = CommPlan(
            cdoc["sender"],
            cdoc["message_map"],
            {int(bit): _measurement_from_dict(m) for bit, m in cdoc["conditional"].items()},
        )
    return Protocol(resource, schedule, comm)


def save_protocol(protocol: Protocol, path) -> None:
    with open(path, "w") as fh:
        json.dump(protocol_to_dict(protocol), fh, indent=1)
        fh.write("\n")


def load_protocol(path) -> Protocol:
    with open(path) as fh:
        return protocol_from_dict(json.load(fh))

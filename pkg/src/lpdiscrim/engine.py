"""Exact transcript enumeration and maximum-a-posteriori success accounting.

The engine expands every measurement branch of a protocol against every
hypothesis state, collects the pooled outcome transcripts with their exact
probabilities, and decodes each transcript to the maximum-a-posteriori state
(lowest index on ties). No sampling anywhere; branches below PRUNE_TOL are
dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .catalog import Ensemble
from .protocols import Protocol
from .states import PRUNE_TOL, PureState, apply_local_projector, tensor

PERFECT_TOL = 1e-9
MASS_TOL = 1e-9


@dataclass(eq=False)
class SuccessReport:
    """Result of evaluating a protocol on an ensemble.

    ``table[i, t]`` is Pr(transcript t | state i); every row sums to 1.
    ``decoding[t]`` is the decoded state index and ``per_state_success[i]`` the
    probability that state i is decoded correctly.
    """

    stage_labels: tuple[str, ...]
    transcripts: tuple[tuple[int, ...], ...]
    table: np.ndarray
    priors: np.ndarray
    state_labels: tuple[str, ...]
    decoding: tuple[int, ...]
    p_success: float
    per_state_success: np.ndarray
    perfect: bool

    def transcript_probability(self, transcript, state: int) -> float:
        t = tuple(transcript)
        if t not in self._index:
            return 0.0
        return float(self.table[state, self._index[t]])

    @property
    def _index(self) -> dict:
        if not hasattr(self, "_index_cache"):
            self._index_cache = {t: k for k, t in enumerate(self.transcripts)}
        return self._index_cache

    def recompute_success(self) -> float:
        """P_s recomputed from the stored table; matches p_success to 1e-12."""
        weighted = self.priors[:, None] * self.table
        return float(weighted.max(axis=0).sum())

    def to_dict(self) -> dict:
        entries = []
        for k, t in enumerate(self.transcripts):
            probs = {
                str(i): _sig15(self.table[i, k])
                for i in range(self.table.shape[0])
                if self.table[i, k] >= PRUNE_TOL
            }
            entries.append({"transcript": list(t), "decoded": self.decoding[k], "probs": probs})
        return {
            "stage_labels": list(self.stage_labels),
            "state_labels": list(self.state_labels),
            "priors": [_sig15(p) for p in self.priors],
            "transcripts": entries,
            "p_success": _sig15(self.p_success),
            "per_state_success": [_sig15(p) for p in self.per_state_success],
            "perfect": self.perfect,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _sig15(x: float) -> float:
    return float(f"{float(x):.15g}")


# ---------------------------------------------------------------------------
# layout handling

class _Layout:
    """Global subsystem layout: copies of the ensemble block, then the resource."""

    def __init__(self, ensemble: Ensemble, protocol: Protocol):
        self.n_single = len(ensemble.dims)
        self.copies = protocol.schedule.copies
        self.has_resource = protocol.resource.kind != "none"
        dims = list(ensemble.dims) * self.copies
        ownership = list(ensemble.ownership) * self.copies
        if self.has_resource:
            dims += [2, 2]
            ownership += list(protocol.resource.parties)
        self.dims = tuple(dims)
        self.ownership = tuple(ownership)

    def full_state(self, state: PureState, resource_state: PureState | None) -> PureState:
        factors = [state] * self.copies
        if resource_state is not None:
            factors.append(resource_state)
        return tensor(*factors)

    def global_subsystems(self, meas, copy: int) -> tuple[int, ...]:
        out = []
        for s in meas.subsystems:
            if s < self.n_single:
                out.append(copy * self.n_single + s)
            else:
                if not self.has_resource:
                    raise ValueError(
                        f"measurement references subsystem {s} but the protocol has no resource"
                    )
                if copy != 0:
                    raise ValueError("resource qubits may only be measured on the first copy")
                r = s - self.n_single
                if r >= 2:
                    raise ValueError(f"subsystem index {s} out of range")
                out.append(self.copies * self.n_single + r)
        for g, s in zip(out, meas.subsystems):
            if self.ownership[g] != meas.party:
                raise ValueError(
                    f"party {meas.party!r} cannot measure subsystem {s} "
                    f"owned by {self.ownership[g]!r}"
                )
        return tuple(out)


def _fixed_stages(ensemble: Ensemble, protocol: Protocol, layout: _Layout, party_order):
    stages = []
    for copy in range(layout.copies):
        for party in party_order:
            meas = protocol.schedule.measurement(party, copy)
            if meas is None:
                continue
            stages.append((f"c{copy}:{party}", meas, layout.global_subsystems(meas, copy)))
    return stages


# ---------------------------------------------------------------------------
# evaluation

def evaluate(ensemble: Ensemble, protocol: Protocol, _party_order=None) -> SuccessReport:
    """Evaluate a protocol on an ensemble, exactly.

    Appends the resource (if any) to every hypothesis state, tensors the
    scheduled number of identical copies, expands all measurement stages in
    deterministic order (copies outermost, parties sorted within a copy; a
    one-cbit plan forces sender, bit, receiver), and MAP-decodes the pooled
    transcripts.

    ``_party_order`` overrides the within-copy party order; the transcript
    table is invariant under it (tested), only the stage order changes.
    """
    layout = _Layout(ensemble, protocol)
    resource_state = protocol.resource.state() if layout.has_resource else None
    if _party_order is None:
        party_order = protocol.schedule.parties
    else:
        party_order = tuple(_party_order)
        if sorted(party_order) != sorted(protocol.schedule.parties):
            raise ValueError(f"party order {party_order} does not cover {protocol.schedule.parties}")

    comm = protocol.comm
    if comm is None:
        stages = _fixed_stages(ensemble, protocol, layout, party_order)
        stage_labels = tuple(label for label, _, _ in stages)
        per_state = [
            _expand_fixed(layout.full_state(s, resource_state), stages)
            for s in ensemble.states
        ]
    else:
        sender_meas = protocol.schedule.measurement(comm.sender, 0)
        sender_subs = layout.global_subsystems(sender_meas, 0)
        cond_subs = {
            bit: layout.global_subsystems(m, 0) for bit, m in comm.conditional.items()
        }
        others = [
            (f"c0:{party}", protocol.schedule.measurement(party, 0),
             layout.global_subsystems(protocol.schedule.measurement(party, 0), 0))
            for party in party_order
            if party not in (comm.sender, comm.receiver)
            and protocol.schedule.measurement(party, 0) is not None
        ]
        stage_labels = (f"c0:{comm.sender}", "cbit", f"c0:{comm.receiver}") + tuple(
            label for label, _, _ in others
        )
        per_state = [
            _expand_comm(layout.full_state(s, resource_state), comm, sender_meas,
                         sender_subs, cond_subs, others)
            for s in ensemble.states
        ]

    return _decode(ensemble, stage_labels, per_state)


def evaluate_multicopy(ensemble: Ensemble, protocol: Protocol) -> SuccessReport:
    """Evaluate a fixed multi-copy schedule: no resource, no communication.

    Every copy carries the same hypothesis state; transcripts concatenate the
    per-copy outcomes.
    """
    if protocol.resource.kind != "none":
        raise ValueError("multi-copy evaluation takes no entangled resource")
    if protocol.comm is not None:
        raise ValueError("multi-copy evaluation takes no communication plan")
    return evaluate(ensemble, protocol)


def _expand_fixed(full: PureState, stages) -> dict:
    branches = {(): (full, 1.0)}
    for _, meas, subs in stages:
        new = {}
        for hist, (vec, p) in branches.items():
            for k, proj in enumerate(meas.outcomes):
                post, pk = apply_local_projector(vec, proj, subs)
                joint = p * pk
                if joint < PRUNE_TOL:
                    continue
                new[hist + (k,)] = (post, joint)
        branches = new
    return {hist: p for hist, (vec, p) in branches.items()}


def _expand_comm(full: PureState, comm, sender_meas, sender_subs, cond_subs, others) -> dict:
    out = {}
    for k, proj in enumerate(sender_meas.outcomes):
        post, pk = apply_local_projector(full, proj, sender_subs)
        if pk < PRUNE_TOL:
            continue
        bit = comm.message_map[k]
        recv_meas = comm.conditional[bit]
        for m, rproj in enumerate(recv_meas.outcomes):
            rpost, pm = apply_local_projector(post, rproj, cond_subs[bit])
            joint = pk * pm
            if joint < PRUNE_TOL:
                continue
            branches = {(k, bit, m): (rpost, joint)}
            for _, meas, subs in others:
                new = {}
                for hist, (vec, p) in branches.items():
                    for j, oproj in enumerate(meas.outcomes):
                        opost, pj = apply_local_projector(vec, oproj, subs)
                        joint2 = p * pj
                        if joint2 < PRUNE_TOL:
                            continue
                        new[hist + (j,)] = (opost, joint2)
                branches = new
            for hist, (vec, p) in branches.items():
                out[hist] = p
    return out


def _decode(ensemble: Ensemble, stage_labels, per_state) -> SuccessReport:
    n = ensemble.n_states
    for i, probs in enumerate(per_state):
        mass = float(sum(probs.values()))
        if abs(mass - 1.0) > MASS_TOL:
            raise ValueError(
                f"transcript mass for state {i} is {mass!r}; "
                "the measurement stages do not cover the state space"
            )
    transcripts = tuple(sorted(set().union(*[set(p) for p in per_state])))
    table = np.zeros((n, len(transcripts)))
    for i, probs in enumerate(per_state):
        for k, t in enumerate(transcripts):
            table[i, k] = probs.get(t, 0.0)
    weighted = ensemble.priors[:, None] * table
    decoding = tuple(int(np.argmax(weighted[:, k])) for k in range(len(transcripts)))
    p_success = float(weighted.max(axis=0).sum())
    per_state_success = np.zeros(n)
    for k, dec in enumerate(decoding):
        per_state_success[dec] += table[dec, k]
    return SuccessReport(
        stage_labels=tuple(stage_labels),
        transcripts=transcripts,
        table=table,
        priors=ensemble.priors.copy(),
        state_labels=ensemble.labels,
        decoding=decoding,
        p_success=p_success,
        per_state_success=per_state_success,
        perfect=bool(p_success >= 1.0 - PERFECT_TOL),
    )


# ---------------------------------------------------------------------------
# closed forms

def eq5_formula(alpha: float, alphaprime: float) -> float:
    """Success probability of the entangled-basis protocol at (alpha, alphaprime).

    Equals ``(sin^2((alpha + alphaprime)/2) + cos^2((alpha - alphaprime)/2)) / 2``;
    reaches 1 exactly at alpha = alphaprime = pi/2.
    """
    a, ap = float(alpha), float(alphaprime)
    return 0.5 * (np.sin((a + ap) / 2.0) ** 2 + np.cos((a - ap) / 2.0) ** 2)


def lp_baseline_formula(alpha: float) -> float:
    """Best single-copy no-resource success for the alpha product basis: cos^2(alpha/4)."""
    return float(np.cos(float(alpha) / 4.0) ** 2)


def groisman_formula(ab: float) -> float:
    """Appended-resource success for the eq1 ensemble: 3/4 + ab/2."""
    return 0.75 + 0.5 * float(ab)


def bell_discrimination_formula(n_states: int, ab: float) -> float:
    """Optimal parity-then-Bell success for 3 or 4 Bell states with an nMES."""
    if n_states == 3:
        return 2.0 / 3.0 + (2.0 / 3.0) * float(ab)
    if n_states == 4:
        return 0.5 + float(ab)
    raise ValueError(f"formula covers 3 or 4 Bell states, got {n_states}")

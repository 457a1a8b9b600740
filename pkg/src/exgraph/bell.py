"""Deciding whether a coloured multigraph matches a Bell scenario.

A multigraph is accepted exactly when, for every colour, every connected
component of that colour's factor is complete multipartite. On acceptance the
minimal scenario reads off one party per colour, one measurement per
edge-bearing component, and one outcome per part.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidArgumentError
from .graphs import ColouredMultigraph, factor

ACCEPT = "accept"
REJECT = "reject"


@dataclass(frozen=True)
class BellScenario:
    """Parties with per-measurement outcome counts.

    ``outcome_counts[p][m]`` is the number of outcomes of measurement m of
    party p. Parties follow the multigraph's colour order.
    """

    parties: tuple
    outcome_counts: tuple

    def __post_init__(self):
        parties = tuple(self.parties)
        counts = tuple(tuple(row) for row in self.outcome_counts)
        if not parties:
            raise InvalidArgumentError("a scenario needs at least one party")
        if len(counts) != len(parties):
            raise InvalidArgumentError("outcome_counts must parallel parties")
        for row in counts:
            if any(o < 1 for o in row):
                raise InvalidArgumentError("every measurement needs >= 1 outcome")
        object.__setattr__(self, "parties", parties)
        object.__setattr__(self, "outcome_counts", counts)

    def measurement_count(self, party) -> int:
        return len(self.outcome_counts[self.parties.index(party)])

    def uniform_shorthand(self):
        """(p, m, o) when every party has m measurements of o outcomes, else None."""
        ms = {len(row) for row in self.outcome_counts}
        os_ = {o for row in self.outcome_counts for o in row}
        if len(ms) == 1 and len(os_) == 1:
            return (len(self.parties), ms.pop(), os_.pop())
        return None


@dataclass(frozen=True)
class EventLabel:
    """One vertex's event: (party, measurement, outcome) triples.

    Parties absent from the triples are ignored at this vertex.
    """

    assignments: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(tuple(a) for a in self.assignments))

    def as_dict(self) -> dict:
        return {party: (m, o) for party, m, o in self.assignments}

    def setting(self, party):
        """(measurement, outcome) for a party, or None when ignored."""
        for p, m, o in self.assignments:
            if p == party:
                return (m, o)
        return None


@dataclass(frozen=True)
class BellDecision:
    """Outcome of bell_check: a scenario with labels, or a rejection witness.

    The witness is (colour, component vertices, triple) where the triple
    induces exactly one edge inside that colour's factor.
    """

    verdict: str
    scenario: BellScenario = None
    labels: tuple = None
    witness: tuple = None

    def __post_init__(self):
        if self.verdict not in (ACCEPT, REJECT):
            raise InvalidArgumentError(f"unknown verdict {self.verdict!r}")

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT


def _components(n: int, adj) -> list:
    """Connected components as sorted vertex tuples, ordered by least vertex."""
    seen = [False] * n
    comps = []
    for v in range(n):
        if seen[v]:
            continue
        seen[v] = True
        stack = [v]
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def _parts_of_component(comp, adj) -> list:
    """Parts of a complete multipartite component, ordered by least vertex.

    Vertices share a part exactly when they are non-adjacent; the caller
    guarantees the component is complete multipartite, which makes
    non-adjacency transitive.
    """
    parts = []
    for v in comp:
        for part in parts:
            if part[0] not in adj[v]:
                part.append(v)
                break
        else:
            parts.append([v])
    return [tuple(p) for p in parts]


def _factor_witness(fac, comps):
    """Lexicographically smallest triple inducing exactly one edge within a
    component of the factor, with its component, or None.
    """
    comp_id = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_id[v] = idx
    for i in range(fac.n):
        for j in range(i + 1, fac.n):
            if comp_id[i] != comp_id[j]:
                continue
            for k in range(j + 1, fac.n):
                if comp_id[k] != comp_id[i]:
                    continue
                count = fac.has_edge(i, j) + fac.has_edge(i, k) + fac.has_edge(j, k)
                if count == 1:
                    return (i, j, k), comps[comp_id[i]]
    return None


def bell_check(cm: ColouredMultigraph) -> BellDecision:
    """Accept iff every component of every colour factor is complete multipartite."""
    per_colour = []
    for colour in cm.colours:
        fac = factor(cm, colour)
        adj = fac.adjacency()
        comps = _components(fac.n, adj)
        hit = _factor_witness(fac, comps)
        if hit is not None:
            triple, comp = hit
            return BellDecision(REJECT, witness=(colour, comp, triple))
        per_colour.append((colour, adj, comps))

    counts = []
    assignments = [[] for _ in range(cm.n)]
    for colour, adj, comps in per_colour:
        row = []
        for comp in comps:
            if len(comp) < 2:
                continue
            m = len(row)
            parts = _parts_of_component(comp, adj)
            row.append(len(parts))
            for o, part in enumerate(parts):
                for v in part:
                    assignments[v].append((colour, m, o))
        counts.append(tuple(row))
    scenario = BellScenario(cm.colours, tuple(counts))
    labels = tuple(EventLabel(tuple(a)) for a in assignments)
    return BellDecision(ACCEPT, scenario=scenario, labels=labels)


def label_events(cm: ColouredMultigraph):
    """(scenario, labels) for an accepted multigraph; error on rejection."""
    decision = bell_check(cm)
    if not decision.accepted:
        raise InvalidArgumentError(
            f"multigraph rejected: colour {decision.witness[0]!r} has a "
            f"one-edge triple {decision.witness[2]}")
    return decision.scenario, decision.labels


def scenario_to_multigraph(scenario: BellScenario, events) -> ColouredMultigraph:
    """Multigraph whose vertices are events, with a colour-c edge whenever two
    events share party c's measurement but differ in outcome.
    """
    events = tuple(events)
    for idx, ev in enumerate(events):
        for party, m, o in ev.assignments:
            if party not in scenario.parties:
                raise InvalidArgumentError(f"event {idx}: unknown party {party!r}")
            row = scenario.outcome_counts[scenario.parties.index(party)]
            if not (0 <= m < len(row)):
                raise InvalidArgumentError(f"event {idx}: no measurement {m} for {party!r}")
            if not (0 <= o < row[m]):
                raise InvalidArgumentError(
                    f"event {idx}: outcome {o} out of range for {party!r} measurement {m}")
        if len({p for p, _, _ in ev.assignments}) != len(ev.assignments):
            raise InvalidArgumentError(f"event {idx}: repeated party")
    sets = []
    for party in scenario.parties:
        edges = set()
        for u in range(len(events)):
            su = events[u].setting(party)
            if su is None:
                continue
            for v in range(u + 1, len(events)):
                sv = events[v].setting(party)
                if sv is None:
                    continue
                if su[0] == sv[0] and su[1] != sv[1]:
                    edges.add((u, v))
        sets.append(frozenset(edges))
    return ColouredMultigraph(len(events), scenario.parties, tuple(sets))

"""Reduction calculus on coloured multigraphs and coloured cycles.

Removal and merging apply to any coloured multigraph. The cycle surgeries
(plus-one reduction, edge breaking) and path profiles expect a coloured cycle
in standard labelling, with edge k joining vertices k and k+1 mod n under
exactly one colour.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .graphs import ColouredMultigraph

MIN_REDUCED_CYCLE = 4


@dataclass(frozen=True)
class PathProfile:
    """Maximal monochromatic runs around a coloured cycle, in cyclic order.

    t counts the runs of length two, singles the runs of length one.
    """

    lengths: tuple
    colours: tuple
    t: int
    singles: int

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(self.lengths))
        object.__setattr__(self, "colours", tuple(self.colours))
        if len(self.lengths) != len(self.colours):
            raise InvalidArgumentError("lengths and colours must be parallel")

    @property
    def n(self) -> int:
        return sum(self.lengths)


def remove_edge(cm: ColouredMultigraph, u: int, v: int, colour) -> ColouredMultigraph:
    """Delete one edge from one colour; never decreases the coloured value."""
    key = (min(u, v), max(u, v))
    ci = None
    for idx, c in enumerate(cm.colours):
        if c == colour:
            ci = idx
    if ci is None:
        raise InvalidArgumentError(f"unknown colour {colour!r}")
    if key not in cm.edge_sets[ci]:
        raise InvalidArgumentError(f"edge {key} absent from colour {colour!r}")
    sets = list(cm.edge_sets)
    sets[ci] = sets[ci] - {key}
    return ColouredMultigraph(cm.n, cm.colours, tuple(sets))


def merge_colours(cm: ColouredMultigraph, c1, c2) -> ColouredMultigraph:
    """Reassign every c2 edge to c1, collapsing duplicates; c2 disappears."""
    if c1 == c2:
        raise InvalidArgumentError("cannot merge a colour with itself")
    if c1 not in cm.colours or c2 not in cm.colours:
        raise InvalidArgumentError(f"colours {c1!r}, {c2!r} must both be present")
    i1 = cm.colours.index(c1)
    i2 = cm.colours.index(c2)
    colours = tuple(c for c in cm.colours if c != c2)
    sets = []
    for idx, es in enumerate(cm.edge_sets):
        if idx == i2:
            continue
        if idx == i1:
            sets.append(es | cm.edge_sets[i2])
        else:
            sets.append(es)
    return ColouredMultigraph(cm.n, colours, tuple(sets))


def cycle_word(cm: ColouredMultigraph) -> tuple:
    """The colour word of a standard-labelled coloured cycle: entry k is the
    colour of edge (k, k+1 mod n). Rejects multiple edges and stray edges.
    """
    n = cm.n
    if n < 3:
        raise InvalidArgumentError("a cycle needs at least 3 vertices")
    total = sum(len(es) for es in cm.edge_sets)
    if total != n:
        raise InvalidArgumentError(f"a coloured {n}-cycle needs exactly {n} edges")
    word = []
    for k in range(n):
        key = (min(k, (k + 1) % n), max(k, (k + 1) % n))
        hits = [c for c, es in zip(cm.colours, cm.edge_sets) if key in es]
        if len(hits) != 1:
            raise InvalidArgumentError(
                f"edge {key} must carry exactly one colour, found {len(hits)}")
        word.append(hits[0])
    return tuple(word)


def canonical_cycle_word(cm: ColouredMultigraph) -> str:
    """Lexicographically least cycle word over rotations, reflections, and
    colour renamings: a display label for the colouring class as a whole
    rather than for one particular labelling.
    """
    word = cycle_word(cm)
    n = len(word)
    best = None
    for perm in itertools.permutations(cm.colours):
        rename = dict(zip(cm.colours, perm))
        renamed = tuple(rename[c] for c in word)
        for base in (renamed, renamed[::-1]):
            for r in range(n):
                cand = base[r:] + base[:r]
                if best is None or cand < best:
                    best = cand
    return "".join(best)


def _from_word(word, colours) -> ColouredMultigraph:
    n = len(word)
    sets = []
    for c in colours:
        sets.append(frozenset((k, (k + 1) % n) for k in range(n) if word[k] == c))
    return ColouredMultigraph(n, colours, tuple(sets))


def plus_one_reduce(cm: ColouredMultigraph, i: int) -> ColouredMultigraph:
    """Contract a three-edge monochromatic run into one edge, dropping the two
    interior vertices; the coloured value of the result is exactly one less.

    Needs edges (i-1, i), (i, i+1), (i+1, i+2) of one colour A with the edges
    before and after not coloured A. Surviving vertices are relabelled in
    order.
    """
    word = cycle_word(cm)
    n = cm.n
    if not (0 <= i < n):
        raise InvalidArgumentError(f"vertex {i} out of range")
    if n - 2 < MIN_REDUCED_CYCLE:
        raise InvalidArgumentError(
            f"reduction would leave {n - 2} < {MIN_REDUCED_CYCLE} vertices")
    a = word[(i - 1) % n]
    if not (word[i] == a and word[(i + 1) % n] == a):
        raise InvalidArgumentError(
            "edges (i-1, i), (i, i+1), (i+1, i+2) must share a colour")
    if word[(i - 2) % n] == a or word[(i + 2) % n] == a:
        raise InvalidArgumentError(
            "edges flanking the three-edge run must have other colours")
    ip1 = (i + 1) % n
    survivors = [v for v in range(n) if v not in (i, ip1)]
    relabel = {v: k for k, v in enumerate(survivors)}
    sets = {c: set() for c in cm.colours}
    for c, es in zip(cm.colours, cm.edge_sets):
        for u, v in es:
            if u in relabel and v in relabel:
                sets[c].add((relabel[u], relabel[v]))
    sets[a].add((relabel[(i - 1) % n], relabel[(i + 2) % n]))
    return ColouredMultigraph(
        n - 2, cm.colours, tuple(frozenset(sets[c]) for c in cm.colours))


def break_edge(cm: ColouredMultigraph, u: int, v: int) -> ColouredMultigraph:
    """Split one cycle edge by a fresh vertex into two edges of its colour.

    Applied to two different edges in turn, this grows an (n-2)-cycle into an
    n-cycle whose coloured value is exactly one more.
    """
    word = cycle_word(cm)
    n = cm.n
    key = (min(u, v), max(u, v))
    k = None
    for pos in range(n):
        if key == (min(pos, (pos + 1) % n), max(pos, (pos + 1) % n)):
            k = pos
    if k is None:
        raise InvalidArgumentError(f"{key} is not an edge of the cycle")
    c = word[k]
    new_word = list(word[:k]) + [c, c] + list(word[k + 1:])
    return _from_word(tuple(new_word), cm.colours)


def path_profile(cm: ColouredMultigraph) -> PathProfile:
    """Monochromatic run lengths in cyclic order, starting at the first colour
    boundary; a single run of length n when the cycle is monochromatic.
    """
    word = cycle_word(cm)
    n = cm.n
    start = None
    for k in range(n):
        if word[k] != word[(k - 1) % n]:
            start = k
            break
    if start is None:
        lengths, colours = (n,), (word[0],)
    else:
        lengths = []
        colours = []
        run = 1
        for off in range(1, n + 1):
            prev = word[(start + off - 1) % n]
            cur = word[(start + off) % n]
            if off < n and cur == prev:
                run += 1
            else:
                lengths.append(run)
                colours.append(prev)
                run = 1
        lengths, colours = tuple(lengths), tuple(colours)
    t = sum(1 for x in lengths if x == 2)
    singles = sum(1 for x in lengths if x == 1)
    return PathProfile(lengths, colours, t, singles)

"""Simple graphs, edge-coloured multigraphs, enumeration up to symmetry, and
exact classical bounds.

Vertices are integers 0..n-1. Simple graphs store unordered edges; coloured
multigraphs keep one edge set per colour, and the same vertex pair may appear
under several colours. The JSON schema is shared by both:
``{"n": ..., "colours": ["A", ...], "edges": [{"u": ..., "v": ..., "colour": "A"}, ...]}``
with simple graphs using the single colour ``"_"``.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

from .errors import InvalidArgumentError, ResourceLimitError

INDEPENDENCE_CAP = 64
SUBSET_SCAN_CAP = 16
AUTOMORPHISM_CAP = 16
COLOURING_BUDGET = 1 << 20

SIMPLE_COLOUR = "_"


def _normalize_edges(n, edges):
    out = set()
    for u, v in edges:
        if u == v:
            raise InvalidArgumentError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidArgumentError(f"edge ({u},{v}) out of range for n={n}")
        out.add((min(u, v), max(u, v)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgumentError("vertex count must be non-negative")
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def sorted_edges(self) -> list:
        return sorted(self.edges)


@dataclass(frozen=True)
class ColouredMultigraph:
    """Edge-coloured multigraph: one simple edge set per colour."""

    n: int
    colours: tuple
    edge_sets: tuple

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgumentError("vertex count must be non-negative")
        colours = tuple(self.colours)
        if len(set(colours)) != len(colours):
            raise InvalidArgumentError("duplicate colour identifiers")
        sets = tuple(self.edge_sets)
        if len(sets) != len(colours):
            raise InvalidArgumentError("edge_sets must parallel colours")
        sets = tuple(_normalize_edges(self.n, es) for es in sets)
        object.__setattr__(self, "colours", colours)
        object.__setattr__(self, "edge_sets", sets)

    def edge_set(self, colour) -> frozenset:
        try:
            return self.edge_sets[self.colours.index(colour)]
        except ValueError:
            raise InvalidArgumentError(f"unknown colour {colour!r}") from None

    def has_colour(self, colour) -> bool:
        return colour in self.colours

    def all_edges(self) -> list:
        """Sorted (colour_index, u, v) triples."""
        out = []
        for ci, es in enumerate(self.edge_sets):
            for u, v in es:
                out.append((ci, u, v))
        out.sort()
        return out


def graph_to_multigraph(g: Graph) -> ColouredMultigraph:
    return ColouredMultigraph(g.n, (SIMPLE_COLOUR,), (g.edges,))


def cycle(n: int) -> Graph:
    """The cycle C_n with edges {i, (i+1) mod n}."""
    if n < 3:
        raise InvalidArgumentError("cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complement(g: Graph) -> Graph:
    edges = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                edges.add((u, v))
    return Graph(g.n, frozenset(edges))


def induced_subgraph(g: Graph, vertices) -> Graph:
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < g.n):
            raise InvalidArgumentError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(vs)}
    edges = set()
    for u, v in g.edges:
        if u in index and v in index:
            edges.add((index[u], index[v]))
    return Graph(len(vs), frozenset(edges))


def shadow(cm: ColouredMultigraph) -> Graph:
    edges = set()
    for es in cm.edge_sets:
        edges |= es
    return Graph(cm.n, frozenset(edges))


def factor(cm: ColouredMultigraph, colour) -> Graph:
    """The single-colour subgraph of one colour."""
    return Graph(cm.n, cm.edge_set(colour))


def coloured_cycle(word, colours=None) -> ColouredMultigraph:
    """A coloured cycle from a colour word: edge (i, i+1 mod n) gets word[i]."""
    word = tuple(word)
    n = len(word)
    if n < 3:
        raise InvalidArgumentError("cycle needs at least 3 vertices")
    if colours is None:
        colours = tuple(sorted(set(word)))
    else:
        colours = tuple(colours)
        if not set(word) <= set(colours):
            raise InvalidArgumentError("word uses colours outside the given list")
    sets = []
    for c in colours:
        sets.append(frozenset((i, (i + 1) % n) for i in range(n) if word[i] == c))
    return ColouredMultigraph(n, colours, tuple(sets))


def maximum_independent_set(g: Graph) -> frozenset:
    """One maximum independent set via bitmask branch-and-bound.

    Vertices are visited in descending-degree order and branches are pruned
    with a greedy clique-cover bound; the first optimum found in that fixed
    order is returned, so the witness is deterministic.
    """
    if g.n > INDEPENDENCE_CAP:
        raise ResourceLimitError(f"independence sets capped at n={INDEPENDENCE_CAP}")
    if g.n == 0:
        return frozenset()
    adj_sets = g.adjacency()
    order = sorted(range(g.n), key=lambda v: (-len(adj_sets[v]), v))
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * g.n
    for u, v in g.edges:
        adj[pos[u]] |= 1 << pos[v]
        adj[pos[v]] |= 1 << pos[u]
    full = (1 << g.n) - 1

    def clique_cover_bound(mask):
        count = 0
        while mask:
            v = (mask & -mask).bit_length() - 1
            mask &= ~(1 << v)
            cand = mask & adj[v]
            while cand:
                u = (cand & -cand).bit_length() - 1
                mask &= ~(1 << u)
                cand &= adj[u] & ~(1 << u)
            count += 1
        return count

    best = 0
    best_chosen = 0

    def search(mask, chosen, size):
        nonlocal best, best_chosen
        if not mask:
            if size > best:
                best = size
                best_chosen = chosen
            return
        if size + clique_cover_bound(mask) <= best:
            return
        v = (mask & -mask).bit_length() - 1
        search(mask & ~adj[v] & ~(1 << v), chosen | (1 << v), size + 1)
        search(mask & ~(1 << v), chosen, size)

    search(full, 0, 0)
    return frozenset(order[i] for i in range(g.n) if best_chosen >> i & 1)


def independence_number(g: Graph) -> int:
    """Exact independence number via bitmask branch-and-bound."""
    return len(maximum_independent_set(g))


def has_odd_hole_or_antihole(g: Graph):
    """A vertex subset inducing an odd hole or antihole of size >= 5, or None.

    Subsets are scanned in ascending size, lexicographic order within a size,
    so the witness is deterministic.
    """
    if g.n > SUBSET_SCAN_CAP:
        raise ResourceLimitError(f"hole scan capped at n={SUBSET_SCAN_CAP}")

    def is_cycle(h: Graph) -> bool:
        if len(h.edges) != h.n:
            return False
        adj = h.adjacency()
        if any(len(a) != 2 for a in adj):
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return len(seen) == h.n

    for size in range(5, g.n + 1, 2):
        for subset in itertools.combinations(range(g.n), size):
            h = induced_subgraph(g, subset)
            if is_cycle(h) or is_cycle(complement(h)):
                return tuple(subset)
    return None


def is_complete_multipartite(g: Graph):
    """(parts, None) when g is complete multipartite, else (None, witness).

    The witness is the lexicographically smallest vertex triple inducing an
    edge plus a vertex adjacent to neither endpoint. Parts are the connected
    components of the complement, ordered by smallest vertex.
    """
    adj = g.adjacency()
    for i, j, k in itertools.combinations(range(g.n), 3):
        count = g.has_edge(i, j) + g.has_edge(i, k) + g.has_edge(j, k)
        if count == 1:
            return None, (i, j, k)
    comp = complement(g)
    cadj = comp.adjacency()
    seen = [False] * g.n
    parts = []
    for v in range(g.n):
        if seen[v]:
            continue
        part = []
        stack = [v]
        seen[v] = True
        while stack:
            x = stack.pop()
            part.append(x)
            for y in cadj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        parts.append(tuple(sorted(part)))
    return tuple(parts), None


def automorphisms(g: Graph) -> list:
    """All adjacency-preserving vertex permutations, by backtracking."""
    if g.n > AUTOMORPHISM_CAP:
        raise ResourceLimitError(f"automorphisms capped at n={AUTOMORPHISM_CAP}")
    n = g.n
    adj = g.adjacency()
    deg = [len(a) for a in adj]
    perms = []
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            perms.append(tuple(image))
            return
        for cand in range(n):
            if used[cand] or deg[cand] != deg[i]:
                continue
            ok = True
            for j in range(i):
                if g.has_edge(i, j) != g.has_edge(cand, image[j]):
                    ok = False
                    break
            if ok:
                image[i] = cand
                used[cand] = True
                extend(i + 1)
                used[cand] = False
                image[i] = -1

    extend(0)
    return perms


@dataclass(frozen=True)
class ColouringClass:
    """One orbit of edge colourings under Aut(g) x colour permutations."""

    representative: ColouredMultigraph
    orbit_size: int
    assignment: tuple
    surjective: bool


def _edge_permutations(g: Graph, vertex_perms):
    edges = g.sorted_edges()
    index = {e: i for i, e in enumerate(edges)}
    out = []
    for perm in vertex_perms:
        mapped = []
        for u, v in edges:
            a, b = perm[u], perm[v]
            mapped.append(index[(min(a, b), max(a, b))])
        out.append(tuple(mapped))
    return out


def colour_names(k: int) -> tuple:
    if k > 26:
        raise InvalidArgumentError("at most 26 colours supported")
    return tuple(chr(ord("A") + i) for i in range(k))


def assignment_to_multigraph(g: Graph, assignment, k: int) -> ColouredMultigraph:
    names = colour_names(k)
    edges = g.sorted_edges()
    sets = [set() for _ in range(k)]
    for e, c in zip(edges, assignment):
        sets[c].add(e)
    return ColouredMultigraph(g.n, names, tuple(frozenset(s) for s in sets))


def enumerate_colourings(g: Graph, k: int, surjective_only: bool = False,
                         budget: int = COLOURING_BUDGET) -> list:
    """All k-colourings of g's edges up to Aut(g) x S_k, as ColouringClass list.

    Assignments are scanned in lexicographic order, so each representative is
    the lexicographic minimum of its orbit and the result list is sorted.
    """
    if k < 1:
        raise InvalidArgumentError("colour count must be positive")
    edges = g.sorted_edges()
    m = len(edges)
    total = k ** m
    if total > budget:
        raise ResourceLimitError(f"{k}^{m} colourings exceed budget {budget}")
    edge_perms = set(_edge_permutations(g, automorphisms(g)))
    colour_perms = list(itertools.permutations(range(k)))
    group = [(ep, cp) for ep in edge_perms for cp in colour_perms]

    def apply(action, word):
        ep, cp = action
        out = [0] * m
        for e in range(m):
            out[ep[e]] = cp[word[e]]
        return tuple(out)

    seen = bytearray(total)
    classes = []
    for code in range(total):
        if seen[code]:
            continue
        word = []
        c = code
        for _ in range(m):
            word.append(c % k)
            c //= k
        word.reverse()
        word = tuple(word)
        orbit = {apply(a, word) for a in group}
        for w in orbit:
            wc = 0
            for d in w:
                wc = wc * k + d
            seen[wc] = 1
        surjective = len(set(word)) == k
        if surjective_only and not surjective:
            continue
        classes.append(ColouringClass(
            representative=assignment_to_multigraph(g, word, k),
            orbit_size=len(orbit),
            assignment=word,
            surjective=surjective,
        ))
    return classes


def canonical_colouring(g: Graph, assignment, k: int) -> tuple:
    """Lexicographic minimum of an assignment's orbit under Aut(g) x S_k."""
    edges = g.sorted_edges()
    m = len(edges)
    assignment = tuple(assignment)
    if len(assignment) != m:
        raise InvalidArgumentError("assignment length must match edge count")
    edge_perms = set(_edge_permutations(g, automorphisms(g)))
    best = None
    for ep in edge_perms:
        for cp in itertools.permutations(range(k)):
            out = [0] * m
            for e in range(m):
                out[ep[e]] = cp[assignment[e]]
            cand = tuple(out)
            if best is None or cand < best:
                best = cand
    return best


def multigraph_to_dict(cm: ColouredMultigraph) -> dict:
    edges = []
    for ci, u, v in cm.all_edges():
        edges.append({"u": u, "v": v, "colour": cm.colours[ci]})
    return {"n": cm.n, "colours": list(cm.colours), "edges": edges}


def multigraph_from_dict(data: dict) -> ColouredMultigraph:
    try:
        n = data["n"]
        colours = tuple(data["colours"])
        rows = data["edges"]
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed multigraph JSON: {exc}") from None
    sets = {c: set() for c in colours}
    for row in rows:
        c = row["colour"]
        if c not in sets:
            raise InvalidArgumentError(f"edge colour {c!r} not in colours list")
        sets[c].add((row["u"], row["v"]))
    return ColouredMultigraph(n, colours, tuple(frozenset(sets[c]) for c in colours))


def multigraph_to_json(cm: ColouredMultigraph) -> str:
    return json.dumps(multigraph_to_dict(cm), indent=2, sort_keys=True) + "\n"


def multigraph_from_json(text: str) -> ColouredMultigraph:
    return multigraph_from_dict(json.loads(text))


def graph_to_json(g: Graph) -> str:
    return multigraph_to_json(graph_to_multigraph(g))


def graph_from_json(text: str) -> Graph:
    cm = multigraph_from_json(text)
    return shadow(cm)


def multigraph_digest(cm: ColouredMultigraph) -> str:
    return hashlib.sha256(multigraph_to_json(cm).encode()).hexdigest()[:16]

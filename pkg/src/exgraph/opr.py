"""Orthogonal projective representations (OPRs) over tensor products.

An OPR assigns each vertex a product projector, one factor per party, plus a
unit handle vector in the product space. A factor stored as None means the
identity on that party. All arithmetic is real symmetric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_forms import p_n, theta_closed_form_cycle
from .errors import InvalidArgumentError
from .graphs import ColouredMultigraph, Graph

DEFAULT_VERIFY_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(eq=False)
class OPR:
    """Product projectors per vertex plus a handle vector.

    dims: local dimension per party.
    projectors: per vertex, a tuple with one entry per party, each a d x d
        array or None (identity on that party).
    handle: vector of length prod(dims).
    """

    dims: tuple
    projectors: tuple
    handle: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise InvalidArgumentError("party dimensions must be positive")
        big_d = math.prod(dims)
        rows = []
        for i, row in enumerate(self.projectors):
            row = tuple(row)
            if len(row) != len(dims):
                raise InvalidArgumentError(f"vertex {i}: expected {len(dims)} factors")
            frozen = []
            for j, mat in enumerate(row):
                if mat is None:
                    frozen.append(None)
                    continue
                mat = np.asarray(mat, dtype=np.float64)
                if mat.shape != (dims[j], dims[j]):
                    raise InvalidArgumentError(
                        f"vertex {i} party {j}: shape {mat.shape} != ({dims[j]}, {dims[j]})")
                frozen.append(_frozen(mat))
            rows.append(tuple(frozen))
        handle = np.asarray(self.handle, dtype=np.float64).reshape(-1)
        if handle.shape != (big_d,):
            raise InvalidArgumentError(
                f"handle has length {handle.shape[0]}, expected {big_d}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "projectors", tuple(rows))
        object.__setattr__(self, "handle", _frozen(handle))

    @property
    def n(self) -> int:
        return len(self.projectors)

    @property
    def parties(self) -> int:
        return len(self.dims)

    def factor(self, i: int, party: int) -> np.ndarray:
        """The stored factor, materializing identity markers."""
        mat = self.projectors[i][party]
        if mat is None:
            return np.eye(self.dims[party])
        return np.array(mat)

    def full_projector(self, i: int) -> np.ndarray:
        out = np.ones((1, 1))
        for j in range(self.parties):
            out = np.kron(out, self.factor(i, j))
        return out

    def vertex_probability(self, i: int) -> float:
        return float(self.handle @ self.full_projector(i) @ self.handle)

    def vertex_probabilities(self) -> np.ndarray:
        return np.array([self.vertex_probability(i) for i in range(self.n)])

    def objective(self) -> float:
        return float(self.vertex_probabilities().sum())


@dataclass(frozen=True)
class OPRCheck:
    """Worst-case residuals of an OPR against a graph's exclusivity structure."""

    idempotency: float
    hermiticity: float
    orthogonality: float
    handle_norm: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.idempotency, self.hermiticity,
                   self.orthogonality, self.handle_norm) <= self.tol


def _factor_residuals(opr: OPR):
    idem = 0.0
    herm = 0.0
    for row in opr.projectors:
        for mat in row:
            if mat is None:
                continue
            idem = max(idem, float(np.linalg.norm(mat @ mat - mat)))
            herm = max(herm, float(np.linalg.norm(mat - mat.T)))
    return idem, herm


def verify_opr(target, opr: OPR, tol: float = DEFAULT_VERIFY_TOL) -> OPRCheck:
    """Residual report for an OPR against a Graph or ColouredMultigraph.

    Against a coloured multigraph, each colour-c edge must be orthogonal on
    party c's factor; against a simple graph, the full product projectors of
    the endpoints must be orthogonal. The Frobenius norm of a Kronecker
    product is the product of factor norms, so full products are never formed.
    """
    if isinstance(target, ColouredMultigraph):
        if target.n != opr.n:
            raise InvalidArgumentError(
                f"graph has {target.n} vertices, OPR has {opr.n}")
        if len(target.colours) != opr.parties:
            raise InvalidArgumentError(
                f"graph has {len(target.colours)} colours, OPR has {opr.parties} parties")
        orth = 0.0
        for ci, edge_set in enumerate(target.edge_sets):
            for u, v in sorted(edge_set):
                res = float(np.linalg.norm(opr.factor(u, ci) @ opr.factor(v, ci)))
                orth = max(orth, res)
    elif isinstance(target, Graph):
        if target.n != opr.n:
            raise InvalidArgumentError(
                f"graph has {target.n} vertices, OPR has {opr.n}")
        orth = 0.0
        for u, v in target.sorted_edges():
            res = 1.0
            for j in range(opr.parties):
                res *= float(np.linalg.norm(opr.factor(u, j) @ opr.factor(v, j)))
            orth = max(orth, res)
    else:
        raise InvalidArgumentError(f"cannot verify against {type(target).__name__}")
    idem, herm = _factor_residuals(opr)
    hnorm = abs(float(np.linalg.norm(opr.handle)) - 1.0)
    return OPRCheck(idem, herm, orth, hnorm, tol)


def umbrella_opr(n: int) -> OPR:
    """The single-party rank-1 umbrella OPR of C_n in dimension 3.

    Vectors u_k = (cos phi, sin phi cos(k pi (n-1)/n), sin phi sin(k pi (n-1)/n))
    with cos^2 phi = p_n; handle (1, 0, 0). Consecutive vectors are orthogonal
    and the objective equals the cycle's Lovász number.
    """
    prob = p_n(n)
    cphi = math.sqrt(prob)
    sphi = math.sqrt(1.0 - prob)
    projectors = []
    for k in range(n):
        ang = k * math.pi * (n - 1) / n
        u = np.array([cphi, sphi * math.cos(ang), sphi * math.sin(ang)])
        projectors.append((np.outer(u, u),))
    handle = np.array([1.0, 0.0, 0.0])
    opr = OPR((3,), tuple(projectors), handle)
    assert abs(opr.objective() - theta_closed_form_cycle(n)) < 1e-9
    return opr


def _pattern_colours(cm: ColouredMultigraph, i: int):
    """Colours (path, next) of the four-vertex pattern starting at i - 1.

    Requires edges (i-1, i) and (i, i+1) of one colour and (i+1, i+2) of a
    different colour, each present under exactly one colour.
    """
    n = cm.n
    needed = [((i - 1) % n, i), (i, (i + 1) % n), ((i + 1) % n, (i + 2) % n)]
    found = []
    for u, v in needed:
        if u == v:
            raise InvalidArgumentError("cycle too short for the pattern")
        key = (min(u, v), max(u, v))
        hits = [ci for ci, es in enumerate(cm.edge_sets) if key in es]
        if len(hits) != 1:
            raise InvalidArgumentError(
                f"edge {key} must carry exactly one colour, found {len(hits)}")
        found.append(hits[0])
    if found[0] != found[1]:
        raise InvalidArgumentError(
            "edges (i-1, i) and (i, i+1) must share a colour")
    if found[2] == found[1]:
        raise InvalidArgumentError(
            "edge (i+1, i+2) must differ in colour from the path")
    return found[1], found[2]


def swap_path_substitution(opr: OPR, cm: ColouredMultigraph, i: int) -> OPR:
    """Exchange the projector pair at the end of a monochromatic size-two path.

    With edges (i-1, i), (i, i+1) of colour A and (i+1, i+2) of colour B, the
    vertices i and i+1 are reassigned
        Pi_i'    = Pi_i^A (x) (I - Pi_{i+1}^B),
        Pi_{i+1}' = I (x) Pi_{i+1}^B,
    all other factors becoming identities at those two vertices. The pair sum
    is unchanged whenever the input has the factored form Pi_i = Pi_i^A (x) I
    and Pi_{i+1} = (I - Pi_i^A) (x) Pi_{i+1}^B, so the objective is preserved
    and the result is an OPR of the shadow (and of the colouring in which edge
    (i, i+1) is moved to colour B, see swapped_colouring).
    """
    if not (0 <= i < cm.n):
        raise InvalidArgumentError(f"vertex {i} out of range")
    if cm.n != opr.n or len(cm.colours) != opr.parties:
        raise InvalidArgumentError("multigraph and OPR shapes disagree")
    a, b = _pattern_colours(cm, i)
    ip1 = (i + 1) % cm.n
    parties = opr.parties
    row_i = [None] * parties
    row_i[a] = opr.factor(i, a)
    row_i[b] = np.eye(opr.dims[b]) - opr.factor(ip1, b)
    row_ip1 = [None] * parties
    row_ip1[b] = opr.factor(ip1, b)
    projectors = list(opr.projectors)
    projectors[i] = tuple(row_i)
    projectors[ip1] = tuple(row_ip1)
    return OPR(opr.dims, tuple(projectors), opr.handle)


def swapped_colouring(cm: ColouredMultigraph, i: int) -> ColouredMultigraph:
    """The colouring matched by swap_path_substitution's output: edge
    (i, i+1) moves from the path colour to the follow-up colour.
    """
    a, b = _pattern_colours(cm, i)
    ip1 = (i + 1) % cm.n
    key = (min(i, ip1), max(i, ip1))
    sets = [set(es) for es in cm.edge_sets]
    sets[a].discard(key)
    sets[b].add(key)
    return ColouredMultigraph(cm.n, cm.colours, tuple(frozenset(s) for s in sets))

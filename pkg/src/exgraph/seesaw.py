"""See-saw lower bounds for the Lovász number and its coloured variant.

Each search runs several independently seeded coordinate-ascent restarts.
A plain restart frequently lands on a sub-optimal stationary configuration,
so every restart is extended into a chain of annealed "kicks": the best
projector family found so far is perturbed by scaled Gaussian noise, re-run
to convergence through the kernel's greedy feasible initializer, and kept
only if it improves the objective. Kicks cycle through perturbation shapes
(everything, one party's factors, a single vertex) with a geometrically
shrinking scale. Exploration segments run on a capped sweep budget at a
loosened tolerance, because they only need to locate basins; the champion
configuration pooled across restarts is then refit and polished at the
caller's full tolerance. Finally the search ascends once from a classical
configuration built on a maximum independent set, whose starting objective
is exactly the independence number, and returns the better of the two: the
reported value therefore never falls below the independence number beyond
monotonicity slack, whatever the random draws did. The objective never
decreases within any single coordinate-ascent run, and the whole search is
deterministic given the seed.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import (INDEPENDENCE_CAP, ColouredMultigraph, Graph,
                     graph_to_multigraph, maximum_independent_set, shadow)
from .opr import OPR, OPRCheck, verify_opr

DEFAULT_MAX_DIM = 256
DEFAULT_RESTARTS = 20
DEFAULT_MAX_ITERS = 3000
DEFAULT_TOL = 1e-9
DEFAULT_KICKS = 200
DEFAULT_POLISH = 800
RANK_EPS = 1e-12
NULL_EPS = 1e-9
CHAIN_EPS_HI = 1.0
CHAIN_EPS_LO = 1e-3
POLISH_EPS_HI = 0.05
POLISH_EPS_LO = 1e-5
EXPLORE_MAX_ITERS = 350
EXPLORE_TOL = 1e-9
CHAMPION_STREAM = 10 ** 6
RETRY_SPREAD = 1e-4
REPORT_CHECK_TOL = 1e-7


def max_product_dim() -> int:
    """Configured cap on the product dimension (env EXGRAPH_MAX_DIM)."""
    return int(os.environ.get("EXGRAPH_MAX_DIM", str(DEFAULT_MAX_DIM)))


@dataclass(eq=False)
class SeesawReport:
    """Best value found by a see-saw search, with its representation.

    value is the handle's eigenvalue at the best configuration and equals the
    sum of vertex_probabilities to within 1e-10. iterations counts sweeps
    across every restart and kick; converged and min_delta describe the run
    that produced the final configuration.
    """

    value: float
    vertex_probabilities: np.ndarray
    restarts_used: int
    iterations: int
    residuals: OPRCheck
    seed: int
    converged: bool
    min_delta: float
    dims: tuple
    escalated: bool
    chain_values: tuple
    opr: OPR

    def __post_init__(self):
        probs = np.asarray(self.vertex_probabilities, dtype=np.float64)
        probs.setflags(write=False)
        object.__setattr__(self, "vertex_probabilities", probs)
        if abs(self.value - float(probs.sum())) > 1e-10:
            raise InvalidArgumentError("value must equal the probability sum")
        if probs.min() < -1e-8 or probs.max() > 1.0 + 1e-8:
            raise InvalidArgumentError("vertex probabilities must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "vertex_probabilities": [float(p) for p in self.vertex_probabilities],
            "restarts_used": self.restarts_used,
            "iterations": self.iterations,
            "residuals": {
                "idempotency": self.residuals.idempotency,
                "hermiticity": self.residuals.hermiticity,
                "orthogonality": self.residuals.orthogonality,
                "handle_norm": self.residuals.handle_norm,
                "tol": self.residuals.tol,
                "passed": self.residuals.passed,
            },
            "seed": self.seed,
            "converged": self.converged,
            "min_delta": self.min_delta,
            "dims": list(self.dims),
            "escalated": self.escalated,
            "chain_values": list(self.chain_values),
        }


def _neighbour_arrays(cm: ColouredMultigraph):
    """Flattened per-(vertex, party) sorted neighbour lists for the kernels."""
    n = cm.n
    p_count = len(cm.colours)
    adj = [[set() for _ in range(p_count)] for _ in range(n)]
    for j, es in enumerate(cm.edge_sets):
        for u, v in es:
            adj[u][j].add(v)
            adj[v][j].add(u)
    ptr = np.zeros(n * p_count + 1, dtype=np.int64)
    idx = []
    k = 0
    for i in range(n):
        for j in range(p_count):
            for nb in sorted(adj[i][j]):
                idx.append(nb)
                k += 1
            ptr[i * p_count + j + 1] = k
    return ptr, np.asarray(idx, dtype=np.int64)


def _drive(cm: ColouredMultigraph, dims, restarts, max_iters, tol, seed,
           kicks, polish):
    """Multi-restart kick-chain search with a classical floor; returns the
    raw best configuration."""
    ns = _kernels.kernels()
    n = cm.n
    p_count = len(dims)
    dmax = max(dims)
    dims_a = np.asarray(dims, dtype=np.int64)
    ptr, idx = _neighbour_arrays(cm)
    totals = {"sweeps": 0}

    def extract(proj):
        out = np.zeros((n, p_count, dmax))
        for i in range(n):
            for j in range(p_count):
                w, v = ns.jacobi_eigh(np.ascontiguousarray(proj[i, j]))
                b = int(np.argmax(w))
                if w[b] > 0.5:
                    out[i, j] = v[:, b]
        return out

    explore_iters = min(max_iters, EXPLORE_MAX_ITERS)
    explore_tol = max(tol, EXPLORE_TOL)

    def run(gauss, iters_cap, seg_tol):
        proj, psi, value, probs, iters, converged, min_delta = ns.seesaw_run(
            dims_a, ptr, idx, gauss, iters_cap, seg_tol, RANK_EPS, NULL_EPS)
        totals["sweeps"] += int(iters)
        return {
            "value": float(value), "proj": proj, "psi": psi,
            "probs": probs, "u": extract(proj),
            "converged": bool(converged), "min_delta": float(min_delta),
        }

    def kick_chain(state, rng, count, eps_hi, eps_lo, iters_cap, seg_tol):
        for k in range(count):
            eps = eps_hi * (eps_lo / eps_hi) ** (k / max(1, count - 1))
            mode = k % 4
            noise = rng.normal(size=(n, p_count, dmax))
            if mode == 1 and p_count > 1:
                noise[:, 1, :] = 0.0
            elif mode == 2 and p_count > 1:
                noise[:, 0, :] = 0.0
            elif mode == 3 or (p_count == 1 and mode in (1, 2)):
                vtx = int(rng.integers(0, n))
                mask = np.zeros((n, 1, 1))
                mask[vtx] = 1.0
                noise = noise * mask
            cand = run(state["u"] + eps * noise, iters_cap, seg_tol)
            if cand["value"] > state["value"]:
                state = cand
        return state

    best = None
    chain_values = []
    for r in range(restarts):
        gauss = np.random.default_rng((seed, r)).normal(size=(n, p_count, dmax))
        state = run(gauss, explore_iters, explore_tol)
        state = kick_chain(state, np.random.default_rng((seed, r, 7)),
                           kicks, CHAIN_EPS_HI, CHAIN_EPS_LO,
                           explore_iters, explore_tol)
        chain_values.append(state["value"])
        if best is None or state["value"] > best["value"]:
            best = state
    refit = run(best["u"], max_iters, tol)
    if refit["value"] >= best["value"]:
        best = refit
    best = kick_chain(best, np.random.default_rng((seed, CHAMPION_STREAM)),
                      polish, POLISH_EPS_HI, POLISH_EPS_LO, max_iters, tol)
    if n <= INDEPENDENCE_CAP:
        # Ascent from the classical configuration of a maximum independent
        # set starts at objective alpha exactly (zero rows stay zero
        # projectors in the kernel initializer), flooring the result there.
        anchor = np.zeros((n, p_count, dmax))
        for i in maximum_independent_set(shadow(cm)):
            anchor[i, :, 0] = 1.0
        floor = run(anchor, max_iters, tol)
        if floor["value"] > best["value"]:
            best = floor
    best["sweeps"] = totals["sweeps"]
    best["chain_values"] = tuple(chain_values)
    return best


def _check_budget(dims):
    big_d = math.prod(dims)
    cap = max_product_dim()
    if big_d > cap:
        raise ResourceLimitError(
            f"product dimension {big_d} exceeds the cap {cap} "
            f"(set EXGRAPH_MAX_DIM to raise it)")


def _validate_params(restarts, max_iters, kicks, polish):
    if restarts < 1:
        raise InvalidArgumentError("need at least one restart")
    if max_iters < 1:
        raise InvalidArgumentError("need at least one sweep")
    if kicks < 0 or polish < 0:
        raise InvalidArgumentError("kick counts cannot be negative")


def _opr_from_state(dims, state):
    projectors = []
    n = state["proj"].shape[0]
    for i in range(n):
        row = tuple(state["proj"][i, j, :d, :d] for j, d in enumerate(dims))
        projectors.append(row)
    return OPR(tuple(dims), tuple(projectors), state["psi"])


def _report(target, dims, state, restarts, seed, escalated):
    opr = _opr_from_state(dims, state)
    residuals = verify_opr(target, opr, tol=REPORT_CHECK_TOL)
    return SeesawReport(
        value=state["value"],
        vertex_probabilities=state["probs"],
        restarts_used=restarts,
        iterations=state["sweeps"],
        residuals=residuals,
        seed=seed,
        converged=state["converged"],
        min_delta=state["min_delta"],
        dims=tuple(dims),
        escalated=escalated,
        chain_values=state["chain_values"],
        opr=opr,
    )


def theta_seesaw(g: Graph, dim: int = None, restarts: int = DEFAULT_RESTARTS,
                 max_iters: int = DEFAULT_MAX_ITERS, tol: float = DEFAULT_TOL,
                 seed: int = 0, kicks: int = DEFAULT_KICKS,
                 polish: int = DEFAULT_POLISH) -> SeesawReport:
    """Lower bound on the Lovász number of a simple graph.

    A single party of dimension dim (default: the vertex count, which always
    admits an optimal representation).
    """
    if g.n < 1:
        raise InvalidArgumentError("graph must have at least one vertex")
    if dim is None:
        dim = g.n
    if dim < 1:
        raise InvalidArgumentError("dimension must be positive")
    _validate_params(restarts, max_iters, kicks, polish)
    _check_budget((dim,))
    cm = graph_to_multigraph(g)
    state = _drive(cm, (dim,), restarts, max_iters, tol, seed, kicks, polish)
    return _report(g, (dim,), state, restarts, seed, escalated=False)


def ctheta_seesaw(cm: ColouredMultigraph, dims=None,
                  restarts: int = DEFAULT_RESTARTS,
                  max_iters: int = DEFAULT_MAX_ITERS, tol: float = DEFAULT_TOL,
                  seed: int = 0, kicks: int = DEFAULT_KICKS,
                  polish: int = DEFAULT_POLISH) -> SeesawReport:
    """Lower bound on the coloured Lovász number of a multigraph.

    One tensor factor per colour. When dims is omitted, every party gets
    dimension 3 and the search retries once at dimension 4 if the two best
    restart chains disagree by more than 1e-4, keeping the better result.
    """
    if cm.n < 1:
        raise InvalidArgumentError("multigraph must have at least one vertex")
    p_count = len(cm.colours)
    if p_count < 1:
        raise InvalidArgumentError("multigraph must have at least one colour")
    _validate_params(restarts, max_iters, kicks, polish)
    auto = dims is None
    if auto:
        dims = (3,) * p_count
    dims = tuple(int(d) for d in dims)
    if len(dims) != p_count:
        raise InvalidArgumentError(
            f"need one dimension per colour: {p_count} colours, {len(dims)} dims")
    if any(d < 1 for d in dims):
        raise InvalidArgumentError("dimensions must be positive")
    _check_budget(dims)
    state = _drive(cm, dims, restarts, max_iters, tol, seed, kicks, polish)
    escalated = False
    if auto and restarts >= 2:
        ranked = sorted(state["chain_values"], reverse=True)
        if ranked[0] - ranked[1] > RETRY_SPREAD:
            bigger = tuple(d + 1 for d in dims)
            if math.prod(bigger) <= max_product_dim():
                retry = _drive(cm, bigger, restarts, max_iters, tol, seed,
                               kicks, polish)
                retry["sweeps"] += state["sweeps"]
                escalated = True
                if retry["value"] > state["value"]:
                    state, dims = retry, bigger
                else:
                    state["sweeps"] = retry["sweeps"]
    return _report(cm, dims, state, restarts, seed, escalated=escalated)

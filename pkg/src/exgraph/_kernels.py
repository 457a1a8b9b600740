"""Hot numerical kernels: cyclic Jacobi eigensolver and see-saw sweeps.

Two interchangeable backends execute the same source functions: a numba
njit-compiled one and an interpreted pure-numpy one. Every contraction is an
explicit loop (no BLAS calls, no fastmath), so the backends produce
bit-identical results. ``EXGRAPH_BACKEND=numba|numpy|auto`` selects the
backend at import time; :func:`set_backend` overrides it at runtime.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from functools import partial as _partial

    from numba import njit as _numba_njit

    _njit = _partial(_numba_njit, cache=True)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None
    HAVE_NUMBA = False

# Off-diagonal Frobenius norm below which the Jacobi iteration stops.
JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _build(jit):
    """Build the kernel family under a compilation decorator (or identity)."""

    @jit
    def jacobi_eigh(a):
        """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

        Returns (w, v) with a == v @ diag(w) @ v.T up to the off-diagonal
        tolerance. Columns of v are eigenvectors in the deterministic Jacobi
        output order; nothing is sorted, so callers can tie-break by index.
        """
        d = a.shape[0]
        m = a.copy()
        v = np.eye(d)
        for _sweep in range(JACOBI_MAX_SWEEPS):
            off2 = 0.0
            for p in range(d - 1):
                for q in range(p + 1, d):
                    off2 += 2.0 * m[p, q] * m[p, q]
            if off2 <= JACOBI_OFF_TOL * JACOBI_OFF_TOL:
                break
            for p in range(d - 1):
                for q in range(p + 1, d):
                    apq = m[p, q]
                    if apq == 0.0:
                        continue
                    tau = (m[q, q] - m[p, p]) / (2.0 * apq)
                    if tau >= 0.0:
                        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    app = m[p, p]
                    aqq = m[q, q]
                    m[p, p] = app - t * apq
                    m[q, q] = aqq + t * apq
                    m[p, q] = 0.0
                    m[q, p] = 0.0
                    for k in range(d):
                        if k != p and k != q:
                            akp = m[k, p]
                            akq = m[k, q]
                            m[k, p] = c * akp - s * akq
                            m[p, k] = m[k, p]
                            m[k, q] = s * akp + c * akq
                            m[q, k] = m[k, q]
                    for k in range(d):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
        w = np.empty(d)
        for i in range(d):
            w[i] = m[i, i]
        return w, v

    @jit
    def top_eigvec(m):
        """Unit top eigenvector and eigenvalue; smallest index wins ties."""
        w, v = jacobi_eigh(m)
        best = 0
        for i in range(1, w.shape[0]):
            if w[i] > w[best]:
                best = i
        d = m.shape[0]
        psi = np.empty(d)
        for r in range(d):
            psi[r] = v[r, best]
        return psi, w[best]

    @jit
    def null_basis(s, null_eps):
        """Orthonormal basis of the (numerical) null space of a PSD matrix."""
        w, v = jacobi_eigh(s)
        d = s.shape[0]
        k = 0
        for i in range(d):
            if w[i] < null_eps:
                k += 1
        q = np.empty((d, k))
        col = 0
        for i in range(d):
            if w[i] < null_eps:
                for r in range(d):
                    q[r, col] = v[r, i]
                col += 1
        return q

    @jit
    def best_projector(t, q, rank_eps):
        """Maximize tr(P t) over projectors with range inside span(q).

        Returns the optimal projector (in the full space) and its objective,
        the sum of positive eigenvalues of q.T @ t @ q above rank_eps.
        """
        d = t.shape[0]
        k = q.shape[1]
        p = np.zeros((d, d))
        if k == 0:
            return p, 0.0
        tr = np.zeros((k, k))
        for a in range(k):
            for b in range(k):
                s = 0.0
                for x in range(d):
                    qxa = q[x, a]
                    for y in range(d):
                        s += qxa * t[x, y] * q[y, b]
                tr[a, b] = s
        for a in range(k):
            for b in range(a + 1, k):
                avg = 0.5 * (tr[a, b] + tr[b, a])
                tr[a, b] = avg
                tr[b, a] = avg
        w, v = jacobi_eigh(tr)
        val = 0.0
        u = np.empty(d)
        for i in range(k):
            if w[i] > rank_eps:
                val += w[i]
                for x in range(d):
                    s = 0.0
                    for a in range(k):
                        s += q[x, a] * v[a, i]
                    u[x] = s
                for x in range(d):
                    ux = u[x]
                    for y in range(d):
                        p[x, y] += ux * u[y]
        return p, val

    @jit
    def apply_factor(vec, before, d, after, mat):
        """Apply a d x d matrix along the middle axis of a flattened tensor."""
        out = np.zeros(before * d * after)
        for a in range(before):
            abase = a * d * after
            for xp in range(d):
                obase = abase + xp * after
                for x in range(d):
                    wgt = mat[xp, x]
                    ibase = abase + x * after
                    for cpost in range(after):
                        out[obase + cpost] += wgt * vec[ibase + cpost]
        return out

    @jit
    def overlap_matrix(psi, phi, before, d, after):
        """T[x,y] = sum over the other axes of psi[..,x,..] * phi[..,y,..]."""
        t = np.zeros((d, d))
        for a in range(before):
            abase = a * d * after
            for x in range(d):
                xb = abase + x * after
                for y in range(d):
                    yb = abase + y * after
                    s = 0.0
                    for cpost in range(after):
                        s += psi[xb + cpost] * phi[yb + cpost]
                    t[x, y] += s
        for x in range(d):
            for y in range(x + 1, d):
                avg = 0.5 * (t[x, y] + t[y, x])
                t[x, y] = avg
                t[y, x] = avg
        return t

    @jit
    def effective_operator(psi, proj, i, dims, skip, bef, aft):
        """Partial contraction of |psi><psi| with vertex i's other factors."""
        phi = psi.copy()
        p_count = dims.shape[0]
        for kparty in range(p_count):
            if kparty != skip:
                phi = apply_factor(
                    phi, bef[kparty], dims[kparty], aft[kparty], proj[i, kparty]
                )
        return overlap_matrix(psi, phi, bef[skip], dims[skip], aft[skip])

    @jit
    def trace_prod(p, t, d):
        s = 0.0
        for x in range(d):
            for y in range(d):
                s += p[x, y] * t[y, x]
        return s

    @jit
    def build_sum_operator(proj, dims, big_d):
        """Sum over vertices of the Kronecker product of that vertex's factors."""
        n = proj.shape[0]
        p_count = dims.shape[0]
        m = np.zeros((big_d, big_d))
        for i in range(n):
            cur = np.ones((1, 1))
            for j in range(p_count):
                d = dims[j]
                rows = cur.shape[0]
                nxt = np.empty((rows * d, rows * d))
                for a in range(rows):
                    for b in range(rows):
                        cab = cur[a, b]
                        for x in range(d):
                            for y in range(d):
                                nxt[a * d + x, b * d + y] = cab * proj[i, j, x, y]
                cur = nxt
            for r in range(big_d):
                for c in range(big_d):
                    m[r, c] += cur[r, c]
        return m

    @jit
    def quadform(psi, m):
        d = m.shape[0]
        s = 0.0
        for r in range(d):
            row = 0.0
            for c in range(d):
                row += m[r, c] * psi[c]
            s += psi[r] * row
        return s

    @jit
    def vertex_prob(psi, proj, i, dims, bef, aft):
        """<psi| (tensor product of vertex i's factors) |psi>."""
        phi = psi.copy()
        p_count = dims.shape[0]
        for kparty in range(p_count):
            phi = apply_factor(
                phi, bef[kparty], dims[kparty], aft[kparty], proj[i, kparty]
            )
        s = 0.0
        for r in range(psi.shape[0]):
            s += psi[r] * phi[r]
        return s

    @jit
    def seesaw_run(dims, nbr_ptr, nbr_idx, gauss, max_iters, tol, rank_eps, null_eps):
        """One see-saw restart: feasible init, round-robin sweeps, handle update.

        Returns (proj, psi, value, probs, iters, converged, min_delta) where
        min_delta is the smallest single-update objective change observed
        (monotone ascent means it stays above a small negative slack).
        """
        n = gauss.shape[0]
        p_count = dims.shape[0]
        dmax = gauss.shape[2]
        big_d = 1
        for j in range(p_count):
            big_d *= dims[j]
        bef = np.empty(p_count, dtype=np.int64)
        aft = np.empty(p_count, dtype=np.int64)
        for j in range(p_count):
            b = 1
            for r in range(j):
                b *= dims[r]
            bef[j] = b
            a = 1
            for r in range(j + 1, p_count):
                a *= dims[r]
            aft[j] = a

        proj = np.zeros((n, p_count, dmax, dmax))
        # Feasible start: rank-1 projectors from the Gaussian draws, kept
        # orthogonal to the ranges of earlier-vertex neighbours per colour.
        for j in range(p_count):
            d = dims[j]
            for i in range(n):
                s = np.zeros((d, d))
                for ptr in range(nbr_ptr[i * p_count + j], nbr_ptr[i * p_count + j + 1]):
                    nb = nbr_idx[ptr]
                    if nb < i:
                        for x in range(d):
                            for y in range(d):
                                s[x, y] += proj[nb, j, x, y]
                q = null_basis(s, null_eps)
                k = q.shape[1]
                if k == 0:
                    continue
                u = np.zeros(d)
                for a in range(k):
                    coef = 0.0
                    for x in range(d):
                        coef += q[x, a] * gauss[i, j, x]
                    for x in range(d):
                        u[x] += q[x, a] * coef
                nrm = 0.0
                for x in range(d):
                    nrm += u[x] * u[x]
                nrm = np.sqrt(nrm)
                if nrm < 1e-12:
                    continue
                for x in range(d):
                    u[x] /= nrm
                for x in range(d):
                    for y in range(d):
                        proj[i, j, x, y] = u[x] * u[y]

        m = build_sum_operator(proj, dims, big_d)
        psi, lam = top_eigvec(m)
        prev = lam
        min_delta = np.inf
        iters = 0
        converged = False
        for it in range(max_iters):
            for i in range(n):
                for j in range(p_count):
                    d = dims[j]
                    t = effective_operator(psi, proj, i, dims, j, bef, aft)
                    old_val = trace_prod(proj[i, j], t, d)
                    s = np.zeros((d, d))
                    for ptr in range(
                        nbr_ptr[i * p_count + j], nbr_ptr[i * p_count + j + 1]
                    ):
                        nb = nbr_idx[ptr]
                        for x in range(d):
                            for y in range(d):
                                s[x, y] += proj[nb, j, x, y]
                    q = null_basis(s, null_eps)
                    newp, new_val = best_projector(t, q, rank_eps)
                    for x in range(d):
                        for y in range(d):
                            proj[i, j, x, y] = newp[x, y]
                    delta = new_val - old_val
                    if delta < min_delta:
                        min_delta = delta
            m = build_sum_operator(proj, dims, big_d)
            old_handle = quadform(psi, m)
            psi, lam = top_eigvec(m)
            hdelta = lam - old_handle
            if hdelta < min_delta:
                min_delta = hdelta
            iters = it + 1
            gain = lam - prev
            prev = lam
            if gain < tol:
                converged = True
                break
        probs = np.empty(n)
        for i in range(n):
            probs[i] = vertex_prob(psi, proj, i, dims, bef, aft)
        return proj, psi, prev, probs, iters, converged, min_delta

    return SimpleNamespace(
        jacobi_eigh=jacobi_eigh,
        top_eigvec=top_eigvec,
        null_basis=null_basis,
        best_projector=best_projector,
        apply_factor=apply_factor,
        overlap_matrix=overlap_matrix,
        effective_operator=effective_operator,
        build_sum_operator=build_sum_operator,
        quadform=quadform,
        vertex_prob=vertex_prob,
        seesaw_run=seesaw_run,
    )


_INTERPRETED = _build(lambda f: f)
_COMPILED = _build(_njit) if HAVE_NUMBA else None

_ACTIVE = {"name": "", "ns": _INTERPRETED}


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def set_backend(name: str) -> None:
    """Select the kernel backend: 'numba', 'numpy', or 'auto'."""
    choice = name.strip().lower()
    if choice == "auto":
        choice = "numba" if HAVE_NUMBA else "numpy"
    if choice == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        _ACTIVE["name"] = "numba"
        _ACTIVE["ns"] = _COMPILED
    elif choice == "numpy":
        _ACTIVE["name"] = "numpy"
        _ACTIVE["ns"] = _INTERPRETED
    else:
        raise ValueError(f"unknown backend {name!r}; expected numba, numpy, or auto")


def get_backend() -> str:
    return _ACTIVE["name"]


def kernels() -> SimpleNamespace:
    """The active kernel namespace."""
    return _ACTIVE["ns"]


set_backend(os.environ.get("EXGRAPH_BACKEND", "auto"))

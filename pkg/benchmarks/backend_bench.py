"""Timing comparison of the compiled and pure-numpy kernel backends.

Runs the same see-saw searches on every available backend, checks that the
results agree bit for bit, and prints per-case timings with the speedup of
the compiled path. The first compiled call includes JIT warm-up, so each
backend is warmed on a small problem before the clock starts.

Usage:
    python benchmarks/backend_bench.py [--repeat 3]
"""
import argparse
import time

from exgraph import (available_backends, coloured_cycle, complement,
                     ctheta_seesaw, cycle, enumerate_colourings, factor,
                     set_backend, theta_seesaw)


def _is_single_cycle(g):
    degree = [0] * g.n
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    if any(d != 2 for d in degree):
        return False
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def antihole_split():
    """The two-colouring of the 7-antihole whose factors are two 7-cycles."""
    g = complement(cycle(7))
    for cls in enumerate_colourings(g, 2):
        cm = cls.representative
        if all(len(es) == 7 for es in cm.edge_sets) and \
                all(_is_single_cycle(factor(cm, c)) for c in cm.colours):
            return cm
    raise RuntimeError("no two-cycle factorisation found")


def cases():
    budget = dict(restarts=8, kicks=30, polish=120, tol=1e-11, max_iters=3000)
    return [
        ("theta C_9, d=9",
         lambda: theta_seesaw(cycle(9), seed=5, **budget)),
        ("ctheta pentagon, dims (2,2)",
         lambda: ctheta_seesaw(coloured_cycle("AABAB"), dims=(2, 2), seed=3,
                               **budget)),
        ("ctheta antihole split, dims (3,3)",
         lambda: ctheta_seesaw(antihole_split(), dims=(3, 3), seed=7,
                               **budget)),
    ]


def run(repeat):
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    timings = {}
    values = {}
    for backend in backends:
        set_backend(backend)
        theta_seesaw(cycle(5), restarts=1, kicks=5, polish=5, seed=0)
        for name, job in cases():
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                report = job()
                best = min(best, time.perf_counter() - t0)
            timings[(backend, name)] = best
            values.setdefault(name, set()).add(
                report.vertex_probabilities.tobytes())
    set_backend("auto")

    agree = all(len(v) == 1 for v in values.values())
    print(f"bit-identical probabilities across backends: {agree}")
    both = "numba" in backends and "numpy" in backends
    width = max(len(name) for name, _ in cases())
    header = f"{'case':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if both:
        header += f"{'numba gain':>12}"
    print(header)
    for name, _ in cases():
        row = f"{name:<{width}}  "
        row += "".join(f"{timings[(b, name)] * 1e3:>10.1f}ms"
                       for b in backends)
        if both:
            ratio = timings[("numpy", name)] / timings[("numba", name)]
            row += f"{ratio:>11.1f}x"
        print(row)
    if not agree:
        raise SystemExit("backends disagree")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per case; the best time is kept")
    run(parser.parse_args().repeat)

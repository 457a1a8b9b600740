"""Experiment drivers: odd-cycle Bell colouring sweeps, the 7-antihole
colouring census, and the cycle self-test.

Every driver returns an ExperimentReport whose rows sit next to their
analytic anchors, so a pass verdict always means "numerics matched the closed
forms at the stated tolerances". Identical parameters and seed give
byte-identical reports.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .bell import bell_check, label_events
from .closed_forms import (ctheta_tpath, mb_cycle, p_n, theta_antihole7,
                           theta_closed_form_cycle)
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import (ColouredMultigraph, Graph, coloured_cycle, complement,
                     cycle, enumerate_colourings, factor, independence_number,
                     multigraph_digest, shadow)
from .opr import swap_path_substitution, swapped_colouring, umbrella_opr, verify_opr
from .reductions import canonical_cycle_word, path_profile
from .seesaw import ctheta_seesaw, theta_seesaw

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

ANCHOR_TOL = 1e-4
THETA_TOL = 1e-5
PROB_TOL = 1e-3
REACH_TOL = 1e-3
GAP_THRESHOLD = 1e-3
NEAR_VERDICT_BAND = 5e-3
ESCALATION_CAVEAT_TOL = 1e-4
SANDWICH_TOL = 1e-6
MAX_EXPERIMENT_N = 11


@dataclass(eq=False)
class ExperimentReport:
    """Rows, checks, and a verdict for one experiment run."""

    experiment: str
    inputs: dict
    rows: tuple
    checks: tuple
    verdict: str
    notes: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(dict(r) for r in self.rows))
        object.__setattr__(self, "checks", tuple(dict(c) for c in self.checks))
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.verdict not in (PASS, FAIL, INCONCLUSIVE):
            raise InvalidArgumentError(f"unknown verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "inputs": self.inputs,
            "rows": [dict(r) for r in self.rows],
            "checks": [dict(c) for c in self.checks],
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_json(text: str) -> "ExperimentReport":
        data = json.loads(text)
        return ExperimentReport(
            experiment=data["experiment"],
            inputs=data["inputs"],
            rows=tuple(data["rows"]),
            checks=tuple(data["checks"]),
            verdict=data["verdict"],
            notes=tuple(data["notes"]),
        )


def _check(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _verdict(checks, any_unconverged: bool) -> str:
    if any_unconverged:
        return INCONCLUSIVE
    return PASS if all(c["passed"] for c in checks) else FAIL


def _require_cycle_sizes(n_list):
    out = tuple(int(n) for n in n_list)
    if not out:
        raise InvalidArgumentError("need at least one cycle size")
    for n in out:
        if n % 2 == 0 or n < 5:
            raise InvalidArgumentError(f"cycle sizes must be odd and >= 5, got {n}")
        if n > MAX_EXPERIMENT_N:
            raise ResourceLimitError(f"cycle size {n} exceeds the budget {MAX_EXPERIMENT_N}")
    return out


def _sandwich(value: float, alpha: int, theta_upper) -> bool:
    if value < alpha - SANDWICH_TOL:
        return False
    if theta_upper is not None and value > theta_upper + SANDWICH_TOL:
        return False
    return True


def reproduce_theorem6(n_list=(5, 7, 9), restarts: int = 10, kicks: int = 150,
                       polish: int = 500, seed: int = 7, tol: float = 1e-11,
                       max_iters: int = 3000) -> ExperimentReport:
    """Sweep every Bell 2-colouring of odd cycles and compare to closed forms.

    For each n the checks are: (a) every class value matches the t-path
    closed form of its profile within 1e-4, (b) the best class attains the
    single-path maximum and has t = 1, (c) the t = 1 class labels into the
    chained scenario (2, (n-1)/2, 2).
    """
    sizes = _require_cycle_sizes(n_list)
    rows = []
    checks = []
    notes = []
    any_unconverged = False
    case = 0
    for n in sizes:
        g = cycle(n)
        alpha = independence_number(g)
        theta_upper = theta_closed_form_cycle(n)
        classes = [c for c in enumerate_colourings(g, 2)
                   if bell_check(c.representative).accepted]
        best_value = None
        best_t = None
        t1_cm = None
        for cls in classes:
            cm = cls.representative
            profile = path_profile(cm)
            target = ctheta_tpath(n, profile.t)
            report = ctheta_seesaw(cm, dims=(2, 2), restarts=restarts,
                                   max_iters=max_iters, tol=tol,
                                   seed=seed + case, kicks=kicks, polish=polish)
            value, escalated, caveat = report.value, False, ""
            if abs(value - target) > ANCHOR_TOL:
                retry = ctheta_seesaw(cm, dims=(3, 3), restarts=restarts,
                                      max_iters=max_iters, tol=tol,
                                      seed=seed + case, kicks=kicks,
                                      polish=polish)
                escalated = True
                if retry.value > value:
                    report = retry
                    if abs(retry.value - value) > ESCALATION_CAVEAT_TOL:
                        caveat = "value changed under dimension escalation"
                    value = retry.value
            row = {
                "case": case,
                "n": n,
                "word": canonical_cycle_word(cm),
                "digest": multigraph_digest(cm),
                "t": profile.t,
                "value": value,
                "anchor": target,
                "gap": value - target,
                "alpha": alpha,
                "theta_shadow": theta_upper,
                "converged": bool(report.converged),
                "escalated": escalated,
                "caveat": caveat,
                "sandwich_ok": _sandwich(value, alpha, theta_upper),
            }
            rows.append(row)
            any_unconverged = any_unconverged or not report.converged
            if best_value is None or value > best_value:
                best_value, best_t = value, profile.t
            if profile.t == 1:
                t1_cm = cm
            case += 1
        n_rows = [r for r in rows if r["n"] == n]
        checks.append(_check(
            f"n={n}: every class matches its t-path closed form",
            all(abs(r["gap"]) <= ANCHOR_TOL for r in n_rows),
            f"worst |gap| = {max(abs(r['gap']) for r in n_rows):.3e}"))
        checks.append(_check(
            f"n={n}: maximum attained at t=1 and equals the single-path value",
            best_t == 1 and abs(best_value - mb_cycle(n)) <= ANCHOR_TOL,
            f"max {best_value:.9f} at t={best_t}, anchor {mb_cycle(n):.9f}"))
        expected = (2, (n - 1) // 2, 2)
        if t1_cm is None:
            checks.append(_check(
                f"n={n}: t=1 class labels into the chained scenario",
                False, "no t=1 class found"))
        else:
            scenario, _labels = label_events(t1_cm)
            shorthand = scenario.uniform_shorthand()
            checks.append(_check(
                f"n={n}: t=1 class labels into the chained scenario",
                shorthand == expected,
                f"scenario {shorthand}, expected {expected}"))
        checks.append(_check(
            f"n={n}: classical/Lovász sandwich holds for every class",
            all(r["sandwich_ok"] for r in n_rows),
            f"alpha={alpha}, theta={theta_upper:.9f}"))
    notes.append("values are see-saw lower bounds compared against exact "
                 "closed forms; dimensions (2,2) with a single escalation "
                 "to (3,3) when a class misses its anchor")
    inputs = {
        "n_list": list(sizes), "restarts": restarts, "kicks": kicks,
        "polish": polish, "seed": seed, "tol": tol, "max_iters": max_iters,
        "dims": [2, 2],
    }
    return ExperimentReport("theorem6", inputs, tuple(rows), tuple(checks),
                            _verdict(checks, any_unconverged), tuple(notes))


def _is_cycle_graph(g: Graph) -> bool:
    if len(g.edges) != g.n:
        return False
    adj = g.adjacency()
    if any(len(a) != 2 for a in adj):
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def reproduce_theorem8(restarts: int = 100, kicks: int = 14, polish: int = 800,
                       seed: int = 11, tol: float = 1e-11,
                       max_iters: int = 3000) -> ExperimentReport:
    """Census of the two-colourings of the 7-antihole.

    Runs the coloured see-saw on every surjective 2-colouring class of the
    complement of C_7 and checks that exactly one class reaches the antihole's
    Lovász number, that its factors are two edge-disjoint 7-cycles, that this
    class is not Bell-representable, and that every other class stays below
    by more than the gap threshold. The uniqueness outcome is numerical
    evidence at see-saw convergence, not a proof.
    """
    if restarts < 100:
        raise InvalidArgumentError("this census needs a restart budget >= 100 per class")
    g = complement(cycle(7))
    alpha = independence_number(g)
    target = theta_antihole7()
    all_classes = enumerate_colourings(g, 2)
    classes = [c for c in all_classes if c.surjective]
    rows = []
    any_unconverged = False
    for case, cls in enumerate(classes):
        cm = cls.representative
        report = ctheta_seesaw(cm, dims=(3, 3), restarts=restarts,
                               max_iters=max_iters, tol=tol, seed=seed + case,
                               kicks=kicks, polish=polish)
        value, escalated, caveat = report.value, False, ""
        if abs(value - target) <= NEAR_VERDICT_BAND:
            retry = ctheta_seesaw(cm, dims=(4, 4), restarts=restarts,
                                  max_iters=max_iters, tol=tol,
                                  seed=seed + case, kicks=kicks, polish=polish)
            escalated = True
            if retry.value > value:
                if abs(retry.value - value) > ESCALATION_CAVEAT_TOL:
                    caveat = "value changed under dimension escalation"
                report = retry
                value = retry.value
        decision = bell_check(cm)
        fac_a = factor(cm, cm.colours[0])
        fac_b = factor(cm, cm.colours[1])
        rows.append({
            "case": case,
            "assignment": "".join("AB"[c] for c in cls.assignment),
            "digest": multigraph_digest(cm),
            "orbit_size": cls.orbit_size,
            "value": value,
            "anchor": target,
            "gap": target - value,
            "reaches": abs(value - target) <= REACH_TOL,
            "bell": decision.verdict,
            "factors_are_7cycles": _is_cycle_graph(fac_a) and _is_cycle_graph(fac_b),
            "alpha": alpha,
            "converged": bool(report.converged),
            "escalated": escalated,
            "caveat": caveat,
            "sandwich_ok": _sandwich(value, alpha, target),
        })
        any_unconverged = any_unconverged or not report.converged
    reaching = [r for r in rows if r["reaches"]]
    others = [r for r in rows if not r["reaches"]]
    checks = [
        _check("exactly one class reaches the antihole Lovász number",
               len(reaching) == 1,
               f"{len(reaching)} classes within {REACH_TOL} of {target:.9f}"),
        _check("the reaching class factors into two edge-disjoint 7-cycles",
               len(reaching) == 1 and reaching[0]["factors_are_7cycles"],
               reaching[0]["assignment"] if len(reaching) == 1 else "n/a"),
        _check("the reaching class is rejected as a Bell structure",
               len(reaching) == 1 and reaching[0]["bell"] == "reject",
               reaching[0]["bell"] if len(reaching) == 1 else "n/a"),
        _check("every other class stays below by more than the gap threshold",
               all(r["gap"] > GAP_THRESHOLD for r in others),
               f"smallest other-class gap = "
               f"{min((r['gap'] for r in others), default=float('inf')):.3e}"),
        _check("classical/Lovász sandwich holds for every class",
               all(r["sandwich_ok"] for r in rows),
               f"alpha={alpha}, theta={target:.9f}"),
    ]
    bell_values = [r["value"] for r in rows if r["bell"] == "accept"]
    notes = [
        f"classes processed: {len(classes)} surjective of {len(all_classes)} "
        "total orbits; one-colour classes are excluded because they carry no "
        "tensor constraint and reach the colourless value trivially",
        f"the gap threshold {GAP_THRESHOLD} for 'strictly below' is an "
        "artifact parameter; only strictness itself is backed by theory",
        "uniqueness here is numerical evidence at see-saw convergence, not a proof",
        f"best value over Bell-representable classes: "
        f"{max(bell_values):.9f} (a lower bound; the true Bell maximum of "
        "this graph is not known)" if bell_values else
        "no Bell-representable class found",
    ]
    inputs = {
        "graph_digest": multigraph_digest(
            ColouredMultigraph(g.n, ("_",), (g.edges,))),
        "restarts": restarts, "kicks": kicks, "polish": polish,
        "seed": seed, "tol": tol, "max_iters": max_iters,
        "dims": [3, 3], "retry_dims": [4, 4],
    }
    return ExperimentReport("theorem8", inputs, tuple(rows), tuple(checks),
                            _verdict(checks, any_unconverged), tuple(notes))


def _bell_word(n: int) -> str:
    """The single-size-two-path colour word AABAB...B on n letters."""
    return "AA" + "BA" * ((n - 3) // 2) + "B"


def selftest_cycles(n_list=(5, 7, 9), restarts: int = 10, kicks: int = 200,
                    polish: int = 800, seed: int = 5,
                    tol: float = 1e-11, max_iters: int = 3000) -> ExperimentReport:
    """Colourless see-saw versus closed forms, umbrella agreement, projector
    swap invariance on a near-optimal coloured representation, and the
    pentagon colour gap.
    """
    sizes = _require_cycle_sizes(n_list)
    rows = []
    checks = []
    any_unconverged = False
    for n in sizes:
        g = cycle(n)
        anchor = theta_closed_form_cycle(n)
        prob = p_n(n)
        report = theta_seesaw(g, restarts=restarts, max_iters=max_iters,
                              tol=tol, seed=seed, kicks=kicks, polish=polish)
        probs = report.vertex_probabilities
        umb = umbrella_opr(n)
        umb_check = verify_opr(g, umb, tol=1e-10)
        rows.append({
            "case": f"theta-C{n}",
            "n": n,
            "value": report.value,
            "anchor": anchor,
            "gap": report.value - anchor,
            "prob_anchor": prob,
            "max_prob_error": float(max(abs(p - prob) for p in probs)),
            "alpha": (n - 1) // 2,
            "converged": bool(report.converged),
            "umbrella_value": umb.objective(),
            "umbrella_residuals_pass": umb_check.passed,
        })
        any_unconverged = any_unconverged or not report.converged
        checks.append(_check(
            f"n={n}: see-saw matches the cycle Lovász closed form",
            abs(report.value - anchor) <= THETA_TOL,
            f"|gap| = {abs(report.value - anchor):.3e}"))
        checks.append(_check(
            f"n={n}: every vertex probability matches the umbrella probability",
            max(abs(p - prob) for p in probs) <= PROB_TOL,
            f"worst error = {max(abs(p - prob) for p in probs):.3e}"))
        checks.append(_check(
            f"n={n}: umbrella representation agrees",
            umb_check.passed and abs(umb.objective() - anchor) <= 1e-9,
            f"objective {umb.objective():.12f}"))

        cm = coloured_cycle(_bell_word(n))
        swap_report = ctheta_seesaw(cm, dims=(2, 2), restarts=restarts,
                                    max_iters=max_iters, tol=1e-12, seed=seed,
                                    kicks=kicks, polish=polish)
        before = swap_report.opr.objective()
        swapped = swap_path_substitution(swap_report.opr, cm, 1)
        after_once = swapped.objective()
        shadow_check = verify_opr(shadow(cm), swapped, tol=1e-8)
        cm2 = swapped_colouring(cm, 1)
        swapped_twice = swap_path_substitution(swapped, cm2, 2)
        after_twice = swapped_twice.objective()
        rows.append({
            "case": f"swap-C{n}",
            "n": n,
            "word": _bell_word(n),
            "value": before,
            "after_once": after_once,
            "after_twice": after_twice,
            "shadow_orthogonality": shadow_check.orthogonality,
            "converged": bool(swap_report.converged),
        })
        any_unconverged = any_unconverged or not swap_report.converged
        checks.append(_check(
            f"n={n}: projector swap leaves the objective unchanged",
            abs(after_once - before) <= 1e-10 and abs(after_twice - before) <= 1e-10,
            f"|change| once {abs(after_once - before):.3e}, "
            f"twice {abs(after_twice - before):.3e}"))
        checks.append(_check(
            f"n={n}: swapped representation is orthogonal on the shadow",
            shadow_check.orthogonality <= 1e-8,
            f"residual {shadow_check.orthogonality:.3e}"))
        if n == 5:
            gap = theta_closed_form_cycle(5) - before
            expected = theta_closed_form_cycle(5) - mb_cycle(5)
            rows.append({
                "case": "pentagon-gap",
                "n": 5,
                "gap": gap,
                "anchor": expected,
            })
            checks.append(_check(
                "pentagon: colour constraint costs the closed-form gap",
                abs(gap - expected) <= 2e-4,
                f"gap {gap:.7f}, anchor {expected:.7f}"))
    inputs = {
        "n_list": list(sizes), "restarts": restarts, "kicks": kicks,
        "polish": polish, "seed": seed, "tol": tol, "max_iters": max_iters,
    }
    notes = ("swap rows use the single-size-two-path colouring at dimensions "
             "(2,2), optimized to tolerance 1e-12 before substitution",)
    return ExperimentReport("selftest", inputs, tuple(rows), tuple(checks),
                            _verdict(checks, any_unconverged), notes)

"""Acceptance checklist: one test per headline guarantee of the package.

Each test prints a single ``criterion N (...): PASS/FAIL`` line at its stated
tolerance, so a full run reads as a checklist. Closed forms are compared
against 40-digit references computed independently with mpmath; see-saw
values are compared against those closed forms; structural claims are
certified by rebuilding or by validating returned witnesses.

The census test (criterion 5) runs the full two-colouring sweep of the
7-antihole at production parameters and takes the better part of half an
hour; everything else is minutes or less.
"""
import itertools
import math
import random
import sys
import time

import pytest

from exgraph import (BellScenario, ColouredMultigraph, EventLabel, bell_check,
                     break_edge, coloured_cycle, ctheta_seesaw, ctheta_tpath,
                     cycle, cycle_word, factor, independence_number,
                     label_events, mb_cycle, merge_colours, p_n,
                     plus_one_reduce, remove_edge, reproduce_theorem6,
                     reproduce_theorem8, scenario_to_multigraph, shadow,
                     swap_path_substitution, theta_antihole7,
                     theta_closed_form_cycle, theta_seesaw, verify_opr)
from exgraph.errors import InvalidArgumentError
from exgraph.graphs import Graph

THETA_REF = {
    5: "2.236067977499789696409173668731276235441",
    7: "3.317667207394095392733208298072381371462",
    9: "4.360089581434064794869910849128555191239",
    11: "5.386302911967422609497246981265312566289",
}

MB_REF = {
    5: "2.207106781186547524400844362104849039285",
    7: "3.299038105676657970145584756129404275207",
    9: "4.347759065022573512256366378793576573645",
    11: "5.377641290737883930291098333448455358514",
}

TPATH_REF = {
    (5, 1): "2.207106781186547524400844362104849039285",
    (7, 1): "3.299038105676657970145584756129404275207",
    (7, 3): "3.207106781186547524400844362104849039285",
    (9, 1): "4.347759065022573512256366378793576573645",
    (9, 3): "4.299038105676657970145584756129404275207",
    (9, 5): "4.207106781186547524400844362104849039285",
    (11, 1): "5.377641290737883930291098333448455358514",
    (11, 3): "5.347759065022573512256366378793576573645",
}

PN_REF = {
    5: "0.4472135954999579392818347337462552470881",
    7: "0.4739524581991564846761726140103401959231",
    9: "0.4844543979371183105411012054587283545821",
    11: "0.4896639010879475099542951801150284151172",
}

ANTIHOLE7_REF = "2.109916264174742382844389742012820962135"

THETA_BUDGET = dict(restarts=10, kicks=100, polish=1200, tol=1e-11,
                    max_iters=3000)
WORD_BUDGET = dict(restarts=8, kicks=60, polish=150, tol=1e-11,
                   max_iters=3000)
CORPUS_BUDGET = dict(restarts=5, kicks=30, polish=80, tol=1e-11,
                     max_iters=3000)
SWAP_BUDGET = dict(restarts=6, kicks=60, polish=200, tol=1e-12,
                   max_iters=4000)

PARTY_NAMES = ("A", "B", "C")


def _announce(num, slug, ok, detail):
    line = f"criterion {num} ({slug}): {'PASS' if ok else 'FAIL'} [{detail}]"
    print(line)
    real = getattr(sys, "__stdout__", None)
    if real is not None and real is not sys.stdout:
        real.write(line + "\n")
        real.flush()
    return line


def bell_word(n):
    return "AA" + "BA" * ((n - 3) // 2) + "B"


def cycle_word_str(cm):
    return "".join(cycle_word(cm))


def circular_run_lengths(word):
    """Lengths of the maximal constant blocks of a circular word."""
    n = len(word)
    if len(set(word)) == 1:
        return (n,)
    j = next(i for i in range(n) if word[i - 1] != word[i])
    rot = word[j:] + word[:j]
    return tuple(len(list(block)) for _, block in itertools.groupby(rot))


_SWAP = str.maketrans("AB", "BA")


def canonical_word(word):
    """Lexicographic minimum under rotation, reflection and colour swap."""
    word = "".join(word)
    n = len(word)
    best = None
    for base in (word, word[::-1]):
        for r in range(n):
            rot = base[r:] + base[:r]
            for cand in (rot, rot.translate(_SWAP)):
                if best is None or cand < best:
                    best = cand
    return best


def all_canonical_words(n):
    return sorted({canonical_word("".join(w))
                   for w in itertools.product("AB", repeat=n)})


def random_scenario_and_events(rng):
    p = rng.randrange(1, 4)
    parties = PARTY_NAMES[:p]
    counts = tuple(
        tuple(rng.randrange(1, 4) for _ in range(rng.randrange(1, 4)))
        for _ in range(p))
    scenario = BellScenario(parties, counts)
    events = []
    for _ in range(rng.randrange(3, 11)):
        assignments = []
        for pi, party in enumerate(parties):
            if rng.random() < 0.85:
                m = rng.randrange(len(counts[pi]))
                assignments.append((party, m, rng.randrange(counts[pi][m])))
        events.append(EventLabel(tuple(assignments)))
    return scenario, tuple(events)


def assert_certificate(cm, decision):
    """Accept must rebuild the multigraph exactly; reject must return a
    one-edge triple inside a verified component of the named factor."""
    if decision.accepted:
        rebuilt = scenario_to_multigraph(decision.scenario, decision.labels)
        assert rebuilt == cm
        return
    colour, comp, triple = decision.witness
    assert colour in cm.colours
    comp = tuple(comp)
    i, j, k = triple
    assert i < j < k
    assert {i, j, k} <= set(comp)
    fac = factor(cm, colour)
    edges = set(fac.edges)
    inside = [e for e in ((i, j), (i, k), (j, k)) if e in edges]
    assert len(inside) == 1
    adj = fac.adjacency()
    seen = {comp[0]}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    assert seen == set(comp)


def _random_two_colour_multigraph(rng):
    n = rng.randrange(4, 7)
    a, b = set(), set()
    for u in range(n):
        for v in range(u + 1, n):
            r = rng.random()
            if r < 0.30:
                a.add((u, v))
            elif r < 0.55:
                b.add((u, v))
            elif r < 0.62:
                a.add((u, v))
                b.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not a:
        a.add(rng.choice(pairs))
    if not b:
        b.add(rng.choice(pairs))
    return ColouredMultigraph(n, ("A", "B"), (frozenset(a), frozenset(b)))


@pytest.fixture(scope="module")
def bell_cycle_report():
    t0 = time.monotonic()
    report = reproduce_theorem6()
    return report, time.monotonic() - t0


@pytest.fixture(scope="module")
def antihole_census():
    t0 = time.monotonic()
    report = reproduce_theorem8()
    return report, time.monotonic() - t0


@pytest.fixture(scope="module")
def word_values():
    """Converged see-saw value for every two-colouring class of C_5/C_7/C_9."""
    tables = {}
    for n in (5, 7, 9):
        table = {}
        for idx, w in enumerate(all_canonical_words(n)):
            cm = coloured_cycle(w, colours=("A", "B"))
            rpt = ctheta_seesaw(cm, dims=None, seed=1000 * n + idx,
                                **WORD_BUDGET)
            table[w] = rpt.value
        tables[n] = table
    return tables


@pytest.fixture(scope="module")
def random_corpus_results():
    """Remove/merge see-saw triples on a 50-graph random corpus."""
    rng = random.Random(424243)
    results = []
    for idx in range(50):
        cm = _random_two_colour_multigraph(rng)
        present = [(u, v, c) for c, es in zip(cm.colours, cm.edge_sets)
                   for (u, v) in sorted(es)]
        u, v, c = rng.choice(present)
        removed = remove_edge(cm, u, v, c)
        merged = merge_colours(cm, "A", "B")
        base = ctheta_seesaw(cm, dims=(2, 2), seed=300 + idx,
                             **CORPUS_BUDGET)
        less = ctheta_seesaw(removed, dims=(2, 2), seed=300 + idx,
                             **CORPUS_BUDGET)
        flat = ctheta_seesaw(merged, dims=(4,), seed=300 + idx,
                             **CORPUS_BUDGET)
        results.append({
            "cm": cm, "removed": removed, "merged": merged,
            "value": base.value, "removed_value": less.value,
            "merged_value": flat.value,
        })
    return results


def test_criterion_1_closed_forms():
    worst = 0.0
    for n, ref in THETA_REF.items():
        worst = max(worst, abs(theta_closed_form_cycle(n) - float(ref)))
    for n, ref in MB_REF.items():
        worst = max(worst, abs(mb_cycle(n) - float(ref)))
    for (n, t), ref in TPATH_REF.items():
        worst = max(worst, abs(ctheta_tpath(n, t) - float(ref)))
    for n, ref in PN_REF.items():
        worst = max(worst, abs(p_n(n) - float(ref)))
    worst = max(worst, abs(theta_antihole7() - float(ANTIHOLE7_REF)))
    ok = worst <= 1e-12
    line = _announce(1, "closed forms vs 40-digit references", ok,
                     f"worst |diff| = {worst:.2e}")
    assert ok, line


def test_criterion_2_theta_seesaw_on_odd_cycles():
    assert THETA_BUDGET["restarts"] <= 50
    t0 = time.monotonic()
    worst = 0.0
    for n in (5, 7, 9, 11):
        rpt = theta_seesaw(cycle(n), seed=5, **THETA_BUDGET)
        worst = max(worst, abs(rpt.value - theta_closed_form_cycle(n)))
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-5 and elapsed < 120.0
    line = _announce(2, "colourless theta on C_5..C_11", ok,
                     f"worst |diff| = {worst:.2e}, {elapsed:.1f}s")
    assert ok, line


def test_criterion_3_bell_cycle_maxima(bell_cycle_report):
    report, _elapsed = bell_cycle_report
    worst_anchor = 0.0
    ok = report.verdict == "pass"
    for n in (5, 7, 9):
        rows = [r for r in report.rows if r["n"] == n]
        ok = ok and bool(rows)
        for r in rows:
            worst_anchor = max(worst_anchor,
                               abs(r["value"] - ctheta_tpath(n, r["t"])))
        best = max(rows, key=lambda r: r["value"])
        ok = ok and best["t"] == 1
        ok = ok and abs(best["value"] - mb_cycle(n)) <= 1e-4
        t1 = next((r for r in rows if r["t"] == 1), None)
        ok = ok and t1 is not None
        if t1 is not None:
            scenario, _labels = label_events(coloured_cycle(t1["word"]))
            ok = ok and scenario.uniform_shorthand() == (2, (n - 1) // 2, 2)
    ok = ok and worst_anchor <= 1e-4
    line = _announce(3, "Bell-colouring maxima of odd cycles", ok,
                     f"{len(report.rows)} classes, worst anchor gap = "
                     f"{worst_anchor:.2e}")
    assert ok, line


def test_criterion_4_bell_colourings_stay_below_theta(bell_cycle_report):
    report, _elapsed = bell_cycle_report
    margins = [theta_closed_form_cycle(r["n"]) - r["value"]
               for r in report.rows]
    rows5 = [r for r in report.rows if r["n"] == 5]
    gap5 = theta_closed_form_cycle(5) - max(r["value"] for r in rows5)
    exact5 = theta_closed_form_cycle(5) - mb_cycle(5)
    ok = min(margins) > 1e-3 and abs(gap5 - exact5) <= 2e-4
    line = _announce(4, "strict gap below the colourless theta", ok,
                     f"min margin = {min(margins):.4f}, pentagon gap = "
                     f"{gap5:.7f} vs {exact5:.7f}")
    assert ok, line


def test_criterion_5_antihole_census(antihole_census):
    report, elapsed = antihole_census
    reaching = [r for r in report.rows if r["reaches"]]
    others = [r for r in report.rows if not r["reaches"]]
    min_other_gap = min(r["gap"] for r in others)
    ok = report.verdict == "pass"
    ok = ok and len(report.rows) == 649
    ok = ok and all(c["passed"] for c in report.checks)
    ok = ok and len(reaching) == 1
    ok = ok and abs(reaching[0]["value"] - 2.1099162) <= 1e-3
    ok = ok and reaching[0]["factors_are_7cycles"]
    ok = ok and reaching[0]["bell"] == "reject"
    ok = ok and min_other_gap > 1e-3
    ok = ok and elapsed < 1800.0
    word = reaching[0]["assignment"] if reaching else "none"
    line = _announce(5, "7-antihole two-colouring census", ok,
                     f"reaching class {word}, min other gap = "
                     f"{min_other_gap:.2e}, {elapsed / 60:.1f} min")
    assert ok, line


def test_criterion_6_bell_structure_certificates():
    rng = random.Random(515151)
    round_trips = 0
    for _ in range(1000):
        scenario, events = random_scenario_and_events(rng)
        cm = scenario_to_multigraph(scenario, events)
        decision = bell_check(cm)
        assert decision.accepted
        assert_certificate(cm, decision)
        round_trips += 1

    rng = random.Random(616161)
    accepts = rejects = attempts = 0
    while accepts + rejects < 1000 and attempts < 5000:
        attempts += 1
        scenario, events = random_scenario_and_events(rng)
        cm = scenario_to_multigraph(scenario, events)
        ci = rng.randrange(len(cm.colours))
        colour = cm.colours[ci]
        edges = set(cm.edge_sets[ci])
        if edges and rng.random() < 0.5:
            cm = remove_edge(cm, *rng.choice(sorted(edges)), colour)
        else:
            pairs = [(u, v) for u in range(cm.n) for v in range(u + 1, cm.n)
                     if (u, v) not in edges]
            if not pairs:
                continue
            sets = list(cm.edge_sets)
            sets[ci] = frozenset(edges | {rng.choice(pairs)})
            cm = ColouredMultigraph(cm.n, cm.colours, tuple(sets))
        decision = bell_check(cm)
        assert_certificate(cm, decision)
        if decision.accepted:
            accepts += 1
        else:
            rejects += 1

    fix_a = bell_check(coloured_cycle("AABAB"))
    fix_b = bell_check(coloured_cycle("AABABAB"))
    scenario_c = BellScenario(("A", "B", "C"), ((2, 2),) * 3)
    events_c = tuple(
        EventLabel((("A", m, o), ("B", m, o), ("C", m, o)))
        for m in (0, 1) for o in (0, 1))
    cm_c = scenario_to_multigraph(scenario_c, events_c)
    fix_c = bell_check(cm_c)
    cm_d = coloured_cycle("AAABB")
    fix_d = bell_check(cm_d)
    for cm, decision in ((coloured_cycle("AABAB"), fix_a),
                         (coloured_cycle("AABABAB"), fix_b),
                         (cm_c, fix_c), (cm_d, fix_d)):
        assert_certificate(cm, decision)
    ok = (fix_a.accepted and fix_a.scenario.uniform_shorthand() == (2, 2, 2)
          and fix_b.accepted
          and fix_b.scenario.uniform_shorthand() == (2, 3, 2)
          and fix_c.accepted
          and fix_c.scenario.uniform_shorthand() == (3, 2, 2)
          and not fix_d.accepted and fix_d.witness[0] == "A"
          and accepts > 100 and rejects > 100
          and accepts + rejects == 1000 and round_trips == 1000)
    line = _announce(6, "scenario round trips and rejection witnesses", ok,
                     f"{round_trips} round trips, {accepts} accepts / "
                     f"{rejects} rejects certified")
    assert ok, line


def test_criterion_7_reduction_lemmas(word_values, random_corpus_results):
    worst_drop = 0.0
    for row in random_corpus_results:
        worst_drop = max(worst_drop, row["value"] - row["removed_value"])
        worst_drop = max(worst_drop, row["value"] - row["merged_value"])

    plus_pairs = 0
    expected_plus = 0
    worst_shift = 0.0
    for n in (7, 9):
        for w, value in word_values[n].items():
            expected_plus += circular_run_lengths(w).count(3)
            cm = coloured_cycle(w, colours=("A", "B"))
            for i in range(n):
                try:
                    reduced = plus_one_reduce(cm, i)
                except InvalidArgumentError:
                    continue
                rw = canonical_word(cycle_word_str(reduced))
                worst_shift = max(worst_shift,
                                  abs(value - (word_values[n - 2][rw] + 1.0)))
                plus_pairs += 1

    break_pairs = 0
    expected_break = 0
    for n in (5, 7):
        for w, value in word_values[n].items():
            runs = circular_run_lengths(w)
            expected_break += runs.count(1)
            cm = coloured_cycle(w, colours=("A", "B"))
            for k in range(n):
                if w[k] == w[k - 1] or w[k] == w[(k + 1) % n]:
                    continue
                once = break_edge(cm, k, (k + 1) % n)
                twice = break_edge(once, k, k + 1)
                gw = canonical_word(cycle_word_str(twice))
                worst_shift = max(worst_shift,
                                  abs(word_values[n + 2][gw] - (value + 1.0)))
                break_pairs += 1

    pentagon = coloured_cycle("AABAB")
    spread = break_edge(break_edge(pentagon, 2, 3), 4, 5)
    sw = canonical_word(cycle_word_str(spread))
    worst_shift = max(worst_shift,
                      abs(word_values[7][sw] -
                          (word_values[5][canonical_word("AABAB")] + 1.0)))

    worst_swap = 0.0
    swaps_ok = True
    for n in (5, 7, 9):
        cm = coloured_cycle(bell_word(n))
        rpt = ctheta_seesaw(cm, dims=(2, 2), seed=3, **SWAP_BUDGET)
        swapped = swap_path_substitution(rpt.opr, cm, 1)
        worst_swap = max(worst_swap,
                         abs(swapped.objective() - rpt.opr.objective()))
        swaps_ok = swaps_ok and verify_opr(shadow(cm), swapped,
                                           tol=1e-8).passed

    ok = (worst_drop <= 1e-4 and worst_shift <= 1e-4
          and worst_swap <= 1e-10 and swaps_ok
          and plus_pairs == expected_plus and plus_pairs >= 9
          and break_pairs == expected_break and break_pairs >= 18)
    line = _announce(7, "reduction lemmas at see-saw precision", ok,
                     f"worst monotone drop = {worst_drop:.2e}, worst unit "
                     f"shift = {worst_shift:.2e} over {plus_pairs}+"
                     f"{break_pairs + 1} pairs, worst swap drift = "
                     f"{worst_swap:.2e}")
    assert ok, line


def test_criterion_8_classical_sandwich(word_values, random_corpus_results):
    worst_slack = -math.inf
    for n, table in word_values.items():
        alpha = (n - 1) // 2
        for value in table.values():
            worst_slack = max(worst_slack, alpha - value)
    for row in random_corpus_results:
        for key, graph in (("value", row["cm"]), ("removed_value",
                                                   row["removed"]),
                           ("merged_value", row["merged"])):
            alpha = independence_number(shadow(graph))
            worst_slack = max(worst_slack, alpha - row[key])

    perfect = [
        cycle(4), cycle(6), cycle(8),
        Graph(3, ((0, 1), (0, 2), (1, 2))),
        Graph(4, tuple(itertools.combinations(range(4), 2))),
        Graph(5, tuple(itertools.combinations(range(5), 2))),
        Graph(5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4))),
        Graph(4, ((0, 1), (1, 2), (2, 3))),
        Graph(5, ((0, 1), (0, 2), (0, 3), (0, 4))),
    ]
    worst_perfect = 0.0
    for idx, g in enumerate(perfect):
        alpha = independence_number(g)
        rpt = theta_seesaw(g, seed=40 + idx, restarts=6, kicks=40,
                           polish=120, tol=1e-11, max_iters=3000)
        worst_perfect = max(worst_perfect, abs(rpt.value - alpha))

    ok = worst_slack <= 1e-6 and worst_perfect <= 1e-5
    line = _announce(8, "classical bound sandwich", ok,
                     f"worst alpha slack = {worst_slack:.2e}, worst perfect "
                     f"deviation = {worst_perfect:.2e}")
    assert ok, line

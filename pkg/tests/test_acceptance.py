"""Exit criteria.  Each test records one PASS/FAIL line (see conftest)."""
import itertools
import random
import time
from fractions import Fraction

import pytest

from nonoverlap.bounds import (exact_value_n2, exact_value_n3, headline_upper_bound,
                               upper_bound)
from nonoverlap.constructions import (ConstructionParams, c1_params, construct_c1,
                                      construct_c2, select_params_best, select_params_lemma2,
                                      select_params_thm6, size_c2)
from nonoverlap.errors import RecipeInfeasible
from nonoverlap.oracle import check_conjecture2, exact_search
from nonoverlap.sfree import PatternSet, count_sfree, count_sfree_trie, sfree_lower_bound
from nonoverlap.sync_sim import StreamConfig, detect, generate_stream, run_trials
from nonoverlap.words import Code, Word, is_overlapping_pair, verify_code

from oracles import brute_sfree_count, naive_scan

pytestmark = pytest.mark.acceptance

INTRO = ["001101", "001011", "001111"]


def test_1_worked_examples(criterion):
    W = lambda t: Word.parse(t, 2)  # noqa: E731
    verdicts = [
        is_overlapping_pair(W("00000"), W("01111")) is True,
        is_overlapping_pair(W("10001"), W("11110")) is True,
        is_overlapping_pair(W("11111"), W("01110")) is False,
        verify_code(Code.of(W(t) for t in INTRO)).ok,
    ]
    criterion(1, all(verdicts), f"verdicts={verdicts}")


def test_2_construction_one_reproduces_intro_code(criterion):
    res = construct_c1(6, 2, 2, enumerate=True)
    words = sorted(str(w) for w in res.code)
    ok = words == sorted(INTRO) and res.size == len(res.code) == 3
    criterion(2, ok, f"size={res.size} words={words}")


def test_3_search_matches_length_two_formula(criterion):
    t0 = time.monotonic()
    got = {q: exact_search(2, q).optimum for q in range(2, 7)}
    want = {q: (q // 2) * ((q + 1) // 2) for q in range(2, 7)}
    elapsed = time.monotonic() - t0
    criterion(3, got == want and elapsed < 10, f"got={got} want={want} time={elapsed:.2f}s")


def test_4_search_matches_length_three_formula(criterion):
    t0 = time.monotonic()
    got = {q: exact_search(3, q).optimum for q in range(2, 5)}
    want = {}
    for q in range(2, 5):
        m = round(Fraction(2 * q, 3))
        want[q] = m * m * (q - m)
    elapsed = time.monotonic() - t0
    criterion(4, got == want and elapsed < 60, f"got={got} want={want} time={elapsed:.2f}s")


def test_5_sizes_below_upper_bound(criterion, finding):
    t0 = time.monotonic()
    bad = []
    searched = incomplete = constructed = 0
    for n in range(2, 13):
        for q in range(2, 9):
            head = headline_upper_bound(n, q)
            refined = upper_bound(n, q)
            sizes = [select_params_best(n, q).size, size_c2(select_params_lemma2(n, q))]
            sizes += [size_c2(c1_params(n, q, k)) for k in range(1, n)]
            try:
                sizes.append(size_c2(select_params_thm6(n, q)))
            except RecipeInfeasible:
                pass
            constructed += len(sizes)
            bad += [("construct", n, q, s) for s in sizes if not (s < head and s <= refined)]
            if q ** n <= 4096:
                res = exact_search(n, q, time_limit=2.0)
                searched += 1
                incomplete += not res.complete
                if not (res.optimum < head and res.optimum <= refined
                        and verify_code(res.witness).ok):
                    bad.append(("search", n, q, res.optimum))
    elapsed = time.monotonic() - t0
    if incomplete:
        finding(f"criterion 5: {incomplete} of {searched} searches hit the 2 s budget; "
                "their best-found codes were checked")
    criterion(5, not bad and elapsed < 300,
              f"constructed={constructed} searched={searched} violations={bad} time={elapsed:.1f}s")


def _random_params(rng: random.Random):
    n = rng.randint(2, 9)
    q = rng.randint(2, 6)
    k = rng.randint(1, n - 1) if rng.random() < 0.8 else n - 1
    ell = rng.randint(1, q - 1)
    pool = ell ** k
    if pool > 4000:
        return None
    rule = rng.choice(["lex", "full", "explicit"])
    if rule == "full":
        return ConstructionParams.full(n, q, k, ell)
    if rule == "lex":
        return ConstructionParams(n, q, k, ell, rng.randint(1, pool))
    pats = rng.sample(list(itertools.product(range(ell), repeat=k)), rng.randint(1, min(pool, 30)))
    return ConstructionParams.explicit(n, q, k, ell, pats)


def test_6_random_constructions_verify(criterion):
    t0 = time.monotonic()
    rng = random.Random(20240601)
    checked = coincident = 0
    failures = []
    while checked < 500:
        p = _random_params(rng)
        if p is None or size_c2(p) > 10 ** 4:
            continue
        res = construct_c2(p, enumerate=True)
        checked += 1
        coincident += p.k == p.n - 1
        if len(res.code) != res.size or not verify_code(res.code).ok:
            failures.append(p)
    elapsed = time.monotonic() - t0
    ok = not failures and coincident > 0 and elapsed < 120
    criterion(6, ok, f"checked={checked} k=n-1 cases={coincident} failures={failures[:3]} "
                     f"time={elapsed:.1f}s")


def test_7_sfree_counts_match_brute_force(criterion):
    t0 = time.monotonic()
    mismatches = []
    bound_violations = []
    cases = 0
    for q in range(2, 5):
        for k in range(1, 4):
            for ell in range(1, q):
                for s in range(1, ell ** k + 1):
                    p = PatternSet.lex_first(k, q, ell, s)
                    pats = p.patterns()
                    explicit = PatternSet.from_patterns(k, q, pats, alphabet=range(ell))
                    for r in range(0, 9):
                        cases += 1
                        expected = brute_sfree_count(q, k, r, pats)
                        got = count_sfree(p, r)
                        if got != expected or count_sfree_trie(explicit, r) != expected:
                            mismatches.append((q, k, ell, s, r))
                        if r >= k and sfree_lower_bound(p, r) > got:
                            bound_violations.append((q, k, ell, s, r))
    elapsed = time.monotonic() - t0
    ok = not mismatches and not bound_violations and elapsed < 120
    criterion(7, ok, f"cases={cases} mismatches={mismatches[:3]} "
                     f"bound_violations={bound_violations[:3]} time={elapsed:.1f}s")


def test_8_general_constant_at_desk_scale(criterion, finding):
    t0 = time.monotonic()
    below_50 = []
    below_100 = []
    worst = None
    for n in range(2, 13):
        for q in range(2, 9):
            size = select_params_best(n, q).size
            ratio = Fraction(size * n, q ** n)
            worst = ratio if worst is None else min(worst, ratio)
            if ratio < Fraction(1, 50):
                below_50.append((n, q, size))
            if ratio < Fraction(1, 100):
                below_100.append((n, q, size))
    elapsed = time.monotonic() - t0
    if below_50:
        finding(f"criterion 8: size < q^n/(50n) at {below_50}")
    criterion(8, not below_100 and elapsed < 60,
              f"min size/(q^n/n)={float(worst):.4f} below_1/50={len(below_50)} "
              f"below_1/100={below_100} time={elapsed:.2f}s")


def test_9_limit_trends(criterion):
    bad = []
    for q in range(2, 1001):
        r2 = Fraction(exact_value_n2(q) * 2, q * q)
        r3 = Fraction(exact_value_n3(q) * 3, q ** 3)
        if abs(r2 - Fraction(1, 2)) > Fraction(2, q) or abs(r3 - Fraction(4, 9)) > Fraction(2, q):
            bad.append(q)
    criterion(9, not bad, f"q in [2, 1000], violations={bad[:5]}")


SIM_CODES = [
    ("c1", (6, 2, 2)), ("c1", (7, 2, 2)), ("c1", (8, 2, 3)), ("c1", (9, 2, 3)),
    ("c1", (5, 3, 1)), ("c1", (6, 3, 2)), ("c1", (4, 4, 1)), ("c1", (5, 4, 2)),
    ("c1", (3, 5, 1)), ("c1", (10, 2, 3)),
    ("full", (4, 3, 2, 2)), ("full", (3, 4, 2, 3)), ("full", (2, 6, 1, 3)),
    ("full", (5, 4, 1, 2)), ("full", (6, 3, 5, 2)),
    ("lex", (5, 3, 2, 2, 3)), ("lex", (6, 3, 2, 2, 2)), ("lex", (4, 5, 3, 3, 10)),
    ("explicit", (6, 4, 2, 2, [(0, 1), (1, 1)])),
    ("explicit", (5, 3, 3, 2, [(0, 1, 0), (1, 1, 1)])),
]


def _build(kind, args):
    if kind == "c1":
        return construct_c1(*args, enumerate=True).code
    if kind == "full":
        return construct_c2(ConstructionParams.full(*args), enumerate=True).code
    if kind == "lex":
        return construct_c2(ConstructionParams(*args), enumerate=True).code
    return construct_c2(ConstructionParams.explicit(*args), enumerate=True).code


def _adversarial_stream(code, rng):
    """Codewords, codeword prefixes/suffixes and random runs glued together."""
    rows = [w.symbols for w in code]
    n, q = code.n, code.q
    out, embedded = [], []
    while len(out) < 6 * n:
        pick = rng.random()
        w = rng.choice(rows)
        if pick < 0.35:
            embedded.append(len(out) + 1)
            out.extend(w)
        elif pick < 0.6:
            out.extend(w[:rng.randint(1, n - 1)])
        elif pick < 0.85:
            out.extend(w[rng.randint(1, n - 1):])
        else:
            out.extend(rng.randrange(q) for _ in range(rng.randint(1, n)))
    return out, embedded


def test_10_simulator_guarantee(criterion):
    t0 = time.monotonic()
    rng = random.Random(7)
    problems = []
    rates = []
    for idx, (kind, args) in enumerate(SIM_CODES):
        code = _build(kind, args)
        n = code.n
        assert verify_code(code).ok
        rows = [w.symbols for w in code]
        for trial in range(10_000):
            if trial % 2:
                symbols, embedded = _adversarial_stream(code, rng)
            else:
                s = generate_stream(StreamConfig(code, 8 * n, rng.choice([0.0, 0.1, 0.3]),
                                                 seed=idx * 100_000 + trial))
                symbols, embedded = s.symbols, s.embedded
            rep = detect(code, symbols, embedded)
            pos = rep.detected_positions
            if any(b - a < n for a, b in zip(pos, pos[1:])) or rep.missed:
                problems.append((kind, args[:2], trial))
            if trial % 10 == 0 and pos != naive_scan(rows, symbols):
                problems.append(("scan", kind, args[:2], trial))
        stats = run_trials(StreamConfig(code, 10 ** 6 + n - 1, 0.0, seed=idx), 1)
        expected = Fraction(len(code), code.q ** n)
        measured = Fraction(stats.chance_hits, stats.windows)
        rel = abs(measured - expected) / expected
        rates.append(float(rel))
        if stats.windows < 10 ** 6 or rel > Fraction(1, 5):
            problems.append(("rate", kind, args[:2], float(measured), float(expected)))
    elapsed = time.monotonic() - t0
    criterion(10, not problems and elapsed < 180,
              f"codes={len(SIM_CODES)} max_rel_rate_err={max(rates):.4f} "
              f"problems={problems[:3]} time={elapsed:.1f}s")


def test_11_conjecture_reports(criterion, finding):
    v2 = check_conjecture2(2, range(2, 7))
    v3 = check_conjecture2(3, range(2, 5))
    for v in check_conjecture2(4, [2, 3]):
        finding(f"criterion 11: n=4 {v}")
    ok = all(v.equal for v in v2 + v3)
    criterion(11, ok, "n=2: " + "; ".join(map(str, v2)) + " | n=3: " + "; ".join(map(str, v3)))

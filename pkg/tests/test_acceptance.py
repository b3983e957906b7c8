"""Acceptance criteria, one test per criterion.

Every check is exact (no tolerances); each test prints a single PASS line
with its elapsed time and asserts the stated time budget.  Run with
`pytest tests/test_acceptance.py -s` to see the lines as they complete.
"""
import math
import random
import time

from slglab import (
    GlobalStrategy,
    PointSet,
    alpha,
    answer_grammar,
    answer_string,
    beta,
    bisection,
    build_gi,
    expand,
    expand_text,
    is_admissible,
    is_dyadic,
    is_irreducible,
    is_isomorphic,
    lz78,
    lz78_hard_string,
    lzd,
    make_admissible,
    run_global,
    sequential,
    sequitur,
    stats,
)
from slglab.generate import (
    random_admissible_slg,
    random_dyadic_slg,
    random_point_set,
    random_run_length_profile,
    random_slg,
    random_string,
)
from slglab.symbols import SymbolTable
from slglab.verify import (
    suite_cfg,
    suite_gamma,
    suite_rna_alpha,
    suite_rna_beta,
)

from conftest import brute_dyadic_distinct, wrna_exhaustive


def _report(name: str, started: float, budget: float, checks: int) -> None:
    elapsed = time.perf_counter() - started
    print(f"{name}: {checks} checks PASS ({elapsed:.2f}s < {budget:.0f}s)")
    assert elapsed < budget, f"{name} exceeded its {budget}s budget"


def _grammar_corpus(seed: int, count: int, max_nonterms: int = 30):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        t = SymbolTable()
        nv = rng.randint(1, max_nonterms)
        out.append(random_admissible_slg(rng, nv, 4, 260, t))
    return rng, out


def test_acceptance_01_global_boosting():
    """Every global strategy compresses an alpha string to exactly 7|V|
    and lands on the full-replacement intermediate grammar."""
    started = time.perf_counter()
    _, corpus = _grammar_corpus(1001, 50)
    checks = 0
    for g in corpus:
        nv = len(g.rules)
        w = alpha(g).text
        full = build_gi(g, frozenset(range(1, nv + 1))).grammar
        for strategy in GlobalStrategy:
            out = run_global(w, strategy, g.table)
            assert out.size == 7 * nv == (7 * g.size) // 2
            assert is_isomorphic(out, full)
            checks += 2
    _report("acceptance-01 global-boosting 7/2|G|", started, 10.0, checks)


def test_acceptance_02_sequential_sequitur_boosting():
    started = time.perf_counter()
    _, corpus = _grammar_corpus(1002, 50)
    checks = 0
    for g in corpus:
        nv = len(g.rules)
        w = alpha(g).text
        assert sequential(w, g.table).size == 7 * nv
        assert sequitur(w, g.table).size == 7 * nv
        checks += 2
    _report("acceptance-02 online-boosting 7/2|G|", started, 10.0, checks)


def test_acceptance_03_lzd_boosting():
    started = time.perf_counter()
    _, corpus = _grammar_corpus(1003, 50)
    checks = 0
    for g in corpus:
        nv = len(g.rules)
        total = stats(g).total_expansion
        r = beta(g)
        assert len(r.text) == 6 * total - 4 * nv
        fact, out = lzd(r.text, g.table)
        assert len(fact) == 3 * nv
        assert out.size == 9 * nv == (9 * g.size) // 2
        checks += 3
    _report("acceptance-03 lzd-boosting 9/2|G|", started, 10.0, checks)


def test_acceptance_04_alpha_identities():
    started = time.perf_counter()
    rng, corpus = _grammar_corpus(1004, 50)
    checks = 0
    for g in corpus:
        nv = len(g.rules)
        r = alpha(g)
        w = r.text
        assert len(w) == 4 * stats(g).total_expansion
        u = expand(g, g.start)
        assert all(
            u[j - 1] == w[r.offset + 2 * j - 2] for j in range(1, len(u) + 1)
        )
        for _ in range(5):
            subset = frozenset(i for i in range(1, nv + 1) if rng.random() < 0.5)
            assert expand(build_gi(g, subset).grammar, g.start) == w
        checks += 7
    _report("acceptance-04 alpha-identities", started, 5.0, checks)


def test_acceptance_05_lz78_run_length_bound():
    started = time.perf_counter()
    rng = random.Random(1005)
    t = SymbolTable()
    checks = 0
    for _ in range(200):
        k = rng.randint(1, 64)
        entries, pos = [], 0
        for color, length in random_run_length_profile(rng, k):
            entries.append((pos, color))
            pos += length
        w = lz78_hard_string(entries, k * k)
        fact, _ = lz78(w, t)
        assert len(fact) <= 6 * k
        for _ in range(20):
            x = rng.randrange(k * k)
            assert w[x] == [c for p, c in entries if p <= x][-1]
        checks += 2
    _report("acceptance-05 lz78-at-most-6k", started, 5.0, checks)


def test_acceptance_06_bisection():
    started = time.perf_counter()
    rng = random.Random(1006)
    checks = 0
    for _ in range(100):
        t = SymbolTable()
        n = 2 ** rng.randint(0, 10)
        u = random_string(rng, n, rng.randint(1, 4), t)
        g = bisection(u, t)
        assert expand(g, g.start) == u
        if n > 1:
            assert g.size == 2 * len(brute_dyadic_distinct(u))
        gd = random_dyadic_slg(rng, rng.randint(2, 1024), 2, SymbolTable())
        assert is_dyadic(gd)
        assert bisection(expand(gd, gd.start), gd.table).size <= gd.size
        checks += 2
    _report("acceptance-06 bisection-dyadic-count", started, 5.0, checks)


def test_acceptance_07_cfg_retargeting():
    started = time.perf_counter()
    verdicts = suite_cfg(1007, 20, 4)
    assert all(v.ok for v in verdicts), [v.line() for v in verdicts if not v.ok]
    _report("acceptance-07 cfg-retargeting-iff", started, 60.0, len(verdicts))


def test_acceptance_08_wrna_boosting():
    started = time.perf_counter()
    all_verdicts = []
    for fn in (suite_rna_alpha, suite_rna_beta, suite_gamma):
        all_verdicts += fn(1008, 25, 30, cap=60)
    assert all(v.ok for v in all_verdicts), [
        v.line() for v in all_verdicts if not v.ok
    ]
    _report("acceptance-08 folding-boosting", started, 120.0, len(all_verdicts))


def test_acceptance_09_rna_primitives():
    started = time.perf_counter()
    rng = random.Random(1009)
    from slglab import wrna, weighted_to_unweighted, check_reverse_and_match
    from slglab.rna import rna as rna_unit
    from slglab import check_decomposition
    from slglab.generate import random_matched_alphabet

    checks = 0
    for _ in range(1000):
        t = SymbolTable()
        al = random_matched_alphabet(rng, rng.randint(1, 3), 4, t)
        n = rng.randint(0, 12)
        u = tuple(rng.choice(al.symbols) for _ in range(n))
        assert wrna(u, al).value == wrna_exhaustive(u, al)
        checks += 1
    for _ in range(150):
        t = SymbolTable()
        al = random_matched_alphabet(rng, rng.randint(1, 2), 3, t)
        u = tuple(rng.choice(al.symbols) for _ in range(rng.randint(0, 10)))
        assert rna_unit(weighted_to_unweighted(u, al), al).value == wrna(u, al).value
        assert check_reverse_and_match(u, al)
        checks += 2
    for _ in range(100):
        t = SymbolTable()
        al = random_matched_alphabet(rng, 3, 3, t)
        heavy = al.extended(
            [t.terminal("h"), t.terminal("H")],
            {t.terminal("h"): t.terminal("H"), t.terminal("H"): t.terminal("h")},
            {t.terminal("h"): 50, t.terminal("H"): 50},
        )
        x = tuple(rng.choice(al.symbols) for _ in range(rng.randint(0, 5)))
        y = tuple(rng.choice(al.symbols) for _ in range(rng.randint(0, 5)))
        z = tuple(rng.choice(al.symbols) for _ in range(rng.randint(0, 5)))
        assert check_decomposition(
            x, t.terminal("h"), y, t.terminal("H"), z, heavy
        )
        checks += 1
    _report("acceptance-09 folding-primitives", started, 30.0, checks)


def test_acceptance_10_answer_string_grammars():
    started = time.perf_counter()
    rng = random.Random(1010)
    checks = 0
    for m in (2, 4, 8, 16, 32):
        logm = int(math.log2(m))
        for _ in range(20):
            ps = PointSet(m, frozenset(random_point_set(rng, m)))
            g = answer_grammar(ps)
            assert is_admissible(g)
            assert expand_text(g) == answer_string(ps)
            s = stats(g)
            assert s.height <= 2 * logm + 1
            assert s.size <= 4 * m * logm + 8 * m
            checks += 4
    _report("acceptance-10 answer-grammars O(m log m)", started, 10.0, checks)


def test_acceptance_11_admissible_conversion():
    started = time.perf_counter()
    rng = random.Random(1011)
    checks = 0
    for _ in range(200):
        t = SymbolTable()
        g = random_slg(rng, rng.randint(1, 10), rng.randint(1, 4), t)
        out = make_admissible(g)
        assert is_admissible(out)
        assert expand(out, out.start) == expand(g, g.start)
        assert out.size <= 2 * g.size
        checks += 3
    _report("acceptance-11 admissible-conversion 2|G|", started, 5.0, checks)


def test_acceptance_12_sequential_irreducibility():
    started = time.perf_counter()
    rng = random.Random(1012)
    checks = 0
    for _ in range(60):
        t = SymbolTable()
        u = random_string(rng, rng.randint(1, 220), rng.randint(1, 8), t)
        assert is_irreducible(sequential(u, t))
        checks += 1
    for _ in range(10):
        t = SymbolTable()
        g = random_admissible_slg(rng, rng.randint(1, 12), 4, 200, t)
        assert is_irreducible(sequential(alpha(g).text, t))
        checks += 1
    _report("acceptance-12 sequential-irreducible", started, 5.0, checks)

"""Compressor behavior: definitional examples, oracle agreement, round
trips, and the concatenation laws."""
import random

import pytest

from slglab import (
    SLG,
    CompressorError,
    GlobalStrategy,
    alpha,
    bisection,
    count_nonoverlapping,
    expand,
    expand_text,
    global_step,
    is_irreducible,
    lz78,
    lzd,
    maximal_strings,
    rna_beta,
    run_global,
    sequential,
    sequitur,
)
from slglab.generate import random_admissible_slg, random_matched_alphabet, random_string
from slglab.symbols import SymbolTable

from conftest import brute_dyadic_distinct, brute_maximal_strings


def _single_rule(table, text):
    head = table.fresh_nonterminal("W")
    return SLG({head: table.chars(text)}, head, table)


def test_count_nonoverlapping(table):
    g = _single_rule(table, "aaaa")
    assert count_nonoverlapping("aa", g) == 2
    g = _single_rule(table, "ab")
    assert count_nonoverlapping("ab", g) == 1
    g = _single_rule(table, "ababa")
    assert count_nonoverlapping("aba", g) == 1


def test_maximal_strings_examples(table):
    g = _single_rule(table, "abab")
    assert maximal_strings(g) == {table.chars("ab")}
    g = _single_rule(table, "abcd")
    assert maximal_strings(g) == set()


def test_maximal_strings_on_boosted_start(table, g0):
    # Both doubled-expansion strings are maximal: the short one repeats six
    # times and nothing longer reaches that count.
    w = alpha(g0).text
    head = table.fresh_nonterminal("W")
    g = SLG({head: w}, head, table)
    got = {tuple(s.display for s in m) for m in maximal_strings(g)}
    assert got == {
        ("a", "$_1", "b"),
        ("a", "$_1", "b", "$_2", "a", "$_1", "b"),
    }


def test_maximal_strings_match_bruteforce():
    rng = random.Random(23)
    for _ in range(120):
        t = SymbolTable()
        n = rng.randint(2, 40)
        u = random_string(rng, n, rng.randint(1, 4), t)
        head = t.fresh_nonterminal("W")
        g = SLG({head: u}, head, t)
        assert maximal_strings(g) == brute_maximal_strings(g)
    # multi-rule grammars too
    for _ in range(40):
        t = SymbolTable()
        g = random_admissible_slg(rng, rng.randint(2, 6), 3, 120, t)
        assert maximal_strings(g) == brute_maximal_strings(g)


def test_global_step_examples(table):
    g = _single_rule(table, "abab")
    out = global_step(g, "ab")
    assert out.size == 4 and expand_text(out) == "abab"
    g = _single_rule(table, "aaaa")
    out = global_step(g, "aa")
    assert out.size == 4 and expand_text(out) == "aaaa"
    with pytest.raises(CompressorError, match="not a maximal string"):
        global_step(g, "a")
    with pytest.raises(CompressorError, match="not a maximal string"):
        global_step(_single_rule(table, "abab"), "ba")


def test_run_global_small(table):
    for strategy in GlobalStrategy:
        assert run_global("ab", strategy, table).size == 2
        assert run_global("abab", strategy, table).size == 4


def test_run_global_terminates_and_roundtrips():
    rng = random.Random(31)
    strategies = list(GlobalStrategy)
    for i in range(120):
        t = SymbolTable()
        n = rng.randint(1, 300)
        u = random_string(rng, n, rng.randint(1, 16), t)
        g = run_global(u, strategies[i % 4], t)
        assert expand(g, g.start) == u
        assert len(g.rules) <= n + 1


def test_sequential_examples(table):
    g = sequential("ab", table)
    assert g.size == 2
    g = sequential("abab", table)
    assert g.size == 4 and len(g.rules) == 2
    assert expand_text(g) == "abab"


def test_sequitur_examples(table):
    g = sequitur("ab", table)
    assert g.size == 2
    g = sequitur("abab", table)
    assert g.size == 4 and len(g.rules) == 2
    # hand-run of the three reductions on abcabc: one rule for abc, used twice
    g = sequitur("abcabc", table)
    assert expand_text(g) == "abcabc"
    assert g.size == 5 and len(g.rules) == 2
    bodies = sorted(len(b) for b in g.rules.values())
    assert bodies == [2, 3]


def test_bisection_examples(table):
    assert bisection("abab", table).size == 4
    assert bisection("aaaa", table).size == 4
    assert bisection("a", table).size == 1


def test_bisection_matches_dyadic_count():
    rng = random.Random(37)
    for _ in range(60):
        t = SymbolTable()
        n = 2 ** rng.randint(0, 9)
        u = random_string(rng, n, rng.randint(1, 4), t)
        g = bisection(u, t)
        assert expand(g, g.start) == u
        if n > 1:
            assert g.size == 2 * len(brute_dyadic_distinct(u))


def test_lz78_examples(table):
    fact, g = lz78("0111", table)
    assert len(fact) == 3 and g.size == 9
    assert expand_text(g) == "0111"

    fact, g = lz78("a", table)
    assert len(fact) == 1 and expand_text(g) == "a"

    fact, g = lz78("aaaaa", table)
    assert [(p.start, p.length) for p in fact.phrases] == [(1, 1), (2, 2), (4, 2)]
    assert expand_text(g) == "aaaaa"
    assert g.size == 3 * 3 - 1  # final phrase is a bare repeat


def test_lzd_examples(table):
    fact, g = lzd("ab", table)
    assert len(fact) == 1 and expand_text(g) == "ab"

    fact, g = lzd("abab", table)
    assert [(p.start, p.length) for p in fact.phrases] == [(1, 2), (3, 2)]
    assert expand_text(g) == "abab"


def test_lzd_on_beta_string(g0, table):
    from slglab import beta

    w = beta(g0).text
    fact, g = lzd(w, table)
    assert len(fact) == 6
    assert g.size == 18
    assert expand(g, g.start) == w


def test_factorizations_concatenate():
    rng = random.Random(41)
    for _ in range(60):
        t = SymbolTable()
        u = random_string(rng, rng.randint(1, 500), rng.randint(1, 8), t)
        f78, _ = lz78(u, t)
        assert f78.check_concat(u)
        fzd, _ = lzd(u, t)
        assert fzd.check_concat(u)


def test_is_irreducible(table):
    a, b = table.terminal("a"), table.terminal("b")
    s, n, m = (table.nonterminal(x) for x in ("X1", "X2", "X3"))
    good = SLG({s: (n, n), n: (a, b)}, s, table)
    assert is_irreducible(good)
    dup = SLG({s: (n, n), n: (a, b), m: (a, b)}, s, table)
    assert not is_irreducible(dup)  # duplicate expansion
    s2 = table.nonterminal("X4")
    assert not is_irreducible(SLG({s2: table.chars("abab")}, s2, table))


def test_sequential_outputs_are_irreducible():
    rng = random.Random(43)
    for _ in range(60):
        t = SymbolTable()
        u = random_string(rng, rng.randint(1, 250), rng.randint(1, 6), t)
        g = sequential(u, t)
        assert expand(g, g.start) == u
        assert is_irreducible(g)


def test_round_trip_all_compressors():
    """Round-trip over 500 random strings, alphabet sizes 1..16.

    The linear parsers take the full lengths; the online and global ones get
    capped lengths to keep the quadratic scans inside the time budget.
    """
    rng = random.Random(47)
    strategies = list(GlobalStrategy)
    for i in range(500):
        t = SymbolTable()
        sigma = rng.randint(1, 16)
        n = rng.randint(1, 2000)
        u = random_string(rng, n, sigma, t)
        for algo in (bisection, lambda v, tt: lz78(v, tt)[1], lambda v, tt: lzd(v, tt)[1]):
            g = algo(u, t)
            assert expand(g, g.start) == u
        if n <= 600:
            g = sequitur(u, t)
            assert expand(g, g.start) == u
        if n <= 400:
            g = sequential(u, t)
            assert expand(g, g.start) == u
        if n <= 250:
            g = run_global(u, strategies[i % 4], t)
            assert expand(g, g.start) == u


def test_global_concat_law_on_boosted_halves():
    rng = random.Random(53)
    for _ in range(8):
        t = SymbolTable()
        alphabet = random_matched_alphabet(rng, 2, 3, t)
        g = random_admissible_slg(rng, rng.randint(1, 4), 2, 40, t)
        v = rna_beta(g, alphabet).text
        x, y = v[: len(v) // 2], v[len(v) // 2 :]
        for strat in GlobalStrategy:
            whole = run_global(v, strat, t).size
            parts = run_global(x, strat, t).size + run_global(y, strat, t).size
            assert whole <= parts


def test_sequential_concat_law_on_boosted_halves():
    rng = random.Random(59)
    for _ in range(8):
        t = SymbolTable()
        alphabet = random_matched_alphabet(rng, 2, 3, t)
        g = random_admissible_slg(rng, rng.randint(1, 4), 2, 40, t)
        v = rna_beta(g, alphabet).text
        x, y = v[: len(v) // 2], v[len(v) // 2 :]
        assert (
            sequential(v, t).size
            == sequential(x, t).size + sequential(y, t).size
        )


def test_empty_input_rejected(table):
    for fn in (sequential, sequitur, bisection):
        with pytest.raises(CompressorError, match="empty input"):
            fn("", table)
    with pytest.raises(CompressorError, match="empty input"):
        run_global("", GlobalStrategy.REPAIR, table)
    for fn in (lz78, lzd):
        with pytest.raises(CompressorError, match="empty input"):
            fn("", table)

"""Boosting constructions: length and offset identities, the intermediate
grammar family, answer strings, and the run-length predecessor string."""
import math
import random

import pytest

from slglab import (
    BoostError,
    MatchedAlphabet,
    PointSet,
    SLG,
    alpha,
    answer_grammar,
    answer_string,
    beta,
    bexp,
    build_gi,
    canonical_order,
    expand,
    expand_text,
    gamma,
    is_admissible,
    is_dyadic,
    lz78,
    lz78_hard_string,
    lzd,
    rna_alpha,
    rna_beta,
    run_global,
    sequential,
    stats,
    GlobalStrategy,
)
from slglab.generate import (
    random_admissible_slg,
    random_matched_alphabet,
    random_point_set,
    random_run_length_profile,
)
from slglab.rna import wrna
from slglab.symbols import SymbolTable


def _unit_alphabet(table):
    a, b = table.terminal("a"), table.terminal("b")
    am, bm = table.terminal("a~"), table.terminal("b~")
    return MatchedAlphabet(
        (a, am, b, bm),
        {a: am, am: a, b: bm, bm: b},
        {a: 1, am: 1, b: 1, bm: 1},
    )


# -- alpha --------------------------------------------------------------------


def test_alpha_g0(table, g0):
    r = alpha(g0)
    assert len(r.text) == 24
    assert r.offset == 8
    prefix = " ".join(s.display for s in r.text[:8])
    assert prefix == "a $_1 b #_1 a $_1 b #_2"
    u = expand(g0, g0.start)
    assert all(u[j - 1] == r.text[r.offset + 2 * j - 2] for j in range(1, 5))


def test_alpha_single_rule(table):
    a, b = table.terminal("a"), table.terminal("b")
    s = table.nonterminal("S1")
    g = SLG({s: (a, b)}, s, table)
    r = alpha(g)
    assert " ".join(x.display for x in r.text) == "a $_1 b #_1 a $_1 b #_2"
    assert len(r.text) == 8
    # both 0 and 4 satisfy the stride identity here; the block form gives 0
    assert r.offset == 0
    u = expand(g, s)
    assert all(u[j - 1] == r.text[r.offset + 2 * j - 2] for j in range(1, 3))


def test_alpha_length_identity_random():
    rng = random.Random(61)
    for _ in range(25):
        t = SymbolTable()
        g = random_admissible_slg(rng, rng.randint(1, 12), 3, 250, t)
        r = alpha(g)
        assert len(r.text) == 4 * stats(g).total_expansion
        u = expand(g, g.start)
        assert all(
            u[j - 1] == r.text[r.offset + 2 * j - 2] for j in range(1, len(u) + 1)
        )
        # the text is the definitional concatenation over the aux grammar
        from slglab.core import expand_all
        from slglab.symbols import SentinelFamily

        exp = expand_all(r.aux_grammar)
        rebuilt = []
        for i, n in enumerate(r.ordering, start=1):
            rebuilt += exp[n]
            rebuilt.append(t.sentinel(SentinelFamily.HASH, 2 * i - 1))
            rebuilt += exp[n]
            rebuilt.append(t.sentinel(SentinelFamily.HASH, 2 * i))
        assert tuple(rebuilt) == r.text


def test_alpha_requires_admissible(table):
    a, b = table.terminal("a"), table.terminal("b")
    s = table.nonterminal("S2")
    g = SLG({s: (a, b, a)}, s, table)
    with pytest.raises(BoostError, match="not admissible"):
        alpha(g)


def test_canonical_order_puts_start_last(table, g0):
    order = canonical_order(g0)
    assert order[-1] == g0.start
    assert [n.display for n in order] == ["N1", "S"]


# -- bexp / intermediate grammars ---------------------------------------------


def test_bexp_examples(table, g0):
    n1, s = table.nonterminal("N1"), table.nonterminal("S")
    assert " ".join(x.display for x in bexp(g0, frozenset(), n1)) == "a $_1 b"
    assert [x.display for x in bexp(g0, frozenset({1, 2}), n1)] == ["M1"]
    assert [x.display for x in bexp(g0, frozenset({1, 2}), s)] == ["M2"]
    got = " ".join(x.display for x in bexp(g0, frozenset({1}), s))
    assert got == "M1 $_2 M1"


def test_bexp_index_out_of_range(table, g0):
    with pytest.raises(BoostError, match="out of range"):
        bexp(g0, frozenset({3}), g0.start)


def test_build_gi_expands_to_boosted_text():
    rng = random.Random(67)
    for _ in range(10):
        t = SymbolTable()
        g = random_admissible_slg(rng, rng.randint(1, 10), 3, 200, t)
        w = alpha(g).text
        nv = len(g.rules)
        for _ in range(20):
            subset = frozenset(
                i for i in range(1, nv + 1) if rng.random() < 0.5
            )
            gi = build_gi(g, subset)
            assert expand(gi.grammar, gi.grammar.start) == w


def test_global_runs_reach_the_full_replacement_grammar(table, g0):
    w = alpha(g0).text
    full = build_gi(g0, frozenset({1, 2})).grammar
    for strategy in GlobalStrategy:
        out = run_global(w, strategy, table)
        assert out.size == 14
        from slglab import is_isomorphic

        assert is_isomorphic(out, full)


# -- beta ---------------------------------------------------------------------


def test_beta_g0(table, g0):
    r = beta(g0)
    assert len(r.text) == 28 == 6 * 6 - 4 * 2
    exp10 = r.text[:4]
    assert " ".join(s.display for s in exp10) == "a $_1 b $_2"
    # position map reads the original symbols out of the boosted text
    for i, positions in r.position_map.items():
        e = expand(g0, r.ordering[i - 1])
        assert len(positions) == len(e)
        for j, p in enumerate(positions):
            assert r.text[p - 1] == e[j]


def test_beta_per_nonterminal_lengths():
    rng = random.Random(71)
    for _ in range(15):
        t = SymbolTable()
        g = random_admissible_slg(rng, rng.randint(1, 10), 3, 220, t)
        r = beta(g)
        lens = g.expansion_lengths()
        total = stats(g).total_expansion
        assert len(r.text) == 6 * total - 4 * len(g.rules)
        # block of index i spans twice 3|exp(N_i)| - 2 symbols
        offset = 0
        for i, n in enumerate(r.ordering, start=1):
            block = 3 * lens[n] - 2
            assert r.position_map[i][0] == offset + 1
            offset += 2 * block
        assert offset == len(r.text)


# -- folding boosters -----------------------------------------------------------


def test_rna_alpha_g0(table, g0):
    alphabet = _unit_alphabet(table)
    r = rna_alpha(g0, alphabet)
    assert len(r.text) == 48 == 8 * 6
    # q(N1) = 3, q(S) = 7, offset = 2*2*15 + 7 + 2*3 = 73
    assert r.offset == 73
    u = expand(g0, g0.start)
    wu = wrna(u, alphabet).value
    wv = wrna(r.text, r.alphabet).value
    assert wv == 2 * wu + r.offset
    for strategy in GlobalStrategy:
        assert run_global(r.text, strategy, table).size <= 7 * g0.size


def test_rna_beta_g0(table, g0):
    alphabet = _unit_alphabet(table)
    r = rna_beta(g0, alphabet)
    assert len(r.text) == 96 == 16 * 6
    assert r.offset == 258 == 4 * 2 * 29 + 14 + 4 * 3
    u = expand(g0, g0.start)
    wv = wrna(r.text, r.alphabet).value
    assert wv == 4 * wrna(u, alphabet).value + r.offset
    # exactly 11|G| by the half-by-half accounting
    assert sequential(r.text, table).size == 22 * len(g0.rules)


def test_gamma_g0(table, g0):
    alphabet = _unit_alphabet(table)
    r = gamma(g0, alphabet)
    assert r.offset == 9  # 1 + 2 * (1+1+1+1)
    x1 = r.text[2:6]
    assert " ".join(s.display for s in x1) == "a $_1 b $_2"
    y1 = r.text[10:14]
    assert " ".join(s.display for s in y1) == "$'_2 b~ $'_1 a~"
    u = expand(g0, g0.start)
    assert wrna(r.text, r.alphabet).value == 2 * r.offset + wrna(u, alphabet).value
    fact, slg = lzd(r.text, table)
    assert slg.size == 18 * 2 - 6 <= 9 * g0.size
    total = stats(g0).total_expansion
    assert len(r.text) <= 12 * total + 5


def test_gamma_needs_two_nonterminals(table):
    a, b = table.terminal("a"), table.terminal("b")
    s = table.nonterminal("S3")
    g = SLG({s: (a, b)}, s, table)
    with pytest.raises(BoostError, match="two nonterminals"):
        gamma(g, _unit_alphabet(table))


def test_gamma_exact_length_law():
    rng = random.Random(137)
    for _ in range(10):
        t = SymbolTable()
        alphabet = random_matched_alphabet(rng, 2, 4, t)
        g = random_admissible_slg(rng, rng.randint(2, 8), 2, 80, t)
        r = gamma(g, alphabet)
        lens = g.expansion_lengths()
        blocks = sum(4 * (3 * lens[n] - 2) for n in r.ordering[:-1])
        tail = 3 * lens[r.ordering[-1]] - 2
        assert len(r.text) == 4 + blocks + tail


def test_bexp_rejects_reserved_marker_names(table):
    a, b = table.terminal("a"), table.terminal("b")
    m1 = table.nonterminal("M1")
    g = SLG({m1: (a, b)}, m1, table)
    with pytest.raises(BoostError, match="reserved marker names"):
        bexp(g, frozenset({1}), m1)


def test_folding_boosters_extend_match_involutively():
    rng = random.Random(73)
    for _ in range(10):
        t = SymbolTable()
        alphabet = random_matched_alphabet(rng, 2, 4, t)
        g = random_admissible_slg(rng, rng.randint(2, 6), 2, 60, t)
        for build in (rna_alpha, rna_beta, gamma):
            r = build(g, alphabet)
            ext = r.alphabet
            for s in ext.symbols:
                assert ext.match[ext.match[s]] == s
                assert ext.match[s] != s
                assert ext.weight[s] == ext.weight[ext.match[s]]


def test_rna_alpha_rejects_zero_weight(table, g0):
    a, b = table.terminal("a"), table.terminal("b")
    am, bm = table.terminal("a~"), table.terminal("b~")
    alphabet = MatchedAlphabet(
        (a, am, b, bm),
        {a: am, am: a, b: bm, bm: b},
        {a: 0, am: 0, b: 1, bm: 1},
    )
    with pytest.raises(BoostError, match="positive"):
        rna_alpha(g0, alphabet)


# -- answer strings -------------------------------------------------------------


def test_answer_string_examples():
    p = PointSet(2, frozenset({(1, 1), (2, 2)}))
    assert answer_string(p) == "1110"
    # definitional brute force for the all-in-one-column case: both points
    # dominate only cells with x = 2, and (2,2) sees both, so parity 0
    p2 = PointSet(2, frozenset({(2, 1), (2, 2)}))
    brute = []
    for y in (1, 2):
        for x in (1, 2):
            cnt = sum(1 for (px, py) in p2.points if px <= x and py <= y)
            brute.append(str(cnt % 2))
    assert answer_string(p2) == "".join(brute) == "0100"
    with pytest.raises(BoostError, match="exactly 2 points"):
        PointSet(2, frozenset())


def test_point_set_normalization_pads_to_power_of_two():
    ps = PointSet.normalized(3, {(1, 1), (2, 3), (3, 2)})
    assert ps.m == 4
    assert (4, 4) in ps.points and len(ps.points) == 4


def test_answer_grammar_matches_answer_string():
    rng = random.Random(79)
    for m in (2, 4, 8, 16):
        logm = int(math.log2(m))
        for _ in range(6):
            ps = PointSet(m, frozenset(random_point_set(rng, m)))
            g = answer_grammar(ps)
            assert is_admissible(g)
            assert is_dyadic(g)
            assert expand_text(g) == answer_string(ps)
            s = stats(g)
            assert s.height <= 2 * logm + 1
            assert s.size <= 2 * m * logm + 4 * m


def test_answer_grammar_single_column():
    ps = PointSet(2, frozenset({(1, 1), (1, 2)}))
    g = answer_grammar(ps)
    assert expand_text(g) == answer_string(ps)


# -- run-length predecessor string ---------------------------------------------


def test_lz78_hard_string_examples():
    assert lz78_hard_string([(0, "0"), (2, "1")], 4) == "0011"
    assert lz78_hard_string([(0, "1"), (1, "1")], 4) == "1111"
    with pytest.raises(BoostError, match="strictly increasing"):
        lz78_hard_string([(0, "0"), (0, "1")], 4)
    with pytest.raises(BoostError, match="first position"):
        lz78_hard_string([(1, "0"), (2, "1")], 4)


def test_lz78_hard_string_bound_and_readout():
    rng = random.Random(83)
    t = SymbolTable()
    for _ in range(60):
        k = rng.randint(1, 64)
        entries, pos = [], 0
        for color, length in random_run_length_profile(rng, k):
            entries.append((pos, color))
            pos += length
        w = lz78_hard_string(entries, k * k)
        assert len(w) == k * k
        for _ in range(10):
            x = rng.randrange(k * k)
            predecessor_color = [c for p, c in entries if p <= x][-1]
            assert w[x] == predecessor_color  # w[x+1] in 1-based indexing
        fact, _ = lz78(w, t)
        assert len(fact) <= 6 * k

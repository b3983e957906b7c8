"""Verification suites: randomized end-to-end checks of the exact size and
value identities, shared by the command-line `verify` command and by the
acceptance tests.

Each suite generates its instances from a seeded RNG and emits one verdict
line per check per trial.  Lines carry stable check identifiers and expected
versus actual values; output is a pure function of the seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import boost
from . import cfg as cfgmod
from . import compressors as comp
from . import generate as gen
from . import rna as rnamod
from .core import expand, is_dyadic, is_isomorphic
from .symbols import SymbolTable


@dataclass(frozen=True)
class Verdict:
    trial: int
    check: str
    detail: str
    ok: bool

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{self.trial:03d}] {self.check}: {self.detail} {status}"


class _Suite:
    def __init__(self, name: str, seed: int):
        self.name = name
        self.rng = random.Random(f"{seed}:{name}")
        self.verdicts: list[Verdict] = []

    def record(self, trial: int, check: str, expected, actual) -> bool:
        ok = expected == actual
        self.verdicts.append(
            Verdict(trial, check, f"expected={expected} actual={actual}", ok)
        )
        return ok

    def record_le(self, trial: int, check: str, actual, bound) -> bool:
        ok = actual <= bound
        self.verdicts.append(
            Verdict(trial, check, f"actual={actual} bound={bound}", ok)
        )
        return ok

    def record_bool(self, trial: int, check: str, ok: bool, detail: str = "") -> bool:
        self.verdicts.append(Verdict(trial, check, detail or "holds", bool(ok)))
        return bool(ok)


def _fresh_admissible(rng, max_nonterms, cap=260, alphabet=4):
    table = SymbolTable()
    nv = rng.randint(1, max_nonterms)
    return gen.random_admissible_slg(rng, nv, alphabet, cap, table)


# ---------------------------------------------------------------------------


def suite_global(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    """Alpha identities plus the 7/2|G| law for all four global strategies."""
    s = _Suite("global", seed)
    for trial in range(1, trials + 1):
        g = _fresh_admissible(s.rng, max_nonterms)
        nv = len(g.rules)
        total = sum(g.expansion_lengths().values())
        r = boost.alpha(g)
        w = r.text
        s.record(trial, "alpha-length-4x", 4 * total, len(w))
        u = expand(g, g.start)
        ok = all(u[j] == w[r.offset + 2 * j] for j in range(len(u)))
        s.record_bool(trial, "alpha-stride-offset", ok, f"offset={r.offset}")
        idx = list(range(1, nv + 1))
        sub = frozenset(s.rng.sample(idx, s.rng.randint(0, nv)))
        gi = boost.build_gi(g, sub)
        s.record_bool(
            trial,
            "alpha-subset-grammar-expansion",
            expand(gi.grammar, gi.grammar.start) == w,
            f"indices={sorted(sub)}",
        )
        g_full = boost.build_gi(g, frozenset(idx)).grammar
        for strat in comp.GlobalStrategy:
            out = comp.run_global(w, strat, g.table)
            s.record(trial, f"global-size-7/2|G|-{strat.value}", 7 * nv, out.size)
            s.record_bool(
                trial,
                f"global-final-grammar-{strat.value}",
                is_isomorphic(out, g_full),
                "isomorphic to the full-replacement grammar",
            )
    return s.verdicts


def suite_sequential(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    s = _Suite("sequential", seed)
    for trial in range(1, trials + 1):
        g = _fresh_admissible(s.rng, max_nonterms)
        nv = len(g.rules)
        w = boost.alpha(g).text
        out = comp.sequential(w, g.table)
        s.record(trial, "sequential-size-7/2|G|", 7 * nv, out.size)
        s.record_bool(
            trial, "sequential-irreducible", comp.is_irreducible(out)
        )
    return s.verdicts


def suite_sequitur(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    s = _Suite("sequitur", seed)
    for trial in range(1, trials + 1):
        g = _fresh_admissible(s.rng, max_nonterms)
        nv = len(g.rules)
        w = boost.alpha(g).text
        out = comp.sequitur(w, g.table)
        s.record(trial, "sequitur-size-7/2|G|", 7 * nv, out.size)
    return s.verdicts


def suite_lzd(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    s = _Suite("lzd", seed)
    for trial in range(1, trials + 1):
        g = _fresh_admissible(s.rng, max_nonterms)
        nv = len(g.rules)
        total = sum(g.expansion_lengths().values())
        r = boost.beta(g)
        s.record(trial, "beta-length-6x-4V", 6 * total - 4 * nv, len(r.text))
        fact, slg = comp.lzd(r.text, g.table)
        s.record(trial, "lzd-phrases-3V", 3 * nv, len(fact))
        s.record(trial, "lzd-size-9/2|G|", 9 * nv, slg.size)
    return s.verdicts


def suite_bisection(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    s = _Suite("bisection", seed)

    def distinct_dyadic(u):
        seen, k = set(), 2
        while k <= len(u):
            for a in range(0, len(u) - k + 1, k):
                seen.add(u[a : a + k])
            k *= 2
        return len(seen)

    for trial in range(1, trials + 1):
        table = SymbolTable()
        n = 2 ** s.rng.randint(1, 10)
        u = gen.random_string(s.rng, n, s.rng.randint(1, 4), table)
        out = comp.bisection(u, table)
        s.record(trial, "bisection-size-2x-dyadic", 2 * distinct_dyadic(u), out.size)
        gd = gen.random_dyadic_slg(s.rng, s.rng.randint(2, 600), 2, SymbolTable())
        ok = is_dyadic(gd)
        b = comp.bisection(expand(gd, gd.start), gd.table)
        s.record_bool(
            trial,
            "bisection-at-most-dyadic-grammar",
            ok and b.size <= gd.size,
            f"bisection={b.size} grammar={gd.size}",
        )
    return s.verdicts


def suite_lz78(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    s = _Suite("lz78", seed)
    table = SymbolTable()
    for trial in range(1, trials + 1):
        k = s.rng.randint(1, 64)
        runs = gen.random_run_length_profile(s.rng, k)
        entries, pos = [], 0
        for color, ln in runs:
            entries.append((pos, color))
            pos += ln
        w = boost.lz78_hard_string(entries, k * k)
        fact, _ = comp.lz78(w, table)
        s.record_le(trial, "lz78-phrases-at-most-6k", len(fact), 6 * k)
        ok = True
        for _ in range(25):
            x = s.rng.randrange(k * k)
            color = [c for p, c in entries if p <= x][-1]
            ok = ok and w[x] == color
        s.record_bool(trial, "predecessor-readout", ok)
    return s.verdicts


def _random_cfg(rng, terminals, table) -> cfgmod.CFG:
    nts = [table.fresh_nonterminal("C") for _ in range(rng.randint(1, 3))]
    rules = []
    for i, head in enumerate(nts):
        for _ in range(rng.randint(1, 3)):
            pool = list(terminals) + nts[i:]
            body = tuple(rng.choice(pool) for _ in range(rng.randint(0, 3)))
            rules.append((head, body))
    # guarantee some terminal production so the language is often nonempty
    rules.append((nts[-1], (rng.choice(list(terminals)),)))
    return cfgmod.CFG(tuple(rules), nts[0])


def _cfg_for_exact(u, table) -> cfgmod.CFG:
    head = table.fresh_nonterminal("C")
    return cfgmod.CFG(((head, tuple(u)),), head)


def suite_cfg(seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    """Primitive transformations exhaustively, then end-to-end re-targeting."""
    s = _Suite("cfg", seed)
    table = SymbolTable()
    a, b, c = (table.terminal(ch) for ch in "abc")
    d1 = table.sentinel(boost.D, 1)

    # Includes a unit rule and a nonterminal-bearing body so that malformed
    # interleaving would surface within the exhaustive length bound.
    e0, f0 = table.nonterminal("E0"), table.nonterminal("F0")
    base = cfgmod.CFG(
        (
            (e0, (a, b)),
            (e0, (b, e0, c)),
            (e0, (f0,)),
            (f0, (a,)),
            (f0, (f0, c)),
        ),
        e0,
    )

    def all_strings(alphabet, up_to):
        yield ()
        level = [()]
        for _ in range(up_to):
            nxt = []
            for t in level:
                for ch in alphabet:
                    w = t + (ch,)
                    nxt.append(w)
                    yield w
            level = nxt

    inter = cfgmod.interleave(base, 1, 0, table)
    pref = cfgmod.add_prefix(base, 2, (a, b, c), table)
    erased = cfgmod.erase_closure(base, [d1], table)
    ok_i = ok_p = ok_e = True
    for w in all_strings((a, b, c, d1), 6):
        in_base_odd = (
            len(w) % 2 == 0
            and len(w) > 0
            and cfgmod.cyk_member(base, w[0::2])
            if all(x in (a, b, c) for x in w[0::2])
            else False
        )
        if all(x in (a, b, c, d1) for x in w):
            ok_i = ok_i and (cfgmod.cyk_member(inter, w) == in_base_odd)
            erased_w = tuple(x for x in w if x != d1)
            want = cfgmod.cyk_member(base, erased_w) if all(
                x in (a, b, c) for x in erased_w
            ) else False
            ok_e = ok_e and (cfgmod.cyk_member(erased, w) == want)
        if all(x in (a, b, c) for x in w):
            want = len(w) >= 2 and cfgmod.cyk_member(base, w[2:])
            ok_p = ok_p and (cfgmod.cyk_member(pref, w) == want)
    s.record_bool(1, "interleave-language-equation", ok_i, "all strings up to length 6")
    s.record_bool(1, "add-prefix-language-equation", ok_p, "all strings up to length 6")
    s.record_bool(1, "erase-closure-language-equation", ok_e, "all strings up to length 6")

    for trial in range(1, trials + 1):
        tt = SymbolTable()
        g = gen.random_admissible_slg(s.rng, s.rng.randint(1, 4), 2, 36, tt)
        u = expand(g, g.start)
        kind = trial % 3
        if kind == 0:
            gamma_cfg = _cfg_for_exact(u, tt)
        elif kind == 1:
            other = list(u)
            i = s.rng.randrange(len(other))
            alpha_syms = sorted(g.terminals(), key=lambda x: x.id)
            other[i] = alpha_syms[(alpha_syms.index(other[i]) + 1) % len(alpha_syms)]
            gamma_cfg = _cfg_for_exact(other, tt)
        else:
            gamma_cfg = _random_cfg(s.rng, sorted(g.terminals(), key=lambda x: x.id), tt)
        in_lang = all(x in gamma_cfg.terminals() for x in u) and cfgmod.cyk_member(
            gamma_cfg, u
        )
        wa = boost.alpha(g).text
        ga = cfgmod.gamma_prime_alpha(gamma_cfg, g)
        s.record(
            trial, "retarget-alpha-iff", in_lang, cfgmod.cyk_member(ga, wa)
        )
        wb = boost.beta(g).text
        gb = cfgmod.gamma_prime_beta(gamma_cfg, g)
        s.record(
            trial, "retarget-beta-iff", in_lang, cfgmod.cyk_member(gb, wb)
        )
    return s.verdicts


def _rna_instance(s: _Suite, cap: int):
    table = SymbolTable()
    alphabet = gen.random_matched_alphabet(s.rng, s.rng.randint(2, 3), 4, table)
    g = gen.random_admissible_slg_with_expansion(s.rng, cap, 2, table)
    return table, alphabet, g


def suite_rna_alpha(seed: int, trials: int, max_nonterms: int, cap: int = 40) -> list[Verdict]:
    s = _Suite("rna-alpha", seed)
    for trial in range(1, trials + 1):
        table, alphabet, g = _rna_instance(s, cap)
        u = expand(g, g.start)
        r = boost.rna_alpha(g, alphabet)
        total = sum(g.expansion_lengths().values())
        s.record(trial, "fold-alpha-length-8x", 8 * total, len(r.text))
        wu = rnamod.wrna(u, alphabet).value
        wv = rnamod.wrna(r.text, r.alphabet).value
        s.record(trial, "fold-alpha-value-2x-plus-offset", 2 * wu + r.offset, wv)
    return s.verdicts


def suite_rna_beta(seed: int, trials: int, max_nonterms: int, cap: int = 40) -> list[Verdict]:
    s = _Suite("rna-beta", seed)
    for trial in range(1, trials + 1):
        table, alphabet, g = _rna_instance(s, cap)
        u = expand(g, g.start)
        r = boost.rna_beta(g, alphabet)
        total = sum(g.expansion_lengths().values())
        s.record(trial, "fold-beta-length-16x", 16 * total, len(r.text))
        wu = rnamod.wrna(u, alphabet).value
        wv = rnamod.wrna(r.text, r.alphabet).value
        s.record(trial, "fold-beta-value-4x-plus-offset", 4 * wu + r.offset, wv)
        out = comp.sequential(r.text, table)
        s.record(
            trial, "fold-beta-sequential-11|G|", 22 * len(g.rules), out.size
        )
    return s.verdicts


def suite_gamma(seed: int, trials: int, max_nonterms: int, cap: int = 40) -> list[Verdict]:
    s = _Suite("gamma", seed)
    for trial in range(1, trials + 1):
        table, alphabet, g = _rna_instance(s, cap)
        if len(g.rules) < 2:
            g = gen.random_admissible_slg(s.rng, 2, 2, cap, table)
        u = expand(g, g.start)
        nv = len(g.rules)
        r = boost.gamma(g, alphabet)
        total = sum(g.expansion_lengths().values())
        s.record_le(trial, "fold-gamma-length-12x-plus-5", len(r.text), 12 * total + 5)
        wu = rnamod.wrna(u, alphabet).value
        wv = rnamod.wrna(r.text, r.alphabet).value
        s.record(trial, "fold-gamma-value-2c0-plus-base", 2 * r.offset + wu, wv)
        fact, slg = comp.lzd(r.text, table)
        s.record(trial, "fold-gamma-lzd-18V-6", 18 * nv - 6, slg.size)
        s.record_le(trial, "fold-gamma-lzd-at-most-9|G|", slg.size, 9 * (2 * nv))
    return s.verdicts


SUITES = {
    "global": suite_global,
    "sequential": suite_sequential,
    "sequitur": suite_sequitur,
    "lzd": suite_lzd,
    "bisection": suite_bisection,
    "lz78": suite_lz78,
    "cfg": suite_cfg,
    "rna-alpha": suite_rna_alpha,
    "rna-beta": suite_rna_beta,
    "gamma": suite_gamma,
}


def run_suite(name: str, seed: int, trials: int, max_nonterms: int) -> list[Verdict]:
    if name == "all":
        out: list[Verdict] = []
        for key in SUITES:
            out.extend(SUITES[key](seed, trials, max_nonterms))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](seed, trials, max_nonterms)

"""Shared fixtures and the independent oracles the tests check against."""
from __future__ import annotations

import itertools

import pytest

from slglab import SLG
from slglab.symbols import SymbolTable


@pytest.fixture()
def table():
    return SymbolTable()


@pytest.fixture()
def g0(table):
    """The two-rule running example: S -> N1 N1, N1 -> a b."""
    a, b = table.terminal("a"), table.terminal("b")
    s, n1 = table.nonterminal("S"), table.nonterminal("N1")
    return SLG({s: (n1, n1), n1: (a, b)}, s, table)


# -- oracles ------------------------------------------------------------------


def greedy_count_in_bodies(bodies, s):
    """Greedy left-to-right non-overlapping occurrence count of s."""
    total = 0
    m = len(s)
    for body in bodies:
        i = 0
        while i + m <= len(body):
            if tuple(body[i : i + m]) == tuple(s):
                total += 1
                i += m
            else:
                i += 1
    return total


def brute_maximal_strings(g):
    """Definition-level enumeration over all substrings of all bodies."""
    bodies = [tuple(b) for b in g.rules.values()]
    candidates = {}
    for body in bodies:
        for i in range(len(body)):
            for j in range(i + 2, len(body) + 1):
                s = body[i:j]
                if s not in candidates:
                    candidates[s] = greedy_count_in_bodies(bodies, s)
    out = set()
    for s, f in candidates.items():
        if f < 2:
            continue
        dominated = any(
            len(t) > len(s) and ft >= f for t, ft in candidates.items()
        )
        if not dominated:
            out.add(s)
    return out


def brute_dyadic_distinct(u):
    """Distinct substrings over dyadic intervals of length > 1."""
    u = tuple(u)
    seen = set()
    k = 2
    while k <= len(u):
        for a in range(0, len(u) - k + 1, k):
            seen.add(u[a : a + k])
        k *= 2
    return seen


def wrna_exhaustive(u, alphabet):
    """Plain recursive enumeration of all non-crossing matchings (no memo)."""
    u = tuple(u)

    def best(i, j):
        if i >= j:
            return 0
        top = best(i + 1, j)
        want = alphabet.match[u[i]]
        for k in range(i + 1, j + 1):
            if u[k] == want:
                v = alphabet.weight[u[i]] + best(i + 1, k - 1) + best(k + 1, j)
                if v > top:
                    top = v
        return top

    return best(0, len(u) - 1)


def cfg_language_upto(g, max_len, budget=400_000):
    """All members of L(g) up to the length bound, by pruned breadth-first
    derivation search (an oracle independent of the CYK tables)."""
    from slglab.cfg import CFG

    assert isinstance(g, CFG)
    by_head = {}
    for head, body in g.rules:
        by_head.setdefault(head, []).append(body)
    # minimal derivable length per nonterminal
    min_len = {h: None for h in by_head}
    changed = True
    while changed:
        changed = False
        for head, bodies in by_head.items():
            for body in bodies:
                total = 0
                ok = True
                for s in body:
                    if s.is_terminal():
                        total += 1
                    elif min_len[s] is None:
                        ok = False
                        break
                    else:
                        total += min_len[s]
                if ok and (min_len[head] is None or total < min_len[head]):
                    min_len[head] = total
                    changed = True

    def lower_bound(form):
        total = 0
        for s in form:
            if s.is_terminal():
                total += 1
            else:
                if min_len[s] is None:
                    return max_len + 1
                total += min_len[s]
        return total

    results = set()
    seen = {(g.start,)}
    queue = [(g.start,)]
    steps = 0
    while queue:
        steps += 1
        assert steps < budget, "derivation oracle budget exceeded"
        form = queue.pop()
        idx = next((i for i, s in enumerate(form) if s.is_nonterminal()), None)
        if idx is None:
            results.add(form)
            continue
        for body in by_head[form[idx]]:
            nxt = form[:idx] + tuple(body) + form[idx + 1 :]
            if lower_bound(nxt) > max_len or len(nxt) > max_len + 12:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return results


def all_strings_upto(alphabet, max_len):
    for n in range(max_len + 1):
        for tup in itertools.product(alphabet, repeat=n):
            yield tup

"""Random instance generators used by the verification suites and tests."""
from __future__ import annotations

import random

from .core import SLG, is_admissible
from .rna import MatchedAlphabet
from .symbols import Symbol, SymbolTable, default_table

_LETTERS = "abcdefghijklmnop"


def terminal_alphabet(table: SymbolTable, size: int) -> list[Symbol]:
    if not 1 <= size <= len(_LETTERS):
        raise ValueError("alphabet size out of range")
    return [table.terminal(ch) for ch in _LETTERS[:size]]


def random_string(rng: random.Random, length: int, alphabet_size: int,
                  table: SymbolTable | None = None) -> tuple[Symbol, ...]:
    table = table if table is not None else default_table()
    alpha = terminal_alphabet(table, alphabet_size)
    return tuple(rng.choice(alpha) for _ in range(length))


def random_admissible_slg(
    rng: random.Random,
    num_nonterminals: int,
    alphabet_size: int = 4,
    max_total_expansion: int = 400,
    table: SymbolTable | None = None,
) -> SLG:
    """Admissible SLG with the given nonterminal count.

    Built top-down: the start is created first and every later nonterminal is
    created to fill a child slot, so reachability and the length-2 rule shape
    hold by construction.  Slots may also reuse a strictly later-created
    nonterminal (never an ancestor, so the rule graph stays acyclic) or take
    a terminal.  Grammars whose total expansion exceeds the cap are redrawn.
    """
    if num_nonterminals < 1:
        raise ValueError("need at least one nonterminal")
    table = table if table is not None else default_table()
    alpha = terminal_alphabet(table, alphabet_size)

    for _ in range(200):
        nodes: list[Symbol] = [table.fresh_nonterminal("G")]
        created_at = {nodes[0]: 0}
        slots: list[tuple[Symbol, int]] = [(nodes[0], 0), (nodes[0], 1)]
        rules: dict[Symbol, list] = {nodes[0]: [None, None]}
        qi = 0
        while qi < len(slots):
            head, child = slots[qi]
            qi += 1
            deficit = num_nonterminals - len(nodes)
            remaining_slots = len(slots) - qi + 1
            force_fresh = deficit > 0 and remaining_slots <= deficit
            later = [n for n in nodes if created_at[n] > created_at[head]]
            roll = rng.random()
            if force_fresh or (deficit > 0 and roll < 0.45):
                fresh = table.fresh_nonterminal("G")
                created_at[fresh] = len(nodes)
                nodes.append(fresh)
                rules[fresh] = [None, None]
                slots.append((fresh, 0))
                slots.append((fresh, 1))
                rules[head][child] = fresh
            elif later and roll < 0.60:
                rules[head][child] = rng.choice(later)
            else:
                rules[head][child] = rng.choice(alpha)
        g = SLG(
            {h: tuple(b) for h, b in rules.items()},  # type: ignore[arg-type]
            nodes[0],
            table,
        )
        total = sum(g.expansion_lengths().values())
        if total <= max_total_expansion:
            assert is_admissible(g)
            return g
    raise RuntimeError("could not draw a grammar under the expansion cap")


def random_admissible_slg_with_expansion(
    rng: random.Random,
    max_total_expansion: int,
    alphabet_size: int = 4,
    table: SymbolTable | None = None,
) -> SLG:
    """Admissible grammar whose total expansion stays under the given cap;
    the nonterminal count is drawn to fit."""
    hi = max(1, max_total_expansion // 7)
    nv = rng.randint(1, max(1, hi))
    return random_admissible_slg(
        rng, nv, alphabet_size, max_total_expansion, table
    )


def random_slg(
    rng: random.Random,
    num_nonterminals: int = 6,
    alphabet_size: int = 4,
    table: SymbolTable | None = None,
) -> SLG:
    """General SLG (bodies of length 1..4, possibly unreachable rules)."""
    table = table if table is not None else default_table()
    alpha = terminal_alphabet(table, alphabet_size)
    for _ in range(100):
        heads = [table.fresh_nonterminal("H") for _ in range(num_nonterminals)]
        rules: dict[Symbol, tuple[Symbol, ...]] = {}
        for i, head in enumerate(heads):
            pool = list(alpha) + heads[:i]
            body = tuple(rng.choice(pool) for _ in range(rng.randint(1, 4)))
            rules[head] = body
        g = SLG(rules, heads[-1], table)
        if g.expansion_lengths()[g.start] >= 2:
            return g
    raise RuntimeError("could not draw a grammar with expansion >= 2")


def random_dyadic_slg(
    rng: random.Random,
    length: int,
    alphabet_size: int = 2,
    table: SymbolTable | None = None,
) -> SLG:
    """Dyadic SLG for a random (often periodic) string of the given length.

    Identical substrings reuse a nonterminal only with some probability, so
    the result usually carries duplicated expansions and is strictly larger
    than the Bisection parse of its expansion.
    """
    if length < 2:
        raise ValueError("length must be at least 2")
    table = table if table is not None else default_table()
    alpha = terminal_alphabet(table, alphabet_size)
    if rng.random() < 0.5:
        period = rng.randint(1, 4)
        pat = [rng.choice(alpha) for _ in range(period)]
        content = [pat[i % period] for i in range(length)]
    else:
        content = [rng.choice(alpha) for _ in range(length)]

    rules: dict[Symbol, tuple[Symbol, ...]] = {}
    memo: dict[tuple[Symbol, ...], list[Symbol]] = {}

    def node(s: tuple[Symbol, ...]) -> Symbol:
        if len(s) == 1:
            return s[0]
        known = memo.get(s)
        if known and rng.random() < 0.6:
            return rng.choice(known)
        k = 1
        while k * 2 < len(s):
            k *= 2
        head = table.fresh_nonterminal("Y")
        rules[head] = (node(s[:k]), node(s[k:]))
        memo.setdefault(s, []).append(head)
        return head

    start = node(tuple(content))
    return SLG(rules, start, table)


def random_matched_alphabet(
    rng: random.Random,
    pairs: int = 2,
    max_weight: int = 4,
    table: SymbolTable | None = None,
    base: str | None = None,
) -> MatchedAlphabet:
    """Alphabet of `pairs` matched letter pairs with weights in 1..max_weight."""
    table = table if table is not None else default_table()
    symbols: list[Symbol] = []
    match: dict[Symbol, Symbol] = {}
    weight: dict[Symbol, int] = {}
    letters = base if base is not None else _LETTERS
    for i in range(pairs):
        a = table.terminal(letters[i])
        b = table.terminal(letters[i] + "~")
        w = rng.randint(1, max_weight)
        symbols += [a, b]
        match[a], match[b] = b, a
        weight[a] = weight[b] = w
    return MatchedAlphabet(tuple(symbols), match, weight)


def random_point_set(rng: random.Random, m: int) -> set[tuple[int, int]]:
    """m distinct points on the m x m grid."""
    points: set[tuple[int, int]] = set()
    while len(points) < m:
        points.add((rng.randint(1, m), rng.randint(1, m)))
    return points


def random_run_length_profile(
    rng: random.Random, k: int
) -> list[tuple[str, int]]:
    """k binary runs with positive lengths summing to k*k."""
    total = k * k
    cuts = sorted(rng.sample(range(1, total), k - 1)) if k > 1 else []
    bounds = [0] + cuts + [total]
    runs = []
    for i in range(k):
        runs.append((rng.choice("01"), bounds[i + 1] - bounds[i]))
    return runs

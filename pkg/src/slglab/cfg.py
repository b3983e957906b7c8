"""General context-free grammars: membership and the language-preserving
transformations that re-target a CFG at boosted strings.

Membership runs CYK after normalization (binarize, remove epsilon and unit
rules, isolate terminals).  The transformations are size-linear rewrites:
interposing a wildcard between symbols, prepending a fixed-length block, and
closing the language under sentinel insertion.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import SLG
from .symbols import SentinelFamily, Symbol, SymbolTable, default_table

DEFAULT_CYK_CAP = 5000


class CfgError(ValueError):
    pass


@dataclass(frozen=True)
class CFG:
    """Context-free grammar; multiple rules per head and epsilon bodies are
    allowed.  Size is the total body length over all rules."""

    rules: tuple[tuple[Symbol, tuple[Symbol, ...]], ...]
    start: Symbol
    _compiled: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        heads = {h for h, _ in self.rules}
        if not self.start.is_nonterminal():
            raise CfgError("start symbol must be a nonterminal")
        if self.start not in heads:
            raise CfgError("start symbol has no rule")
        for head, body in self.rules:
            if not head.is_nonterminal():
                raise CfgError(f"rule head {head.display} is not a nonterminal")
            for s in body:
                if s.is_nonterminal() and s not in heads:
                    raise CfgError(f"nonterminal {s.display} has no rule")

    @property
    def size(self) -> int:
        return sum(len(body) for _, body in self.rules)

    def nonterminals(self) -> frozenset[Symbol]:
        return frozenset(h for h, _ in self.rules)

    def terminals(self) -> frozenset[Symbol]:
        out = set()
        for _, body in self.rules:
            for s in body:
                if s.is_terminal():
                    out.add(s)
        return frozenset(out)


# -- text format: `HEAD -> tok tok | tok | _` (`_` is epsilon) ---------------


def serialize_cfg(g: CFG) -> str:
    by_head: dict[Symbol, list[tuple[Symbol, ...]]] = {}
    order: list[Symbol] = []
    for head, body in g.rules:
        if head not in by_head:
            by_head[head] = []
            order.append(head)
        by_head[head].append(body)
    if order[0] != g.start:
        order.remove(g.start)
        order.insert(0, g.start)
    lines = []
    for head in order:
        alts = " | ".join(
            " ".join(s.display for s in body) if body else "_"
            for body in by_head[head]
        )
        lines.append(f"{head.display} -> {alts}")
    return "\n".join(lines) + "\n"


def parse_cfg(text: str, table: SymbolTable | None = None) -> CFG:
    table = table if table is not None else default_table()
    raw: list[tuple[int, str, list[list[str]]]] = []
    heads: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line == "#" or line.startswith("# "):
            continue
        if "->" not in line:
            raise CfgError(f"line {line_no}: missing '->'")
        head, rest = line.split("->", 1)
        head = head.strip()
        if len(head.split()) != 1:
            raise CfgError(f"line {line_no}: bad head {head!r}")
        alts = [alt.split() for alt in rest.split("|")]
        heads.add(head)
        raw.append((line_no, head, alts))
    if not raw:
        raise CfgError("no rules")
    rules: list[tuple[Symbol, tuple[Symbol, ...]]] = []
    for _, head, alts in raw:
        head_sym = table.nonterminal(head)
        for alt in alts:
            body = tuple(
                table.nonterminal(t) if t in heads else table.terminal(t)
                for t in alt
                if t != "_"
            )
            rules.append((head_sym, body))
    return CFG(tuple(rules), table.nonterminal(raw[0][1]))


# -- membership ---------------------------------------------------------------


class _Compiled:
    __slots__ = ("unary", "binary_left", "nullable_start")

    def __init__(self, unary, binary_left, nullable_start):
        self.unary = unary            # terminal id -> set of head ids
        self.binary_left = binary_left  # left id -> list[(right id, head id)]
        self.nullable_start = nullable_start


def _compile(g: CFG) -> _Compiled:
    if g._compiled:
        return g._compiled[0]
    # Work over integer ids; fresh ids for helper nonterminals.
    next_id = [-1]

    def fresh() -> int:
        next_id[0] -= 1
        return next_id[0]

    start = g.start.id
    rules: list[tuple[int, tuple[int, ...]]] = []
    term_ids: set[int] = {t.id for t in g.terminals()}
    for head, body in g.rules:
        rules.append((head.id, tuple(s.id for s in body)))

    # 1. fresh start wrapper
    s0 = fresh()
    rules.append((s0, (start,)))

    # 2. binarize long bodies
    binned: list[tuple[int, tuple[int, ...]]] = []
    for head, body in rules:
        while len(body) > 2:
            helper = fresh()
            binned.append((head, (body[0], helper)))
            head, body = helper, body[1:]
        binned.append((head, body))

    # 3. nullable closure, then epsilon removal
    nullable: set[int] = set()
    changed = True
    while changed:
        changed = False
        for head, body in binned:
            if head in nullable:
                continue
            if all(s not in term_ids and s in nullable for s in body):
                nullable.add(head)
                changed = True
    stripped: set[tuple[int, tuple[int, ...]]] = set()
    for head, body in binned:
        variants = [()]
        for s in body:
            keep = [v + (s,) for v in variants]
            if s not in term_ids and s in nullable:
                keep += variants
            variants = keep
        for v in variants:
            if v:
                stripped.add((head, v))

    # 4. unit closure
    unit: dict[int, set[int]] = {}
    proper: set[tuple[int, tuple[int, ...]]] = set()
    for head, body in stripped:
        if len(body) == 1 and body[0] not in term_ids:
            unit.setdefault(head, set()).add(body[0])
        else:
            proper.add((head, body))
    closure: dict[int, set[int]] = {}
    for origin in unit:
        seen = set(unit[origin])
        queue = list(seen)
        while queue:
            t = queue.pop()
            for nxt in unit.get(t, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        closure[origin] = seen
    final = set(proper)
    for origin, targets in closure.items():
        for t in targets:
            for head, body in proper:
                if head == t:
                    final.add((origin, body))

    # 5. isolate terminals inside binary bodies
    preterm: dict[int, int] = {}
    unary: dict[int, set[int]] = {}
    binary_left: dict[int, list[tuple[int, int]]] = {}

    def pre(t: int) -> int:
        if t not in preterm:
            h = fresh()
            preterm[t] = h
            unary.setdefault(t, set()).add(h)
        return preterm[t]

    for head, body in final:
        if len(body) == 1:
            unary.setdefault(body[0], set()).add(head)
        else:
            left, right = body
            if left in term_ids:
                left = pre(left)
            if right in term_ids:
                right = pre(right)
            binary_left.setdefault(left, []).append((right, head))

    compiled = _Compiled(unary, binary_left, start in nullable or s0 in nullable)
    g._compiled.append(compiled)
    return compiled


def cyk_member(g: CFG, u, length_cap: int = DEFAULT_CYK_CAP) -> bool:
    """Whether `u` belongs to the grammar's language."""
    u = tuple(u)
    if len(u) > length_cap:
        raise CfgError(f"input length {len(u)} exceeds the cap {length_cap}")
    terms = g.terminals()
    for s in u:
        if s not in terms:
            raise CfgError(f"symbol {s.display} not in the terminal set")
    comp = _compile(g)
    n = len(u)
    if n == 0:
        return comp.nullable_start
    start = g.start.id
    # cell[i][j] = heads deriving u[i..i+j]
    cells: list[list[set[int]]] = [[set() for _ in range(n - i)] for i in range(n)]
    for i, s in enumerate(u):
        cells[i][0] = set(comp.unary.get(s.id, ()))
    bleft = comp.binary_left
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            acc = cells[i][span - 1]
            for k in range(1, span):
                left_cell = cells[i][k - 1]
                right_cell = cells[i + k][span - k - 1]
                if not left_cell or not right_cell:
                    continue
                for l in left_cell:
                    for right, head in bleft.get(l, ()):
                        if right in right_cell:
                            acc.add(head)
    return start in cells[0][n - 1]


# -- transformations ----------------------------------------------------------


def _fresh_cfg_nonterminal(table: SymbolTable, prefix: str) -> Symbol:
    return table.fresh_nonterminal(prefix)


def interleave(g: CFG, num_dollars: int, num_hashes: int,
               table: SymbolTable | None = None) -> CFG:
    """Accepts even-length strings whose odd-position subsequence lies in
    the input language; even positions are wildcards over the enlarged
    alphabet (terminals plus the two sentinel families)."""
    table = table if table is not None else default_table()
    if num_dollars < 0 or num_hashes < 0:
        raise CfgError("sentinel budget must be nonnegative")
    sentinels = [table.sentinel(SentinelFamily.DOLLAR, i) for i in range(1, num_dollars + 1)]
    sentinels += [table.sentinel(SentinelFamily.HASH, i) for i in range(1, num_hashes + 1)]
    terms = g.terminals()
    if terms & set(sentinels):
        raise CfgError("sentinel families overlap the grammar alphabet")
    sigma = sorted(terms, key=lambda s: s.id) + sentinels
    x = _fresh_cfg_nonterminal(table, "X")
    rules: list[tuple[Symbol, tuple[Symbol, ...]]] = []
    for head, body in g.rules:
        # The wildcard follows every terminal occurrence; nonterminals carry
        # their own interleaving, so tagging them too would inject extra
        # even-position symbols.
        inter: list[Symbol] = []
        for s in body:
            inter.append(s)
            if s.is_terminal():
                inter.append(x)
        rules.append((head, tuple(inter)))
    for c in sigma:
        rules.append((x, (c,)))
    return CFG(tuple(rules), g.start)


def add_prefix(g: CFG, k: int, alphabet=None, table: SymbolTable | None = None) -> CFG:
    """Accepts exactly (alphabet^k) . L(input), via a doubling chain."""
    table = table if table is not None else default_table()
    if k < 1:
        raise CfgError("prefix length must be at least 1")
    sigma = sorted(
        alphabet if alphabet is not None else g.terminals(), key=lambda s: s.id
    )
    m = k.bit_length() - 1
    xs = [_fresh_cfg_nonterminal(table, "X") for _ in range(m + 1)]
    rules: list[tuple[Symbol, tuple[Symbol, ...]]] = list(g.rules)
    for c in sigma:
        rules.append((xs[0], (c,)))
    for i in range(1, m + 1):
        rules.append((xs[i], (xs[i - 1], xs[i - 1])))
    prefix = [xs[b] for b in range(m + 1) if (k >> b) & 1]
    new_start = _fresh_cfg_nonterminal(table, "SP")
    rules.append((new_start, tuple(prefix) + (g.start,)))
    return CFG(tuple(rules), new_start)


def erase_closure(g: CFG, sentinels, table: SymbolTable | None = None) -> CFG:
    """Accepts every string that lands in the input language after erasing
    all occurrences of the given sentinel symbols."""
    table = table if table is not None else default_table()
    sentinels = list(sentinels)
    if g.terminals() & set(sentinels):
        raise CfgError("sentinel set overlaps the grammar alphabet")
    nd = _fresh_cfg_nonterminal(table, "ND")
    rules: list[tuple[Symbol, tuple[Symbol, ...]]] = []
    for head, body in g.rules:
        inter: list[Symbol] = [nd]
        for s in body:
            inter += [s, nd]
        rules.append((head, tuple(inter)))
    rules.append((nd, (nd, nd)))
    rules.append((nd, ()))
    for c in sentinels:
        rules.append((nd, (c,)))
    return CFG(tuple(rules), g.start)


# -- composed re-targeting at boosted strings --------------------------------


def gamma_prime_alpha(g_cfg: CFG, g: SLG) -> CFG:
    """CFG accepting exactly the alpha-boosted strings of members of the
    input language; sizes derive from length arithmetic, never expansion."""
    from .boost import alpha_sentinel_counts  # local import to avoid a cycle

    nv, k = alpha_sentinel_counts(g)
    g2 = interleave(g_cfg, nv, 2 * nv, g.table)
    sigma = set(g2.terminals()) | set(g.terminals())
    return add_prefix(g2, k, sorted(sigma, key=lambda s: s.id), g.table)


def gamma_prime_beta(g_cfg: CFG, g: SLG) -> CFG:
    """CFG accepting exactly the beta-boosted strings of members of the
    input language."""
    from .boost import beta_sentinel_counts

    nv, k = beta_sentinel_counts(g)
    dollars = [g.table.sentinel(SentinelFamily.DOLLAR, i) for i in range(1, 2 * nv + 1)]
    g2 = erase_closure(g_cfg, dollars, g.table)
    sigma = set(g2.terminals()) | set(g.terminals()) | set(dollars)
    return add_prefix(g2, k, sorted(sigma, key=lambda s: s.id), g.table)

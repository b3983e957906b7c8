"""Straight-line grammar model: measurements, conversions, and text format.

An SLG maps every nonterminal to exactly one right-hand side and its rule
dependencies are acyclic, so each symbol expands to a unique terminal string.
All operations here are pure; grammar values are never mutated after
construction.
"""
from __future__ import annotations

from dataclasses import dataclass

from .symbols import (
    Symbol,
    SymbolTable,
    default_table,
    parse_sentinel_display,
)

# Expansion lengths are tracked with 64-bit semantics; exceeding this is a
# hard error instead of silent wraparound.
MAX_EXPANSION = 2**63 - 1


class GrammarError(ValueError):
    pass


class GrammarParseError(GrammarError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class GrammarStats:
    size: int
    num_nonterminals: int
    expansion_length: int
    total_expansion: int
    height: int


class SLG:
    """Straight-line grammar over a SymbolTable.

    `rules` maps each nonterminal to its definition (a tuple of symbols) and
    `start` names the starting nonterminal.  Construction validates the SLG
    shape: every nonterminal on a right-hand side has a rule, and the rule
    dependencies admit a topological order.
    """

    __slots__ = ("table", "rules", "start", "_topo", "_lens", "_heights")

    def __init__(
        self,
        rules: dict[Symbol, tuple[Symbol, ...]],
        start: Symbol,
        table: SymbolTable | None = None,
    ):
        self.table = table if table is not None else default_table()
        self.rules = {head: tuple(body) for head, body in rules.items()}
        self.start = start
        self._topo: tuple[Symbol, ...] | None = None
        self._lens: dict[Symbol, int] | None = None
        self._heights: dict[Symbol, int] | None = None
        self._validate()

    def _validate(self) -> None:
        if not self.start.is_nonterminal():
            raise GrammarError("start symbol must be a nonterminal")
        if self.start not in self.rules:
            raise GrammarError(f"start symbol {self.start.display} has no rule")
        for head, body in self.rules.items():
            if not head.is_nonterminal():
                raise GrammarError(f"rule head {head.display} is not a nonterminal")
            if self.table.get(head.display) is not head:
                raise GrammarError(
                    f"symbol {head.display} is not interned in this table"
                )
            for sym in body:
                if sym.is_nonterminal() and sym not in self.rules:
                    raise GrammarError(
                        f"nonterminal {sym.display} used in rhs({head.display}) "
                        "has no rule"
                    )
                if self.table.get(sym.display) is not sym:
                    raise GrammarError(
                        f"symbol {sym.display} is not interned in this table"
                    )
        self._topo = self._topological()

    def _topological(self) -> tuple[Symbol, ...]:
        """Children-before-parents order; raises on a rule cycle."""
        order: list[Symbol] = []
        state: dict[Symbol, int] = {}  # 1 = on stack, 2 = done
        for root in self.rules:
            if state.get(root) == 2:
                continue
            stack: list[tuple[Symbol, int]] = [(root, 0)]
            state[root] = 1
            while stack:
                node, idx = stack[-1]
                body = self.rules[node]
                advanced = False
                while idx < len(body):
                    child = body[idx]
                    idx += 1
                    if child.is_nonterminal():
                        st = state.get(child)
                        if st == 1:
                            raise GrammarError(
                                f"cycle through nonterminal {child.display}"
                            )
                        if st != 2:
                            stack[-1] = (node, idx)
                            stack.append((child, 0))
                            state[child] = 1
                            advanced = True
                            break
                if advanced:
                    continue
                stack.pop()
                state[node] = 2
                order.append(node)
        return tuple(order)

    # -- derived measurements, cached lazily ------------------------------

    def topological(self) -> tuple[Symbol, ...]:
        assert self._topo is not None
        return self._topo

    def expansion_lengths(self) -> dict[Symbol, int]:
        if self._lens is None:
            lens: dict[Symbol, int] = {}
            for head in self.topological():
                total = 0
                for sym in self.rules[head]:
                    total += lens[sym] if sym.is_nonterminal() else 1
                    if total > MAX_EXPANSION:
                        raise OverflowError(
                            f"expansion length of {head.display} exceeds 64-bit range"
                        )
                lens[head] = total
            self._lens = lens
        return self._lens

    def heights(self) -> dict[Symbol, int]:
        if self._heights is None:
            hts: dict[Symbol, int] = {}
            for head in self.topological():
                best = -1
                for sym in self.rules[head]:
                    best = max(best, hts[sym] if sym.is_nonterminal() else 0)
                hts[head] = best + 1 if best >= 0 else 0
            self._heights = hts
        return self._heights

    @property
    def size(self) -> int:
        return sum(len(body) for body in self.rules.values())

    def nonterminals(self) -> tuple[Symbol, ...]:
        return tuple(self.rules)

    def terminals(self) -> frozenset[Symbol]:
        out = set()
        for body in self.rules.values():
            for sym in body:
                if sym.is_terminal():
                    out.add(sym)
        return frozenset(out)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SLG(start={self.start.display}, rules={len(self.rules)})"


def reachable_nonterminals(g: SLG) -> set[Symbol]:
    seen = {g.start}
    stack = [g.start]
    while stack:
        for sym in g.rules[stack.pop()]:
            if sym.is_nonterminal() and sym not in seen:
                seen.add(sym)
                stack.append(sym)
    return seen


def expand(g: SLG, x: Symbol) -> tuple[Symbol, ...]:
    """The unique terminal string derived from `x`, built bottom-up."""
    if x.is_terminal():
        return (x,)
    if x not in g.rules:
        raise GrammarError(f"symbol not in grammar: {x.display}")
    g.expansion_lengths()  # overflow guard before materializing
    memo: dict[Symbol, tuple[Symbol, ...]] = {}
    for head in g.topological():
        parts: list[Symbol] = []
        for sym in g.rules[head]:
            if sym.is_terminal():
                parts.append(sym)
            else:
                parts.extend(memo[sym])
        memo[head] = tuple(parts)
        if head == x:
            break
    return memo[x]


def expand_all(g: SLG) -> dict[Symbol, tuple[Symbol, ...]]:
    """Expansions of every nonterminal, in one bottom-up pass."""
    g.expansion_lengths()
    memo: dict[Symbol, tuple[Symbol, ...]] = {}
    for head in g.topological():
        parts: list[Symbol] = []
        for sym in g.rules[head]:
            if sym.is_terminal():
                parts.append(sym)
            else:
                parts.extend(memo[sym])
        memo[head] = tuple(parts)
    return memo


def expand_text(g: SLG, x: Symbol | None = None) -> str:
    """Expansion joined into a plain string of terminal displays."""
    return "".join(s.display for s in expand(g, x if x is not None else g.start))


def stats(g: SLG) -> GrammarStats:
    lens = g.expansion_lengths()
    total = sum(lens.values())
    if total > MAX_EXPANSION:
        raise OverflowError("total expansion exceeds 64-bit range")
    return GrammarStats(
        size=g.size,
        num_nonterminals=len(g.rules),
        expansion_length=lens[g.start],
        total_expansion=total,
        height=g.heights()[g.start],
    )


def is_admissible(g: SLG) -> bool:
    """Every definition has length 2 and every nonterminal is reachable."""
    if any(len(body) != 2 for body in g.rules.values()):
        return False
    return len(reachable_nonterminals(g)) == len(g.rules)


def is_dyadic(g: SLG) -> bool:
    """Admissible, and each left child expands to a power-of-two length
    at least the right child's length."""
    if not is_admissible(g):
        return False
    lens = g.expansion_lengths()

    def ln(sym: Symbol) -> int:
        return lens[sym] if sym.is_nonterminal() else 1

    for body in g.rules.values():
        left, right = ln(body[0]), ln(body[1])
        if left & (left - 1) or left < right:
            return False
    return True


def make_admissible(g: SLG) -> SLG:
    """Equivalent admissible grammar of size at most twice the input's.

    Empty-expanding nonterminals are dropped from all definitions, the rule
    graph is pruned of single-successor vertices (inlining them), and every
    surviving definition is binarized by repeated left-to-right pairing.
    """
    lens = g.expansion_lengths()
    if lens[g.start] < 2:
        raise GrammarError("expansion too short")

    # Definitions without zero-length symbols, restricted to the reachable
    # part.  Nonterminals expanding to the empty string disappear entirely.
    reach = reachable_nonterminals(g)
    bodies: dict[Symbol, list[Symbol]] = {}
    for head in reach:
        if lens[head] == 0:
            continue
        bodies[head] = [
            s for s in g.rules[head] if s.is_terminal() or lens[s] > 0
        ]

    # Prune vertices with exactly one outgoing edge, deepest-first.  The
    # redirect map sends a pruned nonterminal to the symbol it stood for.
    redirect: dict[Symbol, Symbol] = {}

    def resolve(sym: Symbol) -> Symbol:
        while sym in redirect:
            sym = redirect[sym]
        return sym

    for head in g.topological():
        if head not in bodies:
            continue
        if len(bodies[head]) == 1:
            redirect[head] = resolve(bodies[head][0])
            del bodies[head]

    start = resolve(g.start)
    if start.is_terminal() or start not in bodies:
        raise GrammarError("expansion too short")

    table = g.table
    out: dict[Symbol, tuple[Symbol, ...]] = {}
    for head, body in bodies.items():
        u = [resolve(s) for s in body]
        while len(u) > 2:
            k = len(u) // 2
            packed: list[Symbol] = []
            for i in range(k):
                fresh = table.fresh_nonterminal("A")
                out[fresh] = (u[2 * i], u[2 * i + 1])
                packed.append(fresh)
            u = packed + u[2 * k :]
        out[head] = tuple(u)
    return SLG(out, start, table)


def is_isomorphic(g1: SLG, g2: SLG) -> bool:
    """Structural equality up to nonterminal renaming, terminals fixed."""
    if g1.terminals() != g2.terminals():
        return False
    if len(g1.rules) != len(g2.rules):
        return False
    fwd: dict[Symbol, Symbol] = {}
    bwd: dict[Symbol, Symbol] = {}
    stack = [(g1.start, g2.start)]
    while stack:
        a, b = stack.pop()
        if a in fwd:
            if fwd[a] != b or bwd.get(b) != a:
                return False
            continue
        if b in bwd:
            return False
        fwd[a] = b
        bwd[b] = a
        ra, rb = g1.rules[a], g2.rules[b]
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if x.is_terminal() or y.is_terminal():
                if x != y:
                    return False
            else:
                stack.append((x, y))
    if len(fwd) == len(g1.rules):
        return True
    # Unreachable remainders are paired by structural signature and the
    # candidate bijection is then re-verified rule by rule.
    return _match_remainder(g1, g2, fwd, bwd)


def _match_remainder(g1, g2, fwd, bwd) -> bool:
    def signatures(g, mapped, forward):
        sig: dict[Symbol, tuple] = {}
        for head in g.topological():
            if head in mapped:
                continue
            parts = []
            for s in g.rules[head]:
                if s.is_terminal():
                    parts.append(("t", s.id))
                elif s in mapped:
                    key = mapped[s].id if forward else s.id
                    parts.append(("m", key))
                else:
                    parts.append(("r", sig[s]))
            sig[head] = tuple(parts)
        return sig

    sig1 = signatures(g1, fwd, True)
    sig2 = signatures(g2, bwd, False)
    rest1 = sorted(sig1, key=lambda n: (sig1[n], n.id))
    rest2 = sorted(sig2, key=lambda n: (sig2[n], n.id))
    if [sig1[n] for n in rest1] != [sig2[n] for n in rest2]:
        return False
    for a, b in zip(rest1, rest2):
        fwd[a] = b
    # Final verification of the whole candidate bijection.
    for a, b in fwd.items():
        ra, rb = g1.rules[a], g2.rules[b]
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if x.is_terminal():
                if x != y:
                    return False
            elif fwd.get(x) != y:
                return False
    return True


def random_access(g: SLG, i: int) -> Symbol:
    """The i-th terminal (1-based) of exp(start), by length-guided descent."""
    lens = g.expansion_lengths()
    if i < 1 or i > lens[g.start]:
        raise GrammarError(f"position {i} out of range")
    node = g.start
    while True:
        for sym in g.rules[node]:
            span = lens[sym] if sym.is_nonterminal() else 1
            if i <= span:
                if sym.is_terminal():
                    return sym
                node = sym
                break
            i -= span


# -- text format -------------------------------------------------------------
#
#   HEAD -> tok tok ...
#
# The first line's head is the start symbol.  A token is a terminal unless it
# appears as some head; sentinel tokens use their rendered display.  Blank
# lines and full-line comments introduced by a lone '#' are ignored.


def serialize(g: SLG) -> str:
    lines = []
    heads = [g.start] + [h for h in g.rules if h != g.start]
    for head in heads:
        body = " ".join(s.display for s in g.rules[head])
        lines.append(f"{head.display} -> {body}".rstrip())
    return "\n".join(lines) + "\n"


def _is_comment(stripped: str) -> bool:
    return stripped == "#" or stripped.startswith("# ")


def deserialize(text: str, table: SymbolTable | None = None) -> SLG:
    table = table if table is not None else default_table()
    parsed: list[tuple[int, str, list[str]]] = []
    heads: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or _is_comment(line):
            continue
        if "->" not in line:
            raise GrammarParseError("missing '->'", line_no)
        head_part, body_part = line.split("->", 1)
        head = head_part.strip()
        if not head:
            raise GrammarParseError("empty rule head", line_no)
        if len(head.split()) != 1:
            raise GrammarParseError(f"bad rule head {head!r}", line_no)
        if parse_sentinel_display(head) is not None:
            raise GrammarParseError(f"sentinel {head!r} cannot be a rule head", line_no)
        if head in heads:
            raise GrammarParseError(f"duplicate head {head!r}", line_no)
        heads[head] = line_no
        parsed.append((line_no, head, body_part.split()))
    if not parsed:
        raise GrammarParseError("no rules", 1)

    rules: dict[Symbol, tuple[Symbol, ...]] = {}
    for line_no, head, tokens in parsed:
        head_sym = table.nonterminal(head)
        body = []
        for tok in tokens:
            try:
                sym = (
                    table.nonterminal(tok) if tok in heads else table.terminal(tok)
                )
            except ValueError as exc:
                raise GrammarParseError(str(exc), line_no) from exc
            body.append(sym)
        rules[head_sym] = tuple(body)
    start = table.nonterminal(parsed[0][1])
    try:
        return SLG(rules, start, table)
    except GrammarError as exc:
        raise GrammarParseError(str(exc), parsed[0][0]) from exc

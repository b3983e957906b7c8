"""Weighted and unweighted non-crossing matching (RNA folding) over matched
alphabets, plus the structural identities used by the boosting checks.

The interval DP is cubic; inputs beyond a configurable cap are refused.  A
JIT-compiled kernel handles large instances, with a plain Python twin for
small ones and for environments without a working compiler.
"""
from __future__ import annotations

from dataclasses import dataclass

from .symbols import Symbol, SymbolTable, default_table

DEFAULT_LENGTH_CAP = 3000
_PY_KERNEL_LIMIT = 90  # below this the JIT warmup is not worth it

MAX_WEIGHT_TOTAL = 2**62


class RnaError(ValueError):
    pass


@dataclass(frozen=True)
class MatchedAlphabet:
    """Alphabet with an involutive, fixed-point-free match and weights.

    Weights of matched symbols must agree.  Zero weights are tolerated here
    (they never help a folding); the boosting constructions insist on
    strictly positive ones.
    """

    symbols: tuple[Symbol, ...]
    match: dict[Symbol, Symbol]
    weight: dict[Symbol, int]

    def __post_init__(self):
        for a in self.symbols:
            b = self.match.get(a)
            if b is None or b == a or self.match.get(b) != a:
                raise RnaError(f"match is not a fixed-point-free involution at {a.display}")
            if self.weight.get(a) is None or self.weight[a] < 0:
                raise RnaError(f"negative or missing weight for {a.display}")
            if self.weight[a] != self.weight[b]:
                raise RnaError(f"weights differ across match pair {a.display}")

    def covers(self, symbols) -> bool:
        have = set(self.symbols)
        return all(s in have for s in symbols)

    def extended(self, new_symbols, new_match, new_weight) -> "MatchedAlphabet":
        symbols = tuple(self.symbols) + tuple(new_symbols)
        match = dict(self.match)
        match.update(new_match)
        weight = dict(self.weight)
        weight.update(new_weight)
        return MatchedAlphabet(symbols, match, weight)

    # text format: one line per pair, `a ~ b : w`
    def serialize(self) -> str:
        lines = []
        done = set()
        for a in self.symbols:
            if a in done:
                continue
            b = self.match[a]
            done.add(a)
            done.add(b)
            lines.append(f"{a.display} ~ {b.display} : {self.weight[a]}")
        return "\n".join(lines) + "\n"


def parse_matched_alphabet(text: str, table: SymbolTable | None = None) -> MatchedAlphabet:
    table = table if table is not None else default_table()
    symbols: list[Symbol] = []
    match: dict[Symbol, Symbol] = {}
    weight: dict[Symbol, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("# "):
            continue
        try:
            pair_part, w_part = line.rsplit(":", 1)
            left, right = pair_part.split("~")
            a = table.terminal(left.strip())
            b = table.terminal(right.strip())
            w = int(w_part.strip())
        except ValueError as exc:
            raise RnaError(f"line {line_no}: bad alphabet line {line!r}") from exc
        symbols += [a, b]
        match[a], match[b] = b, a
        weight[a] = weight[b] = w
    return MatchedAlphabet(tuple(symbols), match, weight)


@dataclass(frozen=True)
class FoldResult:
    value: int
    pairs: tuple[tuple[int, int], ...] | None = None

    def validate(self, u, alphabet: MatchedAlphabet) -> bool:
        """Witness pairs match, do not cross, and sum to the value."""
        if self.pairs is None:
            return True
        total = 0
        for i, j in self.pairs:
            if not (1 <= i < j <= len(u)):
                return False
            if alphabet.match[u[i - 1]] != u[j - 1]:
                return False
            total += alphabet.weight[u[i - 1]]
        for a in range(len(self.pairs)):
            for b in range(a + 1, len(self.pairs)):
                (i, j), (k, l) = self.pairs[a], self.pairs[b]
                disjoint = j < k or l < i
                nested = (i < k and l < j) or (k < i and j < l)
                if not (disjoint or nested):
                    return False
        return total == self.value


def _encode(u, alphabet: MatchedAlphabet):
    codes = {}
    for s in alphabet.symbols:
        codes.setdefault(s, len(codes))
    seq = []
    for s in u:
        if s not in codes:
            raise RnaError(f"symbol {s.display} outside the matched alphabet")
        seq.append(codes[s])
    match_of = [0] * len(codes)
    w_of = [0] * len(codes)
    for s, c in codes.items():
        match_of[c] = codes[alphabet.match[s]]
        w_of[c] = alphabet.weight[s]
    return seq, match_of, w_of


def _wrna_table_py(seq, match_of, w_of):
    n = len(seq)
    dp = [[0] * (n + 1) for _ in range(n + 2)]
    for ln in range(2, n + 1):
        for i in range(n - ln + 1):
            j = i + ln - 1
            best = dp[i + 1][j]
            mi = match_of[seq[i]]
            wi = w_of[seq[i]]
            row_i1 = dp[i + 1]
            for k in range(i + 1, j + 1):
                if seq[k] == mi:
                    v = wi + row_i1[k - 1] + dp[k + 1][j]
                    if v > best:
                        best = v
            dp[i][j] = best
    return dp


_jit_kernel = None


def _get_jit_kernel():
    global _jit_kernel
    if _jit_kernel is False:
        return None
    if _jit_kernel is None:
        try:
            import numpy as np
            from numba import njit

            @njit(cache=True)
            def kernel(seq, match_of, w_of):  # pragma: no cover - compiled
                n = seq.shape[0]
                dp = np.zeros((n + 2, n + 1), dtype=np.int64)
                for ln in range(2, n + 1):
                    for i in range(n - ln + 1):
                        j = i + ln - 1
                        best = dp[i + 1][j]
                        mi = match_of[seq[i]]
                        wi = w_of[seq[i]]
                        for k in range(i + 1, j + 1):
                            if seq[k] == mi:
                                v = wi + dp[i + 1][k - 1] + dp[k + 1][j]
                                if v > best:
                                    best = v
                        dp[i][j] = best
                return dp[0][n - 1]

            _jit_kernel = kernel
        except Exception:  # pragma: no cover - numba unavailable
            _jit_kernel = False
            return None
    return _jit_kernel


def wrna(
    u,
    alphabet: MatchedAlphabet,
    want_pairs: bool = False,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> FoldResult:
    """Maximum-weight non-crossing matching value of `u`."""
    u = tuple(u)
    if len(u) > length_cap:
        raise RnaError(f"input length {len(u)} exceeds the cap {length_cap}")
    if not u:
        return FoldResult(0, () if want_pairs else None)
    seq, match_of, w_of = _encode(u, alphabet)
    if sum(w_of) * len(u) > MAX_WEIGHT_TOTAL:
        raise RnaError("weights too large for 64-bit accumulation")
    if not want_pairs and len(u) > _PY_KERNEL_LIMIT:
        kernel = _get_jit_kernel()
        if kernel is not None:
            import numpy as np

            value = int(
                kernel(
                    np.asarray(seq, dtype=np.int32),
                    np.asarray(match_of, dtype=np.int32),
                    np.asarray(w_of, dtype=np.int64),
                )
            )
            return FoldResult(value)
    dp = _wrna_table_py(seq, match_of, w_of)
    n = len(u)
    value = dp[0][n - 1]
    if not want_pairs:
        return FoldResult(value)
    pairs: list[tuple[int, int]] = []
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if i >= j:
            continue
        if dp[i][j] == dp[i + 1][j]:
            stack.append((i + 1, j))
            continue
        mi = match_of[seq[i]]
        wi = w_of[seq[i]]
        for k in range(i + 1, j + 1):
            if seq[k] == mi and dp[i][j] == wi + dp[i + 1][k - 1] + dp[k + 1][j]:
                pairs.append((i + 1, k + 1))
                stack.append((i + 1, k - 1))
                stack.append((k + 1, j))
                break
    return FoldResult(value, tuple(sorted(pairs)))


def rna(u, alphabet: MatchedAlphabet, want_pairs: bool = False,
        length_cap: int = DEFAULT_LENGTH_CAP) -> FoldResult:
    """Unweighted variant: every symbol weighs one."""
    unit = MatchedAlphabet(
        alphabet.symbols, alphabet.match, {s: 1 for s in alphabet.symbols}
    )
    return wrna(u, unit, want_pairs, length_cap)


def weighted_to_unweighted(u, alphabet: MatchedAlphabet) -> tuple[Symbol, ...]:
    """Repeat each symbol by its weight; the unit-weight folding value of the
    result equals the weighted value of the original."""
    out: list[Symbol] = []
    for s in u:
        out.extend([s] * alphabet.weight[s])
    return tuple(out)


def check_decomposition(x, a: Symbol, y, b: Symbol, z, alphabet: MatchedAlphabet) -> bool:
    """Splitting identity for a dominant matched pair around an infix.

    Requires match(a) = b, neither occurring in x, y, z, and w(a) larger than
    the total weight of y; evaluates both sides by DP.
    """
    x, y, z = tuple(x), tuple(y), tuple(z)
    if alphabet.match[a] != b:
        raise RnaError("precondition failed: match(a) != b")
    for part, name in ((x, "x"), (y, "y"), (z, "z")):
        if a in part or b in part:
            raise RnaError(f"precondition failed: pair symbol occurs in {name}")
    if alphabet.weight[a] <= sum(alphabet.weight[s] for s in y):
        raise RnaError("precondition failed: w(a) must dominate y's weight")
    u = x + (a,) + y + (b,) + z
    lhs = wrna(u, alphabet).value
    rhs = (
        alphabet.weight[a]
        + wrna(x + z, alphabet).value
        + wrna(y, alphabet).value
    )
    return lhs == rhs


def check_reverse_and_match(u, alphabet: MatchedAlphabet) -> bool:
    """Folding value is invariant under reversal and under symbol-wise match."""
    u = tuple(u)
    base = wrna(u, alphabet).value
    rev = wrna(tuple(reversed(u)), alphabet).value
    mapped = wrna(tuple(alphabet.match[s] for s in u), alphabet).value
    return base == rev == mapped

"""Command-line front end: compression runs, boosting, and the verification
suites.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.  The
environment variable SLGLAB_SEED overrides --seed for `verify`.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

from . import boost, verify
from . import cfg as cfgmod
from . import compressors as comp
from .rna import MatchedAlphabet, RnaError, parse_matched_alphabet
from .core import (
    GrammarError,
    SLG,
    deserialize,
    is_admissible,
    make_admissible,
    serialize,
    stats,
)
from .symbols import SymbolTable

_ALGORITHMS = {
    "repair": lambda u, t: comp.repair(u, t),
    "repair2": lambda u, t: comp.repair_pairs_only(u, t),
    "greedy": lambda u, t: comp.greedy(u, t),
    "longest": lambda u, t: comp.longest_match(u, t),
    "sequitur": lambda u, t: comp.sequitur(u, t),
    "sequential": lambda u, t: comp.sequential(u, t),
    "bisection": lambda u, t: comp.bisection(u, t),
    "lz78": lambda u, t: comp.lz78(u, t)[1],
    "lzd": lambda u, t: comp.lzd(u, t)[1],
}


class CliError(Exception):
    pass


@dataclass(frozen=True)
class RunReport:
    """One compression run: what ran, on what, how big, how long."""

    source: str
    algorithm: str
    size: int
    num_nonterminals: int
    expansion_length: int
    total_expansion: int
    height: int
    elapsed: float

    def stats_line(self) -> str:
        return (
            f"alg={self.algorithm} size={self.size} "
            f"nonterms={self.num_nonterminals} explen={self.expansion_length} "
            f"totalexp={self.total_expansion} height={self.height} "
            f"elapsed={self.elapsed:.3f}s"
        )


def _read_input(path: str) -> str:
    if path == "-":
        data = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}") from exc
    if data.endswith("\n"):
        data = data[:-1]
    if not data:
        raise CliError("empty input")
    return data


def _write_output(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}") from exc


def cmd_compress(args) -> int:
    table = SymbolTable()
    text = _read_input(args.infile)
    started = time.perf_counter()
    g = _ALGORITHMS[args.alg](text, table)
    elapsed = time.perf_counter() - started
    _write_output(args.out, serialize(g))
    if args.stats:
        s = stats(g)
        report = RunReport(
            source=args.infile,
            algorithm=args.alg,
            size=s.size,
            num_nonterminals=s.num_nonterminals,
            expansion_length=s.expansion_length,
            total_expansion=s.total_expansion,
            height=s.height,
            elapsed=elapsed,
        )
        print(report.stats_line())
    return 0


def _load_grammar(path: str, table: SymbolTable, admissify: bool) -> SLG:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            g = deserialize(fh.read(), table)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    if not is_admissible(g):
        if not admissify:
            raise CliError(
                "grammar is not admissible; pass --admissify to convert it first"
            )
        g = make_admissible(g)
    return g


def _load_points(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    m = None
    points = []
    for ln in lines:
        if ln.startswith("m "):
            m = int(ln.split()[1])
            continue
        x, y = ln.split()
        points.append((int(x), int(y)))
    if m is None:
        m = len(points)
    return boost.PointSet.normalized(m, points)


def _boost_text(result: boost.BoostResult, raw: bool) -> str:
    if raw:
        if any(len(s.display) != 1 for s in result.text):
            raise CliError("--raw needs every symbol to render as one byte")
        return "".join(s.display for s in result.text) + "\n"
    return " ".join(s.display for s in result.text) + "\n"


def cmd_boost(args) -> int:
    table = SymbolTable()
    meta_lines = [f"kind={args.kind}"]
    if args.kind == "answer":
        if not args.points:
            raise CliError("--kind answer needs --points")
        ps = _load_points(args.points)
        text = boost.answer_string(ps)
        g = boost.answer_grammar(ps)
        _write_output(f"{args.out}.text", text + "\n")
        _write_output(f"{args.out}.grammar", serialize(g))
        meta_lines += [f"m={ps.m}", f"len={len(text)}", f"grammar_size={g.size}"]
        _write_output(f"{args.out}.meta", "\n".join(meta_lines) + "\n")
        return 0

    if not args.grammar:
        raise CliError("--grammar is required for this kind")
    g = _load_grammar(args.grammar, table, args.admissify)
    alphabet = None
    if args.kind in ("gamma", "rna-alpha", "rna-beta"):
        if not args.alphabet:
            raise CliError(f"--kind {args.kind} needs --alphabet")
        try:
            with open(args.alphabet, "r", encoding="utf-8") as fh:
                alphabet = parse_matched_alphabet(fh.read(), table)
        except OSError as exc:
            raise CliError(f"cannot read {args.alphabet}: {exc}") from exc

    if args.kind == "alpha":
        result = boost.alpha(g)
    elif args.kind == "beta":
        result = boost.beta(g)
    elif args.kind == "rna-alpha":
        result = boost.rna_alpha(g, alphabet)
    elif args.kind == "rna-beta":
        result = boost.rna_beta(g, alphabet)
    else:
        result = boost.gamma(g, alphabet)

    _write_output(f"{args.out}.text", _boost_text(result, args.raw))
    meta_lines.append(f"len={len(result.text)}")
    if args.kind in ("alpha", "rna-alpha", "rna-beta"):
        meta_lines.append(f"delta={result.offset}")
    if args.kind == "gamma":
        meta_lines.append(f"c0={result.offset}")
    meta_lines.append(
        "ordering=" + " ".join(n.display for n in result.ordering)
    )
    if result.position_map is not None:
        for i in sorted(result.position_map):
            positions = " ".join(str(p) for p in result.position_map[i])
            meta_lines.append(f"positions[{i}]={positions}")
    if isinstance(result.alphabet, MatchedAlphabet):
        meta_lines.append("alphabet:")
        meta_lines.append(result.alphabet.serialize().rstrip("\n"))
    elif result.alphabet is not None:
        meta_lines.append(
            "alphabet=" + " ".join(s.display for s in result.alphabet)
        )
    _write_output(f"{args.out}.meta", "\n".join(meta_lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    seed = args.seed
    env = os.environ.get("SLGLAB_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError as exc:
            raise CliError(f"bad SLGLAB_SEED {env!r}") from exc
    verdicts = verify.run_suite(args.suite, seed, args.trials, args.max_nonterms)
    for v in verdicts:
        print(v.line())
    failed = sum(1 for v in verdicts if not v.ok)
    print(
        f"suite={args.suite} seed={seed} checks={len(verdicts)} failed={failed}"
    )
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slglab",
        description="Grammar-compression laboratory: compressors, boosters, "
        "and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a string into a grammar")
    p.add_argument("--alg", required=True, choices=sorted(_ALGORITHMS))
    p.add_argument("--in", dest="infile", required=True, help="input file or -")
    p.add_argument("--out", default=None, help="output grammar file (default stdout)")
    p.add_argument("--stats", action="store_true", help="print a stats line")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("boost", help="build a boosted string from a grammar")
    p.add_argument(
        "--kind",
        required=True,
        choices=["alpha", "beta", "gamma", "rna-alpha", "rna-beta", "answer"],
    )
    p.add_argument("--grammar", default=None)
    p.add_argument("--alphabet", default=None, help="matched alphabet file")
    p.add_argument("--points", default=None, help="point set file")
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--admissify", action="store_true")
    p.add_argument("--raw", action="store_true", help="write bytes, not tokens")
    p.set_defaults(func=cmd_boost)

    p = sub.add_parser("verify", help="run a randomized verification suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=sorted(verify.SUITES) + ["all"],
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--max-nonterms", type=int, default=30)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, GrammarError, cfgmod.CfgError, RnaError,
            boost.BoostError, comp.CompressorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Categorial grammars over Lambek types, and word membership.

A grammar assigns each terminal a finite set of types; a nonempty word
``w1 ... wn`` is in the language when some choice of one type per
token, read left to right, yields a sequent deriving the start
primitive.  The empty word is never in the language.

Grammar file format (one header, then one line per terminal; ``#``
starts a comment)::

    start: x
    a: x/(c -o (b -o x)) | x/(c -o (b -o y))
    b: (y/b)/y | (y/b)/z
    c: (z/c)/z | z/c

Membership enumerates type assignments in lexicographic order of the
lexicon entries.  Assignments whose count vectors cannot balance are
skipped wholesale (the count invariant makes them underivable), with a
suffix-sum table so that entire prefixes of the assignment product can
be discarded at once.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from .analysis import formula_counts
from .prooftree import ProofTree
from .prover import DEFAULT_BUDGET, BudgetExceededError, CalculusMode, SearchStats, _Search
from .syntax import Atom, Formula, IDENT_RE, Over, Sequent, format_formula, parse_formula

__all__ = [
    "Grammar",
    "ParseResult",
    "UnknownTerminalError",
    "GrammarFormatError",
    "assignments",
    "recognize",
    "anbncn_grammar",
    "grammar_from_text",
    "grammar_to_text",
    "GnfProduction",
    "Cfg",
    "GnfError",
    "cfg_to_grammar",
]


class UnknownTerminalError(ValueError):
    def __init__(self, terminal: str):
        super().__init__(f"terminal {terminal!r} is not in the grammar's alphabet")
        self.terminal = terminal


class GrammarFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Grammar:
    """Lexicalized grammar: a start primitive and a type lexicon."""

    start: str
    lexicon: dict[str, tuple[Formula, ...]]

    def __post_init__(self) -> None:
        if not IDENT_RE.fullmatch(self.start):
            raise ValueError(f"start symbol {self.start!r} is not a primitive name")
        for terminal, entry in self.lexicon.items():
            if not terminal or any(c.isspace() for c in terminal):
                raise ValueError(f"bad terminal {terminal!r}")
            if not entry:
                raise ValueError(f"terminal {terminal!r} has an empty lexicon entry")

    @property
    def alphabet(self) -> frozenset[str]:
        return frozenset(self.lexicon)


@dataclass(frozen=True)
class ParseResult:
    member: bool
    assignment: tuple[Formula, ...] | None
    proof: ProofTree | None
    stats: SearchStats
    budget_exhausted: bool


def _entries(g: Grammar, word: list[str] | tuple[str, ...]) -> list[tuple[Formula, ...]]:
    if not word:
        raise ValueError("the empty word is never a member; give at least one token")
    out = []
    for token in word:
        entry = g.lexicon.get(token)
        if entry is None:
            raise UnknownTerminalError(token)
        out.append(entry)
    return out


def assignments(g: Grammar, word: list[str] | tuple[str, ...]):
    """All type assignments for ``word`` in lexicographic entry order."""
    return itertools.product(*_entries(g, word))


def _vkey(vec: dict[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted(vec.items()))


_SUFFIX_CAP = 50_000


def _balanced_assignments(entries, target, skipped):
    """Yield assignments whose total count vector equals ``target``.

    ``skipped`` is a one-element list accumulating how many assignments
    were discarded.  Enumeration order matches ``assignments``.
    """
    n = len(entries)
    sizes = [math.prod(len(e) for e in entries[i:]) for i in range(n + 1)]

    suffix: list[set | None] = [None] * (n + 1)
    suffix[n] = {_vkey({})}
    for i in range(n - 1, -1, -1):
        prev = suffix[i + 1]
        if prev is None:
            break
        acc: set = set()
        for f in entries[i]:
            vec = formula_counts(f)
            for key in prev:
                merged = dict(key)
                for name, k in vec.items():
                    new = merged.get(name, 0) + k
                    if new:
                        merged[name] = new
                    else:
                        del merged[name]
                acc.add(_vkey(merged))
                if len(acc) > _SUFFIX_CAP:
                    break
            if len(acc) > _SUFFIX_CAP:
                break
        suffix[i] = acc if len(acc) <= _SUFFIX_CAP else None

    def rec(i: int, acc: dict[str, int]):
        ss = suffix[i]
        if ss is not None:
            residual = dict(target)
            for name, k in acc.items():
                new = residual.get(name, 0) - k
                if new:
                    residual[name] = new
                else:
                    residual.pop(name, None)
            if _vkey(residual) not in ss:
                skipped[0] += sizes[i]
                return
        if i == n:
            if ss is None and acc != target:
                skipped[0] += 1
                return
            yield ()
            return
        for f in entries[i]:
            vec = formula_counts(f)
            new_acc = dict(acc)
            for name, k in vec.items():
                new = new_acc.get(name, 0) + k
                if new:
                    new_acc[name] = new
                else:
                    new_acc.pop(name, None)
            for rest in rec(i + 1, new_acc):
                yield (f,) + rest

    yield from rec(0, {})


def recognize(
    g: Grammar,
    word: list[str] | tuple[str, ...],
    mode: CalculusMode = CalculusMode.SDL,
    *,
    budget: int = DEFAULT_BUDGET,
    deadline: float | None = None,
) -> ParseResult:
    """Decide membership of ``word``, returning the first witness found.

    ``budget`` caps search nodes per assignment; ``deadline`` (seconds)
    caps the whole query.  When either trips without a witness the
    result has ``member=False`` and ``budget_exhausted=True``, meaning
    "unknown" rather than "no".
    """
    entries = _entries(g, word)
    target = {g.start: 1}
    goal = Atom(g.start)
    search = _Search(mode, budget)
    t0 = time.monotonic()
    exhausted = False
    skipped = [0]
    witness: tuple[Formula, ...] | None = None
    proof: ProofTree | None = None
    for assignment in _balanced_assignments(entries, target, skipped):
        if deadline is not None and time.monotonic() - t0 > deadline:
            exhausted = True
            break
        search.new_budget_window()
        try:
            tree = search.run(Sequent(assignment, goal))
        except BudgetExceededError:
            exhausted = True
            continue
        if tree is not None:
            witness, proof = assignment, tree
            break
    stats = search.stats
    stats.pruned_by_count += skipped[0]
    if witness is not None:
        return ParseResult(True, witness, proof, stats, False)
    return ParseResult(False, None, None, stats, exhausted)


# ---------------------------------------------------------------------------
# Grammar files
# ---------------------------------------------------------------------------


def grammar_from_text(text: str) -> Grammar:
    start: str | None = None
    lexicon: dict[str, tuple[Formula, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise GrammarFormatError(f"line {lineno}: expected 'name: ...'")
        name, _, rhs = line.partition(":")
        name = name.strip()
        rhs = rhs.strip()
        if start is None:
            if name != "start":
                raise GrammarFormatError(f"line {lineno}: the first entry must be 'start: <primitive>'")
            start = rhs
            continue
        if name == "start":
            raise GrammarFormatError(f"line {lineno}: duplicate start header")
        if name in lexicon:
            raise GrammarFormatError(f"line {lineno}: duplicate terminal {name!r}")
        try:
            entry = tuple(parse_formula(part) for part in rhs.split("|"))
        except ValueError as e:
            raise GrammarFormatError(f"line {lineno}: {e}") from e
        lexicon[name] = entry
    if start is None:
        raise GrammarFormatError("missing 'start:' header")
    try:
        return Grammar(start, lexicon)
    except ValueError as e:
        raise GrammarFormatError(str(e)) from e


def grammar_to_text(g: Grammar) -> str:
    lines = [f"start: {g.start}"]
    for terminal, entry in g.lexicon.items():
        lines.append(f"{terminal}: " + " | ".join(format_formula(f) for f in entry))
    return "\n".join(lines) + "\n"


def anbncn_grammar() -> Grammar:
    """Grammar for { a^n b^n c^n : n >= 1 } (not context-free).

    Each ``a`` promises one later ``b`` and one later ``c`` through a
    -o chain; the ``b`` and ``c`` rows are plain directional types, so
    membership needs no /R or \\R and works in mode sdl- as well.
    """
    return grammar_from_text(
        """
        start: x
        a: x/(c -o (b -o x)) | x/(c -o (b -o y))
        b: (y/b)/y | (y/b)/z
        c: (z/c)/z | z/c
        """
    )


# ---------------------------------------------------------------------------
# Context-free grammars in Greibach normal form
# ---------------------------------------------------------------------------


class GnfError(ValueError):
    pass


@dataclass(frozen=True)
class GnfProduction:
    """``head -> terminal body[0] ... body[-1]`` with nonterminal body."""

    head: str
    terminal: str
    body: tuple[str, ...] = ()


@dataclass(frozen=True)
class Cfg:
    start: str
    productions: tuple[GnfProduction, ...]


def cfg_to_grammar(cfg: Cfg) -> Grammar:
    """Translate a Greibach normal form CFG into a slash-only grammar.

    ``A -> a B1 ... Bk`` becomes the type ``(...(A/Bk)/.../B1`` in
    ``l(a)``, so the string material for ``B1`` is consumed first.  The
    result is -o-free and therefore behaves identically under modes l,
    sdl and sdl-.
    """
    if not cfg.productions:
        raise GnfError("a grammar needs at least one production")
    heads = {p.head for p in cfg.productions}
    for p in cfg.productions:
        for sym in (p.head, *p.body):
            if not IDENT_RE.fullmatch(sym):
                raise GnfError(f"nonterminal {sym!r} is not a primitive name ([a-z][a-z0-9_]*)")
        if not p.terminal or any(c.isspace() for c in p.terminal):
            raise GnfError(f"bad terminal {p.terminal!r}")
        for sym in p.body:
            if sym not in heads:
                raise GnfError(f"nonterminal {sym!r} in {p.head!r} -> ... has no production")
    if cfg.start not in heads:
        raise GnfError(f"start symbol {cfg.start!r} has no production")
    lexicon: dict[str, list[Formula]] = {}
    for p in cfg.productions:
        t: Formula = Atom(p.head)
        for sym in reversed(p.body):
            t = Over(t, Atom(sym))
        entry = lexicon.setdefault(p.terminal, [])
        if t not in entry:
            entry.append(t)
    return Grammar(cfg.start, {k: tuple(v) for k, v in lexicon.items()})

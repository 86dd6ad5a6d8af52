"""Concrete syntax for product-free Lambek formulas and sequents.

Formulas are built from primitive types with three connectives::

    formula := linimp
    linimp  := slash ("-o" linimp)?
    slash   := atomic (("/" atomic)* | ("\\" atomic)*)
    atomic  := IDENT | "(" formula ")"
    IDENT   := [a-z][a-z0-9_]*

"-o" (linear implication) binds loosest and associates to the right.
"/" associates to the left, "\\" to the right (a\\b\\c parses as
a\\(b\\c)).  Mixing "/" and "\\" at the same level without parentheses
is a syntax error.  A sequent is written "f1, f2, ... => g" and must
have at least one antecedent formula.

``a/b`` consumes a ``b`` to its right and yields an ``a``; ``b\\a``
consumes a ``b`` to its left; ``b -o a`` consumes a ``b`` anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Atom",
    "Over",
    "Under",
    "LinImp",
    "Formula",
    "Sequent",
    "FormulaSyntaxError",
    "parse_formula",
    "parse_sequent",
    "format_formula",
    "format_sequent",
    "subformulas",
    "connective_count",
]

IDENT_RE = re.compile(r"[a-z][a-z0-9_]*")


class FormulaSyntaxError(ValueError):
    """Malformed formula or sequent text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, slots=True, eq=False)
class Atom:
    """A primitive type, named by a lowercase identifier."""

    name: str
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Atom and self._hash == other._hash and self.name == other.name
        )

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, slots=True, eq=False)
class Over:
    """``result/arg``: a functor looking for ``arg`` on its right."""

    result: Formula
    arg: Formula
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("over", self.result, self.arg)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Over
            and self._hash == other._hash
            and self.result == other.result
            and self.arg == other.arg
        )

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, slots=True, eq=False)
class Under:
    """``arg\\result``: a functor looking for ``arg`` on its left."""

    arg: Formula
    result: Formula
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("under", self.arg, self.result)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Under
            and self._hash == other._hash
            and self.arg == other.arg
            and self.result == other.result
        )

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, slots=True, eq=False)
class LinImp:
    """``arg -o result``: consumes ``arg`` anywhere in the antecedent."""

    arg: Formula
    result: Formula
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("linimp", self.arg, self.result)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is LinImp
            and self._hash == other._hash
            and self.arg == other.arg
            and self.result == other.result
        )

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Atom, Over, Under, LinImp]


@dataclass(frozen=True, slots=True)
class Sequent:
    """``antecedent => succedent`` with a nonempty antecedent."""

    antecedent: tuple[Formula, ...]
    succedent: Formula

    def __post_init__(self) -> None:
        if not self.antecedent:
            raise ValueError("sequent antecedent must be nonempty")

    def __str__(self) -> str:
        return format_sequent(self)


# ---------------------------------------------------------------------------
# Tokenizer and parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[a-z][a-z0-9_]*)
  | (?P<linimp>-o)
  | (?P<arrow>=>)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<over>/)
  | (?P<under>\\)
  | (?P<comma>,)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        assert kind is not None
        if kind != "ws":
            yield kind, m.group(), pos
        pos = m.end()
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def formula(self) -> Formula:
        return self.linimp()

    def linimp(self) -> Formula:
        left = self.slash()
        if self.peek()[0] == "linimp":
            self.next()
            return LinImp(left, self.linimp())
        return left

    def slash(self) -> Formula:
        head = self.atomic()
        kind = self.peek()[0]
        if kind == "over":
            result = head
            while self.peek()[0] == "over":
                self.next()
                result = Over(result, self.atomic())
            if self.peek()[0] == "under":
                raise FormulaSyntaxError(
                    "cannot mix '/' and '\\' without parentheses", self.peek()[2]
                )
            return result
        if kind == "under":
            # Collect the chain first; "\" associates to the right.
            items = [head]
            while self.peek()[0] == "under":
                self.next()
                items.append(self.atomic())
            if self.peek()[0] == "over":
                raise FormulaSyntaxError(
                    "cannot mix '/' and '\\' without parentheses", self.peek()[2]
                )
            result = items[-1]
            for item in reversed(items[:-1]):
                result = Under(item, result)
            return result
        return head

    def atomic(self) -> Formula:
        kind, text, pos = self.next()
        if kind == "ident":
            return Atom(text)
        if kind == "lpar":
            inner = self.formula()
            self.expect("rpar")
            return inner
        raise FormulaSyntaxError(f"expected a formula, found {text!r}", pos)


def parse_formula(text: str) -> Formula:
    """Parse concrete formula syntax; raises FormulaSyntaxError on bad input."""
    p = _Parser(text)
    f = p.formula()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {tok!r}", pos)
    return f


def parse_sequent(text: str) -> Sequent:
    """Parse "f1, f2, ... => g" into a Sequent."""
    p = _Parser(text)
    antecedent = [p.formula()]
    while p.peek()[0] == "comma":
        p.next()
        antecedent.append(p.formula())
    p.expect("arrow")
    succedent = p.formula()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {tok!r}", pos)
    return Sequent(tuple(antecedent), succedent)


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


def _atomic_text(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    return f"({format_formula(f)})"


def _slash_text(f: Formula) -> str:
    if isinstance(f, (Atom, Over, Under)):
        return format_formula(f)
    return f"({format_formula(f)})"


def format_formula(f: Formula) -> str:
    """Render a formula with the minimum parentheses that reparse to it."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Over):
        # "/" chains through its left operand.
        left = format_formula(f.result) if isinstance(f.result, (Atom, Over)) else f"({format_formula(f.result)})"
        return f"{left}/{_atomic_text(f.arg)}"
    if isinstance(f, Under):
        # "\" chains through its right operand.
        right = format_formula(f.result) if isinstance(f.result, (Atom, Under)) else f"({format_formula(f.result)})"
        return f"{_atomic_text(f.arg)}\\{right}"
    if isinstance(f, LinImp):
        return f"{_slash_text(f.arg)} -o {format_formula(f.result)}"
    raise TypeError(f"not a formula: {f!r}")


def format_sequent(s: Sequent) -> str:
    ant = ", ".join(format_formula(f) for f in s.antecedent)
    return f"{ant} => {format_formula(s.succedent)}"


# ---------------------------------------------------------------------------
# Structural helpers
# ---------------------------------------------------------------------------


def subformulas(x: Formula | Sequent) -> set[Formula]:
    """All subformulas of a formula, or of every member of a sequent."""
    out: set[Formula] = set()
    stack: list[Formula]
    if isinstance(x, Sequent):
        stack = [*x.antecedent, x.succedent]
    else:
        stack = [x]
    while stack:
        f = stack.pop()
        if f in out:
            continue
        out.add(f)
        if isinstance(f, Over):
            stack.append(f.result)
            stack.append(f.arg)
        elif isinstance(f, (Under, LinImp)):
            stack.append(f.arg)
            stack.append(f.result)
    return out


def connective_count(x: Formula | Sequent) -> int:
    """Number of connective occurrences (/, \\, -o)."""
    if isinstance(x, Sequent):
        return sum(connective_count(f) for f in x.antecedent) + connective_count(
            x.succedent
        )
    if isinstance(x, Atom):
        return 0
    return 1 + connective_count(_left_child(x)) + connective_count(_right_child(x))


def _left_child(f: Formula) -> Formula:
    if isinstance(f, Over):
        return f.result
    if isinstance(f, (Under, LinImp)):
        return f.arg
    raise TypeError(f"no children: {f!r}")


def _right_child(f: Formula) -> Formula:
    if isinstance(f, Over):
        return f.arg
    if isinstance(f, (Under, LinImp)):
        return f.result
    raise TypeError(f"no children: {f!r}")

"""Count and polarity analyses used for search pruning and input checks.

The primitive count of a formula is defined by::

    count(b, b) = 1          count(c, b) = 0  for a primitive c != b
    count(a/b', b) = count(b'\\a, b) = count(b' -o a, b)
                   = count(a, b) - count(b', b)

Every derivable sequent has equal antecedent and succedent counts for
every primitive, which makes the count vector a cheap refutation test.

Polarity assigns + to the succedent root and - to every antecedent
root; the result side of a connective keeps its parent's polarity and
the argument side flips it.  Linear implication is only usable in
positive positions (there is no left rule for it), so negative
occurrences are reported by ``polarity_report`` and flagged by the
prover's input validation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import Atom, Formula, LinImp, Over, Sequent, Under

__all__ = [
    "CountVector",
    "formula_counts",
    "count",
    "sequent_counts",
    "balanced",
    "Occurrence",
    "PolarityReport",
    "polarity_report",
]

CountVector = dict[str, int]

_counts_cache: dict[Formula, CountVector] = {}
_linimp_cache: dict[Formula, tuple[bool, bool]] = {}


def formula_counts(f: Formula) -> CountVector:
    """Count vector of ``f``; primitives with count zero are omitted."""
    cached = _counts_cache.get(f)
    if cached is not None:
        return cached
    if isinstance(f, Atom):
        vec = {f.name: 1}
    else:
        vec = dict(formula_counts(f.result))
        for name, n in formula_counts(f.arg).items():
            new = vec.get(name, 0) - n
            if new:
                vec[name] = new
            else:
                vec.pop(name, None)
    _counts_cache[f] = vec
    return vec


def count(f: Formula, primitive: str) -> int:
    return formula_counts(f).get(primitive, 0)


def sequent_counts(s: Sequent) -> tuple[CountVector, CountVector]:
    """(antecedent counts, succedent counts), zero entries omitted."""
    lhs: CountVector = {}
    for f in s.antecedent:
        for name, n in formula_counts(f).items():
            new = lhs.get(name, 0) + n
            if new:
                lhs[name] = new
            else:
                lhs.pop(name, None)
    return lhs, dict(formula_counts(s.succedent))


def balanced(s: Sequent) -> bool:
    lhs, rhs = sequent_counts(s)
    return lhs == rhs


def linimp_polarities(f: Formula) -> tuple[bool, bool]:
    """(has -o at a positive position, has -o at a negative position).

    Positions are relative to ``f`` itself with the root counted
    positive.
    """
    cached = _linimp_cache.get(f)
    if cached is not None:
        return cached
    if isinstance(f, Atom):
        res = (False, False)
    else:
        rpos, rneg = linimp_polarities(f.result)
        apos, aneg = linimp_polarities(f.arg)
        pos = rpos or aneg
        neg = rneg or apos
        if isinstance(f, LinImp):
            pos = True
        res = (pos, neg)
    _linimp_cache[f] = res
    return res


@dataclass(frozen=True)
class Occurrence:
    """One subformula occurrence inside a sequent.

    ``side`` is "antecedent" or "succedent", ``index`` the antecedent
    position (0 for the succedent), and ``path`` descends through the
    printed operand positions: 0 is the left operand as written, 1 the
    right one.
    """

    formula: Formula
    side: str
    index: int
    path: tuple[int, ...]
    polarity: str


@dataclass(frozen=True)
class PolarityReport:
    occurrences: tuple[Occurrence, ...]

    @property
    def negative_linimp(self) -> tuple[Occurrence, ...]:
        return tuple(
            o
            for o in self.occurrences
            if isinstance(o.formula, LinImp) and o.polarity == "negative"
        )


def _printed_children(f: Formula) -> tuple[tuple[Formula, bool], tuple[Formula, bool]]:
    """((left child, flips), (right child, flips)) in printed order."""
    if isinstance(f, Over):
        return (f.result, False), (f.arg, True)
    # Under and LinImp print the argument on the left.
    return (f.arg, True), (f.result, False)


def _walk(
    f: Formula,
    side: str,
    index: int,
    path: tuple[int, ...],
    positive: bool,
    out: list[Occurrence],
) -> None:
    out.append(
        Occurrence(f, side, index, path, "positive" if positive else "negative")
    )
    if isinstance(f, Atom):
        return
    (left, lflip), (right, rflip) = _printed_children(f)
    _walk(left, side, index, path + (0,), positive ^ lflip, out)
    _walk(right, side, index, path + (1,), positive ^ rflip, out)


def polarity_report(s: Sequent) -> PolarityReport:
    """Every subformula occurrence of ``s`` with its polarity."""
    out: list[Occurrence] = []
    for i, f in enumerate(s.antecedent):
        _walk(f, "antecedent", i, (), False, out)
    _walk(s.succedent, "succedent", 0, (), True, out)
    return PolarityReport(tuple(out))

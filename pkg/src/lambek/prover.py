"""Backward proof search for the product-free Lambek calculus L, its
semidirectional extension SDL, and the fragment SDL- (SDL without the
directional right rules).

Rules (sequents always have a nonempty antecedent):

    Ax:   b => b                        for primitive b
    /R:   U, B => A    gives  U => A/B
    \\R:   B, U => A    gives  U => B\\A
    -oR:  U, B, V => A gives  U, V => B -o A    (U, V not both empty)
    /L:   T => B  and  U, A, V => C  give  U, A/B, T, V => C
    \\L:   T => B  and  U, A, V => C  give  U, T, B\\A, V => C

Mode l has no -oR; mode sdl- has -oR but neither /R nor \\R.  Cut is
not a rule; everything here is cut-free.

The search is depth-first and backward, with two refutation filters
(the primitive count invariant, and the discipline that -o is only
usable in positive positions) plus a per-query memo table over search
states.

-oR is the one rule whose backward reading branches over positions.
To keep it tractable the searcher does not commit to an insertion
position when it strips ``B -o A``: stripped arguments live in a
multiset of pending antecedent formulas that may still float to any
position.  Left rules then split the pending multiset between their
premises, and the count invariant pins the split down (exactly, when
the pending formulas are atoms).  Returned proof trees are fully
positional regardless: every -oR node records its insertion index and
every left node its split, so ``lambek.checker.check_proof`` can
replay them.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .analysis import formula_counts, linimp_polarities, polarity_report, sequent_counts
from .prooftree import ProofTree, Rule
from .syntax import Atom, Formula, LinImp, Over, Sequent, Under, format_formula

__all__ = [
    "CalculusMode",
    "SearchStats",
    "BudgetExceededError",
    "InputViolation",
    "validate_input",
    "prove",
    "enumerate_proofs",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


class CalculusMode(enum.Enum):
    L = "l"
    SDL = "sdl"
    SDL_MINUS = "sdl-"

    @property
    def has_directional_right(self) -> bool:
        """Whether /R and \\R are available."""
        return self is not CalculusMode.SDL_MINUS

    @property
    def has_linimp_right(self) -> bool:
        """Whether -oR is available."""
        return self is not CalculusMode.L

    def __str__(self) -> str:
        return self.value


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    cache_hits: int = 0
    pruned_by_count: int = 0
    max_depth: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "nodes_expanded": self.nodes_expanded,
            "cache_hits": self.cache_hits,
            "pruned_by_count": self.pruned_by_count,
            "max_depth": self.max_depth,
        }


class BudgetExceededError(RuntimeError):
    """Search hit its node budget; derivability is unknown."""

    def __init__(self, stats: SearchStats):
        super().__init__(f"search budget exhausted after {stats.nodes_expanded} nodes")
        self.stats = stats


@dataclass(frozen=True)
class InputViolation:
    kind: str  # "linimp-in-l" or "negative-linimp"
    message: str


def validate_input(s: Sequent, mode: CalculusMode) -> list[InputViolation]:
    """Flag -o occurrences the chosen mode cannot use.

    In mode l any -o at all is a violation; in the sdl modes a -o in
    negative position is flagged (there is no -o left rule, so such
    sequents are never derivable).  Violations are warnings: the
    search still runs and simply fails.
    """
    report = polarity_report(s)
    out: list[InputViolation] = []
    if mode is CalculusMode.L:
        for o in report.occurrences:
            if isinstance(o.formula, LinImp):
                out.append(
                    InputViolation(
                        "linimp-in-l",
                        f"mode l has no rules for {format_formula(o.formula)} "
                        f"({o.side} position {o.index})",
                    )
                )
    else:
        for o in report.negative_linimp:
            out.append(
                InputViolation(
                    "negative-linimp",
                    f"{format_formula(o.formula)} occurs negatively "
                    f"({o.side} position {o.index}) and -o has no left rule",
                )
            )
    return out


# ---------------------------------------------------------------------------
# Search states
#
# A state is (fixed, pending, succedent): `fixed` is the positionally
# committed part of the antecedent, `pending` a multiset of formulas
# stripped by -oR whose position is not yet committed.  The state
# stands for every interleaving of `pending` into `fixed`.
# ---------------------------------------------------------------------------

Bag = tuple[tuple[Formula, int], ...]  # sorted by formula hash
State = tuple[tuple[Formula, ...], Bag, Formula]

# A solved state: the proof tree for one concrete interleaving, plus a
# mask telling which antecedent positions of its conclusion came from
# the pending multiset.
Result = tuple[ProofTree, tuple[bool, ...]]

_Recombine = Callable[[list[Result]], Iterator[Result]]
_Option = tuple[list[State], bool, _Recombine]


def _bag_add(bag: Bag, f: Formula) -> Bag:
    out = list(bag)
    for idx, (g, k) in enumerate(out):
        if g == f:
            out[idx] = (g, k + 1)
            return tuple(out)
    out.append((f, 1))
    out.sort(key=lambda kv: hash(kv[0]))
    return tuple(out)


def _bag_remove_one(bag: Bag, f: Formula) -> Bag:
    out = []
    for g, k in bag:
        if g == f:
            if k > 1:
                out.append((g, k - 1))
        else:
            out.append((g, k))
    return tuple(out)


def _bag_sub(bag: Bag, take: dict[Formula, int]) -> Bag:
    out = []
    for g, k in bag:
        rest = k - take.get(g, 0)
        if rest:
            out.append((g, rest))
    return tuple(out)


def _bag_of(take: dict[Formula, int]) -> Bag:
    return tuple(sorted(take.items(), key=lambda kv: hash(kv[0])))


def _bag_total(bag: Bag) -> int:
    return sum(k for _, k in bag)


def _vec_sub(acc: dict[str, int], vec: dict[str, int], mult: int = 1) -> None:
    for name, n in vec.items():
        new = acc.get(name, 0) - n * mult
        if new:
            acc[name] = new
        else:
            acc.pop(name, None)


def _float_splits(bag: Bag, need: dict[str, int]) -> Iterator[dict[Formula, int]]:
    """Sub-multisets of ``bag`` whose summed count vectors equal ``need``.

    Atoms contribute unit vectors, so their multiplicities are forced
    once the non-atomic choices are fixed; only non-atomic pending
    formulas are enumerated.
    """
    complexes = [(f, k) for f, k in bag if not isinstance(f, Atom)]
    atoms = {f.name: (f, k) for f, k in bag if isinstance(f, Atom)}

    def close(residual: dict[str, int], chosen: dict[Formula, int]) -> Iterator[dict[Formula, int]]:
        take = dict(chosen)
        for name, n in residual.items():
            if n < 0:
                return
            entry = atoms.get(name)
            if entry is None or entry[1] < n:
                return
            take[entry[0]] = n
        yield take

    def rec(i: int, residual: dict[str, int], chosen: dict[Formula, int]) -> Iterator[dict[Formula, int]]:
        if i == len(complexes):
            yield from close(residual, chosen)
            return
        f, k = complexes[i]
        vec = formula_counts(f)
        for t in range(k + 1):
            res = dict(residual)
            _vec_sub(res, vec, t)
            nxt = dict(chosen)
            if t:
                nxt[f] = t
            yield from rec(i + 1, res, nxt)

    yield from rec(0, {k: v for k, v in need.items() if v}, {})


def _nth_fixed_index(mask: tuple[bool, ...], p: int) -> int:
    """Index of the p-th positionally committed entry under ``mask``."""
    seen = -1
    for idx, is_pending in enumerate(mask):
        if not is_pending:
            seen += 1
            if seen == p:
                return idx
    raise AssertionError("fixed ordinal out of range")


class _Search:
    """One proof search query: memo table, stats and budget window."""

    def __init__(self, mode: CalculusMode, budget: int = DEFAULT_BUDGET):
        self.mode = mode
        self.budget = budget
        self.stats = SearchStats()
        self.memo: dict[State, Result | None] = {}
        self._baseline = 0

    # -- public entry points ------------------------------------------------

    def run(self, s: Sequent) -> ProofTree | None:
        if not self._admissible(s):
            return None
        result = self._solve(tuple(s.antecedent), (), s.succedent, 1)
        if result is None:
            return None
        tree, mask = result
        assert not any(mask) and tree.conclusion == s
        return tree

    def enumerate(self, s: Sequent, limit: int) -> list[ProofTree]:
        if limit <= 0 or not self._admissible(s):
            return []
        out: list[ProofTree] = []
        seen: set[ProofTree] = set()
        for tree, mask in self._enum(tuple(s.antecedent), (), s.succedent, 1):
            assert not any(mask)
            if tree not in seen:
                seen.add(tree)
                out.append(tree)
                if len(out) >= limit:
                    break
        return out

    def new_budget_window(self) -> None:
        """Reset the budget while keeping the memo (one query, many goals)."""
        self._baseline = self.stats.nodes_expanded

    # -- admissibility of a root goal ----------------------------------------

    def _admissible(self, s: Sequent) -> bool:
        lhs, rhs = sequent_counts(s)
        if lhs != rhs:
            self.stats.pruned_by_count += 1
            return False
        # -o is only usable in positive positions; in mode l not at all.
        # Subgoals inherit cleanliness, so the root check suffices.
        if self.mode is CalculusMode.L:
            for f in (*s.antecedent, s.succedent):
                if any(linimp_polarities(f)):
                    return False
        else:
            if any(linimp_polarities(f)[0] for f in s.antecedent):
                return False
            if linimp_polarities(s.succedent)[1]:
                return False
        return True

    # -- core recursion -------------------------------------------------------

    def _solve(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula, depth: int) -> Result | None:
        key = (fixed, bag, succ)
        memo = self.memo
        if key in memo:
            self.stats.cache_hits += 1
            return memo[key]
        if self.stats.nodes_expanded - self._baseline >= self.budget:
            raise BudgetExceededError(self.stats)
        self.stats.nodes_expanded += 1
        if depth > self.stats.max_depth:
            self.stats.max_depth = depth

        result: Result | None = None
        for children, is_rule, recombine in self._options(fixed, bag, succ):
            child_depth = depth + 1 if is_rule else depth
            solved: list[Result] = []
            for child in children:
                r = self._solve(*child, child_depth)
                if r is None:
                    break
                solved.append(r)
            else:
                result = next(recombine(solved), None)
                assert result is not None
                break
        memo[key] = result
        return result

    def _enum(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula, depth: int) -> Iterator[Result]:
        if self.stats.nodes_expanded - self._baseline >= self.budget:
            raise BudgetExceededError(self.stats)
        self.stats.nodes_expanded += 1
        for children, is_rule, recombine in self._options(fixed, bag, succ):
            child_depth = depth + 1 if is_rule else depth
            if not children:
                yield from recombine([])
            elif len(children) == 1:
                for r in self._enum(*children[0], child_depth):
                    yield from recombine([r])
            else:
                seconds: list[Result] | None = None
                for r1 in self._enum(*children[0], child_depth):
                    if seconds is None:
                        seconds = list(self._enum(*children[1], child_depth))
                    if not seconds:
                        break
                    for r2 in seconds:
                        yield from recombine([r1, r2])

    # -- option generation ----------------------------------------------------

    def _options(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula) -> Iterator[_Option]:
        mode = self.mode
        total = len(fixed) + _bag_total(bag)
        assert total >= 1

        if total == 1:
            f, pending = (fixed[0], False) if fixed else (bag[0][0], True)
            if isinstance(f, Atom) and f == succ:

                def ax(_: list[Result], f: Formula = f, pending: bool = pending) -> Iterator[Result]:
                    yield ProofTree(Rule.AX, Sequent((f,), f)), (pending,)

                yield [], True, ax

        if isinstance(succ, Over) and mode.has_directional_right:
            if not bag:
                child = (fixed + (succ.arg,), (), succ.result)

                def over_r(rs: list[Result], succ: Formula = succ) -> Iterator[Result]:
                    tree, mask = rs[0]
                    concl = Sequent(tree.conclusion.antecedent[:-1], succ)
                    yield ProofTree(Rule.OVER_R, concl, (tree,)), mask[:-1]

                yield [child], True, over_r
            else:
                yield from self._materializations(fixed, bag, succ)
        elif isinstance(succ, Under) and mode.has_directional_right:
            if not bag:
                child = ((succ.arg,) + fixed, (), succ.result)

                def under_r(rs: list[Result], succ: Formula = succ) -> Iterator[Result]:
                    tree, mask = rs[0]
                    concl = Sequent(tree.conclusion.antecedent[1:], succ)
                    yield ProofTree(Rule.UNDER_R, concl, (tree,)), mask[1:]

                yield [child], True, under_r
            else:
                yield from self._materializations(fixed, bag, succ)
        elif isinstance(succ, LinImp) and mode.has_linimp_right:
            child = (fixed, _bag_add(bag, succ.arg), succ.result)

            def linimp_r(rs: list[Result], succ: Formula = succ) -> Iterator[Result]:
                tree, mask = rs[0]
                ant = tree.conclusion.antecedent
                for k in range(len(ant)):
                    if mask[k] and ant[k] == succ.arg:
                        concl = Sequent(ant[:k] + ant[k + 1 :], succ)
                        yield (
                            ProofTree(Rule.LINIMP_R, concl, (tree,), insert=k),
                            mask[:k] + mask[k + 1 :],
                        )

            yield [child], True, linimp_r

        for i, f in enumerate(fixed):
            if isinstance(f, Over):
                yield from self._over_l_fixed(fixed, bag, succ, i)
            elif isinstance(f, Under):
                yield from self._under_l_fixed(fixed, bag, succ, i)

        for g, _ in bag:
            if isinstance(g, (Over, Under)):
                yield from self._left_pending(fixed, bag, succ, g)

    def _materializations(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula) -> Iterator[_Option]:
        """Commit one pending formula to a concrete position.

        Only needed ahead of /R and \\R, which pin a formula to an end
        of the antecedent and therefore need the interleaving settled.
        """
        for f, _ in bag:
            rest = _bag_remove_one(bag, f)
            for p in range(len(fixed) + 1):
                child = (fixed[:p] + (f,) + fixed[p:], rest, succ)

                def fix_mask(rs: list[Result], p: int = p) -> Iterator[Result]:
                    tree, mask = rs[0]
                    q = _nth_fixed_index(mask, p)
                    yield tree, mask[:q] + (True,) + mask[q + 1 :]

                yield [child], False, fix_mask

    def _over_l_fixed(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula, i: int) -> Iterator[_Option]:
        functor = fixed[i]
        assert isinstance(functor, Over)
        res, arg = functor.result, functor.arg
        need = dict(formula_counts(arg))
        for j in range(i + 1, len(fixed) + 1):
            if j > i + 1:
                _vec_sub(need, formula_counts(fixed[j - 1]))
            found = False
            for take in _float_splits(bag, need):
                if (j - i - 1) + sum(take.values()) < 1:
                    continue
                found = True
                p1 = (fixed[i + 1 : j], _bag_of(take), arg)
                p2 = (fixed[:i] + (res,) + fixed[j:], _bag_sub(bag, take), succ)

                def recombine(
                    rs: list[Result],
                    i: int = i,
                    functor: Formula = functor,
                ) -> Iterator[Result]:
                    (t1, m1), (t2, m2) = rs
                    q = _nth_fixed_index(m2, i)
                    ant2 = t2.conclusion.antecedent
                    ant = ant2[:q] + (functor,) + t1.conclusion.antecedent + ant2[q + 1 :]
                    mask = m2[:q] + (False,) + m1 + m2[q + 1 :]
                    yield (
                        ProofTree(Rule.OVER_L, Sequent(ant, succ), (t1, t2), split=(q, len(m1))),
                        mask,
                    )

                yield [p1, p2], True, recombine
            if not found:
                self.stats.pruned_by_count += 1

    def _under_l_fixed(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula, i: int) -> Iterator[_Option]:
        functor = fixed[i]
        assert isinstance(functor, Under)
        arg, res = functor.arg, functor.result
        need = dict(formula_counts(arg))
        for j in range(i, -1, -1):
            if j < i:
                _vec_sub(need, formula_counts(fixed[j]))
            found = False
            for take in _float_splits(bag, need):
                if (i - j) + sum(take.values()) < 1:
                    continue
                found = True
                p1 = (fixed[j:i], _bag_of(take), arg)
                p2 = (fixed[:j] + (res,) + fixed[i + 1 :], _bag_sub(bag, take), succ)

                def recombine(
                    rs: list[Result],
                    j: int = j,
                    functor: Formula = functor,
                ) -> Iterator[Result]:
                    (t1, m1), (t2, m2) = rs
                    q = _nth_fixed_index(m2, j)
                    ant2 = t2.conclusion.antecedent
                    ant = ant2[:q] + t1.conclusion.antecedent + (functor,) + ant2[q + 1 :]
                    mask = m2[:q] + m1 + (False,) + m2[q + 1 :]
                    yield (
                        ProofTree(Rule.UNDER_L, Sequent(ant, succ), (t1, t2), split=(q, len(m1))),
                        mask,
                    )

                yield [p1, p2], True, recombine
            if not found:
                self.stats.pruned_by_count += 1

    def _left_pending(self, fixed: tuple[Formula, ...], bag: Bag, succ: Formula, g: Formula) -> Iterator[_Option]:
        """Left rule on a pending functor: it lands adjacent to its T."""
        assert isinstance(g, (Over, Under))
        rest = _bag_remove_one(bag, g)
        arg = g.arg
        res = g.result
        is_over = isinstance(g, Over)
        for i in range(len(fixed) + 1):
            need = dict(formula_counts(arg))
            for j in range(i, len(fixed) + 1):
                if j > i:
                    _vec_sub(need, formula_counts(fixed[j - 1]))
                found = False
                for take in _float_splits(rest, need):
                    if (j - i) + sum(take.values()) < 1:
                        continue
                    found = True
                    p1 = (fixed[i:j], _bag_of(take), arg)
                    p2 = (fixed[:i] + (res,) + fixed[j:], _bag_sub(rest, take), succ)

                    def recombine(
                        rs: list[Result],
                        i: int = i,
                        g: Formula = g,
                        is_over: bool = is_over,
                    ) -> Iterator[Result]:
                        (t1, m1), (t2, m2) = rs
                        q = _nth_fixed_index(m2, i)
                        ant2 = t2.conclusion.antecedent
                        ant1 = t1.conclusion.antecedent
                        if is_over:
                            ant = ant2[:q] + (g,) + ant1 + ant2[q + 1 :]
                            mask = m2[:q] + (True,) + m1 + m2[q + 1 :]
                            rule = Rule.OVER_L
                        else:
                            ant = ant2[:q] + ant1 + (g,) + ant2[q + 1 :]
                            mask = m2[:q] + m1 + (True,) + m2[q + 1 :]
                            rule = Rule.UNDER_L
                        yield (
                            ProofTree(rule, Sequent(ant, succ), (t1, t2), split=(q, len(m1))),
                            mask,
                        )

                    yield [p1, p2], True, recombine
                if not found:
                    self.stats.pruned_by_count += 1


def prove(
    s: Sequent,
    mode: CalculusMode = CalculusMode.SDL,
    *,
    budget: int = DEFAULT_BUDGET,
) -> tuple[ProofTree | None, SearchStats]:
    """Search for a cut-free proof of ``s``.

    Returns the first proof in canonical search order, or None when the
    search space is exhausted without one.  Raises BudgetExceededError
    after ``budget`` node expansions; that outcome means "unknown", not
    "underivable".
    """
    search = _Search(mode, budget)
    tree = search.run(s)
    return tree, search.stats


def enumerate_proofs(
    s: Sequent,
    mode: CalculusMode = CalculusMode.SDL,
    limit: int = 10,
    *,
    budget: int = DEFAULT_BUDGET,
) -> list[ProofTree]:
    """Up to ``limit`` distinct proofs of ``s`` in canonical search order."""
    search = _Search(mode, budget)
    return search.enumerate(s, limit)

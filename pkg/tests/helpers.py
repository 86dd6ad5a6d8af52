"""Shared test machinery.

Three independent oracles live here so the library is never checked
against itself:

* a forward proof generator that builds derivable sequents by
  instantiating rules root-ward from axioms,
* ``naive_check``, a straight replay of the rule schemas used to
  cross-validate the packaged checker and to filter proof mutants,
* random formula and sequent generators.
"""

from __future__ import annotations

import random

from lambek import (
    Atom,
    CalculusMode,
    Formula,
    LinImp,
    Over,
    ProofTree,
    Rule,
    Sequent,
    Under,
)

ATOMS = ("a", "b", "c", "d")


def random_formula(rng: random.Random, depth: int, allow_linimp: bool = True) -> Formula:
    if depth <= 0 or rng.random() < 0.4:
        return Atom(rng.choice(ATOMS))
    kinds = ["over", "under"] + (["linimp"] if allow_linimp else [])
    kind = rng.choice(kinds)
    left = random_formula(rng, depth - 1, allow_linimp)
    right = random_formula(rng, depth - 1, allow_linimp)
    if kind == "over":
        return Over(left, right)
    if kind == "under":
        return Under(left, right)
    return LinImp(left, right)


def random_sequent(rng: random.Random, allow_linimp: bool = True) -> Sequent:
    n = rng.randint(1, 4)
    antecedent = tuple(random_formula(rng, 2, allow_linimp) for _ in range(n))
    return Sequent(antecedent, random_formula(rng, 2, allow_linimp))


# ---------------------------------------------------------------------------
# Forward generation of derivable sequents (with their proofs)
# ---------------------------------------------------------------------------


def _axiom(name: str) -> ProofTree:
    return ProofTree(Rule.AX, Sequent((Atom(name),), Atom(name)))


def forward_proof(
    rng: random.Random,
    mode: CalculusMode = CalculusMode.SDL,
    steps: int = 6,
    max_antecedent: int = 5,
    max_connectives: int = 10,
) -> ProofTree:
    """Grow a valid proof by applying rules forward from axioms.

    Every returned tree is correct by construction; its conclusion is
    therefore a derivable sequent of the given mode.
    """
    pool = [_axiom(rng.choice(ATOMS)) for _ in range(2)]
    for _ in range(steps):
        built = _forward_step(rng, pool, mode, max_antecedent, max_connectives)
        if built is not None:
            pool.append(built)
    return pool[-1]


def _forward_step(rng, pool, mode, max_antecedent, max_connectives):
    from lambek import connective_count

    for _ in range(12):
        rule = rng.choice(_forward_rules(mode))
        t2 = rng.choice(pool)
        ant, succ = t2.conclusion.antecedent, t2.conclusion.succedent
        if rule is Rule.OVER_R and len(ant) >= 2:
            built = ProofTree(rule, Sequent(ant[:-1], Over(succ, ant[-1])), (t2,))
        elif rule is Rule.UNDER_R and len(ant) >= 2:
            built = ProofTree(rule, Sequent(ant[1:], Under(ant[0], succ)), (t2,))
        elif rule is Rule.LINIMP_R and len(ant) >= 2:
            k = rng.randrange(len(ant))
            built = ProofTree(
                rule,
                Sequent(ant[:k] + ant[k + 1 :], LinImp(ant[k], succ)),
                (t2,),
                insert=k,
            )
        elif rule in (Rule.OVER_L, Rule.UNDER_L):
            t1 = rng.choice(pool)
            ant1, succ1 = t1.conclusion.antecedent, t1.conclusion.succedent
            i = rng.randrange(len(ant))
            picked = ant[i]
            if rule is Rule.OVER_L:
                functor = Over(picked, succ1)
                new_ant = ant[:i] + (functor,) + ant1 + ant[i + 1 :]
                split = (i, len(ant1))
            else:
                functor = Under(succ1, picked)
                new_ant = ant[:i] + ant1 + (functor,) + ant[i + 1 :]
                split = (i, len(ant1))
            built = ProofTree(rule, Sequent(new_ant, succ), (t1, t2), split=split)
        else:
            continue
        c = built.conclusion
        if len(c.antecedent) > max_antecedent:
            continue
        if connective_count(c) > max_connectives:
            continue
        return built
    return None


def _forward_rules(mode: CalculusMode) -> list[Rule]:
    rules = [Rule.OVER_L, Rule.UNDER_L, Rule.OVER_L, Rule.UNDER_L]
    if mode is not CalculusMode.SDL_MINUS:
        rules += [Rule.OVER_R, Rule.UNDER_R]
    if mode is not CalculusMode.L:
        rules += [Rule.LINIMP_R]
    return rules


# ---------------------------------------------------------------------------
# Independent proof validation (the oracle for checker tests)
# ---------------------------------------------------------------------------


def naive_check(t: ProofTree, mode: CalculusMode) -> bool:
    """Validate a proof tree directly against the rule schemas."""
    ant, succ = t.conclusion.antecedent, t.conclusion.succedent
    kids = t.premises
    if any(not naive_check(k, mode) for k in kids):
        return False
    if t.rule is Rule.AX:
        return isinstance(succ, Atom) and ant == (succ,) and t.split is None and t.insert is None

    if t.rule is Rule.OVER_R:
        return (
            mode is not CalculusMode.SDL_MINUS
            and isinstance(succ, Over)
            and kids[0].conclusion == Sequent(ant + (succ.arg,), succ.result)
        )
    if t.rule is Rule.UNDER_R:
        return (
            mode is not CalculusMode.SDL_MINUS
            and isinstance(succ, Under)
            and kids[0].conclusion == Sequent((succ.arg,) + ant, succ.result)
        )
    if t.rule is Rule.LINIMP_R:
        k = t.insert
        return (
            mode is not CalculusMode.L
            and isinstance(succ, LinImp)
            and k is not None
            and 0 <= k <= len(ant)
            and kids[0].conclusion == Sequent(ant[:k] + (succ.arg,) + ant[k:], succ.result)
        )

    if t.split is None:
        return False
    u, n = t.split
    if t.rule is Rule.OVER_L:
        if not (0 <= u and n >= 1 and u + 1 + n <= len(ant)):
            return False
        f = ant[u]
        if not isinstance(f, Over):
            return False
        left = Sequent(ant[u + 1 : u + 1 + n], f.arg)
        right = Sequent(ant[:u] + (f.result,) + ant[u + 1 + n :], succ)
        return kids[0].conclusion == left and kids[1].conclusion == right
    if t.rule is Rule.UNDER_L:
        if not (0 <= u and n >= 1 and u + n < len(ant)):
            return False
        f = ant[u + n]
        if not isinstance(f, Under):
            return False
        left = Sequent(ant[u : u + n], f.arg)
        right = Sequent(ant[:u] + (f.result,) + ant[u + n + 1 :], succ)
        return kids[0].conclusion == left and kids[1].conclusion == right
    return False


# ---------------------------------------------------------------------------
# Single-edit proof mutants
# ---------------------------------------------------------------------------


def _all_paths(t: ProofTree, prefix=()):
    yield prefix
    for i, kid in enumerate(t.premises):
        yield from _all_paths(kid, prefix + (i,))


def _node_at(t: ProofTree, path):
    for i in path:
        t = t.premises[i]
    return t


def _replace_at(t: ProofTree, path, new: ProofTree) -> ProofTree:
    if not path:
        return new
    kids = list(t.premises)
    kids[path[0]] = _replace_at(kids[path[0]], path[1:], new)
    return ProofTree(t.rule, t.conclusion, tuple(kids), split=t.split, insert=t.insert)


def mutate_proof(rng: random.Random, t: ProofTree) -> ProofTree | None:
    """One random structural edit; None when the pick was inapplicable.

    Edits are the ones that matter for a verifier: flipped split or
    insert positions, and swapped premises of a two-premise rule.  The
    result can coincidentally still be a valid proof; callers filter
    with naive_check.
    """
    paths = list(_all_paths(t))
    path = rng.choice(paths)
    node = _node_at(t, path)
    ant_len = len(node.conclusion.antecedent)
    choices = []
    if node.split is not None:
        choices.append("split")
    if node.insert is not None:
        choices.append("insert")
    if len(node.premises) == 2:
        choices.append("swap")
    if not choices:
        return None
    kind = rng.choice(choices)
    if kind == "split":
        u, n = node.split
        for _ in range(8):
            new_split = (rng.randint(0, ant_len - 1), rng.randint(1, max(ant_len - 1, 1)))
            if new_split != (u, n):
                break
        else:
            return None
        mutated = ProofTree(node.rule, node.conclusion, node.premises, split=new_split)
    elif kind == "insert":
        k = node.insert
        new_k = rng.choice([x for x in range(ant_len + 1) if x != k] or [k + 1])
        mutated = ProofTree(node.rule, node.conclusion, node.premises, insert=new_k)
    else:
        mutated = ProofTree(
            node.rule,
            node.conclusion,
            (node.premises[1], node.premises[0]),
            split=node.split,
            insert=node.insert,
        )
    out = _replace_at(t, path, mutated)
    return None if out == t else out

"""Proof trees for the sequent calculus, plus JSON and text renderings.

A node records its rule, its conclusion sequent, its premises (0 for
Ax, 1 for right rules, 2 for left rules) and the positional data needed
to replay the rule application:

* ``split = (u, t)`` for /L and \\L: the conclusion antecedent is
  ``U ++ [functor] ++ T ++ V`` (/L) or ``U ++ T ++ [functor] ++ V``
  (\\L) with ``len(U) == u`` and ``len(T) == t``.  The first premise is
  always ``T => argument`` and the second the conclusion with the
  functor's whole span replaced by its result.
* ``insert = k`` for -oR: the premise re-inserts the argument at
  position ``k`` of the conclusion antecedent.

The JSON form mirrors this structure; ``sequent`` is concrete sequent
text and ``premises`` nests recursively::

    {"rule": "/L", "sequent": "a/b, b => a", "split": [0, 1],
     "premises": [...]}
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Any

from .syntax import Sequent, format_sequent, parse_sequent

__all__ = [
    "Rule",
    "ProofTree",
    "proof_to_json",
    "proof_from_json",
    "proof_to_json_text",
    "proof_from_json_text",
    "render_proof",
]


class Rule(enum.Enum):
    AX = "Ax"
    OVER_L = "/L"
    OVER_R = "/R"
    UNDER_L = "\\L"
    UNDER_R = "\\R"
    LINIMP_R = "-oR"

    def __str__(self) -> str:
        return self.value


_ARITY = {
    Rule.AX: 0,
    Rule.OVER_R: 1,
    Rule.UNDER_R: 1,
    Rule.LINIMP_R: 1,
    Rule.OVER_L: 2,
    Rule.UNDER_L: 2,
}


@dataclass(frozen=True)
class ProofTree:
    rule: Rule
    conclusion: Sequent
    premises: tuple[ProofTree, ...] = ()
    split: tuple[int, int] | None = None
    insert: int | None = None

    def __post_init__(self) -> None:
        if len(self.premises) != _ARITY[self.rule]:
            raise ValueError(
                f"{self.rule} takes {_ARITY[self.rule]} premises, got {len(self.premises)}"
            )

    def nodes(self) -> list[ProofTree]:
        """All nodes in preorder."""
        out = [self]
        for p in self.premises:
            out.extend(p.nodes())
        return out

    def rule_count(self, rule: Rule) -> int:
        return sum(1 for n in self.nodes() if n.rule is rule)

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)


def proof_to_json(t: ProofTree) -> dict[str, Any]:
    node: dict[str, Any] = {
        "rule": t.rule.value,
        "sequent": format_sequent(t.conclusion),
    }
    if t.split is not None:
        node["split"] = list(t.split)
    if t.insert is not None:
        node["insert"] = t.insert
    node["premises"] = [proof_to_json(p) for p in t.premises]
    return node


def proof_from_json(node: dict[str, Any]) -> ProofTree:
    try:
        rule = Rule(node["rule"])
        split = node.get("split")
        return ProofTree(
            rule=rule,
            conclusion=parse_sequent(node["sequent"]),
            premises=tuple(proof_from_json(p) for p in node.get("premises", [])),
            split=(split[0], split[1]) if split is not None else None,
            insert=node.get("insert"),
        )
    except (KeyError, IndexError, TypeError) as e:
        raise ValueError(f"malformed proof node: {e!r}") from e


def proof_to_json_text(t: ProofTree) -> str:
    return json.dumps(proof_to_json(t), indent=2)


def proof_from_json_text(text: str) -> ProofTree:
    return proof_from_json(json.loads(text))


def render_proof(t: ProofTree) -> str:
    """Indented tree, one node per line, rule names right-aligned."""
    rows: list[tuple[str, str]] = []

    def walk(node: ProofTree, depth: int) -> None:
        rows.append(("  " * depth + format_sequent(node.conclusion), node.rule.value))
        for p in node.premises:
            walk(p, depth + 1)

    walk(t, 0)
    width = max(len(text) for text, _ in rows) + 3
    return "\n".join(f"{text:<{width}}{rule:>4}" for text, rule in rows)

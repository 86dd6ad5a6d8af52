from __future__ import annotations

import json

import pytest

from lambek import (
    AssignmentDecodeError,
    Atom,
    CalculusMode,
    Sequent,
    ThreePartitionInstance,
    assignment_to_partition,
    balanced,
    build_reduction,
    canonical_partition,
    instance_from_json,
    instance_to_json,
    parse_formula,
    partition_to_assignment,
    prove,
    recognize,
    solve_3partition,
    validate_instance,
)

GOOD = ThreePartitionInstance(1, 12, (4, 4, 4))
TWO = ThreePartitionInstance(2, 16, (5, 5, 6, 5, 6, 5))


def test_validate_instance_accepts():
    assert validate_instance(GOOD) == []
    assert validate_instance(TWO) == []
    assert validate_instance(ThreePartitionInstance(1, 10, (3, 3, 4))) == []


def test_validate_instance_bounds():
    # 3 + 4 + 5 = 12, but 3 is not strictly above 12/4
    problems = validate_instance(ThreePartitionInstance(1, 12, (3, 4, 5)))
    assert len(problems) == 1
    assert "size 3 at position 1" in problems[0]
    assert "(3.0, 6.0)" in problems[0]
    # the upper bound is strict too
    problems = validate_instance(ThreePartitionInstance(1, 12, (6, 2, 4)))
    assert any("size 6 at position 1" in p for p in problems)


def test_validate_instance_shape():
    assert any("3m" in p for p in validate_instance(ThreePartitionInstance(2, 12, (4, 4, 4))))
    assert any("sum" in p for p in validate_instance(ThreePartitionInstance(1, 12, (4, 4, 5))))
    assert any("m must" in p for p in validate_instance(ThreePartitionInstance(0, 12, ())))


def test_solve_3partition():
    assert solve_3partition(GOOD) == ((0, 1, 2),)
    assert solve_3partition(TWO) == ((0, 1, 2), (3, 4, 5))
    # the first triple anchors at index 0 and takes the least partners
    inst = ThreePartitionInstance(2, 16, (5, 6, 5, 5, 5, 6))
    assert solve_3partition(inst) == ((0, 1, 2), (3, 4, 5))
    assert solve_3partition(ThreePartitionInstance(2, 16, (5, 5, 5, 5, 5, 7))) is None
    with pytest.raises(ValueError):
        solve_3partition(ThreePartitionInstance(2, 16, (5, 5, 6)))


def test_canonical_partition():
    assert canonical_partition([(5, 3, 4), (2, 0, 1)]) == ((0, 1, 2), (3, 4, 5))
    with pytest.raises(ValueError):
        canonical_partition([(0, 0, 1)])


def test_build_reduction_types():
    out = build_reduction(GOOD)
    grammar, word = out
    assert out.word == word == ("v", "w1", "w2", "w3")
    assert out.grammar.start == grammar.start == "a"
    v = grammar.lexicon["v"]
    assert len(v) == 1
    assert v[0] == parse_formula(
        "a/(b1 -o b1 -o b1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o c1 -o d)"
    )
    assert grammar.lexicon["w1"] == (parse_formula("d/c1/c1/c1/c1/b1/d"),)
    # the last token has no trailing /d
    assert grammar.lexicon["w3"] == (parse_formula("d/c1/c1/c1/c1/b1"),)


def test_build_reduction_slot_choice():
    grammar, _ = build_reduction(TWO)
    # one type per slot, in slot order
    assert grammar.lexicon["w1"] == (
        parse_formula("d/c1/c1/c1/c1/c1/b1/d"),
        parse_formula("d/c2/c2/c2/c2/c2/b2/d"),
    )
    assert len(grammar.lexicon["w6"]) == 2
    assert all(len(grammar.lexicon[f"w{i}"]) == 2 for i in range(1, 7))


def test_build_reduction_rejects_bad_instance():
    with pytest.raises(ValueError):
        build_reduction(ThreePartitionInstance(1, 12, (3, 4, 5)))


def test_partition_assignment_round_trip():
    part = solve_3partition(TWO)
    assignment = partition_to_assignment(TWO, part)
    s = Sequent(assignment, Atom("a"))
    assert balanced(s)
    assert prove(s, CalculusMode.SDL)[0] is not None
    assert assignment_to_partition(TWO, assignment) == part


def test_partition_to_assignment_rejects():
    with pytest.raises(ValueError, match="sum"):
        partition_to_assignment(TWO, ((0, 1, 3), (2, 4, 5)))
    with pytest.raises(ValueError, match="two triples"):
        partition_to_assignment(TWO, ((0, 1, 2), (0, 4, 5)))
    with pytest.raises(ValueError, match="cover"):
        partition_to_assignment(TWO, ((0, 1, 2),))


def test_assignment_to_partition_rejects():
    part = solve_3partition(TWO)
    assignment = list(partition_to_assignment(TWO, part))
    with pytest.raises(AssignmentDecodeError, match="'v'"):
        assignment_to_partition(TWO, tuple(assignment[1:] + assignment[:1]))
    # push every item into slot 1: shape is fine, balance is not
    grammar, _ = build_reduction(TWO)
    skewed = (grammar.lexicon["v"][0],) + tuple(grammar.lexicon[f"w{i}"][0] for i in range(1, 7))
    with pytest.raises(AssignmentDecodeError, match="slot"):
        assignment_to_partition(TWO, skewed)
    with pytest.raises(AssignmentDecodeError, match="expected"):
        assignment_to_partition(TWO, (Atom("d"),))


def test_membership_matches_solvability():
    for inst, solvable in [
        (GOOD, True),
        (TWO, True),
        (ThreePartitionInstance(2, 16, (5, 5, 5, 5, 5, 7)), False),
    ]:
        grammar, word = build_reduction(inst)
        r = recognize(grammar, word, CalculusMode.SDL)
        assert not r.budget_exhausted
        assert r.member is solvable
        assert (solve_3partition(inst) is not None) is solvable
        if solvable:
            assert assignment_to_partition(inst, r.assignment)


def test_unsolvable_instances_cost_no_search():
    inst = ThreePartitionInstance(2, 16, (5, 5, 5, 5, 5, 7))
    grammar, word = build_reduction(inst)
    r = recognize(grammar, word, CalculusMode.SDL)
    # every assignment is unbalanced, so the prover never runs
    assert r.stats.nodes_expanded == 0
    assert r.stats.pruned_by_count == 2 ** 6


def test_instance_json_round_trip():
    text = instance_to_json(TWO)
    assert json.loads(text) == {"m": 2, "N": 16, "sizes": [5, 5, 6, 5, 6, 5]}
    assert instance_from_json(text) == TWO


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"m": 1, "N": 12}',
        '{"m": 1, "N": 12, "sizes": [4, 4, 4], "extra": 0}',
        '{"m": 1.5, "N": 12, "sizes": [4, 4, 4]}',
        '{"m": true, "N": 12, "sizes": [4, 4, 4]}',
        '{"m": 1, "N": 12, "sizes": "444"}',
        '{"m": 1, "N": 12, "sizes": [4, "4", 4]}',
    ],
)
def test_instance_json_rejects(text):
    with pytest.raises(ValueError):
        instance_from_json(text)

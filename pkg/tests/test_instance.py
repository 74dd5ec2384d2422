from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maxlinsat.errors import DimensionMismatch, InstanceSyntaxError, InvariantViolation
from maxlinsat.generators import GenConfig, planted, random_instance
from maxlinsat.instance import (Instance, all_assignments, assignment_block, baseline_ratio,
                                evaluate, parse, parse_assignment, serialize,
                                serialize_assignment, uniform_acceptance_size)

from oracles import naive_count, naive_opt

TOY = Instance.build(2, [[1, 0], [1, 0], [0, 1]], [[0], [1], [0]])

CANONICAL = """linsat 3 2 2
1 2 | 0
0 1 | 1 2
"""


def test_evaluate_toy():
    res = evaluate(TOY, (0, 0))
    assert res.satisfied == 2
    assert res.ratio == Fraction(2, 3)
    assert res.mask == (True, False, True)


@pytest.mark.parametrize("c", [0, 1, 2, 3, 4])
def test_zero_row_depends_only_on_constant(c):
    others = [v for v in range(5) if v != c]
    inst = Instance.build(5, [[0, 0], [1, 1]], [others, [0]])
    for x in [(0, 0), (1, 3), (4, 4)]:
        assert evaluate(inst, x).mask[0] == (0 != c)


def test_planted_assignment_meets_target():
    cfg = GenConfig(q=3, n=4, m=12, r=1, seed=5, kind="planted", planted_fraction=Fraction(3, 4))
    inst, x = planted(cfg)
    s = evaluate(inst, x).satisfied
    assert s >= 9
    assert naive_opt(inst)[0] >= s


def test_evaluate_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        evaluate(TOY, (0, 0, 0))


def test_uniform_acceptance_size():
    assert uniform_acceptance_size(Instance.build(5, [[1], [2]], [[0, 1], [2, 4]])) == 2
    assert uniform_acceptance_size(Instance.build(5, [[1], [2]], [[0], [2, 4]])) is None
    assert uniform_acceptance_size(Instance.build(5, [[1]], [[0, 1, 3]])) == 3


def test_baseline_ratio():
    inst = random_instance(GenConfig(q=5, n=3, m=7, r=2, seed=1))
    assert baseline_ratio(inst) == Fraction(2, 5)
    assert baseline_ratio(Instance.build(4, [[1], [1]], [[0], [0, 1, 2]])) == Fraction(1, 2)
    xor = random_instance(GenConfig(q=2, n=3, m=9, r=1, seed=2))
    assert baseline_ratio(xor) == Fraction(1, 2)


def test_parse_canonical_roundtrip():
    inst = parse(CANONICAL)
    assert (inst.q, inst.n, inst.m) == (3, 2, 2)
    assert inst.accept == ((0,), (1, 2))
    assert serialize(inst) == CANONICAL


def test_parse_ignores_comments():
    text = "# header comment\n" + CANONICAL.replace("1 2 | 0\n", "1 2 | 0\n# between rows\n")
    assert parse(text) == parse(CANONICAL)


def test_full_acceptance_set_rejected():
    with pytest.raises(InvariantViolation) as err:
        parse("linsat 3 1 2\n1 | 0\n1 | 0 1 2\n")
    assert err.value.index == 1


@pytest.mark.parametrize("text, lineno", [
    ("linsat 3 2 1\n1 3 | 0\n", 2),
    ("linsat 3 2 1\n1 2 | 3\n", 2),
    ("linsat 3 2 1\n1 | 0\n", 2),
    ("linsat 3 2 1\n1 1 0\n", 2),
    ("linsat 3 2 1\n1 1 | 1 0\n", 2),
    ("linsat 3 2 1\n1 1 | 1 1\n", 2),
    ("linsat 3 2 1\n1 x | 1\n", 2),
    ("linsat 3 2\n", 1),
    ("linsat 6 2 1\n1 1 | 1\n", 1),
    ("linsat 3 1 1\n1 | 0\n1 | 1\n", 3),
])
def test_syntax_errors_carry_line_numbers(text, lineno):
    with pytest.raises(InstanceSyntaxError) as err:
        parse(text)
    assert err.value.lineno == lineno


def test_missing_rows():
    with pytest.raises(InstanceSyntaxError):
        parse("linsat 3 1 2\n1 | 0\n")


def test_empty_acceptance_list_is_invariant_violation():
    with pytest.raises(InvariantViolation):
        parse("linsat 3 1 1\n1 |\n")


def test_instance_invariants():
    with pytest.raises(InvariantViolation):
        Instance.build(3, [[1]], [[0, 1, 2]])
    with pytest.raises(InvariantViolation):
        Instance.build(3, [], [])
    with pytest.raises(DimensionMismatch):
        Instance.build(3, [[1, 2], [1]], [[0], [0]])


def test_assignment_format():
    assert serialize_assignment((0, 2, 1)) == "0 2 1\n"
    assert parse_assignment("0 2 1\n") == (0, 2, 1)
    with pytest.raises(DimensionMismatch):
        parse_assignment("0 1\n", Instance.build(3, [[1, 1, 1]], [[0]]))
    with pytest.raises(InstanceSyntaxError):
        parse_assignment("0 5\n", parse(CANONICAL))


def test_sparse_rows_roundtrip():
    inst = Instance.build(4, [[1, 0, 0, 1, 1, 0], [0, 1, 1, 1, 0, 0]], [[2], [0, 3]])
    assert parse(serialize(inst)) == inst


def test_assignment_block_is_lexicographic():
    xs = all_assignments(3, 2).tolist()
    assert xs == [[a, b] for a in range(3) for b in range(3)]
    assert assignment_block(3, 2, 4, 6).tolist() == [[1, 1], [1, 2]]


@st.composite
def instances(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
    n = draw(st.integers(1, 5))
    m = draw(st.integers(1, 6))
    rows = [draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n)) for _ in range(m)]
    accept = [draw(st.sets(st.integers(0, q - 1), min_size=1, max_size=q - 1)) for _ in range(m)]
    return Instance.build(q, rows, accept)


@given(instances())
def test_parse_serialize_roundtrip(inst):
    text = serialize(inst)
    assert parse(text) == inst
    assert serialize(parse(text)) == text


@settings(max_examples=60)
@given(instances(), st.data())
def test_evaluate_matches_naive_loop(inst, data):
    x = tuple(data.draw(st.lists(st.integers(0, inst.q - 1), min_size=inst.n, max_size=inst.n)))
    res = evaluate(inst, x)
    assert res.satisfied == naive_count(inst, x) == sum(res.mask)
    assert 0 <= res.ratio <= 1
    assert res.ratio == Fraction(res.satisfied, inst.m)
    assert evaluate(inst, x) == res


def test_batch_matches_single():
    inst = random_instance(GenConfig(q=7, n=3, m=10, r=3, seed=11))
    xs = all_assignments(7, 3)
    counts = inst.satisfied_counts(xs)
    for k in range(0, len(xs), 37):
        assert counts[k] == naive_count(inst, tuple(xs[k]))


def test_linear_forms_rejects_out_of_field_values():
    with pytest.raises(DimensionMismatch):
        TOY.linear_forms(np.array([[0, 2]]))

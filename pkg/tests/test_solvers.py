import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maxlinsat.errors import ConfigError, TooLarge
from maxlinsat.generators import GenConfig, opi, planted, random_instance
from maxlinsat.gf import from_order
from maxlinsat.instance import Instance, evaluate
from maxlinsat.reduction import predicted_satisfied, reduce
from maxlinsat.solvers import (brute_force, conditional_expectations, prange_isd,
                               random_assignment, solve, solve_linear_system)

from oracles import matvec, naive_count, naive_opt

TOY = Instance.build(2, [[1, 0], [1, 0], [0, 1]], [[0], [1], [0]])


def _check_result(inst, res):
    assert res.eval == evaluate(inst, res.assignment)
    assert res.eval.satisfied == naive_count(inst, res.assignment)


# -- linear systems -------------------------------------------------------------


def test_identity_system():
    F = from_order(7)
    A = [[int(i == j) for j in range(4)] for i in range(4)]
    sol = solve_linear_system(F, A, [3, 1, 4, 1])
    assert sol.status == "unique" and sol.particular == (3, 1, 4, 1)


def test_zero_system():
    F = from_order(5)
    sol = solve_linear_system(F, [[0, 0, 0]] * 3, [0, 0, 0])
    assert sol.status == "parametric"
    assert sol.free == (0, 1, 2) and sol.rank == 0
    assert sol.solution(F, [1, 2, 3]) == (1, 2, 3)


def test_inconsistent_system():
    F = from_order(3)
    sol = solve_linear_system(F, [[1, 1], [2, 2]], [1, 1])
    assert sol.status == "inconsistent"


@pytest.mark.parametrize("q", [5, 7, 8, 9, 16])
def test_vandermonde_systems(q):
    inst = opi(GenConfig(q=q, n=4, m=q, r=1, seed=q, kind="opi"))
    F = inst.field
    rng = np.random.default_rng(q)
    for _ in range(10):
        rows = rng.choice(q, size=4, replace=False)
        A = [inst.coefficients[i] for i in rows]
        b = rng.integers(0, q, size=4).tolist()
        sol = solve_linear_system(F, A, b)
        assert sol.status == "unique"
        assert matvec(F, A, sol.particular) == b


@st.composite
def systems(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 9]))
    k = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    A = [draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n)) for _ in range(k)]
    b = draw(st.lists(st.integers(0, q - 1), min_size=k, max_size=k))
    return q, A, b


@settings(max_examples=150)
@given(systems(), st.data())
def test_solutions_check_by_substitution(system, data):
    q, A, b = system
    F = from_order(q)
    sol = solve_linear_system(F, A, b)
    n = len(A[0])
    if sol.status == "inconsistent":
        # small enough to confirm by enumeration
        from itertools import product
        assert all(matvec(F, A, x) != b for x in product(range(q), repeat=n))
        return
    free = data.draw(st.lists(st.integers(0, q - 1), min_size=len(sol.free),
                              max_size=len(sol.free)))
    assert matvec(F, A, sol.solution(F, free)) == b
    assert sol.rank + len(sol.free) == n


# -- brute force ------------------------------------------------------------------


def test_brute_toy():
    res = brute_force(TOY)
    assert res.eval.satisfied == 2
    assert res.assignment == (0, 0)


def test_brute_planted_reaches_m():
    inst, _ = planted(GenConfig(q=3, n=4, m=15, r=1, seed=2, kind="planted"))
    assert brute_force(inst).eval.satisfied == 15


@pytest.mark.parametrize("seed", range(8))
def test_brute_matches_oracle(seed):
    inst = random_instance(GenConfig(q=4, n=3, m=8, r=2, seed=seed))
    res = brute_force(inst)
    opt, first = naive_opt(inst)
    assert res.eval.satisfied == opt
    assert res.assignment == first
    _check_result(inst, res)


def test_brute_cap():
    inst = random_instance(GenConfig(q=5, n=11, m=3, r=2, seed=0))
    with pytest.raises(TooLarge):
        brute_force(inst)
    with pytest.raises(TooLarge):
        brute_force(TOY, cap=3)


@pytest.mark.parametrize("seed", range(6))
def test_reduced_opt_follows_fraction_law(seed):
    inst = random_instance(GenConfig(q=4, n=3, m=5, r=1, seed=seed))
    opt = brute_force(inst).eval.satisfied
    for r in (2, 3):
        red = reduce(inst, r)
        assert brute_force(red).eval.satisfied == predicted_satisfied(opt, inst.m, 4, r)


# -- random assignment ---------------------------------------------------------------


def test_random_assignment_deterministic():
    inst = random_instance(GenConfig(q=5, n=6, m=10, r=2, seed=1))
    a, b = random_assignment(inst, 42), random_assignment(inst, 42)
    assert a.assignment == b.assignment and a.eval == b.eval and a.seed == 42
    _check_result(inst, a)


def test_random_assignment_xorsat_mean():
    inst = random_instance(GenConfig(q=2, n=8, m=400, r=1, seed=5))
    ratios = [float(random_assignment(inst, s).eval.ratio) for s in range(400)]
    mean = np.mean(ratios)
    se = np.std(ratios, ddof=1) / math.sqrt(len(ratios))
    assert abs(mean - 0.5) <= 4 * se


@pytest.mark.slow
def test_per_constraint_frequencies():
    inst = random_instance(GenConfig(q=5, n=6, m=8, r=2, seed=3))
    trials = 10_000
    hits = np.zeros(inst.m)
    for s in range(trials):
        hits += evaluate(inst, random_assignment(inst, s).assignment).mask
    p = 2 / 5
    sigma = math.sqrt(trials * p * (1 - p))
    assert np.all(np.abs(hits - trials * p) <= 4 * sigma)


# -- conditional expectations ----------------------------------------------------------


def test_ce_single_constraint():
    for c in range(5):
        inst = Instance.build(5, [[1]], [[c]])
        assert conditional_expectations(inst).eval.satisfied == 1


def test_ce_ties_pick_smallest():
    inst = Instance.build(3, [[1, 1]], [[0, 1]])
    assert conditional_expectations(inst).assignment == (0, 0)


def _ce_guarantee(inst):
    """sum |F_i|/q over rows with a nonzero coefficient, plus determined zero rows."""
    total = Fraction(0)
    for row, fs in zip(inst.coefficients, inst.accept):
        if any(row):
            total += Fraction(len(fs), inst.q)
        else:
            total += 0 in fs
    return total


@st.composite
def instances(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 7]))
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 8))
    rows = [draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n)) for _ in range(m)]
    accept = [draw(st.sets(st.integers(0, q - 1), min_size=1, max_size=q - 1)) for _ in range(m)]
    return Instance.build(q, rows, accept)


@settings(max_examples=150, deadline=None)
@given(instances())
def test_ce_guarantee_and_opt(inst):
    res = conditional_expectations(inst)
    _check_result(inst, res)
    bound = _ce_guarantee(inst)
    assert res.eval.satisfied >= math.ceil(bound)
    assert res.eval.satisfied <= naive_opt(inst)[0]


# -- Prange --------------------------------------------------------------------------------


def test_prange_square_planted():
    # n = m and B invertible: one iteration hits every target
    inst = opi(GenConfig(q=7, n=5, m=5, r=1, seed=4, kind="opi"))
    res = prange_isd(inst, seed=0, iterations=1)
    assert res.eval.satisfied == 5


def test_prange_deterministic_and_monotone():
    inst = random_instance(GenConfig(q=5, n=6, m=30, r=2, seed=12))
    a = prange_isd(inst, seed=3, iterations=5)
    b = prange_isd(inst, seed=3, iterations=5)
    assert a.assignment == b.assignment and a.iterations == 5
    more = prange_isd(inst, seed=3, iterations=20)
    assert more.eval.satisfied >= a.eval.satisfied
    _check_result(inst, more)


def test_prange_satisfies_its_subsystem():
    inst = random_instance(GenConfig(q=7, n=4, m=20, r=3, seed=1))
    for seed in range(20):
        assert prange_isd(inst, seed, 1).eval.satisfied >= 1


def test_prange_more_variables_than_constraints():
    inst = random_instance(GenConfig(q=5, n=6, m=3, r=1, seed=2))
    res = prange_isd(inst, seed=1, iterations=1)
    assert res.eval.satisfied == 3


def test_prange_singular_subsystems():
    # every row is a multiple of (1, 1): rank 1, so most target pairs are inconsistent
    inst = Instance.build(5, [[1, 1], [2, 2], [3, 3], [1, 1]], [[0], [1], [2], [3]])
    for seed in range(30):
        res = prange_isd(inst, seed, 1)
        _check_result(inst, res)


def test_prange_iterations_validated():
    with pytest.raises(ConfigError):
        prange_isd(TOY, 0, 0)


def test_prange_mean_small():
    # q=5, r=2, n=10, m=100: formula gives 0.1 + 0.9*0.4 = 0.46
    ratios = []
    for seed in range(150):
        inst = random_instance(GenConfig(q=5, n=10, m=100, r=2, seed=seed))
        ratios.append(float(prange_isd(inst, seed, 1).eval.ratio))
    assert abs(np.mean(ratios) - 0.46) < 0.03


def test_solve_dispatch():
    assert solve(TOY, "brute").algorithm == "brute"
    assert solve(TOY, "ce").algorithm == "ce"
    assert solve(TOY, "random", seed=1).seed == 1
    assert solve(TOY, "prange", seed=1, iterations=2).iterations == 2
    with pytest.raises(ConfigError):
        solve(TOY, "sdp")

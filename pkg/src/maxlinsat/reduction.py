"""Gadget reduction from singleton-acceptance instances to uniform size r.

Each constraint ``L_i(x) = b_i`` is replaced by the C(q-1, r-1) constraints
``L_i(x) in S`` for every r-subset ``S`` containing ``b_i``. An assignment that
hits ``b_i`` satisfies all of them; one that lands on ``c != b_i`` satisfies
exactly the C(q-2, r-2) subsets holding both values. Summed over rows, an
assignment satisfying ``a`` original constraints satisfies

    a * C(q-1, r-1) + (m - a) * C(q-2, r-2)

reduced constraints, i.e. a fraction ``mu (q-r)/(q-1) + (r-1)/(q-1)`` with
``mu = a/m``. Everything here is exact integer/rational arithmetic.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import MismatchedInstances, NotSingleton, RangeError
from .instance import Instance, uniform_acceptance_size


def binomial(a, b):
    """C(a, b), taken as 0 whenever ``b < 0`` or ``b > a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def _check_r(q, r):
    if not 1 <= r <= q - 1:
        raise RangeError(f"r must lie in [1, {q - 1}], got {r}")


def r_subsets_containing(field, b, r):
    """All r-subsets of the field containing ``b``, as sorted tuples in lexicographic order."""
    q = field.q
    _check_r(q, r)
    if not 0 <= b < q:
        raise RangeError(f"{b} is not an element of GF({q})")
    others = [v for v in range(q) if v != b]
    return sorted(tuple(sorted(rest + (b,))) for rest in combinations(others, r - 1))


def reduce(inst, r):
    """Blow every singleton constraint up into its C(q-1, r-1) r-subset copies.

    Output order: original row index ascending, then subsets lexicographically.
    """
    _check_r(inst.q, r)
    for i, fs in enumerate(inst.accept):
        if len(fs) != 1:
            raise NotSingleton(f"constraint {i} has acceptance set of size {len(fs)}, expected 1")
    rows, accept = [], []
    for row, (b,) in zip(inst.coefficients, inst.accept):
        for subset in r_subsets_containing(inst.field, b, r):
            rows.append(row)
            accept.append(subset)
    return Instance(inst.field, rows, accept)


def reduced_size(m, q, r):
    return m * binomial(q - 1, r - 1)


def predicted_fraction(mu, q, r):
    """Satisfied fraction of the reduced instance given the original fraction ``mu``."""
    mu = Fraction(mu)
    if q < 2:
        raise RangeError("q must be >= 2")
    _check_r(q, r)
    if not 0 <= mu <= 1:
        raise RangeError(f"mu must lie in [0, 1], got {mu}")
    return mu * Fraction(q - r, q - 1) + Fraction(r - 1, q - 1)


def soundness_bound(epsilon, q, r):
    """Upper bound ``r/q + epsilon (q-r)/(q-1)`` when ``mu <= 1/q + epsilon``."""
    epsilon = Fraction(epsilon)
    _check_r(q, r)
    if epsilon < 0:
        raise RangeError("epsilon must be non-negative")
    return Fraction(r, q) + epsilon * Fraction(q - r, q - 1)


def predicted_satisfied(a, m, q, r):
    return a * binomial(q - 1, r - 1) + (m - a) * binomial(q - 2, r - 2)


@dataclass(frozen=True)
class ReductionReport:
    exact: int
    m: int
    predicted: int
    actual: int
    m_prime: int

    @property
    def mu(self):
        return Fraction(self.exact, self.m)

    @property
    def ok(self):
        return self.predicted == self.actual


def _reduced_r(original, reduced):
    if original.field != reduced.field or original.n != reduced.n:
        raise MismatchedInstances("original and reduced instances differ in field or n")
    if uniform_acceptance_size(original) != 1:
        raise MismatchedInstances("original instance must have singleton acceptance sets")
    r = uniform_acceptance_size(reduced)
    if r is None or reduced.m != reduced_size(original.m, original.q, r):
        raise MismatchedInstances(
            f"reduced instance has {reduced.m} constraints, inconsistent with m={original.m}")
    return r


def reduction_table(original, reduced, xs):
    """Vectorised check over a batch of assignments.

    Returns integer arrays ``(exact, predicted, actual)`` of length N, where
    ``exact`` counts original constraints met exactly and ``actual`` comes
    from evaluating the reduced instance directly.
    """
    r = _reduced_r(original, reduced)
    exact = original.satisfied_counts(xs)
    predicted = (exact * binomial(original.q - 1, r - 1)
                 + (original.m - exact) * binomial(original.q - 2, r - 2))
    actual = reduced.satisfied_counts(xs)
    return exact, predicted, actual


def verify_reduction(original, reduced, x):
    r = _reduced_r(original, reduced)
    exact, predicted, actual = reduction_table(original, reduced, np.asarray([x]))
    return ReductionReport(int(exact[0]), original.m, int(predicted[0]), int(actual[0]),
                           reduced_size(original.m, original.q, r))

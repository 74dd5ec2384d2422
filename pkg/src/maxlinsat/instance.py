"""max-LINSAT instances, assignment evaluation and the text file format.

An instance over GF(q) has an m x n coefficient matrix ``B`` and, per row,
an acceptance set ``F_i``. Constraint ``i`` holds for ``x`` when
``sum_j B[i][j] * x[j]`` lies in ``F_i``.

File format::

    linsat <q> <n> <m>
    <c_1> ... <c_n> | <f_1> ... <f_k>      (m lines)

Lines starting with ``#`` are comments. Acceptance lists are strictly
increasing with ``1 <= k <= q - 1``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, InstanceSyntaxError, InvariantViolation
from .gf import Field, from_order


@dataclass(frozen=True)
class EvalResult:
    satisfied: int
    m: int
    mask: tuple

    @property
    def ratio(self):
        return Fraction(self.satisfied, self.m)


@dataclass(frozen=True, eq=True)
class Instance:
    field: Field
    coefficients: tuple
    accept: tuple

    def __post_init__(self):
        q = self.field.q
        coefficients = tuple(tuple(int(c) for c in row) for row in self.coefficients)
        accept = tuple(tuple(int(f) for f in fs) for fs in self.accept)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "accept", accept)
        if not coefficients:
            raise InvariantViolation("an instance needs at least one constraint")
        if len(accept) != len(coefficients):
            raise DimensionMismatch(
                f"{len(coefficients)} coefficient rows but {len(accept)} acceptance sets")
        n = len(coefficients[0])
        if n < 1:
            raise InvariantViolation("an instance needs at least one variable")
        for i, (row, fs) in enumerate(zip(coefficients, accept)):
            if len(row) != n:
                raise DimensionMismatch(f"row {i} has {len(row)} coefficients, expected {n}")
            if any(not 0 <= c < q for c in row):
                raise InvariantViolation(f"row {i} has a coefficient outside GF({q})", i)
            if not 1 <= len(fs) <= q - 1:
                raise InvariantViolation(
                    f"acceptance set {i} has size {len(fs)}, need 1..{q - 1}", i)
            if any(not 0 <= f < q for f in fs):
                raise InvariantViolation(f"acceptance set {i} has an element outside GF({q})", i)
            if any(a >= b for a, b in zip(fs, fs[1:])):
                raise InvariantViolation(f"acceptance set {i} is not strictly increasing", i)

    @classmethod
    def build(cls, q, coefficients, accept):
        """Convenience constructor taking the field order; acceptance sets are sorted."""
        return cls(from_order(q), coefficients, tuple(tuple(sorted(set(fs))) for fs in accept))

    @property
    def q(self):
        return self.field.q

    @property
    def m(self):
        return len(self.coefficients)

    @property
    def n(self):
        return len(self.coefficients[0])

    @cached_property
    def matrix(self):
        return np.array(self.coefficients, dtype=np.int64)

    @cached_property
    def accept_mask(self):
        mask = np.zeros((self.m, self.q), dtype=bool)
        for i, fs in enumerate(self.accept):
            mask[i, list(fs)] = True
        return mask

    @cached_property
    def accept_sizes(self):
        return np.array([len(fs) for fs in self.accept], dtype=np.int64)

    def linear_forms(self, xs):
        """Values of every row's linear form for a batch of assignments.

        ``xs`` has shape (N, n); the result has shape (N, m).
        """
        xs = np.asarray(xs, dtype=np.int64)
        if xs.ndim != 2 or xs.shape[1] != self.n:
            raise DimensionMismatch(f"assignments must have shape (N, {self.n}), got {xs.shape}")
        if xs.size and (xs.min() < 0 or xs.max() >= self.q):
            raise DimensionMismatch(f"assignment entries must lie in [0, {self.q})")
        F = self.field
        B = self.matrix
        acc = np.zeros((xs.shape[0], self.m), dtype=np.int64)
        for j in range(self.n):
            acc = F.vadd(acc, F.vmul(B[None, :, j], xs[:, j, None]))
        return acc

    def satisfied_matrix(self, xs):
        """Boolean (N, m) array: assignment k satisfies constraint i."""
        forms = self.linear_forms(xs)
        return self.accept_mask[np.arange(self.m)[None, :], forms]

    def satisfied_counts(self, xs):
        return self.satisfied_matrix(xs).sum(axis=1)


def evaluate(inst, x):
    """Evaluate a single assignment against every constraint."""
    x = tuple(x)
    if len(x) != inst.n:
        raise DimensionMismatch(f"assignment has length {len(x)}, instance has n={inst.n}")
    mask = inst.satisfied_matrix([x])[0]
    return EvalResult(int(mask.sum()), inst.m, tuple(bool(v) for v in mask))


def uniform_acceptance_size(inst):
    """The common size r of all acceptance sets, or None if they differ."""
    sizes = {len(fs) for fs in inst.accept}
    return sizes.pop() if len(sizes) == 1 else None


def baseline_ratio(inst):
    """Expected satisfied fraction of a uniformly random assignment, (1/m) sum |F_i|/q.

    Assumes no row is identically zero; for uniform-r instances this is r/q.
    """
    return Fraction(sum(len(fs) for fs in inst.accept), inst.m * inst.q)


# -- text format -------------------------------------------------------------


def _ints(tokens, lineno, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceSyntaxError(f"non-integer {what}", lineno) from None


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse(text):
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise InstanceSyntaxError("empty input", 1) from None
    parts = header.split()
    if len(parts) != 4 or parts[0] != "linsat":
        raise InstanceSyntaxError("expected header 'linsat <q> <n> <m>'", lineno)
    q, n, m = _ints(parts[1:], lineno, "header field")
    if n < 1 or m < 1:
        raise InstanceSyntaxError("n and m must be positive", lineno)
    try:
        field = from_order(q)
    except ValueError as exc:
        raise InstanceSyntaxError(str(exc), lineno) from None

    coefficients, accept = [], []
    for lineno, line in lines:
        if len(coefficients) == m:
            raise InstanceSyntaxError(f"more than m={m} constraint lines", lineno)
        if line.count("|") != 1:
            raise InstanceSyntaxError("constraint line needs exactly one '|'", lineno)
        left, right = line.split("|")
        row = _ints(left.split(), lineno, "coefficient")
        fs = _ints(right.split(), lineno, "acceptance element")
        if len(row) != n:
            raise InstanceSyntaxError(f"expected {n} coefficients, got {len(row)}", lineno)
        if any(not 0 <= v < q for v in row + fs):
            raise InstanceSyntaxError(f"value outside [0, {q - 1}]", lineno)
        if any(a >= b for a, b in zip(fs, fs[1:])):
            raise InstanceSyntaxError("acceptance list must be strictly increasing", lineno)
        if not 1 <= len(fs) <= q - 1:
            raise InvariantViolation(
                f"constraint {len(coefficients)} (line {lineno}): acceptance set of size "
                f"{len(fs)} is not a nonempty proper subset of GF({q})", len(coefficients))
        coefficients.append(row)
        accept.append(fs)
    if len(coefficients) != m:
        raise InstanceSyntaxError(f"expected {m} constraint lines, got {len(coefficients)}")
    return Instance(field, coefficients, accept)


def serialize(inst):
    out = [f"linsat {inst.q} {inst.n} {inst.m}"]
    for row, fs in zip(inst.coefficients, inst.accept):
        out.append(" ".join(map(str, row)) + " | " + " ".join(map(str, fs)))
    return "\n".join(out) + "\n"


def parse_assignment(text, inst=None):
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise InstanceSyntaxError("an assignment is a single line of integers")
    lineno, line = lines[0]
    x = tuple(_ints(line.split(), lineno, "assignment entry"))
    if inst is not None:
        if len(x) != inst.n:
            raise DimensionMismatch(f"assignment has length {len(x)}, instance has n={inst.n}")
        if any(not 0 <= v < inst.q for v in x):
            raise InstanceSyntaxError(f"assignment entry outside [0, {inst.q - 1}]", lineno)
    return x


def serialize_assignment(x):
    return " ".join(str(int(v)) for v in x) + "\n"


def assignment_block(q, n, start, stop):
    """Assignments with lexicographic ranks ``start..stop-1`` as an (N, n) array.

    Rank order treats ``x_1`` as the most significant base-q digit.
    """
    ranks = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(ranks), n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = ranks % q
        ranks //= q
    return out


def all_assignments(q, n):
    return assignment_block(q, n, 0, q**n)

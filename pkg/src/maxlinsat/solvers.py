"""Classical algorithms for max-LINSAT.

``brute_force``
    Exhaustive search; defines OPT. Ties go to the lexicographically
    smallest assignment.
``random_assignment``
    One uniform assignment from the seeded stream.
``conditional_expectations``
    Fixes ``x_1 .. x_n`` in order. For each candidate value it computes the
    exact expected number of satisfied constraints when the remaining
    variables are uniform: a row that still has a nonzero coefficient on an
    unfixed variable is uniform over the field and contributes ``|F_i|/q``;
    a fully determined row contributes 0 or 1. Scores are kept as integers
    scaled by ``q``. Ties go to the smallest value.
``prange_isd``
    Information-set decoding: solve an n x n subsystem with targets drawn
    from the chosen acceptance sets, keep the best candidate over the
    iterations.
"""

import time
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, TooLarge
from .instance import EvalResult, assignment_block, evaluate
from .rng import stream

DEFAULT_ENUMERATION_CAP = 10**7
_BLOCK = 1 << 15


@dataclass(frozen=True)
class SolveResult:
    assignment: tuple
    eval: EvalResult
    algorithm: str
    iterations: int = 0
    seed: int = None
    wall_time: float = 0.0


def _result(inst, x, algorithm, start, **kw):
    x = tuple(int(v) for v in x)
    return SolveResult(x, evaluate(inst, x), algorithm,
                       wall_time=time.perf_counter() - start, **kw)


# -- linear systems ----------------------------------------------------------


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of Gaussian elimination on ``A x = b``.

    ``status`` is ``"unique"``, ``"parametric"`` or ``"inconsistent"``. For
    consistent systems ``particular`` solves the system with every free
    variable at zero and ``basis`` spans the null space.
    """

    status: str
    rank: int
    pivots: tuple
    free: tuple
    particular: tuple = None
    basis: tuple = ()

    def solution(self, field, free_values):
        """The solution with the free variables set to ``free_values``."""
        x = list(self.particular)
        for t, vec in zip(free_values, self.basis):
            if t:
                x = [field.add(a, field.mul(t, v)) for a, v in zip(x, vec)]
        return tuple(x)


def solve_linear_system(field, A, b):
    """Row-reduce the k x n system ``A x = b`` over ``field``.

    Square systems are the common case, but any shape is accepted.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k, n = A.shape
    M = np.concatenate([A, b.reshape(k, 1)], axis=1)
    pivots = []
    row = 0
    for col in range(n):
        if row == k:
            break
        nz = np.flatnonzero(M[row:, col])
        if not len(nz):
            continue
        r = row + int(nz[0])
        if r != row:
            M[[row, r]] = M[[r, row]]
        M[row] = field.vmul(field.inv(int(M[row, col])), M[row])
        factors = M[:, col].copy()
        factors[row] = 0
        M = field.vsub(M, field.vmul(factors[:, None], M[row][None, :]))
        pivots.append(col)
        row += 1
    rank = len(pivots)
    free = tuple(c for c in range(n) if c not in pivots)
    if rank < k and M[rank:, n].any():
        return LinearSolution("inconsistent", rank, tuple(pivots), free)
    particular = [0] * n
    for i, c in enumerate(pivots):
        particular[c] = int(M[i, n])
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = field.neg(int(M[i, f]))
        basis.append(tuple(vec))
    status = "unique" if not free else "parametric"
    return LinearSolution(status, rank, tuple(pivots), free, tuple(particular), tuple(basis))


# -- solvers -------------------------------------------------------------------


def brute_force(inst, cap=DEFAULT_ENUMERATION_CAP):
    start = time.perf_counter()
    total = inst.q**inst.n
    if total > cap:
        raise TooLarge(f"q^n = {total} assignments exceeds the enumeration cap {cap}")
    best_count, best_rank = -1, 0
    for lo in range(0, total, _BLOCK):
        hi = min(total, lo + _BLOCK)
        counts = inst.satisfied_counts(assignment_block(inst.q, inst.n, lo, hi))
        k = int(np.argmax(counts))
        if counts[k] > best_count:
            best_count, best_rank = int(counts[k]), lo + k
            if best_count == inst.m:
                break
    x = assignment_block(inst.q, inst.n, best_rank, best_rank + 1)[0]
    return _result(inst, x, "brute", start)


def random_assignment(inst, seed):
    start = time.perf_counter()
    x = stream(seed, "random-assignment").integers(0, inst.q, size=inst.n)
    return _result(inst, x, "random", start, seed=seed)


def conditional_expectations(inst):
    start = time.perf_counter()
    F = inst.field
    q, m, n = inst.q, inst.m, inst.n
    B = inst.matrix
    nonzero = B != 0
    # index of the last variable each row depends on, -1 for a zero row
    last = np.where(nonzero.any(axis=1), n - 1 - np.argmax(nonzero[:, ::-1], axis=1), -1)
    sizes = inst.accept_sizes
    rows = np.arange(m)
    values = np.arange(q)
    partial = np.zeros(m, dtype=np.int64)
    x = []
    for j in range(n):
        candidates = F.vadd(partial[None, :], F.vmul(B[None, :, j], values[:, None]))
        determined = last <= j
        hits = inst.accept_mask[rows[None, :], candidates]
        scores = np.where(determined[None, :], q * hits, sizes[None, :]).sum(axis=1)
        v = int(np.argmax(scores))
        x.append(v)
        partial = candidates[v]
    return _result(inst, x, "ce", start)


def prange_isd(inst, seed, iterations=1):
    """Best of ``iterations`` information-set candidates.

    Iteration ``t`` draws everything from stream ``(seed, "prange", t)``:
    n distinct rows, one target per row from its acceptance set, and values
    for free variables when the subsystem is singular. An inconsistent
    subsystem gets one fresh draw of targets; if that also fails the
    iteration uses a uniform assignment. When ``n > m`` all m rows are used
    and the surplus variables are free.
    """
    if iterations < 1:
        raise ConfigError("iterations must be >= 1")
    start = time.perf_counter()
    F = inst.field
    q, m, n = inst.q, inst.m, inst.n
    B = inst.matrix
    best_x, best_s = None, -1
    for t in range(iterations):
        rng = stream(seed, "prange", t)
        rows = rng.choice(m, size=n, replace=False) if n <= m else np.arange(m)
        A = B[rows]
        x = None
        for _ in range(2):
            targets = [inst.accept[i][rng.integers(len(inst.accept[i]))] for i in rows]
            sol = solve_linear_system(F, A, targets)
            if sol.status != "inconsistent":
                free_values = rng.integers(0, q, size=len(sol.free))
                x = sol.solution(F, [int(v) for v in free_values])
                break
        if x is None:
            x = tuple(int(v) for v in rng.integers(0, q, size=n))
        s = int(inst.satisfied_counts([x])[0])
        if s > best_s:
            best_x, best_s = x, s
    return _result(inst, best_x, "prange", start, seed=seed, iterations=iterations)


ALGORITHMS = ("brute", "random", "ce", "prange")


def solve(inst, algo, seed=0, iterations=1, cap=DEFAULT_ENUMERATION_CAP):
    if algo == "brute":
        return brute_force(inst, cap=cap)
    if algo == "random":
        return random_assignment(inst, seed)
    if algo == "ce":
        return conditional_expectations(inst)
    if algo == "prange":
        return prange_isd(inst, seed, iterations)
    raise ConfigError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")

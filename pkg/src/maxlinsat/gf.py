"""Finite fields GF(p^tau) with a canonical integer encoding.

An element is an ``int`` in ``[0, q)``. Its base-p digits, least significant
first, are the coefficients of a polynomial over GF(p) reduced modulo the
field's modulus. For prime fields the element is just the residue.

The modulus for ``tau > 1`` is the lexicographically smallest monic
irreducible polynomial of degree ``tau``, comparing coefficients from the
constant term upwards. ``Field.from_order`` is cached, so equal orders give
the same object.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import NotAPrimePower, RangeError

MAX_ORDER = 1 << 16
# fields up to this order get full q x q addition/multiplication tables
TABLE_LIMIT = 256


def prime_power(q):
    """Return ``(p, tau)`` with ``q == p**tau``, or raise NotAPrimePower."""
    if q < 2:
        raise RangeError(f"field order must be >= 2, got {q}")
    p = None
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    if p is None:
        return q, 1
    tau = 0
    rest = q
    while rest % p == 0:
        rest //= p
        tau += 1
    if rest != 1:
        raise NotAPrimePower(f"{q} has at least two distinct prime factors")
    return p, tau


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mod(a, mod, p):
    """Remainder of ``a`` modulo the monic polynomial ``mod`` (coefficient lists, low first)."""
    a = list(a)
    deg = len(mod) - 1
    for top in range(len(a) - 1, deg - 1, -1):
        c = a[top] % p
        if c:
            shift = top - deg
            for k in range(deg + 1):
                a[shift + k] = (a[shift + k] - c * mod[k]) % p
    return [c % p for c in a[:deg]] + [0] * max(0, deg - len(a))


def _is_irreducible(mod, p):
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(mod) - 1
    if deg == 1:
        return True
    if mod[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(mod, divisor, p)):
                return False
    return True


def canonical_modulus(p, tau):
    """Smallest monic irreducible polynomial of degree ``tau`` over GF(p).

    Returned as the full coefficient tuple ``(c_0, ..., c_{tau-1}, 1)``.
    Candidates are scanned with ``c_0`` as the most significant key.
    """
    for low in product(range(p), repeat=tau):
        mod = low + (1,)
        if _is_irreducible(mod, p):
            return mod
    raise AssertionError(f"no irreducible polynomial of degree {tau} over GF({p})")


class Field:
    """The finite field of order ``q``. Build instances with :meth:`from_order`."""

    def __init__(self, p, tau, modulus):
        self.p = p
        self.tau = tau
        self.q = p**tau
        self.modulus = modulus
        self._powers = [p**k for k in range(tau)]
        if p == 2 and tau > 1:
            self._mod_bits = sum(c << k for k, c in enumerate(modulus))
        self._neg = [self._neg_slow(a) for a in range(self.q)]
        self._build_log_tables()
        self.neg_table = np.array(self._neg, dtype=np.int64)
        if self.q <= TABLE_LIMIT:
            idx = np.arange(self.q, dtype=np.int64)
            self.add_table = self._vadd_slow(idx[:, None], idx[None, :])
            self.mul_table = self._vmul_log(idx[:, None], idx[None, :])
            self._add_rows = self.add_table.tolist()
            self._mul_rows = self.mul_table.tolist()
        else:
            self.add_table = self.mul_table = None

    @staticmethod
    @lru_cache(maxsize=None)
    def from_order(q):
        if q > MAX_ORDER:
            raise RangeError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        p, tau = prime_power(q)
        modulus = canonical_modulus(p, tau) if tau > 1 else None
        return Field(p, tau, modulus)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __reduce__(self):
        return (Field.from_order, (self.q,))

    # -- encoding -------------------------------------------------------

    def digits(self, a):
        """Polynomial-basis coefficients of ``a``, constant term first."""
        return [(a // w) % self.p for w in self._powers]

    def from_digits(self, coeffs):
        return sum((c % self.p) * w for c, w in zip(coeffs, self._powers))

    def elements(self):
        return list(range(self.q))

    def is_element(self, a):
        return isinstance(a, (int, np.integer)) and not isinstance(a, bool) and 0 <= a < self.q

    # -- reference arithmetic (used to build the tables) ------------------

    def _neg_slow(self, a):
        return self.from_digits([-c for c in self.digits(a)])

    def _mul_slow(self, a, b):
        if self.tau == 1:
            return a * b % self.p
        if self.p == 2:
            prod = 0
            while b:
                if b & 1:
                    prod ^= a
                a <<= 1
                b >>= 1
            for top in range(prod.bit_length() - 1, self.tau - 1, -1):
                if prod >> top & 1:
                    prod ^= self._mod_bits << (top - self.tau)
            return prod
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.tau - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_poly_mod(prod, self.modulus, self.p))

    def _pow_slow(self, a, k):
        result = 1
        while k:
            if k & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            k >>= 1
        return result

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        for g in range(1, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                break
        self.generator = g
        exp = [1] * (2 * order)
        log = [0] * q
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        exp[order:] = exp[:order]
        self._exp = exp
        self._log = log
        self.exp_table = np.array(exp, dtype=np.int64)
        self.log_table = np.array(log, dtype=np.int64)

    def _vadd_slow(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.tau == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(a.shape, dtype=np.int64)
        for w in self._powers:
            out += ((a // w + b // w) % self.p) * w
        return out

    def _vmul_log(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        prod = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a, b):
        if self.tau == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.add_table is not None:
            return self._add_rows[a][b]
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % (self.q - 1)]

    def dot(self, coeffs, xs):
        acc = 0
        for c, x in zip(coeffs, xs):
            if c and x:
                acc = self.add(acc, self.mul(c, x))
        return acc

    # -- array arithmetic (numpy, broadcasting) ----------------------------

    def vadd(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._vadd_slow(a, b)

    def vneg(self, a):
        return self.neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.neg_table[b])

    def vmul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self._vmul_log(a, b)


def from_order(q):
    """Canonical field of order ``q``; raises NotAPrimePower for composite non-prime-powers."""
    return Field.from_order(q)

"""Exact arithmetic in the finite field GF(p^k).

Elements are integer indices in [0, q): the index sum(a_i * p**i) encodes
the residue of the polynomial sum(a_i * x**i) in F_p[x]/(m(x)), where m is
a deterministic monic irreducible modulus of degree k.  Index 0 is the
additive identity and index 1 the multiplicative identity in every field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

DEFAULT_Q_LIMIT = 512
TABLE_LIMIT = 256


class FieldError(ValueError):
    """Invalid field parameters or operands."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Polynomials over F_p: tuples of coefficients, constant term first.
# ---------------------------------------------------------------------------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim(a)


def _has_factor(m, p, deg):
    """True if some monic polynomial of the given degree divides m."""
    for tail in itertools.product(range(p), repeat=deg):
        f = tuple(tail) + (1,)
        if not _poly_mod(m, f, p):
            return True
    return False


def is_irreducible(m, p) -> bool:
    """Trial division against all monic polynomials of degree <= deg(m)/2."""
    m = _poly_trim(m)
    deg = len(m) - 1
    if deg < 1:
        return False
    if m[0] == 0:
        return deg == 1
    return not any(_has_factor(m, p, d) for d in range(1, deg // 2 + 1))


def smallest_irreducible(p: int, k: int):
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficient tuples are compared from the constant term upward, so the
    result is independent of platform and run.
    """
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        m = tuple(tail) + (1,)
        if is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------
# The field
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DetSubgroup:
    """A subgroup of the unit group F_q^*, used as a determinant group."""
    d: int
    elements: frozenset


class Field:
    """GF(q) for q = p**k, with scalar indices in [0, q).

    Immutable after construction; all operations are pure, so instances are
    freely shareable across threads.
    """

    def __init__(self, p: int, k: int = 1, *, q_limit: int = DEFAULT_Q_LIMIT):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if k < 1:
            raise FieldError(f"k = {k} must be positive")
        q = p ** k
        if q > q_limit:
            raise FieldError(f"q = {q} exceeds the limit {q_limit}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = smallest_irreducible(p, k)
        self._add_table = None
        self._mul_table = None
        self._inv_table = None
        if q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"Field(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- encoding ----------------------------------------------------------

    def _decode(self, a):
        p = self.p
        digits = []
        for _ in range(self.k):
            digits.append(a % p)
            a //= p
        return _poly_trim(digits)

    def _encode(self, poly):
        v = 0
        for c in reversed(poly):
            v = v * self.p + c
        return v

    # -- arithmetic --------------------------------------------------------

    def _raw_add(self, a, b):
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        scale = 1
        for _ in range(self.k):
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _raw_mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mul(self._decode(a), self._decode(b), self.p)
        return self._encode(_poly_mod(prod, self.modulus, self.p))

    def _build_tables(self):
        q = self.q
        self._add_table = [
            [self._raw_add(a, b) for b in range(q)] for a in range(q)
        ]
        self._mul_table = [
            [self._raw_mul(a, b) for b in range(q)] for a in range(q)
        ]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul_table[a]
            inv[a] = row.index(1)
        self._inv_table = inv

    def add(self, a, b):
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._raw_add(a, b)

    def neg(self, a):
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = 0
        scale = 1
        for _ in range(self.k):
            out += ((-a) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._raw_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise FieldError("0 has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- multiplicative structure -----------------------------------------

    def all_scalars(self):
        return list(range(self.q))

    def element_order(self, a):
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        n = 1
        x = a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def is_primitive(self, a) -> bool:
        return a != 0 and self.element_order(a) == self.q - 1

    def primitive_element(self):
        for a in range(1, self.q):
            if self.is_primitive(a):
                return a
        raise FieldError("no primitive element found")  # unreachable

    def unit_subgroup(self, d: int) -> DetSubgroup:
        """The unique subgroup of F_q^* of order d."""
        if d < 1 or (self.q - 1) % d != 0:
            raise FieldError(f"d = {d} does not divide q - 1 = {self.q - 1}")
        g = self.primitive_element()
        h = self.pow(g, (self.q - 1) // d)
        elements = set()
        x = 1
        for _ in range(d):
            elements.add(x)
            x = self.mul(x, h)
        return DetSubgroup(d, frozenset(elements))


def divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]

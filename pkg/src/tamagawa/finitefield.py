"""Small finite fields F_q, q = p^e, for point counting and brute-force
order checks.

Prime fields are ints mod p.  Extension fields are coefficient tuples
modulo a pinned irreducible polynomial, so representations (and hence
every downstream enumeration) are reproducible.  Fields not in the pinned
table fall back to the lexicographically smallest monic irreducible.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import InputError

__all__ = ["FiniteField", "finite_field", "factor_prime_power", "is_prime_power"]

# (p, e) -> monic irreducible modulus, coefficients low -> high, length e+1
_PINNED_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (7, 2): (1, 0, 1),
    (11, 2): (1, 0, 1),
    (13, 2): (2, 0, 1),
}


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """(p, e) with q = p^e, or None; trial factorization, desk scale."""
    if q < 2 or q > 10**6:
        return None
    p = None
    m = q
    for cand in range(2, q + 1):
        if cand * cand > m:
            p = m
            break
        if m % cand == 0:
            p = cand
            break
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return (p, e) if m == 1 else None


def is_prime_power(q: int) -> bool:
    return factor_prime_power(q) is not None


def _poly_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility over F_p by trial division by monic polynomials of
    degree at most deg/2."""
    deg = len(coeffs) - 1

    def poly_mod(num, den):
        num = list(num)
        dd = len(den) - 1
        inv_lead = pow(den[-1], p - 2, p)
        for i in range(len(num) - 1, dd - 1, -1):
            c = num[i] % p
            if c:
                f = (c * inv_lead) % p
                for k in range(dd + 1):
                    num[i - dd + k] = (num[i - dd + k] - f * den[k]) % p
        return num

    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            if not any(x % p for x in poly_mod(coeffs, den)):
                return False
    return True


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    if (p, e) in _PINNED_MODULI:
        return _PINNED_MODULI[(p, e)]
    for tail in itertools.product(range(p), repeat=e):
        coeffs = tuple(tail) + (1,)
        if _poly_irreducible(coeffs, p):
            return coeffs
    raise InputError("no irreducible polynomial found for (%d, %d)" % (p, e))


class FiniteField:
    """Arithmetic in F_q.  Elements are ints (prime q) or coefficient
    tuples (prime-power q); both are hashable and comparable."""

    def __init__(self, q: int):
        pe = factor_prime_power(q)
        if pe is None:
            raise InputError("%d is not a prime power (or exceeds desk scale)" % q)
        self.q = q
        self.p, self.e = pe
        if self.e == 1:
            self.modulus = None
            self.zero = 0
            self.one = 1
        else:
            self.modulus = _find_modulus(self.p, self.e)
            self.zero = (0,) * self.e
            self.one = (1,) + (0,) * (self.e - 1)

    @property
    def characteristic(self) -> int:
        return self.p

    def element(self, value: int):
        """Embed an integer through the prime subfield."""
        if self.e == 1:
            return value % self.p
        return (value % self.p,) + (0,) * (self.e - 1)

    def elements(self):
        if self.e == 1:
            return iter(range(self.p))
        return itertools.product(range(self.p), repeat=self.e)

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        p = self.p
        if self.e == 1:
            return (a * b) % p
        e = self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        mod = self.modulus
        for d in range(2 * e - 2, e - 1, -1):
            c = prod[d] % p
            if c:
                for k in range(e + 1):
                    prod[d - e + k] -= c * mod[k]
            prod[d] = 0
        return tuple(x % p for x in prod[:e])

    def pow(self, a, n: int):
        if n < 0:
            raise InputError("negative exponent; use inv")
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise InputError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)

"""Finite fields GF(p^k).

Elements are plain ints in ``[0, p**k)``: the base-p digits of the value,
least significant first, are the coefficients c_0 + c_1 x + ... of a
polynomial reduced modulo the field's defining polynomial.  Zero is 0 and
one is 1 in every field.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from math import gcd

from .errors import NoSuchOrder, NotPrime, SizeExceeded, ZeroElement

DEFAULT_SIZE_BOUND = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, increasing."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k, or None if q is not a prime power."""
    factors = prime_factors(q) if q >= 2 else []
    if len(factors) != 1:
        return None
    p, k = factors[0], 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# -- polynomials over GF(p) as coefficient lists, lowest degree first ----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a = _trim(list(a))
    quot = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return _trim(quot), a


def _is_irreducible(poly, p):
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


class Field:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Immutable after construction.  ``modulus`` lists all k+1 coefficients
    (c_0, ..., c_{k-1}, 1); for k == 1 it is the placeholder (0, 1) and
    arithmetic is plain integers mod p.
    """

    def __init__(self, p: int, k: int = 1, size_bound: int = DEFAULT_SIZE_BOUND):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        if p**k > size_bound:
            raise SizeExceeded(f"field of order {p}^{k} exceeds bound {size_bound}")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus = (0, 1)
        else:
            for low in itertools.product(range(p), repeat=k):
                cand = list(low) + [1]
                if _is_irreducible(cand, p):
                    self.modulus = tuple(cand)
                    break
        self.primitive = self._find_primitive()

    def __repr__(self):
        return f"Field(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- encoding ---------------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_digits(self, digits) -> int:
        v = 0
        for c in reversed(list(digits)):
            v = v * self.p + c % self.p
        return v

    # -- arithmetic -------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _poly_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        return self.from_digits(_poly_mod(prod, self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        log = self._log
        return self._exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no inverse")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        # extended Euclid on polynomials
        p = self.p
        r0, r1 = list(self.modulus), _trim(self.digits(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            qs = _poly_mul(quot, s1, p)
            n = max(len(s0), len(qs))
            s0, s1 = s1, _trim([((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p
                                for i in range(n)])
        c = pow(r0[0], p - 2, p)
        return self.from_digits(_poly_mod([x * c % p for x in s0], self.modulus, p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        return self._exp[self._log[a] * e % (self.q - 1)]

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = prime_factors(n)
        powf = (lambda a, e: pow(a, e, self.p)) if self.k == 1 else self._pow_slow
        for g in range(1, self.q):
            if all(powf(g, n // f) != 1 for f in factors):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    @cached_property
    def _exp(self) -> list[int]:
        exp = [1] * (self.q - 1)
        for i in range(1, self.q - 1):
            exp[i] = self._mul_poly(exp[i - 1], self.primitive)
        return exp

    @cached_property
    def _log(self) -> list[int]:
        log = [0] * self.q
        for i, v in enumerate(self._exp):
            log[v] = i
        return log

    def elements(self) -> range:
        return range(self.q)

    def tables(self) -> tuple[list[int], list[int]]:
        """Flat q*q addition and multiplication tables, index a*q + b."""
        q = self.q
        addt = [self.add(a, b) for a in range(q) for b in range(q)]
        mult = [self.mul(a, b) for a in range(q) for b in range(q)]
        return addt, mult

    def to_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.digits(a)):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}{'' if i == 0 else '*' + mono}")
        return "+".join(reversed(terms)) or "0"


def field_make(p: int, k: int = 1, size_bound: int = DEFAULT_SIZE_BOUND) -> Field:
    return Field(p, k, size_bound)


def elem_order(f: Field, a: int) -> int:
    """Multiplicative order of a nonzero element."""
    if a % f.q == 0:
        raise ZeroElement("zero has no multiplicative order")
    order = f.q - 1
    for ell in prime_factors(order):
        while order % ell == 0 and f.pow(a, order // ell) == 1:
            order //= ell
    return order


def element_of_order(f: Field, m: int) -> int:
    """Smallest-encoded element of exact multiplicative order m."""
    if m < 1 or (f.q - 1) % m:
        raise NoSuchOrder(f"no element of order {m} in GF({f.q})")
    step = (f.q - 1) // m
    return min(f.pow(f.primitive, j * step) for j in range(1, m + 1) if gcd(j, m) == 1)

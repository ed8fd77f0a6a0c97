"""Arithmetic in GF(p^k) with elements stored as polynomial residues.

A residue c_0 + c_1 x + ... + c_{k-1} x^{k-1} is held as the tuple
(c_0, ..., c_{k-1}).  Elements of a field are listed in lexicographic
order of these tuples, so zero always comes first.  The integer position
of an element in that list is its *code*; :func:`tables` gives code-level
addition/multiplication tables used by the geometry builders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

DEFAULT_MAX_Q = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not is_prime(p):
        return None
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


# -- polynomials over Z_p, coefficient lists low degree first ---------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of a modulo b over Z_p (b nonzero)."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _monic(p: int, k: int):
    """All monic degree-k polynomials over Z_p in lexicographic order."""
    for low in itertools.product(range(p), repeat=k):
        yield list(low) + [1]


def is_irreducible(poly, p: int) -> bool:
    poly = _trim(poly)
    k = len(poly) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic(p, d):
            if not poly_mod(poly, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over Z_p.

    Coefficients are compared constant term first; the returned tuple has
    length k + 1 and ends with the leading 1.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("degree must be at least 1")
    for poly in _monic(p, k):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- fields and elements ----------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over Z_{self.p}")
        object.__setattr__(self, "q", self.p ** self.k)

    @classmethod
    def of(cls, q: int, max_q: int = DEFAULT_MAX_Q) -> "FieldSpec":
        """The canonical field of order q (smallest irreducible modulus)."""
        return _field_of(q, max_q)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def element(self, coeffs) -> "FieldElement":
        coeffs = tuple(int(c) % self.p for c in coeffs)
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        if len(coeffs) != self.k:
            raise FieldError("too many coefficients")
        return FieldElement(self, coeffs)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def _field_of(q, max_q):
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    if q > max_q:
        raise FieldError(f"q = {q} exceeds the configured cap {max_q}")
    p, k = pk
    return FieldSpec(p, k, find_irreducible(p, k))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.k or any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise FieldError(f"bad coefficients {self.coeffs} for {self.spec}")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        p, k = self.spec.p, self.spec.k
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + a * b) % p
        rem = poly_mod(prod, self.spec.modulus, p)
        return FieldElement(self.spec, tuple(rem) + (0,) * (k - len(rem)))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.spec.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"zero has no inverse in {self.spec}")
        # a^(q-2) = a^-1 in a field of order q
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def code(self) -> int:
        """Position of this element in :func:`elements` order."""
        c = 0
        for a in self.coeffs:
            c = c * self.spec.p + a
        return c

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = str(a) if (a != 1 or i == 0) else ""
                terms.append(coef + mono)
        return " + ".join(reversed(terms)) or "0"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def elements(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(spec, c) for c in itertools.product(range(spec.p), repeat=spec.k)]


@dataclass(frozen=True)
class FieldTables:
    """Code-level tables: ``add[a][b]`` is the code of element a + element b."""
    spec: FieldSpec
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    inv: tuple[int | None, ...]
    zero: int
    one: int


def primitive_element(spec: FieldSpec) -> FieldElement:
    """Smallest (in element order) generator of the multiplicative group."""
    n = spec.q - 1
    prime_factors = [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]
    for a in elements(spec)[1:]:
        if all(not (a ** (n // d) == spec.one()) for d in prime_factors):
            return a
    raise AssertionError("unreachable: the multiplicative group is cyclic")


@lru_cache(maxsize=None)
def tables(spec: FieldSpec) -> FieldTables:
    q, p = spec.q, spec.p
    g = primitive_element(spec)
    exp = []
    x = spec.one()
    for _ in range(q - 1):
        exp.append(x.code)
        x = x * g
    log = [0] * q
    for i, c in enumerate(exp):
        log[c] = i
    mul_t = [[0] * q]
    for a in range(1, q):
        la = log[a]
        mul_t.append([0] + [exp[(la + log[b]) % (q - 1)] for b in range(1, q)])
    digits = [c.coeffs for c in elements(spec)]
    weights = [p ** (spec.k - 1 - i) for i in range(spec.k)]

    def encode(v):
        return sum(w * d for w, d in zip(weights, v))

    add_t = [[encode([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
    one = spec.one().code
    inv_t = (None,) + tuple(exp[(-log[a]) % (q - 1)] for a in range(1, q))
    neg_t = tuple(encode([-x % p for x in d]) for d in digits)
    return FieldTables(
        spec,
        tuple(map(tuple, add_t)),
        tuple(map(tuple, mul_t)),
        neg_t,
        inv_t,
        0,
        one,
    )

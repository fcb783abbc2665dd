"""Exact arithmetic in finite fields GF(p^k).

Elements carry a dual representation: a coefficient tuple over Z_p in the
polynomial basis, and (for nonzero elements) a discrete-log exponent with
respect to the root of a primitive polynomial.  Addition works on
coefficients, multiplication and inversion on exponents, so both are O(k)
after the log tables are built.

The primitive polynomial for each field comes from a fixed built-in table
where available, otherwise from a deterministic lexicographic search.  The
table entries are load-bearing: downstream point labelings depend on the
exact generator, so they must never change.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

MAX_FIELD_ELEMENTS = 1 << 20

# Primitive polynomials, keyed by (p, k), coefficients ascending by degree
# (constant term first, monic leading 1 included).  The (2,5) and (3,3)
# entries fix the canonical point labels of P(4,GF(2)) and P(2,GF(3)) and
# are not interchangeable with other primitive polynomials.
_PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),                    # x + 1
    (2, 2): (1, 1, 1),                 # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),              # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),           # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),        # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),     # x^6 + x + 1
    (3, 1): (1, 1),                    # x + 1, root 2
    (3, 2): (2, 1, 1),                 # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),              # x^3 + 2x + 1
    (5, 1): (3, 1),                    # x + 3, root 2
    (5, 2): (2, 4, 1),                 # x^2 + 4x + 2
    (5, 3): (3, 3, 0, 1),              # x^3 + 3x + 3
    (7, 1): (4, 1),                    # x + 4, root 3
    (7, 2): (3, 1, 1),                 # x^2 + x + 3
    (11, 1): (9, 1),                   # x + 9, root 2
    (13, 1): (11, 1),                  # x + 11, root 2
}


class FieldError(ValueError):
    """Invalid field construction or operation."""


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
    """Distinct prime factors of n by trial division (n is at most 2^20)."""
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


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...],
                  mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Multiply coefficient tuples modulo a monic polynomial, modulo p."""
    k = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for d in range(len(res) - 1, k - 1, -1):
        lead = res[d]
        if lead:
            res[d] = 0
            for i in range(k):
                res[d - k + i] = (res[d - k + i] - lead * mod[i]) % p
    res = res[:k] + [0] * (k - len(res))
    return tuple(res[:k])


def _poly_pow_mod(base: tuple[int, ...], e: int,
                  mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    k = len(mod) - 1
    acc = tuple([1] + [0] * (k - 1))
    cur = base
    while e:
        if e & 1:
            acc = _poly_mul_mod(acc, cur, mod, p)
        cur = _poly_mul_mod(cur, cur, mod, p)
        e >>= 1
    return acc


def _is_primitive(poly: tuple[int, ...], p: int, k: int) -> bool:
    """True iff x has multiplicative order exactly p^k - 1 mod (poly, p).

    Order p^k - 1 forces every nonzero residue to be a power of x, which
    implies the quotient ring is a field, so irreducibility need not be
    tested separately.
    """
    s = p ** k
    one = tuple([1] + [0] * (k - 1))
    if k == 1:
        root = (-poly[0]) % p
        if root == 0:
            return False
        e, v = 1, root
        while v != 1:
            v = v * root % p
            e += 1
            if e > p:
                return False
        return e == p - 1
    x = tuple([0, 1] + [0] * (k - 2))
    if _poly_pow_mod(x, s - 1, poly, p) != one:
        return False
    return all(_poly_pow_mod(x, (s - 1) // q, poly, p) != one
               for q in prime_factors(s - 1))


def _search_primitive_poly(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first primitive monic polynomial of degree k."""
    def candidates() -> Iterator[tuple[int, ...]]:
        for idx in range(p ** k):
            coeffs = []
            v = idx
            for _ in range(k):
                coeffs.append(v % p)
                v //= p
            if coeffs[0] == 0:
                continue  # constant 0 means x divides the polynomial
            yield tuple(coeffs) + (1,)

    for poly in candidates():
        if _is_primitive(poly, p, k):
            return poly
    raise FieldError(f"no primitive polynomial of degree {k} over GF({p}) found")


@dataclass(frozen=True)
class FieldSpec:
    """A concrete construction of GF(p^k) with a pinned primitive polynomial."""

    p: int
    k: int
    prim_poly: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.k

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        if self.order > MAX_FIELD_ELEMENTS:
            raise FieldError(f"field order {self.order} exceeds the configured "
                             f"bound {MAX_FIELD_ELEMENTS}")
        if len(self.prim_poly) != self.k + 1 or self.prim_poly[-1] != 1:
            raise FieldError("prim_poly must be monic of degree k")
        if not _is_primitive(self.prim_poly, self.p, self.k):
            raise FieldError(f"{self.prim_poly} is not primitive over GF({self.p})")

    # -- tables ---------------------------------------------------------

    @property
    def _tables(self) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
        return _build_tables(self.p, self.k, self.prim_poly)

    @property
    def exp_table(self) -> list[tuple[int, ...]]:
        """exp_table[e] = coefficients of generator**e, e in [0, order-1)."""
        return self._tables[0]

    @property
    def log_table(self) -> dict[tuple[int, ...], int]:
        return self._tables[1]

    # -- element constructors -------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        c = tuple(int(v) % self.p for v in coeffs)
        if len(c) != self.k:
            raise FieldError(f"expected {self.k} coefficients, got {len(c)}")
        return FieldElement(self, c)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return self.from_exp(0)

    def generator(self) -> "FieldElement":
        return self.from_exp(1) if self.order > 2 else self.one()

    def from_exp(self, e: int) -> "FieldElement":
        return FieldElement(self, self.exp_table[e % (self.order - 1)])


@lru_cache(maxsize=None)
def _build_tables(p: int, k: int, prim_poly: tuple[int, ...]):
    s = p ** k
    exp: list[tuple[int, ...]] = []
    x = tuple([0, 1] + [0] * (k - 2)) if k >= 2 else ((-prim_poly[0]) % p,)
    v = tuple([1] + [0] * (k - 1))
    for _ in range(s - 1):
        exp.append(v)
        v = _poly_mul_mod(v, x, prim_poly, p) if k >= 2 else ((v[0] * x[0]) % p,)
    log = {c: e for e, c in enumerate(exp)}
    if len(log) != s - 1:
        raise FieldError("generator powers are not distinct; polynomial not primitive")
    return exp, log


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k) in the polynomial basis."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def exp(self) -> int | None:
        """Discrete-log index of the element, or None for zero."""
        if self.is_zero():
            return None
        return self.spec.log_table[self.coeffs]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check_same(self, other: "FieldElement") -> None:
        if other.spec != self.spec:
            raise FieldError("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check_same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p
                                             for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check_same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p
                                             for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check_same(other)
        if self.is_zero() or other.is_zero():
            return self.spec.zero()
        n = self.spec.order - 1
        return self.spec.from_exp((self.exp + other.exp) % n)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldError("zero has no multiplicative inverse")
        n = self.spec.order - 1
        return self.spec.from_exp((-self.exp) % n)

    def __pow__(self, e: int) -> "FieldElement":
        if self.is_zero():
            if e <= 0:
                raise FieldError("0**e undefined for e <= 0")
            return self
        n = self.spec.order - 1
        return self.spec.from_exp(self.exp * e % n)


def field_new(p: int, k: int) -> FieldSpec:
    """GF(p^k) with the canonical primitive polynomial (table, then search)."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p ** k > MAX_FIELD_ELEMENTS:
        raise FieldError(f"field order {p ** k} exceeds the configured bound")
    poly = _PRIMITIVE_POLYS.get((p, k))
    if poly is None:
        poly = _search_primitive_poly(p, k)
    return FieldSpec(p, k, poly)


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    """[0, g^0, g^1, ..., g^(s-2)] in generator-power order."""
    return [spec.zero()] + [FieldElement(spec, c) for c in spec.exp_table]


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def pow_(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def frobenius(a: FieldElement) -> FieldElement:
    """The field automorphism x -> x^p; fixes the prime subfield."""
    return a ** a.spec.p

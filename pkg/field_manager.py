"""
field_manager
─────────────
Exact GF(p^m) arithmetic plus the base class every handler builds on.

One field context per (p, e, c) is built once and shared; a context is
never mutated after construction.  Elements travel as their integer
encodings (base-p digits, constant term least significant), which is the
integer representation galois uses for its FieldArray values.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import galois
import numpy as np

log = logging.getLogger(__name__)

# ───────── constants ─────────
DEFAULT_MAX_FIELD = 1 << 16
MAX_FIELD_ENV     = "GHCODE_MAX_FIELD"

Element = Union[int, galois.FieldArray]


class FieldSizeError(ValueError):
    """The requested field cannot be built under the configured limits."""


# ───────────────────────────────────────────────────────────────
# 1. Parameter helpers
# ───────────────────────────────────────────────────────────────
def max_field_order() -> int:
    """Field-order guard; ``GHCODE_MAX_FIELD`` overrides the default."""
    raw = os.environ.get(MAX_FIELD_ENV)
    if raw is None:
        return DEFAULT_MAX_FIELD
    try:
        return int(raw)
    except ValueError:
        raise FieldSizeError(f"{MAX_FIELD_ENV}={raw!r} is not an integer") from None


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e."""
    if q < 2 or not galois.is_prime_power(q):
        raise FieldSizeError(f"q={q} is not a prime power")
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


# ───────────────────────────────────────────────────────────────
# 2. Field context
# ───────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class FieldCtx:
    """GF(p^(e*c)) with its fixed modulus and q-Frobenius (q = p^e)."""

    p: int
    e: int
    c: int
    modulus: tuple[int, ...]                     # ascending coefficients
    GF: type[galois.FieldArray] = field(repr=False, compare=False)

    # ────────── derived sizes ──────────
    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def m(self) -> int:
        return self.e * self.c

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def modulus_str(self) -> str:
        return str(self.GF.irreducible_poly)

    # ────────── conversions ──────────
    def array(self, values) -> galois.FieldArray:
        return self.GF(values)

    def elements(self) -> galois.FieldArray:
        """All field elements in encoding order (0, 1, ..., p^m - 1)."""
        return self.GF.elements

    def units(self) -> galois.FieldArray:
        return self.GF.elements[1:]

    def _lift(self, x: Element) -> tuple[galois.FieldArray, bool]:
        if isinstance(x, galois.FieldArray):
            return x, False
        return self.GF(int(x)), True

    # ────────── scalar arithmetic on encodings ──────────
    def add(self, x: int, y: int) -> int:
        return int(self.GF(x) + self.GF(y))

    def sub(self, x: int, y: int) -> int:
        return int(self.GF(x) - self.GF(y))

    def mul(self, x: int, y: int) -> int:
        return int(self.GF(x) * self.GF(y))

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.order})")
        return int(np.reciprocal(self.GF(x)))

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(x), -k)
        return int(self.GF(x) ** k)

    # ────────── q-Frobenius and partial traces ──────────
    def frobenius_q(self, x: Element, k: int) -> Element:
        """x^(q^k); exponents reduce mod c since x^(q^c) = x."""
        arr, scalar = self._lift(x)
        k %= self.c
        out = arr if k == 0 else arr ** (self.q ** k)
        return int(out) if scalar else out

    def tr_partial(self, x: Element, a: int) -> Element:
        """Tr_a(x) = x + x^q + ... + x^(q^(a-1))."""
        if a < 1:
            raise ValueError(f"partial trace needs a >= 1, got {a}")
        arr, scalar = self._lift(x)
        total = arr.copy()
        term = arr
        for _ in range(1, a):
            term = term ** self.q
            total = total + term
        return int(total) if scalar else total

    def subfield_q(self) -> galois.FieldArray:
        """The q elements fixed by x -> x^q."""
        elems = self.elements()
        return elems[elems ** self.q == elems]

    def int_inverse_embedded(self, a: int) -> int:
        """(a mod p)^-1 as an element of the prime subfield."""
        if a % self.p == 0:
            raise ValueError(f"p={self.p} divides {a}; no inverse in the prime field")
        return pow(a % self.p, -1, self.p)


def field_new(p: int, e: int, c: int) -> FieldCtx:
    """Build GF(p^(e*c)) over the lexicographically smallest monic irreducible."""
    if not galois.is_prime(p):
        raise FieldSizeError(f"characteristic p={p} is not prime")
    if e < 1 or c < 1:
        raise FieldSizeError(f"degree e*c must be positive, got e={e}, c={c}")
    m = e * c
    order = p ** m
    limit = max_field_order()
    if order > limit:
        raise FieldSizeError(
            f"GF({p}^{m}) has {order} elements, above the limit {limit} "
            f"(raise {MAX_FIELD_ENV} to allow it)"
        )

    if m == 1:
        GF = galois.GF(p)
        modulus = (0, 1)
    else:
        poly = galois.irreducible_poly(p, m, method="min")
        if not poly.is_irreducible():
            raise FieldSizeError(f"modulus {poly} is reducible over GF({p})")
        GF = galois.GF(order, irreducible_poly=poly)
        modulus = tuple(int(coef) for coef in poly.coeffs[::-1])

    log.info("built GF(%d^%d) modulus=%s", p, m, GF.irreducible_poly)
    return FieldCtx(p=p, e=e, c=c, modulus=modulus, GF=GF)


@lru_cache(maxsize=32)
def get_field(p: int, e: int, c: int) -> FieldCtx:
    """Create (once per parameter tuple) and return a field context."""
    return field_new(p, e, c)


# ───────────────────────────────────────────────────────────────
# 3. Base manager shared by every handler
# ───────────────────────────────────────────────────────────────
class FieldManager:
    """Field access for the handlers, one cached context per (q, c)."""

    def __init__(self, q: int, c: int):
        self.p, self.e = split_prime_power(q)
        self.q   = q
        self.c   = c
        self.ctx = get_field(self.p, self.e, c)

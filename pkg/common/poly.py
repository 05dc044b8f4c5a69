"""
Univariate polynomials over GF(p) and GF(p^r); cyclotomic cosets and minimal polynomials.

Poly keeps an ascending integer coefficient tuple as its hashable state and
does its arithmetic on the equivalent galois.Poly.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Tuple, Union

import galois

from common.errors import DomainError, FieldConfigError, UsageError
from common.field import FieldElement, FieldSpec, PrimeField

logger = logging.getLogger(__name__)

Field = Union[PrimeField, FieldSpec]


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=4096)
def _native(field: Field, coeffs: Tuple[int, ...]) -> galois.Poly:
    """galois.Poly over field.GF; GF(p) coefficients embed into GF(p^r) unchanged."""
    return galois.Poly(list(coeffs) or [0], field=field.GF, order="asc")


def _is_zero(poly: galois.Poly) -> bool:
    return poly.degree == 0 and poly.coeffs[0] == 0


@dataclass(frozen=True)
class Poly:
    """Ascending coefficient tuple over one field; the zero polynomial is ()."""

    field: Field
    coeffs: Tuple[int, ...] = ()

    @classmethod
    def make(cls, field: Field, coeffs: Iterable[int]) -> "Poly":
        if isinstance(field, PrimeField):
            coeffs = (int(c) % field.p for c in coeffs)
        return cls(field, _strip(coeffs))

    @classmethod
    def from_galois(cls, field: Field, poly: galois.Poly) -> "Poly":
        return cls(field, _strip(int(c) for c in poly.coeffs[::-1]))

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff: int = 1) -> "Poly":
        return cls.make(field, [0] * degree + [coeff])

    @classmethod
    def x_m_minus_1(cls, field: Field, m: int) -> "Poly":
        return cls.make(field, [field.neg(1)] + [0] * (m - 1) + [1])

    @property
    def native(self) -> galois.Poly:
        return _native(self.field, self.coeffs)

    def over(self, field: Field) -> galois.Poly:
        """The same coefficients as a galois.Poly over `field` (an extension of self.field)."""
        return _native(field, self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, length: int) -> List[int]:
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    def _check(self, other: "Poly") -> None:
        if other.field != self.field:
            raise UsageError("polynomials over different fields")

    def _wrap(self, poly: galois.Poly) -> "Poly":
        return Poly.from_galois(self.field, poly)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self._wrap(self.native + other.native)

    def __neg__(self) -> "Poly":
        return self._wrap(-self.native)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self._wrap(self.native - other.native)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        return self._wrap(self.native * other.native)

    def scale(self, c: int) -> "Poly":
        # galois reads Poly * int as repeated addition
        return self._wrap(self.native * _native(self.field, (c,)))

    def divmod(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(divisor)
        if divisor.is_zero():
            raise DomainError("division by the zero polynomial")
        if self.degree < divisor.degree:
            return Poly(self.field), self
        quot, rem = divmod(self.native, divisor.native)
        return self._wrap(quot), self._wrap(rem)

    def __mod__(self, divisor: "Poly") -> "Poly":
        return self.divmod(divisor)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def mod_xm1(self, m: int) -> "Poly":
        """Reduce modulo X^m - 1."""
        if len(self.coeffs) <= m:
            return self
        return self % Poly.x_m_minus_1(self.field, m)

    def evaluate(self, x: int, field: Field = None) -> int:
        """Value at a raw element of `field` (defaults to the coefficient field)."""
        F = field if field is not None else self.field
        return int(self.over(F)(F.GF(x)))

    def evaluate_at(self, points: galois.FieldArray, field: Field) -> galois.FieldArray:
        """Values at every entry of an array of `field.GF`."""
        return self.over(field)(points)

    def roots(self, field: Field = None) -> List[int]:
        """Distinct roots in `field`, ascending as integers."""
        F = field if field is not None else self.field
        return sorted(int(x) for x in self.over(F).roots())

    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_divmod(f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    return f.divmod(g)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    f._check(g)
    if g.is_zero():
        return f.monic()
    if f.is_zero():
        return g.monic()
    return Poly.from_galois(f.field, galois.gcd(f.native, g.native)).monic()


def poly_eval(f: Poly, x: FieldElement) -> FieldElement:
    """Evaluate a GF(p) (or GF(p^r)) polynomial at an extension element."""
    return FieldElement(x.spec, f.evaluate(x.value, x.spec))


def root_multiplicity(f: Poly, spec: FieldSpec, x: int) -> int:
    """Largest k with (X - x)^k dividing f in GF(p^r)[X]; 0 for the zero polynomial."""
    if f.is_zero():
        return 0
    poly = f.over(spec)
    linear = galois.Poly.Roots(spec.GF([x]))
    k = 0
    while poly.degree > 0:
        quot, rem = divmod(poly, linear)
        if not _is_zero(rem):
            break
        k += 1
        poly = quot
    return k


# ----------------------------------------------------------------------
# Cyclotomic cosets and minimal polynomials
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicCoset:
    """Orbit {i q^j mod m} of i under multiplication by q."""

    representative: int
    members: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e: int) -> bool:
        return e in self.members


def cyclotomic_coset(i: int, m: int, q: int) -> CyclotomicCoset:
    if gcd(q, m) != 1:
        raise DomainError(f"gcd(q={q}, m={m}) != 1")
    if not 0 <= i < m:
        raise DomainError(f"coset representative {i} outside [0, {m})")
    members = set()
    j = i
    while j not in members:
        members.add(j)
        j = (j * q) % m
    return CyclotomicCoset(i, tuple(sorted(members)))


def cyclotomic_cosets(m: int, q: int) -> List[CyclotomicCoset]:
    """All cosets modulo m, each represented by its smallest member."""
    seen = set()
    cosets = []
    for i in range(m):
        if i not in seen:
            coset = cyclotomic_coset(i, m, q)
            seen.update(coset.members)
            cosets.append(coset)
    return cosets


def minimal_polynomial(i: int, spec: FieldSpec) -> Poly:
    """m_i(X) = prod_{j in M_i} (X - alpha^j), returned over GF(p)."""
    coset = cyclotomic_coset(i % spec.m, spec.m, spec.p)
    poly = Poly.from_galois(spec.base, spec.GF(spec.alpha_pow(i)).minimal_poly())
    if poly.degree != len(coset):
        raise FieldConfigError(f"minimal polynomial of alpha^{i} has degree {poly.degree}, coset has {len(coset)}")
    return poly

"""
Exact arithmetic in GF(p) and GF(p^r), backed by galois field arrays.

Inside the library an element of GF(p^r) is a plain integer
v = c_0 + c_1 p + ... + c_{r-1} p^{r-1} holding its power-basis coordinates
modulo the defining polynomial; this is galois' integer representation, so
values pass between Python ints and `spec.GF` arrays unchanged and GF(p)
integers embed into GF(p^r) as they are. PrimeField and FieldSpec expose the
same small scalar protocol (zero, one, add, sub, neg, mul, inv, div, pow,
order) for code that works one element at a time; anything vectorized uses the
galois class `GF` directly. FieldElement wraps one integer together with its
FieldSpec for the public API.
"""

import logging
from dataclasses import dataclass
from math import gcd
from random import Random
from typing import Dict, List, Optional, Sequence, Type

import galois
import numpy as np

from common.errors import DomainError, FieldConfigError, UsageError
from common.utils import format_power, multiplicative_order

logger = logging.getLogger(__name__)


def to_list(array: galois.FieldArray) -> list:
    """Nested lists of Python ints from a field array."""
    return array.view(np.ndarray).tolist()


def _check_prime(p: int) -> None:
    if p < 2 or not galois.is_prime(p):
        raise FieldConfigError(f"p={p} is not prime")


class _GaloisField:
    """Scalar protocol on raw integers, evaluated through `GF`."""

    zero = 0
    one = 1
    GF: Type[galois.FieldArray]
    order: int

    def array(self, values) -> galois.FieldArray:
        """Field array from (nested) integer lists."""
        return self.GF(np.asarray(values, dtype=np.int64))

    def add(self, a: int, b: int) -> int:
        return int(self.GF(a) + self.GF(b))

    def sub(self, a: int, b: int) -> int:
        return int(self.GF(a) - self.GF(b))

    def neg(self, a: int) -> int:
        return int(-self.GF(a))

    def mul(self, a: int, b: int) -> int:
        return int(self.GF(a) * self.GF(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero")
        return int(np.reciprocal(self.GF(a)))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.GF(a) ** e)

    def random_element(self, rng: Random) -> int:
        return rng.randrange(self.order)


class PrimeField(_GaloisField):
    """GF(p) on integers in [0, p)."""

    def __init__(self, p: int):
        _check_prime(p)
        self.p = p
        self.order = p
        self.GF = galois.GF(p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def _base_poly(coeffs: Sequence[int], p: int) -> galois.Poly:
    return galois.Poly(list(coeffs), field=galois.GF(p), order="asc")


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """True when the ascending coefficient list is irreducible over GF(p)."""
    poly = _base_poly(modulus, p)
    return poly.degree >= 1 and poly.is_irreducible()


def first_irreducible(p: int, r: int) -> List[int]:
    """Lexicographically first monic irreducible polynomial of degree r over GF(p)."""
    poly = galois.irreducible_poly(p, r, method="min")
    return [int(c) for c in poly.coeffs[::-1]]


class FieldSpec(_GaloisField):
    """GF(p^r) = GF(p)[X]/(modulus) with a designated element alpha of order m."""

    def __init__(
        self,
        p: int,
        r: int,
        modulus: Sequence[int],
        m: int,
        alpha: Optional[Sequence[int]] = None,
        table_limit: int = 1 << 16,
    ):
        _check_prime(p)
        if r < 1:
            raise FieldConfigError(f"extension degree r={r} must be positive")
        modulus = [int(c) for c in modulus]
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldConfigError(f"modulus must be a monic polynomial of degree {r}")
        if any(c < 0 or c >= p for c in modulus):
            raise FieldConfigError(f"modulus coefficients must lie in [0, {p})")
        if m < 1:
            raise FieldConfigError(f"m={m} must be positive")
        if gcd(m, p) != 1:
            raise FieldConfigError(f"gcd(m={m}, p={p}) != 1: repeated-root codes are not supported")
        if (p**r - 1) % m != 0:
            raise FieldConfigError(f"m={m} does not divide p^r - 1 = {p**r - 1}")
        if not is_irreducible(modulus, p):
            raise FieldConfigError(f"modulus {modulus} is reducible over GF({p})")

        self.p = p
        self.r = r
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p**r
        self.base = PrimeField(p)
        if r == 1:
            self.GF = self.base.GF
        else:
            # Lookup tables below the limit, explicit calculation above it
            mode = "jit-lookup" if self.order <= min(table_limit, 1 << 20) else "jit-calculate"
            self.GF = galois.GF(p**r, irreducible_poly=_base_poly(modulus, p), compile=mode)

        self.primitive = int(self.GF.primitive_element)
        self.alpha = self._select_alpha(alpha)
        self._alpha_table = self.GF(self.alpha) ** np.arange(m)
        self._alpha_pows: List[int] = to_list(self._alpha_table)
        self._alpha_log: Dict[int, int] = {v: i for i, v in enumerate(self._alpha_pows)}
        logger.debug(
            f"Built GF({p}^{r}) modulus={list(modulus)} m={m} alpha={self.coordinates(self.alpha)}"
        )

    @classmethod
    def create(
        cls,
        p: int,
        m: int,
        r: Optional[int] = None,
        modulus: Optional[Sequence[int]] = None,
        alpha: Optional[Sequence[int]] = None,
        table_limit: int = 1 << 16,
    ) -> "FieldSpec":
        """Fill in r = ord_m(p) and a default modulus when they are omitted."""
        _check_prime(p)
        if gcd(m, p) != 1:
            raise FieldConfigError(f"gcd(m={m}, p={p}) != 1: repeated-root codes are not supported")
        if r is None:
            r = multiplicative_order(p, m)
        if modulus is None:
            modulus = first_irreducible(p, r)
        return cls(p, r, modulus, m, alpha=alpha, table_limit=table_limit)

    # ------------------------------------------------------------------
    # Encoding
    # ------------------------------------------------------------------

    def coordinate_array(self, values) -> galois.FieldArray:
        """GF(p) array of shape (..., r): ascending coordinates of every value."""
        raw = np.asarray(values, dtype=np.int64)
        if self.r == 1:
            return self.base.array(raw[..., None])
        vectors = self.GF(raw).vector().view(np.ndarray)
        return self.base.array(vectors[..., ::-1])

    def coordinates(self, value: int) -> List[int]:
        return to_list(self.coordinate_array(value))

    def from_coordinates(self, coeffs: Sequence[int]) -> int:
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > self.r:
            raise UsageError(f"element has {len(coeffs)} coordinates, field degree is {self.r}")
        if any(c < 0 or c >= self.p for c in coeffs):
            raise UsageError(f"coordinates must lie in [0, {self.p})")
        padded = coeffs + [0] * (self.r - len(coeffs))
        if self.r == 1:
            return padded[0]
        return int(self.GF.Vector(padded[::-1]))

    def is_base(self, value: int) -> bool:
        return 0 <= value < self.p

    # ------------------------------------------------------------------
    # Powers of alpha
    # ------------------------------------------------------------------

    def alpha_pow(self, e: int) -> int:
        return self._alpha_pows[e % self.m]

    def alpha_array(self, exponents) -> galois.FieldArray:
        """alpha^(e mod m) for every entry of an integer array."""
        return self._alpha_table[np.mod(np.asarray(exponents, dtype=np.int64), self.m)]

    def alpha_log(self, value: int) -> Optional[int]:
        """Exponent e in [0, m) with alpha^e = value, or None."""
        return self._alpha_log.get(value)

    def format(self, value: int) -> str:
        return format_power(self._alpha_log, value, self.coordinates(value))

    def _select_alpha(self, alpha: Optional[Sequence[int]]) -> int:
        if alpha is None:
            return self.pow(self.primitive, (self.order - 1) // self.m)
        value = self.from_coordinates(alpha)
        if value == 0 or int(self.GF(value).multiplicative_order()) != self.m:
            raise FieldConfigError(f"alpha {list(alpha)} does not have multiplicative order {self.m}")
        return value

    # ------------------------------------------------------------------

    def _key(self):
        return (self.p, self.r, self.modulus, self.m, self.alpha)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other._key() == self._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, r={self.r}, modulus={list(self.modulus)}, m={self.m})"


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^r) bound to its FieldSpec."""

    spec: FieldSpec
    value: int

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise UsageError("mismatched FieldSpec")
        return other.value

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.spec, self.spec.div(self.value, self._other(other)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def coeffs(self) -> List[int]:
        return self.spec.coordinates(self.value)

    def __str__(self) -> str:
        return self.spec.format(self.value)


def element(spec: FieldSpec, coeffs: Sequence[int]) -> FieldElement:
    """Build an element from its ascending power-basis coordinates."""
    return FieldElement(spec, spec.from_coordinates(coeffs))


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.inv(a.value))


def alpha_pow(spec: FieldSpec, e: int) -> FieldElement:
    """alpha^(e mod m)."""
    return FieldElement(spec, spec.alpha_pow(e))


def fq_coordinates(a: FieldElement) -> List[int]:
    """Power-basis coordinate vector of a over GF(p)."""
    return a.spec.coordinates(a.value)

"""
Quasi-cyclic codes given by an upper-triangular reduced Gröbner-basis generator matrix.

A codeword is a tuple of ell polynomials over GF(p), each reduced modulo X^m - 1.
The flat layout interleaves them as c_{0,0} .. c_{l-1,0}, c_{0,1}, ...
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import List, Optional, Sequence, Set, Tuple

from common import linalg
from common.errors import ConditionViolation, InvalidCodeError, UsageError
from common.field import FieldSpec, PrimeField, to_list
from common.poly import Poly
from common.utils import from_flat, to_flat

logger = logging.getLogger(__name__)


# ============================================================================
# Words
# ============================================================================


@dataclass(frozen=True)
class CodewordVec:
    """ell polynomials over GF(p); used for codewords, received words and error words."""

    components: Tuple[Poly, ...]

    @classmethod
    def zero(cls, field: PrimeField, ell: int) -> "CodewordVec":
        return cls(tuple(Poly(field) for _ in range(ell)))

    @classmethod
    def from_lists(cls, field: PrimeField, components: Sequence[Sequence[int]], m: int) -> "CodewordVec":
        polys = []
        for t, coeffs in enumerate(components):
            if any(int(c) < 0 or int(c) >= field.p for c in coeffs):
                raise UsageError(f"component {t} has coefficients outside [0, {field.p})")
            poly = Poly.make(field, coeffs)
            if poly.degree >= m:
                raise UsageError(f"component {t} has degree {poly.degree} >= m = {m}")
            polys.append(poly)
        return cls(tuple(polys))

    @classmethod
    def from_flat(cls, field: PrimeField, flat: Sequence[int], ell: int, m: int) -> "CodewordVec":
        try:
            components = from_flat(flat, ell, m)
        except ValueError as e:
            raise UsageError(str(e))
        return cls.from_lists(field, components, m)

    @property
    def ell(self) -> int:
        return len(self.components)

    @property
    def field(self) -> PrimeField:
        return self.components[0].field

    def to_lists(self, m: int) -> List[List[int]]:
        return [c.padded(m) for c in self.components]

    def flat(self, m: int) -> List[int]:
        return to_flat([c.coeffs for c in self.components], m)

    def weight(self) -> int:
        """Number of nonzero GF(p) symbols (the count written as epsilon-tilde for errors)."""
        return sum(c.weight() for c in self.components)

    def burst_positions(self) -> Set[int]:
        """Positions j where at least one component has a nonzero coefficient."""
        return {j for c in self.components for j, x in enumerate(c.coeffs) if x}

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other: "CodewordVec") -> None:
        if other.ell != self.ell:
            raise UsageError(f"words have {self.ell} and {other.ell} components")

    def __add__(self, other: "CodewordVec") -> "CodewordVec":
        self._check(other)
        return CodewordVec(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "CodewordVec") -> "CodewordVec":
        self._check(other)
        return CodewordVec(tuple(a - b for a, b in zip(self.components, other.components)))


ReceivedWord = CodewordVec


# ============================================================================
# Generator matrix and code
# ============================================================================


@dataclass(frozen=True)
class GroebnerMatrix:
    """Upper-triangular ell x ell generator matrix over GF(p)[X]/(X^m - 1)."""

    ell: int
    m: int
    entries: Tuple[Tuple[Poly, ...], ...]

    @classmethod
    def from_lists(
        cls, field: PrimeField, m: int, generators: Sequence[Sequence[Sequence[int]]]
    ) -> "GroebnerMatrix":
        ell = len(generators)
        if ell < 1 or any(len(row) != ell for row in generators):
            raise UsageError("generators must be a non-empty square array")
        entries = tuple(tuple(Poly.make(field, g) for g in row) for row in generators)
        return cls(ell, m, entries)

    @property
    def field(self) -> PrimeField:
        return self.entries[0][0].field

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def diagonal(self) -> List[Poly]:
        return [self.entries[i][i] for i in range(self.ell)]

    def row(self, i: int) -> CodewordVec:
        return CodewordVec(self.entries[i])

    def to_lists(self) -> List[List[List[int]]]:
        return [[list(g.coeffs) for g in row] for row in self.entries]


@dataclass
class QcCode:
    """A validated quasi-cyclic code of length m*ell and dimension k."""

    spec: FieldSpec
    basis: GroebnerMatrix
    k: int
    closed: bool = True

    @property
    def ell(self) -> int:
        return self.basis.ell

    @property
    def m(self) -> int:
        return self.basis.m

    @property
    def n(self) -> int:
        return self.m * self.ell

    @property
    def field(self) -> PrimeField:
        return self.spec.base

    @cached_property
    def gf_basis(self) -> List[List[int]]:
        """Row-reduced GF(p) basis of the code in the flat layout."""
        rows, _ = linalg.rref(self.field, generator_rows(self), self.n)
        if len(rows) != self.k:
            logger.warning(f"GF({self.spec.p}) rank {len(rows)} of the shifted generators differs from k={self.k}")
        return rows

    def message_degrees(self) -> List[int]:
        """Component i of a message ranges over polynomials of degree < m - deg g_{i,i}."""
        return [self.m - g.degree for g in self.basis.diagonal()]


def validate(basis: GroebnerMatrix, spec: FieldSpec) -> QcCode:
    """Check conditions 1-4 of the reduced Gröbner form and derive k."""
    if basis.m != spec.m:
        raise UsageError(f"generator matrix has m={basis.m}, field has m={spec.m}")
    if basis.field != spec.base:
        raise UsageError(f"generator matrix is over {basis.field}, field characteristic is {spec.p}")

    ell, m = basis.ell, basis.m
    xm1 = Poly.x_m_minus_1(spec.base, m)
    violations: List[ConditionViolation] = []
    for i in range(ell):
        g_ii = basis.entry(i, i)
        for j in range(i):
            if not basis.entry(i, j).is_zero():
                violations.append(ConditionViolation(1, i, j, "entry below the diagonal is nonzero"))
        for j in range(i):
            g_ji = basis.entry(j, i)
            if g_ji.degree >= g_ii.degree:
                violations.append(
                    ConditionViolation(
                        2, j, i, f"deg g_{{{j},{i}}} = {g_ji.degree} is not below deg g_{{{i},{i}}} = {g_ii.degree}"
                    )
                )
        if g_ii.is_zero() or not (xm1 % g_ii).is_zero():
            violations.append(ConditionViolation(3, i, i, f"g_{{{i},{i}}} does not divide X^{m}-1"))
        elif g_ii.monic() == xm1:
            for j in range(i + 1, ell):
                if not basis.entry(i, j).is_zero():
                    violations.append(
                        ConditionViolation(4, i, j, f"g_{{{i},{i}}} = X^{m}-1 but g_{{{i},{j}}} is nonzero")
                    )

    if violations:
        for v in violations:
            logger.error(f"Invalid generator matrix: {v}")
        raise InvalidCodeError(violations)

    k = m * ell - sum(g.degree for g in basis.diagonal())
    code = QcCode(spec=spec, basis=basis, k=k)
    code.closed = _is_closed(code)
    if not code.closed:
        logger.warning("Generator rows are not closed under the module action; membership uses linear algebra")
    logger.info(f"Validated [{code.n}, {k}] {ell}-quasi-cyclic code over GF({spec.p}), m={m}")
    return code


def _is_closed(code: QcCode) -> bool:
    """Every row times (X^m-1)/g_{i,i} must reduce to zero against the rows below it."""
    xm1 = Poly.x_m_minus_1(code.field, code.m)
    for i in range(code.ell):
        h = xm1.divmod(code.basis.entry(i, i))[0]
        word = _scale_word(code.basis.row(i), h, code.m)
        if _reduce(code, word, start=i + 1) is not None:
            return False
    return True


def _scale_word(word: CodewordVec, a: Poly, m: int) -> CodewordVec:
    return CodewordVec(tuple((a * c).mod_xm1(m) for c in word.components))


def _reduce(code: QcCode, word: CodewordVec, start: int = 0) -> Optional[CodewordVec]:
    """Cancel components left to right with the diagonal rows; None if the remainder is zero."""
    comps = [c.mod_xm1(code.m) for c in word.components]
    for c in comps[:start]:
        if not c.is_zero():
            return CodewordVec(tuple(comps))
    for i in range(start, code.ell):
        if comps[i].is_zero():
            continue
        q, rem = comps[i].divmod(code.basis.entry(i, i))
        if not rem.is_zero():
            return CodewordVec(tuple(comps))
        for j in range(i, code.ell):
            g = code.basis.entry(i, j)
            if not g.is_zero():
                comps[j] = (comps[j] - (q * g).mod_xm1(code.m)).mod_xm1(code.m)
    if any(not c.is_zero() for c in comps):
        return CodewordVec(tuple(comps))
    return None


# ============================================================================
# Operations
# ============================================================================


def encode(code: QcCode, message: Sequence[Poly]) -> CodewordVec:
    """c_j = sum_i a_i g_{i,j} mod X^m - 1."""
    if len(message) != code.ell:
        raise UsageError(f"message has {len(message)} components, code has ell={code.ell}")
    comps = [Poly(code.field) for _ in range(code.ell)]
    for i, a in enumerate(message):
        a = a.mod_xm1(code.m)
        if a.is_zero():
            continue
        for j in range(i, code.ell):
            g = code.basis.entry(i, j)
            if not g.is_zero():
                comps[j] = comps[j] + a * g
    return CodewordVec(tuple(c.mod_xm1(code.m) for c in comps))


def shift(c: CodewordVec, m: int) -> CodewordVec:
    """Multiply every component by X modulo X^m - 1 (a cyclic rotation of coefficients)."""
    rotated = []
    for comp in c.components:
        padded = comp.mod_xm1(m).padded(m)
        rotated.append(Poly.make(comp.field, padded[-1:] + padded[:-1]))
    return CodewordVec(tuple(rotated))


def is_codeword(code: QcCode, c: CodewordVec) -> bool:
    if c.ell != code.ell:
        raise UsageError(f"word has {c.ell} components, code has ell={code.ell}")
    if code.closed:
        return _reduce(code, c) is None
    basis = code.gf_basis
    return linalg.rank(code.field, basis + [c.flat(code.m)]) == len(basis)


def generator_rows(code: QcCode) -> List[List[int]]:
    """Flat layouts of X^t times each basis row, t in [0, m)."""
    rows = []
    for i in range(code.ell):
        word = CodewordVec(tuple(g.mod_xm1(code.m) for g in code.basis.entries[i]))
        for _ in range(code.m):
            rows.append(word.flat(code.m))
            word = shift(word, code.m)
    return rows


def random_message(code: QcCode, rng: Random) -> List[Poly]:
    F = code.field
    return [Poly.make(F, [rng.randrange(F.p) for _ in range(d)]) for d in code.message_degrees()]


def random_codeword(code: QcCode, rng: Random) -> CodewordVec:
    """Uniform codeword: messages of degree < m - deg g_{i,i} map bijectively onto the code."""
    if not code.closed:
        F = code.field
        if not code.gf_basis:
            return CodewordVec.zero(F, code.ell)
        coeffs = F.array([rng.randrange(F.p) for _ in code.gf_basis])
        flat = to_list(coeffs @ F.array(code.gf_basis))
        return CodewordVec.from_flat(F, flat, code.ell, code.m)
    return encode(code, random_message(code, rng))

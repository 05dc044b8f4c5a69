"""Eigenvalues, eigenspaces and eigencodes of a quasi-cyclic code."""

import sys
import os
import logging
import math
from dataclasses import dataclass
from itertools import combinations, product
from random import Random
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common import linalg
from common.code import QcCode
from common.errors import SpectralError
from common.field import FieldSpec, to_list
from common.poly import root_multiplicity
from apps.analysis.config import settings

logger = logging.getLogger(__name__)

INFINITE = math.inf

# Messages enumerated per matrix product in eigencode
_ENUM_CHUNK = 1 << 16

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class Eigenvalue:
    """lambda = alpha^exponent with its algebraic and geometric multiplicity."""

    exponent: int
    algebraic_mult: int
    geometric_mult: int


@dataclass(frozen=True)
class Eigenspace:
    """Right kernel of the stacked matrices G(alpha^e) for every e in label."""

    ell: int
    label: Tuple[int, ...]
    basis: Tuple[Vector, ...]
    constraints: Tuple[Vector, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class EigencodeInfo:
    """GF(p) code orthogonal to an eigenspace, with its minimum distance."""

    generators: Tuple[Vector, ...]
    dec: Union[int, float]
    exact: bool = True

    @property
    def dimension(self) -> int:
        return len(self.generators)


def evaluate_matrix(code: QcCode, e: int) -> List[List[int]]:
    """G(alpha^e) over GF(p^r)."""
    spec = code.spec
    x = spec.alpha_pow(e)
    return [[g.evaluate(x, spec) for g in row] for row in code.basis.entries]


def eigenvalues(code: QcCode) -> List[Eigenvalue]:
    """Roots alpha^e of det G(X) = prod g_{i,i}(X), checked for equal multiplicities."""
    spec = code.spec
    diagonal = code.basis.diagonal()
    points = spec.alpha_array(np.arange(code.m))
    vanishing = np.zeros(code.m, dtype=bool)
    for g in diagonal:
        vanishing |= (g.evaluate_at(points, spec) == 0).view(np.ndarray)
    result = []
    for e in np.flatnonzero(vanishing).tolist():
        x = spec.alpha_pow(e)
        algebraic = sum(root_multiplicity(g, spec, x) for g in diagonal)
        geometric = code.ell - linalg.rank(spec, evaluate_matrix(code, e))
        if algebraic != geometric:
            logger.error(
                f"Eigenvalue alpha^{e}: algebraic multiplicity {algebraic} != geometric multiplicity {geometric}"
            )
            raise SpectralError(
                f"eigenvalue alpha^{e} has algebraic multiplicity {algebraic} "
                f"but geometric multiplicity {geometric}"
            )
        result.append(Eigenvalue(e, algebraic, geometric))
    logger.info(f"Found {len(result)} eigenvalue exponents")
    return result


def eigenspace(code: QcCode, e: int) -> Eigenspace:
    """Zero-dimensional when alpha^e is not an eigenvalue."""
    e %= code.m
    rows = evaluate_matrix(code, e)
    basis = linalg.nullspace(code.spec, rows, code.ell)
    constraints, _ = linalg.rref(code.spec, rows, code.ell)
    return Eigenspace(
        ell=code.ell,
        label=(e,),
        basis=tuple(tuple(v) for v in basis),
        constraints=tuple(tuple(r) for r in constraints),
    )


def _constraints_of(space: Eigenspace, spec: FieldSpec) -> List[List[int]]:
    if space.constraints or space.dim == space.ell:
        return [list(r) for r in space.constraints]
    # annihilator of the span
    return linalg.nullspace(spec, [list(v) for v in space.basis], space.ell)


def intersect(spaces: Sequence[Eigenspace], spec: FieldSpec) -> Eigenspace:
    """Pairwise-iterative intersection, stopping early at dimension zero."""
    if not spaces:
        raise ValueError("intersect needs at least one eigenspace")
    ell = spaces[0].ell
    result = spaces[0]
    for space in spaces[1:]:
        if result.dim == 0:
            break
        stacked = _constraints_of(result, spec) + _constraints_of(space, spec)
        constraints, _ = linalg.rref(spec, stacked, ell)
        basis = linalg.nullspace(spec, constraints, ell)
        result = Eigenspace(
            ell=ell,
            label=tuple(sorted(set(result.label) | set(space.label))),
            basis=tuple(tuple(v) for v in basis),
            constraints=tuple(tuple(r) for r in constraints),
        )
    if result.dim == 0:
        label = sorted({e for s in spaces for e in s.label})
        return Eigenspace(ell=ell, label=tuple(label), basis=(), constraints=result.constraints)
    return result


def eigencode(space: Eigenspace, spec: FieldSpec, enum_limit: Optional[int] = None) -> EigencodeInfo:
    """GF(p) kernel of the coordinate expansion of the eigenspace basis, with its distance."""
    if enum_limit is None:
        enum_limit = settings.eigencode_enum_limit
    base = spec.base
    rows = []
    if space.dim:
        # one GF(p) row per (basis vector, coordinate)
        coords = spec.coordinate_array(space.basis)
        rows = coords.swapaxes(1, 2).reshape(-1, space.ell)
    generators = tuple(tuple(g) for g in linalg.nullspace(base, rows, space.ell))
    if not generators:
        return EigencodeInfo(generators=(), dec=INFINITE)

    k_ec = len(generators)
    if spec.p**k_ec > enum_limit:
        logger.warning(
            f"Eigencode distance not computed: {spec.p}^{k_ec} words exceed the limit {enum_limit}; reporting 1"
        )
        return EigencodeInfo(generators=generators, dec=1, exact=False)

    G = base.array(generators)
    best = space.ell
    for messages in linalg.message_blocks(base, k_ec, _ENUM_CHUNK):
        weights = np.count_nonzero((messages @ G).view(np.ndarray), axis=1)
        best = min(best, int(weights.min()))
    return EigencodeInfo(generators=generators, dec=best)


def coordinates_independent(v: Sequence[int], spec: FieldSpec) -> bool:
    """True when the ell entries of v are linearly independent over GF(p)."""
    if len(v) > spec.r:
        return False
    return linalg.rank(spec.base, spec.coordinate_array(v)) == len(v)


def normalize(v: Sequence[int], spec: FieldSpec) -> Vector:
    """Scale v so that its first nonzero entry is 1."""
    lead = next((x for x in v if x), 0)
    if lead in (0, 1):
        return tuple(v)
    return tuple(to_list(spec.array(v) / spec.GF(lead)))


def _combine(spec: FieldSpec, coeffs: Sequence[int], vectors: Sequence[Vector]) -> Vector:
    return tuple(to_list(spec.array(list(coeffs)) @ spec.array(list(vectors))))


def _witness_candidates(space: Eigenspace, spec: FieldSpec, combination_size: int, random_trials: int, rng: Random):
    basis = space.basis
    for v in basis:
        yield v
    units = range(1, spec.p)
    for size in range(2, min(combination_size, space.dim) + 1):
        for subset in combinations(basis, size):
            for coeffs in product(units, repeat=size):
                yield _combine(spec, coeffs, subset)
    for _ in range(random_trials):
        yield _combine(spec, [spec.random_element(rng) for _ in basis], basis)


def independent_witness(
    space: Eigenspace,
    spec: FieldSpec,
    rng: Optional[Random] = None,
    combination_size: Optional[int] = None,
    random_trials: Optional[int] = None,
) -> Optional[Vector]:
    """A span element whose entries are GF(p)-independent, normalized; None if the search fails."""
    if space.dim == 0 or space.ell > spec.r:
        return None
    if rng is None:
        rng = Random(settings.seed)
    if combination_size is None:
        combination_size = settings.witness_combination_size
    if random_trials is None:
        random_trials = settings.witness_random_trials

    for candidate in _witness_candidates(space, spec, combination_size, random_trials, rng):
        if any(candidate) and coordinates_independent(candidate, spec):
            return normalize(candidate, spec)
    logger.warning(f"No independent witness found in eigenspace intersection {list(space.label)}")
    return None


class Spectrum:
    """Eigen data of one code with memoized eigenspaces, intersections and eigencodes."""

    def __init__(self, code: QcCode, enum_limit: Optional[int] = None):
        self.code = code
        self.spec = code.spec
        self.enum_limit = enum_limit if enum_limit is not None else settings.eigencode_enum_limit
        self.eigenvalues = eigenvalues(code)
        self.exponents: FrozenSet[int] = frozenset(ev.exponent for ev in self.eigenvalues)
        self._spaces: Dict[int, Eigenspace] = {}
        self._intersections: Dict[FrozenSet[int], Eigenspace] = {}
        self._eigencodes: Dict[Tuple[Vector, ...], EigencodeInfo] = {}

    def space(self, e: int) -> Eigenspace:
        e %= self.code.m
        if e not in self._spaces:
            self._spaces[e] = eigenspace(self.code, e)
        return self._spaces[e]

    def intersection(self, exponents: Iterable[int]) -> Eigenspace:
        key = frozenset(e % self.code.m for e in exponents)
        if key not in self._intersections:
            self._intersections[key] = intersect([self.space(e) for e in sorted(key)], self.spec)
        return self._intersections[key]

    def eigencode(self, space: Eigenspace) -> EigencodeInfo:
        if space.basis not in self._eigencodes:
            self._eigencodes[space.basis] = eigencode(space, self.spec, self.enum_limit)
        return self._eigencodes[space.basis]

    def degree(self) -> int:
        """Sum of algebraic multiplicities; equals m*ell - k."""
        return sum(ev.algebraic_mult for ev in self.eigenvalues)

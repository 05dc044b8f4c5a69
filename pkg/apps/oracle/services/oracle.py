"""Brute-force ground truth: exact distance, nearest codeword and decoder cross-checks."""

import sys
import os
import logging
from dataclasses import dataclass
from itertools import product
from random import Random
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common import linalg
from common.code import CodewordVec, GroebnerMatrix, QcCode, ReceivedWord, random_codeword, validate
from common.errors import EnumerationGuardError, QcError, UsageError
from common.field import FieldSpec, to_list
from common.poly import Poly, cyclotomic_cosets, minimal_polynomial
from apps.analysis.services.bound import BoundCertificate
from apps.decoding.services.decoder import compute_syndromes, decoding_view
from apps.oracle.config import settings

logger = logging.getLogger(__name__)


def _guard(code: QcCode, limit: int) -> None:
    if code.k == 0:
        raise UsageError("code has dimension 0; its minimum distance is undefined")
    size = code.spec.p**code.k
    if size > limit:
        raise EnumerationGuardError(f"refusing to enumerate p^k = {code.spec.p}^{code.k} = {size} codewords (limit {limit})")


def _to_mask(flat: Sequence[int]) -> int:
    mask = 0
    for i, x in enumerate(flat):
        if x:
            mask |= 1 << i
    return mask


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def enumerate_codewords(code: QcCode, order: str = "gray") -> Iterator[List[int]]:
    """Every codeword in the flat layout, the zero word first.

    "gray" walks a modular p-ary Gray code, adding basis row v_p(n) at step n;
    "lex" recomputes each word from its message in lexicographic order.
    """
    if order not in ("gray", "lex"):
        raise UsageError(f"unknown enumeration order {order!r}")
    F = code.field
    if not code.gf_basis:
        yield [0] * code.n
        return
    basis = F.array(code.gf_basis)
    k = basis.shape[0]
    if order == "lex":
        for coeffs in product(range(F.p), repeat=k):
            yield to_list(F.array(coeffs) @ basis)
        return
    word = F.GF.Zeros(code.n)
    yield to_list(word)
    for step in range(1, F.p**k):
        word = word + basis[_valuation(step, F.p)]
        yield to_list(word)


def min_distance_exhaustive(code: QcCode, guard: Optional[int] = None, order: str = "gray") -> int:
    """Minimum Hamming weight over all nonzero codewords in the m*ell flat layout.

    With order="gray" binary codes use a bitmask Gray walk and other codes
    weigh blocks of message products at once; "lex" walks enumerate_codewords.
    """
    _guard(code, settings.distance_guard if guard is None else guard)
    if order == "gray" and code.spec.p == 2:
        masks = [_to_mask(row) for row in code.gf_basis]
        word, best = 0, code.n
        for step in range(1, 1 << len(masks)):
            word ^= masks[(step & -step).bit_length() - 1]
            weight = bin(word).count("1")
            if weight < best:
                best = weight
        return best
    best = code.n
    if order == "gray":
        F = code.field
        basis = F.array(code.gf_basis)
        for messages in linalg.message_blocks(F, basis.shape[0]):
            weights = np.count_nonzero((messages @ basis).view(np.ndarray), axis=1)
            best = min(best, int(weights[weights > 0].min(initial=code.n)))
        return best
    for word in enumerate_codewords(code, order):
        weight = sum(1 for x in word if x)
        if 0 < weight < best:
            best = weight
    return best


@dataclass(frozen=True)
class NearestResult:
    """A closest codeword, its distance and how many codewords share that distance."""

    codeword: CodewordVec
    distance: int
    ties: int


def nearest_codeword(code: QcCode, rx: ReceivedWord, guard: Optional[int] = None) -> NearestResult:
    _guard(code, settings.nearest_guard if guard is None else guard)
    target = rx.flat(code.m)
    best_word: Optional[List[int]] = None
    best, ties = code.n + 1, 0
    if code.spec.p == 2:
        t = _to_mask(target)
        masks = [_to_mask(row) for row in code.gf_basis]
        word, best_mask = 0, 0
        for step in range(1 << len(masks)):
            if step:
                word ^= masks[(step & -step).bit_length() - 1]
            dist = bin(word ^ t).count("1")
            if dist < best:
                best, ties, best_mask = dist, 1, word
            elif dist == best:
                ties += 1
        best_word = [(best_mask >> i) & 1 for i in range(code.n)]
    else:
        for word in enumerate_codewords(code):
            dist = sum(1 for x, y in zip(word, target) if x != y)
            if dist < best:
                best, ties, best_word = dist, 1, word
            elif dist == best:
                ties += 1
    if ties > 1:
        logger.info(f"Nearest codeword at distance {best} is not unique ({ties} ties)")
    return NearestResult(CodewordVec.from_flat(code.field, best_word, code.ell, code.m), best, ties)


def verify_rank_decomposition(code: QcCode, cert: BoundCertificate, error: CodewordVec) -> bool:
    """Check S = X Y Xbar on the stacked Hankel matrix of a planted error, and rank(S) = eps.

    Rows are indexed by (t, i) with i in [0, delta-1-eps), columns by u in [0, eps):
    S[(t,i), u] = S^t_{i+u}, X^t[i, j] = beta^{(t+zi)j}, Y = diag(E_j beta^{fj}),
    Xbar[j, u] = beta^{uzj}.
    """
    spec = code.spec
    view = decoding_view(code, cert)
    synd = compute_syndromes(code, view, error)
    positions = sorted(error.burst_positions())
    eps = len(positions)
    if eps > view.tau:
        raise UsageError(f"planted error has {eps} burst positions, radius is {view.tau}")
    if eps == 0:
        return synd.is_zero()

    height = view.delta - 1 - eps
    S = linalg.as_matrix(
        spec, [[seq[i + u] for u in range(eps)] for seq in synd.values for i in range(height)], eps
    )

    # E_j = sum_t e_{t,j} v_t
    located = np.asarray(positions, dtype=np.int64)
    symbols = spec.array([[comp.coeff(j) for comp in error.components] for j in positions])
    big = symbols @ spec.array(view.witness)

    t = np.arange(view.nu + 1, dtype=np.int64)
    i = np.arange(max(height, 0), dtype=np.int64)
    rows = (t[:, None] + view.z * i[None, :]).reshape(-1)
    X = view.points(spec, rows[:, None] * located[None, :])
    Y = spec.GF.Zeros((eps, eps))
    Y[np.arange(eps), np.arange(eps)] = big * view.points(spec, view.f * located)
    Xbar = view.points(spec, view.z * located[:, None] * np.arange(eps, dtype=np.int64)[None, :])
    if not np.array_equal((X @ Y @ Xbar).view(np.ndarray), S.view(np.ndarray)):
        logger.warning("Syndrome matrix does not match its Vandermonde decomposition")
        return False
    return linalg.rank(spec, S) == eps


def random_quasi_cyclic_code(
    spec: FieldSpec,
    ell: int,
    rng: Random,
    max_k: int = 18,
    attempts: int = 1000,
) -> QcCode:
    """Random reduced Gröbner-form code with 1 <= k <= max_k.

    Diagonal entries are random products of minimal polynomials; off-diagonal
    entries are g_{i,i} a_{i,j} with deg < deg g_{j,j}, and zero when g_{i,i} = X^m - 1.
    """
    F = spec.base
    m = spec.m
    minimal = [minimal_polynomial(c.representative, spec) for c in cyclotomic_cosets(m, spec.p)]
    one = Poly(F, (1,))
    for _ in range(attempts):
        diagonal = []
        for _ in range(ell):
            keep = rng.uniform(0.5, 1.0)
            g = one
            for mp in minimal:
                if rng.random() < keep:
                    g = g * mp
            diagonal.append(g)
        k = m * ell - sum(g.degree for g in diagonal)
        if not 1 <= k <= max_k:
            continue

        entries = [[Poly(F) for _ in range(ell)] for _ in range(ell)]
        for i in range(ell):
            entries[i][i] = diagonal[i]
            if diagonal[i].degree == m:
                continue
            for j in range(i + 1, ell):
                room = diagonal[j].degree - diagonal[i].degree
                if room > 0:
                    a = Poly.make(F, [rng.randrange(spec.p) for _ in range(room)])
                    entries[i][j] = diagonal[i] * a
        basis = GroebnerMatrix(ell, m, tuple(tuple(row) for row in entries))
        return validate(basis, spec)
    raise QcError(f"no code with 1 <= k <= {max_k} found in {attempts} attempts (m={m}, ell={ell})")


def sample_min_weight(code: QcCode, samples: Optional[int] = None, rng: Optional[Random] = None) -> Tuple[int, int]:
    """Smallest nonzero weight among random codewords; an upper bound on d, not a guarantee."""
    if samples is None:
        samples = settings.sample_count
    if rng is None:
        rng = Random(settings.seed)
    if code.k == 0:
        raise UsageError("code has dimension 0; its minimum distance is undefined")
    best, examined = code.n, 0
    for _ in range(samples):
        weight = random_codeword(code, rng).weight()
        examined += 1
        if 0 < weight < best:
            best = weight
    logger.warning(f"Sampled upper bound d <= {best} from {examined} random codewords (not guaranteed)")
    return best, examined

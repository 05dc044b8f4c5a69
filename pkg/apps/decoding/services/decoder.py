"""
Syndrome decoding up to the certified radius.

Stages: syndromes from the witness eigenvector, a joint key-equation solve on
the stacked Hankel system, locator roots, error values from a Vandermonde
system, and recovery of the GF(p) error symbols from the witness coordinates.
"""

import sys
import os
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common import linalg
from common.code import CodewordVec, QcCode, ReceivedWord, is_codeword
from common.errors import DecodingFailure, PreconditionError, UsageError
from common.field import FieldSpec, to_list
from common.metrics import Timer
from common.poly import Poly
from apps.analysis.services.bound import BoundCertificate
from apps.analysis.services.spectral import INFINITE, Vector
from apps.decoding.config import settings

logger = logging.getLogger(__name__)


class FailureReason(str, Enum):
    """Why a decoding attempt was abandoned."""

    LOCATOR_NOT_FOUND = "LOCATOR_NOT_FOUND"
    ROOT_DEFICIT = "ROOT_DEFICIT"
    VALUES_INCONSISTENT = "VALUES_INCONSISTENT"
    VALUE_NOT_REPRESENTABLE = "VALUE_NOT_REPRESENTABLE"
    NOT_A_CODEWORD = "NOT_A_CODEWORD"


@dataclass(frozen=True)
class DecodingView:
    """Certificate parameters in the frame the decoder works in.

    Exponents are taken with respect to beta = alpha^scale. When delta - 1 <= nu
    the two axes of the exponent set are interchanged by moving to beta = alpha^z.
    """

    f: int
    z: int
    delta: int
    nu: int
    witness: Vector
    tau: int
    scale: int = 1
    swapped: bool = False

    def point(self, spec: FieldSpec, x: int) -> int:
        return spec.alpha_pow(self.scale * x)

    def points(self, spec: FieldSpec, exponents) -> galois.FieldArray:
        """beta^x for every entry of an integer array."""
        return spec.alpha_array(self.scale * np.asarray(exponents, dtype=np.int64))

    def exponent_grid(self) -> np.ndarray:
        """f + iz + t, indexed [t, i] for t in [0, nu] and i in [0, delta-1)."""
        i = np.arange(self.delta - 1, dtype=np.int64)
        t = np.arange(self.nu + 1, dtype=np.int64)
        return self.f + i[None, :] * self.z + t[:, None]


def decoding_view(code: QcCode, cert: BoundCertificate) -> DecodingView:
    if cert.witness is None:
        raise PreconditionError("certificate has no independent witness")
    if cert.dec != INFINITE and cert.dec <= cert.delta + cert.nu:
        raise PreconditionError(
            f"eigencode distance {cert.dec} does not exceed delta + nu = {cert.delta + cert.nu}"
        )
    tau = (cert.dstar - 1) // 2
    if cert.delta - 1 > cert.nu:
        return DecodingView(cert.f, cert.z, cert.delta, cert.nu, cert.witness, tau)

    m = code.m
    z_inv = pow(cert.z, -1, m) if m > 1 else 0
    logger.info(f"Interchanging axes: delta - 1 = {cert.delta - 1} <= nu = {cert.nu}")
    return DecodingView(
        f=(z_inv * cert.f) % m,
        z=z_inv % m,
        delta=cert.nu + 2,
        nu=cert.delta - 2,
        witness=cert.witness,
        tau=tau,
        scale=cert.z,
        swapped=True,
    )


@dataclass(frozen=True)
class SyndromeSet:
    """values[t][i] = sum_j r_j(beta^{f+iz+t}) v_j for t in [0, nu], i in [0, delta-1)."""

    view: DecodingView
    values: Tuple[Tuple[int, ...], ...]

    def polys(self, spec: FieldSpec) -> List[Poly]:
        return [Poly.make(spec, seq) for seq in self.values]

    def is_zero(self) -> bool:
        return not any(x for seq in self.values for x in seq)


@dataclass(frozen=True)
class ErrorDescription:
    """Burst positions E, values E_j and GF(p) symbols e_{j,t}."""

    positions: Tuple[int, ...]
    big_values: Dict[int, int] = field(default_factory=dict)
    symbols: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def epsilon(self) -> int:
        return len(self.positions)

    @property
    def symbol_errors(self) -> int:
        return sum(1 for s in self.symbols.values() for x in s if x)


@dataclass(frozen=True)
class DecodeOutcome:
    """Either a codeword with its error description, or a failure reason."""

    success: bool
    view: DecodingView
    syndromes: SyndromeSet
    locator: Optional[Poly] = None
    codeword: Optional[CodewordVec] = None
    error: Optional[ErrorDescription] = None
    reason: Optional[FailureReason] = None
    detail: str = ""


def compute_syndromes(code: QcCode, view: DecodingView, rx: ReceivedWord) -> SyndromeSet:
    if rx.ell != code.ell:
        raise UsageError(f"received word has {rx.ell} components, code has ell={code.ell}")
    spec = code.spec
    grid = view.exponent_grid()
    points = view.points(spec, grid.ravel())
    values = spec.array([to_list(comp.evaluate_at(points, spec)) for comp in rx.components])
    sequences = (spec.array(view.witness) @ values).reshape(grid.shape)
    return SyndromeSet(view, tuple(tuple(seq) for seq in to_list(sequences)))


def syndromes(code: QcCode, cert: BoundCertificate, rx: ReceivedWord) -> SyndromeSet:
    return compute_syndromes(code, decoding_view(code, cert), rx)


def solve_key_equations(synd: SyndromeSet, spec: FieldSpec, tau: Optional[int] = None) -> Poly:
    """Lowest-degree Lambda with Lambda_0 = 1 satisfying every stacked Hankel row.

    For trial degree eps the rows are sum_{k=1..eps} Lambda_k S^t_{i-k} = -S^t_i
    for i in [eps, delta-2] and every t.
    """
    view = synd.view
    if tau is None:
        tau = view.tau
    S = synd.values
    length = view.delta - 1
    if synd.is_zero():
        return Poly(spec, (1,))
    for eps in range(1, tau + 1):
        rows, rhs = [], []
        for seq in S:
            for i in range(eps, length):
                rows.append([seq[i - k] for k in range(1, eps + 1)])
                rhs.append(seq[i])
        if not rows:
            break
        solution = linalg.solve(spec, rows, to_list(-spec.array(rhs)))
        if solution is not None:
            return Poly.make(spec, [1] + solution)
    raise DecodingFailure(FailureReason.LOCATOR_NOT_FOUND.value, f"no consistent locator of degree <= {tau}")


def find_positions(code: QcCode, view: DecodingView, locator: Poly) -> List[int]:
    """E = {i : Lambda(beta^{-iz}) = 0}."""
    if locator.degree <= 0:
        return []
    spec = code.spec
    group = view.points(spec, -np.arange(code.m, dtype=np.int64) * view.z)
    position_of = {x: i for i, x in enumerate(to_list(group))}
    positions = sorted(position_of[x] for x in locator.roots(spec) if x in position_of)
    if len(positions) < locator.degree:
        raise DecodingFailure(
            FailureReason.ROOT_DEFICIT.value,
            f"{len(positions)} roots in the locator group for a locator of degree {locator.degree}",
        )
    return positions


def error_values(code: QcCode, synd: SyndromeSet, positions: Sequence[int]) -> Dict[int, int]:
    """Solve sum_{j in E} E_j beta^{(f+iz)j} = S^0_i for i < eps, then check every syndrome."""
    if not positions:
        return {}
    spec = code.spec
    view = synd.view
    eps = len(positions)
    located = np.asarray(positions, dtype=np.int64)
    grid = view.exponent_grid()
    A = view.points(spec, grid[0, :eps, None] * located[None, :])
    if np.linalg.matrix_rank(A) < eps:
        raise DecodingFailure(FailureReason.VALUES_INCONSISTENT.value, "Vandermonde system is singular")
    solution = np.linalg.solve(A, spec.array(synd.values[0][:eps]))
    if np.any((solution == 0).view(np.ndarray)):
        raise DecodingFailure(FailureReason.VALUES_INCONSISTENT.value, "zero error value at a located position")

    full = view.points(spec, grid.reshape(-1, 1) * located[None, :])
    predicted = (full @ solution).reshape(grid.shape)
    mismatch = np.argwhere((predicted != spec.array(synd.values)).view(np.ndarray))
    if mismatch.size:
        t, i = (int(x) for x in mismatch[0])
        raise DecodingFailure(
            FailureReason.VALUES_INCONSISTENT.value, f"syndrome S^{t}_{i} does not match the error values"
        )
    return dict(zip(positions, to_list(solution)))


def recover_symbols(spec: FieldSpec, witness: Sequence[int], big_values: Dict[int, int]) -> Dict[int, Tuple[int, ...]]:
    """Per position, the GF(p) solution of sum_t e_t v_t = E_j."""
    A = spec.coordinate_array(witness).T
    symbols = {}
    for j in sorted(big_values):
        solution = linalg.solve(spec.base, A, spec.coordinates(big_values[j]))
        if solution is None:
            raise DecodingFailure(
                FailureReason.VALUE_NOT_REPRESENTABLE.value, f"E_{j} is outside the GF({spec.p})-span of the witness"
            )
        symbols[j] = tuple(solution)
    return symbols


def error_word(code: QcCode, symbols: Dict[int, Tuple[int, ...]]) -> CodewordVec:
    """e_t(X) = sum_j e_{j,t} X^j."""
    comps = []
    for t in range(code.ell):
        coeffs = [0] * code.m
        for j, s in symbols.items():
            coeffs[j] = s[t]
        comps.append(Poly.make(code.field, coeffs))
    return CodewordVec(tuple(comps))


def decode(
    code: QcCode,
    cert: BoundCertificate,
    rx: ReceivedWord,
    verify_membership: Optional[bool] = None,
    timings: Optional[Dict[str, float]] = None,
) -> DecodeOutcome:
    """Estimate the transmitted codeword, or report which stage failed."""
    if verify_membership is None:
        verify_membership = settings.verify_membership
    if timings is None:
        timings = {}
    spec = code.spec
    view = decoding_view(code, cert)

    with Timer() as timer:
        synd = compute_syndromes(code, view, rx)
    timings["syndromes"] = timer.elapsed_ms

    locator: Optional[Poly] = None
    try:
        with Timer() as timer:
            locator = solve_key_equations(synd, spec)
        timings["key_equations"] = timer.elapsed_ms

        with Timer() as timer:
            positions = find_positions(code, view, locator)
        timings["positions"] = timer.elapsed_ms

        with Timer() as timer:
            values = error_values(code, synd, positions)
        timings["values"] = timer.elapsed_ms

        with Timer() as timer:
            symbols = recover_symbols(spec, view.witness, values)
        timings["symbols"] = timer.elapsed_ms

        error = ErrorDescription(tuple(positions), values, symbols)
        codeword = rx - error_word(code, symbols)
        if verify_membership:
            with Timer() as timer:
                member = is_codeword(code, codeword)
            timings["membership"] = timer.elapsed_ms
            if not member:
                raise DecodingFailure(FailureReason.NOT_A_CODEWORD.value, "corrected word is not in the code")

    except DecodingFailure as e:
        logger.warning(f"Decoding failure: {e}")
        return DecodeOutcome(
            success=False,
            view=view,
            syndromes=synd,
            locator=locator,
            reason=FailureReason(e.reason),
            detail=e.detail,
        )

    logger.info(f"Decoded {error.epsilon} burst positions, {error.symbol_errors} symbol errors")
    return DecodeOutcome(
        success=True,
        view=view,
        syndromes=synd,
        locator=locator,
        codeword=codeword,
        error=error,
    )

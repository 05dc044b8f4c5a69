"""Decoding pipeline: certificate resolution, staged decoding and transcript assembly."""

import sys
import os
import logging
import uuid
from dataclasses import replace
from random import Random
from typing import Optional, Tuple

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.code import QcCode, ReceivedWord
from common.errors import PreconditionError, UsageError
from common.metrics import Timer, get_collector
from common.models import CertificateFile, DecodeTranscript, PositionSymbols
from apps.analysis.services.bound import BoundCertificate, verify_certificate
from apps.analysis.services.spectral import coordinates_independent
from apps.decoding.config import settings
from apps.decoding.services.decoder import DecodeOutcome, decode

logger = logging.getLogger(__name__)


def resolve_certificate(code: QcCode, cert_file: CertificateFile, seed: Optional[int] = None) -> BoundCertificate:
    """Verify the file's parameters and attach its witness when one is given."""
    rng = Random(settings.seed if seed is None else seed)
    cert = verify_certificate(code, cert_file.f, cert_file.z, cert_file.delta, cert_file.nu, rng=rng)
    if cert_file.witness is None:
        return cert

    spec = code.spec
    if len(cert_file.witness) != code.ell:
        raise UsageError(f"witness has {len(cert_file.witness)} entries, code has ell={code.ell}")
    witness = tuple(spec.from_coordinates(c) for c in cert_file.witness)
    for row in cert.intersection.constraints:
        acc = 0
        for a, b in zip(row, witness):
            acc = spec.add(acc, spec.mul(a, b))
        if acc:
            raise PreconditionError("witness is not in the eigenspace intersection")
    if not coordinates_independent(witness, spec):
        raise PreconditionError(f"witness entries are not linearly independent over GF({spec.p})")
    return replace(cert, witness=witness)


class DecodingPipeline:
    """Main decoding pipeline."""

    def __init__(self):
        self.metrics = get_collector("decoding")

    def decode(self, code: QcCode, cert: BoundCertificate, rx: ReceivedWord) -> Tuple[DecodeOutcome, DecodeTranscript]:
        """Decode one received word and build its transcript."""
        run_id = str(uuid.uuid4())
        timings = {}

        try:
            with Timer() as timer:
                outcome = decode(code, cert, rx, timings=timings)
            for stage, elapsed in timings.items():
                self.metrics.record_stage(run_id, stage, elapsed)
            self.metrics.record(run_id, timer.elapsed_ms, success=outcome.success,
                                error=outcome.reason.value if outcome.reason else None)
            return outcome, self.transcript(code, outcome)

        except Exception as e:
            logger.error(f"Decoding error: {e}")
            raise

    @staticmethod
    def transcript(code: QcCode, outcome: DecodeOutcome) -> DecodeTranscript:
        spec = code.spec
        view = outcome.view
        errors = []
        if outcome.error is not None:
            errors = [
                PositionSymbols(
                    position=j,
                    value=spec.format(outcome.error.big_values[j]),
                    symbols=list(outcome.error.symbols[j]),
                )
                for j in outcome.error.positions
            ]
        return DecodeTranscript(
            status="SUCCESS" if outcome.success else "FAILURE",
            reason=outcome.reason.value if outcome.reason else None,
            detail=outcome.detail or None,
            swapped=view.swapped,
            f=view.f,
            z=view.z,
            delta=view.delta,
            nu=view.nu,
            tau=view.tau,
            syndromes=[[spec.format(x) for x in seq] for seq in outcome.syndromes.values],
            locator=[spec.format(c) for c in outcome.locator.coeffs] if outcome.locator else [],
            positions=list(outcome.error.positions) if outcome.error else [],
            errors=errors,
            symbol_errors=outcome.error.symbol_errors if outcome.error else 0,
            codeword=outcome.codeword.to_lists(code.m) if outcome.codeword else None,
        )

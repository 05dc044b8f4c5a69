"""Analysis pipeline: spectrum, certificate search and report assembly."""

import sys
import os
import logging
import uuid
from random import Random
from typing import Optional

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.code import QcCode
from common.errors import NoBoundError
from common.metrics import Timer, get_collector
from common.models import (
    AnalysisReport,
    BoundReport,
    BoundRow,
    CertificateFile,
    CertificateReport,
    EigenvalueRow,
)
from apps.analysis.config import settings
from apps.analysis.services.bound import BoundCertificate, best_bound_per_nu, verify_certificate
from apps.analysis.services.spectral import INFINITE, Spectrum

logger = logging.getLogger(__name__)


def certificate_report(code: QcCode, cert: BoundCertificate) -> CertificateReport:
    spec = code.spec
    return CertificateReport(
        f=cert.f,
        z=cert.z,
        delta=cert.delta,
        nu=cert.nu,
        exponents=list(cert.exponents),
        intersection_dim=cert.intersection.dim,
        dec="inf" if cert.dec == INFINITE else int(cert.dec),
        dec_exact=cert.dec_exact,
        dstar=cert.dstar,
        witness=[spec.format(x) for x in cert.witness] if cert.witness else None,
    )


def certificate_file(code: QcCode, cert: BoundCertificate) -> CertificateFile:
    """Serializable form of a certificate, consumed by `decode --cert`."""
    witness = None
    if cert.witness is not None:
        witness = [code.spec.coordinates(x) for x in cert.witness]
    return CertificateFile(f=cert.f, z=cert.z, delta=cert.delta, nu=cert.nu, witness=witness)


class AnalysisPipeline:
    """Main analysis pipeline."""

    def __init__(self, seed: Optional[int] = None):
        self.seed = settings.seed if seed is None else seed
        self.metrics = get_collector("analysis")

    def analyze(self, code: QcCode, max_nu: Optional[int] = None) -> AnalysisReport:
        """Eigenvalue table, best certificate per nu and the overall d*."""
        if max_nu is None:
            max_nu = settings.max_nu
        run_id = str(uuid.uuid4())
        rng = Random(self.seed)

        try:
            with Timer() as spectrum_timer:
                spectrum = Spectrum(code)
            self.metrics.record_stage(run_id, "spectrum", spectrum_timer.elapsed_ms, eigenvalues=len(spectrum.eigenvalues))

            with Timer() as search_timer:
                table = best_bound_per_nu(code, max_nu, spectrum=spectrum, rng=rng)
            self.metrics.record_stage(run_id, "bound_search", search_timer.elapsed_ms, max_nu=max_nu)

            found = [c for c in table if c is not None]
            if not found:
                raise NoBoundError("no bound above trivial: no certificate with delta > 2")
            best = min(found, key=lambda c: c.key)
            logger.info(f"Best bound d* = {best.dstar} (f={best.f}, z={best.z}, delta={best.delta}, nu={best.nu})")

            return AnalysisReport(
                p=code.spec.p,
                r=code.spec.r,
                m=code.m,
                ell=code.ell,
                length=code.n,
                dimension=code.k,
                eigenvalues=[
                    EigenvalueRow(
                        exponent=ev.exponent,
                        algebraic_mult=ev.algebraic_mult,
                        geometric_mult=ev.geometric_mult,
                    )
                    for ev in spectrum.eigenvalues
                ],
                bounds=[
                    BoundRow(
                        nu=nu,
                        dstar=cert.dstar if cert else None,
                        certificate=certificate_report(code, cert) if cert else None,
                    )
                    for nu, cert in enumerate(table)
                ],
                dstar=best.dstar,
                certificate=certificate_report(code, best),
            )

        except Exception as e:
            logger.error(f"Analysis error: {e}")
            raise

    def certify(self, code: QcCode, f: int, z: int, delta: int, nu: int) -> BoundCertificate:
        """Verify explicit certificate parameters."""
        try:
            return verify_certificate(code, f, z, delta, nu, rng=Random(self.seed))
        except Exception as e:
            logger.error(f"Certificate error: {e}")
            raise

    def bound_report(self, code: QcCode, cert: BoundCertificate) -> BoundReport:
        return BoundReport(
            length=code.n,
            dimension=code.k,
            certificate=certificate_report(code, cert),
            spot_check_samples=settings.spot_check_samples,
        )

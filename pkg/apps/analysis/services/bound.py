"""Certificate verification and search for the d* = min(delta + nu, d_ec) distance bound."""

import sys
import os
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from random import Random
from typing import List, Optional, Tuple, Union

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.code import QcCode, random_codeword
from common.errors import NoBoundError, NotACertificateError, UsageError
from common.field import to_list
from common.utils import units_mod
from apps.analysis.config import settings
from apps.analysis.services.spectral import (
    INFINITE,
    Eigenspace,
    Spectrum,
    Vector,
    independent_witness,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundCertificate:
    """Parameters (f, z, delta, nu) together with the evidence that d >= dstar."""

    f: int
    z: int
    delta: int
    nu: int
    exponents: Tuple[int, ...]
    intersection: Eigenspace
    dec: Union[int, float]
    dstar: int
    witness: Optional[Vector] = None
    dec_exact: bool = True

    @property
    def has_witness(self) -> bool:
        return self.witness is not None

    @property
    def key(self) -> Tuple[int, int, int, int]:
        """Ordering used to pick among certificates: larger dstar, then smaller nu, z, f."""
        return (-self.dstar, self.nu, self.z, self.f)


def exponent_set(f: int, z: int, delta: int, nu: int, m: int) -> List[int]:
    """D = {f + j + i z mod m : i in [0, delta-1), j in [0, nu+1)}, sorted."""
    return sorted({(f + j + i * z) % m for i in range(delta - 1) for j in range(nu + 1)})


def dstar_of(delta: int, nu: int, dec: Union[int, float]) -> int:
    if dec == INFINITE:
        return delta + nu
    return min(delta + nu, int(dec))


def _check_parameters(m: int, z: int, delta: int, nu: int) -> None:
    if delta <= 2:
        raise UsageError(f"delta={delta} must exceed 2")
    if nu < 0:
        raise UsageError(f"nu={nu} must be non-negative")
    if gcd(z, m) != 1:
        raise UsageError(f"z={z} is not a unit modulo m={m}")


def spot_check(code: QcCode, cert: BoundCertificate, samples: int, rng: Random) -> bool:
    """sum_t c_t(alpha^{f+zi+j}) v_t vanishes for i in [0, delta-1) on random codewords."""
    spec = code.spec
    points = spec.alpha_array(
        [cert.f + cert.z * i + j for j in range(cert.nu + 1) for i in range(cert.delta - 1)]
    )
    eigenvectors = spec.array(cert.intersection.basis)
    for _ in range(samples):
        c = random_codeword(code, rng)
        values = spec.array([to_list(comp.evaluate_at(points, spec)) for comp in c.components])
        if np.any((eigenvectors @ values).view(np.ndarray)):
            return False
    return True


def verify_certificate(
    code: QcCode,
    f: int,
    z: int,
    delta: int,
    nu: int,
    spectrum: Optional[Spectrum] = None,
    rng: Optional[Random] = None,
    samples: Optional[int] = None,
) -> BoundCertificate:
    """Build D, check it against the spectrum and return the certificate with its dstar."""
    m = code.m
    _check_parameters(m, z, delta, nu)
    f, z = f % m, z % m
    if spectrum is None:
        spectrum = Spectrum(code)
    if rng is None:
        rng = Random(settings.seed)
    if samples is None:
        samples = settings.spot_check_samples

    exponents = exponent_set(f, z, delta, nu, m)
    missing = [e for e in exponents if e not in spectrum.exponents]
    if missing:
        raise NotACertificateError(f"exponent {missing[0]} in D is not an eigenvalue exponent")
    if delta - 1 > m:
        raise NotACertificateError(f"delta - 1 = {delta - 1} exceeds m = {m}")

    space = spectrum.intersection(exponents)
    if space.dim == 0:
        raise NotACertificateError(f"eigenspace intersection over D={exponents} is zero")

    info = spectrum.eigencode(space)
    witness = independent_witness(space, code.spec, rng=rng)
    if witness is None:
        logger.warning(f"Certificate (f={f}, z={z}, delta={delta}, nu={nu}) has no independent witness")

    cert = BoundCertificate(
        f=f,
        z=z,
        delta=delta,
        nu=nu,
        exponents=tuple(exponents),
        intersection=space,
        dec=info.dec,
        dstar=dstar_of(delta, nu, info.dec),
        witness=witness,
        dec_exact=info.exact,
    )
    if samples and not spot_check(code, cert, samples, rng):
        logger.error(f"Spectral zero check failed for (f={f}, z={z}, delta={delta}, nu={nu})")
        raise NotACertificateError("random codeword violates the spectral zero condition")
    return cert


@dataclass(frozen=True)
class _Cell:
    f: int
    z: int
    nu: int
    delta: int
    dstar: int

    @property
    def key(self) -> Tuple[int, int, int, int]:
        return (-self.dstar, self.nu, self.z, self.f)


def _best_in_cell(spectrum: Spectrum, f: int, z: int, nu: int) -> Optional[_Cell]:
    """Grow delta from 3 while D stays inside the spectrum and the intersection is nonzero.

    Keeps the largest delta reaching the cell's best dstar.
    """
    m = spectrum.code.m
    best: Optional[_Cell] = None
    exponents = {(f + j) % m for j in range(nu + 1)}
    if not exponents <= spectrum.exponents:
        return None
    delta = 2
    while delta - 1 < m:
        delta += 1
        row = {(f + j + (delta - 2) * z) % m for j in range(nu + 1)}
        if not row <= spectrum.exponents:
            break
        exponents |= row
        space = spectrum.intersection(exponents)
        if space.dim == 0:
            break
        dstar = dstar_of(delta, nu, spectrum.eigencode(space).dec)
        if best is None or dstar >= best.dstar:
            best = _Cell(f, z, nu, delta, dstar)
    return best


def _search_nu(spectrum: Spectrum, nu: int, workers: int) -> Optional[_Cell]:
    m = spectrum.code.m
    zs = units_mod(m)

    def scan(f: int) -> Optional[_Cell]:
        cells = [c for c in (_best_in_cell(spectrum, f, z, nu) for z in zs) if c is not None]
        return min(cells, key=lambda c: c.key) if cells else None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(scan, range(m)))
    else:
        found = [scan(f) for f in range(m)]
    cells = [c for c in found if c is not None]
    return min(cells, key=lambda c: c.key) if cells else None


def best_bound_per_nu(
    code: QcCode,
    max_nu: int,
    spectrum: Optional[Spectrum] = None,
    rng: Optional[Random] = None,
    workers: Optional[int] = None,
) -> List[Optional[BoundCertificate]]:
    """Best certificate for each fixed nu in [0, max_nu]; None where no certificate exists."""
    if max_nu < 0:
        raise UsageError(f"max_nu={max_nu} must be non-negative")
    if spectrum is None:
        spectrum = Spectrum(code)
    if rng is None:
        rng = Random(settings.seed)
    if workers is None:
        workers = settings.bound_workers

    table: List[Optional[BoundCertificate]] = []
    for nu in range(max_nu + 1):
        cell = _search_nu(spectrum, nu, workers)
        if cell is None:
            logger.info(f"nu={nu}: no certificate with delta > 2")
            table.append(None)
            continue
        cert = verify_certificate(code, cell.f, cell.z, cell.delta, cell.nu, spectrum=spectrum, rng=rng)
        logger.info(f"nu={nu}: d* = {cert.dstar} via (f={cert.f}, z={cert.z}, delta={cert.delta})")
        table.append(cert)
    return table


def best_bound(
    code: QcCode,
    max_nu: int,
    spectrum: Optional[Spectrum] = None,
    rng: Optional[Random] = None,
    workers: Optional[int] = None,
) -> BoundCertificate:
    """Certificate maximizing dstar over nu <= max_nu; ties go to smaller nu, z, f."""
    table = best_bound_per_nu(code, max_nu, spectrum=spectrum, rng=rng, workers=workers)
    found = [c for c in table if c is not None]
    if not found:
        raise NoBoundError("no bound above trivial: no certificate with delta > 2")
    return min(found, key=lambda c: c.key)


def semenov_trifonov_bound(code: QcCode, spectrum: Optional[Spectrum] = None) -> Optional[Tuple[int, int, int, int]]:
    """Best (dstar, f, z, delta) from runs f, f+z, f+2z, ... of eigenvalue exponents.

    Walks each orbit of alpha^z directly instead of growing delta per cell.
    """
    if spectrum is None:
        spectrum = Spectrum(code)
    m = code.m
    best: Optional[Tuple[int, int, int, int]] = None
    for z in units_mod(m):
        for f in range(m):
            run: List[int] = []
            for i in range(m):
                e = (f + i * z) % m
                if e not in spectrum.exponents:
                    break
                run.append(e)
            for length in range(2, len(run) + 1):
                space = spectrum.intersection(run[:length])
                if space.dim == 0:
                    break
                delta = length + 1
                dstar = dstar_of(delta, 0, spectrum.eigencode(space).dec)
                candidate = (dstar, f, z, delta)
                if best is None or (-dstar, z, f) < (-best[0], best[2], best[1]):
                    best = candidate
    return best

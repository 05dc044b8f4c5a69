"""CLI command handlers: file loading and one function per subcommand."""

import sys
import os
import json
import logging
from random import Random
from typing import Any, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.code import CodewordVec, GroebnerMatrix, QcCode, encode, validate
from common.errors import UsageError
from common.field import FieldSpec
from common.models import (
    AnalysisReport,
    BoundReport,
    CertificateFile,
    CodeDefinitionFile,
    CodewordFile,
    DecodeTranscript,
    MinDistanceReport,
    WordFile,
)
from common.poly import Poly
from common.utils import from_flat
from apps.cli.config import settings
from apps.analysis.services.pipeline import AnalysisPipeline, certificate_file
from apps.decoding.services.pipeline import DecodingPipeline, resolve_certificate
from apps.oracle.services.oracle import min_distance_exhaustive, sample_min_weight

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


# ============================================================================
# File loading
# ============================================================================


def load_model(path: str, model: Type[ModelT]) -> ModelT:
    """Parse a UTF-8 JSON file into a model; every failure becomes a UsageError."""
    try:
        with open(path, encoding="utf-8") as fh:
            data: Any = json.load(fh)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(x) for x in first["loc"]) or "<root>"
        raise UsageError(f"{path}: {location}: {first['msg']}")


def write_model(path: str, model: BaseModel) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(model.model_dump(), indent=settings.report_indent))
        fh.write("\n")
    logger.info(f"Wrote {path}")


def build_code(definition: CodeDefinitionFile) -> QcCode:
    spec = FieldSpec.create(
        definition.p,
        definition.m,
        r=definition.r,
        modulus=definition.modulus,
        alpha=definition.alpha,
        table_limit=settings.table_limit,
    )
    for row in definition.generators:
        for coeffs in row:
            if any(c < 0 or c >= definition.p for c in coeffs):
                raise UsageError(f"generator coefficients must lie in [0, {definition.p})")
    basis = GroebnerMatrix.from_lists(spec.base, definition.m, definition.generators)
    return validate(basis, spec)


def load_code(path: str) -> QcCode:
    return build_code(load_model(path, CodeDefinitionFile))


def word_from_file(code: QcCode, word: WordFile) -> CodewordVec:
    """Received words and codewords: degrees below m, components consistent with flat."""
    if word.components is not None:
        if len(word.components) != code.ell:
            raise UsageError(f"word has {len(word.components)} components, code has ell={code.ell}")
        result = CodewordVec.from_lists(code.field, word.components, code.m)
        if word.flat is not None and list(word.flat) != result.flat(code.m):
            raise UsageError("'components' and 'flat' describe different words")
        return result
    return CodewordVec.from_flat(code.field, word.flat, code.ell, code.m)


def message_from_file(code: QcCode, word: WordFile) -> list:
    """Messages may have any degree; they are reduced modulo X^m - 1 by encode."""
    if word.components is not None:
        components = word.components
    else:
        try:
            components = from_flat(word.flat, code.ell, code.m)
        except ValueError as e:
            raise UsageError(str(e))
    if len(components) != code.ell:
        raise UsageError(f"message has {len(components)} components, code has ell={code.ell}")
    for coeffs in components:
        if any(c < 0 or c >= code.spec.p for c in coeffs):
            raise UsageError(f"message coefficients must lie in [0, {code.spec.p})")
    return [Poly.make(code.field, coeffs) for coeffs in components]


# ============================================================================
# Commands
# ============================================================================


def cmd_analyze(
    code_path: str, max_nu: Optional[int] = None, seed: Optional[int] = None, cert_out: Optional[str] = None
) -> AnalysisReport:
    """Parameters, eigenvalue table, best certificate per nu and the overall d*."""
    code = load_code(code_path)
    pipeline = AnalysisPipeline(seed=seed)
    report = pipeline.analyze(code, max_nu=max_nu)
    if cert_out:
        cert = pipeline.certify(code, report.certificate.f, report.certificate.z,
                                report.certificate.delta, report.certificate.nu)
        write_model(cert_out, certificate_file(code, cert))
    return report


def cmd_bound(
    code_path: str,
    f: Optional[int] = None,
    z: Optional[int] = None,
    delta: Optional[int] = None,
    nu: Optional[int] = None,
    cert_path: Optional[str] = None,
    seed: Optional[int] = None,
    cert_out: Optional[str] = None,
) -> BoundReport:
    """Verify explicit certificate parameters, given as flags or as a certificate file."""
    code = load_code(code_path)
    if cert_path:
        params = load_model(cert_path, CertificateFile)
        f, z, delta, nu = params.f, params.z, params.delta, params.nu
    if None in (f, z, delta, nu):
        raise UsageError("bound needs --f, --z, --delta and --nu, or --cert")
    pipeline = AnalysisPipeline(seed=seed)
    cert = pipeline.certify(code, f, z, delta, nu)
    if cert_out:
        write_model(cert_out, certificate_file(code, cert))
    return pipeline.bound_report(code, cert)


def cmd_encode(code_path: str, message_path: str, out: Optional[str] = None) -> CodewordFile:
    code = load_code(code_path)
    message = message_from_file(code, load_model(message_path, WordFile))
    codeword = encode(code, message)
    result = CodewordFile(components=codeword.to_lists(code.m), flat=codeword.flat(code.m))
    if out:
        write_model(out, result)
    return result


def cmd_decode(code_path: str, cert_path: str, rx_path: str, seed: Optional[int] = None) -> Tuple[DecodeTranscript, int]:
    """Transcript plus exit code: 0 on success, 3 on decoding failure."""
    code = load_code(code_path)
    cert = resolve_certificate(code, load_model(cert_path, CertificateFile), seed=seed)
    rx = word_from_file(code, load_model(rx_path, WordFile))
    outcome, transcript = DecodingPipeline().decode(code, cert, rx)
    return transcript, 0 if outcome.success else 3


def cmd_mindist(
    code_path: str, method: str = "brute", samples: Optional[int] = None, seed: Optional[int] = None
) -> MinDistanceReport:
    code = load_code(code_path)
    if method == "brute":
        distance = min_distance_exhaustive(code)
        return MinDistanceReport(
            method=method, distance=distance, guaranteed=True, codewords_examined=code.spec.p**code.k
        )
    if method == "sample":
        rng = Random(settings.seed if seed is None else seed)
        distance, examined = sample_min_weight(code, samples=samples, rng=rng)
        return MinDistanceReport(
            method=method,
            distance=distance,
            guaranteed=False,
            codewords_examined=examined,
            advisory=f"upper bound d <= {distance} from {examined} random codewords; not guaranteed",
        )
    raise UsageError(f"unknown method {method!r}; expected 'brute' or 'sample'")

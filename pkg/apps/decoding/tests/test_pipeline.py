"""Decoding pipeline tests."""

import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", ".."))

import json

import pytest

from common.code import CodewordVec
from common.errors import DecodingFailure, PreconditionError, UsageError
from common.models import CertificateFile, WordFile
from apps.decoding.services.pipeline import DecodingPipeline, resolve_certificate


def _load(path, model):
    with open(path, encoding="utf-8") as fh:
        return model.model_validate(json.load(fh))


@pytest.fixture
def example_cert_file(data_dir):
    return _load(os.path.join(data_dir, "qc126_cert.json"), CertificateFile)


@pytest.fixture
def example_rx(qc126, data_dir):
    word = _load(os.path.join(data_dir, "qc126_rx.json"), WordFile)
    return CodewordVec.from_lists(qc126.field, word.components, qc126.m)


class TestResolveCertificate:
    """Test certificate files with and without witnesses."""

    def test_file_witness(self, qc126, example_cert_file):
        spec = qc126.spec
        cert = resolve_certificate(qc126, example_cert_file)
        assert cert.witness == (1, spec.alpha_pow(35))
        assert cert.dstar == 5

    def test_derived_witness(self, qc126):
        cert = resolve_certificate(qc126, CertificateFile(f=0, z=4, delta=4, nu=1))
        assert cert.witness == (1, qc126.spec.alpha_pow(35))

    def test_witness_outside_intersection(self, qc126):
        bad = CertificateFile(f=0, z=4, delta=4, nu=1, witness=[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
        with pytest.raises(PreconditionError, match="intersection"):
            resolve_certificate(qc126, bad)

    def test_dependent_witness(self, qc126):
        bad = CertificateFile(f=0, z=1, delta=4, nu=0, witness=[[1, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]])
        with pytest.raises(PreconditionError, match="independent"):
            resolve_certificate(qc126, bad)

    def test_witness_length(self, qc126):
        bad = CertificateFile(f=0, z=4, delta=4, nu=1, witness=[[1, 0, 0, 0, 0, 0]])
        with pytest.raises(UsageError):
            resolve_certificate(qc126, bad)


class TestDecodingPipeline:
    """Test transcripts."""

    def test_example_transcript(self, qc126, example_cert_file, example_rx):
        cert = resolve_certificate(qc126, example_cert_file)
        outcome, transcript = DecodingPipeline().decode(qc126, cert, example_rx)
        assert outcome.success
        assert transcript.status == "SUCCESS"
        assert transcript.tau == 2
        assert transcript.syndromes == [["a^35", "a^26", "a^7"], ["a^45", "a^33", "a^51"]]
        assert transcript.locator == ["a^0", "a^49", "a^2"]
        assert transcript.positions == [0, 32]
        assert [(e.position, e.value, e.symbols) for e in transcript.errors] == [
            (0, "a^0", [1, 0]),
            (32, "a^4", [1, 1]),
        ]
        assert transcript.symbol_errors == 3
        assert transcript.codeword == [[0] * 63, [0] * 63]

    def test_failure_transcript(self, qc126, example_cert_file, example_rx, mocker):
        """Test a failed stage is reported with its reason and no codeword."""
        cert = resolve_certificate(qc126, example_cert_file)
        mocker.patch(
            "apps.decoding.services.decoder.solve_key_equations",
            side_effect=DecodingFailure("LOCATOR_NOT_FOUND", "no consistent locator of degree <= 2"),
        )
        pipeline = DecodingPipeline()
        record = mocker.spy(pipeline.metrics, "record")
        outcome, transcript = pipeline.decode(qc126, cert, example_rx)
        assert not outcome.success
        assert transcript.status == "FAILURE"
        assert transcript.reason == "LOCATOR_NOT_FOUND"
        assert transcript.locator == []
        assert transcript.codeword is None
        assert record.call_args.kwargs["error"] == "LOCATOR_NOT_FOUND"

"""Shared fixtures: the bundled [126,100] code and small binary codes."""

import os
import sys
from random import Random

import pytest

ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT)

from common.code import GroebnerMatrix, validate
from common.field import FieldSpec


# X^6 + X^4 + X^3 + X + 1
GF64_MODULUS = [1, 1, 0, 1, 1, 0, 1]
# X^4 + X + 1
GF16_MODULUS = [1, 1, 0, 0, 1]

# g00 = m0 m1 m9, g01 = g00 (X^4+X^3+X^2+X+1), g11 = g00 m5 over GF(64), m = 63
QC126_G00 = [1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 1]
QC126_G01 = [1, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1]
QC126_G11 = [1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1]

# m = 15: m1 m3, X m1 m3, m1 m3 m5
BCH15_G = [1, 0, 0, 0, 1, 0, 1, 1, 1]
QC15_G01 = [0, 1, 0, 0, 0, 1, 0, 1, 1, 1]
QC15_G11 = [1, 1, 1, 0, 1, 1, 0, 0, 1, 0, 1]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running sampling checks (deselect with -m \"not slow\")")


def build_code(spec, generators):
    return validate(GroebnerMatrix.from_lists(spec.base, spec.m, generators), spec)


@pytest.fixture(scope="session")
def gf64():
    """GF(2^6) with alpha = X of order 63."""
    return FieldSpec.create(2, 63, modulus=GF64_MODULUS)


@pytest.fixture(scope="session")
def gf16():
    """GF(2^4) with alpha = X of order 15."""
    return FieldSpec.create(2, 15, modulus=GF16_MODULUS)


@pytest.fixture(scope="session")
def qc126_generators():
    return [[QC126_G00, QC126_G01], [[], QC126_G11]]


@pytest.fixture(scope="session")
def qc126(gf64, qc126_generators):
    """The [126, 100] binary 2-quasi-cyclic code."""
    return build_code(gf64, qc126_generators)


@pytest.fixture(scope="session")
def bch15(gf16):
    """Binary [15, 7, 5] BCH code, ell = 1."""
    return build_code(gf16, [[BCH15_G]])


@pytest.fixture(scope="session")
def qc15(gf16):
    """Binary [30, 12, 7] 2-quasi-cyclic code."""
    return build_code(gf16, [[BCH15_G, QC15_G01], [[], QC15_G11]])


@pytest.fixture
def rng():
    """Seeded generator for reproducible property tests."""
    return Random(20240617)


@pytest.fixture(scope="session")
def data_dir():
    return os.path.join(ROOT, "data")

"""Tests for quasi-cyclic code validation, encoding and membership."""

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common import linalg
from common.code import (
    CodewordVec,
    GroebnerMatrix,
    encode,
    generator_rows,
    is_codeword,
    random_codeword,
    shift,
    validate,
)
from common.errors import InvalidCodeError, UsageError
from common.field import FieldSpec
from common.poly import Poly

H7 = [1, 1, 0, 1]  # X^3 + X + 1
X7_MINUS_1 = [1, 0, 0, 0, 0, 0, 0, 1]


@pytest.fixture(scope="module")
def gf8():
    return FieldSpec.create(2, 7)


def _code(spec, generators):
    return validate(GroebnerMatrix.from_lists(spec.base, spec.m, generators), spec)


def _violations(spec, generators):
    with pytest.raises(InvalidCodeError) as exc:
        _code(spec, generators)
    return {v.condition for v in exc.value.violations}


class TestValidate:
    """Test the reduced Gröbner-basis conditions."""

    def test_example_dimension(self, qc126):
        """Test k = 2*63 - 10 - 16 = 100 and closure."""
        assert qc126.n == 126
        assert qc126.k == 100
        assert qc126.closed

    def test_small_dimensions(self, bch15, qc15):
        assert (bch15.n, bch15.k) == (15, 7)
        assert (qc15.n, qc15.k) == (30, 12)

    def test_lower_entry(self, gf8):
        """Test a nonzero entry below the diagonal violates condition 1."""
        assert 1 in _violations(gf8, [[H7, []], [[1], H7]])

    def test_column_degree(self, gf8):
        """Test deg g_{0,1} >= deg g_{1,1} violates condition 2."""
        assert _violations(gf8, [[H7, [1, 0, 0, 1]], [[], H7]]) == {2}

    def test_diagonal_divides(self, gf8):
        """Test a diagonal entry not dividing X^7 - 1 violates condition 3."""
        assert _violations(gf8, [[[1, 1, 1], []], [[], H7]]) == {3}

    def test_zero_diagonal(self, gf8):
        """Test a zero diagonal entry violates condition 3."""
        assert 3 in _violations(gf8, [[[], []], [[], H7]])

    def test_full_row(self, gf8):
        """Test g_{0,0} = X^7 - 1 with g_{0,1} != 0 violates condition 4."""
        assert _violations(gf8, [[X7_MINUS_1, [1]], [[], H7]]) == {4}

    def test_full_row_without_entries(self, gf8):
        """Test g_{0,0} = X^7 - 1 contributes nothing to k."""
        code = _code(gf8, [[X7_MINUS_1, []], [[], H7]])
        assert code.k == 4

    def test_error_message_names_entry(self, gf8):
        with pytest.raises(InvalidCodeError, match="does not divide"):
            _code(gf8, [[[1, 1, 1]]])

    def test_non_square(self, gf8):
        with pytest.raises(UsageError):
            GroebnerMatrix.from_lists(gf8.base, 7, [[H7, []]])

    def test_unclosed_rows(self, gf8):
        """Test rows whose module closure escapes the diagonal are flagged and handled by linear algebra."""
        code = _code(gf8, [[[1, 1], [1]], [[], X7_MINUS_1]])
        assert not code.closed
        all_ones = CodewordVec.from_lists(gf8.base, [[], [1] * 7], 7)
        assert is_codeword(code, all_ones)
        assert is_codeword(code, encode(code, [Poly.make(gf8.base, [1]), Poly(gf8.base)]))


class TestEncode:
    """Test polynomial encoding."""

    def test_first_row(self, qc126, qc126_generators):
        """Test message (1, 0) encodes to the first generator row."""
        F = qc126.field
        c = encode(qc126, [Poly.make(F, [1]), Poly(F)])
        assert c.to_lists(63)[0] == Poly.make(F, qc126_generators[0][0]).padded(63)
        assert c.to_lists(63)[1] == Poly.make(F, qc126_generators[0][1]).padded(63)

    def test_zero_message(self, qc126):
        F = qc126.field
        assert encode(qc126, [Poly(F), Poly(F)]).is_zero()

    def test_message_length(self, qc126):
        with pytest.raises(UsageError):
            encode(qc126, [Poly(qc126.field)])

    def test_codewords_are_members(self, qc126, rng):
        for _ in range(20):
            assert is_codeword(qc126, random_codeword(qc126, rng))


class TestMembership:
    """Test membership and quasi-cyclic closure."""

    def test_weight_one_is_not_codeword(self, qc126):
        """Test a single error is detected (d > 1)."""
        F = qc126.field
        e = CodewordVec((Poly.make(F, [0, 0, 1]), Poly(F)))
        assert not is_codeword(qc126, e)

    def test_shift_closure(self, qc126, rng):
        """Test shifts of codewords stay in the code."""
        c = random_codeword(qc126, rng)
        for _ in range(5):
            c = shift(c, 63)
            assert is_codeword(qc126, c)

    def test_shift_period(self, qc15, rng):
        """Test m shifts return the original word."""
        c = random_codeword(qc15, rng)
        d = c
        for _ in range(15):
            d = shift(d, 15)
        assert d == c

    def test_linearity(self, qc15, rng):
        a, b = random_codeword(qc15, rng), random_codeword(qc15, rng)
        assert is_codeword(qc15, a + b)
        assert is_codeword(qc15, a - b)

    def test_gf_rank_equals_k(self, bch15, qc15):
        """Test the shifted generator rows span a space of dimension k."""
        for code in (bch15, qc15):
            assert linalg.rank(code.field, generator_rows(code)) == code.k
            assert len(code.gf_basis) == code.k

    def test_wrong_component_count(self, qc126):
        with pytest.raises(UsageError):
            is_codeword(qc126, CodewordVec.zero(qc126.field, 3))


class TestWords:
    """Test word construction from file-style lists."""

    def test_flat_round_trip(self, qc15, rng):
        c = random_codeword(qc15, rng)
        assert CodewordVec.from_flat(qc15.field, c.flat(15), 2, 15) == c

    def test_degree_too_large(self, qc15):
        with pytest.raises(UsageError):
            CodewordVec.from_lists(qc15.field, [[0] * 15 + [1], []], 15)

    def test_coefficient_out_of_range(self, qc15):
        with pytest.raises(UsageError):
            CodewordVec.from_lists(qc15.field, [[2], []], 15)

    def test_burst_positions(self, gf64):
        """Test burst weight counts positions, symbol weight counts coefficients."""
        F = gf64.base
        e = CodewordVec.from_lists(F, [[1] + [0] * 31 + [1], [0] * 32 + [1]], 63)
        assert e.burst_positions() == {0, 32}
        assert e.weight() == 3

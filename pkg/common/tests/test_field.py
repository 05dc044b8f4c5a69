"""Tests for GF(p) and GF(p^r) arithmetic."""

import galois
import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.errors import DomainError, FieldConfigError, UsageError
from common.field import (
    FieldElement,
    FieldSpec,
    PrimeField,
    alpha_pow,
    element,
    fe_add,
    fe_inv,
    fe_mul,
    first_irreducible,
    fq_coordinates,
    is_irreducible,
)


class TestPrimeField:
    """Test arithmetic modulo p."""

    def test_inverse(self):
        """Test a * a^-1 = 1 for every nonzero residue."""
        F = PrimeField(7)
        assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, 7))

    def test_inverse_of_zero(self):
        """Test inverse of zero is a domain error."""
        with pytest.raises(DomainError):
            PrimeField(5).inv(0)

    def test_rejects_composite(self):
        """Test p must be prime."""
        with pytest.raises(FieldConfigError):
            PrimeField(9)


class TestIrreducibility:
    """Test modulus validation helpers."""

    def test_known_polynomials(self):
        """Test irreducibility of textbook moduli."""
        assert is_irreducible([1, 1, 0, 1, 1, 0, 1], 2)
        assert is_irreducible([1, 1, 0, 0, 1], 2)
        assert not is_irreducible([1, 0, 0, 0, 1], 2)  # (X+1)^4
        assert not is_irreducible([1, 0, 1], 2)  # (X+1)^2

    def test_first_irreducible(self):
        """Test the default modulus is the lexicographically first irreducible."""
        assert first_irreducible(2, 4) == [1, 1, 0, 0, 1]
        assert first_irreducible(2, 3) == [1, 1, 0, 1]
        assert first_irreducible(3, 2) == [1, 0, 1]


class TestFieldSpec:
    """Test field construction and validation."""

    def test_example_field(self, gf64):
        """Test GF(64) with alpha = X of order 63."""
        assert gf64.r == 6
        assert gf64.coordinates(gf64.alpha) == [0, 1, 0, 0, 0, 0]
        assert gf64.alpha_pow(63) == 1
        assert all(gf64.alpha_pow(t) != 1 for t in range(1, 63))

    def test_default_degree(self):
        """Test r defaults to the multiplicative order of p modulo m."""
        assert FieldSpec.create(2, 21).r == 6
        assert FieldSpec.create(2, 7).r == 3
        assert FieldSpec.create(3, 4).r == 2

    def test_alpha_of_smaller_order(self):
        """Test alpha has order m when m is a proper divisor of p^r - 1."""
        spec = FieldSpec.create(2, 9)
        assert spec.r == 6
        assert spec.alpha_pow(9) == 1
        assert all(spec.alpha_pow(t) != 1 for t in range(1, 9))

    def test_reducible_modulus(self):
        """Test a reducible modulus is rejected."""
        with pytest.raises(FieldConfigError):
            FieldSpec(2, 4, [1, 0, 0, 0, 1], 15)

    def test_repeated_root_case(self):
        """Test gcd(m, p) != 1 is rejected."""
        with pytest.raises(FieldConfigError):
            FieldSpec.create(2, 6)

    def test_m_must_divide_order(self):
        """Test m | p^r - 1."""
        with pytest.raises(FieldConfigError):
            FieldSpec(2, 4, [1, 1, 0, 0, 1], 7)

    def test_bad_alpha(self):
        """Test an explicit alpha of the wrong order is rejected."""
        with pytest.raises(FieldConfigError):
            FieldSpec(2, 4, [1, 1, 0, 0, 1], 5, alpha=[0, 1])

    def test_explicit_alpha(self):
        """Test an explicit alpha of the right order is kept."""
        spec = FieldSpec(2, 4, [1, 1, 0, 0, 1], 5, alpha=[0, 0, 0, 1])  # X^3 has order 5
        assert spec.coordinates(spec.alpha) == [0, 0, 0, 1]

    def test_compile_mode_follows_table_limit(self):
        """Test fields above the table limit are computed without lookup tables."""
        slow = FieldSpec(3, 3, [1, 2, 0, 1], 26, table_limit=1)
        assert slow.GF.ufunc_mode == "jit-calculate"
        assert all(slow.mul(a, slow.inv(a)) == 1 for a in range(1, 27))
        fast = FieldSpec(3, 3, [1, 2, 0, 1], 26)
        assert fast.GF.ufunc_mode == "jit-lookup"

    def test_backed_by_galois(self, gf64):
        """Test the integer protocol agrees with the galois field class."""
        GF = galois.GF(2**6, irreducible_poly=galois.Poly([1, 0, 1, 1, 0, 1, 1], field=galois.GF(2)))
        assert gf64.GF.irreducible_poly == galois.Poly.Int(0b1011011)
        a, b = 37, 52
        assert gf64.mul(a, b) == int(GF(a) * GF(b))
        assert gf64.inv(a) == int(GF(1) / GF(a))
        assert gf64.alpha == int(GF.primitive_element)

    def test_coordinate_array(self, gf64):
        """Test vectorized coordinates match the scalar form."""
        values = [0, 1, gf64.alpha_pow(35), gf64.alpha]
        rows = gf64.coordinate_array(values)
        assert type(rows) is gf64.base.GF
        assert rows.shape == (4, 6)
        assert [list(map(int, row)) for row in rows] == [gf64.coordinates(v) for v in values]

    def test_alpha_array(self, gf64):
        """Test exponent arrays are reduced modulo m."""
        powers = gf64.alpha_array([0, 1, 63, -1])
        assert [int(x) for x in powers] == [1, gf64.alpha, 1, gf64.alpha_pow(62)]


class TestFieldElement:
    """Test the element API."""

    def test_additive_identity(self, gf64):
        """Test a + 0 = a and a + a = 0 in characteristic 2."""
        a = element(gf64, [1, 0, 1, 1])
        zero = element(gf64, [])
        assert fe_add(a, zero) == a
        assert fe_add(a, a) == zero

    def test_exponent_reduction(self, gf64):
        """Test alpha^128 = alpha^2 and alpha^-1 = alpha^62."""
        assert alpha_pow(gf64, 128) == alpha_pow(gf64, 2)
        assert fe_inv(alpha_pow(gf64, 1)) == alpha_pow(gf64, 62)
        assert alpha_pow(gf64, -1) == alpha_pow(gf64, 62)
        assert alpha_pow(gf64, 0) == element(gf64, [1])

    def test_coordinates(self, gf64):
        """Test alpha^4 + 1 = alpha^35 and its coordinate vector."""
        v = fe_add(alpha_pow(gf64, 4), element(gf64, [1]))
        assert v == alpha_pow(gf64, 35)
        assert fq_coordinates(v) == [1, 0, 0, 0, 1, 0]
        assert fq_coordinates(element(gf64, [])) == [0] * 6
        assert fq_coordinates(element(gf64, [1])) == [1, 0, 0, 0, 0, 0]

    def test_formatting(self, gf64):
        """Test elements render as powers of alpha."""
        assert str(alpha_pow(gf64, 35)) == "a^35"
        assert str(element(gf64, [])) == "0"
        assert str(element(gf64, [1])) == "a^0"

    def test_mismatched_fields(self, gf64, gf16):
        """Test mixing elements of two fields is a usage error."""
        with pytest.raises(UsageError):
            fe_mul(alpha_pow(gf64, 1), alpha_pow(gf16, 1))

    def test_inverse_of_zero(self, gf64):
        """Test zero has no inverse."""
        with pytest.raises(DomainError):
            fe_inv(FieldElement(gf64, 0))

    def test_field_axioms_exhaustive(self, gf16):
        """Test associativity, distributivity and inverses over all of GF(16)."""
        elems = [FieldElement(gf16, v) for v in range(16)]
        one = FieldElement(gf16, 1)
        for a in elems:
            if a:
                assert a * fe_inv(a) == one
            for b in elems:
                assert a * b == b * a
                assert a + b == b + a
                for c in elems[::3]:
                    assert (a + b) + c == a + (b + c)
                    assert (a * b) * c == a * (b * c)
                    assert a * (b + c) == a * b + a * c

    def test_odd_characteristic(self):
        """Test subtraction and negation in GF(9)."""
        spec = FieldSpec.create(3, 8)
        for a in range(9):
            assert spec.add(a, spec.neg(a)) == 0
            for b in range(9):
                assert spec.add(spec.sub(a, b), b) == a

"""Tests for polynomial arithmetic, cyclotomic cosets and minimal polynomials."""

import galois
import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.errors import DomainError, UsageError
from common.field import FieldElement, PrimeField, alpha_pow
from common.poly import (
    Poly,
    cyclotomic_coset,
    cyclotomic_cosets,
    minimal_polynomial,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    root_multiplicity,
)

GF2 = PrimeField(2)
GF3 = PrimeField(3)


class TestPolyArithmetic:
    """Test ring operations."""

    def test_canonical_zero(self):
        """Test trailing zeros are stripped."""
        assert Poly.make(GF2, [0, 0, 0]).coeffs == ()
        assert Poly.make(GF2, [1, 0, 1, 0]).degree == 2
        assert Poly(GF2).degree == -1

    def test_gf2_product_matches_schoolbook(self, rng):
        """Test the GF(2) product against a schoolbook XOR product."""
        for _ in range(50):
            a = [rng.randrange(2) for _ in range(rng.randrange(1, 20))]
            b = [rng.randrange(2) for _ in range(rng.randrange(1, 20))]
            expected = [0] * (len(a) + len(b))
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    expected[i + j] ^= x & y
            assert (Poly.make(GF2, a) * Poly.make(GF2, b)) == Poly.make(GF2, expected)

    def test_divmod(self, rng):
        """Test f = q g + r with deg r < deg g."""
        for _ in range(30):
            f = Poly.make(GF3, [rng.randrange(3) for _ in range(12)])
            g = Poly.make(GF3, [rng.randrange(3) for _ in range(5)] + [2])
            q, r = poly_divmod(f, g)
            assert q * g + r == f
            assert r.degree < g.degree

    def test_product_mod_factor(self):
        """Test (f g) mod f = 0."""
        f = Poly.make(GF3, [1, 2, 0, 1])
        g = Poly.make(GF3, [2, 1, 1])
        assert (poly_mul(f, g) % f).is_zero()

    def test_division_by_zero(self):
        """Test division by the zero polynomial."""
        with pytest.raises(DomainError):
            poly_divmod(Poly.make(GF2, [1, 1]), Poly(GF2))

    def test_gcd(self):
        """Test gcd is monic and gcd(f, 0) = monic(f)."""
        f = Poly.make(GF3, [2, 0, 2])  # 2(X^2 + 1)
        assert poly_gcd(f, Poly(GF3)) == Poly.make(GF3, [1, 0, 1])
        a = Poly.make(GF3, [1, 1])
        b = Poly.make(GF3, [2, 1])
        assert poly_gcd(a * b, a * a) == a

    def test_mixed_fields(self):
        """Test operations across fields are rejected."""
        with pytest.raises(UsageError):
            Poly.make(GF2, [1]) + Poly.make(GF3, [1])

    def test_mod_xm1(self):
        """Test folding exponents modulo m."""
        f = Poly.make(GF2, [1] + [0] * 6 + [1, 1])  # 1 + X^7 + X^8
        assert f.mod_xm1(7) == Poly.make(GF2, [0, 1])


class TestEvaluation:
    """Test evaluation in the extension field."""

    def test_zero_polynomial(self, gf64):
        """Test eval(0, x) = 0."""
        assert poly_eval(Poly(GF2), alpha_pow(gf64, 5)) == FieldElement(gf64, 0)

    def test_x_m_minus_1_vanishes(self, gf64):
        """Test X^63 - 1 vanishes at alpha."""
        assert not poly_eval(Poly.x_m_minus_1(GF2, 63), alpha_pow(gf64, 1))

    def test_received_component_at_one(self, gf64):
        """Test 1 + X^32 vanishes at alpha^0 over GF(2)."""
        r0 = Poly.make(GF2, [1] + [0] * 31 + [1])
        assert not poly_eval(r0, alpha_pow(gf64, 0))

    def test_root_multiplicity(self, gf64):
        """Test multiplicities of roots of a product of minimal polynomials."""
        m1 = minimal_polynomial(1, gf64)
        f = m1 * m1 * minimal_polynomial(0, gf64)
        assert root_multiplicity(f, gf64, gf64.alpha_pow(2)) == 2
        assert root_multiplicity(f, gf64, gf64.alpha_pow(0)) == 1
        assert root_multiplicity(f, gf64, gf64.alpha_pow(3)) == 0

    def test_vectorized_evaluation(self, gf64):
        """Test evaluation on a field array matches pointwise evaluation."""
        f = minimal_polynomial(5, gf64) * Poly.make(GF2, [1, 1])
        points = gf64.alpha_array(range(63))
        values = f.evaluate_at(points, gf64)
        assert [int(v) for v in values] == [f.evaluate(gf64.alpha_pow(e), gf64) for e in range(63)]
        assert {e for e in range(63) if values[e] == 0} == {0} | set(cyclotomic_coset(5, 63, 2).members)

    def test_roots_in_extension(self, gf64):
        """Test the distinct roots of m_9 (X + 1) are alpha^0 and the coset of 9."""
        f = minimal_polynomial(9, gf64) * Poly.make(GF2, [1, 1])
        expected = sorted(gf64.alpha_pow(e) for e in (0, 9, 18, 36))
        assert f.roots(gf64) == expected

    def test_native_polynomial(self):
        """Test the galois view keeps the ascending coefficients."""
        f = Poly.make(GF3, [2, 0, 1])
        assert isinstance(f.native, galois.Poly)
        assert f.native == galois.Poly([1, 0, 2], field=galois.GF(3))
        assert Poly.from_galois(GF3, f.native) == f
        assert f.scale(2) == Poly.make(GF3, [1, 0, 2])


class TestCyclotomicCosets:
    """Test cosets modulo m."""

    def test_cosets_mod_63(self):
        """Test M_0, M_1 and M_5 for q = 2."""
        assert cyclotomic_coset(0, 63, 2).members == (0,)
        assert cyclotomic_coset(1, 63, 2).members == (1, 2, 4, 8, 16, 32)
        assert set(cyclotomic_coset(5, 63, 2).members) == {5, 10, 20, 40, 17, 34}

    def test_partition(self):
        """Test cosets partition [0, m)."""
        for m in (7, 9, 15, 21, 63):
            cosets = cyclotomic_cosets(m, 2)
            members = [e for c in cosets for e in c.members]
            assert sorted(members) == list(range(m))

    def test_closed_under_q(self):
        """Test each coset is closed under multiplication by q."""
        for c in cyclotomic_cosets(26, 3):
            assert all((3 * e) % 26 in c for e in c.members)

    def test_non_unit_q(self):
        """Test gcd(q, m) != 1 is a domain error."""
        with pytest.raises(DomainError):
            cyclotomic_coset(1, 6, 2)


class TestMinimalPolynomial:
    """Test minimal polynomials over GF(p)."""

    def test_known_values(self, gf64):
        """Test m_0 = X + 1, m_1 = modulus, deg m_5 = 6 and deg m_9 = 3."""
        assert minimal_polynomial(0, gf64).coeffs == (1, 1)
        assert minimal_polynomial(1, gf64).coeffs == (1, 1, 0, 1, 1, 0, 1)
        assert minimal_polynomial(5, gf64).degree == 6
        assert minimal_polynomial(9, gf64).coeffs == (1, 1, 0, 1)

    def test_roots(self, gf64):
        """Test m_i vanishes on its coset."""
        for i in (1, 5, 9, 21, 27):
            mi = minimal_polynomial(i, gf64)
            for j in cyclotomic_coset(i, 63, 2).members:
                assert mi.evaluate(gf64.alpha_pow(j), gf64) == 0

    def test_product_is_x_m_minus_1(self, gf64, gf16):
        """Test the product over all coset representatives is X^m - 1."""
        for spec in (gf64, gf16):
            prod = Poly.make(spec.base, [1])
            for c in cyclotomic_cosets(spec.m, spec.p):
                prod = prod * minimal_polynomial(c.representative, spec)
            assert prod == Poly.x_m_minus_1(spec.base, spec.m)

    def test_example_generator(self, gf64):
        """Test m_0 m_1 m_9 divides X^63 - 1 with degree 10."""
        g00 = minimal_polynomial(0, gf64) * minimal_polynomial(1, gf64) * minimal_polynomial(9, gf64)
        assert g00.degree == 10
        assert poly_divmod(Poly.x_m_minus_1(GF2, 63), g00)[1].is_zero()

    def test_odd_characteristic(self):
        """Test coefficients stay in GF(3)."""
        from common.field import FieldSpec

        spec = FieldSpec.create(3, 8)
        for c in cyclotomic_cosets(8, 3):
            mi = minimal_polynomial(c.representative, spec)
            assert mi.degree == len(c)
            assert all(0 <= x < 3 for x in mi.coeffs)

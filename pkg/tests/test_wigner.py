from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_indices, idx, spin_half_rep, sym_power_rep
from su2haar.numeric import representation_matrix, sample_haar
from su2haar.scalars import HalfInt, RadicalScalar
from su2haar.wigner import (
    MatrixElementIndex,
    TrigPolynomial,
    conjugate_index,
    legendre_poly,
    matrix_element_trigpoly,
)

H = Fraction(1, 2)


def poly_of(pairs):
    return TrigPolynomial({mono: RadicalScalar.from_gaussian(*coeff) for mono, coeff in pairs.items()})


class TestIndexValidation:
    def test_valid(self):
        idx(H, H, -H)
        idx(2, -1, 0)
        idx(0, 0, 0)

    def test_m_out_of_range(self):
        with pytest.raises(ValueError):
            idx(H, Fraction(3, 2), H)

    def test_non_integral_difference(self):
        with pytest.raises(ValueError):
            idx(1, H, 0)

    def test_negative_spin(self):
        with pytest.raises(ValueError):
            idx(-1, 0, 0)


class TestDefiningRepresentation:
    def test_diagonal_is_cos(self):
        assert matrix_element_trigpoly(idx(H, H, H)) == poly_of({(1, 0): (1, 0)})
        assert matrix_element_trigpoly(idx(H, -H, -H)) == poly_of({(1, 0): (1, 0)})

    def test_off_diagonal_is_i_sin(self):
        assert matrix_element_trigpoly(idx(H, H, -H)) == poly_of({(0, 1): (0, 1)})
        assert matrix_element_trigpoly(idx(H, -H, H)) == poly_of({(0, 1): (0, 1)})

    def test_spin_one_diagonal(self):
        assert matrix_element_trigpoly(idx(1, 0, 0)) == poly_of({(2, 0): (1, 0), (0, 2): (-1, 0)})

    def test_spin_one_corner(self):
        assert matrix_element_trigpoly(idx(1, -1, -1)) == poly_of({(2, 0): (1, 0)})

    def test_constant(self):
        assert matrix_element_trigpoly(idx(0, 0, 0)) == poly_of({(0, 0): (1, 0)})


class TestExpansionStructure:
    @pytest.mark.parametrize("index", all_indices(3))
    def test_degree_homogeneity_and_parity(self, index):
        poly = matrix_element_trigpoly(index)
        mn = (index.n.twice - index.m.twice) // 2
        for (p, q) in poly.terms:
            assert p + q == index.l.twice
            assert (q - mn) % 2 == 0

    @pytest.mark.parametrize("l", range(0, 7))
    def test_legendre_consistency(self, l):
        """t[l,0,0](a(theta)) equals P_l(c^2 - s^2) expanded."""
        x_poly = poly_of({(2, 0): (1, 0), (0, 2): (-1, 0)})
        expected = TrigPolynomial.zero()
        power = poly_of({(0, 0): (1, 0)})
        for j, coeff in enumerate(legendre_poly(l).coeffs):
            if j > 0:
                power = power * x_poly
            expected = expected + power.scale(RadicalScalar.from_rational(coeff))
        # homogenize: multiply degree-d monomials by (c^2+s^2)^((2l-d)/2)
        unit = poly_of({(2, 0): (1, 0), (0, 2): (1, 0)})
        homog = TrigPolynomial.zero()
        for (p, q), coeff in expected.terms.items():
            pad = (2 * l - p - q) // 2
            homog = homog + (unit ** pad).scale(coeff) * poly_of({(p, q): (1, 0)})
        assert matrix_element_trigpoly(idx(l, 0, 0)) == homog

    @pytest.mark.parametrize("l", [0, H, 1, Fraction(3, 2), 2])
    def test_unitarity_rows(self, l):
        """Row sums of |t|^2 collapse to 1 after s^2 -> 1 - c^2."""
        l_h = HalfInt(Fraction(l))
        for m2 in range(-l_h.twice, l_h.twice + 1, 2):
            total = TrigPolynomial.zero()
            for n2 in range(-l_h.twice, l_h.twice + 1, 2):
                index = MatrixElementIndex(l_h, HalfInt.from_twice(m2), HalfInt.from_twice(n2))
                poly = matrix_element_trigpoly(index)
                total = total + poly * poly.conjugate()
            reduced = total.eliminate_sin()
            assert reduced == {0: RadicalScalar.one()}


class TestAgainstSymmetricPowerOracle:
    def test_matrix_elements_match_kronecker_construction(self, rng):
        for l2 in range(0, 5):
            for _ in range(10):
                g = sample_haar(rng)
                ours = representation_matrix(HalfInt.from_twice(l2), g)
                oracle = sym_power_rep(l2, spin_half_rep(g))
                assert np.max(np.abs(ours - oracle)) < 1e-12


class TestConjugateIndex:
    @pytest.mark.parametrize("index", all_indices(Fraction(3, 2)))
    def test_identity_numerically(self, index, rng):
        sign, flipped = conjugate_index(index)
        from su2haar.numeric import eval_matrix_element

        for _ in range(5):
            g = sample_haar(rng)
            lhs = np.conj(eval_matrix_element(index, g))
            rhs = sign * eval_matrix_element(flipped, g)
            assert abs(lhs - rhs) < 1e-10


class TestTrigPolynomialJson:
    def test_debug_form_mirrors_terms(self):
        poly = matrix_element_trigpoly(idx(1, 0, 0))
        dumped = poly.to_json()
        assert dumped == [
            {"c_exp": 0, "s_exp": 2, "coeff": {"real": [{"radicand": 1, "coeff": "-1"}], "imag": []}},
            {"c_exp": 2, "s_exp": 0, "coeff": {"real": [{"radicand": 1, "coeff": "1"}], "imag": []}},
        ]


class TestLegendre:
    def test_first_values(self):
        assert legendre_poly(0).coeffs == (Fraction(1),)
        assert legendre_poly(1).coeffs == (Fraction(0), Fraction(1))
        assert legendre_poly(2).coeffs == (Fraction(-1, 2), Fraction(0), Fraction(3, 2))

    @pytest.mark.parametrize("l", range(0, 9))
    def test_normalization_at_one(self, l):
        assert legendre_poly(l)(Fraction(1)) == 1

    @pytest.mark.parametrize("l", range(0, 9))
    def test_matches_numpy_legendre(self, l):
        ours = [float(c) for c in legendre_poly(l).coeffs]
        ref = np.polynomial.legendre.Legendre.basis(l).convert(kind=np.polynomial.Polynomial).coef
        assert np.allclose(ours, ref[: len(ours)], atol=1e-9)

    def test_rejects_half_integer(self):
        with pytest.raises(ValueError):
            legendre_poly(HalfInt(H))
        with pytest.raises(ValueError):
            legendre_poly(-1)

    @given(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
    @settings(max_examples=40)
    def test_orthogonality_by_exact_quadrature(self, a, b):
        """integral_{-1}^{1} P_a P_b dx = 2/(2a+1) delta_ab via exact monomial moments."""
        pa, pb = legendre_poly(a).coeffs, legendre_poly(b).coeffs
        total = Fraction(0)
        for i, ca in enumerate(pa):
            for j, cb in enumerate(pb):
                if (i + j) % 2 == 0:
                    total += ca * cb * Fraction(2, i + j + 1)
        assert total == (Fraction(2, 2 * a + 1) if a == b else 0)

import itertools
from fractions import Fraction

import pytest

from conftest import all_indices, idx, integrate_via_trigpoly
from su2haar.integrals import (
    ParityError,
    ProductSpec,
    frequency_of,
    integrate_product,
    monomial_theta_integral,
)
from su2haar.scalars import HalfInt, RadicalScalar

H = Fraction(1, 2)


class TestFrequency:
    def test_power_two(self):
        spec = ProductSpec.of((idx(H, H, H), 2))
        assert frequency_of(spec) == (HalfInt(1), HalfInt(1))

    def test_cancelling_pair(self):
        spec = ProductSpec.of(idx(H, H, -H), idx(H, -H, H))
        assert frequency_of(spec) == (HalfInt(0), HalfInt(0))

    def test_shift(self):
        spec = ProductSpec.of((idx(H, H, H), 2))
        assert frequency_of(spec, idx(1, -1, -1)) == (HalfInt(0), HalfInt(0))


class TestProductSpec:
    def test_merges_duplicates(self):
        spec = ProductSpec.of((idx(H, H, H), 1), (idx(H, H, H), 2))
        assert spec.factors == ((idx(H, H, H), 3),)

    def test_drops_zero_powers(self):
        spec = ProductSpec(((idx(H, H, H), 0), (idx(1, 0, 0), 2)))
        assert spec.factors == ((idx(1, 0, 0), 2),)

    def test_rejects_negative_powers(self):
        with pytest.raises(ValueError):
            ProductSpec(((idx(H, H, H), -1),))

    def test_canonical_order_is_stable(self):
        a = ProductSpec.of(idx(1, 0, 0), idx(H, H, H))
        b = ProductSpec.of(idx(H, H, H), idx(1, 0, 0))
        assert a == b


class TestThetaIntegral:
    def test_examples(self):
        assert monomial_theta_integral(0, 0) == 2
        assert monomial_theta_integral(2, 0) == 1
        assert monomial_theta_integral(2, 2) == Fraction(1, 3)

    def test_cos_substitution_oracle(self):
        """integral c^(2j) sin = integral ((1+x)/2)^j dx over [-1, 1], exactly."""
        for j in range(0, 6):
            expected = Fraction(0)
            # ((1+x)/2)^j expanded: sum binom(j,i) x^i / 2^j ; integral x^i = 2/(i+1) for even i
            from math import comb

            for i in range(j + 1):
                if i % 2 == 0:
                    expected += Fraction(comb(j, i), 2 ** j) * Fraction(2, i + 1)
            assert monomial_theta_integral(2 * j, 0) == expected

    def test_beta_symmetry(self):
        for a in range(0, 8, 2):
            for b in range(0, 8, 2):
                assert monomial_theta_integral(a, b) == monomial_theta_integral(b, a)

    def test_odd_exponent_raises_parity_error(self):
        with pytest.raises(ParityError):
            monomial_theta_integral(1, 0)
        with pytest.raises(ParityError):
            monomial_theta_integral(2, 3)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            monomial_theta_integral(-2, 0)


class TestIntegrateProduct:
    def test_constant(self):
        assert integrate_product(ProductSpec.of(idx(0, 0, 0))) == RadicalScalar.one()

    def test_schur_pair(self):
        spec = ProductSpec.of(idx(H, H, H), idx(H, -H, -H))
        assert integrate_product(spec) == RadicalScalar.from_rational(Fraction(1, 2))

    def test_off_diagonal_pair(self):
        spec = ProductSpec.of(idx(H, H, -H), idx(H, -H, H))
        assert integrate_product(spec) == RadicalScalar.from_rational(Fraction(-1, 2))

    def test_shifted_square(self):
        spec = ProductSpec.of((idx(H, H, H), 2))
        value = integrate_product(spec, idx(1, -1, -1))
        assert value == RadicalScalar.from_rational(Fraction(1, 3))

    def test_single_element_filter(self):
        assert integrate_product(ProductSpec.of(idx(1, 1, 0))).is_zero()
        assert integrate_product(ProductSpec.of(idx(H, H, H))).is_zero()

    def test_empty_product_is_haar_mass(self):
        assert integrate_product(ProductSpec(())) == RadicalScalar.one()

    def test_irrational_value_appears(self):
        spec = ProductSpec.of((idx(2, 2, 0), 1), (idx(1, -1, 0), 2))
        value = integrate_product(spec)
        assert not value.is_zero()
        assert not value.is_rational()
        assert value.is_real()

    def test_agrees_with_trigpoly_route(self):
        specs = [
            ProductSpec.of(idx(H, H, H), idx(H, -H, -H)),
            ProductSpec.of((idx(1, 1, -1), 2), (idx(1, -1, 1), 2)),
            ProductSpec.of((idx(2, 2, 0), 1), (idx(1, -1, 0), 2)),
            ProductSpec.of((idx(Fraction(3, 2), H, -H), 2), (idx(1, -1, 1), 1)),
            ProductSpec.of((idx(H, H, H), 4), (idx(1, -1, -1), 2)),
        ]
        for spec in specs:
            assert integrate_product(spec) == integrate_via_trigpoly(spec)

    def test_memoization_returns_identical_results(self):
        spec = ProductSpec.of((idx(1, 1, 1), 2), (idx(1, -1, -1), 2))
        first = integrate_product(spec)
        second = integrate_product(spec)
        assert first == second

    def test_concurrent_calls_are_deterministic(self):
        """The shared cache must not change results under threaded access."""
        import threading

        from su2haar.integrals import clear_cache

        indices = all_indices(Fraction(3, 2))
        specs = [
            ProductSpec.of(a, b)
            for a in indices
            for b in indices
            if frequency_of(ProductSpec.of(a, b)).is_zero()
        ]
        clear_cache()
        sequential = [integrate_product(s) for s in specs]
        clear_cache()
        results = [None] * len(specs)

        def worker(chunk):
            for j in chunk:
                results[j] = integrate_product(specs[j])

        stripes = [range(stripe, len(specs), 4) for stripe in range(4)]
        threads = [threading.Thread(target=worker, args=(chunk,)) for chunk in stripes]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert results == sequential


def balanced_small_products():
    """Every multiset of <= 3 elements with spin <= 3/2 passing the filter."""
    indices = all_indices(Fraction(3, 2))
    for r in (1, 2, 3):
        for combo in itertools.combinations_with_replacement(indices, r):
            spec = ProductSpec(tuple((i, 1) for i in combo))
            if frequency_of(spec).is_zero():
                yield spec


class TestFilterGuarantees:
    def test_parity_guarantee_exhaustive(self):
        """Balanced products of <= 3 elements at spin <= 3/2 never hit ParityError."""
        from su2haar.wigner import matrix_element_trigpoly, TrigPolynomial

        count = 0
        for spec in balanced_small_products():
            poly = TrigPolynomial.constant(RadicalScalar.one())
            for index, power in spec.factors:
                poly = poly * (matrix_element_trigpoly(index) ** power)
            for (p, q) in poly.terms:
                assert p % 2 == 0 and q % 2 == 0
            count += 1
        assert count >= 100  # nontrivial coverage of the enumeration

    def test_reality_exhaustive(self):
        for spec in balanced_small_products():
            assert integrate_product(spec).is_real()

    def test_filtered_products_exactly_zero(self):
        """1000 random frequency-violating products: exact zero, MC-zero on a subsample."""
        import random

        from su2haar.numeric import mc_integral

        rnd = random.Random(11)
        indices = all_indices(2)
        rejected = []
        while len(rejected) < 1000:
            count = rnd.randint(1, 4)
            spec = ProductSpec(
                tuple((rnd.choice(indices), rnd.randint(1, 3)) for _ in range(count))
            )
            if frequency_of(spec).is_zero():
                continue
            assert integrate_product(spec).is_zero()
            rejected.append(spec)
        for i, spec in enumerate(rnd.sample(rejected, 30)):
            est = mc_integral(spec, samples=20_000, seed=500 + i)
            assert abs(est.mean) <= 5 * max(est.std_error, 1e-12), spec.factors


class TestExactSymmetries:
    def test_negating_all_weights_preserves_value(self):
        """(m_i, n_i) -> (-m_i, -n_i) is complex conjugation; balanced values are real."""
        import random

        rnd = random.Random(21)
        indices = all_indices(Fraction(3, 2))
        done = 0
        while done < 60:
            spec = ProductSpec(
                tuple((rnd.choice(indices), rnd.randint(1, 2)) for _ in range(rnd.randint(1, 3)))
            )
            flipped = ProductSpec(
                tuple(
                    (idx(Fraction(i.l.twice, 2), Fraction(-i.m.twice, 2), Fraction(-i.n.twice, 2)), p)
                    for i, p in spec.factors
                )
            )
            assert integrate_product(spec) == integrate_product(flipped)
            done += 1

    def test_transposing_weights_preserves_value(self):
        """The restriction to a(theta) is a symmetric matrix: (m, n) -> (n, m) is free."""
        import random

        from su2haar.wigner import matrix_element_trigpoly

        rnd = random.Random(22)
        indices = all_indices(2)
        for _ in range(40):
            i = rnd.choice(indices)
            swapped = idx(Fraction(i.l.twice, 2), Fraction(i.n.twice, 2), Fraction(i.m.twice, 2))
            assert matrix_element_trigpoly(i) == matrix_element_trigpoly(swapped)


class TestQuadratureOracle:
    def test_exact_values_match_independent_quadrature(self):
        """Deterministic check: 1/2 * quad of the symmetric-power integrand over theta.

        The integrand is built from Kronecker powers of the raw 2x2 group
        matrix, sharing nothing with the closed-form expansion.
        """
        import random

        import numpy as np
        from scipy.integrate import quad

        from conftest import spin_half_rep, sym_power_rep
        from su2haar.numeric import EulerAngles

        rnd = random.Random(23)
        indices = all_indices(Fraction(3, 2))
        cases = 0
        while cases < 12:
            spec = ProductSpec(
                tuple((rnd.choice(indices), rnd.randint(1, 2)) for _ in range(rnd.randint(1, 3)))
            )
            if not frequency_of(spec).is_zero():
                continue
            if sum(p * i.l.twice for i, p in spec.factors) > 10:
                continue

            def integrand(theta, factors=spec.factors):
                total = 1.0 + 0.0j
                for index, power in factors:
                    rep = sym_power_rep(index.l.twice, spin_half_rep(EulerAngles(0.0, theta, 0.0)))
                    row = (index.l.twice - index.m.twice) // 2
                    col = (index.l.twice - index.n.twice) // 2
                    total *= rep[row, col] ** power
                return total * np.sin(theta)

            real_part, _ = quad(lambda t: integrand(t).real, 0.0, np.pi, limit=200)
            imag_part, _ = quad(lambda t: integrand(t).imag, 0.0, np.pi, limit=200)
            exact = integrate_product(spec).to_complex()
            assert abs(0.5 * complex(real_part, imag_part) - exact) < 1e-10, spec.factors
            cases += 1


class TestSchurOrthogonality:
    @pytest.mark.parametrize("l", [0, H, 1, Fraction(3, 2), 2])
    def test_diagonal_values(self, l):
        l_h = HalfInt(Fraction(l))
        for m2 in range(-l_h.twice, l_h.twice + 1, 2):
            for n2 in range(-l_h.twice, l_h.twice + 1, 2):
                a = idx(l, Fraction(m2, 2), Fraction(n2, 2))
                b = idx(l, Fraction(-m2, 2), Fraction(-n2, 2))
                sign = -1 if ((m2 - n2) // 2) % 2 else 1
                expected = RadicalScalar.from_rational(Fraction(sign, l_h.twice + 1))
                assert integrate_product(ProductSpec.of(a, b)) == expected

    def test_cross_terms_vanish(self):
        pairs = [
            (idx(H, H, H), idx(1, -1, -1)),
            (idx(1, 1, 0), idx(2, -1, 0)),
            (idx(1, 0, 0), idx(2, 0, 0)),
            (idx(2, 1, 1), idx(2, -1, 1)),
        ]
        for a, b in pairs:
            assert integrate_product(ProductSpec.of(a, b)).is_zero()


class TestPositivity:
    @pytest.mark.parametrize("l", range(0, 7))
    def test_diagonal_squares_positive(self, l):
        value = integrate_product(ProductSpec.of((idx(l, 0, 0), 2)))
        assert value.is_rational() and value.as_rational() > 0
        assert value.as_rational() == Fraction(1, 2 * l + 1)

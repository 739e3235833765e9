"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from su2haar.integrals import ProductSpec, frequency_of, integrate_product, monomial_theta_integral
from su2haar.numeric import group_matrix
from su2haar.powers import FiniteFunction, gaussian_mul, gaussian_pow
from su2haar.scalars import HalfInt, RadicalScalar
from su2haar.wigner import MatrixElementIndex, matrix_element_trigpoly


def idx(l, m, n) -> MatrixElementIndex:
    return MatrixElementIndex.of(Fraction(l), Fraction(m), Fraction(n))


def hi(x) -> HalfInt:
    return HalfInt(Fraction(x))


def ff(*terms) -> FiniteFunction:
    """FiniteFunction from ((l, m, n), coeff) pairs; coeff int/Fraction or (re, im)."""
    return FiniteFunction.from_terms([(t, c) for t, c in terms])


def all_indices(l_max) -> list:
    out = []
    lmax2 = HalfInt(Fraction(l_max)).twice
    for l2 in range(0, lmax2 + 1):
        for m2 in range(-l2, l2 + 1, 2):
            for n2 in range(-l2, l2 + 1, 2):
                out.append(
                    MatrixElementIndex(
                        HalfInt.from_twice(l2),
                        HalfInt.from_twice(m2),
                        HalfInt.from_twice(n2),
                    )
                )
    return out


# ---------------------------------------------------------------------------
# oracle 1: integrate a product through full TrigPolynomial multiplication
# ---------------------------------------------------------------------------

def integrate_via_trigpoly(spec: ProductSpec, shift=None) -> RadicalScalar:
    """Same integral, assembled through TrigPolynomial products term by term."""
    merged = spec.with_extra(shift)
    if not frequency_of(merged).is_zero():
        return RadicalScalar.zero()
    from su2haar.wigner import TrigPolynomial

    poly = TrigPolynomial.constant(RadicalScalar.one())
    for index, power in merged.factors:
        poly = poly * (matrix_element_trigpoly(index) ** power)
    total = RadicalScalar.zero()
    for (p, q), coeff in poly.terms.items():
        total = total + coeff * RadicalScalar.from_rational(
            monomial_theta_integral(p, q) / 2
        )
    return total


# ---------------------------------------------------------------------------
# oracle 2: unfiltered multinomial sum (no balanced-composition pruning)
# ---------------------------------------------------------------------------

def all_compositions(k: int, total: int):
    if k == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in all_compositions(k - 1, total - head):
            yield (head,) + rest


def brute_force_power_integral(f: FiniteFunction, power: int, h=None) -> RadicalScalar:
    """Multinomial sum over every composition, no frequency pruning."""
    k = len(f.terms)
    total = RadicalScalar.zero()
    fact = math.factorial
    for alpha in all_compositions(k, power):
        coeff = (Fraction(fact(power)), Fraction(0))
        factors = []
        for (index, a_coeff), a in zip(f.terms, alpha):
            coeff = gaussian_mul(coeff, gaussian_pow(a_coeff, a))
            coeff = (coeff[0] / fact(a), coeff[1] / fact(a))
            if a:
                factors.append((index, a))
        base = integrate_product(ProductSpec(tuple(factors)), h)
        if base.is_zero():
            continue
        total = total + base * RadicalScalar.from_gaussian(*coeff)
    return total


# ---------------------------------------------------------------------------
# oracle 3: numeric spin-l representation from symmetrized Kronecker powers
# ---------------------------------------------------------------------------

def spin_half_rep(g) -> np.ndarray:
    """The 2x2 representation as D conj(U) D^{-1}, built from raw group matrices."""
    u = group_matrix(g)
    d = np.diag([1.0, -1.0])
    return d @ np.conj(u) @ d


def sym_power_rep(l2: int, w: np.ndarray) -> np.ndarray:
    """Spin-(l2/2) matrix of w via the symmetrized Kronecker power, rows m = l..-l."""
    if l2 == 0:
        return np.array([[1.0 + 0j]])
    big = w
    for _ in range(l2 - 1):
        big = np.kron(big, w)
    dim = 2 ** l2
    cols = []
    for ones in range(l2 + 1):
        vec = np.zeros(dim)
        hits = [i for i in range(dim) if bin(i).count("1") == ones]
        for i in hits:
            vec[i] = 1.0
        cols.append(vec / math.sqrt(len(hits)))
    basis = np.array(cols).T
    return basis.T @ big @ basis


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260808)

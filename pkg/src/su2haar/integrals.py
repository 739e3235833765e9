"""Exact Haar integration of products of powers of matrix elements.

In Euler coordinates g = k(phi) a(theta) k(psi) the Haar integral carries the
density sin(theta)/(16 pi^2) over phi in [0, 2pi), theta in [0, pi], psi in
[-2pi, 2pi).  A product of matrix elements picks up the character
exp(-i*M*phi - i*N*psi) with M = sum alpha_i m_i and N = sum alpha_i n_i, so
the phi and psi integrals kill everything unless M = N = 0 (half-integer
frequencies still integrate to zero because the psi range spans 4 pi and
M - N is always an integer).  Surviving integrals reduce to

    (2pi * 4pi) / (16 pi^2) * integral_0^pi (product at a(theta)) sin(theta) d(theta)
  = 1/2 * integral_0^pi ... ,

and each even monomial c^a s^b integrates in closed form to
2 * (a/2)! * (b/2)! / ((a+b)/2 + 1)!.  No pi ever appears in a stored value.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import NamedTuple, Optional, Tuple

from . import _kernel
from .scalars import HalfInt, RadicalScalar, radical_normalize
from .wigner import MatrixElementIndex, theta_restriction


class ParityError(ArithmeticError):
    """An odd trig exponent reached the theta integral.

    Products that pass the frequency filter only ever produce even exponents,
    so this signals a bug in an upstream filter, never a data error.
    """


class FrequencyPair(NamedTuple):
    """Left and right character frequencies of a product."""

    phi_freq: HalfInt
    psi_freq: HalfInt

    def is_zero(self) -> bool:
        return self.phi_freq.twice == 0 and self.psi_freq.twice == 0


@dataclass(frozen=True)
class ProductSpec:
    """Multiset of (matrix element, power) factors, canonically merged and sorted."""

    factors: Tuple[Tuple[MatrixElementIndex, int], ...]

    def __post_init__(self):
        merged: dict = {}
        for idx, power in self.factors:
            if not isinstance(idx, MatrixElementIndex):
                raise TypeError(f"factor index must be MatrixElementIndex, got {idx!r}")
            if power < 0:
                raise ValueError(f"factor power must be nonnegative, got {power}")
            if power:
                merged[idx] = merged.get(idx, 0) + power
        object.__setattr__(
            self, "factors", tuple(sorted(merged.items(), key=lambda f: f[0].key()))
        )

    @staticmethod
    def of(*entries) -> "ProductSpec":
        """Build from indices, (l, m, n) triples, or (index-or-triple, power) pairs."""
        factors = []
        for entry in entries:
            if isinstance(entry, MatrixElementIndex):
                factors.append((entry, 1))
                continue
            seq = tuple(entry)
            if len(seq) == 2:
                head, power = seq
                if not isinstance(head, MatrixElementIndex):
                    head = MatrixElementIndex.of(*head)
                factors.append((head, power))
            elif len(seq) == 3:
                factors.append((MatrixElementIndex.of(*seq), 1))
            else:
                raise TypeError(f"cannot interpret product factor {entry!r}")
        return ProductSpec(tuple(factors))

    def with_extra(self, extra: Optional[MatrixElementIndex]) -> "ProductSpec":
        if extra is None:
            return self
        return ProductSpec(self.factors + ((extra, 1),))

    def total_power(self) -> int:
        return sum(p for _, p in self.factors)

    def __iter__(self):
        return iter(self.factors)


def frequency_of(
    spec: ProductSpec, shift: Optional[MatrixElementIndex] = None
) -> FrequencyPair:
    """(sum alpha_i m_i, sum alpha_i n_i), plus the shift's (m, n) if given."""
    m2 = sum(idx.m.twice * power for idx, power in spec.factors)
    n2 = sum(idx.n.twice * power for idx, power in spec.factors)
    if shift is not None:
        m2 += shift.m.twice
        n2 += shift.n.twice
    return FrequencyPair(HalfInt.from_twice(m2), HalfInt.from_twice(n2))


def monomial_theta_integral(c_exp: int, s_exp: int) -> Fraction:
    """Exact value of integral_0^pi c^a s^b sin(theta) d(theta) for even a, b.

    Equals 2 * (a/2)! * (b/2)! / ((a+b)/2 + 1)! by the substitution
    u = sin(theta/2)^2.
    """
    if c_exp < 0 or s_exp < 0:
        raise ValueError(f"exponents must be nonnegative, got ({c_exp}, {s_exp})")
    if c_exp % 2 or s_exp % 2:
        raise ParityError(
            f"odd exponent in theta integral ({c_exp}, {s_exp}); "
            "this indicates an upstream frequency-filter bug"
        )
    half_a, half_b = c_exp // 2, s_exp // 2
    return Fraction(2 * factorial(half_a) * factorial(half_b), factorial(half_a + half_b + 1))


class _ElementVector(NamedTuple):
    """Integer-vector form of one element on a(theta): i^phase*sqrt(radicand)/denom * vec."""

    degree: int
    phase: int
    radicand: int
    denom: int
    vec: Tuple[int, ...]


@functools.lru_cache(maxsize=None)
def _element_vector(idx: MatrixElementIndex) -> _ElementVector:
    data = theta_restriction(idx)
    denom = lcm(*(coeff.denominator for _, _, coeff in data.terms))
    vec = [0] * (data.degree + 1)
    for c_exp, s_exp, coeff in data.terms:
        scaled = coeff * denom
        assert scaled.denominator == 1
        vec[s_exp] = int(scaled)
        assert c_exp + s_exp == data.degree
    return _ElementVector(data.degree, data.phase, data.radicand, denom, tuple(vec))


_BASE_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def clear_cache() -> None:
    """Drop memoized base integrals (used by benchmarks)."""
    with _CACHE_LOCK:
        _BASE_CACHE.clear()


def integrate_product(
    spec: ProductSpec, shift: Optional[MatrixElementIndex] = None
) -> RadicalScalar:
    """Exact Haar integral of prod_i t[l_i,m_i,n_i]^alpha_i (times one extra element).

    Total function: products failing the frequency filter integrate to exact
    zero.  Survivors are real (empty imaginary part).  Results are memoized by
    the merged factor multiset; the cache only ever stores values that are
    deterministic functions of the key, so concurrent double-computation is
    harmless.
    """
    merged = spec.with_extra(shift)
    if not frequency_of(merged).is_zero():
        return RadicalScalar.zero()
    key = merged.factors
    cached = _BASE_CACHE.get(key)
    if cached is not None:
        return cached

    phase = 0
    mult = 1
    sqfree_prod = 1
    denom = 1
    vec = [1]
    degree = 0
    for idx, power in merged.factors:
        ev = _element_vector(idx)
        phase += ev.phase * power
        mult *= ev.radicand ** (power // 2)
        if power % 2:
            sqfree_prod *= ev.radicand
        denom *= ev.denom ** power
        vec = _kernel.convolve(vec, _kernel.vec_pow(list(ev.vec), power))
        degree += ev.degree * power

    # zero frequency forces sum alpha_i (n_i - m_i) = 0, hence trivial phase
    assert phase % 4 == 0, "phase must cancel under the frequency filter"
    extra, radicand = radical_normalize(Fraction(1), sqfree_prod)
    assert extra.denominator == 1
    mult *= int(extra)

    assert degree % 2 == 0, "balanced products are even-dimensional"
    half = degree // 2
    acc = 0
    for s_exp, coeff in enumerate(vec):
        if coeff == 0:
            continue
        if s_exp % 2:
            raise ParityError(
                f"odd sin exponent {s_exp} in a frequency-balanced product {merged.factors}"
            )
        acc += coeff * factorial((degree - s_exp) // 2) * factorial(s_exp // 2)

    value = Fraction(mult * acc, denom * factorial(half + 1))
    result = RadicalScalar.from_terms(real=[(value, radicand)])
    _BASE_CACHE[key] = result
    return result

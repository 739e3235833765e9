"""Power integrals of finite matrix-element combinations.

For f = sum_i A_i t[l_i, m_i, n_i] the multinomial theorem turns
integral(f^P) into a sum over compositions alpha of P of

    multinomial(P; alpha) * prod A_i^alpha_i * integral(prod t_i^alpha_i),

and the frequency filter restricts the sum to compositions with
sum alpha_i m_i = 0 = sum alpha_i n_i (shifted to (-a, -b) when an extra
element t[l, a, b] multiplies the power).  The composition search runs on the
kernel backend with interval pruning, and base integrals are memoized across
calls by their factor multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, List, Optional, Tuple

from . import _kernel
from .integrals import ProductSpec, integrate_product
from .scalars import HalfInt, RadicalScalar
from .wigner import MatrixElementIndex

GaussianRational = Tuple[Fraction, Fraction]

Composition = Tuple[int, ...]


class NoSolutionError(ValueError):
    """The two-point balance system has no nonzero solution in N^2."""


def _as_gaussian(coeff) -> GaussianRational:
    if isinstance(coeff, tuple):
        re, im = coeff
        return (Fraction(re), Fraction(im))
    if isinstance(coeff, complex):
        raise TypeError("use exact (re, im) pairs, not floats")
    return (Fraction(coeff), Fraction(0))


def gaussian_mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def gaussian_pow(a: GaussianRational, n: int) -> GaussianRational:
    """Exact binary exponentiation over Gaussian rationals."""
    if n < 0:
        raise ValueError("negative power")
    result = (Fraction(1), Fraction(0))
    base = a
    while n:
        if n & 1:
            result = gaussian_mul(result, base)
        base = gaussian_mul(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class FiniteFunction:
    """f = sum_i A_i t[l_i, m_i, n_i] with nonzero exact complex-rational A_i."""

    terms: Tuple[Tuple[MatrixElementIndex, GaussianRational], ...]

    def __post_init__(self):
        seen = set()
        cleaned = []
        for idx, coeff in self.terms:
            if not isinstance(idx, MatrixElementIndex):
                raise TypeError(f"term index must be MatrixElementIndex, got {idx!r}")
            g = _as_gaussian(coeff)
            if g == (0, 0):
                raise ValueError(f"zero coefficient on {idx}")
            if idx in seen:
                raise ValueError(f"duplicate index {idx}")
            seen.add(idx)
            cleaned.append((idx, g))
        object.__setattr__(self, "terms", tuple(cleaned))
        if not self.terms:
            raise ValueError("a finite function needs at least one term")

    @staticmethod
    def from_terms(terms: Iterable[Tuple]) -> "FiniteFunction":
        built = []
        for idx, coeff in terms:
            if not isinstance(idx, MatrixElementIndex):
                idx = MatrixElementIndex.of(*idx)
            built.append((idx, coeff))
        return FiniteFunction(tuple(built))

    def __len__(self) -> int:
        return len(self.terms)

    def indices(self) -> Tuple[MatrixElementIndex, ...]:
        return tuple(idx for idx, _ in self.terms)

    def support_points(self) -> Tuple[Tuple[HalfInt, HalfInt], ...]:
        return tuple((idx.m, idx.n) for idx, _ in self.terms)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "terms": [
                {
                    "l": str(idx.l),
                    "m": str(idx.m),
                    "n": str(idx.n),
                    "coeff": {"re": str(re), "im": str(im)},
                }
                for idx, (re, im) in self.terms
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "FiniteFunction":
        if "terms" not in obj:
            raise ValueError("missing field: terms")
        terms = []
        for i, t in enumerate(obj["terms"]):
            try:
                idx = MatrixElementIndex.of(t["l"], t["m"], t["n"])
            except KeyError as e:
                raise ValueError(f"terms[{i}]: missing field {e.args[0]!r}") from None
            except ValueError as e:
                raise ValueError(f"terms[{i}]: {e}") from None
            coeff = t.get("coeff", {})
            try:
                re, im = Fraction(coeff.get("re", "0")), Fraction(coeff.get("im", "0"))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"terms[{i}].coeff: invalid rational") from None
            terms.append((idx, (re, im)))
        return FiniteFunction(tuple(terms))


def enumerate_balanced_compositions(
    f: FiniteFunction, power: int, target: Tuple[HalfInt, HalfInt] = (HalfInt(0), HalfInt(0))
) -> List[Composition]:
    """Compositions alpha of `power` with sum alpha*m = target[0], sum alpha*n = target[1].

    Deterministic descending lexicographic order; the list may be empty.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    ms2 = [idx.m.twice for idx, _ in f.terms]
    ns2 = [idx.n.twice for idx, _ in f.terms]
    return _kernel.balanced_compositions(ms2, ns2, power, target[0].twice, target[1].twice)


def _composition_sum(
    f: FiniteFunction,
    power: int,
    target: Tuple[HalfInt, HalfInt],
    shift: Optional[MatrixElementIndex],
) -> RadicalScalar:
    indices = f.indices()
    total = RadicalScalar.zero()
    fact_p = factorial(power)
    for alpha in enumerate_balanced_compositions(f, power, target):
        coeff: GaussianRational = (Fraction(fact_p), Fraction(0))
        spec_factors = []
        for (idx, a_coeff), a in zip(f.terms, alpha):
            if a == 0:
                continue
            coeff = gaussian_mul(coeff, gaussian_pow(a_coeff, a))
            coeff = (coeff[0] / factorial(a), coeff[1] / factorial(a))
            spec_factors.append((idx, a))
        base = integrate_product(ProductSpec(tuple(spec_factors)), shift)
        if base.is_zero():
            continue
        total = total + base * RadicalScalar.from_gaussian(*coeff)
    return total


def power_integral(f: FiniteFunction, power: int) -> RadicalScalar:
    """Exact value of integral(f^P) over the normalized Haar measure."""
    if power < 1:
        raise ValueError("power must be >= 1")
    return _composition_sum(f, power, (HalfInt(0), HalfInt(0)), None)


def power_integral_with_witness(
    f: FiniteFunction, power: int, h: MatrixElementIndex
) -> RadicalScalar:
    """Exact value of integral(f^P * t[l, a, b]) with h = t[l, a, b]."""
    if power < 1:
        raise ValueError("power must be >= 1")
    target = (-h.m, -h.n)
    return _composition_sum(f, power, target, h)


def power_scan(f: FiniteFunction, pmax: int) -> List[Tuple[int, RadicalScalar]]:
    """Values of integral(f^P) for P = 1..pmax, sharing the base-integral cache."""
    if pmax < 1:
        raise ValueError("pmax must be >= 1")
    return [(p, power_integral(f, p)) for p in range(1, pmax + 1)]


def minimal_balanced_pair(
    p1: Tuple[HalfInt, HalfInt], p2: Tuple[HalfInt, HalfInt]
) -> Tuple[int, int]:
    """Componentwise-minimal nonzero (alpha, beta) in N^2 balancing two support points.

    Solves alpha*m1 + beta*m2 = 0 = alpha*n1 + beta*n2 for points satisfying
    the two-point vanishing criterion (zero determinant, nonpositive
    coordinate products, not both points zero).
    """
    m1, n1 = p1[0].twice, p1[1].twice
    m2, n2 = p2[0].twice, p2[1].twice
    if (m1, n1) == (0, 0) and (m2, n2) == (0, 0):
        raise NoSolutionError("both points are the origin")
    det = m1 * n2 - m2 * n1
    if det != 0 or m1 * m2 > 0 or n1 * n2 > 0:
        raise NoSolutionError(
            f"points ({p1[0]},{p1[1]}), ({p2[0]},{p2[1]}) do not meet the two-point criterion"
        )
    if (m1, n1) == (0, 0):
        return (1, 0)
    if (m2, n2) == (0, 0):
        return (0, 1)
    if m1 != 0 or m2 != 0:
        alpha, beta = abs(m2), abs(m1)
    else:
        alpha, beta = abs(n2), abs(n1)
    if alpha * m1 + beta * m2 != 0 or alpha * n1 + beta * n2 != 0:
        raise NoSolutionError(
            f"no nonzero natural solution for ({p1[0]},{p1[1]}), ({p2[0]},{p2[1]})"
        )
    g = gcd(alpha, beta)
    return (alpha // g, beta // g)

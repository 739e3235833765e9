"""Matrix elements of SU(2) irreducibles restricted to the rotation subgroup.

The spin-l irreducible has dimension 2l+1 and its (m, n) entry, evaluated on
the one-parameter subgroup

    a(theta) = [[cos(theta/2), i sin(theta/2)], [i sin(theta/2), cos(theta/2)]],

is an exact homogeneous polynomial of degree 2l in c = cos(theta/2) and
s = sin(theta/2).  The convention used throughout the package is

    t[l, m, n](a(theta)) = i**(n-m) * d[l, m, n](theta)

with the standard real d-function

    d[l, m, n](theta) = sqrt((l+m)!(l-m)!(l+n)!(l-n)!)
        * sum_k (-1)**(m-n+k) / ((l+n-k)! k! (m-n+k)! (l-m-k)!)
        * c**(2l+n-m-2k) * s**(m-n+2k),

k running over max(0, n-m) <= k <= min(l+n, l-m).  Together with the left and
right one-parameter phase laws

    t[l, m, n](k(phi) g) = exp(-i m phi) t[l, m, n](g)
    t[l, m, n](g k(psi)) = exp(-i n psi) t[l, m, n](g)

this pins the phase convention completely: at l = 1/2 the matrix of t over
a(theta) reproduces a(theta) itself (rows ordered m = +1/2, -1/2), and the
diagonal entries t[l, 0, 0](a(theta)) equal the Legendre polynomial
P_l(cos theta).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Mapping, NamedTuple, Tuple

from .scalars import HalfInt, RadicalScalar, radical_normalize


@dataclass(frozen=True)
class MatrixElementIndex:
    """Label (l, m, n) of one matrix element; m, n run over -l, -l+1, ..., l."""

    l: HalfInt
    m: HalfInt
    n: HalfInt

    def __post_init__(self):
        l, m, n = self.l, self.m, self.n
        if not (isinstance(l, HalfInt) and isinstance(m, HalfInt) and isinstance(n, HalfInt)):
            raise TypeError("index components must be HalfInt")
        if l.twice < 0:
            raise ValueError(f"spin must be nonnegative, got l={l}")
        if abs(m.twice) > l.twice or abs(n.twice) > l.twice:
            raise ValueError(f"|m|,|n| must not exceed l: l={l}, m={m}, n={n}")
        if (l.twice - m.twice) % 2 or (l.twice - n.twice) % 2:
            raise ValueError(f"l-m and l-n must be integers: l={l}, m={m}, n={n}")

    @staticmethod
    def of(l, m, n) -> "MatrixElementIndex":
        return MatrixElementIndex(HalfInt(l), HalfInt(m), HalfInt(n))

    def key(self) -> Tuple[int, int, int]:
        return (self.l.twice, self.m.twice, self.n.twice)

    def __str__(self) -> str:
        return f"t[{self.l},{self.m},{self.n}]"


def conjugate_index(idx: MatrixElementIndex) -> Tuple[int, MatrixElementIndex]:
    """Conjugation identity: conj(t[l,m,n]) = sign * t[l,-m,-n] with sign = (-1)**(m-n)."""
    sign = -1 if ((idx.m.twice - idx.n.twice) // 2) % 2 else 1
    return sign, MatrixElementIndex(idx.l, -idx.m, -idx.n)


class ThetaRestriction(NamedTuple):
    """Exact data of t[l,m,n](a(theta)) = i**phase * sqrt(radicand) * sum coeff*c^p*s^q."""

    degree: int                 # 2l; every monomial has p + q = degree
    phase: int                  # (n - m) mod 4
    radicand: int               # squarefree part of (l+m)!(l-m)!(l+n)!(l-n)!
    terms: Tuple[Tuple[int, int, Fraction], ...]   # (c_exp, s_exp, rational coeff)


@functools.lru_cache(maxsize=None)
def theta_restriction(idx: MatrixElementIndex) -> ThetaRestriction:
    l2, m2, n2 = idx.l.twice, idx.m.twice, idx.n.twice
    lpm = (l2 + m2) // 2
    lmm = (l2 - m2) // 2
    lpn = (l2 + n2) // 2
    lmn = (l2 - n2) // 2
    mn = (m2 - n2) // 2         # m - n, an integer

    norm = factorial(lpm) * factorial(lmm) * factorial(lpn) * factorial(lmn)
    root_scale, radicand = radical_normalize(Fraction(1), norm)

    terms = []
    for k in range(max(0, -mn), min(lpn, lmm) + 1):
        denom = factorial(lpn - k) * factorial(k) * factorial(mn + k) * factorial(lmm - k)
        sign = -1 if (mn + k) % 2 else 1
        coeff = Fraction(sign) * root_scale / denom
        c_exp = l2 - mn - 2 * k
        s_exp = mn + 2 * k
        terms.append((c_exp, s_exp, coeff))
    return ThetaRestriction(degree=l2, phase=(-mn) % 4, radicand=radicand, terms=tuple(terms))


class TrigPolynomial:
    """Polynomial in c = cos(theta/2), s = sin(theta/2) with RadicalScalar coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], RadicalScalar] = ()):
        data = {}
        for (p, q), coeff in dict(terms).items():
            if p < 0 or q < 0:
                raise ValueError(f"negative exponent in trig monomial ({p},{q})")
            if not coeff.is_zero():
                data[(p, q)] = coeff
        self._terms = data

    @staticmethod
    def zero() -> "TrigPolynomial":
        return TrigPolynomial()

    @staticmethod
    def constant(value: RadicalScalar) -> "TrigPolynomial":
        return TrigPolynomial({(0, 0): value})

    @property
    def terms(self) -> Dict[Tuple[int, int], RadicalScalar]:
        return dict(self._terms)

    def sorted_terms(self):
        return tuple(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self.sorted_terms())

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        data = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = data.get(mono, RadicalScalar.zero()) + coeff
            if acc.is_zero():
                data.pop(mono, None)
            else:
                data[mono] = acc
        return TrigPolynomial(data)

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + other.scale(RadicalScalar.from_rational(-1))

    def __mul__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        data: dict = {}
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                mono = (p1 + p2, q1 + q2)
                acc = data.get(mono, RadicalScalar.zero()) + c1 * c2
                if acc.is_zero():
                    data.pop(mono, None)
                else:
                    data[mono] = acc
        return TrigPolynomial(data)

    def __pow__(self, exponent: int) -> "TrigPolynomial":
        if exponent < 0:
            raise ValueError("negative power of a TrigPolynomial")
        result = TrigPolynomial.constant(RadicalScalar.one())
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, factor: RadicalScalar) -> "TrigPolynomial":
        return TrigPolynomial({mono: coeff * factor for mono, coeff in self._terms.items()})

    def conjugate(self) -> "TrigPolynomial":
        return TrigPolynomial({mono: coeff.conjugate() for mono, coeff in self._terms.items()})

    def eval_complex(self, c: float, s: float) -> complex:
        return sum(coeff.to_complex() * (c ** p) * (s ** q) for (p, q), coeff in self._terms.items())

    def eliminate_sin(self) -> Dict[int, RadicalScalar]:
        """Substitute s**2 = 1 - c**2; requires every s-exponent to be even.

        Returns the resulting univariate polynomial in c as exponent -> coefficient.
        """
        out: Dict[int, RadicalScalar] = {}
        for (p, q), coeff in self._terms.items():
            if q % 2:
                raise ValueError(f"odd sin exponent {q}; substitution needs even powers")
            h = q // 2
            for j in range(h + 1):
                sign = -1 if j % 2 else 1
                binom = Fraction(sign * factorial(h), factorial(j) * factorial(h - j))
                e = p + 2 * j
                acc = out.get(e, RadicalScalar.zero()) + coeff * RadicalScalar.from_rational(binom)
                if acc.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = acc
        return out

    def to_json(self) -> list:
        return [
            {"c_exp": p, "s_exp": q, "coeff": coeff.to_json()}
            for (p, q), coeff in self.sorted_terms()
        ]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for (p, q), coeff in self.sorted_terms():
            mono = "".join([f"c^{p}" if p else "", f"s^{q}" if q else ""]) or "1"
            bits.append(f"({coeff})*{mono}")
        return " + ".join(bits)


@functools.lru_cache(maxsize=None)
def matrix_element_trigpoly(idx: MatrixElementIndex) -> TrigPolynomial:
    """Exact expansion of t[l,m,n](a(theta)) in (c, s), phase included."""
    data = theta_restriction(idx)
    terms = {}
    for c_exp, s_exp, coeff in data.terms:
        scalar = RadicalScalar.from_terms(real=[(coeff, data.radicand)]).times_i_power(data.phase)
        terms[(c_exp, s_exp)] = scalar
    return TrigPolynomial(terms)


class RationalPolynomial:
    """Univariate polynomial with exact rational coefficients, ascending powers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({list(self.coeffs)})"


@functools.lru_cache(maxsize=None)
def legendre_poly(l: int) -> RationalPolynomial:
    """Legendre polynomial P_l with P_l(1) = 1, by the three-term recurrence."""
    if isinstance(l, HalfInt):
        if not l.is_integer:
            raise ValueError(f"Legendre polynomials need integer degree, got {l}")
        l = int(l)
    if not isinstance(l, int) or l < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {l!r}")
    if l == 0:
        return RationalPolynomial([1])
    if l == 1:
        return RationalPolynomial([0, 1])
    p_prev = [Fraction(1)]
    p_cur = [Fraction(0), Fraction(1)]
    for n in range(1, l):
        # (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
        nxt = [Fraction(0)] * (n + 2)
        for j, c in enumerate(p_cur):
            nxt[j + 1] += Fraction(2 * n + 1, n + 1) * c
        for j, c in enumerate(p_prev):
            nxt[j] -= Fraction(n, n + 1) * c
        p_prev, p_cur = p_cur, nxt
    return RationalPolynomial(p_cur)

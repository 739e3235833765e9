"""Exact scalar arithmetic: half-integers and Gaussian-rational radical sums.

The value field for every integral in this package is the set of numbers

    (sum_j p_j * sqrt(N_j))  +  i * (sum_j q_j * sqrt(M_j))

with rational p_j, q_j and squarefree positive integer radicands.  Because
square roots of distinct squarefree integers are linearly independent over
the rationals, keeping coefficient maps canonical (squarefree keys, no zero
coefficients) makes equality and the zero test exact map comparisons.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Rational = Fraction


def _twice_of(value) -> int:
    """Twice the value of an int, HalfInt, or Fraction with denominator 1 or 2."""
    if isinstance(value, HalfInt):
        return value.twice
    if isinstance(value, int):
        return 2 * value
    if isinstance(value, Fraction):
        if value.denominator in (1, 2):
            return int(value * 2)
        raise ValueError(f"not a half-integer: {value}")
    raise TypeError(f"cannot interpret {value!r} as a half-integer")


class HalfInt:
    """A half-integer stored as twice its value, so all arithmetic is integral."""

    __slots__ = ("twice",)

    def __init__(self, value: Union[int, Fraction, str, "HalfInt"]):
        if isinstance(value, str):
            self.twice = HalfInt.parse(value).twice
        else:
            self.twice = _twice_of(value)

    @staticmethod
    def from_twice(twice: int) -> "HalfInt":
        h = HalfInt.__new__(HalfInt)
        h.twice = int(twice)
        return h

    @staticmethod
    def parse(text: str) -> "HalfInt":
        """Parse "k" or "k/2" (also tolerates "p/1")."""
        s = text.strip()
        if "/" in s:
            num, _, den = s.partition("/")
            d = int(den)
            if d == 1:
                return HalfInt.from_twice(2 * int(num))
            if d == 2:
                return HalfInt.from_twice(int(num))
            raise ValueError(f"not a half-integer: {text!r}")
        return HalfInt.from_twice(2 * int(s))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __int__(self) -> int:
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __float__(self) -> float:
        return self.twice / 2.0

    def __add__(self, other) -> "HalfInt":
        return HalfInt.from_twice(self.twice + _twice_of(other))

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        return HalfInt.from_twice(self.twice - _twice_of(other))

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt.from_twice(_twice_of(other) - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt.from_twice(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt.from_twice(abs(self.twice))

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt.from_twice(self.twice * other)
        if isinstance(other, HalfInt):
            return Fraction(self.twice * other.twice, 4)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            return self.twice == _twice_of(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self.twice < _twice_of(other)

    def __le__(self, other) -> bool:
        return self.twice <= _twice_of(other)

    def __gt__(self, other) -> bool:
        return self.twice > _twice_of(other)

    def __ge__(self, other) -> bool:
        return self.twice >= _twice_of(other)

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def radical_normalize(coeff: Fraction, radicand: int) -> Tuple[Fraction, int]:
    """Rewrite coeff*sqrt(radicand) as (coeff*k)*sqrt(r) with r squarefree.

    Factorization is plain trial division; the radicands produced by the
    factorial normalizations in this package have only small prime factors,
    so nothing smarter is warranted.
    """
    if not isinstance(radicand, int) or radicand < 1:
        raise ValueError(f"radicand must be a positive integer, got {radicand!r}")
    square_part = 1
    free_part = 1
    n = radicand
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            square_part *= d ** (e // 2)
            if e % 2:
                free_part *= d
        d += 1 if d == 2 else 2
    free_part *= n
    return (Fraction(coeff) * square_part, free_part)


def _canonical_map(terms: Iterable[Tuple[Fraction, int]]) -> dict:
    out: dict = {}
    for coeff, radicand in terms:
        c, r = radical_normalize(Fraction(coeff), radicand)
        if c:
            acc = out.get(r)
            acc = c if acc is None else acc + c
            if acc:
                out[r] = acc
            elif r in out:
                del out[r]
    return out


class RadicalScalar:
    """Exact complex number of the form sum q_j*sqrt(N_j) + i*sum q'_j*sqrt(N'_j).

    Values are immutable and canonical: radicand keys are squarefree positive
    integers and no stored coefficient is zero, so equality is map equality
    and ``is_zero`` is decidable.
    """

    __slots__ = ("_re", "_im", "_key")

    def __init__(self, re: Mapping[int, Fraction] = None, im: Mapping[int, Fraction] = None, *, _canonical=False):
        if _canonical:
            self._re = dict(re or {})
            self._im = dict(im or {})
        else:
            self._re = _canonical_map((c, r) for r, c in (re or {}).items())
            self._im = _canonical_map((c, r) for r, c in (im or {}).items())
        self._key = None

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RadicalScalar":
        return RadicalScalar({}, {}, _canonical=True)

    @staticmethod
    def one() -> "RadicalScalar":
        return RadicalScalar.from_rational(Fraction(1))

    @staticmethod
    def from_rational(q) -> "RadicalScalar":
        q = Fraction(q)
        return RadicalScalar({1: q} if q else {}, {}, _canonical=True)

    @staticmethod
    def from_gaussian(re, im) -> "RadicalScalar":
        re, im = Fraction(re), Fraction(im)
        return RadicalScalar({1: re} if re else {}, {1: im} if im else {}, _canonical=True)

    @staticmethod
    def from_terms(real: Iterable[Tuple[Fraction, int]] = (), imag: Iterable[Tuple[Fraction, int]] = ()) -> "RadicalScalar":
        """Build from (coefficient, radicand) pairs; radicands need not be squarefree."""
        return RadicalScalar.__new_canonical(_canonical_map(real), _canonical_map(imag))

    @staticmethod
    def sqrt_int(n: int, coeff=1) -> "RadicalScalar":
        return RadicalScalar.from_terms(real=[(Fraction(coeff), n)])

    @classmethod
    def __new_canonical(cls, re: dict, im: dict) -> "RadicalScalar":
        return cls(re, im, _canonical=True)

    # ---- structure ----------------------------------------------------

    def real_terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return tuple(sorted(self._re.items()))

    def imag_terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return tuple(sorted(self._im.items()))

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_rational(self) -> bool:
        return not self._im and set(self._re) <= {1}

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._re.get(1, Fraction(0))

    def is_real(self) -> bool:
        return not self._im

    # ---- arithmetic ----------------------------------------------------

    def __add__(self, other: "RadicalScalar") -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        re = dict(self._re)
        for r, c in other._re.items():
            acc = re.get(r, 0) + c
            if acc:
                re[r] = acc
            elif r in re:
                del re[r]
        im = dict(self._im)
        for r, c in other._im.items():
            acc = im.get(r, 0) + c
            if acc:
                im[r] = acc
            elif r in im:
                del im[r]
        return RadicalScalar(re, im, _canonical=True)

    def __sub__(self, other: "RadicalScalar") -> "RadicalScalar":
        return self + (-other)

    def __neg__(self) -> "RadicalScalar":
        return RadicalScalar(
            {r: -c for r, c in self._re.items()},
            {r: -c for r, c in self._im.items()},
            _canonical=True,
        )

    @staticmethod
    def _map_mul(a: Mapping[int, Fraction], b: Mapping[int, Fraction], out: dict, sign: int) -> None:
        for r1, c1 in a.items():
            for r2, c2 in b.items():
                c, r = radical_normalize(c1 * c2, r1 * r2)
                acc = out.get(r, 0) + (c if sign > 0 else -c)
                if acc:
                    out[r] = acc
                elif r in out:
                    del out[r]

    def __mul__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            if isinstance(other, (int, Fraction)):
                other = RadicalScalar.from_rational(other)
            else:
                return NotImplemented
        re: dict = {}
        im: dict = {}
        RadicalScalar._map_mul(self._re, other._re, re, +1)
        RadicalScalar._map_mul(self._im, other._im, re, -1)
        RadicalScalar._map_mul(self._re, other._im, im, +1)
        RadicalScalar._map_mul(self._im, other._re, im, +1)
        return RadicalScalar(re, im, _canonical=True)

    __rmul__ = __mul__

    def conjugate(self) -> "RadicalScalar":
        return RadicalScalar(dict(self._re), {r: -c for r, c in self._im.items()}, _canonical=True)

    def times_i_power(self, k: int) -> "RadicalScalar":
        """Multiply by i**k exactly (k may be negative)."""
        k %= 4
        if k == 0:
            return self
        if k == 1:
            return RadicalScalar({r: -c for r, c in self._im.items()}, dict(self._re), _canonical=True)
        if k == 2:
            return -self
        return RadicalScalar(dict(self._im), {r: -c for r, c in self._re.items()}, _canonical=True)

    # ---- comparison / hashing ------------------------------------------

    def _cache_key(self):
        if self._key is None:
            self._key = (self.real_terms(), self.imag_terms())
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        return hash(self._cache_key())

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ---- conversions ----------------------------------------------------

    def to_complex(self) -> complex:
        re = sum(float(c) * math.sqrt(r) for r, c in self._re.items())
        im = sum(float(c) * math.sqrt(r) for r, c in self._im.items())
        return complex(re, im)

    def to_json(self) -> dict:
        return {
            "real": [{"radicand": r, "coeff": str(c)} for r, c in self.real_terms()],
            "imag": [{"radicand": r, "coeff": str(c)} for r, c in self.imag_terms()],
        }

    @staticmethod
    def from_json(obj: Mapping) -> "RadicalScalar":
        def load(part):
            return [(Fraction(t["coeff"]), int(t["radicand"])) for t in obj.get(part, [])]

        return RadicalScalar.from_terms(real=load("real"), imag=load("imag"))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"

        def side(items, unit):
            chunks = []
            for r, c in items:
                if r == 1:
                    chunks.append(f"{c}{unit}")
                else:
                    chunks.append(f"{c}{unit}*sqrt({r})")
            return chunks

        parts = side(self.real_terms(), "") + side(self.imag_terms(), "*i")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"RadicalScalar({self})"

"""Floating-point Monte Carlo Haar integration and numeric representation matrices.

Everything here is an independent double-precision check on the exact engine:
Haar sampling in Euler coordinates (phi uniform on [0, 2pi), psi uniform on
[-2pi, 2pi), cos(theta) uniform on [-1, 1]), matrix-element evaluation from
the same pinned phase convention, and a 2x2 composition check that validates
the homomorphism property of every spin.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np

from .integrals import ProductSpec
from .powers import FiniteFunction
from .scalars import HalfInt
from .wigner import MatrixElementIndex, theta_restriction

_CHUNK = 1 << 16


class EulerAngles(NamedTuple):
    phi: float
    theta: float
    psi: float


class McEstimate(NamedTuple):
    mean: complex
    std_error: float
    samples: int
    seed: int


def sample_haar(rng: np.random.Generator) -> EulerAngles:
    """One Haar-distributed coordinate triple (density sin(theta) in theta)."""
    phi = float(rng.uniform(0.0, 2.0 * math.pi))
    psi = float(rng.uniform(-2.0 * math.pi, 2.0 * math.pi))
    theta = float(np.arccos(1.0 - 2.0 * rng.uniform(0.0, 1.0)))
    return EulerAngles(phi, theta, psi)


def _sample_batch(rng: np.random.Generator, size: int):
    phi = rng.uniform(0.0, 2.0 * math.pi, size)
    psi = rng.uniform(-2.0 * math.pi, 2.0 * math.pi, size)
    theta = np.arccos(1.0 - 2.0 * rng.uniform(0.0, 1.0, size))
    return phi, theta, psi


def _theta_factor(idx: MatrixElementIndex, theta):
    """t[l,m,n](a(theta)) evaluated in floats (scalar or array theta)."""
    data = theta_restriction(idx)
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    acc = 0.0
    for c_exp, s_exp, coeff in data.terms:
        acc = acc + float(coeff) * c ** c_exp * s ** s_exp
    return (1j ** data.phase) * math.sqrt(data.radicand) * acc


def eval_matrix_element(idx: MatrixElementIndex, g: EulerAngles) -> complex:
    """exp(-i m phi) * t[l,m,n](a(theta)) * exp(-i n psi)."""
    m = idx.m.twice / 2.0
    n = idx.n.twice / 2.0
    return complex(
        np.exp(-1j * m * g.phi) * _theta_factor(idx, g.theta) * np.exp(-1j * n * g.psi)
    )


def _eval_batch(idx: MatrixElementIndex, phi, theta, psi):
    m = idx.m.twice / 2.0
    n = idx.n.twice / 2.0
    return np.exp(-1j * m * phi) * _theta_factor(idx, theta) * np.exp(-1j * n * psi)


McTarget = Union[ProductSpec, Tuple[FiniteFunction, int], Tuple[FiniteFunction, int, MatrixElementIndex]]


def mc_integral(target: McTarget, samples: int = 1_000_000, seed: int = 0) -> McEstimate:
    """Monte Carlo Haar estimate of a product integral or of integral(f^P [h]).

    target: a ProductSpec, or (f, P), or (f, P, h).  Deterministic for a
    given (seed, samples): draws happen in fixed-size chunks from one
    PCG64 stream, and chunk means merge by sample count.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")

    if isinstance(target, ProductSpec):
        def integrand(phi, theta, psi):
            acc = np.ones_like(phi, dtype=complex)
            for idx, power in target.factors:
                acc = acc * _eval_batch(idx, phi, theta, psi) ** power
            return acc
    else:
        f, power = target[0], target[1]
        shift: Optional[MatrixElementIndex] = target[2] if len(target) > 2 else None

        def integrand(phi, theta, psi):
            base = np.zeros_like(phi, dtype=complex)
            for idx, (re, im) in f.terms:
                base = base + (float(re) + 1j * float(im)) * _eval_batch(idx, phi, theta, psi)
            acc = base ** power
            if shift is not None:
                acc = acc * _eval_batch(shift, phi, theta, psi)
            return acc

    rng = np.random.default_rng(seed)
    total = 0.0 + 0.0j
    total_sq_re = 0.0
    total_sq_im = 0.0
    remaining = samples
    while remaining > 0:
        size = min(_CHUNK, remaining)
        phi, theta, psi = _sample_batch(rng, size)
        vals = integrand(phi, theta, psi)
        total += vals.sum()
        total_sq_re += float(np.sum(vals.real ** 2))
        total_sq_im += float(np.sum(vals.imag ** 2))
        remaining -= size

    mean = total / samples
    if samples > 1:
        var_re = max(total_sq_re / samples - mean.real ** 2, 0.0) * samples / (samples - 1)
        var_im = max(total_sq_im / samples - mean.imag ** 2, 0.0) * samples / (samples - 1)
        std_error = math.sqrt((var_re + var_im) / samples)
    else:
        std_error = 0.0
    return McEstimate(mean=complex(mean), std_error=std_error, samples=samples, seed=seed)


def representation_matrix(l: HalfInt, g: EulerAngles) -> np.ndarray:
    """Matrix of all t[l,m,n](g); rows and columns ordered m, n = l, l-1, ..., -l."""
    l = HalfInt(l)
    dim = l.twice + 1
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        m2 = l.twice - 2 * i
        for j in range(dim):
            n2 = l.twice - 2 * j
            idx = MatrixElementIndex(l, HalfInt.from_twice(m2), HalfInt.from_twice(n2))
            out[i, j] = eval_matrix_element(idx, g)
    return out


def group_matrix(g: EulerAngles) -> np.ndarray:
    """The 2x2 special-unitary matrix k(phi) a(theta) k(psi)."""
    c = math.cos(g.theta / 2.0)
    s = math.sin(g.theta / 2.0)
    k1 = np.array([[np.exp(0.5j * g.phi), 0], [0, np.exp(-0.5j * g.phi)]])
    a = np.array([[c, 1j * s], [1j * s, c]])
    k2 = np.array([[np.exp(0.5j * g.psi), 0], [0, np.exp(-0.5j * g.psi)]])
    return k1 @ a @ k2


_TWO_PI = 2.0 * math.pi
_FOUR_PI = 4.0 * math.pi


def euler_from_matrix(u: np.ndarray, eps: float = 1e-12) -> EulerAngles:
    """Euler coordinates of a 2x2 special-unitary matrix.

    The factorization is non-unique at theta in {0, pi}; there the branch puts
    the whole phase on psi.  Generic phi lands in [0, 2pi), psi in [-2pi, 2pi).
    """
    absc = abs(u[0, 0])
    abss = abs(u[1, 0])
    theta = 2.0 * math.atan2(abss, absc)
    if abss <= eps:
        total = 2.0 * np.angle(u[0, 0])
        return EulerAngles(0.0, 0.0, _wrap_psi(total))
    if absc <= eps:
        # with phi = 0: u[1,0] = i exp(i psi / 2)
        psi = 2.0 * np.angle(u[1, 0]) - math.pi
        return EulerAngles(0.0, math.pi, _wrap_psi(psi))
    total = 2.0 * np.angle(u[0, 0])          # phi + psi
    diff = 2.0 * np.angle(u[0, 1]) - math.pi  # phi - psi
    phi = (total + diff) / 2.0
    psi = (total - diff) / 2.0
    shift = math.floor(phi / _TWO_PI)
    phi -= shift * _TWO_PI                    # into [0, 2pi)
    psi += shift * _TWO_PI                    # k(phi+2pi) = -k(phi) pairs with k(psi-2pi)
    return EulerAngles(phi, theta, _wrap_psi(psi))


def _wrap_psi(psi: float) -> float:
    return (psi + _TWO_PI) % _FOUR_PI - _TWO_PI


def compose_and_check(l: HalfInt, g1: EulerAngles, g2: EulerAngles, tol: float) -> bool:
    """Check T(g1) T(g2) = T(g1 g2) at spin l within tol (max-abs entrywise)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    product = group_matrix(g1) @ group_matrix(g2)
    g12 = euler_from_matrix(product)
    lhs = representation_matrix(l, g1) @ representation_matrix(l, g2)
    rhs = representation_matrix(l, g12)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)

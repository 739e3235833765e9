"""Instance classification, seeded fuzzing, and the built-in verification suite.

The harness ties the geometry to the integration engine.  The proven
direction is one-sided: when the origin lies outside the convex hull of the
support points, every power integral must vanish exactly, so any nonzero
value is an implementation bug ("violation").  When the origin is inside,
finding some nonzero power is "consistent" with the two-sided vanishing
conjecture, and an all-zero scan up to the horizon is only
"inconclusive-candidate": no finite horizon proves anything.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .hull import (
    SupportHull,
    origin_in_hull,
    rank_classification,
    two_term_criterion,
    vanishing_threshold,
)
from .powers import (
    FiniteFunction,
    GaussianRational,
    minimal_balanced_pair,
    power_integral,
    power_integral_with_witness,
    power_scan,
)
from .integrals import ProductSpec, integrate_product
from .scalars import HalfInt, RadicalScalar
from .wigner import MatrixElementIndex, legendre_poly

VERDICT_CONSISTENT = "consistent"
VERDICT_INCONCLUSIVE = "inconclusive-candidate"
VERDICT_VIOLATION = "violation"

DEFAULT_COEFF_POOL: Tuple[GaussianRational, ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(-1), Fraction(0)),
    (Fraction(2), Fraction(0)),
    (Fraction(-2), Fraction(0)),
    (Fraction(1, 2), Fraction(0)),
    (Fraction(-1, 2), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(0), Fraction(-1)),
    (Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(-1)),
)


def classify_instance(f: FiniteFunction) -> str:
    """Case tag: single | two-term | three-term-rank-r | general-k."""
    k = len(f)
    if k == 1:
        return "single"
    if k == 2:
        return "two-term"
    if k == 3:
        pts = f.support_points()
        return f"three-term-rank-{rank_classification(*pts).rank}"
    return "general-k"


@dataclass(frozen=True)
class InstanceReport:
    """Outcome of scanning one instance against the proven direction."""

    function: FiniteFunction
    case_tag: str
    origin_inside: bool
    pmax: int
    scan: Tuple[Tuple[int, RadicalScalar], ...]
    verdict: str
    first_nonzero_p: Optional[int]
    trial: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "trial": self.trial,
            "function": self.function.to_json(),
            "case": self.case_tag,
            "origin_inside": self.origin_inside,
            "pmax": self.pmax,
            "first_nonzero_p": self.first_nonzero_p,
            "scan": [[p, v.to_json()] for p, v in self.scan],
            "verdict": self.verdict,
        }


def check_proven_direction(f: FiniteFunction, pmax: int, trial: Optional[int] = None) -> InstanceReport:
    """Scan integral(f^P) for P <= pmax and judge it against the hull verdict."""
    inside = origin_in_hull(SupportHull.from_function(f))
    scan = tuple(power_scan(f, pmax))
    first_nonzero = next((p for p, v in scan if not v.is_zero()), None)
    if not inside:
        verdict = VERDICT_VIOLATION if first_nonzero is not None else VERDICT_CONSISTENT
    else:
        verdict = VERDICT_CONSISTENT if first_nonzero is not None else VERDICT_INCONCLUSIVE
    return InstanceReport(
        function=f,
        case_tag=classify_instance(f),
        origin_inside=inside,
        pmax=pmax,
        scan=scan,
        verdict=verdict,
        first_nonzero_p=first_nonzero,
        trial=trial,
    )


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    trials: int
    l_max: HalfInt = HalfInt(2)
    k_max: int = 4
    p_max: int = 12
    coeff_pool: Tuple[GaussianRational, ...] = DEFAULT_COEFF_POOL
    rank2_bias: float = 0.0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.p_max < 1:
            raise ValueError("p_max must be >= 1")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if not (0.0 <= self.rank2_bias <= 1.0):
            raise ValueError("rank2_bias must be in [0, 1]")
        if self.rank2_bias > 0 and (self.k_max < 3 or self.l_max.twice < 1):
            raise ValueError("rank2_bias needs k_max >= 3 and l_max >= 1/2")
        if any(c == (0, 0) for c in self.coeff_pool):
            raise ValueError("coefficient pool must not contain zero")


@dataclass
class FuzzSummary:
    seed: int
    trials_run: int
    counts_by_verdict: Dict[str, int] = field(default_factory=dict)
    counts_by_case: Dict[str, int] = field(default_factory=dict)
    violations: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "summary": True,
            "seed": self.seed,
            "trials_run": self.trials_run,
            "counts_by_verdict": dict(sorted(self.counts_by_verdict.items())),
            "counts_by_case": dict(sorted(self.counts_by_case.items())),
            "violations": list(self.violations),
        }


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent per-trial generator: Mersenne Twister seeded by SHA-256(seed:trial).

    Derivation is recorded here so report streams are reproducible: parallel
    or sequential evaluation of trials yields identical instances.
    """
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _random_index(rng: random.Random, l_max: HalfInt) -> MatrixElementIndex:
    l2 = rng.randint(0, l_max.twice)
    m2 = -l2 + 2 * rng.randint(0, l2)
    n2 = -l2 + 2 * rng.randint(0, l2)
    return MatrixElementIndex(HalfInt.from_twice(l2), HalfInt.from_twice(m2), HalfInt.from_twice(n2))


def _random_distinct_indices(rng: random.Random, l_max: HalfInt, k: int) -> List[MatrixElementIndex]:
    chosen: List[MatrixElementIndex] = []
    while len(chosen) < k:
        idx = _random_index(rng, l_max)
        if idx not in chosen:
            chosen.append(idx)
    return chosen


def _index_for_point(rng: random.Random, l_max: HalfInt, m2: int, n2: int) -> Optional[MatrixElementIndex]:
    """A valid index with the given (m, n), uniformly random spin, or None."""
    if (m2 - n2) % 2:
        return None
    base = max(abs(m2), abs(n2))
    options = [l2 for l2 in range(base, l_max.twice + 1, 2)]
    if not options:
        return None
    l2 = rng.choice(options)
    return MatrixElementIndex(HalfInt.from_twice(l2), HalfInt.from_twice(m2), HalfInt.from_twice(n2))


def _random_rank2_indices(rng: random.Random, l_max: HalfInt) -> Optional[List[MatrixElementIndex]]:
    """Three distinct indices whose (m, n) points have rank exactly 2.

    The third point is a rational affine combination of the first two, kept
    on the half-integer lattice.
    """
    for _ in range(80):
        i1, i2 = _random_distinct_indices(rng, l_max, 2)
        p1 = (i1.m.twice, i1.n.twice)
        p2 = (i2.m.twice, i2.n.twice)
        if p1 == p2:
            continue
        t_num, t_den = rng.choice([(-1, 1), (2, 1), (3, 1), (1, 2), (3, 2), (-1, 2)])
        dm, dn = p2[0] - p1[0], p2[1] - p1[1]
        if (t_num * dm) % t_den or (t_num * dn) % t_den:
            continue
        m3 = p1[0] + (t_num * dm) // t_den
        n3 = p1[1] + (t_num * dn) // t_den
        if abs(m3) > l_max.twice or abs(n3) > l_max.twice:
            continue
        i3 = _index_for_point(rng, l_max, m3, n3)
        if i3 is None or i3 == i1 or i3 == i2:
            continue
        pts = [(i.m, i.n) for i in (i1, i2, i3)]
        if rank_classification(*pts).rank != 2:
            continue
        return [i1, i2, i3]
    return None


def generate_instance(rng: random.Random, cfg: FuzzConfig) -> FiniteFunction:
    indices: Optional[List[MatrixElementIndex]] = None
    if cfg.rank2_bias > 0 and rng.random() < cfg.rank2_bias:
        indices = _random_rank2_indices(rng, cfg.l_max)
    if indices is None:
        k = rng.randint(1, cfg.k_max)
        indices = _random_distinct_indices(rng, cfg.l_max, k)
    coeffs = [rng.choice(cfg.coeff_pool) for _ in indices]
    return FiniteFunction(tuple(zip(indices, coeffs)))


def fuzz(cfg: FuzzConfig) -> Tuple[List[InstanceReport], FuzzSummary]:
    """Deterministic fuzzing run; aborts at the first violation.

    The violating report (with full reproduction data) is the last element of
    the returned list when the summary records a violation.
    """
    summary = FuzzSummary(seed=cfg.seed, trials_run=0)
    reports: List[InstanceReport] = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        f = generate_instance(rng, cfg)
        report = check_proven_direction(f, cfg.p_max, trial=trial)
        reports.append(report)
        summary.trials_run += 1
        summary.counts_by_verdict[report.verdict] = summary.counts_by_verdict.get(report.verdict, 0) + 1
        summary.counts_by_case[report.case_tag] = summary.counts_by_case.get(report.case_tag, 0) + 1
        if report.verdict == VERDICT_VIOLATION:
            summary.violations.append(trial)
            break
    return reports, summary


def legendre_power_moments(
    coeffs: Mapping[int, GaussianRational], pmax: int
) -> List[GaussianRational]:
    """Exact moments (1/2) integral_{-1}^{1} f(x)^P dx for P = 1..pmax.

    f(x) = sum_l A_l P_l(x); these are the power integrals of the
    two-sided-invariant combination sum_l A_l t[l, 0, 0].
    """
    if not coeffs:
        raise ValueError("need at least one coefficient")
    norm = {int(l): (Fraction(re), Fraction(im)) for l, (re, im) in coeffs.items()}
    if any(l < 0 for l in norm):
        raise ValueError("degrees must be nonnegative integers")
    if all(c == (0, 0) for c in norm.values()):
        raise ValueError("all coefficients are zero")
    if pmax < 1:
        raise ValueError("pmax must be >= 1")

    degree = max(norm)
    base_re = [Fraction(0)] * (degree + 1)
    base_im = [Fraction(0)] * (degree + 1)
    for l, (re, im) in norm.items():
        for j, c in enumerate(legendre_poly(l).coeffs):
            base_re[j] += re * c
            base_im[j] += im * c

    def poly_mul(a, b):
        out_re = [Fraction(0)] * (len(a[0]) + len(b[0]) - 1)
        out_im = [Fraction(0)] * (len(a[0]) + len(b[0]) - 1)
        for i, (ar, ai) in enumerate(zip(*a)):
            if ar == 0 and ai == 0:
                continue
            for j, (br, bi) in enumerate(zip(*b)):
                out_re[i + j] += ar * br - ai * bi
                out_im[i + j] += ar * bi + ai * br
        return (out_re, out_im)

    def moment(poly):
        re = sum((c / (j + 1) for j, c in enumerate(poly[0]) if j % 2 == 0), Fraction(0))
        im = sum((c / (j + 1) for j, c in enumerate(poly[1]) if j % 2 == 0), Fraction(0))
        return (re, im)

    base = (base_re, base_im)
    cur = base
    moments = [moment(cur)]
    for _ in range(2, pmax + 1):
        cur = poly_mul(cur, base)
        moments.append(moment(cur))
    return moments


def legendre_moment_scan(
    coeffs: Mapping[int, GaussianRational], pmax: int
) -> Optional[Tuple[int, GaussianRational]]:
    """First P in 1..pmax with a nonzero moment, together with its value."""
    for p, value in enumerate(legendre_power_moments(coeffs, pmax), start=1):
        if value != (0, 0):
            return (p, value)
    return None


@dataclass(frozen=True)
class SuiteItem:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    items: Tuple[SuiteItem, ...]

    @property
    def all_passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "all_passed": self.all_passed,
            "items": [
                {"name": i.name, "passed": i.passed, "detail": i.detail} for i in self.items
            ],
        }


def _all_indices(l_max_twice: int) -> List[MatrixElementIndex]:
    out = []
    for l2 in range(0, l_max_twice + 1):
        for m2 in range(-l2, l2 + 1, 2):
            for n2 in range(-l2, l2 + 1, 2):
                out.append(
                    MatrixElementIndex(
                        HalfInt.from_twice(l2), HalfInt.from_twice(m2), HalfInt.from_twice(n2)
                    )
                )
    return out


def _suite_schur() -> SuiteItem:
    """Pairings t[l,m,n] * t[l',-p,-q]: diagonal value (-1)^(m-n)/(2l+1), rest zero."""
    indices = _all_indices(4)
    checked = 0
    for a in indices:
        for b in indices:
            value = integrate_product(ProductSpec(((a, 1), (b, 1))))
            matches = b.l == a.l and b.m.twice == -a.m.twice and b.n.twice == -a.n.twice
            if matches:
                sign = -1 if ((a.m.twice - a.n.twice) // 2) % 2 else 1
                expected = RadicalScalar.from_rational(Fraction(sign, a.l.twice + 1))
            else:
                expected = RadicalScalar.zero()
            if value != expected:
                return SuiteItem(
                    "schur-orthogonality",
                    False,
                    f"pair {a} x {b}: got {value}, expected {expected}",
                )
            checked += 1
    return SuiteItem("schur-orthogonality", True, f"{checked} pairings at spin <= 2 exact")


def _suite_single_scans() -> SuiteItem:
    horizon = 8
    count = 0
    for idx in _all_indices(4):
        f = FiniteFunction(((idx, (Fraction(1), Fraction(0))),))
        scan = power_scan(f, horizon)
        nonzero = [p for p, v in scan if not v.is_zero()]
        if idx.m.twice == 0 and idx.n.twice == 0:
            p2 = scan[1][1]
            if not (p2.is_rational() and p2.as_rational() > 0):
                return SuiteItem(
                    "single-element-scans", False, f"{idx}: square integral not positive: {p2}"
                )
            continue
        if nonzero:
            return SuiteItem(
                "single-element-scans",
                False,
                f"{idx}: unexpected nonzero at P={nonzero[0]}",
            )
        count += 1
    return SuiteItem(
        "single-element-scans", True, f"{count} off-origin elements vanish to P={horizon}"
    )


def _lattice_points(bound_twice: int) -> List[Tuple[HalfInt, HalfInt]]:
    pts = []
    for m2 in range(-bound_twice, bound_twice + 1):
        for n2 in range(-bound_twice, bound_twice + 1):
            if (m2 - n2) % 2 == 0:
                pts.append((HalfInt.from_twice(m2), HalfInt.from_twice(n2)))
    return pts


def _min_spin_index(point: Tuple[HalfInt, HalfInt]) -> MatrixElementIndex:
    m, n = point
    l2 = max(abs(m.twice), abs(n.twice))
    return MatrixElementIndex(HalfInt.from_twice(l2), m, n)


def _suite_two_term() -> SuiteItem:
    pts = _lattice_points(3)
    checked = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            p1, p2 = pts[i], pts[j]
            if p1[0].twice == p1[1].twice == p2[0].twice == p2[1].twice == 0:
                continue
            i1, i2 = _min_spin_index(p1), _min_spin_index(p2)
            f = FiniteFunction(
                ((i1, (Fraction(1), Fraction(0))), (i2, (Fraction(1), Fraction(0))))
            )
            if two_term_criterion(p1, p2):
                alpha, beta = minimal_balanced_pair(p1, p2)
                m_total = alpha + beta
                v1 = power_integral(f, m_total)
                v2 = power_integral(f, 2 * m_total)
                if v1.is_zero() and v2.is_zero():
                    return SuiteItem(
                        "two-term-criterion",
                        False,
                        f"{p1},{p2}: criterion holds but powers {m_total},{2*m_total} vanish",
                    )
            else:
                scan = power_scan(f, 8)
                bad = [p for p, v in scan if not v.is_zero()]
                if bad:
                    return SuiteItem(
                        "two-term-criterion",
                        False,
                        f"{p1},{p2}: criterion fails but P={bad[0]} is nonzero",
                    )
            checked += 1
    witness = FiniteFunction.from_terms(
        [
            ((Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)), (Fraction(1), Fraction(0))),
            ((Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2)), (Fraction(1), Fraction(0))),
        ]
    )
    square = power_integral(witness, 2)
    if square != RadicalScalar.from_rational(-1):
        return SuiteItem(
            "two-term-criterion", False, f"witness pair square is {square}, expected -1"
        )
    return SuiteItem(
        "two-term-criterion",
        True,
        f"{checked} two-point supports agree; witness pair squares to -1",
    )


def _origin_combination_by_solve(pts: Sequence[Tuple[HalfInt, HalfInt]]) -> Optional[bool]:
    """Rank != 2 triples only: solvability of M alpha = (1,0,0)^T with alpha >= 0 in Q.

    Rank 3 has the unique Cramer solution; rank 1 means all points coincide.
    Returns None for rank 2 (no unique solve exists).
    """
    m1, m2, m3 = (p[0].as_fraction() for p in pts)
    n1, n2, n3 = (p[1].as_fraction() for p in pts)
    det = (m2 * n3 - m3 * n2) - (m1 * n3 - m3 * n1) + (m1 * n2 - m2 * n1)
    if det != 0:
        a1 = (m2 * n3 - m3 * n2) / det
        a2 = (m3 * n1 - m1 * n3) / det
        a3 = (m1 * n2 - m2 * n1) / det
        return a1 >= 0 and a2 >= 0 and a3 >= 0
    if rank_classification(*pts).rank == 2:
        return None
    return (m1, n1) == (0, 0)


def _suite_rank_consistency(trials: int = 200) -> SuiteItem:
    rng = random.Random(0x5EED)
    for t in range(trials):
        idxs = _random_distinct_indices(rng, HalfInt(2), 3)
        pts = [(i.m, i.n) for i in idxs]
        solvable = _origin_combination_by_solve(pts)
        if solvable is None:
            continue
        inside = origin_in_hull(SupportHull(tuple(pts)))
        if inside != solvable:
            return SuiteItem(
                "three-term-rank-consistency",
                False,
                f"trial {t}: hull={inside} but exact solve={solvable} for {pts}",
            )
    return SuiteItem("three-term-rank-consistency", True, f"{trials} random triples agree")


def _suite_threshold(trials: int = 50) -> SuiteItem:
    rng = random.Random(0xBEEF)
    done = 0
    while done < trials:
        k = rng.randint(1, 3)
        idxs = _random_distinct_indices(rng, HalfInt.from_twice(3), k)
        f = FiniteFunction(tuple((i, (Fraction(1), Fraction(0))) for i in idxs))
        h = SupportHull.from_function(f)
        if origin_in_hull(h):
            continue
        witness = _random_index(rng, HalfInt(2))
        p0 = vanishing_threshold(h, (witness.m, witness.n))
        for p in range(p0, p0 + 11):
            value = power_integral_with_witness(f, p, witness)
            if not value.is_zero():
                return SuiteItem(
                    "threshold-soundness",
                    False,
                    f"f={f.to_json()} h={witness}: nonzero at P={p} >= P0={p0}",
                )
        done += 1
    return SuiteItem("threshold-soundness", True, f"{trials} random (f, h) pairs vanish beyond P0")


def run_verification_suite() -> SuiteReport:
    """Exact re-checks of the proven statements; every item must pass."""
    items = (
        _suite_schur(),
        _suite_single_scans(),
        _suite_two_term(),
        _suite_rank_consistency(),
        _suite_threshold(),
    )
    return SuiteReport(items)

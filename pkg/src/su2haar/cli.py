"""Command-line interface: JSON in, JSON envelope out.

Exit codes: 0 success, 2 unreadable/invalid input, 3 threshold precondition
violated (origin inside hull), 4 fuzz found a violation, 5 verification suite
failure.  Diagnostics go to stderr; stdout carries JSON only (JSON-lines for
fuzz streams).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import __version__
from ._kernel import backend_name
from .harness import FuzzConfig, fuzz, run_verification_suite
from .hull import OriginInHullError, SupportHull, hull_certificate, vanishing_threshold
from .integrals import ProductSpec, integrate_product
from .numeric import mc_integral
from .powers import FiniteFunction, power_integral_with_witness, power_scan
from .scalars import HalfInt
from .wigner import MatrixElementIndex


class InputError(Exception):
    """Invalid input file or flag value; maps to exit code 2."""


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from None


def _check_schema(obj: dict, path: str) -> None:
    if "schema" in obj and obj["schema"] != 1:
        raise InputError(f"{path}: unsupported schema {obj['schema']!r}")


def _parse_index_obj(obj: dict, where: str) -> MatrixElementIndex:
    for field in ("l", "m", "n"):
        if field not in obj:
            raise InputError(f"{where}: missing field {field!r}")
    try:
        return MatrixElementIndex.of(obj["l"], obj["m"], obj["n"])
    except (ValueError, TypeError) as e:
        raise InputError(f"{where}: {e}") from None


def load_function_file(path: str) -> FiniteFunction:
    obj = _load_json(path)
    _check_schema(obj, path)
    try:
        return FiniteFunction.from_json(obj)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def load_product_file(path: str) -> tuple[ProductSpec, Optional[MatrixElementIndex]]:
    obj = _load_json(path)
    _check_schema(obj, path)
    if "factors" not in obj:
        raise InputError(f"{path}: missing field 'factors'")
    factors = []
    for i, fac in enumerate(obj["factors"]):
        idx = _parse_index_obj(fac, f"{path}: factors[{i}]")
        power = fac.get("power", 1)
        if not isinstance(power, int) or power < 1:
            raise InputError(f"{path}: factors[{i}].power must be a positive integer")
        factors.append((idx, power))
    shift = None
    if obj.get("shift") is not None:
        shift = _parse_index_obj(obj["shift"], f"{path}: shift")
    return ProductSpec(tuple(factors)), shift


def parse_index_flag(text: str, flag: str) -> MatrixElementIndex:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InputError(f"{flag}: expected 'l,m,n', got {text!r}")
    try:
        return MatrixElementIndex.of(*parts)
    except ValueError as e:
        raise InputError(f"{flag}: {e}") from None


def _envelope(args, exact=None, **extra) -> dict:
    env = {"schema": 1, "version": __version__, "command": list(args), "backend": backend_name()}
    if exact is not None:
        env["exact"] = exact
    env.update(extra)
    return env


def _emit(env: dict, started: float) -> None:
    env["timing_s"] = round(time.perf_counter() - started, 6)
    json.dump(env, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_integrate(ns, argv, started) -> int:
    spec, shift = load_product_file(ns.file)
    value = integrate_product(spec, shift)
    env = _envelope(argv, exact=value.to_json())
    if ns.mc:
        est = mc_integral(spec.with_extra(shift), samples=ns.mc, seed=ns.seed)
        env["numeric"] = {
            "mean_re": est.mean.real,
            "mean_im": est.mean.imag,
            "std_error": est.std_error,
            "samples": est.samples,
        }
        env["seed"] = ns.seed
    _emit(env, started)
    return 0


def _cmd_power_scan(ns, argv, started) -> int:
    if ns.pmax < 1:
        raise InputError("--pmax must be >= 1")
    f = load_function_file(ns.file)
    witness = parse_index_flag(ns.with_h, "--with-h") if ns.with_h else None
    if witness is None:
        values = power_scan(f, ns.pmax)
    else:
        values = [(p, power_integral_with_witness(f, p, witness)) for p in range(1, ns.pmax + 1)]
    rows = []
    for p, value in values:
        row = {"P": p, "exact": value.to_json()}
        if ns.mc:
            target = (f, p, witness) if witness is not None else (f, p)
            est = mc_integral(target, samples=ns.mc, seed=ns.seed + p)
            row["numeric"] = {
                "mean_re": est.mean.real,
                "mean_im": est.mean.imag,
                "std_error": est.std_error,
                "samples": est.samples,
            }
        rows.append(row)
    env = _envelope(argv, scan=rows, pmax=ns.pmax)
    if ns.with_h:
        env["with_h"] = ns.with_h
    if ns.mc:
        env["seed"] = ns.seed
    _emit(env, started)
    return 0


def _cmd_hull(ns, argv, started) -> int:
    f = load_function_file(ns.file)
    cert = hull_certificate(SupportHull.from_function(f))
    body = {"origin_inside": cert.inside}
    if cert.inside:
        body["weights"] = [str(w) for w in cert.weights]
    else:
        u, v, bound = cert.separator
        body["separator"] = {"u": str(u), "v": str(v), "min_dot": str(bound)}
    env = _envelope(argv, hull=body, support=[[str(m), str(n)] for m, n in f.support_points()])
    _emit(env, started)
    return 0


def _cmd_threshold(ns, argv, started) -> int:
    f = load_function_file(ns.file)
    witness = parse_index_flag(ns.h, "--h")
    hull = SupportHull.from_function(f)
    try:
        p0 = vanishing_threshold(hull, (witness.m, witness.n))
    except OriginInHullError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    env = _envelope(argv, threshold=p0, witness={"l": str(witness.l), "m": str(witness.m), "n": str(witness.n)})
    _emit(env, started)
    return 0


def _cmd_fuzz(ns, argv, started) -> int:
    try:
        l_max = HalfInt.parse(ns.lmax)
    except ValueError as e:
        raise InputError(f"--lmax: {e}") from None
    cfg = FuzzConfig(
        seed=ns.seed,
        trials=ns.trials,
        l_max=l_max,
        k_max=ns.kmax,
        p_max=ns.pmax,
        rank2_bias=ns.rank2_bias,
    )
    reports, summary = fuzz(cfg)
    lines = [json.dumps(r.to_json(), sort_keys=True) for r in reports]
    lines.append(json.dumps(summary.to_json(), sort_keys=True))
    if ns.out:
        try:
            with open(ns.out, "a", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
        except OSError as e:
            raise InputError(f"cannot write {ns.out}: {e}") from None
        env = _envelope(argv, summary=summary.to_json(), out=ns.out, seed=ns.seed)
        _emit(env, started)
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    if summary.violations:
        print(
            f"violation at trial {summary.violations[0]}; reproduction data in the last report",
            file=sys.stderr,
        )
        return 4
    return 0


def _cmd_verify(ns, argv, started) -> int:
    report = run_verification_suite()
    for item in report.items:
        status = "PASS" if item.passed else "FAIL"
        print(f"{status} {item.name}: {item.detail}", file=sys.stderr)
    env = _envelope(argv, verification=report.to_json())
    _emit(env, started)
    if not report.all_passed:
        failed = [i.name for i in report.items if not i.passed]
        print(f"failed items: {', '.join(failed)}", file=sys.stderr)
        return 5
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su2haar",
        description="Exact Haar integrals of SU(2) matrix-element products and support-hull vanishing tests",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("integrate", help="exact Haar integral of a product spec file")
    p.add_argument("file")
    p.add_argument("--mc", type=int, default=0, metavar="SAMPLES", help="add a Monte Carlo cross-check")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("power-scan", help="exact integral(f^P) for P = 1..pmax")
    p.add_argument("file")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--with-h", dest="with_h", metavar="L,A,B", help="multiply by the extra element t[l,a,b]")
    p.add_argument("--mc", type=int, default=0, metavar="SAMPLES")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("hull", help="origin-in-hull verdict with a rational certificate")
    p.add_argument("file")

    p = sub.add_parser("threshold", help="least P0 with f^P * h integrals forced to vanish for P >= P0")
    p.add_argument("file")
    p.add_argument("--h", required=True, metavar="L,A,B")

    p = sub.add_parser("fuzz", help="seeded random instances checked against the proven direction")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--lmax", default="2", help="max spin, e.g. 2 or 3/2")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--pmax", type=int, default=12)
    p.add_argument("--rank2-bias", dest="rank2_bias", type=float, default=0.0)
    p.add_argument("--out", help="append JSON-lines reports to this file")

    sub.add_parser("verify", help="run the built-in exact verification suite")
    return parser


_HANDLERS = {
    "integrate": _cmd_integrate,
    "power-scan": _cmd_power_scan,
    "hull": _cmd_hull,
    "threshold": _cmd_threshold,
    "fuzz": _cmd_fuzz,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return _HANDLERS[ns.cmd](ns, argv, started)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end emitting deterministic JSON.

Verbs map one-to-one onto library operations; nothing is randomized and all
numbers are exact, so identical inputs produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict

from .adelic import adelic_ordering, scale_into_z
from .approx import ApproxRequest, approximate
from .errors import (CertificateFailed, NoAdelicOrdering, NotCertified,
                     NotFinitelyGenerated, PadelicError, PrecisionExhausted)
from .globalbasis import char_ideal, global_membership, regular_basis
from .mahler import StepFunction, expand
from .ordering import local_membership, p_ordering
from .padic import default_precision
from .polys import format_poly, parse_poly
from .sets import (AdelicSet, adelic_from_json, adelic_to_json, parse_adelic,
                   parse_set, set_from_json)

VALIDATION_ERRORS = (ValueError, KeyError, json.JSONDecodeError, NotFinitelyGenerated,
                     NoAdelicOrdering)
DIAGNOSTIC_ERRORS = (PrecisionExhausted, CertificateFailed, NotCertified)


def _rat_json(x) -> Any:
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return {"num": x.numerator, "den": x.denominator}


def _emit(obj: Dict[str, Any], out_path: str) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_request(path: str) -> Dict[str, Any]:
    with open(path) as fh:
        return json.load(fh)


def _step_fn_from_json(obj: Dict[str, Any]) -> StepFunction:
    domain = set_from_json(obj["set"])
    n_prec = int(obj.get("N", default_precision()))
    table = {int(k): int(v) for k, v in obj["table"].items()}
    return StepFunction(prime=int(obj["p"]), domain=domain,
                       modulus_exp=int(obj["m"]), table=table, precision=n_prec)


def _cmd_ordering(args) -> Dict[str, Any]:
    s = parse_set(args.set)
    if args.length < 1:
        raise ValueError("--length counts points and must be >= 1")
    o = p_ordering(s, args.length - 1, args.precision)
    return {"p": s.prime, "points": [_rat_json(a) for a in o.points],
            "w": list(o.w), "N": o.precision}


def _cmd_charideal(args) -> Dict[str, Any]:
    a = _adelic_arg(args)
    ideal = char_ideal(a, args.degree, args.precision)
    if not ideal.is_fractional():
        return {"degree": args.degree, "finitely_generated": False,
                "witness": ideal.witness}
    return {"degree": args.degree, "finitely_generated": True,
            "D": ideal.denominator(),
            "factored": {str(p): e for p, e in ideal.factored.items()}}


def _cmd_basis(args) -> Dict[str, Any]:
    a = _adelic_arg(args)
    fam = regular_basis(a, args.degree, args.precision)
    return {"degree": args.degree,
            "polys": [format_poly(f) for f in fam.polys],
            "lc_denominators": [f.lc().denominator for f in fam.polys]}


def _cmd_member(args) -> Dict[str, Any]:
    f = parse_poly(args.poly)
    if args.adelic is not None:
        member = global_membership(f, parse_adelic(args.adelic), args.precision)
    else:
        member = local_membership(f, parse_set(args.set), args.precision)
    return {"member": member, "poly": format_poly(f)}


def _cmd_expand(args) -> Dict[str, Any]:
    phi = _step_fn_from_json(_load_request(args.request))
    s = expand(phi, None, args.precision)
    return {"p": phi.prime, "coeffs": list(s.coeffs), "N": s.precision,
            "certified": s.certified, "certificate_depth": s.certificate_depth,
            "points": [_rat_json(a) for a in s.ordering.points[:s.length()]]}


def _cmd_approx(args) -> Dict[str, Any]:
    obj = _load_request(args.request)
    a = adelic_from_json(obj["set"])
    targets = {int(p): (_step_fn_from_json(t["phi"]), int(t["k"]))
               for p, t in obj["targets"].items()}
    cert = approximate(ApproxRequest(set=a, targets=targets), args.precision)
    return {"poly": format_poly(cert.poly),
            "certificate": {"closeness": {str(p): k for p, k in cert.closeness.items()},
                            "member": cert.member, "degree": cert.degree,
                            "attempts": cert.attempts}}


def _cmd_adelic_ordering(args) -> Dict[str, Any]:
    a = _adelic_arg(args)
    o = adelic_ordering(a, args.length, args.precision)
    points = [{"default": _rat_json(pt.default),
               "tracked": {str(p): v.residue for p, v in pt.tracked.items()}}
              for pt in o.points]
    return {"points": points,
            "w": {str(p): list(o.local[p].w) for p in sorted(o.local)},
            "exceptions": [list(e) for e in o.exceptions]}


def _cmd_scale(args) -> Dict[str, Any]:
    obj = _load_request(args.request)
    components = {int(p): [(Fraction(c["num"], c.get("den", 1))
                            if isinstance(c, dict) else Fraction(c), int(k))
                           for c, k in balls]
                  for p, balls in obj["components"].items()}
    d, scaled = scale_into_z(components)
    return {"d": d, "set": adelic_to_json(scaled)}


def _adelic_arg(args) -> AdelicSet:
    if args.adelic is None:
        raise ValueError("this verb requires --adelic")
    return parse_adelic(args.adelic)


_HANDLERS = {
    "ordering": _cmd_ordering,
    "charideal": _cmd_charideal,
    "basis": _cmd_basis,
    "member": _cmd_member,
    "expand": _cmd_expand,
    "approx": _cmd_approx,
    "adelic-ordering": _cmd_adelic_ordering,
    "scale": _cmd_scale,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padelic",
        description="exact arithmetic for integer-valued polynomials on p-adic sets")
    parser.add_argument("verb", choices=sorted(_HANDLERS))
    parser.add_argument("--set", help="single-prime set DSL, e.g. 'p=2; balls: 0+p^1'")
    parser.add_argument("--adelic", help="adelic set DSL, e.g. 'default=Zp; p=2; balls: 0+p^1'")
    parser.add_argument("--degree", type=int, default=0)
    parser.add_argument("--length", type=int, default=0)
    parser.add_argument("--precision", type=int, default=None)
    parser.add_argument("--poly", help="polynomial, e.g. '1/2*x^2-1/2*x'")
    parser.add_argument("--request", help="path to a JSON request file")
    parser.add_argument("--out", help="write JSON here instead of stdout")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        result = _HANDLERS[args.verb](args)
    except DIAGNOSTIC_ERRORS as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)}, args.out)
        return 3
    except VALIDATION_ERRORS as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)}, args.out)
        return 2
    except PadelicError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)}, args.out)
        return 2
    _emit(result, args.out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line interface.

Subcommands
-----------
family list / family gen    catalogue access
analyze                     exact moments, cumulants, optional root profile
sweep                       family instances along a parameter schedule
limit                       spectral atoms and limit-shape verdict
pmf                         probability table, optionally against a Gaussian

Exit codes: 0 success, 2 invalid arguments or parameters, 3 computation
error, 4 a family that claims unit-circle roots failed verification.

All exact quantities are printed as rational strings ("3/4", "2"); floats
carry 20 significant digits.  Output is deterministic for fixed inputs.
The default root-finding precision comes from UNIMOMENT_PRECISION_BITS
(256 when unset) and can be overridden per call with --precision.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

import mpmath as mp

from .errors import InvalidParams, RootsOffCircle, UnimomentError
from .exactpoly import ExactPoly, from_coeffs, strip_shift
from .families import FamilyOutput, generate, list_families
from .limitlaw import classify, convergence_sweep, extract_product_params
from .moments import (
    Distribution,
    central_moment,
    cumulants_from_pmf,
    make_distribution,
    normalized_fourth,
)
from .unitroots import angle_power_sums, jump_function, omega, unit_angles

SCHEMA = "unimoment/1"
FLOAT_DIGITS = 20


def _fmt(x) -> str:
    """20-significant-digit decimal string for any real scalar."""
    if isinstance(x, Fraction):
        x = mp.mpf(x.numerator) / x.denominator
    elif not isinstance(x, mp.mpf):
        x = mp.mpf(x)
    return mp.nstr(x, FLOAT_DIGITS)


def _frac_str(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else str(x)


def _coerce_scalar(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidParams(f"cannot parse parameter value {text!r}") from None


def _coerce_value(text: str):
    if ":" in text:
        return [_coerce_scalar(v) for v in text.split(":")]
    return _coerce_scalar(text)


def _parse_assignments(text: str) -> dict:
    """Parse "n=8,k=4"; list values use colons, e.g. "parts=2:3:4"."""
    out: dict = {}
    if not text:
        return out
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise InvalidParams(f"expected key=value, got {chunk!r}")
        key, _, value = chunk.partition("=")
        out[key.strip()] = _coerce_value(value.strip())
    return out


def _parse_param_flags(pairs) -> dict:
    out: dict = {}
    for item in pairs or ():
        if "=" not in item:
            raise InvalidParams(f"expected key=value, got {item!r}")
        key, _, value = item.partition("=")
        out[key.strip()] = _coerce_value(value.strip())
    return out


def _parse_extra_flags(extras) -> dict:
    """Turn leftover "--name value" (or "--name=value") pairs into params."""
    out: dict = {}
    queue = list(extras)
    while queue:
        item = queue.pop(0)
        if not item.startswith("--"):
            raise InvalidParams(f"unexpected argument {item!r}")
        name = item[2:]
        if "=" in name:
            name, _, value = name.partition("=")
        else:
            if not queue:
                raise InvalidParams(f"flag --{name} is missing a value")
            value = queue.pop(0)
        if not name:
            raise InvalidParams(f"unexpected argument {item!r}")
        out[name] = _coerce_value(value)
    return out


def _precision_bits(args) -> int:
    if getattr(args, "precision", None):
        return args.precision
    raw = os.environ.get("UNIMOMENT_PRECISION_BITS", "256")
    try:
        return int(raw)
    except ValueError:
        raise InvalidParams(
            f"UNIMOMENT_PRECISION_BITS must be an integer, got {raw!r}"
        ) from None


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _read_coeff_file(path: str) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read().strip()
    if not text:
        raise InvalidParams(f"{path} is empty")
    if text[0] in "[{":
        data = json.loads(text)
        if isinstance(data, dict):
            data = data.get("coeffs", data.get("coefficients"))
            if data is None:
                raise InvalidParams(f"{path}: no 'coeffs' field")
        if not isinstance(data, list):
            raise InvalidParams(f"{path}: expected a JSON array")
        return [Fraction(str(v)) for v in data]
    return [Fraction(v.strip()) for v in text.split(",")]


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def _params_json(params: dict) -> dict:
    return {
        k: ([str(x) for x in v] if isinstance(v, (list, tuple)) else str(v))
        for k, v in params.items()
    }


def _family_payload(out: FamilyOutput) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "family_output",
        "family": out.family,
        "params": _params_json(out.params),
        "degree": out.poly.degree,
        "coeffs": [str(c) for c in out.poly.coeffs],
        "factored": (
            None
            if out.factored is None
            else {
                "numer": list(out.factored.numer),
                "denom": list(out.factored.denom),
            }
        ),
        "expected_mean": _frac_str(out.expected_mean),
        "expected_variance": _frac_str(out.expected_variance),
        "expected_m4_identity": _frac_str(out.expected_m4_identity),
        "claims_root_unitary": out.claims_root_unitary,
        "notes": list(out.notes),
    }


def _handle_family(args, extras=()) -> int:
    if args.family_cmd == "list":
        if extras:
            raise InvalidParams(f"unexpected arguments: {list(extras)}")
        for name, signature in list_families():
            print(f"{name:22s} {signature}")
        return 0
    params = _parse_param_flags(args.param)
    params.update(_parse_extra_flags(extras))
    out = generate(args.name, **params)
    if args.out == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["k", "coeff"])
        for k, c in enumerate(out.poly.coeffs):
            writer.writerow([k, str(c)])
    else:
        _emit_json(_family_payload(out))
    return 0


def _resolve_input(args) -> tuple[ExactPoly, Optional[FamilyOutput]]:
    sources = [
        args.coeffs is not None,
        args.file is not None,
        args.family is not None,
    ]
    if sum(sources) != 1:
        raise InvalidParams(
            "exactly one of --coeffs, --file, --family is required"
        )
    if args.coeffs is not None:
        return from_coeffs(
            Fraction(v.strip()) for v in args.coeffs.split(",")
        ), None
    if args.file is not None:
        return from_coeffs(_read_coeff_file(args.file)), None
    out = generate(args.family, **_parse_assignments(args.params or ""))
    return out.poly, out


def _root_section(
    poly: ExactPoly, precision: int, top_k: int = 5
) -> tuple[dict, Optional[object]]:
    shift = 0
    core = poly
    if poly.coeffs[0] == 0:
        shift, core = strip_shift(poly)
    profile = unit_angles(core, precision)
    section = {
        "status": "on_circle",
        "shift_stripped": shift,
        "precision_bits": profile.precision_bits,
        "degree": profile.degree,
        "angles": [_fmt(t) for t in profile.angles],
        "multiplicities": list(profile.multiplicities),
        "pi_multiplicity": profile.pi_multiplicity,
        "residual_bound": _fmt(profile.residual_bound),
    }
    if profile.degree % 2 == 0 and profile.degree > 0:
        s1 = angle_power_sums(profile, 1)
        section["sigma_sq_from_angles"] = _fmt(s1)
        section["omega"] = _fmt(omega(profile))
        jumps = jump_function(profile)
        section["jump_masses_top"] = [_fmt(m) for m in jumps.top(top_k)]
        section["jump_total_mass"] = _fmt(jumps.total_mass)
    return section, profile


def _input_echo(args, poly: ExactPoly) -> dict:
    echo: dict = {"coeffs": [str(c) for c in poly.coeffs]}
    if args.coeffs is not None:
        echo["source"] = "coeffs"
    elif args.file is not None:
        echo["source"] = "file"
        echo["path"] = args.file
    else:
        echo["source"] = "family"
        echo["family"] = args.family
        echo["params"] = _params_json(_parse_assignments(args.params or ""))
    return echo


def _handle_analyze(args) -> int:
    started = time.perf_counter()
    poly, fam = _resolve_input(args)
    dist = make_distribution(poly)
    var = dist.variance
    m4 = normalized_fourth(dist) if var else None
    payload = {
        "schema": SCHEMA,
        "kind": "analysis",
        "input": _input_echo(args, poly),
        "degree": dist.span,
        "palindromic": dist.is_palindromic(),
        "mean": str(dist.mean),
        "variance": str(var),
    }
    if fam is not None:
        payload["family"] = fam.family
        payload["claims_root_unitary"] = fam.claims_root_unitary
    if m4 is not None:
        payload["m4"] = str(m4)
        payload["gap_to_3"] = str(3 - m4)
        payload["gap_to_1"] = str(m4 - 1)
        upper = 3 - Fraction(1, 2) / var
        payload["m4_upper_bound"] = str(upper)
        violated = (
            m4 > upper and dist.is_palindromic() and dist.span % 2 == 0
        )
        payload["m4_bound_violated"] = violated
    order = args.cumulants
    kappas = cumulants_from_pmf(dist, order)
    payload["cumulants"] = [str(v) for v in kappas.values]
    exit_code = 0
    if args.roots:
        try:
            section, profile = _root_section(poly, _precision_bits(args))
            payload["roots"] = section
            if var:
                descriptor = classify(
                    dist, profile=profile,
                    precision_bits=_precision_bits(args),
                )
                payload["limit_law"] = {
                    "verdict": descriptor.verdict,
                    "q": None if descriptor.q is None
                    else _fmt(descriptor.q),
                    "q_list": [_fmt(v) for v in descriptor.q_list],
                }
        except RootsOffCircle as exc:
            payload["roots"] = {
                "status": "roots_off_circle",
                "message": str(exc),
            }
            if fam is not None and fam.claims_root_unitary:
                payload["kind"] = "verification_failure"
                exit_code = 4
    # wall-clock only; everything else in the payload is deterministic, so
    # consumers diff reports after dropping this one field
    payload["timing_ms"] = round((time.perf_counter() - started) * 1e3, 3)
    _emit_json(payload)
    return exit_code


def _handle_sweep(args) -> int:
    schedule = [
        _parse_assignments(step)
        for step in args.schedule.split(";")
        if step.strip()
    ]
    if not schedule:
        raise InvalidParams("the schedule is empty")
    rows = convergence_sweep(
        args.family,
        schedule,
        with_angles=args.roots,
        precision_bits=_precision_bits(args),
    )
    columns = [
        "params",
        "degree",
        "mean",
        "variance",
        "m4",
        "gap_to_3",
        "gap_to_1",
        "scaled_gap",
        "cumulant_cond",
        "top_jump",
        "error",
    ]
    if args.out == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                [
                    ";".join(f"{k}={v}" for k, v in sorted(row.params.items())),
                    row.degree,
                    _frac_str(row.mean),
                    _frac_str(row.variance),
                    _frac_str(row.m4),
                    _frac_str(row.gap_to_3),
                    _frac_str(row.gap_to_1),
                    None if row.scaled_gap is None else _fmt(row.scaled_gap),
                    _frac_str(row.cumulant_cond),
                    None if row.top_jump is None else _fmt(row.top_jump),
                    row.error,
                ]
            )
    else:
        _emit_json(
            {
                "schema": SCHEMA,
                "kind": "sweep",
                "family": args.family,
                "rows": [
                    {
                        "params": _params_json(row.params),
                        "degree": row.degree,
                        "mean": _frac_str(row.mean),
                        "variance": _frac_str(row.variance),
                        "m4": _frac_str(row.m4),
                        "gap_to_3": _frac_str(row.gap_to_3),
                        "gap_to_1": _frac_str(row.gap_to_1),
                        "scaled_gap": (
                            None
                            if row.scaled_gap is None
                            else _fmt(row.scaled_gap)
                        ),
                        "cumulant_cond": _frac_str(row.cumulant_cond),
                        "top_jump": (
                            None
                            if row.top_jump is None
                            else _fmt(row.top_jump)
                        ),
                        "error": row.error,
                    }
                    for row in rows
                ],
            }
        )
    return 0


def _handle_limit(args) -> int:
    out = generate(args.family, **_parse_assignments(args.params or ""))
    dist = make_distribution(out.poly)
    precision = _precision_bits(args)
    try:
        section, profile = _root_section(out.poly, precision, top_k=args.topk)
    except RootsOffCircle as exc:
        payload = {
            "schema": SCHEMA,
            "kind": "limit",
            "family": out.family,
            "params": _params_json(out.params),
            "roots": {"status": "roots_off_circle", "message": str(exc)},
        }
        if out.claims_root_unitary:
            payload["kind"] = "verification_failure"
            _emit_json(payload)
            return 4
        descriptor = classify(dist, profile=None, precision_bits=precision)
        payload["verdict"] = descriptor.verdict
        payload["evidence"] = descriptor.evidence
        _emit_json(payload)
        return 0
    extracted = extract_product_params(profile, top_k=args.topk)
    descriptor = classify(
        dist, profile=profile, precision_bits=precision, top_k=args.topk
    )
    _emit_json(
        {
            "schema": SCHEMA,
            "kind": "limit",
            "family": out.family,
            "params": _params_json(out.params),
            "roots": section,
            "q": _fmt(extracted.q),
            "q_list": [_fmt(v) for v in extracted.q_list],
            "atoms_above_floor": extracted.atoms_above_floor,
            "resolution_floor": _fmt(extracted.floor),
            "verdict": descriptor.verdict,
            "evidence": descriptor.evidence,
        }
    )
    return 0


def _handle_pmf(args) -> int:
    out = generate(args.family, **_parse_assignments(args.params or ""))
    dist = make_distribution(out.poly)
    overlay = args.overlay
    if overlay not in (None, "normal"):
        raise InvalidParams(f"unknown overlay {overlay!r}")
    rows = []
    if overlay:
        var = dist.variance
        if var == 0:
            raise InvalidParams("cannot overlay a Gaussian on a single atom")
        with mp.workprec(64):
            mu = mp.mpf(dist.mean.numerator) / dist.mean.denominator
            sigma = mp.sqrt(mp.mpf(var.numerator) / var.denominator)
            for k, p in enumerate(dist.pmf):
                density = mp.npdf(mp.mpf(k), mu, sigma)
                rows.append((k, p, _fmt(density)))
    else:
        rows = [(k, p, None) for k, p in enumerate(dist.pmf)]
    if args.out == "json":
        _emit_json(
            {
                "schema": SCHEMA,
                "kind": "pmf",
                "family": out.family,
                "params": _params_json(out.params),
                "rows": [
                    {
                        "k": k,
                        "probability": str(p),
                        **(
                            {"normal_overlay": ov}
                            if ov is not None
                            else {}
                        ),
                    }
                    for k, p, ov in rows
                ],
            }
        )
    else:
        writer = csv.writer(sys.stdout)
        header = ["k", "probability_exact", "probability"]
        if overlay:
            header.append("normal_overlay")
        writer.writerow(header)
        for k, p, ov in rows:
            record = [k, str(p), _fmt(p)]
            if overlay:
                record.append(ov)
            writer.writerow(record)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimoment",
        description="Exact moments and unit-circle root certificates for "
        "nonnegative palindromic generating polynomials.",
    )
    sub = parser.add_subparsers(dest="command")

    fam = sub.add_parser("family", help="catalogue access")
    fam_sub = fam.add_subparsers(dest="family_cmd")
    fam_sub.add_parser("list", help="list family names and parameters")
    gen = fam_sub.add_parser("gen", help="generate one instance")
    gen.add_argument("name")
    gen.add_argument(
        "--param",
        action="append",
        metavar="KEY=VALUE",
        help="repeatable; list values use colons, e.g. parts=2:3:4",
    )
    gen.add_argument("--out", choices=["json", "csv"], default="json")
    fam.set_defaults(handler=_handle_family)

    ana = sub.add_parser("analyze", help="exact moment analysis")
    ana.add_argument("--coeffs", help="comma-separated rational coefficients")
    ana.add_argument("--file", help="JSON array/object or one-line CSV")
    ana.add_argument("--family", help="generate the input from a family")
    ana.add_argument("--params", help='family parameters, "n=10,k=2"')
    ana.add_argument("--cumulants", type=int, default=8, metavar="M")
    ana.add_argument("--precision", type=int, metavar="BITS")
    ana.add_argument("--roots", action="store_true")
    ana.set_defaults(handler=_handle_analyze)

    swp = sub.add_parser("sweep", help="family sweep along a schedule")
    swp.add_argument("--family", required=True)
    swp.add_argument(
        "--schedule", required=True, help='e.g. "n=8,k=4;n=16,k=8;n=32,k=16"'
    )
    swp.add_argument(
        "--roots",
        action="store_true",
        help="also report the largest spectral jump mass per row",
    )
    swp.add_argument("--precision", type=int, metavar="BITS")
    swp.add_argument("--out", choices=["json", "csv"], default="csv")
    swp.set_defaults(handler=_handle_sweep)

    lim = sub.add_parser("limit", help="spectral atoms and limit verdict")
    lim.add_argument("--family", required=True)
    lim.add_argument("--params", help='family parameters, "n=100"')
    lim.add_argument("--topk", type=int, default=5)
    lim.add_argument("--precision", type=int, metavar="BITS")
    lim.set_defaults(handler=_handle_limit)

    pmf = sub.add_parser("pmf", help="probability table")
    pmf.add_argument("--family", required=True)
    pmf.add_argument("--params", help='family parameters, "n=10"')
    pmf.add_argument("--overlay", choices=["normal"])
    pmf.add_argument("--out", choices=["json", "csv"], default="csv")
    pmf.set_defaults(handler=_handle_pmf)

    return parser


def _emit_error(exc, exit_code: int) -> int:
    print(
        json.dumps(
            {
                "schema": SCHEMA,
                "kind": "error",
                "exit_code": exit_code,
                "error": type(exc).__name__,
                "message": str(exc),
            },
            sort_keys=True,
        ),
        file=sys.stderr,
    )
    return exit_code


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    if not hasattr(args, "handler"):
        parser.print_help()
        return 2
    if getattr(args, "command", None) == "family" and not getattr(
        args, "family_cmd", None
    ):
        print("usage: unimoment family {list,gen} ...", file=sys.stderr)
        return 2
    try:
        if args.handler is _handle_family:
            return _handle_family(args, extras)
        if extras:
            raise InvalidParams(f"unexpected arguments: {extras}")
        return args.handler(args)
    except InvalidParams as exc:
        return _emit_error(exc, 2)
    except NotImplementedError as exc:
        return _emit_error(exc, 3)
    except UnimomentError as exc:
        return _emit_error(exc, 3)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

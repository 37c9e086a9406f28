"""Command-line interface.

Subcommands::

    moments   dump gamma_0..gamma_N of a measure's shift as CSV (or JSON)
    fit       recover the atomic measure behind a moment CSV, exactly
    check1d   run the one-variable subnormality battery on a weight file
    check2d   run the planar battery on the parametric family diagram
    lubin     certify  -- full verdict sheet at a parameter x
    sweep     grid of alternating-sum values P_n(k, 0) over x as CSV
    epsilon   print the certified margin past the joint threshold

Exit codes: 0 all requested checks pass, 1 a mathematical check failed
(the JSON output carries the witness), 2 usage or input errors.

Weight files for ``check1d`` are JSON, either a measure reference::

    {"kind": "measure", "measure": {"dim": 1, "atoms": [...]}}

or an explicit prefix with a tail rule::

    {"kind": "prefix", "squared_weights": ["2", "1/2"],
     "tail": "repeat_last", "norm_bound_sq": "2"}
"""

from __future__ import annotations

import argparse
import json
import sys

from . import agler, lubin
from .errors import ShiftCertError
from .measures import (
    AtomicMeasure1D,
    measure_from_dict,
    measure_to_dict,
    moment1,
)
from .numerics import parse_rational, rat_str
from .shift1d import (
    WeightSequence1D,
    agler_sums_1d,
    backward_extension_1d,
    berger_fit,
    subnormal_necessary,
)
from .shift2d import (
    check_berger_2d,
    commutativity_check,
    joint_hyponormality_window,
    path_independence_check,
)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_window(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError as exc:
        raise ValueError(f"window must look like 8x8, got {text!r}") from exc


def _parse_point(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError as exc:
        raise ValueError(f"lattice point must look like 1,2, got {text!r}") from exc


def _load_weights(path: str) -> WeightSequence1D:
    data = _load_json(path)
    kind = data.get("kind")
    if kind == "measure":
        mu = measure_from_dict(data["measure"])
        if not isinstance(mu, AtomicMeasure1D):
            raise ValueError("check1d needs a measure on the half-line")
        return WeightSequence1D.from_measure(mu)
    if kind == "prefix":
        bound = data.get("norm_bound_sq")
        return WeightSequence1D.from_prefix(
            [parse_rational(v) for v in data["squared_weights"]],
            tail=data.get("tail", "repeat_last"),
            norm_bound_sq=None if bound is None else parse_rational(bound),
        )
    raise ValueError("weight file needs \"kind\": \"measure\" or \"prefix\"")


def cmd_moments(args) -> int:
    try:
        mu = measure_from_dict(_load_json(args.measure))
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail_usage(f"cannot load measure: {exc}")
    if not isinstance(mu, AtomicMeasure1D):
        return _fail_usage("moments works on measures with dim = 1")
    values = [(n, moment1(mu, n)) for n in range(args.n_max + 1)]
    if args.format == "json":
        payload = [{"n": n, "gamma": rat_str(g)} for n, g in values]
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = ["n,gamma_n"] + [f"{n},{rat_str(g)}" for n, g in values]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_fit(args) -> int:
    try:
        with open(args.moments, "r", encoding="utf-8") as fh:
            rows = [line.strip() for line in fh if line.strip()]
        if rows and not rows[0].split(",")[0].strip().lstrip("-").isdigit():
            rows = rows[1:]  # header
        pairs = []
        for row in rows:
            n_text, gamma_text = row.split(",")
            pairs.append((int(n_text), parse_rational(gamma_text)))
        pairs.sort()
        if [n for n, _ in pairs] != list(range(len(pairs))):
            raise ValueError("moment indices must be contiguous from 0")
        moments = [g for _, g in pairs]
    except (OSError, ValueError) as exc:
        return _fail_usage(f"cannot load moments: {exc}")
    try:
        measure = berger_fit(moments, args.max_atoms)
    except ValueError as exc:
        return _fail_usage(str(exc))
    except ShiftCertError as exc:
        _emit(json.dumps({"error": type(exc).__name__, "message": str(exc)}, indent=2), args.out)
        return 1
    _emit(json.dumps(measure_to_dict(measure), indent=2, sort_keys=True), args.out)
    return 0


def cmd_check1d(args) -> int:
    try:
        weights = _load_weights(args.weights)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail_usage(f"cannot load weights: {exc}")
    checks = [
        subnormal_necessary(weights, args.order),
        agler_sums_1d(weights, args.n_max, args.k_max),
    ]
    if args.backext_alpha0 is not None or args.backext_measure is not None:
        if args.backext_alpha0 is None or args.backext_measure is None:
            return _fail_usage("--backext-alpha0 and --backext-measure go together")
        try:
            alpha0 = parse_rational(args.backext_alpha0)
            mu = measure_from_dict(_load_json(args.backext_measure))
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            return _fail_usage(f"cannot load backward-extension inputs: {exc}")
        if not isinstance(mu, AtomicMeasure1D):
            return _fail_usage("backward extension needs a measure on the half-line")
        checks.append(backward_extension_1d(alpha0, mu))
    payload = {"input": args.weights, "checks": [c.as_dict() for c in checks]}
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if all(c.ok for c in checks) else 1


def cmd_check2d(args) -> int:
    try:
        x = parse_rational(args.x)
        window = _parse_window(args.window)
        base = _parse_point(args.restrict)
    except ValueError as exc:
        return _fail_usage(str(exc))
    family = lubin.LubinFamily(x)
    diagram = family.diagram().restricted(*base)
    checks = [commutativity_check(diagram, window)]
    if args.berger:
        try:
            mu = measure_from_dict(_load_json(args.berger))
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            return _fail_usage(f"cannot load measure: {exc}")
        checks.append(check_berger_2d(diagram, mu, window))
    if args.path:
        try:
            point = _parse_point(args.path)
        except ValueError as exc:
            return _fail_usage(str(exc))
        checks.append(path_independence_check(diagram, point))
    if args.hyponormal:
        checks.append(joint_hyponormality_window(diagram, window, args.tolerance))
    if args.dump:
        w, h = window
        lines = ["k1,k2,alpha_sq,beta_sq"]
        for k2 in range(h):
            for k1 in range(w):
                lines.append(
                    f"{k1},{k2},{rat_str(diagram.alpha_sq(k1, k2))},{rat_str(diagram.beta_sq(k1, k2))}"
                )
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    payload = {
        "x": rat_str(x),
        "base_point": list(base),
        "window": list(window),
        "checks": [c.as_dict() for c in checks],
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if all(c.ok for c in checks) else 1


def cmd_lubin_certify(args) -> int:
    try:
        x = parse_rational(args.x)
        if x <= 0:
            raise ValueError("x must be positive")
    except ValueError as exc:
        return _fail_usage(str(exc))
    report = lubin.family_report(x)
    sum_certificate = agler.certify_sum(x)
    verdicts = dict(report["verdicts"])
    verdicts["sum_subnormal_certified"] = sum_certificate.verdict
    payload = {
        "x": report["x"],
        "thresholds": {**report["thresholds"], "sum_certified": rat_str(sum_certificate.certified_x_max)},
        "verdicts": verdicts,
        "counterexample": (
            verdicts["t1_subnormal"]
            and verdicts["t2_subnormal"]
            and verdicts["sum_subnormal_certified"]
            and not verdicts["pair_subnormal"]
        ),
        "sum_certificate": {
            "n_tail": sum_certificate.n_tail,
            "certified_x_max": rat_str(sum_certificate.certified_x_max),
            "epsilon": rat_str(sum_certificate.epsilon),
            "witness": sum_certificate.witness,
            "tail_witness": sum_certificate.tail_witness,
        },
        "certificates": report["certificates"],
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if all(verdicts.values()) else 1


def cmd_sweep(args) -> int:
    try:
        x_min = parse_rational(args.x_min)
        x_max = parse_rational(args.x_max)
        x_step = parse_rational(args.x_step)
        if x_step <= 0:
            raise ValueError("--x-step must be positive")
        if x_min <= 0:
            raise ValueError("--x-min must be positive")
        if args.n_max < 1 or args.k_max < 0:
            raise ValueError("need --n-max >= 1 and --k-max >= 0")
    except ValueError as exc:
        return _fail_usage(str(exc))
    lines = ["x,n,k,p_n"]
    x = x_min
    while x <= x_max:
        for n in range(1, args.n_max + 1):
            for k in range(args.k_max + 1):
                lines.append(f"{rat_str(x)},{n},{k},{rat_str(agler.p_n_closed(x, k, n))}")
        x += x_step
    _emit("\n".join(lines), args.out)
    return 0


def cmd_epsilon(args) -> int:
    epsilon = agler.certified_epsilon()
    tail = agler.tail_stopping_index()
    payload = {
        "pair_threshold": rat_str(lubin.PAIR_THRESHOLD),
        "certified_x_max": rat_str(agler.certified_x_max()),
        "epsilon": rat_str(epsilon),
        "n_tail": tail.n_star,
        "strictly_positive": epsilon > 0,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftcert",
        description="Exact subnormality certificates for weighted shifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="dump shift moments of a measure")
    p.add_argument("measure", help="measure JSON file (dim 1)")
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("fit", help="recover the atomic measure behind moments")
    p.add_argument("moments", help="CSV file with columns n,gamma_n")
    p.add_argument("--max-atoms", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("check1d", help="one-variable subnormality battery")
    p.add_argument("weights", help="weight JSON file (measure or prefix form)")
    p.add_argument("--order", type=int, default=4, help="Hankel order")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--backext-alpha0", help="squared weight to prepend (p/q)")
    p.add_argument("--backext-measure", help="measure JSON for the extension test")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check1d)

    p = sub.add_parser("check2d", help="planar battery on the family diagram")
    p.add_argument("--x", required=True, help="family parameter (p/q)")
    p.add_argument("--window", default="8x8")
    p.add_argument("--restrict", default="0,0", help="base point i,j of the restriction")
    p.add_argument("--berger", help="measure JSON to verify against the diagram")
    p.add_argument("--path", help="lattice point k1,k2 for path independence")
    p.add_argument("--hyponormal", action="store_true", help="windowed eigenvalue check")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--dump", help="write the window's weights as CSV here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check2d)

    p = sub.add_parser("lubin", help="verdicts for the parametric family")
    lubin_sub = p.add_subparsers(dest="lubin_command", required=True)
    pc = lubin_sub.add_parser("certify", help="full verdict sheet at a parameter")
    pc.add_argument("--x", required=True, help="family parameter (p/q)")
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_lubin_certify)

    p = sub.add_parser("sweep", help="grid of alternating sums as CSV")
    p.add_argument("--x-min", required=True)
    p.add_argument("--x-max", required=True)
    p.add_argument("--x-step", required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("epsilon", help="certified margin past the joint threshold")
    p.add_argument("--out")
    p.set_defaults(func=cmd_epsilon)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ShiftCertError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

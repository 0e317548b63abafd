"""Command-line front end.

Subcommands: enumerate, char, limit, transform, bijection, mnsystem, verify.
Exit codes: 0 success, 1 identity mismatch (verify), 2 usage or domain error.
All numeric output is exact; polynomials print in the ``1 + q + 2*q^2``
interchange format or as JSON pairs of [exponent, coefficient-string].
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import bijection, cfmn, charform, paths, transforms, verify
from .bijection import (
    BijectionError,
    partition_from_json_dict,
    partition_to_json_dict,
)
from .paths import PathError, path_from_json_dict, path_to_json_dict
from .qseries import QPolynomial
from .transforms import TransformError


class CliError(Exception):
    """Domain error surfaced to the user with exit status 2."""


def _labels_from_args(args) -> charform.CharLabels:
    try:
        return charform.CharLabels(args.p, args.p_prime, args.a, args.b, args.c, args.L)
    except (charform.CharFormError, PathError) as exc:
        raise CliError(str(exc)) from exc


def _add_label_args(sub) -> None:
    sub.add_argument("p", type=int)
    sub.add_argument("p_prime", type=int, metavar="p'")
    sub.add_argument("a", type=int)
    sub.add_argument("b", type=int)
    sub.add_argument("c", type=int)
    sub.add_argument("L", type=int)


def _poly_payload(poly: QPolynomial, as_json: bool):
    if as_json:
        return poly.to_json_pairs()
    return poly.to_text()


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    labels = _labels_from_args(args)
    params = labels.params
    if args.sectors:
        s0 = params.s0
        if not (labels.a == labels.b == s0 and labels.c == s0 + 1):
            raise CliError(
                f"sector labels exist only for the ground family "
                f"a=b={s0}, c={s0 + 1}"
            )
    count = 0
    for path in paths.enumerate_paths(
        params, labels.a, labels.b, labels.c, labels.L
    ):
        record: dict = {"heights": list(path.heights)}
        if args.weights:
            record["wt"] = paths.wt(path)
        if args.striking:
            seq = paths.striking_sequence(path)
            record["striking"] = {
                "first_direction": seq.first_direction,
                "top": [a for a, _ in seq.pairs],
                "bottom": [b for _, b in seq.pairs],
                "m": seq.m,
                "beta": seq.beta,
            }
        if args.sectors:
            label = transforms.sector_decompose(path)
            record["sector"] = {
                "n_hat": list(label.n_hat),
                "lambdas": [list(lam) for lam in label.lambdas],
            }
        if args.format == "jsonl":
            print(json.dumps(record, sort_keys=True))
        else:
            bits = [",".join(map(str, record["heights"]))]
            if args.weights:
                bits.append(f"wt={record['wt']}")
            if args.striking:
                s = record["striking"]
                bits.append(f"striking={s['top']}/{s['bottom']} m={s['m']}")
            if args.sectors:
                bits.append(f"sector=n{record['sector']['n_hat']}")
            print("  ".join(bits))
        if args.plot and count == 0:
            from .plotting import plot_path

            plot_path(path, args.plot)
        count += 1
    print(f"# {count} paths", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# char / limit
# ---------------------------------------------------------------------------

_CHAR_METHODS = {
    "bruteforce": lambda lab: charform.chi_bruteforce(lab),
    "recurrence": lambda lab: charform.chi_recurrence(lab),
    "bosonic": lambda lab: charform.chi_bosonic(lab),
    "dki": lambda lab: charform.chi_via_dki(lab),
}


def cmd_char(args) -> int:
    labels = _labels_from_args(args)
    method = args.method
    try:
        if method in ("fermionic-m", "fermionic-lambda"):
            s0 = labels.params.s0
            if not (labels.a == labels.b == s0 and labels.c == s0 + 1):
                raise CliError(
                    f"{method} applies to the ground family a=b={s0}, c={s0+1}"
                )
            fn = (
                charform.chi_fermionic_m
                if method == "fermionic-m"
                else charform.chi_fermionic_lambda
            )
            poly = fn(labels.p, labels.p_prime, labels.L)
        else:
            poly = _CHAR_METHODS[method](labels)
    except charform.CharFormError as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        print(
            json.dumps(
                {
                    "labels": path_labels_dict(labels),
                    "method": method,
                    "coefficients": poly.to_json_pairs(),
                },
                sort_keys=True,
            )
        )
    else:
        print(poly.to_text())
    return 0


def path_labels_dict(labels: charform.CharLabels) -> dict:
    return {
        "p": labels.p,
        "p'": labels.p_prime,
        "a": labels.a,
        "b": labels.b,
        "c": labels.c,
        "L": labels.L,
    }


def cmd_limit(args) -> int:
    p, pp, degree = args.p, args.p_prime, args.degree
    try:
        params = paths.ModelParams(p, pp)
        if args.method == "rocha":
            r = args.r if args.r is not None else params.r0
            s = args.s if args.s is not None else params.s0
            series = charform.rocha_caridi_trunc(p, pp, r, s, degree)
        elif args.method == "fermionic":
            series = charform.chi_fermionic_infinite_trunc(p, pp, degree)
        else:  # gordon
            if p != 2 or pp % 2 == 0:
                raise CliError("the gordon family needs p = 2 and odd p'")
            series = charform.gordon_trunc((pp - 1) // 2, degree)
    except (charform.CharFormError, PathError) as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        payload = {
            "p": p,
            "p'": pp,
            "method": args.method,
            "degree": degree,
            "coefficients": [str(c) for c in series.coeffs],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(series.to_text())
    return 0


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

def parse_transform_script(text: str) -> list[tuple]:
    """Scripts look like ``b:3:[2,1];d;b:1:[]``: a ``b`` step carries the
    particle count and motion partition, ``d`` is the duality step."""
    steps: list[tuple] = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk == "d":
            steps.append(("d",))
            continue
        bits = chunk.split(":")
        if bits[0] != "b" or len(bits) != 3:
            raise CliError(f"bad transform step {chunk!r}")
        try:
            k = int(bits[1])
            lam = json.loads(bits[2])
            if not isinstance(lam, list):
                raise ValueError
            lam_t = tuple(int(x) for x in lam)
        except ValueError as exc:
            raise CliError(f"bad transform step {chunk!r}") from exc
        steps.append(("b", k, lam_t))
    if not steps:
        raise CliError("empty transform script")
    return steps


def _read_json_arg(path_or_dash: str) -> dict:
    if path_or_dash == "-":
        return json.load(sys.stdin)
    with open(path_or_dash) as f:
        return json.load(f)


def cmd_transform(args) -> int:
    doc = _read_json_arg(args.path)
    try:
        path = path_from_json_dict(doc)
    except PathError as exc:
        raise CliError(str(exc)) from exc
    steps = parse_transform_script(args.script)
    history = [path]
    try:
        for step in steps:
            if step[0] == "d":
                history.append(transforms.d_transform(history[-1]))
            else:
                _, k, lam = step
                history.append(transforms.b_transform(history[-1], k, lam))
    except (TransformError, PathError) as exc:
        raise CliError(str(exc)) from exc
    records = []
    prev_wt = None
    for idx, stage in enumerate(history):
        w = paths.wt(stage)
        records.append(
            {
                "step": "input" if idx == 0 else _step_name(steps[idx - 1]),
                "path": path_to_json_dict(stage),
                "wt": w,
                "delta": None if prev_wt is None else w - prev_wt,
            }
        )
        prev_wt = w
    if args.json:
        print(json.dumps(records, sort_keys=True))
    else:
        for rec in records:
            delta = "" if rec["delta"] is None else f"  (wt {rec['delta']:+d})"
            pd = rec["path"]
            model = "({},{})".format(pd["p"], pd["p'"])
            print(
                f"{rec['step']:12s} {model} wt={rec['wt']}{delta}  heights="
                + ",".join(map(str, pd["heights"]))
            )
    return 0


def _step_name(step: tuple) -> str:
    if step[0] == "d":
        return "d"
    return f"b(k={step[1]},{list(step[2])})"


# ---------------------------------------------------------------------------
# bijection
# ---------------------------------------------------------------------------

def cmd_bijection(args) -> int:
    if bool(args.path) == bool(args.partition):
        raise CliError("give exactly one of --path or --partition")
    try:
        if args.path:
            doc = _read_json_arg(args.path)
            path = path_from_json_dict(doc)
            mu = bijection.path_to_partition(path)
            roundtrip = bijection.partition_to_path(
                mu,
                path.params.p,
                path.params.p_prime,
                path.a,
                path.b,
                path.c,
                path.L,
            )
            assert roundtrip.heights == path.heights
        else:
            doc = _read_json_arg(args.partition)
            if args.labels is None:
                raise CliError("--partition needs --labels p,p',a,b,c,L")
            try:
                p, pp, a, b, c, L = (int(x) for x in args.labels.split(","))
            except ValueError as exc:
                raise CliError("--labels must be six integers") from exc
            mu = partition_from_json_dict(doc)
            path = bijection.partition_to_path(mu, p, pp, a, b, c, L)
            assert bijection.path_to_partition(path) == mu
    except (BijectionError, PathError) as exc:
        raise CliError(str(exc)) from exc
    hc = bijection.dki_parameters(path)
    payload = {
        "path": path_to_json_dict(path),
        "partition": partition_to_json_dict(mu),
        "N": hc.N,
        "M": hc.M,
        "alpha": hc.alpha,
        "beta": hc.beta,
        "weight": mu.weight,
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"path     : {','.join(map(str, path.heights))}")
        print(f"partition: {list(mu.parts)}")
        print(
            f"N={hc.N} M={hc.M} alpha={hc.alpha} beta={hc.beta} "
            f"weight={mu.weight}"
        )
    return 0


# ---------------------------------------------------------------------------
# mnsystem / verify
# ---------------------------------------------------------------------------

def cmd_mnsystem(args) -> int:
    try:
        lines = cfmn.mn_system_lines(args.p, args.p_prime)
    except cfmn.CFError as exc:
        raise CliError(str(exc)) from exc
    print("\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    pairs = verify.DEFAULT_PAIRS
    if args.pairs:
        pairs = _parse_pairs(args.pairs)
    config = verify.SweepConfig(
        pairs=pairs,
        max_l=args.max_l,
        degree=args.degree,
        only=tuple(args.only or ()),
        inject_error=args.inject_error,
    )
    results = verify.run(config)
    text = verify.report_text(results)
    if args.json:
        print(json.dumps(verify.report_rows(results), sort_keys=True))
    else:
        print(text)
    if args.out:
        _write_report_files(args.out, results)
    return 0 if all(r.passed for r in results) else 1


def _parse_pairs(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            p, pp = (int(x) for x in chunk.split(","))
        except ValueError as exc:
            raise CliError(f"bad pair {chunk!r}; use like --pairs '2,5;3,8'") from exc
        out.append((p, pp))
    if not out:
        raise CliError("no pairs given")
    return tuple(out)


def _write_report_files(outdir: str, results) -> None:
    os.makedirs(outdir, exist_ok=True)
    rows = verify.report_rows(results)
    with open(os.path.join(outdir, "report.csv"), "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=["group", "name", "passed", "detail"])
        writer.writeheader()
        writer.writerows(rows)
    with open(os.path.join(outdir, "report.txt"), "w") as f:
        f.write(verify.report_text(results) + "\n")
    from .plotting import plot_verify_summary

    plot_verify_summary(results, os.path.join(outdir, "summary.png"))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fbpath",
        description="Exact computations with weighted Forrester-Baxter paths",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enum = sub.add_parser("enumerate", help="list all paths with given labels")
    _add_label_args(enum)
    enum.add_argument("--weights", action="store_true")
    enum.add_argument("--striking", action="store_true")
    enum.add_argument("--sectors", action="store_true")
    enum.add_argument("--format", choices=("text", "jsonl"), default="text")
    enum.add_argument("--plot", metavar="FILE", help="render the first path")
    enum.set_defaults(fn=cmd_enumerate)

    char = sub.add_parser("char", help="finite character polynomial")
    _add_label_args(char)
    char.add_argument(
        "--method",
        choices=(
            "bruteforce",
            "recurrence",
            "bosonic",
            "fermionic-m",
            "fermionic-lambda",
            "dki",
        ),
        default="recurrence",
    )
    char.add_argument("--json", action="store_true")
    char.set_defaults(fn=cmd_char)

    lim = sub.add_parser("limit", help="truncated infinite-length series")
    lim.add_argument("p", type=int)
    lim.add_argument("p_prime", type=int, metavar="p'")
    lim.add_argument("--method", choices=("rocha", "fermionic", "gordon"), required=True)
    lim.add_argument("--degree", type=int, default=20)
    lim.add_argument("--r", type=int, default=None, help="rocha index r (default r0)")
    lim.add_argument("--s", type=int, default=None, help="rocha index s (default s0)")
    lim.add_argument("--json", action="store_true")
    lim.set_defaults(fn=cmd_limit)

    tra = sub.add_parser("transform", help="apply a b/d transform script")
    tra.add_argument("--path", default="-", help="path JSON file, or - for stdin")
    tra.add_argument("--script", required=True, help="e.g. 'b:3:[2,1];d;b:1:[]'")
    tra.add_argument("--json", action="store_true")
    tra.set_defaults(fn=cmd_transform)

    bij = sub.add_parser("bijection", help="map a path to its partition or back")
    bij.add_argument("--path", help="path JSON file, or - for stdin")
    bij.add_argument("--partition", help="partition JSON file, or - for stdin")
    bij.add_argument("--labels", help="p,p',a,b,c,L (with --partition)")
    bij.add_argument("--json", action="store_true")
    bij.set_defaults(fn=cmd_bijection)

    mn = sub.add_parser("mnsystem", help="print the solved mn-system")
    mn.add_argument("p", type=int)
    mn.add_argument("p_prime", type=int, metavar="p'")
    mn.set_defaults(fn=cmd_mnsystem)

    ver = sub.add_parser("verify", help="run the identity verification sweeps")
    ver.add_argument("--pairs", help="override models, e.g. '2,5;3,8'")
    ver.add_argument("--max-l", type=int, default=12, dest="max_l")
    ver.add_argument("--degree", type=int, default=20)
    ver.add_argument(
        "--only",
        action="append",
        choices=verify.GROUPS,
        help="restrict to one or more check groups",
    )
    ver.add_argument("--json", action="store_true")
    ver.add_argument("--out", metavar="DIR", help="write report.csv/txt and summary.png")
    ver.add_argument(
        "--inject-error",
        action="store_true",
        help="deliberately corrupt one comparison (harness self-test)",
    )
    ver.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PathError, TransformError, BijectionError, charform.CharFormError,
            cfmn.CFError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

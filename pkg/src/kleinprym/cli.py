"""Command-line front end.

Exit status: 0 on success, 1 when the input cannot be parsed, 2 on a domain
error (degenerate configuration, matrix outside the Prym locus, ...).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .config_p1 import canonical_form, equivalent, normalize
from .errors import DegenerateError, KleinError
from .prym_map import (
    ISOTROPIC,
    MEMBERSHIP_TOL,
    NON_ISOTROPIC,
    prym_forward,
    prym_inverse,
    verify_prym,
)
from .torsion_f2 import enumerate_klein_subgroups

SUBCOMMANDS = ("classify-subgroups", "normalize", "prym", "invert", "verify", "roundtrip")


class ParseFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors (exit 1); argparse would use 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="kleinprym",
        description="Prym maps of Klein coverings of genus-2 curves.",
    )
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("input", nargs="?", default="-", help="input JSON file ('-' for stdin)")
    p.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")
    p.add_argument("--tolerance", type=float, default=MEMBERSHIP_TOL,
                   help="locus membership tolerance (default %(default)g)")
    p.add_argument("--case", choices=("iso", "non-iso"), default=None,
                   help="expected covering type")
    return p


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(str(exc)) from exc


def _parse(fn, data):
    try:
        return fn(data)
    except DegenerateError:
        raise
    except (KleinError, KeyError, TypeError, ValueError) as exc:
        raise ParseFailure(f"{type(exc).__name__}: {exc}") from exc


def _case(flag):
    return {None: None, "iso": ISOTROPIC, "non-iso": NON_ISOTROPIC}[flag]


def _check_kind(cfg, case):
    if case is None:
        return
    kind_case = NON_ISOTROPIC if cfg.kind == "triple" else ISOTROPIC
    if kind_case != case:
        raise KleinError(f"configuration marking ({cfg.kind}) does not match --case {case}")


def execute(args) -> dict:
    cmd = args.command
    case = _case(args.case)
    if cmd == "classify-subgroups":
        groups = enumerate_klein_subgroups()
        iso = sum(g.isotropic for g in groups)
        return {
            "counts": {"total": len(groups), "isotropic": iso, "non_isotropic": len(groups) - iso},
            "subgroups": [jsonio.subgroup_to_json(g) for g in groups],
        }
    data = _read_json(args.input)
    if cmd == "normalize":
        cfg = _parse(jsonio.config_from_json, data)
        out = jsonio.config_to_json(normalize(cfg))
        out["canonical"] = jsonio.config_to_json(canonical_form(cfg))
        return out
    if cmd == "prym":
        cfg = _parse(jsonio.config_from_json, data)
        _check_kind(cfg, case)
        return jsonio.prym_to_json(prym_forward(normalize(cfg)))
    if cmd == "invert":
        A = _parse(jsonio.matrix_from_json, data)
        return jsonio.config_to_json(prym_inverse(A, case, args.tolerance))
    if cmd == "verify":
        result = _parse(jsonio.prym_from_json, data)
        if case is not None and result.case != case:
            raise KleinError(f"result is {result.case}, --case asks for {case}")
        return jsonio.report_to_json(verify_prym(result, args.tolerance))
    if cmd == "roundtrip":
        cfg = _parse(jsonio.config_from_json, data)
        _check_kind(cfg, case)
        normalized = normalize(cfg)
        forward = prym_forward(normalized)
        inverse = prym_inverse(forward.period_matrix, forward.case, args.tolerance)
        return {
            "configuration": jsonio.config_to_json(normalized),
            "forward": jsonio.prym_to_json(forward),
            "inverse": jsonio.config_to_json(inverse),
            "equivalent": equivalent(cfg, inverse),
        }
    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    try:
        result = execute(args)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except KleinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

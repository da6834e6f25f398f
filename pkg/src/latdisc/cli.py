"""Command line interface.

Subcommands:

- construct: build a lattice from a named family or rank-1 data and emit
  its JSON document (round-trippable back in through --in);
- spectral: spectral test (shortest dual vector, sigma);
- points: enumerate the node set inside the unit cube;
- certify: discrepancy certificates plus the budgeted randomized search;
- search: exhaustive rank-1 generator search modulo a prime;
- verify: the full certified bounds report.

Outputs are deterministic: the same arguments (including --seed) produce
byte-identical bytes, so results can be diffed across runs and machines.
JSON results are wrapped in an envelope recording tool version, subcommand,
and effective parameters; construct emits the bare lattice document.

Exit codes: 0 success (for verify: every check passed), 2 malformed input,
3 a configured cap was exceeded, 4 an invariant or verification check
failed.  The default precision is 50 significant digits, overridable per
call with --digits or globally with the LATDISC_PRECISION environment
variable; values below 30 are refused.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__, bounds, constructions, directed, discrepancy
from . import lattice as lattice_mod
from . import reduction
from .errors import (
    CapExceededError,
    InputError,
    InvariantViolationError,
    UndecidableComparisonError,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_INVARIANT = 4


def _add_lattice_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("lattice input")
    g.add_argument(
        "--in",
        dest="infile",
        metavar="FILE",
        help="read a lattice JSON document ('-' for stdin)",
    )
    g.add_argument(
        "--family",
        choices=["fibonacci", "scaled", "bad", "korobov"],
        help="named family (see --m/--d/--n/--a)",
    )
    g.add_argument("--m", type=int, help="family index (fibonacci/scaled/bad)")
    g.add_argument("--d", type=int, help="dimension, where the family needs one")
    g.add_argument("--n", type=int, help="number of points (rank-1 / korobov)")
    g.add_argument("--a", type=int, help="korobov multiplier")
    g.add_argument(
        "--generator", metavar="G1,G2,...", help="rank-1 generator, used with --n"
    )


def _add_output_args(p: argparse.ArgumentParser, formats=("json",)) -> None:
    p.add_argument("--out", metavar="FILE", help="write here instead of stdout")
    p.add_argument(
        "--format",
        choices=list(formats),
        default=formats[0],
        help=f"output format (default {formats[0]})",
    )


def _add_precision_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--digits",
        type=int,
        default=None,
        help=(
            f"significant digits for decimal output, at least "
            f"{directed.MIN_DIGITS} (default: $LATDISC_PRECISION or "
            f"{directed.DEFAULT_DIGITS})"
        ),
    )


def _add_caps(p: argparse.ArgumentParser, enum=True, svp=True) -> None:
    if enum:
        p.add_argument(
            "--cap",
            type=int,
            default=lattice_mod.DEFAULT_ENUM_CAP,
            help="refuse to enumerate more than this many points",
        )
    if svp:
        p.add_argument(
            "--svp-cap",
            type=int,
            default=reduction.DEFAULT_SVP_CAP,
            help="refuse shortest-vector searches above this dimension",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latdisc",
        description=(
            "exact spectral tests and certified isotropic-discrepancy "
            "bounds for integration lattices"
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a lattice and emit its JSON")
    _add_lattice_args(p)
    _add_output_args(p)

    p = sub.add_parser("spectral", help="spectral test of a lattice")
    _add_lattice_args(p)
    _add_output_args(p)
    _add_precision_arg(p)
    _add_caps(p, enum=False)

    p = sub.add_parser("points", help="enumerate the node set")
    _add_lattice_args(p)
    _add_output_args(p, formats=("json", "csv"))
    _add_caps(p, svp=False)

    p = sub.add_parser(
        "certify", help="discrepancy certificates and randomized search"
    )
    _add_lattice_args(p)
    _add_output_args(p)
    _add_precision_arg(p)
    _add_caps(p)
    p.add_argument(
        "--budget",
        type=int,
        default=discrepancy.DEFAULT_BUDGET,
        help="number of convex-body evaluations for the search",
    )
    p.add_argument("--seed", type=int, default=0, help="search seed")

    p = sub.add_parser("search", help="best rank-1 generator modulo a prime")
    p.add_argument("--n", type=int, required=True, help="prime modulus")
    p.add_argument("--d", type=int, required=True, help="dimension")
    p.add_argument(
        "--mode", choices=["korobov", "exhaustive"], default="korobov"
    )
    _add_output_args(p, formats=("json", "csv"))
    _add_precision_arg(p)
    _add_caps(p, enum=False)

    p = sub.add_parser("verify", help="certified bounds report")
    _add_lattice_args(p)
    _add_output_args(p, formats=("json", "csv"))
    _add_precision_arg(p)
    _add_caps(p)
    p.add_argument("--name", default=None, help="label used in the report")

    return parser


def _parse_generator(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad generator {text!r}: {exc}") from exc


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def _lattice_from_args(args) -> lattice_mod.IntegrationLattice:
    if args.infile:
        if args.infile == "-":
            text = sys.stdin.read()
        else:
            with open(args.infile, "r", encoding="utf-8") as fh:
                text = fh.read()
        return lattice_mod.from_json(text)
    if args.family == "fibonacci":
        _require(args.m is not None, "--family fibonacci needs --m")
        return constructions.fibonacci_lattice(args.m)
    if args.family == "scaled":
        _require(
            args.m is not None and args.d is not None,
            "--family scaled needs --m and --d",
        )
        return constructions.scaled_integer_lattice(args.m, args.d)
    if args.family == "bad":
        _require(args.m is not None, "--family bad needs --m")
        return constructions.bad_lattice(args.m, args.d if args.d is not None else 2)
    if args.family == "korobov":
        _require(
            args.n is not None and args.a is not None and args.d is not None,
            "--family korobov needs --n, --a and --d",
        )
        return constructions.korobov_lattice(args.n, args.a, args.d)
    if args.n is not None and args.generator is not None:
        return lattice_mod.from_rank1(args.n, _parse_generator(args.generator))
    raise InputError(
        "no lattice given: use --in FILE, --family ..., or --n with --generator"
    )


def _digits_for(args) -> int:
    if getattr(args, "digits", None) is not None:
        return args.digits
    env = os.environ.get("LATDISC_PRECISION")
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(
                f"LATDISC_PRECISION must be an integer, got {env!r}"
            ) from exc
    return directed.DEFAULT_DIGITS


def _write_text(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, command: str, parameters: dict, result) -> None:
    envelope = {
        "tool": "latdisc",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "result": result,
    }
    _write_text(args, json.dumps(envelope, indent=2, sort_keys=True) + "\n")


def _cmd_construct(args) -> int:
    lat = _lattice_from_args(args)
    _write_text(args, lattice_mod.to_json(lat) + "\n")
    return EXIT_OK


def _cmd_spectral(args) -> int:
    lat = _lattice_from_args(args)
    digits = _digits_for(args)
    res = reduction.spectral_test(lat, digits=digits, svp_cap=args.svp_cap)
    result = {
        "dim": lat.dim,
        "n_points": lat.n_points,
        "shortest_dual_vector": [str(x) for x in res.shortest_dual_vector],
        "shortest_dual_norm_sq": str(res.shortest_dual_norm_sq),
        "sigma_sq": str(res.sigma_sq),
        "sigma": res.sigma_decimal,
        "digits": res.digits,
    }
    params = {
        "lattice": lat.spec_string(),
        "digits": digits,
        "svp_cap": args.svp_cap,
    }
    _emit_json(args, "spectral", params, result)
    return EXIT_OK


def _cmd_points(args) -> int:
    lat = _lattice_from_args(args)
    pts = lattice_mod.enumerate_points(lat, cap=args.cap)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"x{i + 1}" for i in range(lat.dim)])
        for p in pts:
            writer.writerow([str(c) for c in p])
        _write_text(args, buf.getvalue())
        return EXIT_OK
    result = {
        "dim": lat.dim,
        "n_points": len(pts),
        "points": [[str(c) for c in p] for p in pts],
    }
    params = {"lattice": lat.spec_string(), "cap": args.cap}
    _emit_json(args, "points", params, result)
    return EXIT_OK


def _cmd_certify(args) -> int:
    lat = _lattice_from_args(args)
    digits = _digits_for(args)
    pts = lattice_mod.enumerate_points(lat, cap=args.cap)
    slab = discrepancy.slab_certificate(lat, pts, svp_cap=args.svp_cap)
    planes = discrepancy.hyperplane_count_certificate(
        lat, pts, svp_cap=args.svp_cap
    )
    estimate = discrepancy.estimate_isotropic_discrepancy(
        pts,
        budget=args.budget,
        seed=args.seed,
        lat=lat,
        enum_cap=args.cap,
        svp_cap=args.svp_cap,
        digits=digits,
    )
    result = {
        "slab_certificate": slab.to_dict(),
        "plane_certificate": planes.to_dict(),
        "estimate": estimate.to_dict(),
    }
    params = {
        "lattice": lat.spec_string(),
        "budget": args.budget,
        "seed": args.seed,
        "digits": digits,
        "cap": args.cap,
        "svp_cap": args.svp_cap,
    }
    _emit_json(args, "certify", params, result)
    return EXIT_OK


def _cmd_search(args) -> int:
    digits = _digits_for(args)
    res = constructions.korobov_search(
        args.n, args.d, mode=args.mode, digits=digits, svp_cap=args.svp_cap
    )
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["n", "dim", "mode", "generator", "norm_sq", "sigma_sq", "sigma",
             "n_searched"]
        )
        writer.writerow(
            [
                res.n,
                res.dim,
                res.mode,
                " ".join(str(x) for x in res.generator),
                res.norm_sq,
                str(res.sigma_sq),
                res.sigma_decimal,
                res.n_searched,
            ]
        )
        _write_text(args, buf.getvalue())
        return EXIT_OK
    params = {
        "n": args.n,
        "d": args.d,
        "mode": args.mode,
        "digits": digits,
        "svp_cap": args.svp_cap,
    }
    _emit_json(args, "search", params, res.to_dict())
    return EXIT_OK


def _cmd_verify(args) -> int:
    lat = _lattice_from_args(args)
    digits = _digits_for(args)
    name = args.name if args.name is not None else lat.spec_string()
    report = bounds.verify_lattice(
        lat, name=name, digits=digits, svp_cap=args.svp_cap, enum_cap=args.cap
    )
    if args.format == "csv":
        buf = io.StringIO()
        bounds.write_reports_csv([report], buf)
        _write_text(args, buf.getvalue())
    else:
        params = {
            "lattice": lat.spec_string(),
            "digits": digits,
            "cap": args.cap,
            "svp_cap": args.svp_cap,
        }
        _emit_json(args, "verify", params, report.to_dict())
    return EXIT_OK if report.all_passed else EXIT_INVARIANT


_HANDLERS = {
    "construct": _cmd_construct,
    "spectral": _cmd_spectral,
    "points": _cmd_points,
    "certify": _cmd_certify,
    "search": _cmd_search,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except InputError as exc:
        print(f"latdisc: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"latdisc: i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"latdisc: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvariantViolationError, UndecidableComparisonError) as exc:
        print(f"latdisc: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())

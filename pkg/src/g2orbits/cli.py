"""Command-line front end.

Every subcommand prints one JSON document on stdout (or writes it to
``--out``) and a one-line summary on stderr. Exit codes: 0 ok, 2 malformed
input, 3 mathematical failure (no root, field too large, bad preconditions),
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import canon, invariants, oracle
from .field import (
    CannotExtendRationals, Field, GF, InfiniteField, NoRootInField, QQ,
)
from .octonion import Octonion, identity_suite

EXIT_OK, EXIT_PARSE, EXIT_MATH, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def parse_field(text: str) -> Field:
    """``p=5``, ``p=2,k=4``, ``p=2,k=2,mod=1,1,1`` or ``rational``."""
    text = text.strip()
    if text in ("rational", "QQ", "Q"):
        return QQ
    opts: dict[str, list[str]] = {}
    key = None
    for tok in text.split(","):
        if "=" in tok:
            key, val = tok.split("=", 1)
            key = key.strip()
            opts[key] = [val]
        elif key == "mod":
            opts[key].append(tok)
        else:
            raise UsageError(f"cannot parse field {text!r}")
    try:
        p = int(opts.pop("p")[0])
        k = int(opts.pop("k", ["1"])[0])
        mod = opts.pop("mod", None)
        if opts:
            raise UsageError(f"unknown field options {sorted(opts)}")
        if mod is not None:
            coeffs = [int(c) for c in mod]
            if len(coeffs) == k:
                coeffs.append(1)
            return GF(p, k, tuple(coeffs))
        return GF(p, k)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"cannot parse field {text!r}: {exc}") from exc


def _load_payload(args):
    if args.infile:
        with open(args.infile) as fh:
            text = fh.read()
    elif args.payload is not None:
        text = args.payload
    else:
        raise UsageError("no input: pass inline JSON or --in FILE")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _octonion(F: Field, obj) -> Octonion:
    try:
        return Octonion.from_json(F, obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _pair(F: Field, obj):
    if not isinstance(obj, list) or len(obj) != 2:
        raise UsageError("a pair is a JSON list of two octonions")
    return _octonion(F, obj[0]), _octonion(F, obj[1])


# -- subcommands ------------------------------------------------------------------

def cmd_canon_one(args):
    a = _octonion(args.field, _load_payload(args))
    red = canon.canonical_one(a)
    return red.to_json(), f"type {red.type} over {red.field_used!r}"


def cmd_canon_pair(args):
    a, b = _pair(args.field, _load_payload(args))
    red = canon.canonical_pair(a, b)
    return red.to_json(), f"type {red.type} over {red.field_used!r}"


def cmd_canon_traceless(args):
    a, b = _pair(args.field, _load_payload(args))
    red = canon.canonical_traceless_pair(a, b)
    return red.to_json(), f"type {red.type} over {red.field_used!r}"


def cmd_invariant(args):
    F = args.field
    try:
        expr = invariants.parse(args.expression)
    except invariants.ParseError as exc:
        raise UsageError(str(exc)) from exc
    obj = _load_payload(args)
    point = [obj] if isinstance(obj, dict) else obj
    if not isinstance(point, list) or not point:
        raise UsageError("a point is an octonion or a list of octonions")
    point = tuple(_octonion(F, x) for x in point)
    if isinstance(expr, (invariants.TraceOf, invariants.NormOf)):
        value = F.encode(invariants.eval_invariant(expr, point))
        kind = "polynomial"
    elif isinstance(expr, (invariants.Zeta, invariants.Scal)):
        value = invariants.eval_invariant(expr, point)
        kind = "abstract"
    else:
        value = invariants.eval_word(expr, point).to_json()
        kind = "word"
    return {"expression": str(expr), "kind": kind, "value": value}, f"{expr} = {value}"


def cmd_identities(args):
    F = args.field
    rng = random.Random(args.seed)
    report = identity_suite(F, exhaustive=args.exhaustive, samples=args.samples, rng=rng)
    report["seed"] = args.seed
    status = "pass" if report["ok"] else f"FAIL {report['failures']}"
    return report, f"identities over {F!r}: {report['checked']} checks, {status}"


def cmd_orbits(args):
    part = oracle.orbit_partition(args.space, args.field)
    if args.dump:
        part.dump(args.dump)
    summary = part.summary()
    return summary, f"{summary['orbits']} orbits on {summary['points']} points"


def verify_report(obj) -> dict:
    """Replay a Reduction JSON document and re-check it."""
    try:
        red = canon.Reduction.from_json(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"not a reduction: {exc}") from exc
    try:
        problems = red.problems()
    except (ValueError, ArithmeticError) as exc:
        problems = [f"transcript cannot be replayed: {exc}"]
    return {"ok": not problems, "problems": problems, "type": red.type}


def cmd_verify(args):
    report = verify_report(_load_payload(args))
    if not report["ok"]:
        raise VerificationError(report)
    return report, f"verified type {report['type']}"


class VerificationError(Exception):
    def __init__(self, report):
        super().__init__("; ".join(report["problems"]))
        self.report = report


# -- driver --------------------------------------------------------------------------

COMMANDS = {
    "canon-one": (cmd_canon_one, "canonical form of one octonion"),
    "canon-pair": (cmd_canon_pair, "canonical form of a pair"),
    "canon-traceless": (cmd_canon_traceless, "canonical form of a traceless pair"),
    "invariant": (cmd_invariant, "evaluate a word or invariant at a point"),
    "identities": (cmd_identities, "structural identity suite"),
    "orbits": (cmd_orbits, "orbit partition summary"),
    "verify": (cmd_verify, "replay and check a reduction"),
}


def command_parser(name: str) -> argparse.ArgumentParser:
    func, help = COMMANDS[name]
    p = argparse.ArgumentParser(prog=f"g2orbits {name}", description=help)
    p.add_argument("--field", default="p=2", help="p=<p>[,k=<k>,mod=<c0,c1,...>] or rational")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    if name == "invariant":
        p.add_argument("expression")
    if name not in ("identities", "orbits"):
        p.add_argument("payload", nargs="?", help="inline JSON input")
        p.add_argument("--in", dest="infile", help="read the JSON input from a file")
    if name == "identities":
        p.add_argument("--exhaustive", action="store_true", help="check every pair of the field")
        p.add_argument("--samples", type=int, default=1000)
    if name == "orbits":
        p.add_argument("--space", choices=oracle.SPACES, default="single")
        p.add_argument("--dump", help="write the point -> orbit map (.npy or JSON)")
    p.set_defaults(func=func)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g2orbits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help) in COMMANDS.items():
        sub.add_parser(name, help=help, add_help=False)
    return parser


def parse_args(argv):
    """Options and the inline payload may come in any order after the subcommand."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        build_parser().parse_args(argv[:1] or argv)
    return command_parser(argv[0]).parse_intermixed_args(argv[1:])


def _emit(report, out):
    text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        args.field = parse_field(args.field)
        report, summary = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        _emit(exc.report, args.out)
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (NoRootInField, CannotExtendRationals, InfiniteField, oracle.FieldTooLarge,
            canon.ZeroVector, canon.NotK1, canon.NotTraceless, canon.ReductionError,
            ArithmeticError) as exc:
        print(f"math error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    _emit(report, args.out)
    print(summary, file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

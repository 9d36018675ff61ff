"""Command-line front end.

Subcommands mirror the pipeline stages: `weyl` (group combinatorics and
signs), `bgg` (full-complex verification), `bggl` (parabolic quotient, with
optional filtration checks), `quantum` (the q-analog runs), and `characters`
(alternating-sum and denominator checks, no matrices involved).

Exit codes separate failure kinds so CI can tell a crash from a discovery:
  0  success
  2  invalid configuration (bad matrix, bad flags)
  3  structural invariant violation (a bug, never expected on valid input)
  4  a differential failed to square to zero
  5  a mathematical finding (nonzero homology, dimension mismatch)

Reports are deterministic JSON: the same configuration produces byte-identical
output, and every report embeds its trust region so truncation can never be
mistaken for vanishing.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cartan import GCM, gcm_from_json, validate_gcm, weight
from .characters import denominator_identity_check, euler_check, freudenthal, verma_character
from .complexes import BGGComplex, ParabolicBGGComplex, build_bgg, build_bggl
from .errors import (
    EnumerationLimitError,
    GCMError,
    InvariantViolationError,
    NotSymmetrizableError,
)
from .nilpotent import build_nilpotent
from .quantum import quantum_engine
from .verma import VermaEngine
from .weyl import BruhatTable

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVARIANT = 3
EXIT_D_SQUARED = 4
EXIT_FINDING = 5


class _ConfigError(Exception):
    pass


def _load_gcm(path: str) -> GCM:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _ConfigError(f"cannot read GCM file {path}: {exc}") from exc
    try:
        return gcm_from_json(data)
    except GCMError as exc:
        raise _ConfigError(f"invalid GCM: {exc}") from exc


def _parse_ints(text: str, what: str):
    if text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise _ConfigError(f"cannot parse {what} {text!r}: expected comma-separated integers") from exc


def _check_mu(A: GCM, mu_labels) -> None:
    if len(mu_labels) != A.rank:
        raise _ConfigError(f"mu has {len(mu_labels)} labels, matrix rank is {A.rank}")
    if any(x < 0 for x in mu_labels):
        raise _ConfigError("mu must be dominant (nonnegative labels)")


def _check_s(A: GCM, S) -> None:
    if any(not (0 <= i < A.rank) for i in S):
        raise _ConfigError(f"S {list(S)} out of range for rank {A.rank}")


def _emit(data: dict, out_path: str | None) -> None:
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def _make_engine(A: GCM, depth: int, engine: str, q):
    if engine == "classical":
        return VermaEngine(build_nilpotent(A, depth))
    if engine == "quantum":
        try:
            return quantum_engine(A, depth, q)
        except (NotSymmetrizableError, ValueError) as exc:
            raise _ConfigError(str(exc)) from exc
    raise _ConfigError(f"unknown engine {engine!r}")


def _scalar_field_note(engine: str, q) -> str:
    if engine == "classical":
        return "Q"
    return "Q(q)" if q is None else f"Q at q={q}"


def cmd_weyl(args) -> int:
    A = _load_gcm(args.gcm)
    if args.max_length < 0:
        raise _ConfigError("max length must be >= 0")
    table = BruhatTable.build(A, args.max_length)
    S = _parse_ints(args.s, "S") if args.s is not None else None
    if S is not None:
        _check_s(A, S)
    report = {"gcm": A.to_json(), **table.to_json()}
    if S is not None:
        report["minimal_coset_reps"] = [list(w.word) for w in table.minimal_coset_reps(S)]
    _write(args.dot, table.to_dot(S))
    _emit(report, args.out)
    return EXIT_OK


def _complex_report(cx: BGGComplex, engine: str, q, jobs: int, flip_signs):
    flips = []
    if flip_signs:
        arrows = cx.table.arrows()
        for k in flip_signs:
            if not (0 <= k < len(arrows)):
                raise _ConfigError(f"--flip-sign index {k} out of range (have {len(arrows)} arrows)")
            flips.append(arrows[k])
    d2 = cx.verify_d_squared(jobs=jobs, sign_flips=flips)
    hom = cx.homology(jobs=jobs, sign_flips=flips)
    report = {
        "config": {
            "gcm": cx.A.to_json(),
            "mu": cx.mu.to_json(),
            "depth": cx.depth,
            "engine": engine,
            "scalar_field": _scalar_field_note(engine, q),
        },
        "trusted_slices": [list(b) for b in cx.slices],
        "d_squared": "ok" if not d2 else [{"n": n, "offset": list(b)} for n, b in d2],
        **hom.to_json(),
    }
    code = EXIT_OK
    if d2:
        code = EXIT_D_SQUARED
    elif not hom.exact:
        code = EXIT_FINDING
    return report, code


def cmd_bgg(args) -> int:
    A = _load_gcm(args.gcm)
    mu_labels = _parse_ints(args.mu, "mu")
    _check_mu(A, mu_labels)
    if args.depth < 1:
        raise _ConfigError("depth must be >= 1")
    engine = _make_engine(A, args.depth, args.engine, args.q)
    cx = build_bgg(A, weight(mu_labels), args.depth, engine, max_length=args.max_length)
    report, code = _complex_report(cx, args.engine, args.q, args.jobs, args.flip_sign)
    _write(args.dot, cx.to_dot())
    _emit(report, args.out)
    return code


def cmd_bggl(args) -> int:
    A = _load_gcm(args.gcm)
    mu_labels = _parse_ints(args.mu, "mu")
    S = _parse_ints(args.s, "S")
    _check_mu(A, mu_labels)
    _check_s(A, S)
    if args.depth < 1:
        raise _ConfigError("depth must be >= 1")
    engine = _make_engine(A, args.depth, args.engine, args.q)
    px = build_bggl(A, weight(mu_labels), S, args.depth, engine, max_length=args.max_length)
    reports = px.verify(jobs=args.jobs)
    report = {
        "config": {
            "gcm": A.to_json(),
            "mu": px.mu.to_json(),
            "S": list(px.S),
            "depth": px.depth,
            "engine": args.engine,
            "scalar_field": _scalar_field_note(args.engine, args.q),
        },
        "trusted_slices": [list(b) for b in px.base.slices],
        "d_squared": "ok"
        if not reports.quotient_d2_violations
        else [{"n": n, "offset": list(b)} for n, b in reports.quotient_d2_violations],
        **reports.quotient_homology.to_json(),
    }
    code = EXIT_OK
    if reports.quotient_d2_violations:
        code = EXIT_D_SQUARED
    elif not reports.quotient_homology.exact:
        code = EXIT_FINDING
    if args.filtration:
        filt = px.filtration_check(jobs=args.jobs)
        report["filtration"] = filt.to_json()
        if code == EXIT_OK and not filt.exact:
            code = EXIT_FINDING
    _write(args.dot, px.base.to_dot())
    _emit(report, args.out)
    return code


def cmd_quantum(args) -> int:
    args.engine = "quantum"
    if args.s:
        return cmd_bggl(args)
    return cmd_bgg(args)


def cmd_characters(args) -> int:
    A = _load_gcm(args.gcm)
    if args.depth < 1:
        raise _ConfigError("depth must be >= 1")
    algebra = build_nilpotent(A, args.depth)
    mu_labels = _parse_ints(args.mu, "mu") if args.mu is not None else (0,) * A.rank
    _check_mu(A, mu_labels)
    S = _parse_ints(args.s, "S") if args.s is not None else ()
    _check_s(A, S)
    mu = weight(mu_labels)
    report = {
        "config": {
            "gcm": A.to_json(),
            "mu": mu.to_json(),
            "S": list(S),
            "depth": args.depth,
        },
        "trusted_slices": [list(b) for b, _ in sorted(algebra.root_list())],
        "verma_character": verma_character(algebra, mu, args.depth).to_json(),
    }
    code = EXIT_OK
    try:
        report["integrable_character"] = freudenthal(A, algebra, mu, args.depth).to_json()
        euler = euler_check(A, algebra, mu, S, args.depth)
        report["euler"] = euler.to_json()
        if not euler.ok:
            code = EXIT_FINDING
    except NotSymmetrizableError:
        report["integrable_character"] = None
        report["euler"] = {"skipped": "matrix is not symmetrizable"}
    if all(x == 0 for x in mu_labels):
        den = denominator_identity_check(A, algebra, args.depth)
        report["denominator_identity"] = den.to_json()
        if not den.ok:
            code = EXIT_FINDING
    _emit(report, args.out)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgg",
        description="Exact verification of signed Verma-module complexes "
        "for Kac-Moody algebras, classically and at generic q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mu=True):
        p.add_argument("--gcm", required=True, help="JSON file {rank, entries}")
        if mu:
            p.add_argument("--mu", required=True, help="comma-separated dominant labels")
            p.add_argument("--depth", type=int, required=True, help="offset height cutoff")
            p.add_argument("--jobs", type=int, default=1, help="parallel slice workers")
            p.add_argument("--max-length", type=int, default=None, help="cap on enumerated length")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--dot", default=None, help="write a GraphViz export here")

    p = sub.add_parser("weyl", help="enumerate the group, arrows, squares, signs")
    p.add_argument("--gcm", required=True)
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--s", default=None, help="highlight minimal coset representatives")
    p.add_argument("--out", default=None)
    p.add_argument("--dot", default=None)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("bgg", help="build and verify the full complex")
    common(p)
    p.add_argument("--engine", choices=("classical", "quantum"), default="classical")
    p.add_argument("--q", type=Fraction, default=None, help="numeric q (quantum engine)")
    p.add_argument(
        "--flip-sign",
        type=int,
        action="append",
        default=[],
        help="debug: negate the k-th arrow sign before verifying",
    )
    p.set_defaults(func=cmd_bgg)

    p = sub.add_parser("bggl", help="build and verify the parabolic quotient complex")
    common(p)
    p.add_argument("--s", required=True, help="comma-separated subset of node indices")
    p.add_argument("--engine", choices=("classical", "quantum"), default="classical")
    p.add_argument("--q", type=Fraction, default=None)
    p.add_argument("--filtration", action="store_true", help="also check the kernel filtration")
    p.add_argument("--flip-sign", type=int, action="append", default=[])
    p.set_defaults(func=cmd_bggl)

    p = sub.add_parser("quantum", help="quantum-engine runs (bgg, or bggl when --s given)")
    common(p)
    p.add_argument("--s", default="", help="optional subset for the quotient complex")
    p.add_argument("--q", type=Fraction, default=None, help="numeric q; symbolic when omitted")
    p.add_argument("--filtration", action="store_true")
    p.add_argument("--flip-sign", type=int, action="append", default=[])
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("characters", help="character calculus: alternating sums, denominator identity")
    p.add_argument("--gcm", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mu", default=None, help="labels; zero weight when omitted")
    p.add_argument("--s", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_characters)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except _ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GCMError, NotSymmetrizableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvariantViolationError, EnumerationLimitError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())

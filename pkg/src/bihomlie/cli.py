"""Command-line interface.

Subcommands load one algebra per file, run the solvers, and print either
human-readable reports or machine-readable line records (--output
records, one fact per line). Exit codes: 0 success or match, 1 a
mathematical negative (axiom violation, mismatch, no witness), 2 usage
or parse errors. All values print exactly, never as floats.
"""

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import algfile, catalog
from .algfile import AlgebraFileError
from .catalog import CatalogError
from .derivations import derivation_space, normalize_params
from .fields import ReductionError
from .isomorphism import (brute_force_iso, compare_fingerprints, fingerprint,
                          verify_isomorphism)
from .structure import (center, derived_series,
                        is_characteristically_nilpotent, is_nilpotent,
                        is_small_centroid, is_solvable, lower_central_series)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

SEED_ENV = "BIHOM_SAMPLE_SEED"

# extra-sample pool: nonzero, and away from the roots of unity that put
# instances on special table rows
_SAMPLE_POOL = (Fraction(2), Fraction(3), Fraction(5), Fraction(-2),
                Fraction(1, 2), Fraction(1, 3))


class CliError(Exception):
    """Bad invocation discovered after argument parsing."""


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not an exact value: %r" % text)


def _fmt(v):
    return algfile.format_value(v)


def _fmt_matrix(m):
    return "[%s]" % ",".join(
        "[%s]" % ",".join(_fmt(v) for v in row) for row in m.entries)


def _emit(args, kind, human, **fields):
    if args.output == "records":
        parts = [kind]
        parts.extend("%s=%s" % (key, value) for key, value in fields.items())
        print(" ".join(parts))
    else:
        print(human)


_VIOLATION_INDEX_NAMES = {3: ("i", "j", "s"), 4: ("i", "j", "k", "r")}


def _violation_text(first):
    kind, indices, _residual = first
    names = _VIOLATION_INDEX_NAMES.get(len(indices),
                                       tuple("i%d" % (t + 1)
                                             for t in range(len(indices))))
    inner = ",".join("%s=%d" % (name, value)
                     for name, value in zip(names, indices))
    return "%s (%s)" % (kind, inner) if inner else kind


def cmd_check(args):
    L = algfile.load(args.path).algebra
    report = L.check_all()
    for name, ok in (("commuting", report.commuting),
                     ("skew", report.skew_symmetric),
                     ("jacobi", report.bihom_jacobi),
                     ("multiplicative", report.multiplicative)):
        _emit(args, "axiom", "%s: %s" % (name, "ok" if ok else "FAILED"),
              name=name, ok=str(ok).lower())
    if report.passed:
        _emit(args, "verdict", "all axioms hold", value="pass")
        return EXIT_OK
    kind, indices, _ = report.first_violation
    text = _violation_text(report.first_violation)
    fields = {"type": kind}
    names = _VIOLATION_INDEX_NAMES.get(len(indices), ())
    for name, value in zip(names, indices):
        fields[name] = value
    _emit(args, "violation", "violation: %s" % text, **fields)
    return EXIT_NEGATIVE


def cmd_der(args):
    L = algfile.load(args.path).algebra
    lam, mu, gamma = args.lam, args.mu, args.gamma
    _emit(args, "params",
          "params: lambda=%s mu=%s gamma=%s k=%d l=%d"
          % (lam, mu, gamma, args.k, args.l),
          **{"lambda": lam, "mu": mu, "gamma": gamma,
             "k": args.k, "l": args.l})
    if args.normalize:
        (lam, mu, gamma), tag = normalize_params(lam, mu, gamma, L.field)
        _emit(args, "normalized",
              "normalized: (%s, %s, %s) case %d"
              % (_fmt(lam), _fmt(mu), _fmt(gamma), tag),
              **{"lambda": _fmt(lam), "mu": _fmt(mu), "gamma": _fmt(gamma),
                 "case": tag})
    space = derivation_space(L, lam, mu, gamma, args.k, args.l)
    _emit(args, "dimension", "dimension: %d" % space.dim, value=space.dim)
    if args.output == "human" and space.dim:
        print("basis:")
    for idx, m in enumerate(space.basis):
        _emit(args, "basis", _fmt_matrix(m), index=idx,
              matrix=_fmt_matrix(m))
    return EXIT_OK


def cmd_structure(args):
    L = algfile.load(args.path).algebra
    lower = lower_central_series(L)
    derived = derived_series(L)
    facts = (
        ("center_dim", "center dim", center(L).dim),
        ("lower_central_dims", "lower central dims",
         ",".join(str(d) for d in lower.dims)),
        ("derived_dims", "derived dims",
         ",".join(str(d) for d in derived.dims)),
        ("nilpotent", "nilpotent", is_nilpotent(L)),
        ("solvable", "solvable", is_solvable(L)),
        ("characteristically_nilpotent", "characteristically nilpotent",
         is_characteristically_nilpotent(L)),
        ("small_centroid", "small centroid", is_small_centroid(L)),
    )
    for key, label, value in facts:
        if isinstance(value, bool):
            value = "yes" if value else "no"
        _emit(args, key, "%s: %s" % (label, value), value=value)
    return EXIT_OK


def _parse_cli_params(text):
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise CliError("--params expects name=value pairs, got %r" % part)
        name, _, raw = part.partition("=")
        out[name.strip()] = raw.strip()
    return out


def _random_samples(family, rng, count=2):
    samples = []
    for _ in range(count):
        samples.append({spec["name"]: rng.choice(_SAMPLE_POOL)
                        for spec in family.params})
    return samples


def _catalog_jobs(args):
    if args.params is not None and args.entry is None:
        raise CliError("--params requires --entry")
    entries = [args.entry] if args.entry else catalog.family_ids()
    seed_text = os.environ.get(SEED_ENV)
    rng = None
    if seed_text is not None:
        try:
            rng = random.Random(int(seed_text))
        except ValueError:
            raise CliError("%s must be an integer, got %r"
                           % (SEED_ENV, seed_text)) from None
    for family_id in entries:
        if args.params is not None:
            sample_sets = [_parse_cli_params(args.params)]
        else:
            sample_sets = list(catalog.pinned_samples(family_id))
            if rng is not None:
                fam = catalog.get_family(family_id)
                if fam.params:
                    sample_sets.extend(_random_samples(fam, rng))
        for params in sample_sets:
            yield family_id, params


def cmd_catalog(args):
    failures = 0
    for family_id, params in _catalog_jobs(args):
        env = catalog.coerce_params(family_id, params)
        shown = ",".join("%s=%s" % (name, _fmt(value))
                         for name, value in env.items())
        L = catalog.build(family_id, params)
        for k in range(args.kmax + 1):
            for l in range(args.lmax + 1):
                v = catalog.verify_entry(family_id, params, k, l, algebra=L)
                verdict = "match" if v.ok else "MISMATCH"
                _emit(args, "cell",
                      "%s [%s] k=%d l=%d: %s"
                      % (family_id, shown, k, l, verdict),
                      entry=family_id, params=shown.replace(" ", ""),
                      k=k, l=l, verdict=verdict.lower())
                if not v.ok:
                    failures += 1
                    for aspect, expected, computed in v.diffs:
                        _emit(args, "diff",
                              "  %s: expected %s, computed %s"
                              % (aspect, expected, computed),
                              aspect=aspect.replace(" ", "_"))
    _emit(args, "summary",
          "mismatched cells: %d" % failures, mismatches=failures)
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


def cmd_fingerprint(args):
    L = algfile.load(args.path).algebra
    fp = fingerprint(L)
    scalars = (
        ("dim", fp.dim), ("rank_alpha", fp.rank_alpha),
        ("rank_beta", fp.rank_beta),
        ("bracket_image_dim", fp.dim_bracket_image),
        ("center_dim", fp.dim_center),
    )
    for key, value in scalars:
        _emit(args, key, "%s: %d" % (key.replace("_", " "), value),
              value=value)
    for key, dims in (("lower_central_dims", fp.lower_central_dims),
                      ("derived_dims", fp.derived_dims)):
        text = ",".join(str(d) for d in dims)
        _emit(args, key, "%s: %s" % (key.replace("_", " "), text),
              value=text)
    for key, coeffs in (("char_poly_alpha", fp.char_poly_alpha),
                        ("char_poly_beta", fp.char_poly_beta)):
        text = ",".join(_fmt(c) for c in coeffs)
        _emit(args, key, "%s: %s" % (key.replace("_", " "), text),
              value=text)
    for (lam, mu, gamma, k, l) in sorted(fp.der_dims):
        dim = fp.der_dims[(lam, mu, gamma, k, l)]
        _emit(args, "der_dim",
              "der dim (%s,%s,%s) k=%d l=%d: %d"
              % (lam, mu, gamma, k, l, dim),
              **{"lambda": lam, "mu": mu, "gamma": gamma, "k": k, "l": l,
                 "value": dim})
    return EXIT_OK


def _load_witness(path, L):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise AlgebraFileError("%s: %s" % (path, exc.strerror)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError("witness: not valid JSON: %s" % exc) from None
    if isinstance(doc, dict) and set(doc) == {"matrix"}:
        doc = doc["matrix"]
    return algfile._parse_matrix(doc, L.n, L.field, "witness")


def cmd_iso(args):
    La = algfile.load(args.path_a).algebra
    Lb = algfile.load(args.path_b).algebra
    if args.witness is not None:
        f = _load_witness(args.witness, La)
        if verify_isomorphism(La, Lb, f):
            _emit(args, "verdict", "isomorphic (witness verified)",
                  value="isomorphic", how="witness")
            return EXIT_OK
        _emit(args, "verdict", "witness rejected", value="rejected")
        return EXIT_NEGATIVE
    if args.brute is not None:
        found = brute_force_iso(La, Lb, args.brute)
        if found is not None:
            _emit(args, "verdict",
                  "isomorphic over F_%d (witness found): %s"
                  % (args.brute, _fmt_matrix(found)),
                  value="isomorphic", witness=_fmt_matrix(found))
            return EXIT_OK
        _emit(args, "verdict", "no witness over F_%d" % args.brute,
              value="no_witness")
        return EXIT_NEGATIVE
    verdict = compare_fingerprints(fingerprint(La), fingerprint(Lb))
    if verdict == "distinct":
        _emit(args, "verdict", "fingerprints distinct (not isomorphic)",
              value="distinct")
        return EXIT_NEGATIVE
    _emit(args, "verdict",
          "inconclusive (fingerprints equal; no witness attempted)",
          value="inconclusive")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bihomlie",
        description="exact solvers for twisted bracket algebras "
                    "given by structure constants")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("human", "records"),
                        default="human",
                        help="report style: prose or one fact per line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="run the axiom checks on one algebra file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("der", parents=[common],
                       help="solve one generalized derivation space")
    p.add_argument("path")
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(1))
    p.add_argument("--mu", type=_fraction, default=Fraction(1))
    p.add_argument("--gamma", type=_fraction, default=Fraction(1))
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--normalize", action="store_true",
                   help="print and solve the canonical coefficient triple")
    p.set_defaults(func=cmd_der)

    p = sub.add_parser("structure", parents=[common],
                       help="center, series, and nilpotency report")
    p.add_argument("path")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("catalog", parents=[common],
                       help="replay expected-table rows for the built-in "
                            "two-dimensional families")
    p.add_argument("--entry", help="one family id (default: all)")
    p.add_argument("--params",
                   help="comma-separated name=value list; needs --entry")
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--lmax", type=int, default=2)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("fingerprint", parents=[common],
                       help="print basis-independent invariants")
    p.add_argument("path")
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("iso", parents=[common],
                       help="compare two algebra files")
    p.add_argument("path_a")
    p.add_argument("path_b")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--witness",
                      help="JSON matrix file to verify as an isomorphism")
    mode.add_argument("--brute", type=int, metavar="P",
                      help="exhaustive search over F_P")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AlgebraFileError, CatalogError, CliError, ReductionError,
            ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

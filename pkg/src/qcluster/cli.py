"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 library error.
Errors are written to stderr as JSON objects with a stable "code" field.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from . import fixtures
from .acyclic import classical_presentation, quantum_presentation, relations_json
from .azumaya import azumaya_bound_report, noncentral_frozen, pi_degree
from .compat import check_compatible, check_ell_compatible
from .errors import ClusterError
from .intlin import skew_rank
from .kronecker import SUITES, conics_csv, run_suite
from .poisson import anticanonical_coefficient, torus_weights
from .seeds import dump_seed, explore, initial_seed, load_seed, mutate_sequence
from .tlaurent import TwistMatrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIB = 0, 1, 2, 3

BUILTIN = {
    "kronecker": lambda: initial_seed(fixtures.kronecker_exchange(), fixtures.KRONECKER_LAMBDA),
    "kronecker-printed": lambda: initial_seed(fixtures.kronecker_exchange(), fixtures.KRONECKER_LAMBDA_PRINTED),
    "a2": lambda: initial_seed(fixtures.a2_exchange(), fixtures.A2_LAMBDA),
    "b3x1-central": lambda: initial_seed(fixtures.b3x1_exchange(), fixtures.B3X1_CENTRAL),
    "b3x1-noncentral": lambda: initial_seed(fixtures.b3x1_exchange(), fixtures.B3X1_NONCENTRAL),
    "b3x2": lambda: initial_seed(fixtures.b3x2_exchange(), fixtures.B3X2_LAMBDA),
}

ANALYSES = ("compat", "bracket", "weights", "anticanonical", "pi-degree", "nc", "presentation", "azumaya-report")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _error(code: str, message: str, **extra):
    sys.stderr.write(json.dumps({"code": code, "message": message, **extra}) + "\n")


def _load(args):
    if not args.seed:
        raise UsageError("--seed is required")
    if args.seed.startswith("builtin:"):
        name = args.seed.split(":", 1)[1]
        if name not in BUILTIN:
            raise UsageError(f"unknown builtin seed {name!r}; choose from {sorted(BUILTIN)}")
        seed = BUILTIN[name]()
    else:
        try:
            seed = load_seed(args.seed)
        except OSError as e:
            raise UsageError(f"cannot read {args.seed}: {e.strerror}") from None
    ell = getattr(args, "ell", None)
    if ell is not None and not seed.is_quantum and seed.lam is not None and not seed.history:
        seed = initial_seed(seed.exchange, seed.lam, ell)
    return seed


def _require_lambda(seed):
    if seed.lam is None:
        raise UsageError("this analysis needs a 'Lambda' entry in the seed")
    return seed.lam


def _omega(seed, ell):
    if seed.is_quantum and (ell is None or ell == seed.ell):
        return seed.form
    if ell is None:
        raise UsageError("--ell is required for this analysis")
    return TwistMatrix(_require_lambda(seed), ell)


def cmd_mutate(args):
    seed = _load(args)
    ks = []
    for tok in args.sequence:
        for part in tok.replace(",", " ").split():
            try:
                ks.append(int(part) - 1)
            except ValueError:
                raise UsageError(f"mutation index {part!r} is not an integer") from None
    sys.stdout.write(dump_seed(mutate_sequence(seed, ks)))
    return EXIT_OK


def cmd_explore(args):
    seed = _load(args)
    if args.depth < 0:
        raise UsageError("--depth must be nonnegative")
    graph = explore(seed, args.depth)
    if args.format == "dot":
        sys.stdout.write(graph.to_dot())
    elif args.format == "json":
        _emit(graph.to_json())
    else:
        raise UsageError("explore supports --format json or dot")
    return EXIT_OK


def cmd_analyze(args):
    seed = _load(args)
    which = args.which
    data = seed.exchange
    if which == "compat":
        pair = check_compatible(_require_lambda(seed), data)
        out = {"compatible": True, "D": list(pair.D)}
        if args.ell is not None:
            ep = check_ell_compatible(TwistMatrix(pair.Lambda, args.ell), data, args.ell, pair.D)
            out["ell"] = args.ell
            out["D_mod_ell"] = [d % args.ell for d in ep.D]
        _emit(out)
    elif which == "bracket":
        lam = _require_lambda(seed)
        pairs = []
        for i in range(data.n):
            for k in range(i + 1, data.n):
                c = lam[i, k]
                pairs.append({"i": i + 1, "k": k + 1, "lambda": c,
                              "bracket": f"{c}*x{i + 1}*x{k + 1}" if c else "0"})
        _emit({"rank2r": skew_rank(lam), "brackets": pairs})
    elif which == "weights":
        _emit([list(w.nu) for w in torus_weights(data)])
    elif which == "anticanonical":
        lam = _require_lambda(seed)
        basis = torus_weights(data)
        m = data.n - skew_rank(lam)
        if m > len(basis):
            raise UsageError(f"need {m} weights but Ker(B^T) has rank {len(basis)}")
        coeffs = []
        for theta in combinations(range(len(basis)), m):
            c = anticanonical_coefficient(lam, [basis[i] for i in theta])
            coeffs.append({"theta": [i + 1 for i in theta], "c": str(c)})
        _emit({"rank2r": data.n - m, "nullity": len(basis), "coefficients": coeffs,
               "nonzero": any(c["c"] != "0" for c in coeffs)})
    elif which == "pi-degree":
        om = _omega(seed, args.ell)
        _emit({"ell": om.ell, "pi_degree": pi_degree(om)})
    elif which == "nc":
        om = _omega(seed, args.ell)
        _emit({"ell": om.ell, "nc": [i + 1 for i in noncentral_frozen(om, data.ninv)]})
    elif which == "presentation":
        out = {"classical": [[r["lhs"], r["rhs"]] for r in classical_presentation(data)]}
        ell = args.ell if args.ell is not None else seed.ell
        if ell is not None:
            pres = quantum_presentation(data, _require_lambda(seed), ell)
            out["quantum"] = {"ell": ell, "convention": pres["convention"], "relations": relations_json(pres)}
        _emit(out)
    elif which == "azumaya-report":
        if not seed.is_quantum:
            raise UsageError("--ell is required for azumaya-report")
        _emit(azumaya_bound_report(seed))
    return EXIT_OK


def cmd_conics(args):
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    if args.format not in (None, "csv"):
        raise UsageError("conics only emits CSV")
    sys.stdout.write(conics_csv(args.z, args.samples))
    return EXIT_OK


def cmd_verify_paper(args):
    if args.only and args.only not in SUITES:
        raise UsageError(f"unknown suite {args.only!r}; choose from {sorted(SUITES)}")
    lam = fixtures.KRONECKER_LAMBDA
    if args.seed:
        lam = _require_lambda(_load(args)).tolist()
    report = run_suite(args.only, lam)
    _emit(report)
    if not report["ok"]:
        _error("verification-failed", "worked-example checks failed", failed=report["failed"])
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcluster", description="Exact computations with cluster algebras and their quantizations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def seed_arg(sp, required=True):
        sp.add_argument("--seed", required=required, help="seed JSON file or builtin:NAME")

    sp = sub.add_parser("mutate", help="apply a mutation sequence")
    seed_arg(sp)
    sp.add_argument("sequence", nargs="*", help="1-based mutable indices")
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("explore", help="breadth-first exchange-graph exploration")
    seed_arg(sp)
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--format", choices=("json", "dot", "csv"), default="json")
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("analyze", help="run one analysis on a seed")
    sp.add_argument("which", choices=ANALYSES)
    seed_arg(sp)
    sp.add_argument("--ell", type=int)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("conics", help="sample the pencil of conics as CSV")
    sp.add_argument("--z", type=float, nargs="+", default=[-3.0, -1.5, 0.0, 1.5, 3.0])
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--format", choices=("json", "dot", "csv"))
    sp.set_defaults(func=cmd_conics)

    sp = sub.add_parser("verify-paper", help="run the worked-example checks")
    sp.add_argument("--only", help=f"one of {', '.join(SUITES)}")
    seed_arg(sp, required=False)
    sp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        if getattr(args, "ell", None) is not None and args.ell < 1:
            raise UsageError("--ell must be a positive integer")
        return args.func(args)
    except UsageError as e:
        _error("usage", str(e))
        return EXIT_USAGE
    except ClusterError as e:
        sys.stderr.write(json.dumps(e.to_json()) + "\n")
        return EXIT_LIB


if __name__ == "__main__":
    sys.exit(main())

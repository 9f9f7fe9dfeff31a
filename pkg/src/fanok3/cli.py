"""Command-line front end.

Every invocation prints exactly one JSON document (a report with keys
``command``, ``inputs``, ``result``, ``warnings``, ``status``) and exits with
0 on success, 1 when a mathematical check fails and 2 on bad input or an
exhausted budget.
"""
from __future__ import annotations

import argparse
import json
import sys

from .binary_forms import class_count, enumerate_reduced, proper_classes
from .cohomology import LineBundleClass, ProductSpace, check_collection, ext_table, mutation_check
from .discriminant import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    discriminant_group,
    isotropic_subgroups,
    orthogonal_group,
)
from .fano import (
    base_of,
    complete_isotropic_basis,
    complete_square2_basis,
    family_id,
    ns_lattice_of_branch,
    verra_cubic,
)
from .fm_count import FMCountProblem, HodgeImageSpec, fm_partner_count
from .genus import genus_representatives_rank2
from .lattice import IntegerLattice, LatticeError, basic_invariants

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _gram(L):
    return [list(r) for r in L.gram]


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


def _lattice(args):
    if args.file:
        return IntegerLattice.from_json(_read_json(args.file))
    if args.family:
        return ns_lattice_of_branch(args.family)
    raise InputError("a lattice is required: pass --file or --family")


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise InputError(f"--{name.replace('_', '-')} is required for this command")
    return val


# -- commands --------------------------------------------------------------------
# Each returns (result, warnings, passed).


def cmd_invariants(args):
    L = _lattice(args)
    return {"gram": _gram(L), "rank": L.rank, **basic_invariants(L).to_json()}, [], True


def cmd_disc_group(args):
    A = discriminant_group(_lattice(args))
    return A.to_json(), [], True


def cmd_isotropic(args):
    A = discriminant_group(_lattice(args))
    subs = isotropic_subgroups(A, _need(args, "order"), args.budget)
    return {"divisors": list(A.divisors), "order": args.order, "count": len(subs), "subgroups": [s.to_json() for s in subs]}, [], True


def cmd_orth_group(args):
    A = discriminant_group(_lattice(args))
    G = orthogonal_group(A, args.budget)
    return {"divisors": list(A.divisors), "order": len(G), "elements": [g.to_json() for g in G]}, [], True


def cmd_reduced_forms(args):
    D = _need(args, "disc")
    forms = enumerate_reduced(D)
    cycles = proper_classes(D)
    return (
        {
            "disc": D,
            "reduced_forms": [f.as_list() for f in forms],
            "cycles": [[f.as_list() for f in cyc] for cyc in cycles],
        },
        [],
        True,
    )


def cmd_class_count(args):
    D = _need(args, "disc")
    return {"disc": D, **class_count(D).to_json()}, [], True


def cmd_genus_reps(args):
    L = _lattice(args)
    reps = genus_representatives_rank2(L, args.budget)
    return {"gram": _gram(L), "count": len(reps), "representatives": [_gram(R) for R in reps]}, [], True


def cmd_fm_count(args):
    if args.file:
        problem = FMCountProblem.from_json(_read_json(args.file))
    elif args.family:
        L = ns_lattice_of_branch(args.family)
        problem = FMCountProblem(L, tuple(genus_representatives_rank2(L, args.budget)) if L.rank == 2 else (L,), HodgeImageSpec())
    else:
        raise InputError("fm-count needs --file (problem JSON) or --family")
    if args.bound is not None:
        problem = FMCountProblem(problem.ns, problem.genus_reps, problem.hodge, args.bound)
    res = fm_partner_count(problem, args.budget)
    return {"problem": problem.to_json(), **res.to_json()}, list(res.warnings), True


def cmd_ns_lattice(args):
    fam = family_id(_need(args, "family"))
    L = ns_lattice_of_branch(fam)
    out = {"family": fam, "gram": _gram(L), **basic_invariants(L).to_json()}
    if args.show_tensor:
        out["base"] = base_of(fam).to_json()
    return out, [], True


def cmd_verra_cubic(args):
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise InputError("--a and --b must be given together")
        val = verra_cubic(args.a, args.b)
        expected = 6 * args.a * args.b * (args.a + args.b)
        return {"a": args.a, "b": args.b, "value": val, "closed_form": expected}, [], val == expected
    bound = args.bound if args.bound is not None else 20
    if bound < 0:
        raise InputError("--bound must be nonnegative")
    mismatches = [
        [a, b]
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if verra_cubic(a, b) != 6 * a * b * (a + b)
    ]
    return {"bound": bound, "checked": (2 * bound + 1) ** 2, "mismatches": mismatches}, [], not mismatches


def cmd_complete_basis(args):
    L = _lattice(args)
    v = tuple(_need(args, "vector"))
    if L.rank == 2:
        hp = complete_square2_basis(L, v, args.root)
        vecs = [list(v), list(hp)]
    elif L.rank == 3:
        vecs = [list(v)] + [list(x) for x in complete_isotropic_basis(L, v)]
    else:
        raise InputError("complete-basis supports rank 2 (square-2 vector) and rank 3 (isotropic vector)")
    gram = [[sum(a[i] * L.gram[i][j] * b[j] for i in range(L.rank) for j in range(L.rank)) for b in vecs] for a in vecs]
    return {"basis": vecs, "gram": gram}, [], True


def _space(args):
    return ProductSpace(tuple(_need(args, "factors")))


def cmd_cohomology(args):
    S = _space(args)
    if args.degrees is not None and args.source is not None:
        t = ext_table(S, LineBundleClass(args.source), LineBundleClass(args.degrees))
        return {"factors": list(S.factors), "from": args.source, "to": args.degrees, "ext": t.to_json(), "euler": t.euler}, [], True
    Lb = LineBundleClass(_need(args, "degrees"))
    S.check(Lb)
    t = ext_table(S, LineBundleClass((0,) * len(S.factors)), Lb)
    return {"factors": list(S.factors), "degrees": list(Lb.degrees), "h": t.to_json(), "euler": t.euler}, [], True


def cmd_check_collection(args):
    doc = _read_json(_need(args, "file"))
    if not isinstance(doc, dict) or "factors" not in doc or "collection" not in doc:
        raise InputError("collection file needs 'factors' and 'collection' fields")
    S = ProductSpace(tuple(doc["factors"]))
    rep = check_collection(S, doc["collection"])
    return rep.to_json(), [], rep.passed


def cmd_mutation_check(args):
    S = _space(args)
    rep = mutation_check(S, _need(args, "E"), _need(args, "F"), _need(args, "G"), args.shift)
    return rep.to_json(), [], rep.passed


def cmd_check_paper(args):
    from .checks import run_ledger

    items = run_ledger()
    failed = [it["id"] for it in items if not it["passed"]]
    return {"items": items, "failed": failed, "total": len(items)}, [], not failed


COMMANDS = {
    "invariants": (cmd_invariants, "determinant, discriminant and signature of a lattice"),
    "disc-group": (cmd_disc_group, "discriminant group A_L with its finite quadratic form"),
    "isotropic": (cmd_isotropic, "isotropic subgroups of A_L of a given order"),
    "orth-group": (cmd_orth_group, "the orthogonal group O(A_L)"),
    "reduced-forms": (cmd_reduced_forms, "reduced indefinite binary forms and their cycles"),
    "class-count": (cmd_class_count, "proper, improper and lattice class numbers"),
    "genus-reps": (cmd_genus_reps, "isometry classes in the genus of a rank-2 lattice"),
    "fm-count": (cmd_fm_count, "Fourier-Mukai partner count from lattice data"),
    "ns-lattice": (cmd_ns_lattice, "Neron-Severi lattice of the branch K3 of a family"),
    "verra-cubic": (cmd_verra_cubic, "the cubic form of the Verra threefold"),
    "complete-basis": (cmd_complete_basis, "complete a square-2 or isotropic vector to a standard basis"),
    "cohomology": (cmd_cohomology, "line bundle cohomology on a product of projective spaces"),
    "check-collection": (cmd_check_collection, "check an exceptional collection of line bundles"),
    "mutation-check": (cmd_mutation_check, "check a right mutation of line bundles"),
    "check-paper": (cmd_check_paper, "rerun the whole ledger of lattice and cohomology facts"),
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--file", help="lattice JSON ({'gram': [[...]]} or a bare matrix)")
    common.add_argument("--family", help="Fano family id: 2-6b, 2-8, 3-1")
    common.add_argument("--disc", type=int, help="discriminant of binary forms")
    common.add_argument("--order", type=int, help="subgroup order")
    common.add_argument("--bound", type=int, help="search or sweep bound")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
    common.add_argument("--json", action="store_true", default=True, help="emit JSON (the only format)")

    parser = _Parser(prog="fanok3", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    subs = {}
    for name, (_, text) in COMMANDS.items():
        subs[name] = sub.add_parser(name, parents=[common], help=text, description=text)

    subs["ns-lattice"].add_argument("--show-tensor", action="store_true", help="include the base intersection tensor")
    subs["verra-cubic"].add_argument("--a", type=int)
    subs["verra-cubic"].add_argument("--b", type=int)
    subs["complete-basis"].add_argument("--vector", type=_int_list, help="e.g. 1,0")
    subs["complete-basis"].add_argument("--root", type=int, choices=(0, 1), default=0)
    for name in ("cohomology", "mutation-check"):
        subs[name].add_argument("--factors", type=_int_list, help="projective space dimensions, e.g. 1,1,1")
    subs["cohomology"].add_argument("--degrees", type=_int_list, help="multidegree of the line bundle")
    subs["cohomology"].add_argument("--source", type=_int_list, help="if given, compute Ext from this bundle")
    for flag in ("E", "F", "G"):
        subs["mutation-check"].add_argument(f"--{flag}", type=_int_list)
    subs["mutation-check"].add_argument("--shift", type=int, default=0)
    return parser


def _dump(report):
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def run(argv=None):
    """Return (exit code, report dict)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    report = {"command": None, "inputs": {}, "result": None, "warnings": [], "status": "error"}
    try:
        args = build_parser().parse_args(argv)
        report["command"] = args.command
        report["inputs"] = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json") and v is not None}
        if args.budget < 1:
            raise InputError("--budget must be positive")
        fn = COMMANDS[args.command][0]
        result, warnings, passed = fn(args)
    except (InputError, LatticeError, BudgetExceeded, ValueError, TypeError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return EXIT_INPUT, report
    except Exception as exc:  # keep the one-JSON-document contract even on a bug
        report["error"] = {"type": "InternalError", "message": f"{type(exc).__name__}: {exc}"}
        return EXIT_INPUT, report
    report["result"] = result
    report["warnings"] = warnings
    report["status"] = "pass" if passed else "fail"
    return (EXIT_OK if passed else EXIT_FAIL), report


def main(argv=None):
    code, report = run(argv)
    print(_dump(report))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

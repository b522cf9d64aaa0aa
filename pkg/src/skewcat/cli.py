"""Command line entry point: ``skewcat <subcommand> ...``.

Results go to stdout (or ``--out``) as JSON.  Any failure exits with status 1
(2 for usage errors) and a JSON diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .errors import ParseError, SkewcatError


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else io.dumps(payload) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _morphism_labels(cat, label=str) -> list:
    return [{"id": label(m), "src": str(cat.src(m)), "rng": str(cat.rng(m))} for m in cat.morphisms()]


def _category_summary(cat, label=str) -> dict:
    """Tables for explicit categories; a morphism listing for graded windows."""
    if cat.explicit:
        return io.category_to_json(cat)
    return {
        "window": True,
        "vertices": sorted(map(str, cat.vertices)),
        "morphisms": sorted(_morphism_labels(cat, label), key=lambda d: d["id"]),
    }


def _load_category(args):
    return io.parse_category(args.category)


def _load_cocycle(args, cat):
    group = io.parse_group(args.group) if getattr(args, "group", None) else None
    return io.parse_cocycle(args.cocycle, cat, group=group)


# --- subcommands ------------------------------------------------------------------

def cmd_validate(args):
    from .category import invertibles_and_equivalence, is_left_cancellative

    cat = _load_category(args)
    lc, witness = is_left_cancellative(cat)
    inv, classes = invertibles_and_equivalence(cat)
    report = {
        "valid": True,
        "vertices": len(cat.vertices),
        "morphisms": len(cat),
        "left_cancellative": lc,
        "lc_witness": list(witness) if witness else None,
        "invertibles": sorted(inv),
        "classes": sorted(sorted(c) for c in classes),
    }
    if args.cocycle:
        eta, nondeg = _load_cocycle(args, cat)
        report["cocycle"] = {"valid": True, "nondegenerate": nondeg}
    return report


def cmd_align(args):
    from .alignment import is_exhaustive, join, join_family

    cat = _load_category(args)
    report = {}
    if args.pair:
        a, b = args.pair
        report["join"] = sorted(join(cat, a, b))
    if args.family:
        report["join_family"] = sorted(join_family(cat, args.family))
    if args.exhaustive:
        v, *family = args.exhaustive
        ok, witness = is_exhaustive(cat, v, family)
        report["exhaustive"] = {"vertex": v, "family": family, "exhaustive": ok, "witness": witness}
    if not report:
        report["joins"] = [
            {"a": a, "b": b, "join": sorted(join(cat, a, b))}
            for a in cat.morphisms()
            for b in cat.morphisms()
            if a <= b and cat.rng(a) == cat.rng(b)
        ]
    return report


def cmd_skew(args):
    from .skew import skew_product

    cat = _load_category(args)
    eta, _ = _load_cocycle(args, cat)
    group = eta.target
    sp = skew_product(cat, eta, group)
    if args.dot:
        Path(args.dot).write_text(io.export_dot(sp.category, "skew"), encoding="utf-8")
    return io.category_to_json(sp.category)


def _load_action(args):
    cat = _load_category(args)
    return io.parse_action(args.action, cat)


def cmd_quotient(args):
    from .actions import quotient_category

    qr = quotient_category(_load_action(args))
    return {
        "quotient": io.category_to_json(qr.quotient),
        "orbit_of": {str(m): qr.orbit_of[m] for m in sorted(qr.orbit_of)},
        "section": dict(sorted(qr.section.items())),
    }


def cmd_gross_tucker(args):
    from .actions import gross_tucker

    gt = gross_tucker(_load_action(args))
    return {
        "quotient": io.category_to_json(gt.quotient.quotient),
        "cocycle": io.cocycle_to_json(gt.cocycle),
        "rho": {"vmap": dict(sorted(gt.rho.vmap.items())), "mmap": dict(sorted(gt.rho.mmap.items()))},
        "verified": True,
    }


def _pair_report(product, label, extra=None) -> dict:
    out = {"product": _category_summary(product.category, label)}
    out.update(extra or {})
    return out


def cmd_zs(args):
    from .zappa import zs_label, zs_product

    system = io.parse_category_system(args.system)
    product = zs_product(system)
    return _pair_report(product, zs_label(system.group))


def cmd_ep(args):
    from .zappa import zs_product

    data = io.read_json(args.system)
    if args.budget is not None:
        data["budget"] = args.budget
    ep = io.parse_exel_pardo(data, Path(args.system).parent)
    product = zs_product(ep.category_system())
    return _pair_report(
        product,
        _path_pair_label(ep.group),
        {"budget": ep.budget, "window_morphisms": len(product.category.morphisms())},
    )


def _path_pair_label(group):
    def label(m):
        a, h = m
        path = ".".join(a) if isinstance(a, tuple) else str(a)
        return f"{path}⋊{group.name_of(h)}"

    return label


def cmd_katsura(args):
    from .zappa import katsura_system, zs_product

    A = json.loads(args.A)
    B = json.loads(args.B)
    sys.stderr.write(f"warning: Z acts through the finite surrogate Z/{args.modulus}\n")
    ep = katsura_system(A, B, args.modulus, args.budget)
    product = zs_product(ep.category_system())
    return _pair_report(
        product,
        _path_pair_label(ep.group),
        {"modulus": args.modulus, "budget": ep.budget, "window_morphisms": len(product.category.morphisms())},
    )


def _presentation(p) -> dict:
    return {**p.to_json(), "rendered": p.render()}


def cmd_pi1(args):
    from .groupoid import fundamental_group

    cat = _load_category(args)
    fg = fundamental_group(cat, args.root)
    return {"root": fg.root, "presentation": _presentation(fg.presentation), "tree_edges": sorted(fg.tree_edges)}


def cmd_universal_group(args):
    from .fpgroups import fp_invariants
    from .groupoid import universal_group

    cat = _load_category(args)
    ug = universal_group(cat, args.mode)
    out = {"mode": ug.mode, "presentation": _presentation(ug.presentation)}
    if args.invariants:
        out["invariants"] = fp_invariants(ug.presentation, args.hom_bound).to_json()
    return out


def cmd_connectivity(args):
    from .groupoid import skew_connectivity_report

    cat = _load_category(args)
    eta, _ = _load_cocycle(args, cat)
    return skew_connectivity_report(cat, eta)


def cmd_seven(args):
    from .groupoid import seven_criteria_check

    cat = _load_category(args)
    psi, _ = _load_cocycle(args, cat)
    return seven_criteria_check(cat, psi)


def cmd_covering(args):
    from .covering import CocycleAction, deck_transformations, is_covering, orbits_and_stabilizers

    if args.action == "orbits":
        if not (args.category and args.cocycle):
            raise ParseError("covering orbits needs --category and --cocycle", None)
        cat = _load_category(args)
        eta, _ = _load_cocycle(args, cat)
        ca = CocycleAction(cat, eta)
        orbits, stab = orbits_and_stabilizers(ca)
        G = eta.target
        return {
            "orbits": [[[str(v), G.name_of(g)] for v, g in o] for o in orbits],
            "transitive": len(orbits) == 1,
            "stabilizers": {f"{v}:{G.name_of(g)}": sorted(s) for (v, g), s in sorted(stab.items(), key=lambda kv: (str(kv[0][0]), kv[0][1]))},
        }
    p = _load_projection(args)
    if args.action == "check":
        ok, witness = is_covering(p)
        return {"covering": ok, "witness": witness}
    deck = deck_transformations(p, args.limit)
    return {
        "order": deck.order,
        "elements": [dict(sorted(e.items())) for e in deck.elements],
        "table": deck.table,
    }


def _load_projection(args):
    """A functor file, or the projection of the skew product given by --category/--cocycle."""
    if args.functor:
        return io.parse_functor(args.functor)
    if not (args.category and args.cocycle):
        raise ParseError("need --functor, or --category with --cocycle", None)
    from .skew import skew_product

    cat = _load_category(args)
    eta, _ = _load_cocycle(args, cat)
    return skew_product(cat, eta, eta.target).projection


def cmd_suite(args):
    from .suite import RunConfig, render_report, run_suite

    cfg = RunConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.fixtures = args.fixtures
    cfg.suites = tuple(args.only or ())
    cfg.mutants = tuple(args.mutant or ())
    cfg.max_morphisms = args.max_morphisms
    cfg.max_group_order = args.max_group_order
    cfg.hom_bound = args.hom_bound
    cfg.out_dir = args.out_dir
    report = run_suite(cfg)
    args._exit = 0 if report["all_passed"] or args.allow_failures else 1
    return render_report(report)


def cmd_export_dot(args):
    if args.functor or args.cocycle:
        return io.export_dot(_load_projection(args), args.name)
    return io.export_dot(_load_category(args), args.name)


# --- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from . import mutation
    from .fpgroups import DEFAULT_HOM_BOUND
    from .suite import SUITES

    parser = argparse.ArgumentParser(prog="skewcat", description="Finite left cancellative categories, skew products and their invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, category=True, cocycle=False, out=True):
        p = sub.add_parser(name, help=help_text)
        if category:
            p.add_argument("--category", required=category == "required", help="category JSON file")
        if cocycle:
            p.add_argument("--cocycle", required=cocycle == "required", help="cocycle JSON file")
            p.add_argument("--group", help="group JSON file overriding the cocycle target")
        if out:
            p.add_argument("--out", help="write the result here instead of stdout")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "validate a category (and optionally a cocycle)", "required", True)
    p = add("align", cmd_align, "joins and exhaustive-set verdicts", "required")
    p.add_argument("--pair", nargs=2, metavar=("A", "B"))
    p.add_argument("--family", nargs="+")
    p.add_argument("--exhaustive", nargs="+", metavar="V_THEN_FAMILY")
    p = add("skew", cmd_skew, "skew product tables", "required", "required")
    p.add_argument("--dot", help="also write a DOT rendering")
    for name, fn, text in (("quotient", cmd_quotient, "quotient by a free action"), ("gross-tucker", cmd_gross_tucker, "reconstruct D as a skew product of D/G")):
        p = add(name, fn, text, "required")
        p.add_argument("--action", required=True, help="action JSON file")
    p = add("zs", cmd_zs, "Zappa-Szép product of an explicit category system", category=False)
    p.add_argument("--system", required=True)
    p = add("ep", cmd_ep, "Zappa-Szép product of an Exel-Pardo system (graded window)", category=False)
    p.add_argument("--system", required=True)
    p.add_argument("--budget", type=int)
    p = add("katsura", cmd_katsura, "Katsura system from integer matrices", category=False)
    p.add_argument("--A", required=True, help="JSON matrix, e.g. [[2]]")
    p.add_argument("--B", required=True, help="JSON matrix")
    p.add_argument("--modulus", type=int, required=True, help="finite quotient Z/m standing in for Z")
    p.add_argument("--budget", type=int, default=3)
    p = add("pi1", cmd_pi1, "fundamental group presentation", "required")
    p.add_argument("--root")
    p = add("universal-group", cmd_universal_group, "universal group presentation", "required")
    p.add_argument("--mode", choices=("raw", "connected", "components"), default="raw")
    p.add_argument("--invariants", action="store_true", help="also report abelianization and hom counts")
    p.add_argument("--hom-bound", type=int, default=DEFAULT_HOM_BOUND)
    add("connectivity", cmd_connectivity, "skew product connectivity two ways", "required", "required")
    add("seven", cmd_seven, "the seven connectedness conditions on a groupoid", "required", "required")
    p = add("covering", cmd_covering, "covering check, deck group, cocycle-action orbits", True, True)
    p.add_argument("action", choices=("check", "deck", "orbits"))
    p.add_argument("--functor", help="functor JSON file {domain, codomain, vmap, mmap}")
    p.add_argument("--limit", type=int, default=60)
    p = add("suite", cmd_suite, "run the seeded property suites", category=False)
    p.add_argument("--seed", type=int)
    p.add_argument("--fixtures", type=int, help="fixtures per suite (overrides defaults)")
    p.add_argument("--only", action="append", choices=sorted(SUITES))
    p.add_argument("--mutant", action="append", choices=sorted(mutation.KNOWN))
    p.add_argument("--max-morphisms", type=int, default=40)
    p.add_argument("--max-group-order", type=int, default=8)
    p.add_argument("--hom-bound", type=int, default=DEFAULT_HOM_BOUND)
    p.add_argument("--out-dir", help="also write report.json here")
    p.add_argument("--allow-failures", action="store_true", help="exit 0 even when a suite fails")
    p = add("export-dot", cmd_export_dot, "DOT rendering of a category or covering", True, True)
    p.add_argument("--functor")
    p.add_argument("--name", default="C")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "category", None) is None and args.command in ("export-dot",) and not args.functor:
            raise ParseError("export-dot needs --category or --functor", None)
        result = args.func(args)
        _emit(args, result)
    except SkewcatError as exc:
        sys.stderr.write(io.dumps(io.error_report(exc)) + "\n")
        return 1
    except (OSError, ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(io.dumps(io.error_report(exc)) + "\n")
        return 1
    return getattr(args, "_exit", 0)


if __name__ == "__main__":
    sys.exit(main())

"""Seeded property suites and a deterministic report.

Every suite draws its fixtures from a ``random.Random`` seeded by the run seed
and a family name, so two runs with the same :class:`RunConfig` produce the
same fixtures and byte-identical reports.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from . import fixtures as fx
from . import mutation
from .errors import SkewcatError

DEFAULT_SEED = 20240917
SEED_ENV = "SKEWCAT_SEED"

DEFAULT_COUNTS = {
    "alignment.join-oracle": 100,
    "cat-core.roundtrip": 100,
    "skew.join-formula": 200,
    "covering.skew-projection": 200,
    "covering.transformation": 200,
    "covering.deck": 200,
    "actions.gross-tucker": 100,
    "actions.ideal-intersection": 100,
    "actions.freeness-detection": 50,
    "groupoid.connectivity-corollary": 200,
    "groupoid.seven-criteria": 100,
    "groupoid.universal-group": 100,
    "groupoid.retraction-tree": 50,
    "zappa.products": 50,
    "zappa.exchange": 1,
}


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


@dataclass
class RunConfig:
    seed: int = field(default_factory=default_seed)
    max_morphisms: int = 40
    max_group_order: int = 8
    max_action_morphisms: int = 60
    max_action_group: int = 6
    max_groupoid_vertices: int = 8
    max_isotropy: int = 6
    max_deck_morphisms: int = 60
    hom_bound: int = 2_000_000
    fixtures: int | None = None  # overrides every count when set
    counts: dict = field(default_factory=dict)
    suites: tuple = ()  # empty means all
    mutants: tuple = ()
    out_dir: str | None = None

    def count(self, suite_id: str) -> int:
        if self.fixtures is not None:
            return self.fixtures
        return self.counts.get(suite_id, DEFAULT_COUNTS[suite_id])


@dataclass
class SuiteResult:
    id: str
    invariant: str
    fixtures: int = 0
    checks: int = 0
    failures: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, fixture, detail):
        self.failures += 1
        if len(self.counterexamples) < 5:
            self.counterexamples.append({"fixture": fixture, "detail": detail})

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _rng(cfg: RunConfig, family: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{family}")


def _guard(result: SuiteResult, i, fn):
    try:
        fn()
    except SkewcatError as exc:
        result.fail(i, exc.to_dict())
    except (AssertionError, KeyError, ValueError, TypeError) as exc:
        result.fail(i, {"error": type(exc).__name__, "message": str(exc)})


# --- fixture streams ----------------------------------------------------------------

def skew_fixtures(cfg: RunConfig, n: int):
    """Random LC category, group of order <= max, random cocycle."""
    from .groups import small_groups

    rng = _rng(cfg, "skew")
    groups = small_groups(cfg.max_group_order)
    for i in range(n):
        cat = fx.random_lc_category(rng, cfg.max_morphisms)
        g = rng.choice(groups)
        yield i, cat, g, fx.random_cocycle(cat, g, rng)


def action_fixtures(cfg: RunConfig, n: int):
    rng = _rng(cfg, "actions")
    for i in range(n):
        d, g, act = fx.random_free_action(rng, cfg.max_action_morphisms, cfg.max_action_group)
        yield i, d, g, act


def connected_fixtures(cfg: RunConfig, n: int):
    """Connected LC category with a nondegenerate cocycle into a nontrivial group."""
    from .groups import small_groups

    rng = _rng(cfg, "connected")
    groups = [g for g in small_groups(cfg.max_group_order) if g.order > 1]
    produced = 0
    while produced < n:
        cat = fx.random_connected_lc_category(rng, cfg.max_morphisms)
        g = rng.choice(groups)
        eta = fx.random_nondegenerate_cocycle(cat, g, rng)
        if eta is None:
            continue
        yield produced, cat, g, eta
        produced += 1


def groupoid_fixtures(cfg: RunConfig, n: int):
    """Connected ``pair(k) x K`` groupoid (opaque ids half the time) with a nondegenerate cocycle."""
    from .groups import small_groups

    rng = _rng(cfg, "groupoids")
    isotropy = small_groups(cfg.max_isotropy)
    targets = small_groups(cfg.max_group_order)
    produced = 0
    while produced < n:
        k = rng.randint(1, cfg.max_groupoid_vertices)
        iso = rng.choice(isotropy)
        h = rng.choice(targets)
        if k * k * iso.order * h.order > 1200:
            continue
        cat = fx.pair_group_groupoid([f"{j}" for j in range(k)], iso, tag="w")
        if rng.random() < 0.5:
            cat = fx.opaque(cat, rng)
        psi = None
        for _ in range(20):
            cand = fx.random_groupoid_cocycle(cat, h, rng)
            if cand.is_nondegenerate():
                psi = cand
                break
        if psi is None:
            continue
        yield produced, cat, h, psi
        produced += 1


# --- suites ---------------------------------------------------------------------------

def suite_join_oracle(cfg, n):
    from .alignment import ideal_union, is_independent, join

    res = SuiteResult("alignment.join-oracle", "ideal union of join(a, b) equals aC & bC, and the join is independent")
    rng = _rng(cfg, "align")
    for i in range(n):
        cat = fx.random_lc_category(rng, cfg.max_morphisms)
        res.fixtures += 1

        def run():
            ideals = {}
            for a in cat.morphisms():
                ideals[a] = {cat.compose(a, g) for g in cat.with_range(cat.src(a))}
            for a in cat.morphisms():
                for b in cat.with_range(cat.rng(a)):
                    j = join(cat, a, b)
                    res.checks += 1
                    if ideal_union(cat, j) != ideals[a] & ideals[b]:
                        raise AssertionError(f"join({a}, {b}) ideal mismatch")
                    if not is_independent(cat, j)[0]:
                        raise AssertionError(f"join({a}, {b}) not independent")

        _guard(res, i, run)
    return res


def suite_roundtrip(cfg, n):
    from .category import category_from_spec, invertibles, equivalence_classes, inverse_of

    res = SuiteResult("cat-core.roundtrip", "serialise/validate round trip; ~ is an equivalence with unique inverses")
    rng = _rng(cfg, "roundtrip")
    for i in range(n):
        cat = fx.random_lc_category(rng, cfg.max_morphisms)
        res.fixtures += 1

        def run():
            spec = cat.to_spec()
            again = category_from_spec(spec)
            assert json.dumps(again.to_spec()) == json.dumps(spec), "round trip changed the tables"
            inv = invertibles(cat)
            for g in inv:
                lefts = [d for d in cat.hom(cat.src(g), cat.rng(g)) if cat.compose(d, g) == cat.identity(cat.src(g))]
                assert len(lefts) == 1 and lefts[0] == inverse_of(cat, g), f"inverse of {g} not unique"
            classes = equivalence_classes(cat)
            seen = set()
            for cls in classes:
                assert not (seen & cls), "classes overlap"
                seen |= cls
                for a in cls:
                    for b in cls:
                        assert any(cat.compose(b, u) == a for u in inv if cat.rng(u) == cat.src(b)), f"{a} !~ {b}"
            assert seen == set(cat.morphisms())
            res.checks += 1

        _guard(res, i, run)
    return res


def suite_skew_join(cfg, n):
    from .category import is_left_cancellative
    from .skew import skew_join_check, skew_product

    res = SuiteResult("skew.join-formula", "skew products are LC categories and the skew join formula matches brute force on all pairs")
    for i, cat, g, eta in skew_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            sp = skew_product(cat, eta, g)
            ok, w = is_left_cancellative(sp.category)
            assert ok, f"skew product not left cancellative: {w}"
            ms = sp.category.morphisms()
            for p in ms:
                for q in ms:
                    skew_join_check(sp, p, q)
                    res.checks += 1

        _guard(res, i, run)
    return res


def suite_skew_projection(cfg, n):
    from .covering import is_covering
    from .skew import skew_product

    res = SuiteResult("covering.skew-projection", "every skew projection is a covering")
    for i, cat, g, eta in skew_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            ok, w = is_covering(skew_product(cat, eta, g).projection)
            res.checks += 1
            assert ok, f"projection is not a covering: {w}"

        _guard(res, i, run)
    return res


def suite_transformation(cfg, n):
    from .covering import CocycleAction, is_transitive, skew_transformation_iso
    from .category import connected_components
    from .skew import skew_product

    res = SuiteResult("covering.transformation", "C * (C0 x G) is isomorphic to the skew product; transitivity iff connected")
    for i, cat, g, eta in skew_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            sp = skew_product(cat, eta, g)
            skew_transformation_iso(sp)
            res.checks += 1
            from .category import is_connected

            if is_connected(cat):
                trans = is_transitive(CocycleAction(cat, eta))
                assert trans == (len(connected_components(sp.category)) == 1), "transitivity disagrees with connectivity"
                res.checks += 1

        _guard(res, i, run)
    return res


def deck_fixtures(cfg: RunConfig, n: int):
    """Small connected bases with nondegenerate cocycles, so skew products are often connected."""
    from .groups import small_groups

    rng = _rng(cfg, "deck")
    groups = [g for g in small_groups(4) if g.order > 1]
    produced = 0
    while produced < n:
        cat = fx.random_connected_lc_category(rng, 15)
        g = rng.choice(groups)
        eta = fx.random_nondegenerate_cocycle(cat, g, rng)
        if eta is None:
            continue
        yield f"deck-{produced}", cat, g, eta
        produced += 1


def suite_deck(cfg, n):
    from .category import is_connected
    from .covering import deck_transformations, translations_embed
    from .skew import skew_product

    res = SuiteResult("covering.deck", "right translations embed into the deck group of connected skew coverings with at most 60 morphisms")
    extra = deck_fixtures(cfg, max(1, n // 4))
    for i, cat, g, eta in itertools.chain(skew_fixtures(cfg, n), extra):
        if len(cat) * g.order > cfg.max_deck_morphisms:
            continue
        try:
            sp = skew_product(cat, eta, g)
        except SkewcatError as exc:
            res.fixtures += 1
            res.fail(i, exc.to_dict())
            continue
        if not is_connected(sp.category):
            continue
        res.fixtures += 1

        def run():
            deck = deck_transformations(sp.projection, cfg.max_deck_morphisms)
            res.checks += 1
            assert translations_embed(sp, deck), "right translations do not embed"

        _guard(res, i, run)
    return res


def suite_gross_tucker(cfg, n):
    from .actions import gross_tucker, skew_quotient_iso, validate_free_action
    from .category import compose_functors, invert_functor, is_isomorphism, is_left_cancellative

    res = SuiteResult("actions.gross-tucker", "rho is an equivariant isomorphism; both round trips return isomorphic categories")
    for i, d, g, act in action_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            action, free, w = validate_free_action(g, d, act)
            assert free, f"fixture action not free: {w}"
            gt = gross_tucker(action)
            res.checks += 1
            q = gt.quotient.quotient
            if is_left_cancellative(d)[0]:
                assert is_left_cancellative(q)[0], "quotient lost left cancellativity"
            iso = skew_quotient_iso(gt.skew)
            assert iso.codomain is q
            # a different vertex section gives an isomorphic skew product
            alt = {w: max(v for v in d.vertices if gt.quotient.qmap.vmap[v] == w) for w in q.vertices}
            gt2 = gross_tucker(action, section=alt)
            across = compose_functors(invert_functor(gt2.rho), gt.rho)
            assert is_isomorphism(across), "section choice changed the skew product"
            res.checks += 3

        _guard(res, i, run)
    return res


def suite_ideal_intersection(cfg, n):
    from .actions import quotient_category, validate_free_action

    res = SuiteResult("actions.ideal-intersection", "quotient ideal intersections equal the union of pushed-forward intersections")
    for i, d, g, act in action_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            from .actions import quotient_ideal_intersection

            action, _, _ = validate_free_action(g, d, act)
            qr = quotient_category(action)
            for lam in d.morphisms():
                for mu in d.morphisms():
                    quotient_ideal_intersection(qr, lam, mu)
                    res.checks += 1

        _guard(res, i, run)
    return res


def suite_freeness(cfg, n):
    from .actions import gross_tucker, validate_free_action
    from .errors import NotFree
    from .groups import small_groups
    from .zappa import trivial_action

    res = SuiteResult("actions.freeness-detection", "trivial actions of nontrivial groups are reported non-free and rejected by the quotient")
    rng = _rng(cfg, "freeness")
    groups = [g for g in small_groups(cfg.max_action_group) if g.order > 1]
    for i in range(n):
        cat = fx.random_lc_category(rng, cfg.max_morphisms)
        g = rng.choice(groups)
        res.fixtures += 1

        def run():
            act = trivial_action(cat, g)
            action, free, w = validate_free_action(g, cat, act)
            assert not free, "trivial action reported free"
            try:
                gross_tucker(action)
            except NotFree:
                pass
            else:
                raise AssertionError("gross_tucker accepted a non-free action")
            res.checks += 1

        _guard(res, i, run)
    return res


def suite_corollary(cfg, n):
    from .groupoid import skew_connectivity_report

    res = SuiteResult("groupoid.connectivity-corollary", "union-find connectivity of the skew product equals psi(pi(C, x)) == G")
    for i, cat, g, eta in connected_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            rep = skew_connectivity_report(cat, eta)
            res.checks += 1
            assert rep["direct"] == rep["via_pi"], rep

        _guard(res, i, run)
    return res


def suite_seven(cfg, n):
    from .groupoid import seven_criteria_check

    res = SuiteResult("groupoid.seven-criteria", "the seven connectedness conditions agree; the dihedral surrogate is all false")
    if n:
        res.fixtures += 1

        def named():
            from .category import connected_components
            from .groupoid import _image_of_isotropy
            from .skew import skew_product

            cat, psi = fx.dihedral_surrogate()
            target = psi.target
            assert psi.image() == set(target.elements), "psi is not surjective"
            iso_image = _image_of_isotropy(cat, psi, cat.vertices[0])
            assert target.order == 2 * len(iso_image), f"isotropy image has order {len(iso_image)}"
            comps = connected_components(skew_product(cat, psi, target).category)
            assert len(comps) == 2, f"skew product has {len(comps)} components"
            v = seven_criteria_check(cat, psi)
            assert v["agree"] and not v["1_skew_connected"], v
            res.checks += 1

        _guard(res, "dihedral-surrogate", named)
    for i, cat, h, psi in groupoid_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            v = seven_criteria_check(cat, psi)
            res.checks += 1
            assert v["agree"], v

        _guard(res, i, run)
    return res


def suite_universal(cfg, n):
    from .fpgroups import fp_invariants
    from .groupoid import universal_group

    res = SuiteResult("groupoid.universal-group", "raw and F(S)*pi presentations have equal invariants; cocycles factor through j")
    if n:
        for name, cat, expected in named_universal_cases():
            res.fixtures += 1

            def named(cat=cat, expected=expected):
                for mode in ("raw", "connected"):
                    got = fp_invariants(universal_group(cat, mode).presentation, cfg.hom_bound)
                    exp = fp_invariants(expected, cfg.hom_bound)
                    assert got == exp, f"{mode}: {got} != {exp}"
                    res.checks += 1

            _guard(res, name, named)
    for i, cat, g, eta in connected_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            raw = universal_group(cat, "raw")
            conn = universal_group(cat, "connected")
            a = fp_invariants(raw.presentation, cfg.hom_bound)
            b = fp_invariants(conn.presentation, cfg.hom_bound)
            assert a == b, f"invariants differ: {a} vs {b}"
            raw.factor(eta)
            conn.factor(eta)
            res.checks += 3

        _guard(res, i, run)
    return res


def named_universal_cases():
    """``(name, category, reference presentation)`` triples with known universal groups."""
    from .fpgroups import FpGroup, free_group
    from .groups import cyclic
    from .paths import PathCategory, two_loops

    return [
        ("pair-groupoid", fx.pair_groupoid(), free_group(1)),
        ("Z2-as-category", fx.group_category(cyclic(2)), FpGroup(["g"], [(("g", 1), ("g", 1))])),
        ("two-loop-paths", PathCategory(two_loops(), 3), free_group(2)),
    ]


def suite_retraction(cfg, n):
    from .groupoid import as_groupoid, decomposition_check, maximal_tree, retraction_from_tree, tree_from_retraction

    res = SuiteResult("groupoid.retraction-tree", "tree -> retraction -> tree is the identity; theta is an isomorphism")
    for i, cat, h, psi in groupoid_fixtures(cfg, n):
        res.fixtures += 1

        def run():
            g = as_groupoid(cat)
            for x in cat.vertices:
                t = maximal_tree(g, x)
                eta = retraction_from_tree(g, t)
                for loop in cat.hom(x, x):
                    assert eta.target.name_of(eta(loop)) == loop, "retraction is not the identity on the isotropy"
                assert tree_from_retraction(g, eta, x).t == t.t, "tree not recovered"
                decomposition_check(g, t)
                res.checks += 1

        _guard(res, i, run)
    return res


def suite_zappa(cfg, n):
    from .actions import validate_action
    from .groups import small_groups
    from .skew import semidirect_product
    from .zappa import direct_product, semidirect_direct, trivial_action

    res = SuiteResult("zappa.products", "trivial-phi Zappa-Szép products equal semidirect products; trivial actions give direct products")
    fixtures = action_fixtures(cfg, n)
    rng = _rng(cfg, "zappa")
    groups = small_groups(4)
    for i, d, g, act in fixtures:
        res.fixtures += 1

        def run():
            action = validate_action(g, d, act)
            zs = semidirect_product(d, action)
            sd = semidirect_direct(d, g, lambda h, a: action(h, a))
            assert zs.category.to_spec() == sd.category.to_spec(), "trivial-phi product differs from the semidirect product"
            k = rng.choice(groups)
            small = fx.random_lc_category(rng, 20)
            triv = validate_action(k, small, trivial_action(small, k))
            assert semidirect_product(small, triv).category.to_spec() == direct_product(small, k).category.to_spec(), "trivial action is not the direct product"
            res.checks += 2

        _guard(res, i, run)
    return res


def suite_exchange(cfg, n):
    from .groups import cyclic
    from .zappa import exchange_isomorphism_check, path_cocycle, promote_invariant_cocycle, two_loop_swap

    res = SuiteResult("zappa.exchange", "the exchange map is a window-exhaustive isomorphism on the two-loop system")
    for i in range(min(n, 1)):
        res.fixtures += 1

        def run():
            ep = two_loop_swap(3)
            system = ep.category_system()
            z2 = cyclic(2)
            psi = path_cocycle(ep.path_category(), z2, {"a": 1, "b": 1})
            eta, zs = promote_invariant_cocycle(system, psi)
            for m in zs.category.morphisms():
                path = zs.pair_of(m)[0]
                length = len(path) if isinstance(path, tuple) else 0
                assert eta(m) == length % 2, f"eta_f({m!r}) is not the path length mod 2"
            exchange_isomorphism_check(system, psi, z2)
            res.checks += 1

        _guard(res, i, run)
    return res


SUITES: dict[str, Callable] = {
    "actions.freeness-detection": suite_freeness,
    "actions.gross-tucker": suite_gross_tucker,
    "actions.ideal-intersection": suite_ideal_intersection,
    "alignment.join-oracle": suite_join_oracle,
    "cat-core.roundtrip": suite_roundtrip,
    "covering.deck": suite_deck,
    "covering.skew-projection": suite_skew_projection,
    "covering.transformation": suite_transformation,
    "groupoid.connectivity-corollary": suite_corollary,
    "groupoid.retraction-tree": suite_retraction,
    "groupoid.seven-criteria": suite_seven,
    "groupoid.universal-group": suite_universal,
    "skew.join-formula": suite_skew_join,
    "zappa.exchange": suite_exchange,
    "zappa.products": suite_zappa,
}


def run_suite(cfg: RunConfig) -> dict:
    """Run the selected suites; failures are data, never exceptions."""
    selected = sorted(cfg.suites or SUITES)
    results = []
    with mutation.active(*cfg.mutants):
        for sid in selected:
            n = cfg.count(sid)
            if n <= 0:
                continue
            try:
                results.append(SUITES[sid](cfg, n))
            except SkewcatError as exc:
                crashed = SuiteResult(sid, "suite aborted before completing")
                crashed.fail(None, exc.to_dict())
                results.append(crashed)
    report = {
        "seed": cfg.seed,
        "mutants": sorted(cfg.mutants),
        "suites": [r.to_json() for r in sorted(results, key=lambda r: r.id)],
    }
    report["all_passed"] = all(r.passed for r in results)
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(render_report(report), encoding="utf-8")
    return report


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"

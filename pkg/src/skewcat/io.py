"""JSON formats for categories, groups, cocycles, actions and graph systems; DOT export.

Formats::

    category  {"vertices": [..], "morphisms": [{"id","src","rng"}], "compose": [[f, g, fg]],
               "identities": {vertex: id}?}
    group     {"kind": "table", "elements": [..], "mul": [[..]]} | {"kind": "free", "rank": n}
              | {"kind": "presented", "generators": [..], "relators": [..]}
              | {"kind": "integers"} | {"kind": "named", "name": "Z4" | "D4" | "S3" | ...}
    cocycle   {"target": group, "values": {morphism: element}}
    action    {"group": group, "act": {element: {morphism: morphism}}}
    graph     {"vertices": [..], "edges": [{"id","src","rng"}]}
    system    {"graph": graph, "group": group, "vertex_act"?: .., "edge_act": .., "phi": .., "budget"?: n}

Group references may be inline objects or paths to JSON files.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .category import Category, CatFunctor, category_from_spec, validate_cocycle
from .errors import ParseError, SkewcatError
from .fpgroups import FpGroup
from .groups import FiniteGroup, FreeGroup, IntegerGroup, cyclic, dihedral, direct_product, klein, quaternion, symmetric3, trivial
from .paths import Graph


def read_json(path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}", str(p)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}", {"file": str(p), "line": exc.lineno}) from None


def _require(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{what} is missing the field {key!r}", key)
    return data[key]


def _resolve(ref, base_dir=None):
    if isinstance(ref, (str, Path)):
        path = Path(ref)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return read_json(path)
    return ref


# --- groups ----------------------------------------------------------------------

_NAMED = {
    "1": trivial,
    "Z2xZ2": klein,
    "V4": klein,
    "S3": symmetric3,
    "Q8": quaternion,
}


def named_group(name: str) -> FiniteGroup:
    if name in _NAMED:
        return _NAMED[name]()
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)", name)
    if m:
        return dihedral(int(m.group(1)))
    m = re.fullmatch(r"Z(\d+)xZ(\d+)", name)
    if m:
        return direct_product(cyclic(int(m.group(1))), cyclic(int(m.group(2))))
    raise ParseError(f"unknown named group {name!r}", name)


def parse_group(data, base_dir=None):
    data = _resolve(data, base_dir)
    kind = _require(data, "kind", "group")
    if kind == "table":
        return FiniteGroup.from_table(_require(data, "elements", "group"), _require(data, "mul", "group"), data.get("label", ""))
    if kind == "free":
        rank = int(_require(data, "rank", "group"))
        return FreeGroup(data.get("generators") or [f"x{i}" for i in range(rank)])
    if kind == "presented":
        return FpGroup.from_json(data)
    if kind == "integers":
        return IntegerGroup()
    if kind == "named":
        return named_group(str(_require(data, "name", "group")))
    raise ParseError(f"unknown group kind {kind!r}", kind)


def group_to_json(group) -> dict:
    if isinstance(group, FiniteGroup):
        return {
            "kind": "table",
            "label": group.label,
            "elements": list(group.names),
            "mul": [[group.names[x] for x in row] for row in group.table],
        }
    if isinstance(group, FreeGroup):
        return {"kind": "free", "rank": len(group.alphabet), "generators": list(group.alphabet)}
    if isinstance(group, IntegerGroup):
        return {"kind": "integers"}
    if isinstance(group, FpGroup):
        return {"kind": "presented", **group.to_json()}
    raise TypeError(f"cannot serialise {group!r}")


def element_to_json(group, value):
    if isinstance(group, FiniteGroup):
        return group.name_of(value)
    if isinstance(group, FreeGroup):
        return [[x, e] for x, e in value]
    return value


# --- categories, cocycles, actions --------------------------------------------------

def parse_category(data, base_dir=None) -> Category:
    data = _resolve(data, base_dir)
    for key in ("vertices", "morphisms", "compose"):
        _require(data, key, "category")
    try:
        morphisms = [{"id": d["id"], "src": d["src"], "rng": d["rng"]} for d in data["morphisms"]]
        compose = [tuple(t) for t in data["compose"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed category entry: {exc}", None) from None
    for t in compose:
        if len(t) != 3:
            raise ParseError("composition entries are [f, g, fg] triples", list(t))
    return category_from_spec({"vertices": data["vertices"], "morphisms": morphisms, "compose": compose, "identities": data.get("identities")})


def category_to_json(cat: Category) -> dict:
    return cat.to_spec()


def parse_cocycle(data, cat, base_dir=None, group=None):
    data = _resolve(data, base_dir)
    target = group if group is not None else parse_group(_require(data, "target", "cocycle"), base_dir)
    values = _require(data, "values", "cocycle")
    if isinstance(target, FreeGroup):
        values = {m: target.element(v) for m, v in values.items()}
    return validate_cocycle(cat, target, values)


def cocycle_to_json(eta) -> dict:
    return {
        "target": group_to_json(eta.target),
        "values": {str(m): element_to_json(eta.target, eta(m)) for m in eta.category.morphisms()},
    }


def parse_action(data, cat, base_dir=None):
    from .actions import validate_action

    data = _resolve(data, base_dir)
    group = parse_group(_require(data, "group", "action"), base_dir)
    return validate_action(group, cat, _require(data, "act", "action"))


def parse_graph(data, base_dir=None) -> Graph:
    data = _resolve(data, base_dir)
    return Graph.build(_require(data, "vertices", "graph"), _require(data, "edges", "graph"))


def parse_exel_pardo(data, base_dir=None):
    from .zappa import build_exel_pardo

    data = _resolve(data, base_dir)
    graph = parse_graph(_require(data, "graph", "system"), base_dir)
    group = parse_group(_require(data, "group", "system"), base_dir)
    return build_exel_pardo(
        graph,
        group,
        data.get("vertex_act"),
        _require(data, "edge_act", "system"),
        _require(data, "phi", "system"),
        int(data.get("budget", 3)),
    )


def parse_category_system(data, base_dir=None):
    from .zappa import explicit_table_system

    data = _resolve(data, base_dir)
    cat = parse_category(_require(data, "category", "system"), base_dir)
    group = parse_group(_require(data, "group", "system"), base_dir)
    return explicit_table_system(cat, group, _require(data, "act", "system"), _require(data, "phi", "system"))


def parse_functor(data, base_dir=None) -> CatFunctor:
    data = _resolve(data, base_dir)
    dom = parse_category(_require(data, "domain", "functor"), base_dir)
    cod = parse_category(_require(data, "codomain", "functor"), base_dir)
    return CatFunctor(dom, cod, dict(_require(data, "vmap", "functor")), dict(_require(data, "mmap", "functor")))


def error_report(exc: Exception) -> dict:
    if isinstance(exc, SkewcatError):
        return exc.to_dict()
    return {"error": type(exc).__name__, "message": str(exc)}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, default=str)


# --- DOT ----------------------------------------------------------------------------

_PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_body(cat, prefix="", colors=None, indent="  ") -> list[str]:
    lines = []
    for v in sorted(cat.vertices, key=str):
        attrs = f' [label={_q(v)}'
        if colors:
            attrs += f', style=filled, fillcolor="{colors[v]}"'
        lines.append(f"{indent}{_q(prefix + str(v))}{attrs}];")
    for m in sorted(cat.non_identities(), key=str):
        lines.append(f"{indent}{_q(prefix + str(cat.src(m)))} -> {_q(prefix + str(cat.rng(m)))} [label={_q(m)}];")
    return lines


def export_dot(obj, name: str = "C") -> str:
    """Vertices as nodes and non-identity morphisms as labelled edges ``s -> r``.

    A :class:`CatFunctor` (a covering) renders as two clusters, total space
    nodes coloured by the base vertex they lie over.
    """
    if isinstance(obj, CatFunctor):
        base_vs = sorted(obj.codomain.vertices, key=str)
        color = {v: _PALETTE[i % len(_PALETTE)] for i, v in enumerate(base_vs)}
        lines = [f"digraph {_q(name)} {{", "  subgraph cluster_total {", '    label="total";']
        lines += _dot_body(obj.domain, "D:", {v: color[obj.vmap[v]] for v in obj.domain.vertices}, "    ")
        lines += ["  }", "  subgraph cluster_base {", '    label="base";']
        lines += _dot_body(obj.codomain, "C:", color, "    ")
        lines += ["  }", "}"]
        return "\n".join(lines) + "\n"
    cat = getattr(obj, "category", obj)
    lines = [f"digraph {_q(name)} {{"] + _dot_body(cat) + ["}"]
    return "\n".join(lines) + "\n"

"""Directed graphs, their path categories, and the graded-view machinery.

A graded view answers ``compose``/``src``/``rng`` exactly for the whole
(possibly infinite) category, while ``morphisms()`` lists only the window of
morphisms of degree at most ``budget``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .category import CategoryBase
from .errors import NotComposable, ValidationError


class GradedView(CategoryBase):
    """Base class: subclasses provide ``_enumerate()`` and ``degree``."""

    explicit = False

    @cached_property
    def _window(self) -> tuple:
        return tuple(self._enumerate())

    def morphisms(self) -> tuple:
        return self._window

    @cached_property
    def _by_range(self) -> dict:
        out = {v: [] for v in self.vertices}
        for m in self._window:
            out[self.rng(m)].append(m)
        return {v: tuple(ms) for v, ms in out.items()}

    @cached_property
    def _by_source(self) -> dict:
        out = {v: [] for v in self.vertices}
        for m in self._window:
            out[self.src(m)].append(m)
        return {v: tuple(ms) for v, ms in out.items()}

    def with_range(self, v) -> tuple:
        return self._by_range[v]

    def with_source(self, v) -> tuple:
        return self._by_source[v]

    def hom(self, target, source) -> tuple:
        return tuple(m for m in self._by_range[target] if self.src(m) == source)

    def composable_pairs(self):
        """Composable pairs inside the window whose product is also in the window."""
        for b in self._window:
            for a in self.with_source(self.rng(b)):
                if self.budget is None or self.degree(a) + self.degree(b) <= self.budget:
                    yield a, b

    def __len__(self):
        return len(self._window)


@dataclass(frozen=True)
class Graph:
    """Finite directed graph; edge ``e`` goes from ``src[e]`` to ``rng[e]``."""

    vertices: tuple
    edges: tuple
    src: Mapping = field(hash=False)
    rng: Mapping = field(hash=False)

    @classmethod
    def build(cls, vertices, edges) -> "Graph":
        """``edges``: mapping id -> (src, rng) or a list of ``{"id","src","rng"}``."""
        if isinstance(edges, Mapping):
            items = [(e, s, r) for e, (s, r) in edges.items()]
        else:
            items = [(d["id"], d["src"], d["rng"]) for d in edges]
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValidationError("duplicate vertex", None)
        ids = [e for e, _, _ in items]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate edge id", None)
        for e, s, r in items:
            if s not in vertices or r not in vertices:
                raise ValidationError(f"edge {e!r} has an endpoint outside the vertex set", e)
            if e in vertices:
                raise ValidationError(f"edge id {e!r} clashes with a vertex id", e)
        return cls(vertices, tuple(ids), {e: s for e, s, _ in items}, {e: r for e, _, r in items})

    def to_spec(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "src": self.src[e], "rng": self.rng[e]} for e in self.edges],
        }

    def edges_with_range(self, v) -> list:
        return [e for e in self.edges if self.rng[e] == v]


class PathCategory(GradedView):
    """Category of finite paths ``E*`` graded by length.

    A vertex is its own identity; a path ``e1 e2 ... en`` (with
    ``s(e_i) == r(e_{i+1})``) is the tuple ``(e1, ..., en)``.
    """

    def __init__(self, graph: Graph, budget: int):
        self.graph = graph
        self.budget = budget
        self.vertices = graph.vertices

    def _enumerate(self):
        out = list(self.vertices)
        layer = [(e,) for e in self.graph.edges]
        length = 1
        while layer and length <= self.budget:
            out.extend(layer)
            nxt = []
            for p in layer:
                w = self.graph.src[p[-1]]
                nxt.extend(p + (e,) for e in self.graph.edges_with_range(w))
            layer = nxt
            length += 1
        return out

    def degree(self, m) -> int:
        return len(m) if isinstance(m, tuple) else 0

    def src(self, m):
        return self.graph.src[m[-1]] if isinstance(m, tuple) else m

    def rng(self, m):
        return self.graph.rng[m[0]] if isinstance(m, tuple) else m

    def identity(self, v):
        return v

    def compose(self, a, b):
        if self.src(a) != self.rng(b):
            raise NotComposable(f"({a!r}, {b!r}) is not composable", (a, b))
        if not isinstance(a, tuple):
            return b
        if not isinstance(b, tuple):
            return a
        return a + b

    def generators(self):
        return [(e,) for e in self.graph.edges]

    def is_prefix(self, a, b) -> bool:
        """Whether ``b`` lies in ``aC`` (``a`` is a prefix of ``b``)."""
        if self.rng(a) != self.rng(b):
            return False
        if not isinstance(a, tuple):
            return True
        return isinstance(b, tuple) and b[: len(a)] == a

    def __repr__(self):
        return f"PathCategory({len(self.vertices)} vertices, {len(self.graph.edges)} edges, budget={self.budget})"


def path_category(graph: Graph, budget: int) -> PathCategory:
    return PathCategory(graph, budget)


def label_path(m) -> str:
    return "".join(m) if isinstance(m, tuple) and all(len(e) == 1 for e in m) else (
        "·".join(m) if isinstance(m, tuple) else str(m)
    )


# --- small named graphs -------------------------------------------------------------

def one_loop() -> Graph:
    return Graph.build(["v"], {"s": ("v", "v")})


def two_loops() -> Graph:
    return Graph.build(["v"], {"a": ("v", "v"), "b": ("v", "v")})


def single_edge() -> Graph:
    return Graph.build(["u", "v"], {"e": ("v", "u")})

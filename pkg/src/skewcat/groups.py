"""Groups used as cocycle targets and acting groups.

Finite groups are stored as multiplication tables over ``range(n)`` with a
name per element.  Two symbolic infinite groups are provided for cocycle
targets only: the integers under addition and free groups on a finite
alphabet (elements are freely reduced words).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GroupTableError


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    label: str = ""
    unit: int = field(init=False)
    _inv: tuple[int, ...] = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False)

    is_finite = True

    def __post_init__(self):
        n = len(self.names)
        units = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not units:
            raise GroupTableError("no two-sided unit", None)
        e = units[0]
        inv = []
        for x in range(n):
            right = [y for y in range(n) if self.table[x][y] == e]
            if len(right) != 1 or self.table[right[0]][x] != e:
                raise GroupTableError(f"element {self.names[x]!r} has no two-sided inverse", self.names[x])
            inv.append(right[0])
        object.__setattr__(self, "unit", e)
        object.__setattr__(self, "_inv", tuple(inv))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @classmethod
    def from_table(cls, names: Sequence[str], table: Sequence[Sequence], label: str = "") -> "FiniteGroup":
        """Validate a Cayley table given by element names or indices."""
        names = tuple(str(x) for x in names)
        n = len(names)
        if len(set(names)) != n:
            raise GroupTableError("duplicate element names", None)
        if n == 0:
            raise GroupTableError("a group has at least one element", None)
        index = {name: i for i, name in enumerate(names)}
        rows = []
        if len(table) != n:
            raise GroupTableError("table is not square", None)
        for row in table:
            if len(row) != n:
                raise GroupTableError("table is not square", None)
            conv = []
            for entry in row:
                if isinstance(entry, int) and not isinstance(entry, bool) and 0 <= entry < n:
                    conv.append(entry)
                elif str(entry) in index:
                    conv.append(index[str(entry)])
                else:
                    raise GroupTableError(f"unknown table entry {entry!r}", entry)
            rows.append(tuple(conv))
        for a, b, c in itertools.product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise GroupTableError(
                    f"non-associative triple ({names[a]}, {names[b]}, {names[c]})",
                    (names[a], names[b], names[c]),
                )
        return cls(names, tuple(rows), label)

    # --- basic operations -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def prod(self, items: Iterable[int]) -> int:
        out = self.unit
        for x in items:
            out = self.table[out][x]
        return out

    def element(self, name) -> int:
        if isinstance(name, int) and not isinstance(name, bool) and name in self.elements:
            return name
        try:
            return self._index[str(name)]
        except KeyError:
            raise GroupTableError(f"{name!r} is not an element of {self.label or 'group'}", name) from None

    def name_of(self, a: int) -> str:
        return self.names[a]

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    # --- subgroups --------------------------------------------------------
    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(set(gens))
        seen = {self.unit}
        queue = deque([self.unit])
        while queue:
            x = queue.popleft()
            for g in gens:
                for y in (self.table[x][g], self.table[x][self._inv[g]]):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return frozenset(seen)

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.closure(gens)) == self.order

    def generating_set(self) -> list[int]:
        """A small (greedy, not necessarily minimal) generating set."""
        gens: list[int] = []
        sub = frozenset([self.unit])
        for x in sorted(self.elements, key=lambda x: -self.element_order(x)):
            if x not in sub:
                gens.append(x)
                sub = self.closure(gens)
            if len(sub) == self.order:
                break
        return gens

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.unit:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.label or self.order})"


class IntegerGroup:
    """The integers under addition (symbolic; cocycle targets only)."""

    is_finite = False
    unit = 0
    label = "Z"

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def prod(self, items: Iterable[int]) -> int:
        return sum(items)

    def element(self, value) -> int:
        try:
            return int(value)
        except (TypeError, ValueError):
            raise GroupTableError(f"{value!r} is not an integer", value) from None

    def name_of(self, a: int) -> str:
        return str(a)

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool)

    def __eq__(self, other):
        return isinstance(other, IntegerGroup)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "IntegerGroup()"


Word = tuple[tuple[str, int], ...]


def reduce_word(word: Iterable[tuple[str, int]]) -> Word:
    """Free reduction: cancel adjacent ``x x^-1`` pairs (stack-based, confluent)."""
    out: list[tuple[str, int]] = []
    for letter, exp in word:
        if exp not in (1, -1):
            raise ValueError(f"letters carry exponent +-1, got {exp}")
        if out and out[-1][0] == letter and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((letter, exp))
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple((x, -e) for x, e in reversed(word))


class FreeGroup:
    """Free group on a finite alphabet; elements are reduced words."""

    is_finite = False
    unit: Word = ()

    def __init__(self, alphabet: Sequence[str]):
        self.alphabet = tuple(str(a) for a in alphabet)
        self.label = f"F{len(self.alphabet)}"

    @classmethod
    def of_rank(cls, rank: int) -> "FreeGroup":
        return cls([f"x{i}" for i in range(rank)])

    def mul(self, a: Word, b: Word) -> Word:
        return reduce_word(a + b)

    def inv(self, a: Word) -> Word:
        return invert_word(a)

    def prod(self, items) -> Word:
        out: Word = ()
        for x in items:
            out = reduce_word(out + x)
        return out

    def generator(self, name: str) -> Word:
        return ((name, 1),)

    def element(self, value) -> Word:
        """Parse ``[[letter, +-1], ...]`` or a letter name."""
        if isinstance(value, str):
            value = [[value, 1]] if value else []
        try:
            word = tuple((str(x), int(e)) for x, e in value)
        except (TypeError, ValueError):
            raise GroupTableError(f"{value!r} is not a word", value) from None
        for x, _ in word:
            if x not in self.alphabet:
                raise GroupTableError(f"letter {x!r} not in the alphabet", x)
        return reduce_word(word)

    def name_of(self, a: Word) -> str:
        return " ".join(x if e == 1 else f"{x}^-1" for x, e in a) or "1"

    def contains(self, a) -> bool:
        return isinstance(a, tuple) and reduce_word(a) == a and all(x in self.alphabet for x, _ in a)

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and other.alphabet == self.alphabet

    def __hash__(self):
        return hash(self.alphabet)

    def __repr__(self):
        return f"FreeGroup({list(self.alphabet)})"


# --- named finite groups ----------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    names = tuple(str(i) for i in range(n))
    return FiniteGroup(names, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), f"Z{n}")


def trivial() -> FiniteGroup:
    return FiniteGroup(("e",), ((0,),), "1")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in g.elements for b in h.elements]
    idx = {p: i for i, p in enumerate(pairs)}
    names = tuple(f"({g.names[a]},{h.names[b]})" for a, b in pairs)
    table = tuple(
        tuple(idx[(g.mul(a, c), h.mul(b, d))] for c, d in pairs) for a, b in pairs
    )
    return FiniteGroup(names, table, f"{g.label}x{h.label}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``: rotation ``d`` of order n, reflection ``t``.

    Elements are ``t^j d^i`` named ``d^i`` / ``t d^i`` (``e``, ``d``, ``d2``,
    ..., ``t``, ``td``, ...), with ``t d t = d^-1``.
    """
    def nm(j, i):
        rot = "" if i == 0 else ("d" if i == 1 else f"d{i}")
        if j == 0:
            return rot or "e"
        return "t" + rot

    elems = [(j, i) for j in range(2) for i in range(n)]
    idx = {p: k for k, p in enumerate(elems)}

    def mult(p, q):
        j, i = p
        l, k = q
        sign = -1 if l else 1
        return ((j + l) % 2, (sign * i + k) % n)

    table = tuple(tuple(idx[mult(p, q)] for q in elems) for p in elems)
    return FiniteGroup(tuple(nm(j, i) for j, i in elems), table, f"D{n}")


def from_permutations(gens: dict[str, Sequence[int]], label: str = "") -> FiniteGroup:
    """Group generated by permutations (tuples of images); generator names kept."""
    gperms = {name: tuple(p) for name, p in gens.items()}
    size = len(next(iter(gperms.values())))
    ident = tuple(range(size))
    names = {ident: "e"}
    names.update({p: n for n, p in gperms.items() if p != ident})
    order = [ident]
    queue = deque([ident])
    seen = {ident}
    while queue:
        x = queue.popleft()
        for p in gperms.values():
            y = tuple(p[x[i]] for i in range(size))
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    idx = {p: i for i, p in enumerate(order)}
    elem_names = tuple(names.get(p, "p" + "".join(map(str, p))) for p in order)

    def comp(a, b):  # a after b
        return tuple(a[b[i]] for i in range(size))

    table = tuple(tuple(idx[comp(a, b)] for b in order) for a in order)
    return FiniteGroup(elem_names, table, label)


def symmetric3() -> FiniteGroup:
    return from_permutations({"s": (1, 0, 2), "c": (1, 2, 0)}, "S3")


def klein() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    return FiniteGroup(g.names, g.table, "Z2xZ2")


def quaternion() -> FiniteGroup:
    i = (1, 2, 3, 0, 7, 4, 5, 6)
    j = (4, 5, 6, 7, 2, 3, 0, 1)
    return from_permutations({"i": i, "j": j}, "Q8")


def battery() -> list[FiniteGroup]:
    """Fixed test battery for homomorphism counts: Z2, Z3, S3, Z4, Z2xZ2, D4."""
    return [cyclic(2), cyclic(3), symmetric3(), cyclic(4), klein(), dihedral(4)]


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    """One representative of every isomorphism class of order <= max_order (<= 8)."""
    out = [trivial()] + [cyclic(n) for n in range(2, max_order + 1)]
    z2 = cyclic(2)
    extra = [
        (4, klein()),
        (6, symmetric3()),
        (8, direct_product(z2, cyclic(4))),
        (8, direct_product(klein(), z2)),
        (8, dihedral(4)),
        (8, quaternion()),
    ]
    out += [g for order, g in extra if order <= max_order]
    return sorted(out, key=lambda g: (g.order, g.label))


def homomorphisms(k: FiniteGroup, g: FiniteGroup) -> list[tuple[int, ...]]:
    """All homomorphisms ``k -> g`` as image tuples indexed by elements of ``k``."""
    gens = k.generating_set()
    # spanning words: element -> (parent, generator) from BFS on the Cayley graph
    parent: dict[int, tuple[int, int]] = {}
    order = [k.unit]
    seen = {k.unit}
    queue = deque([k.unit])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = k.mul(x, s)
            if y not in seen:
                seen.add(y)
                parent[y] = (x, s)
                order.append(y)
                queue.append(y)
    out = []
    for images in itertools.product(g.elements, repeat=len(gens)):
        img = dict(zip(gens, images))
        f = {k.unit: g.unit}
        for y in order[1:]:
            x, s = parent[y]
            f[y] = g.mul(f[x], img[s])
        if all(f[k.mul(a, b)] == g.mul(f[a], f[b]) for a in k.elements for b in k.elements):
            out.append(tuple(f[a] for a in k.elements))
    return out

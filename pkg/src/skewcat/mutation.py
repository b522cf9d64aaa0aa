"""Seeded mutants used to check that the property suites have teeth.

Production code consults :func:`enabled` at exactly three places:

``skew-flip``
    skew-product composability tests ``g == eta(alpha) h`` instead of
    ``g == eta(beta) h``;
``no-freeness``
    freeness verdicts of group actions always report "free";
``tree-outside-kernel``
    the maximal-tree search of the seven-criteria check ignores ``ker psi``.
"""

from __future__ import annotations

import contextlib

KNOWN = ("skew-flip", "no-freeness", "tree-outside-kernel")

_active: set[str] = set()


def enabled(name: str) -> bool:
    return name in _active


@contextlib.contextmanager
def active(*names: str):
    unknown = set(names) - set(KNOWN)
    if unknown:
        raise ValueError(f"unknown mutants: {sorted(unknown)}")
    saved = set(_active)
    _active.update(names)
    try:
        yield
    finally:
        _active.clear()
        _active.update(saved)

"""Exception hierarchy.

Every error that names a concrete counterexample carries it in ``witness`` so
callers (and the CLI) can report it without parsing messages.
"""

from __future__ import annotations


class SkewcatError(Exception):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": str(self),
            "witness": _jsonable(self.witness),
        }


def _jsonable(obj):
    if obj is None or isinstance(obj, (str, int, float, bool)):
        return obj
    if isinstance(obj, (set, frozenset)):
        return sorted((_jsonable(x) for x in obj), key=str)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return str(obj)


class ValidationError(SkewcatError):
    """Input tables do not describe the claimed structure."""


class ParseError(SkewcatError):
    pass


class DuplicateId(ValidationError):
    pass


class MissingComposite(ValidationError):
    pass


class AxiomViolation(ValidationError):
    def __init__(self, axiom: str, witness=None, message: str = ""):
        super().__init__(message or f"axiom {axiom!r} violated at {witness!r}", witness)
        self.axiom = axiom


class GroupTableError(ValidationError):
    pass


class NotFunctorial(ValidationError):
    pass


class VertexNotUnit(ValidationError):
    pass


class NotAFunctor(ValidationError):
    pass


class NotAutomorphism(ValidationError):
    pass


class NotAction(ValidationError):
    pass


class NotAnAction(ValidationError):
    pass


class NotACategory(ValidationError):
    """A constructed product failed the category axioms (bad action/cocycle data)."""


class NotInvariant(ValidationError):
    pass


class NotGroupoid(ValidationError):
    pass


class NotComposable(SkewcatError, ValueError):
    pass


class BudgetedUnsupported(SkewcatError):
    """The answer could change beyond the enumeration budget of a graded view."""


class EmptyFamily(SkewcatError, ValueError):
    pass


class FNotAtVertex(SkewcatError, ValueError):
    pass


class NotConnected(SkewcatError):
    pass


class NotConnectedBase(NotConnected):
    pass


class NotFree(SkewcatError):
    pass


class Degenerate(SkewcatError):
    pass


class ZeroColumn(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class SearchBudgetExceeded(SkewcatError):
    pass


class BatteryTooLarge(SkewcatError):
    pass


class VerificationFailed(SkewcatError):
    """An internal consistency check failed; indicates a bug, not bad input."""

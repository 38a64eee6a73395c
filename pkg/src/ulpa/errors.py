"""Exception types shared across the package."""


class UlpaError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(UlpaError):
    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{v.kind}: {v.detail}" for v in self.violations)
        super().__init__(msg or "invalid ultragraph")


class UnknownVertex(UlpaError):
    pass


class UnknownEdge(UlpaError):
    pass


class NotACycle(UlpaError):
    pass


class NotHereditarySaturated(UlpaError):
    pass


class NotAdmissible(UlpaError):
    pass


class ImproperPair(UlpaError):
    pass


class NonFiniteGenerator(UlpaError):
    pass


class SpecMismatch(UlpaError):
    pass


class FieldMismatch(UlpaError):
    pass


class NotInCorner(UlpaError):
    pass


class CycleHasExit(UlpaError):
    pass


class RelationFailure(UlpaError):
    def __init__(self, relation, instance):
        self.relation = relation
        self.instance = instance
        super().__init__(f"relation ({relation}) fails on {instance}")


class UnsupportedDegree(UlpaError):
    pass


class UnsupportedEnumeration(UlpaError):
    pass


class NotIrreducible(UlpaError):
    pass


class InvalidDesc(UlpaError):
    pass


class NotBasisElem(UlpaError):
    pass


class DepthExceeded(UlpaError):
    pass


class CounterexampleFound(UlpaError):
    def __init__(self, generator, element):
        self.generator = generator
        self.element = element
        super().__init__(f"{generator} does not vanish on {element}")


class NotPrimitive(UlpaError):
    pass


class EmptyWord(UlpaError):
    pass


class InvalidGerm(UlpaError):
    pass


class MismatchFound(UlpaError):
    def __init__(self, generator, element):
        self.generator = generator
        self.element = element
        super().__init__(f"actions differ for {generator} on {element}")


class ParseError(UlpaError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(message + where)


class ExprSyntaxError(UlpaError):
    def __init__(self, message, pos=None):
        self.pos = pos
        where = f" at offset {pos}" if pos is not None else ""
        super().__init__(message + where)


class UnknownSymbol(UlpaError):
    pass


class ScalarNotInField(UlpaError):
    """A rational literal whose denominator vanishes in the base field."""

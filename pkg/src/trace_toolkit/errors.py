"""Exception hierarchy for the toolkit.

Input and precondition problems raise subclasses of :class:`TraceToolkitError`
(the CLI maps these to exit code 2).  :class:`ConsistencyError` is reserved
for cross-route mismatches -- a closed-form value disagreeing with its
brute-force oracle -- and should never fire on correct code (exit code 3).
"""


class TraceToolkitError(Exception):
    """Base class for all toolkit errors."""


class EmptyInput(TraceToolkitError):
    """No generators were supplied."""


class NonCoprime(TraceToolkitError):
    """Generators have gcd > 1, so they generate no numerical semigroup."""


class NotAMember(TraceToolkitError):
    """An element required to lie in the semigroup does not."""


class FrobeniusBoundExceeded(TraceToolkitError):
    """The Frobenius number exceeds the configured safety bound."""


class EmptyGenerators(TraceToolkitError):
    """A relative ideal needs at least one generator."""


class ParentMismatch(TraceToolkitError):
    """Ideal operands belong to different semigroups."""


class NotMinimalTriple(TraceToolkitError):
    """The three integers are not a minimal generating triple."""


class SymmetricInput(TraceToolkitError):
    """The structure matrix is only defined for non-symmetric semigroups."""


class CoprimalityViolated(TraceToolkitError):
    """A family's coprimality precondition fails for these parameters."""


class DegenerateTriple(TraceToolkitError):
    """A constructed triple is not a minimal generating set."""


class InvalidRange(TraceToolkitError):
    """A shift-family range parameter is out of bounds."""


class PreconditionViolated(TraceToolkitError):
    """Operation-specific parameter precondition fails."""


class NotMinimalMultiplicity(TraceToolkitError):
    """The semigroup does not have minimal multiplicity."""


class LengthMismatch(TraceToolkitError):
    """An exponent vector has the wrong number of entries."""


class RangeUnsupported(TraceToolkitError):
    """(n, d) outside the range where the construction applies."""


class CycleDetected(TraceToolkitError):
    """The cover relation of a poset contains a directed cycle."""


class DuplicateLabel(TraceToolkitError):
    """Poset element labels must be distinct."""


class MalformedInput(TraceToolkitError):
    """A structured input document does not match the expected schema."""


class EmptyPoset(TraceToolkitError):
    """Classification needs a nonempty poset."""


class CapExceeded(TraceToolkitError):
    """A counting operation exceeded its configured cap."""


class InvalidParams(TraceToolkitError):
    """CLI or scan parameters are invalid."""


class ConsistencyError(TraceToolkitError):
    """A closed-form value disagrees with its independent brute-force check."""

"""Exception hierarchy shared by all ffdist modules."""


class FFDistError(Exception):
    """Base class for every error raised by ffdist."""


class ParseError(FFDistError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateMarker(ParseError):
    pass


class EmptyChromosome(ParseError):
    pass


class UnknownMarker(ParseError):
    pass


class SimilarityRange(ParseError):
    pass


class DuplicatePair(ParseError):
    pass


class GenomeError(FFDistError):
    """Genome pair violates a precondition of the requested computation."""


class NotSingular(GenomeError):
    pass


class NotCanonical(GenomeError):
    pass


class NotCircular(GenomeError):
    pass


class NotBalanced(GenomeError):
    pass


class DiagramError(FFDistError):
    pass


class NotDecomposed(DiagramError):
    pass


class CyclesOnly(DiagramError):
    pass


class CappedOnly(DiagramError):
    pass


class NotASiblingSet(DiagramError):
    pass


class NotMaximalCapping(DiagramError):
    pass


class TooLarge(FFDistError):
    """Instance exceeds the enumeration limits of an exact engine."""


class InvalidSolution(FFDistError):
    pass


class ObjectiveMismatch(FFDistError):
    pass


class ModelBug(FFDistError):
    """ILP objective disagrees with the decomposition it encodes."""


class SolverFailed(FFDistError):
    def __init__(self, message, stderr=""):
        self.stderr = stderr
        super().__init__(message)


class ConfigError(FFDistError):
    pass


class InvalidMatrix(FFDistError):
    pass


class MissingSimilarities(FFDistError):
    pass


class BadParams(FFDistError):
    pass

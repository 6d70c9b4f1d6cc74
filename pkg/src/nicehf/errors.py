"""Exception hierarchy."""


class HFError(Exception):
    """Base class for all library errors."""


class MapError(HFError):
    pass


class DuplicateCrossing(MapError):
    pass


class MissingCrossing(MapError):
    pass


class DisconnectedMap(MapError):
    pass


class NonIntegerGenus(MapError):
    pass


class SchemaError(HFError):
    pass


class NotCoprime(HFError):
    pass


class UnpointedFace(HFError):
    pass


class LemmaViolation(HFError):
    pass


class NotNice(HFError):
    pass


class NotAChainComplex(HFError):
    pass


class NoConnectingDomain(HFError):
    pass


class NotInLattice(HFError):
    pass


class NotUnivariate(HFError):
    pass


class PreconditionFailed(HFError):
    pass


class InvarianceViolation(HFError):
    pass


class TooLarge(HFError):
    pass


class AdditivityViolation(HFError):
    pass

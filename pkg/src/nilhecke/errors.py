"""Exception hierarchy shared by every module of the package."""


class ComputationError(Exception):
    """Base class for errors raised by a well-formed but failing computation."""


class RingMismatch(ComputationError, TypeError):
    pass


class NotDivisible(ComputationError, ArithmeticError):
    pass


class NoCanonicalMap(ComputationError):
    pass


class NotInRing(ComputationError, ValueError):
    pass


class UnknownPreset(ComputationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidCartanData(ComputationError, ValueError):
    pass


class GroupNotFinite(ComputationError):
    pass


class NotBruhatComparable(ComputationError, ValueError):
    pass


class TorsionNotInvertible(ComputationError, ValueError):
    pass


class ExpansionFailed(ComputationError):
    pass


class NotTypeA(ComputationError, ValueError):
    pass


class UnsupportedRing(ComputationError, ValueError):
    pass


class MembershipUndecidable(ComputationError, ValueError):
    pass


class RankDeficientSubgroup(ComputationError, ValueError):
    pass


class UnknownInvariantGenerators(ComputationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)

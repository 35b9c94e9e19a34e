"""Exception types raised by charseq.

Every error derives from :class:`CharSeqError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one thing.  The CLI maps
any of these to exit status 2.
"""


class CharSeqError(ValueError):
    pass


class NotPrime(CharSeqError):
    pass


class ReducibleModulus(CharSeqError):
    pass


class ZeroElement(CharSeqError):
    pass


class FieldTooLarge(CharSeqError):
    pass


class NotCoprime(CharSeqError):
    pass


class NotPrimitive(CharSeqError):
    pass


class TrivialCharacter(CharSeqError):
    pass


class NonUnitReplacement(CharSeqError):
    pass


class LengthMismatch(CharSeqError):
    pass


class ZeroEnergy(CharSeqError):
    pass


class TooLong(CharSeqError):
    pass


class ZeroX(CharSeqError):
    pass


class NonPositive(CharSeqError):
    pass


class BadCase(CharSeqError):
    pass


class BadArgs(CharSeqError):
    pass


class NoSignChange(CharSeqError):
    pass


class UnknownFigure(CharSeqError):
    pass


class BadBinWidth(CharSeqError):
    pass

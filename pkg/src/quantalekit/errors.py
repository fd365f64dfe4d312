"""Exception hierarchy. Every error carries the offending elements in ``witness``."""

from __future__ import annotations


class QuantaleKitError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class TooLarge(QuantaleKitError):
    pass


# -- lattices ---------------------------------------------------------------

class LatticeError(QuantaleKitError):
    pass


class NotAPoset(LatticeError):
    pass


class NoJoin(LatticeError):
    pass


class NoMeet(LatticeError):
    pass


class NoBounds(LatticeError):
    pass


# -- quantales --------------------------------------------------------------

class QuantaleError(QuantaleKitError):
    pass


class NotAssociative(QuantaleError):
    pass


class NotJoinPreserving(QuantaleError):
    pass


class BottomNotAnnihilating(QuantaleError):
    pass


class GammaIsTop(QuantaleError):
    pass


class ConditionsFail(QuantaleError):
    pass


class NotAGroup(QuantaleError):
    pass


class NotANucleus(QuantaleError):
    pass


# -- io ---------------------------------------------------------------------

class ParseError(QuantaleKitError):
    pass


class ValidationError(QuantaleKitError):
    """A model file parsed but failed lattice or quantale validation."""

    def __init__(self, cause: QuantaleKitError):
        super().__init__(f"{type(cause).__name__}: {cause}", witness=cause.witness)
        self.kind = type(cause).__name__

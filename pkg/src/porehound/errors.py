# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Exceptions raised by porehound. Each one also derives from the builtin
that best describes it, so callers catching ValueError keep working.
"""


class PorehoundError(Exception):
    pass


class InvalidReferenceError(PorehoundError, ValueError):
    pass


class InvalidPermeabilityError(PorehoundError, ValueError):
    pass


class ShapeError(PorehoundError, ValueError):
    pass


class DomainError(PorehoundError, ValueError):
    pass


class UnsupportedCombinationError(PorehoundError, ValueError):
    pass


class IllPosedError(PorehoundError, ValueError):
    pass


class PicardDivergenceError(PorehoundError, ArithmeticError):
    """Raised when Picard iteration fails; history holds relative changes."""

    def __init__(self, message, history=None):
        super(PicardDivergenceError, self).__init__(message)
        self.history = list(history or [])


class AdmissibilityError(PorehoundError, ValueError):
    pass


class FitConditioningError(PorehoundError, ArithmeticError):
    pass


class InfeasibleDesignError(PorehoundError, ValueError):
    pass


class BisectionError(PorehoundError, ArithmeticError):
    pass


class ConfigError(PorehoundError, ValueError):
    pass

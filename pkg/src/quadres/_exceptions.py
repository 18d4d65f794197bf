# -*- coding: utf-8 -*-

"""
Exceptions raised by the quadres package.

All input errors derive from ``ValueError`` so that code catching ``ValueError``
keeps working.
"""

__all__ = ['QuadresError', 'DomainError', 'RangeError', 'ResourceError', 'ConstructionError']


class QuadresError(Exception):
    """
    Base class of quadres errors.
    """


class DomainError(QuadresError, ValueError):
    """
    The argument lies outside the domain of the operation
    (e.g. non fundamental discriminant, alpha outside (0, 1)).
    """


class RangeError(DomainError):
    """
    Integer outside the supported range.
    """


class ResourceError(QuadresError, MemoryError):
    """
    Requested table is larger than the configured cap.
    """


class ConstructionError(QuadresError, ValueError):
    """
    A resonator set could not be built with the requested parameters.
    """

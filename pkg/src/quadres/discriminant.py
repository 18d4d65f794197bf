# -*- coding: utf-8 -*-

"""
Fundamental discriminants: validation, parity and enumeration over ranges of ``|d|``.
"""

import typing

import numpy as np
import pydantic

from quadres._base_classes import FrozenModel
from quadres._constants import SIGN_FILTERS
from quadres._exceptions import DomainError
from quadres.arith import is_squarefree, kronecker, squarefree_mask

__all__ = ['FundamentalDiscriminant', 'DiscriminantRange',
           'is_fundamental', 'as_discriminant', 'parity',
           'fundamental_array', 'enumerate_fundamental_array', 'enumerate_fundamental',
           'count_fundamental', 'sample_fundamental']

_SEGMENT = 2 ** 22


def is_fundamental(d: int) -> bool:
    """
    Check whether ``d`` is a fundamental discriminant.

    ``d`` is fundamental if either ``d = 1 mod 4`` and ``d`` is squarefree, or ``d = 4m``
    with ``m = 2, 3 mod 4`` and ``m`` squarefree. ``d = 1`` (trivial character) is excluded.

    :param d: Non-zero integer
    :type d: int
    :rtype: bool
    """
    d = int(d)
    if d == 0:
        raise DomainError('0 is not a valid discriminant')
    if d == 1:
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


class FundamentalDiscriminant(FrozenModel):
    """
    A fundamental discriminant ``d`` and the parity ``chi_d(-1)`` of its character.

    The parity is computed when not provided::

        FundamentalDiscriminant(d=-4).parity  # -1
    """
    d: int
    parity: typing.Literal[-1, 1]

    @pydantic.model_validator(mode='before')
    @classmethod
    def _fill_parity(cls, data):
        if isinstance(data, dict) and 'parity' not in data and 'd' in data:
            data = dict(data)
            data['parity'] = kronecker(int(data['d']), -1) or 1
        return data

    @pydantic.model_validator(mode='after')
    def _check_fundamental(self):
        if self.d == 0 or not is_fundamental(self.d):
            raise ValueError(f'{self.d} is not a fundamental discriminant')
        if self.parity != (1 if self.d > 0 else -1):
            raise ValueError(f'Parity {self.parity} inconsistent with the sign of {self.d}')
        return self

    @property
    def q(self) -> int:
        """
        Modulus ``|d|`` of the character.
        """
        return abs(self.d)

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    def __int__(self):
        return self.d


def as_discriminant(d: typing.Union[int, FundamentalDiscriminant]) -> FundamentalDiscriminant:
    """
    Convert an integer to a FundamentalDiscriminant.

    :raises DomainError: if ``d`` is not a fundamental discriminant
    """
    if isinstance(d, FundamentalDiscriminant):
        return d
    d = int(d)
    if d == 0 or not is_fundamental(d):
        raise DomainError(f'{d} is not a fundamental discriminant')
    return FundamentalDiscriminant.model_construct(d=d, parity=1 if d > 0 else -1)


def parity(d: typing.Union[int, FundamentalDiscriminant]) -> int:
    """
    chi_d(-1), equal to the sign of ``d``.
    """
    d = as_discriminant(d)
    return kronecker(d.d, -1)


class DiscriminantRange(FrozenModel):
    """
    The dyadic range ``X < |d| <= 2X`` restricted to a sign.
    """
    X: int = pydantic.Field(ge=2)
    sign_filter: typing.Literal['positive', 'negative', 'both'] = 'both'

    @property
    def lo(self) -> int:
        return self.X

    @property
    def hi(self) -> int:
        return 2 * self.X


def _segment(lo, hi):
    """
    Fundamental discriminants with ``lo < |d| <= hi`` (unsorted).
    """
    a = np.arange(lo + 1, hi + 1, dtype=np.int64)
    sf = squarefree_mask(lo + 1, hi)
    r = a % 4
    parts = [a[(r == 1) & sf & (a > 1)], -a[(r == 3) & sf]]

    b_lo, b_hi = lo // 4 + 1, hi // 4
    if b_hi >= b_lo:
        b = np.arange(b_lo, b_hi + 1, dtype=np.int64)
        b = b[squarefree_mask(b_lo, b_hi)]
        rb = b % 4
        # d = 4m with m = 2, 3 mod 4: +4b for b = 2, 3 and -4b for b = 1, 2
        parts.append(4 * b[(rb == 2) | (rb == 3)])
        parts.append(-4 * b[(rb == 1) | (rb == 2)])
    return np.concatenate(parts)


def fundamental_array(lo: int, hi: int, sign_filter: str = 'both') -> np.ndarray:
    """
    Sorted array of the fundamental discriminants with ``lo < |d| <= hi``.

    Order is ascending ``|d|``, the negative discriminant first for equal ``|d|``.
    Enumeration uses a segmented squarefree sieve.

    :param lo: Exclusive lower bound on ``|d|`` (>= 0)
    :param hi: Inclusive upper bound on ``|d|``
    :param sign_filter: ``positive``, ``negative`` or ``both``
    :rtype: numpy int64 array
    """
    if lo < 0:
        raise DomainError(f'Lower bound should be non-negative, got {lo}')
    if sign_filter not in SIGN_FILTERS:
        raise DomainError(f'Unknown sign filter {sign_filter}')
    chunks = []
    for start in range(lo, hi, _SEGMENT):
        chunks.append(_segment(start, min(start + _SEGMENT, hi)))
    if len(chunks) == 0:
        return np.zeros(0, dtype=np.int64)
    d = np.concatenate(chunks)
    if sign_filter == 'positive':
        d = d[d > 0]
    elif sign_filter == 'negative':
        d = d[d < 0]
    return d[np.lexsort((d, np.abs(d)))]


def enumerate_fundamental_array(rng: typing.Union[DiscriminantRange, int]) -> np.ndarray:
    """
    The fundamental discriminants of a DiscriminantRange as a numpy array.
    """
    if not isinstance(rng, DiscriminantRange):
        rng = DiscriminantRange(X=rng)
    return fundamental_array(rng.lo, rng.hi, rng.sign_filter)


def enumerate_fundamental(rng: typing.Union[DiscriminantRange, int]) -> typing.Iterator[FundamentalDiscriminant]:
    """
    Yield the fundamental discriminants with ``X < |d| <= 2X`` matching the sign filter,
    by ascending ``|d|`` (negative first for equal ``|d|``).

    :param rng: The range (an integer is understood as ``X`` with both signs)
    :type rng: DiscriminantRange or int
    """
    for d in enumerate_fundamental_array(rng).tolist():
        yield FundamentalDiscriminant.model_construct(d=d, parity=1 if d > 0 else -1)


def count_fundamental(lo: int, hi: int, sign_filter: str = 'both') -> int:
    """
    Number of fundamental discriminants with ``lo < |d| <= hi``.
    """
    return int(fundamental_array(lo, hi, sign_filter).size)


def sample_fundamental(lo: int, hi: int, size: int, seed: int = 0, sign_filter: str = 'both') -> np.ndarray:
    """
    A seeded uniform sample (without replacement, sorted as the enumeration) of
    fundamental discriminants with ``lo < |d| <= hi``.
    """
    ds = fundamental_array(lo, hi, sign_filter)
    if size >= ds.size:
        return ds
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(ds.size, size=size, replace=False))
    return ds[idx]

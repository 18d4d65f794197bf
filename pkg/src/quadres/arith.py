# -*- coding: utf-8 -*-

"""
Exact integer arithmetic: sieves, factorization, Kronecker symbol, squarefree split
and the multiplicative weights used in the average of quadratic characters.
"""

import typing
import math
import functools
import os.path
import logging

import numpy as np
import pydantic

from quadres._base_classes import FrozenModel, locked_array
from quadres._constants import MAX_INTEGER, KRONECKER_TWO
from quadres._exceptions import RangeError, DomainError, ResourceError
from quadres._utils import get_default, get_cache_dir

__all__ = ['SpfTable', 'FactoredInt',
           'sieve_spf', 'shared_spf_table', 'primes_up_to', 'squarefree_mask',
           'is_prime', 'factorize', 'is_squarefree', 'squarefree_kernel', 'radical', 'mobius',
           'largest_prime_factor', 'kronecker', 'legendre_table', 'powmod_array',
           'euler_factor_product', 'prime_euler_product', 'f_bound', 'g_bound', 'lemma22_error_bounds']

_SHARED_TABLE_LIMIT = 2 ** 20


class SpfTable(FrozenModel):
    """
    Smallest prime factor table.

    ``spf[n]`` is the smallest prime factor of ``n`` for ``2 <= n <= limit``,
    with the conventions ``spf[0] = 0`` and ``spf[1] = 1``. The array is read-only.
    """
    limit: int = pydantic.Field(gt=0, description="Largest integer covered by the table")
    spf: locked_array = pydantic.Field(description="Smallest prime factor of each integer up to limit")

    @pydantic.model_validator(mode='after')
    def _check_size(self):
        if self.spf.shape != (self.limit + 1, ):
            raise ValueError(f'spf should have {self.limit + 1} entries, got {self.spf.shape}')
        return self

    def primes(self) -> np.ndarray:
        """
        Primes up to the table limit.
        """
        idx = np.arange(self.spf.size)
        return idx[(idx >= 2) & (self.spf == idx)]


class FactoredInt(FrozenModel):
    """
    A positive integer with its prime factorization.

    ``n0`` is the squarefree part and ``n1`` the cofactor such that ``n = n0 * n1**2``.
    ``p_plus`` is the largest prime factor, with ``p_plus = 1`` for ``n = 1``.
    """
    n: int = pydantic.Field(ge=1, le=MAX_INTEGER)
    factors: typing.Tuple[typing.Tuple[int, int], ...] = ()
    n0: int = pydantic.Field(1, ge=1)
    n1: int = pydantic.Field(1, ge=1)
    mu: typing.Literal[-1, 0, 1] = 1
    p_plus: int = pydantic.Field(1, ge=1)

    @pydantic.model_validator(mode='after')
    def _check_invariants(self):
        if math.prod(p ** e for p, e in self.factors) != self.n:
            raise ValueError(f'Factors {self.factors} do not multiply to {self.n}')
        if self.n0 * self.n1 ** 2 != self.n:
            raise ValueError(f'n0 * n1**2 = {self.n0 * self.n1 ** 2} differs from n = {self.n}')
        squarefree = all(e == 1 for _, e in self.factors)
        expected_mu = (-1) ** len(self.factors) if squarefree else 0
        if self.mu != expected_mu:
            raise ValueError(f'Inconsistent Moebius value {self.mu} for {self.n}')
        if self.p_plus != max([p for p, _ in self.factors], default=1):
            raise ValueError(f'Inconsistent largest prime factor {self.p_plus} for {self.n}')
        return self

    @property
    def primes(self) -> typing.List[int]:
        return [p for p, _ in self.factors]

    @property
    def is_squarefree(self) -> bool:
        return self.mu != 0

    @property
    def is_square(self) -> bool:
        return self.n0 == 1


def sieve_spf(limit: int, cap: typing.Optional[int] = None) -> SpfTable:
    """
    Build the smallest prime factor table up to ``limit``.

    When the ``RESONANCE_CACHE_DIR`` environment variable is set, tables are cached
    there as ``spf_<limit>.npy`` files and re-read on later calls.

    :param limit: Largest integer of the table
    :type limit: int
    :param cap: Maximum accepted limit (default from configuration, ``sieve_cap``)
    :type cap: int
    :returns: The table
    :rtype: SpfTable
    """
    if cap is None:
        cap = get_default('sieve_cap')
    if limit < 1:
        raise DomainError(f'Sieve limit should be positive, got {limit}')
    if limit > cap:
        raise ResourceError(f'Sieve limit {limit} is above the configured cap {cap}')

    cache_dir = get_cache_dir()
    if cache_dir is not None:
        filename = os.path.join(cache_dir, f'spf_{limit}.npy')
        if os.path.isfile(filename):
            try:
                return SpfTable(limit=limit, spf=np.load(filename))
            except (OSError, ValueError) as e:
                logging.warning(f'Could not read cached sieve {filename}: {e}')

    dtype = np.int32 if limit < 2 ** 31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=dtype)
    unset = spf == 0
    spf[unset] = idx[unset]

    if cache_dir is not None:
        np.save(filename, spf)
        logging.info(f'Written to {filename}')
    return SpfTable(limit=limit, spf=spf)


@functools.lru_cache(maxsize=8)
def _cached_spf_table(limit):
    return sieve_spf(limit)


def shared_spf_table(limit: int = _SHARED_TABLE_LIMIT) -> SpfTable:
    """
    A process-wide cached SpfTable covering at least ``limit``
    (rounded up to a power of two, at least ``2**20``).
    """
    size = _SHARED_TABLE_LIMIT
    while size < limit:
        size *= 2
    return _cached_spf_table(size)


def primes_up_to(limit: int) -> np.ndarray:
    """
    Array of all primes ``p <= limit``.
    """
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def squarefree_mask(lo: int, hi: int) -> np.ndarray:
    """
    Boolean mask of the squarefree integers in ``[lo, hi]`` (entry ``i`` is for ``lo + i``).

    :param lo: First integer (>= 1)
    :param hi: Last integer (included)
    """
    if lo < 1:
        raise DomainError(f'Squarefree sieve starts at 1, got {lo}')
    if hi < lo:
        return np.zeros(0, dtype=bool)
    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in primes_up_to(math.isqrt(hi)):
        q = int(p) * int(p)
        start = -(-lo // q) * q
        mask[start - lo::q] = False
    return mask


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """
    Deterministic Miller-Rabin primality test (exact for n < 3.3e24).
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """
    A non-trivial factor of the odd composite n (Brent's variant of Pollard's rho).

    Starting points are fixed so that the result is deterministic.
    """
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f'Pollard rho failed on {n}')


def _prime_factors(n: int, table: SpfTable, out: typing.Dict[int, int]):
    """
    Accumulate the prime factors of n into ``out`` (prime -> exponent).
    """
    if n == 1:
        return
    if n <= table.limit:
        spf = table.spf
        while n > 1:
            p = int(spf[n])
            while n % p == 0:
                n //= p
                out[p] = out.get(p, 0) + 1
        return
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    if n == 1:
        return
    if n <= table.limit:
        _prime_factors(n, table, out)
    elif is_prime(n):
        out[n] = out.get(n, 0) + 1
    else:
        f = _pollard_brent(n)
        _prime_factors(f, table, out)
        _prime_factors(n // f, table, out)


def factorize(n: int, table: typing.Optional[SpfTable] = None) -> FactoredInt:
    """
    Factorize a positive integer ``n <= 2**50``.

    Uses the smallest prime factor table when ``n`` is covered by it, Pollard's
    rho method above.

    :param n: Integer to factorize
    :type n: int
    :param table: Table to use (default: the shared table)
    :type table: SpfTable
    :returns: The factored integer
    :rtype: FactoredInt
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise RangeError(f'Expected a positive integer, got {n!r}')
    n = int(n)
    if n < 1 or n > MAX_INTEGER:
        raise RangeError(f'Integer {n} outside the supported range [1, 2**50]')
    if table is None:
        table = shared_spf_table()

    out = {}
    _prime_factors(n, table, out)
    factors = tuple(sorted(out.items()))

    n0 = math.prod(p for p, e in factors if e % 2 == 1)
    n1 = math.prod(p ** (e // 2) for p, e in factors)
    if all(e == 1 for _, e in factors):
        mu = (-1) ** len(factors)
    else:
        mu = 0
    p_plus = factors[-1][0] if len(factors) > 0 else 1
    return FactoredInt.model_construct(n=n, factors=factors, n0=n0, n1=n1, mu=mu, p_plus=p_plus)


def is_squarefree(n: int) -> bool:
    return factorize(n).mu != 0


def squarefree_kernel(n: int) -> int:
    """
    Squarefree part n0 of n = n0 * n1**2.
    """
    return factorize(n).n0


def radical(n: int) -> int:
    return math.prod(factorize(n).primes)


def mobius(n: int) -> int:
    return factorize(n).mu


def largest_prime_factor(n: int) -> int:
    """
    P+(n), with P+(1) = 1.
    """
    return factorize(n).p_plus


def kronecker(a: int, b: int) -> int:
    """
    Kronecker symbol (a/b) for any pair of integers.

    Binary algorithm with quadratic reciprocity; ``(a/2)`` is 0 for even ``a``,
    +1 for ``a = +-1 mod 8`` and -1 for ``a = +-3 mod 8``; ``(a/-1)`` is the sign of ``a``;
    ``(a/0)`` is 1 if ``a = +-1`` and 0 otherwise.

    :param a: Upper entry (the discriminant for quadratic characters)
    :param b: Lower entry
    :returns: -1, 0 or 1
    """
    a, b = int(a), int(b)
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0

    v = 0
    while b % 2 == 0:
        v += 1
        b //= 2
    k = 1 if v % 2 == 0 else KRONECKER_TWO[a & 7]
    if b < 0:
        b = -b
        if a < 0:
            k = -k

    # b is odd and positive from here
    while True:
        if a == 0:
            return k if b == 1 else 0
        v = 0
        while a % 2 == 0:
            v += 1
            a //= 2
        if v % 2 == 1:
            k *= KRONECKER_TWO[b & 7]
        if a & b & 2:
            k = -k
        r = abs(a)
        a = b % r
        b = r


@functools.lru_cache(maxsize=4096)
def legendre_table(p: int) -> np.ndarray:
    """
    Values of the Legendre symbol ``(r/p)`` for ``0 <= r < p`` (read-only int8 array),
    ``p`` an odd prime.
    """
    table = -np.ones(p, dtype=np.int8)
    r = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    table[(r * r) % p] = 1
    table[0] = 0
    table.flags.writeable = False
    return table


def powmod_array(base, exponent, modulus) -> np.ndarray:
    """
    Element-wise modular exponentiation on int64 arrays (moduli below 3e9).
    """
    base = np.asarray(base, dtype=np.int64) % modulus
    exponent = np.array(exponent, dtype=np.int64, copy=True)
    modulus = np.asarray(modulus, dtype=np.int64)
    base, exponent, modulus = np.broadcast_arrays(base, exponent, modulus)
    result = np.ones(base.shape, dtype=np.int64)
    base = base.copy()
    exponent = exponent.copy()
    while np.any(exponent > 0):
        odd = (exponent & 1) == 1
        result = np.where(odd, result * base % modulus, result)
        base = base * base % modulus
        exponent >>= 1
    return result


def euler_factor_product(n: int) -> float:
    """
    Product over the distinct primes p dividing n of p/(p+1) (1 for n = 1).
    """
    return math.prod(p / (p + 1) for p in factorize(n).primes)


def prime_euler_product(X: float) -> float:
    """
    Product over all primes p <= X of p/(p+1), computed exactly in floating point.
    """
    p = primes_up_to(int(X)).astype(np.float64)
    return math.exp(math.fsum(np.log1p(-1. / (p + 1)).tolist()))


def f_bound(n0: int, eps: float) -> float:
    """
    f(n0) = exp((log n0)**(1-eps)) for squarefree n0.
    """
    if not 0 < eps < 1:
        raise DomainError(f'eps should be in (0, 1), got {eps}')
    if not is_squarefree(n0):
        raise DomainError(f'f(n0) is defined for squarefree n0, got {n0}')
    if n0 == 1:
        return 1.
    return math.exp(math.log(n0) ** (1 - eps))


def g_bound(n1: int, eps: float) -> float:
    """
    g(n1) = sum over divisors d of n1 of mu(d)**2 / d**(1/2+eps).

    Only squarefree divisors contribute, hence the product over primes dividing n1
    of (1 + p**-(1/2+eps)).
    """
    if not 0 < eps < 1:
        raise DomainError(f'eps should be in (0, 1), got {eps}')
    return math.prod(1 + p ** -(0.5 + eps) for p in factorize(n1).primes)


def lemma22_error_bounds(n: int, eps: float) -> dict:
    """
    The weights of the error term of the average of chi_d(n) over fundamental discriminants,
    together with their elementary upper bounds.

    Returns a dict with keys ``n0``, ``n1``, ``f``, ``g`` and the bounds
    ``f_trivial = n**eps``, ``g_trivial = n**eps``, ``f_friable = exp(P+(n)**(1-eps))``,
    ``g_friable = exp(P+(n)**(1/2-eps))``.
    """
    fi = factorize(n)
    return dict(
        n0=fi.n0,
        n1=fi.n1,
        f=f_bound(fi.n0, eps),
        g=g_bound(fi.n1, eps),
        f_trivial=n ** eps,
        g_trivial=n ** eps,
        f_friable=math.exp(fi.p_plus ** (1 - eps)),
        g_friable=math.exp(fi.p_plus ** (0.5 - eps)))

# -*- coding: utf-8 -*-

"""
Quadratic character sums: character tables, exact partial sums, Gauss sums and the
truncated Fourier (Polya) expansion of short sums with its even/odd components.
"""

import typing
import math

import numpy as np
import pydantic

from quadres._base_classes import FrozenModel, locked_array
from quadres._constants import KRONECKER_TWO
from quadres._exceptions import DomainError, ResourceError
from quadres._utils import get_default, compensated_sum
from quadres.arith import shared_spf_table, legendre_table, powmod_array, factorize, SpfTable
from quadres.discriminant import FundamentalDiscriminant, as_discriminant

__all__ = ['CharTable', 'PolyaApprox', 'CharacterColumns',
           'char_table', 'partial_sum', 'gauss_sum', 'gauss_sum_closed_form',
           'c_component', 's_component', 'polya_approx', 'default_z', 'truncation_error_bound',
           'kronecker_vector', 'partial_sums_for_range', 'polya_vinogradov_bound', 'c_lower_estimate']

DiscriminantLike = typing.Union[int, FundamentalDiscriminant]

_TWO_TABLE = np.array(KRONECKER_TWO, dtype=np.int8)
_LEGENDRE_TABLE_MAX = 2 ** 16


class CharTable(FrozenModel):
    """
    Values of the character ``chi_d`` on ``0 <= n <= limit``.

    ``values[n]`` is ``chi_d(n)``, with ``values[0] = 0``. Use :py:meth:`tolist`
    to get the values for ``1 <= n <= limit``.
    """
    d: FundamentalDiscriminant
    limit: int = pydantic.Field(ge=0)
    values: locked_array

    @pydantic.model_validator(mode='after')
    def _check_size(self):
        if self.values.shape != (self.limit + 1, ):
            raise ValueError(f'values should have {self.limit + 1} entries, got {self.values.shape}')
        return self

    def __getitem__(self, n):
        return int(self.values[n])

    def tolist(self) -> typing.List[int]:
        return self.values[1:].tolist()

    def sum(self) -> int:
        return int(np.sum(self.values, dtype=np.int64))


class PolyaApprox(FrozenModel):
    """
    Truncated Fourier approximation of ``sum_{n <= alpha |d|} chi_d(n)``.

    ``c_part`` and ``s_part`` are C_d(z) and S_d(z) for ``x = 1/alpha``; exactly one of them
    is non-zero, depending on the parity of ``d``.
    """
    d: FundamentalDiscriminant
    alpha: float = pydantic.Field(gt=0, lt=1)
    z: float = pydantic.Field(gt=0)
    c_part: float
    s_part: float
    approx: float
    err_bound: float = pydantic.Field(ge=0)
    kappa: float = pydantic.Field(gt=0)

    @property
    def length(self) -> float:
        """
        Length ``alpha |d|`` of the approximated sum.
        """
        return self.alpha * self.d.q


def _prime_values(d: int, primes: np.ndarray) -> np.ndarray:
    """
    Kronecker symbol (d/p) for an array of primes.
    """
    out = np.zeros(primes.size, dtype=np.int8)
    is_two = primes == 2
    out[is_two] = _TWO_TABLE[d & 7]
    odd = primes[~is_two].astype(np.int64)
    if odd.size > 0:
        r = powmod_array(d % odd, (odd - 1) // 2, odd)
        v = np.where(r == 1, 1, np.where(r == 0, 0, -1)).astype(np.int8)
        out[~is_two] = v
    return out


def _sieve_values(d: int, limit: int, table: SpfTable) -> np.ndarray:
    """
    chi_d(n) for 0 <= n <= limit, by complete multiplicativity over the SPF table.
    """
    values = np.zeros(limit + 1, dtype=np.int8)
    if limit == 0:
        return values
    values[1] = 1
    idx = np.arange(limit + 1, dtype=np.int64)
    spf = table.spf[:limit + 1].astype(np.int64)
    is_p = (idx >= 2) & (spf == idx)
    primes = idx[is_p]
    values[primes] = _prime_values(d, primes)

    filled = is_p.copy()
    filled[:2] = True
    composites = idx[~filled]
    while composites.size > 0:
        cof = composites // spf[composites]
        ready = filled[cof]
        n = composites[ready]
        values[n] = values[spf[n]] * values[cof[ready]]
        filled[n] = True
        composites = composites[~ready]
    return values


def char_table(d: DiscriminantLike, L: int, table: typing.Optional[SpfTable] = None,
               cap: typing.Optional[int] = None) -> CharTable:
    """
    Table of ``chi_d(n)`` for ``n <= L``.

    One symbol evaluation per prime up to ``min(L, |d|)``, composites by multiplicativity
    over a smallest prime factor table, the rest by periodicity.

    :param d: Fundamental discriminant
    :param L: Table length
    :type L: int
    :param table: SPF table to use (default: shared table)
    :param cap: Maximum table length (default from configuration, ``sieve_cap``)
    :rtype: CharTable
    """
    d = as_discriminant(d)
    if cap is None:
        cap = get_default('sieve_cap')
    L = int(L)
    if L < 0:
        raise DomainError(f'Table length should be non-negative, got {L}')
    if L > cap:
        raise ResourceError(f'Character table length {L} is above the configured cap {cap}')

    period = min(L, d.q)
    if table is None or table.limit < period:
        table = shared_spf_table(period)
    values = _sieve_values(d.d, period, table)
    if L > period:
        one_period = values[1:]  # n = 1, ..., q
        reps = -(-L // d.q)
        values = np.concatenate([[np.int8(0)], np.tile(one_period, reps)[:L]]).astype(np.int8)
    return CharTable(d=d, limit=L, values=values)


def partial_sum(d: DiscriminantLike, x: float) -> int:
    """
    Exact value of ``sum_{n <= x} chi_d(n)``.

    Full periods contribute zero, only ``floor(x) mod |d|`` terms are evaluated.
    """
    d = as_discriminant(d)
    n = math.floor(x)
    if n <= 0:
        return 0
    return char_table(d, n % d.q).sum()


def gauss_sum(d: DiscriminantLike) -> complex:
    """
    Gauss sum ``sum_{n <= |d|} chi_d(n) e(n/|d|)`` by direct summation.
    """
    d = as_discriminant(d)
    chi = char_table(d, d.q).values[1:].astype(np.float64)
    angle = 2 * np.pi * np.arange(1, d.q + 1) / d.q
    return complex(compensated_sum(chi * np.cos(angle)), compensated_sum(chi * np.sin(angle)))


def gauss_sum_closed_form(d: DiscriminantLike) -> complex:
    """
    ``sqrt(d)`` for ``d > 0`` and ``i sqrt(|d|)`` for ``d < 0``.
    """
    d = as_discriminant(d)
    if d.d > 0:
        return complex(math.sqrt(d.d), 0.)
    return complex(0., math.sqrt(d.q))


def _folded_sum(d: FundamentalDiscriminant, z: float, x: float, kernel) -> float:
    M = math.floor(z)
    if M < 1:
        return 0.
    chi = char_table(d, M).values[1:].astype(np.float64)
    m = np.arange(1, M + 1, dtype=np.float64)
    return 2 * compensated_sum(chi * kernel(m, x))


def _c_kernel(m, x):
    # 1 - cos(2 pi m / x) = 2 sin^2(pi m / x)
    return 2 * np.sin(np.pi * m / x) ** 2 / m


def _s_kernel(m, x):
    return np.sin(2 * np.pi * m / x) / m


def c_component(d: DiscriminantLike, z: float, x: float) -> float:
    """
    ``C_d(z) = sum_{1 <= |m| <= z} chi_d(m) (1 - cos(2 pi m / x)) / m``.

    Terms for ``m`` and ``-m`` cancel for even characters (``d > 0``), the result is then 0.
    For odd characters they are equal and the sum is twice the sum over positive ``m``.
    """
    d = as_discriminant(d)
    if x <= 0:
        raise DomainError(f'x should be positive, got {x}')
    if d.is_even:
        return 0.
    return _folded_sum(d, z, x, _c_kernel)


def s_component(d: DiscriminantLike, z: float, x: float) -> float:
    """
    ``S_d(z) = sum_{1 <= |m| <= z} chi_d(m) sin(2 pi m / x) / m``, zero for odd characters.
    """
    d = as_discriminant(d)
    if x <= 0:
        raise DomainError(f'x should be positive, got {x}')
    if not d.is_even:
        return 0.
    return _folded_sum(d, z, x, _s_kernel)


def default_z(d: DiscriminantLike, x: float) -> float:
    """
    Default truncation length ``sqrt(|d| x) log |d|``.

    :param d: Discriminant (an integer, validation is not required here)
    :param x: Positive scale parameter
    """
    q = abs(int(d))
    if x <= 0:
        raise DomainError(f'x should be positive, got {x}')
    if q < 1:
        raise DomainError('d should be non-zero')
    return math.sqrt(q * x) * math.log(q)


def truncation_error_bound(d: DiscriminantLike, z: float, kappa: typing.Optional[float] = None) -> float:
    """
    Error bound ``kappa (1 + |d| log |d| / z)`` of the truncated expansion.
    """
    if kappa is None:
        kappa = get_default('kappa')
    q = abs(int(d))
    return kappa * (1 + q * math.log(q) / z)


def polya_approx(d: DiscriminantLike, alpha: float, z: typing.Optional[float] = None,
                 kappa: typing.Optional[float] = None) -> PolyaApprox:
    """
    Approximate ``sum_{n <= alpha |d|} chi_d(n)`` by the truncated expansion

    ``Re[ tau(chi_d) / (2 pi i) sum_{1 <= |m| <= z} chi_d(m) (1 - e(-alpha m)) / m ]``

    which reduces to ``sqrt(|d|) C_d(z) / (2 pi)`` for odd characters and to
    ``sqrt(d) S_d(z) / (2 pi)`` for even ones (with ``x = 1 / alpha``).

    :param d: Fundamental discriminant
    :param alpha: Relative length of the sum, in (0, 1)
    :type alpha: float
    :param z: Truncation length (default: ``default_z(d, 1/alpha)``)
    :type z: float
    :param kappa: Constant of the error bound (default from configuration)
    :type kappa: float
    :returns: The approximation and its error bound
    :rtype: PolyaApprox
    """
    d = as_discriminant(d)
    if not 0 < alpha < 1:
        raise DomainError(f'alpha should be in (0, 1), got {alpha}')
    if kappa is None:
        kappa = get_default('kappa')
    x = 1 / alpha
    if z is None:
        z = default_z(d, x)
    if z <= 0:
        raise DomainError(f'z should be positive, got {z}')

    c_part = c_component(d, z, x)
    s_part = s_component(d, z, x)
    prefactor = math.sqrt(d.q) / (2 * math.pi)
    approx = prefactor * (s_part if d.is_even else c_part)
    return PolyaApprox(d=d, alpha=alpha, z=z, c_part=c_part, s_part=s_part, approx=approx,
                       err_bound=truncation_error_bound(d, z, kappa), kappa=kappa)


def polya_vinogradov_bound(d: DiscriminantLike) -> float:
    """
    The uniform bound ``sqrt(|d|) log |d|`` on all partial sums of ``chi_d``.
    """
    q = abs(int(d))
    return math.sqrt(q) * math.log(q)


def c_lower_estimate(d: DiscriminantLike, x: float, z: typing.Optional[float] = None) -> float:
    """
    ``sqrt(|d|) |C_d(z)| / (2 pi)``, the estimate of ``|sum_{n <= |d|/x} chi_d(n)|`` carried by
    the cosine component (zero for even characters).
    """
    d = as_discriminant(d)
    if z is None:
        z = default_z(d, x)
    return math.sqrt(d.q) * abs(c_component(d, z, x)) / (2 * math.pi)


class CharacterColumns:
    """
    Values ``chi_d(n)`` for a fixed array of discriminants and varying ``n``.

    ``column(n)`` is the int8 array of ``chi_d(n)`` over the discriminants, computed from
    the factorization of ``n`` (Legendre tables for small primes, Euler's criterion
    for large ones). Columns of the first primes are cached.

    :param ds: Array of fundamental discriminants (not validated)
    :param cached_primes: Columns of primes below this value are kept in memory
    """

    def __init__(self, ds, cached_primes: int = 128):
        self.ds = np.asarray(ds, dtype=np.int64)
        self.cached_primes = cached_primes
        self._cache = {}

    def __len__(self):
        return self.ds.size

    def prime_column(self, p: int) -> np.ndarray:
        p = int(p)
        if p in self._cache:
            return self._cache[p]
        if p == 2:
            col = _TWO_TABLE[self.ds & 7]
        elif p < _LEGENDRE_TABLE_MAX:
            col = legendre_table(p)[self.ds % p]
        else:
            r = powmod_array(self.ds % p, (p - 1) // 2, p)
            col = np.where(r == 1, 1, np.where(r == 0, 0, -1)).astype(np.int8)
        if p < self.cached_primes:
            self._cache[p] = col
        return col

    def column(self, n: int) -> np.ndarray:
        """
        ``chi_d(n)`` for all discriminants (int8 array).
        """
        n = int(n)
        if n < 1:
            raise DomainError(f'Character columns are defined for n >= 1, got {n}')
        col = np.ones(self.ds.size, dtype=np.int8)
        for p, e in factorize(n).factors:
            pc = self.prime_column(p)
            if e % 2 == 1:
                col = col * pc
            else:
                col = col * (pc * pc)
        return col


def kronecker_vector(ds, n: int) -> np.ndarray:
    """
    ``chi_d(n)`` for an array of discriminants ``ds``.
    """
    return CharacterColumns(ds).column(n)


def partial_sums_for_range(ds, lengths) -> np.ndarray:
    """
    Exact ``sum_{n <= lengths[i]} chi_{ds[i]}(n)`` for arrays of discriminants and lengths.

    :rtype: int64 numpy array
    """
    ds = np.asarray(ds, dtype=np.int64)
    lengths = np.floor(np.asarray(lengths, dtype=np.float64)).astype(np.int64)
    if ds.shape != lengths.shape:
        raise DomainError('ds and lengths should have the same shape')
    out = np.zeros(ds.size, dtype=np.int64)
    if ds.size == 0:
        return out
    columns = CharacterColumns(ds)
    for n in range(1, int(lengths.max()) + 1):
        active = lengths >= n
        out[active] += columns.column(n)[active]
    return out

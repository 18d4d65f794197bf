# -*- coding: utf-8 -*-

"""
Resonance computation over a dyadic range of fundamental discriminants: moments of the
resonator, their quotient, averages of quadratic characters, the predicted size of the
largest character sums and the extremal scan.
"""

import typing
import math
import functools
import logging

import numpy as np
import pandas as pd
import pydantic

from quadres._base_classes import FrozenModel, BaseTable
from quadres._constants import ZETA2, CONTROL_FRACTION
from quadres._exceptions import DomainError
from quadres._utils import get_default, partition, map_blocks, KahanAccumulator, compensated_sum, \
    exact_weighted_sum_le
from quadres.arith import euler_factor_product, factorize, f_bound, g_bound, prime_euler_product
from quadres.charsum import CharacterColumns, partial_sums_for_range, kronecker_vector
from quadres.discriminant import FundamentalDiscriminant, fundamental_array, count_fundamental, \
    enumerate_fundamental_array, DiscriminantRange
from quadres.resonator import ResonatorSet, resonator_values, gcd_sum_tail

__all__ = ['ResonanceMoments', 'CharacterAverage', 'BoundParams', 'ScanRecord', 'ScanResult',
           'range_ratio', 'resonator_size', 'cd_table', 'moment_m1', 'moment_m2', 'resonance_quotient',
           'i2_lower_bound', 'lemma22_average', 'predicted_bound', 'scan_extremal']


class ResonanceMoments(FrozenModel):
    """
    Moments of the resonator over ``X < |d| <= 2X``:

    - ``m1_emp``: sum of ``R_d**2``
    - ``m1_main``: ``(X / zeta(2)) sum_{m} prod_{p | m} p/(p+1)``, rescaled by ``range_ratio``
    - ``m2_emp``: sum of ``R_d**2 C_d(z)**2``
    - ``quotient``: ``m2_emp / m1_emp``, bounded above by ``max_cd2``, the largest ``C_d(z)**2``
      (``pivot_holds`` is the exact check of this inequality)
    - ``i2_lower`` and ``mainterm_lower``: the lower bound of the main term of the quotient
    - ``gcd_restricted``: GCD sum over the pairs with ``[m, n] / (m, n) <= x**2 / 8``
    """
    X: int = pydantic.Field(ge=2)
    x: float = pydantic.Field(gt=0)
    set: ResonatorSet
    count: int = pydantic.Field(ge=0)
    m1_emp: float = pydantic.Field(ge=0)
    m1_main: float = pydantic.Field(ge=0)
    m2_emp: float = pydantic.Field(ge=0)
    quotient: float = pydantic.Field(ge=0)
    max_cd2: float = pydantic.Field(ge=0)
    pivot_holds: bool
    range_ratio: float
    i2_lower: float
    mainterm_lower: float
    gcd_restricted: float
    z_policy: typing.Dict[str, typing.Any] = {}

    @property
    def m1_ratio(self) -> float:
        """
        Empirical over main-term first moment.
        """
        return self.m1_emp / self.m1_main


class CharacterAverage(FrozenModel):
    """
    Sum of ``chi_d(n)`` over the fundamental discriminants with ``|d| <= X``, compared with
    its main term ``(X / zeta(2)) prod_{p | n} p/(p+1)`` (square ``n``) or 0 (other ``n``).

    ``error_scale`` is ``X**(1/2+eps) f(n0) g(n1)``.
    """
    n: int = pydantic.Field(ge=1)
    X: int = pydantic.Field(ge=2)
    eps: float
    count: int
    empirical_sum: int
    main_term: float
    residual: float
    error_scale: float

    @property
    def relative_residual(self) -> float:
        return self.residual / self.X


class BoundParams(FrozenModel):
    """
    Evaluation of ``sqrt(X/x) exp(sqrt(L log3 / log2))`` with ``L = log(sqrt(X)/x)``,
    ``log2 = log L`` and ``log3 = log log2``.

    ``log3`` is floored at 1: unless ``log3 > 1`` (``sqrt(X)/x > e**(e**e)``) the value 1
    is used and ``regime_flag`` is ``clamped``.
    """
    X: float
    x: float
    L: float
    log2: float
    log3: float
    bound: float = pydantic.Field(gt=0)
    regime_flag: typing.Literal['asymptotic', 'clamped']


class ScanRecord(FrozenModel):
    """
    Character sum ``T(d) = sum_{n <= |d|/x} chi_d(n)`` of one discriminant.
    """
    d: FundamentalDiscriminant
    x: float
    sum_value: int
    normalized: float = pydantic.Field(ge=0)
    resonator_weight: typing.Optional[float] = None
    control: bool = False

    @property
    def d_int(self) -> int:
        return self.d.d


class ScanResult(BaseTable, FrozenModel):
    """
    Records of an extremal scan, sorted by decreasing normalized value (then ``|d|``, then ``d``).
    """
    _table_columns: typing.ClassVar[typing.Dict[str, str]] = {
        'd': 'd_int', 'x': 'x', 'sum': 'sum_value', 'normalized': 'normalized', 'r_weight': 'resonator_weight'}

    X: int
    x: float
    strategy: typing.Literal['full', 'guided']
    K: typing.Optional[int] = None
    population: int
    records: typing.List[ScanRecord]
    bound: typing.Optional[BoundParams] = None

    def _table_rows(self):
        return self.records

    def __len__(self):
        return len(self.records)

    @property
    def top(self) -> typing.Optional[ScanRecord]:
        return self.records[0] if len(self.records) > 0 else None

    @property
    def normalized_values(self) -> np.ndarray:
        return np.array([r.normalized for r in self.records], dtype=np.float64)

    @property
    def control_records(self) -> typing.List[ScanRecord]:
        return [r for r in self.records if r.control]


def range_ratio(X: int) -> float:
    """
    Number of fundamental discriminants with ``X < |d| <= 2X`` divided by the number
    with ``|d| <= X``.
    """
    below = count_fundamental(0, X)
    if below == 0:
        raise DomainError(f'No fundamental discriminant with |d| <= {X}')
    return count_fundamental(X, 2 * X) / below


def resonator_size(X: float, x: float, delta: typing.Optional[float] = None) -> int:
    """
    Size ``floor(X**(1/2 - delta) / x)`` of the resonator set.
    """
    if delta is None:
        delta = get_default('delta')
    return math.floor(X ** (0.5 - delta) / x)


def _cd_block(ds, M, x, rows):
    start, stop = rows
    ds, M = ds[start:stop], M[start:stop]
    acc = KahanAccumulator(ds.size)
    if ds.size == 0 or M.max() < 1:
        return acc.total
    columns = CharacterColumns(ds)
    for m in range(1, int(M.max()) + 1):
        kernel = 2 * math.sin(math.pi * m / x) ** 2 / m
        active = M >= m
        acc.add(np.where(active, columns.column(m) * kernel, 0.))
    return 2 * acc.total


def cd_table(X: int, x: float, z_cap: typing.Optional[int] = None, threads: typing.Optional[int] = None,
             ds: typing.Optional[np.ndarray] = None) -> pd.DataFrame:
    """
    ``C_d(z)`` for every fundamental discriminant of ``X < |d| <= 2X``, with
    ``z = sqrt(|d| x) log |d|`` capped at ``z_cap``.

    The table does not depend on the resonator set and can be shared between calls
    of :py:func:`resonance_quotient`.

    :returns: DataFrame with columns ``d``, ``z``, ``z_used`` and ``c_value`` (0 for ``d > 0``)
    """
    if z_cap is None:
        z_cap = get_default('z_cap')
    if threads is None:
        threads = get_default('threads')
    if ds is None:
        ds = enumerate_fundamental_array(DiscriminantRange(X=X))
    ds = np.asarray(ds, dtype=np.int64)
    q = np.abs(ds).astype(np.float64)
    z = np.sqrt(q * x) * np.log(q)
    z_used = np.minimum(z, z_cap)
    n_capped = int(np.sum((z > z_cap) & (ds < 0)))
    if n_capped > 0:
        logging.warning(f'Truncation length capped at {z_cap} for {n_capped} discriminants')

    c_value = np.zeros(ds.size, dtype=np.float64)
    neg = np.flatnonzero(ds < 0)
    if neg.size > 0:
        dneg = ds[neg]
        M = np.floor(z_used[neg]).astype(np.int64)
        order = np.argsort(M, kind='stable')
        blocks = partition(order.size, get_default('block_size'))
        results = map_blocks(functools.partial(_cd_block, dneg[order], M[order], x), blocks, threads=threads)
        values = np.empty(order.size, dtype=np.float64)
        values[order] = np.concatenate(results)
        c_value[neg] = values
    return pd.DataFrame({'d': ds, 'z': z, 'z_used': z_used, 'c_value': c_value})


def moment_m1(rset: ResonatorSet, X: int, ds: typing.Optional[np.ndarray] = None) -> typing.Tuple[float, float]:
    """
    First moment of the resonator.

    :returns: ``(m1_emp, m1_main)``. The main term is rescaled from ``|d| <= X``
              to ``X < |d| <= 2X`` by :py:func:`range_ratio`.
    """
    if X < 2:
        raise DomainError(f'X should be at least 2, got {X}')
    if ds is None:
        ds = enumerate_fundamental_array(DiscriminantRange(X=X))
    r = resonator_values(rset, ds)
    m1_emp = float(np.sum(r * r))
    weights = math.fsum(euler_factor_product(m) for m in rset.elements)
    m1_main = X / ZETA2 * weights * range_ratio(X)
    return m1_emp, m1_main


def moment_m2(rset: ResonatorSet, X: int, x: float, z_cap: typing.Optional[int] = None,
              threads: typing.Optional[int] = None, cd: typing.Optional[pd.DataFrame] = None) -> float:
    """
    Second moment ``sum R_d**2 C_d(z)**2``; only ``d < 0`` contribute.
    """
    if cd is None:
        cd = cd_table(X, x, z_cap=z_cap, threads=threads)
    r = resonator_values(rset, cd['d'].to_numpy())
    c = cd['c_value'].to_numpy()
    return compensated_sum((r * r) * c ** 2)


def _inner_sum_total(elements: np.ndarray, kmax: int) -> int:
    total = 0
    for start, stop in partition(elements.size, 256):
        m = elements[start:stop, None]
        n = elements[None, :]
        g = np.gcd(m, n)
        a, b = n // g, m // g
        lmax = kmax // np.maximum(a, b)
        total += int(np.sum(a * b * lmax * (lmax + 1) * (2 * lmax + 1) // 6))
    return total


def i2_lower_bound(rset: ResonatorSet, x: float, X: int) -> float:
    """
    ``prod_{p <= X} p/(p+1) * sum_{m, n} sum_{k, l <= x/2, mk = nl} k l``, a lower bound
    of the main term sum restricted to ``m n k l`` square.
    """
    return prime_euler_product(X) * _inner_sum_total(rset.array, math.floor(x / 2))


def resonance_quotient(rset: ResonatorSet, X: int, x: float, z_cap: typing.Optional[int] = None,
                       threads: typing.Optional[int] = None,
                       cd: typing.Optional[pd.DataFrame] = None) -> ResonanceMoments:
    """
    Full resonance computation for a resonator set.

    :param rset: The resonator set
    :type rset: ResonatorSet
    :param X: Range parameter, discriminants with ``X < |d| <= 2X``
    :type X: int
    :param x: Sum length parameter, sums of length ``|d|/x``
    :type x: float
    :param z_cap: Maximum truncation length (default from configuration)
    :param threads: Number of worker processes (default from configuration)
    :param cd: Precomputed :py:func:`cd_table` for the same ``X`` and ``x``
    :rtype: ResonanceMoments
    """
    if z_cap is None:
        z_cap = get_default('z_cap')
    if cd is None:
        cd = cd_table(X, x, z_cap=z_cap, threads=threads)
    ds = cd['d'].to_numpy()
    if ds.size == 0:
        raise DomainError(f'No fundamental discriminant in ({X}, {2 * X}]')

    r = resonator_values(rset, ds)
    r2 = r * r
    c2 = cd['c_value'].to_numpy() ** 2
    m1_emp = float(np.sum(r2))
    if m1_emp == 0:
        raise DomainError('The resonator vanishes on the whole range')
    ratio = range_ratio(X)
    m1_main = X / ZETA2 * math.fsum(euler_factor_product(m) for m in rset.elements) * ratio
    m2_emp = compensated_sum(r2 * c2)
    max_cd2 = float(c2.max())

    i2 = i2_lower_bound(rset, x, X)
    z = cd['z'].to_numpy()
    z_policy = dict(rule='sqrt(|d| x) log|d|', cap=z_cap,
                    capped=int(np.sum((z > z_cap) & (ds < 0))),
                    z_min=float(z.min()), z_max=float(z.max()))
    tail = gcd_sum_tail(rset, x ** 2 / 8, threads=threads)
    return ResonanceMoments(
        X=X, x=x, set=rset, count=int(ds.size),
        m1_emp=m1_emp, m1_main=m1_main, m2_emp=m2_emp, quotient=m2_emp / m1_emp,
        max_cd2=max_cd2, pivot_holds=exact_weighted_sum_le(r2, c2, max_cd2),
        range_ratio=ratio, i2_lower=i2, mainterm_lower=i2 / (rset.size * x ** 4),
        gcd_restricted=tail.total - tail.tail, z_policy=z_policy)


def lemma22_average(n: int, X: int, eps: typing.Optional[float] = None) -> CharacterAverage:
    """
    Average of ``chi_d(n)`` over the fundamental discriminants with ``|d| <= X``.

    :param n: Positive integer
    :param X: Range bound
    :param eps: Exponent of the error scale (default from configuration, ``epsilon``)
    :rtype: CharacterAverage
    """
    if eps is None:
        eps = get_default('epsilon')
    if n < 1 or X < 2:
        raise DomainError(f'Expected n >= 1 and X >= 2, got n={n}, X={X}')
    ds = fundamental_array(0, X)
    empirical = int(np.sum(kronecker_vector(ds, n), dtype=np.int64))
    fi = factorize(n)
    main = X / ZETA2 * euler_factor_product(n) if fi.is_square else 0.
    return CharacterAverage(
        n=n, X=X, eps=eps, count=int(ds.size), empirical_sum=empirical, main_term=main,
        residual=empirical - main,
        error_scale=X ** (0.5 + eps) * f_bound(fi.n0, eps) * g_bound(fi.n1, eps))


def predicted_bound(X: float, x: float) -> BoundParams:
    """
    The size ``sqrt(X/x) exp(sqrt(log(sqrt(X)/x) log3 / log2))`` of the largest sums,
    without the ``1 + o(1)`` factor in the exponent.

    :raises DomainError: if ``sqrt(X)/x <= e``
    """
    ratio = math.sqrt(X) / x
    if ratio <= math.e:
        raise DomainError(f'sqrt(X)/x = {ratio:.6g} should be larger than e')
    L = math.log(ratio)
    log2 = math.log(L)
    log3 = math.log(log2)
    if log3 > 1:
        regime, used = 'asymptotic', log3
    else:
        regime, used = 'clamped', 1.
    bound = math.sqrt(X / x) * math.exp(math.sqrt(L * used / log2))
    return BoundParams(X=X, x=x, L=L, log2=log2, log3=log3, bound=bound, regime_flag=regime)


def _scan_block(ds, lengths, rows):
    start, stop = rows
    return partial_sums_for_range(ds[start:stop], lengths[start:stop])


def scan_extremal(X: int, x: float, strategy: str = 'full', K: typing.Optional[int] = None,
                  rset: typing.Optional[ResonatorSet] = None, seed: typing.Optional[int] = None,
                  threads: typing.Optional[int] = None) -> ScanResult:
    """
    Search the discriminants of ``X < |d| <= 2X`` for large ``|T(d)| / sqrt(|d|/x)``.

    - ``full``: every discriminant of the range
    - ``guided``: the ``K`` discriminants with largest ``R_d**2`` (stable order), plus a
      seeded uniform control sample of 1% of the range

    :param X: Range parameter
    :param x: Sums of length ``|d|/x``
    :param strategy: ``full`` or ``guided``
    :param K: Number of discriminants of the guided scan (clamped to the range population)
    :param rset: Resonator set (required for the guided scan, optional weights for the full one)
    :param seed: Seed of the control sample (default from configuration)
    :param threads: Number of worker processes (default from configuration)
    :rtype: ScanResult
    """
    if strategy not in ('full', 'guided'):
        raise DomainError(f'Unknown scan strategy {strategy}')
    if x <= 0:
        raise DomainError(f'x should be positive, got {x}')
    if seed is None:
        seed = get_default('seed')
    if threads is None:
        threads = get_default('threads')
    ds = enumerate_fundamental_array(DiscriminantRange(X=X))
    population = int(ds.size)
    weights = None
    if rset is not None:
        r = resonator_values(rset, ds)
        weights = (r * r).astype(np.float64)

    control = np.zeros(population, dtype=bool)
    if strategy == 'guided':
        if rset is None:
            raise DomainError('A resonator set is required for a resonance-guided scan')
        if K is None:
            raise DomainError('K is required for a resonance-guided scan')
        if K > population:
            logging.warning(f'K={K} larger than the {population} discriminants of the range, clamped')
            K = population
        order = np.argsort(-weights, kind='stable')
        selected = np.zeros(population, dtype=bool)
        selected[order[:K]] = True
        rest = np.flatnonzero(~selected)
        n_control = min(rest.size, math.ceil(CONTROL_FRACTION * population))
        if n_control > 0:
            rng = np.random.default_rng(seed)
            control[rng.choice(rest, size=n_control, replace=False)] = True
        idx = np.flatnonzero(selected | control)
    else:
        idx = np.arange(population)

    sel = ds[idx]
    lengths = np.abs(sel) / x
    blocks = partition(sel.size, get_default('block_size'))
    results = map_blocks(functools.partial(_scan_block, sel, lengths), blocks, threads=threads)
    sums = np.concatenate(results) if len(results) > 0 else np.zeros(0, dtype=np.int64)
    normalized = np.abs(sums) / np.sqrt(lengths)

    order = np.lexsort((sel, np.abs(sel), -normalized))
    records = [
        ScanRecord.model_construct(
            d=FundamentalDiscriminant.model_construct(d=int(sel[i]), parity=1 if sel[i] > 0 else -1),
            x=x, sum_value=int(sums[i]), normalized=float(normalized[i]),
            resonator_weight=None if weights is None else float(weights[idx[i]]),
            control=bool(control[idx[i]]))
        for i in order]

    try:
        bound = predicted_bound(X, x)
    except DomainError:
        bound = None
    return ScanResult(X=X, x=x, strategy=strategy, K=K, population=population, records=records, bound=bound)

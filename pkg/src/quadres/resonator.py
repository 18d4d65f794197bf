# -*- coding: utf-8 -*-

"""
Resonator sets: construction of sets of squarefree friable integers with large GCD sums,
GCD sums and their tails, resonator values and the inner-sum pair parametrization.
"""

import typing
import math
import functools
import logging

import numpy as np
import pydantic

from quadres._base_classes import FrozenModel
from quadres._exceptions import ConstructionError, DomainError, ResourceError
from quadres._utils import get_default, partition, map_blocks
from quadres.arith import factorize, kronecker, primes_up_to, is_prime
from quadres.charsum import CharacterColumns
from quadres.discriminant import FundamentalDiscriminant, as_discriminant

__all__ = ['ResonatorSet', 'GcdSumReport', 'TailBound',
           'gcd_sum', 'gcd_sum_tail', 'rankin_tail_bound',
           'default_friability', 'friable_squarefree', 'candidate_pool',
           'build_structured_set', 'build_greedy_set', 'build_random_set',
           'resonator_value', 'resonator_values', 'inner_sum_pairs', 'inner_sum_pairs_bruteforce']

_ROW_BLOCK = 256
_ENUMERATION_BUDGET = 2 ** 22


class ResonatorSet(FrozenModel):
    """
    A set of distinct squarefree integers lying in a window ``[T, 2T]``.

    ``size`` and ``friability`` (largest prime factor over the elements) are computed
    when not provided, and checked otherwise. ``y`` is the friability target the set
    was built with, and ``method`` the construction used, both informative.
    """
    elements: typing.Tuple[int, ...]
    size: int = pydantic.Field(ge=1)
    friability: int = pydantic.Field(ge=1)
    y: typing.Optional[int] = None
    method: typing.Optional[typing.Literal['structured', 'greedy', 'random', 'file', 'manual']] = None

    @pydantic.model_validator(mode='before')
    @classmethod
    def _fill(cls, data):
        if isinstance(data, dict) and 'elements' in data:
            data = dict(data)
            elements = tuple(sorted(int(e) for e in data['elements']))
            data['elements'] = elements
            if 'size' not in data:
                data['size'] = len(elements)
            if 'friability' not in data and len(elements) > 0:
                data['friability'] = max(factorize(e).p_plus for e in elements)
        return data

    @pydantic.model_validator(mode='after')
    def _check_invariants(self):
        e = self.elements
        if len(e) == 0:
            raise ValueError('A resonator set should not be empty')
        if len(set(e)) != len(e):
            raise ValueError('Elements of a resonator set should be distinct')
        if self.size != len(e):
            raise ValueError(f'size {self.size} differs from the number of elements {len(e)}')
        if e[0] < 1:
            raise ValueError('Elements of a resonator set should be positive integers')
        if e[-1] > 2 * e[0]:
            raise ValueError(f'max {e[-1]} is larger than 2 * min = {2 * e[0]}')
        fi = [factorize(m) for m in e]
        not_sf = [f.n for f in fi if f.mu == 0]
        if len(not_sf) > 0:
            raise ValueError(f'Elements should be squarefree, got {not_sf[:5]}')
        friability = max(f.p_plus for f in fi)
        if self.friability != friability:
            raise ValueError(f'Recorded friability {self.friability} differs from the true value {friability}')
        return self

    @property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    @property
    def N(self) -> int:
        return self.size

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.elements)


class GcdSumReport(FrozenModel):
    """
    GCD sum ``sum_{m, n} sqrt((m, n) / [m, n])`` over a resonator set and its tail, the part
    of the off-diagonal pairs with ``[m, n] / (m, n) > threshold``.
    """
    set: ResonatorSet
    total: float
    tail: float = pydantic.Field(ge=0)
    threshold: float = pydantic.Field(gt=0)

    @pydantic.model_validator(mode='after')
    def _check(self):
        tol = 1e-9 * max(1., self.total)
        if self.total < self.set.size - tol:
            raise ValueError(f'GCD sum {self.total} lower than the diagonal contribution {self.set.size}')
        if self.tail > self.total + tol:
            raise ValueError(f'Tail {self.tail} larger than the total {self.total}')
        return self

    @property
    def normalized(self) -> float:
        """
        GCD sum divided by the size of the set.
        """
        return self.total / self.set.size


class TailBound(FrozenModel):
    """
    Tail of the GCD sum and its Rankin-type upper bounds.

    ``tail <= rankin_sum <= euler_bound`` where
    ``rankin_sum = T**-eta * sum_{m, n} ((m, n) / [m, n])**(1/2 - eta)`` and
    ``euler_bound = T**-eta * N * prod_{p <= y} (1 + p**-(1/2 - eta))``.
    """
    threshold: float
    eta: float
    tail: float
    rankin_sum: float
    euler_bound: float


def _pair_block(elements, threshold, rows):
    start, stop = rows
    a = elements[start:stop, None]
    b = elements[None, :]
    g = np.gcd(a, b)
    ratio = (a // g) * (b // g)
    w = 1 / np.sqrt(ratio.astype(np.float64))
    total = math.fsum(w.ravel().tolist())
    tail_mask = (ratio > threshold) & (ratio > 1)
    tail = math.fsum(w[tail_mask].tolist())
    return total, tail


def gcd_sum(rset: ResonatorSet, threshold: float = math.inf, threads: typing.Optional[int] = None) -> GcdSumReport:
    """
    GCD sum of a resonator set, exact pairwise double sum (diagonal pairs contribute 1 each).

    With a finite threshold, the tail over off-diagonal pairs with ``[m, n] / (m, n) > threshold``
    is also computed. Row blocks may be processed by worker processes, the reduction is
    done in block order.

    :param rset: The resonator set
    :type rset: ResonatorSet
    :param threshold: Tail threshold (infinite: tail = 0)
    :type threshold: float
    :param threads: Number of worker processes (default from configuration)
    :rtype: GcdSumReport
    """
    if threshold <= 0:
        raise DomainError(f'Threshold should be positive, got {threshold}')
    if threads is None:
        threads = get_default('threads')
    elements = rset.array
    blocks = partition(elements.size, _ROW_BLOCK)
    results = map_blocks(functools.partial(_pair_block, elements, threshold), blocks, threads=threads)
    total = math.fsum(r[0] for r in results)
    tail = math.fsum(r[1] for r in results)
    return GcdSumReport(set=rset, total=total, tail=tail, threshold=threshold)


def gcd_sum_tail(rset: ResonatorSet, threshold: float, threads: typing.Optional[int] = None) -> GcdSumReport:
    """
    GCD sum restricted to the pairs with ``[m, n] / (m, n) > threshold``.

    The diagonal (ratio 1) is never part of the tail, so that the tail tends to
    ``total - N`` when the threshold tends to 0.
    """
    return gcd_sum(rset, threshold=threshold, threads=threads)


def rankin_tail_bound(rset: ResonatorSet, threshold: float, eta: typing.Optional[float] = None,
                      delta: typing.Optional[float] = None) -> TailBound:
    """
    Bound the tail of the GCD sum with Rankin's trick.

    :param rset: The resonator set
    :param threshold: Tail threshold T
    :param eta: Rankin exponent in (0, 1/2) (default: ``delta / 3``)
    :param delta: Exponent gap used for the default eta (default from configuration)
    :rtype: TailBound
    """
    if eta is None:
        if delta is None:
            delta = get_default('delta')
        eta = delta / 3
    if not 0 < eta < 0.5:
        raise DomainError(f'eta should be in (0, 1/2), got {eta}')
    tail = gcd_sum_tail(rset, threshold).tail

    sigma = 0.5 - eta
    elements = rset.array
    partials = []
    for start, stop in partition(elements.size, _ROW_BLOCK):
        a = elements[start:stop, None]
        g = np.gcd(a, elements[None, :])
        ratio = ((a // g) * (elements[None, :] // g)).astype(np.float64)
        partials.append(math.fsum((ratio ** -sigma).ravel().tolist()))
    scale = threshold ** -eta
    primes = primes_up_to(rset.friability).astype(np.float64)
    product = math.exp(math.fsum(np.log1p(primes ** -sigma).tolist()))
    return TailBound(threshold=threshold, eta=eta, tail=tail,
                     rankin_sum=scale * math.fsum(partials),
                     euler_bound=scale * rset.size * product)


def default_friability(N: int, exponent: typing.Optional[float] = None) -> int:
    """
    Default friability target ``ceil((log N)**exponent)``, at least 2.
    """
    if exponent is None:
        exponent = get_default('friability_exponent')
    if N < 1:
        raise DomainError(f'N should be positive, got {N}')
    return max(2, math.ceil(math.log(N) ** exponent))


def friable_squarefree(y: int, lo: int, hi: int, budget: int = _ENUMERATION_BUDGET) -> typing.Iterator[int]:
    """
    Yield, in increasing order, the squarefree integers of ``[lo, hi]`` whose prime factors
    are all ``<= y``.

    Products of distinct primes are enumerated depth first, pruned at ``hi``.

    :raises ResourceError: if more than ``budget`` integers have to be enumerated
    """
    primes = primes_up_to(y).tolist()
    found = []
    visited = 0
    stack = [(1, 0)]
    while stack:
        value, start = stack.pop()
        visited += 1
        if visited > budget:
            raise ResourceError(f'More than {budget} {y}-friable squarefree integers below {hi}')
        if value >= lo:
            found.append(value)
        for j in range(start, len(primes)):
            nxt = value * primes[j]
            if nxt > hi:
                break
            stack.append((nxt, j + 1))
    yield from sorted(found)


def _window_count_max(y):
    """
    Upper end of the dyadic windows that can contain y-friable squarefree integers.
    """
    logp = math.fsum(math.log2(p) for p in primes_up_to(y).tolist())
    return math.ceil(logp) + 1


def _find_window(count: int, y: int) -> typing.Optional[np.ndarray]:
    """
    Squarefree y-friable integers of the first dyadic window ``[2**t, 2**(t+1)]``
    holding at least ``count`` of them, None if there is no such window.
    """
    for t in range(_window_count_max(y)):
        lo, hi = 2 ** t, 2 ** (t + 1)
        window = np.fromiter(friable_squarefree(y, lo, hi), dtype=np.int64)
        if window.size >= count:
            return window
    return None


def _max_window_count(y: int) -> int:
    best = 0
    for t in range(_window_count_max(y)):
        best = max(best, sum(1 for _ in friable_squarefree(y, 2 ** t, 2 ** (t + 1))))
    return best


def _next_prime(n):
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _select_window(count: int, y: typing.Optional[int], N: int) -> typing.Tuple[int, np.ndarray]:
    """
    Find a window with ``count`` candidates, raising the default friability when needed.
    Returns (y, window).
    """
    if count < 1:
        raise DomainError(f'N should be positive, got {N}')
    if y is not None:
        if y < 2 and count > 1:
            raise ConstructionError(f'N={N} is infeasible with y={y}: only the integer 1 is {y}-friable')
        window = _find_window(count, max(y, 1))
        if window is None:
            available = _max_window_count(max(y, 1))
            raise ConstructionError(
                f'N={N} is infeasible with y={y}: a dyadic window contains at most {available} '
                f'squarefree {y}-friable integers, {count} are needed'
                + (f' (pool_factor={count // N} times N)' if count > N else ''))
        return y, window

    y0 = default_friability(N)
    y = y0
    while True:
        try:
            window = _find_window(count, y)
        except ResourceError as e:
            raise ConstructionError(f'N={N} is infeasible: {e}') from e
        if window is not None:
            break
        y = _next_prime(y)
    if y != y0:
        logging.warning(f'Friability raised from {y0} to {y} to find {count} squarefree friable integers '
                        'in a dyadic window')
    return y, window


def candidate_pool(N: int, y: typing.Optional[int] = None, factor: typing.Optional[int] = None) -> np.ndarray:
    """
    Candidates for the greedy and random constructions: the squarefree y-friable integers
    of the first dyadic window holding at least ``factor * N`` of them.

    :param N: Size of the set to build
    :param y: Friability (default: :py:func:`default_friability`, raised if needed)
    :param factor: Pool size factor (default from configuration, ``pool_factor``)
    """
    if factor is None:
        factor = get_default('pool_factor')
    _, window = _select_window(factor * N, y, N)
    return window


def build_structured_set(N: int, y: typing.Optional[int] = None) -> ResonatorSet:
    """
    The N smallest squarefree y-friable integers of the first dyadic window ``[2**t, 2**(t+1)]``
    containing at least N of them.

    :param N: Size of the set
    :type N: int
    :param y: Friability. By default ``ceil((log N)**1.5)``, raised to the next primes until
              the construction is feasible (with a warning). An explicit infeasible ``y``
              raises a :py:class:`ConstructionError`.
    :type y: int
    :rtype: ResonatorSet
    """
    y, window = _select_window(N, y, N)
    return ResonatorSet(elements=window[:N].tolist(), y=y, method='structured')


def _weight_column(elements, k):
    g = np.gcd(elements, elements[k])
    return 1 / np.sqrt(((elements // g) * (elements[k] // g)).astype(np.float64))


def build_greedy_set(N: int, candidates, y: typing.Optional[int] = None) -> ResonatorSet:
    """
    Greedy maximization of the GCD sum over a set of candidates.

    The set is seeded with the pair of largest weight ``sqrt((m, n) / [m, n])``, then grown
    by the candidate of largest marginal increase of the GCD sum. Ties go to the smaller integer.

    :param N: Size of the set
    :param candidates: Squarefree integers from a window ``[T, 2T]``
    :param y: Friability target recorded in the result
    :rtype: ResonatorSet
    """
    c = np.unique(np.asarray(candidates, dtype=np.int64))
    if c.size < N:
        raise ConstructionError(f'{c.size} candidates are not enough to select N={N} elements')
    if N < 1:
        raise DomainError(f'N should be positive, got {N}')
    if c[0] < 1:
        raise ConstructionError('Candidates should be positive integers')
    not_sf = [int(m) for m in c if factorize(int(m)).mu == 0]
    if len(not_sf) > 0:
        raise ConstructionError(f'Candidates should be squarefree, got {not_sf[:5]}')

    if N == 1:
        return ResonatorSet(elements=[int(c[0])], y=y, method='greedy')

    # Seed: pair of largest weight, first in lexicographic order on ties
    best, best_pair = -1., None
    for start, stop in partition(c.size, _ROW_BLOCK):
        a = c[start:stop, None]
        g = np.gcd(a, c[None, :])
        w = 1 / np.sqrt(((a // g) * (c[None, :] // g)).astype(np.float64))
        rows, cols = np.indices(w.shape)
        w[cols <= rows + start] = -1.
        i, j = np.unravel_index(np.argmax(w), w.shape)
        if w[i, j] > best:
            best, best_pair = w[i, j], (start + i, j)

    chosen = np.zeros(c.size, dtype=bool)
    gain = np.zeros(c.size, dtype=np.float64)
    for k in best_pair:
        chosen[k] = True
        gain += _weight_column(c, k)
    for _ in range(N - 2):
        masked = np.where(chosen, -np.inf, gain)
        k = int(np.argmax(masked))
        chosen[k] = True
        gain += _weight_column(c, k)
    try:
        return ResonatorSet(elements=c[chosen].tolist(), y=y, method='greedy')
    except ValueError as e:
        raise ConstructionError(f'Greedy selection does not form a valid resonator set: {e}') from e


def build_random_set(N: int, y: typing.Optional[int] = None, seed: typing.Optional[int] = None,
                     factor: typing.Optional[int] = None) -> ResonatorSet:
    """
    Seeded uniform random subset of size N of :py:func:`candidate_pool`.

    The pool needs ``factor * N`` candidates in one window, so an explicit ``y`` that is
    enough for :py:func:`build_structured_set` with the same N may be too small here
    (:py:class:`ConstructionError`). Leave ``y`` unset, or use the ``y`` of a random set.
    """
    if seed is None:
        seed = get_default('seed')
    if factor is None:
        factor = get_default('pool_factor')
    y, pool = _select_window(factor * N, y, N)
    rng = np.random.default_rng(seed)
    elements = rng.choice(pool, size=N, replace=False)
    return ResonatorSet(elements=elements.tolist(), y=y, method='random')


def resonator_value(rset: ResonatorSet, d: typing.Union[int, FundamentalDiscriminant]) -> int:
    """
    ``R_d = sum_{m in M} chi_d(m)``.
    """
    d = as_discriminant(d)
    return sum(kronecker(d.d, m) for m in rset.elements)


def resonator_values(rset: ResonatorSet, ds) -> np.ndarray:
    """
    ``R_d`` for an array of discriminants (int64 array).
    """
    columns = CharacterColumns(ds)
    out = np.zeros(len(columns), dtype=np.int64)
    for m in rset.elements:
        out += columns.column(m)
    return out


def inner_sum_pairs(m: int, n: int, kmax: int) -> int:
    """
    ``sum k * l`` over the pairs ``k, l <= kmax`` with ``m k = n l``.

    The solutions are ``k = n L / (m, n)`` and ``l = m L / (m, n)``, with
    ``L <= kmax (m, n) / max(m, n)``, hence ``([m, n] / (m, n)) * sum_L L**2``.
    """
    if m < 1 or n < 1 or kmax < 0:
        raise DomainError(f'Expected positive m, n and non-negative kmax, got {m}, {n}, {kmax}')
    g = math.gcd(m, n)
    a, b = n // g, m // g
    lmax = kmax // max(a, b)
    return a * b * lmax * (lmax + 1) * (2 * lmax + 1) // 6


def inner_sum_pairs_bruteforce(m: int, n: int, kmax: int) -> int:
    """
    Same as :py:func:`inner_sum_pairs` by a double loop.
    """
    return sum(k * ell for k in range(1, kmax + 1) for ell in range(1, kmax + 1) if m * k == n * ell)

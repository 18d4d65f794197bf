# -*- coding: utf-8 -*-

"""
Property suites checking the exact and empirical statements implemented in quadres.

Each suite returns a pandas DataFrame with the columns ``suite``, ``check``, ``value``,
``target`` and ``passed``.
"""

import pandas as pd

from quadres._constants import ZETA2
from quadres._exceptions import DomainError
from quadres.arith import factorize, lemma22_error_bounds
from quadres.charsum import c_component, s_component, polya_approx, partial_sum, default_z
from quadres.discriminant import sample_fundamental, parity
from quadres.resonance import lemma22_average
from quadres.resonator import inner_sum_pairs

__all__ = ['SUITES', 'run_suite', 'verify_innersum', 'verify_parity', 'verify_polya', 'verify_lemma22']

_COLUMNS = ['suite', 'check', 'value', 'target', 'passed']


def _table(suite, rows):
    df = pd.DataFrame(rows, columns=_COLUMNS[1:])
    df.insert(0, 'suite', suite)
    df['passed'] = df['passed'].astype(bool)
    return df


def verify_innersum(limit: int = 30, kmax: int = 50) -> pd.DataFrame:
    """
    Parametrized inner sums against the enumeration of the pairs ``(k, l)``, for all
    squarefree ``m, n <= limit`` and every ``kmax`` up to the given value.
    One row per ``m``, the value is the number of mismatches.
    """
    squarefree = [m for m in range(1, limit + 1) if factorize(m).mu != 0]
    rows = []
    for m in squarefree:
        mismatches = 0
        for n in squarefree:
            pairs = [(k, ell) for k in range(1, kmax + 1) for ell in range(1, kmax + 1) if m * k == n * ell]
            for K in range(1, kmax + 1):
                brute = sum(k * ell for k, ell in pairs if k <= K and ell <= K)
                if brute != inner_sum_pairs(m, n, K):
                    mismatches += 1
        rows.append((f'm={m}', mismatches, 0, mismatches == 0))
    return _table('innersum', rows)


def verify_parity(size: int = 1000, lo: int = 1000, hi: int = 100000, seed: int = 0,
                  z: float = 200, x: float = 10) -> pd.DataFrame:
    """
    Vanishing of C_d(z) for even characters and of S_d(z) for odd ones, and
    ``chi_d(-1) = sign(d)`` on a sample of discriminants.
    """
    ds = sample_fundamental(lo, hi, size, seed=seed)
    pos, neg = ds[ds > 0].tolist(), ds[ds < 0].tolist()
    c_nonzero = sum(1 for d in pos if c_component(d, z, x) != 0)
    s_nonzero = sum(1 for d in neg if s_component(d, z, x) != 0)
    bad_parity = sum(1 for d in ds.tolist() if parity(d) != (1 if d > 0 else -1))
    rows = [
        (f'C_d(z) = 0 for {len(pos)} d > 0', c_nonzero, 0, c_nonzero == 0),
        (f'S_d(z) = 0 for {len(neg)} d < 0', s_nonzero, 0, s_nonzero == 0),
        (f'parity = sign(d) for {ds.size} d', bad_parity, 0, bad_parity == 0),
    ]
    return _table('parity', rows)


def verify_polya(size: int = 50, X: int = 100000, x: float = 50, seed: int = 0,
                 kappa: float = None) -> pd.DataFrame:
    """
    Truncated expansion of ``sum_{n <= |d|/x} chi_d(n)`` with the default truncation
    against the exact sum, on a sample of ``X < |d| <= 2X``.
    The value is the absolute error, the target the error bound.
    """
    rows = []
    for d in sample_fundamental(X, 2 * X, size, seed=seed).tolist():
        approx = polya_approx(d, 1 / x, z=default_z(d, x), kappa=kappa)
        exact = partial_sum(d, abs(d) / x)
        err = abs(approx.approx - exact)
        rows.append((f'd={d}', err, approx.err_bound, err <= approx.err_bound))
    return _table('polya', rows)


def verify_lemma22(X: int = 10 ** 6, eps: float = None,
                   squares=(4, 9, 16, 36), non_squares=(2, 3, 5, 6),
                   bound_limit: int = 2000) -> pd.DataFrame:
    """
    Averages of ``chi_d(n)`` over ``|d| <= X``: density of fundamental discriminants
    (within 0.2%), square case (within 0.02 of the main term, relative to X), non-square
    case (below 0.01 X), and the friable bounds of ``f(n0)`` and ``g(n1)`` for ``n <= bound_limit``.
    """
    rows = []
    avg = lemma22_average(1, X, eps)
    rel = abs(avg.count - X / ZETA2) / (X / ZETA2)
    rows.append(('density n=1', rel, 0.002, rel <= 0.002))
    for n in squares:
        avg = lemma22_average(n, X, eps)
        rel = abs(avg.residual) / X
        rows.append((f'square n={n}', rel, 0.02, rel <= 0.02))
    for n in non_squares:
        avg = lemma22_average(n, X, eps)
        rel = abs(avg.empirical_sum) / X
        rows.append((f'non-square n={n}', rel, 0.01, rel <= 0.01))

    if eps is None:
        eps = avg.eps
    violations = 0
    for n in range(1, bound_limit + 1):
        b = lemma22_error_bounds(n, eps)
        if b['f'] > b['f_friable'] or b['g'] > b['g_friable']:
            violations += 1
    rows.append((f'friable bounds n<={bound_limit}', violations, 0, violations == 0))
    return _table('lemma22', rows)


SUITES = {
    'innersum': verify_innersum,
    'parity': verify_parity,
    'polya': verify_polya,
    'lemma22': verify_lemma22,
}


def run_suite(name: str, **kwargs) -> pd.DataFrame:
    """
    Run a property suite by name (``innersum``, ``parity``, ``polya`` or ``lemma22``).
    """
    if name not in SUITES:
        raise DomainError(f'Unknown suite {name}. Accepted suites are {", ".join(SUITES.keys())}')
    return SUITES[name](**kwargs)

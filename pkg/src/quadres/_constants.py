# -*- coding: utf-8 -*-

"""
Various constants and common definitions.
"""

import math

ZETA2 = math.pi ** 2 / 6
""" Value of zeta(2), the density of squarefree integers is 1/ZETA2 """

MAX_INTEGER = 2 ** 50
""" Largest integer accepted by the factorization routines """

SIGN_FILTERS = ['positive', 'negative', 'both']

KRONECKER_TWO = (0, 1, 0, -1, 0, -1, 0, 1)
""" (a/2) indexed by a mod 8 """

DEFAULTS = {
    'delta': 0.05,
    'epsilon': 0.1,
    'kappa': 10.,
    'sieve_cap': 10 ** 8,
    'z_cap': 10 ** 5,
    'friability_exponent': 1.5,
    'pool_factor': 4,
    'threads': 1,
    'seed': 0,
    'block_size': 8192,
}
""" Default values of the tunable parameters (overridden by the configuration file) """

CSV_FLOAT_FORMAT = '%.12g'
CSV_COLUMNS = ['d', 'x', 'sum', 'normalized', 'r_weight']

CONTROL_FRACTION = 0.01
""" Share of the discriminant range used as control sample in resonance-guided scans """

CACHE_ENV = 'RESONANCE_CACHE_DIR'

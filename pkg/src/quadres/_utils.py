# -*- coding: utf-8 -*-

import sys
import os
import os.path
import math
import configparser
import concurrent.futures
import logging

import numpy as np

from quadres._constants import DEFAULTS, CACHE_ENV


def get_config():
    """
    Get a ConfigParser object of quadres configuration.

    Location of configuration file:

    - On UNIX systems, the config file is located in ~/.config/quadres.ini
    - On Windows systems, the config file is directly in user home directory
    """
    config = configparser.ConfigParser()
    if sys.platform in ['linux', 'darwin']:
        path_config = os.path.expanduser('~/.config/quadres.ini')
    elif sys.platform in ['win32']:
        path_config = os.path.expanduser('~/quadres.ini')
    else:
        return config

    if os.path.isfile(path_config):
        try:
            config.read(path_config)
        except Exception as e:
            logging.error(f'Could not load configuration file {path_config}: {e}')

    return config


def get_default(key, section='DEFAULT'):
    """
    Get the default value of a tunable parameter.

    The value of the configuration file is used when present, the value
    of :py:data:`quadres._constants.DEFAULTS` otherwise. The returned value has the
    type of the built-in default.

    :param key: Parameter name (``delta``, ``epsilon``, ``kappa``, ``sieve_cap``, ``z_cap``, ...)
    :type key: str
    :param section: Section of the configuration file to look into
    :type section: str
    """
    if key not in DEFAULTS:
        raise KeyError(f'Unknown parameter {key}. Accepted keys are {", ".join(DEFAULTS.keys())}')
    builtin = DEFAULTS[key]
    v = get_config().get(section, key, fallback=None)
    if v is None:
        return builtin
    try:
        if isinstance(builtin, int):
            return int(float(v))
        return type(builtin)(v)
    except ValueError:
        logging.error(f'Invalid value {v} for {key} in configuration file, using default {builtin}')
        return builtin


def get_cache_dir():
    """
    Directory used to cache sieve tables, from the ``RESONANCE_CACHE_DIR``
    environment variable. None if not set.
    """
    path = os.environ.get(CACHE_ENV, None)
    if path is None or len(path) == 0:
        return None
    os.makedirs(path, exist_ok=True)
    return path


def compensated_sum(values, chunk=65536) -> float:
    """
    Sum of a float array, by chunks of fixed size whose partial sums are combined
    with ``math.fsum``. The result does not depend on how the caller split the work
    as long as the chunk size is unchanged.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return 0.
    partials = [float(np.sum(values[i:i + chunk])) for i in range(0, values.size, chunk)]
    return math.fsum(partials)


class KahanAccumulator:
    """
    Element-wise compensated accumulation of float arrays.
    """
    def __init__(self, size):
        self.total = np.zeros(size, dtype=np.float64)
        self._comp = np.zeros(size, dtype=np.float64)

    def add(self, values):
        y = values - self._comp
        t = self.total + y
        self._comp = (t - self.total) - y
        self.total = t


def partition(size, block_size):
    """
    Split ``range(size)`` into consecutive (start, stop) blocks.
    """
    return [(i, min(i + block_size, size)) for i in range(0, size, block_size)]


def map_blocks(func, blocks, threads=1):
    """
    Apply ``func`` to every block and return results in block order.

    With ``threads > 1``, blocks are processed by a pool of worker processes. The order of
    the results is always the order of ``blocks``, so the merge done by the caller is
    deterministic.
    """
    if threads is None or threads <= 1 or len(blocks) <= 1:
        return [func(b) for b in blocks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, blocks))


def exact_weighted_sum_le(weights, values, bound) -> bool:
    """
    Exactly decide whether ``sum(weights * values) <= sum(weights) * bound``.

    :param weights: non-negative integers (below 2**31)
    :param values: non-negative floats
    :param bound: non-negative float
    """
    weights = np.asarray(weights, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    total_weight = int(np.sum(weights))
    mant, expo = np.frexp(np.append(values, bound))
    ints = (mant * 2 ** 53).astype(np.int64)
    expo = expo.astype(np.int64)
    emin = int(expo.min())
    bound_int = int(ints[-1]) << int(expo[-1] - emin)
    ints, expo = ints[:-1], expo[:-1]

    lhs = 0
    high, low = ints >> 26, ints & ((1 << 26) - 1)
    for e in np.unique(expo):
        sel = expo == e
        part = (_big_sum(weights[sel] * high[sel]) << 26) + _big_sum(weights[sel] * low[sel])
        lhs += part << int(e - emin)
    return lhs <= total_weight * bound_int


def _big_sum(values, chunk=16):
    # terms are below 2**58: int64 partial sums of 16 terms cannot overflow
    return sum(int(np.sum(values[i:i + chunk])) for i in range(0, values.size, chunk))

# -*- coding: utf-8 -*-

"""
Text format of resonator sets: a header line ``# resonator N=<N> y=<y>`` followed by
one element per line (decimal integers, increasing order).
"""

import re
import logging

from quadres._exceptions import DomainError
from quadres.resonator import ResonatorSet

_HEADER = re.compile(r'^#\s*resonator\s+N=(\d+)\s+y=(\d+)\s*$')


def write_resonator_set(rset, filename):
    """
    Write a resonator set to a text file.

    :param rset: The resonator set
    :type rset: :py:class:`quadres.resonator.ResonatorSet`
    :param filename: The filename/filepath to write
                     (warning: any existing file with the same name will be overwritten with no confirmation).
    :type filename: str or path-like object
    :returns: The written filename
    """
    y = rset.y if rset.y is not None else rset.friability
    with open(filename, 'w') as ff:
        ff.write(f'# resonator N={rset.size} y={y}\n')
        for m in rset.elements:
            ff.write(f'{m}\n')
    logging.info(f'Written to {filename}')
    return filename


def read_resonator_set(filename) -> ResonatorSet:
    """
    Read a resonator set from a text file.

    Blank lines are ignored. The header is optional, when present it should be on the
    first line and the number of elements is checked against it. Other ``#`` lines are
    skipped with a warning.

    :param filename: The filename/filepath to read
    :rtype: :py:class:`quadres.resonator.ResonatorSet`
    """
    N, y = None, None
    elements = []
    with open(filename, 'r') as ff:
        for i, line in enumerate(ff):
            line = line.strip()
            if len(line) == 0:
                continue
            if line.startswith('#'):
                match = _HEADER.match(line)
                if i == 0 and match is not None:
                    N, y = int(match.group(1)), int(match.group(2))
                elif 'resonator' in line:
                    where = 'malformed header' if match is None else 'header should be on the first line'
                    raise DomainError(f'{filename}, line {i + 1}: {where} {line!r}')
                else:
                    logging.warning(f'{filename}, line {i + 1}: comment ignored {line!r}')
                continue
            try:
                elements.append(int(line))
            except ValueError:
                raise DomainError(f'{filename}, line {i + 1}: invalid integer {line!r}')
    if N is not None and N != len(elements):
        raise DomainError(f'{filename}: header announces N={N} but {len(elements)} elements were read')
    if len(elements) == 0:
        raise DomainError(f'{filename}: no element found')
    return ResonatorSet(elements=elements, y=y, method='file')

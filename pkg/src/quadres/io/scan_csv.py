# -*- coding: utf-8 -*-

import logging

import pandas as pd

from quadres._constants import CSV_FLOAT_FORMAT, CSV_COLUMNS


def write_table_csv(df, filename):
    """
    Write a DataFrame as CSV: period decimal separator, no thousands grouping,
    12 significant digits, no index and ``\\n`` line endings.

    :param df: The data
    :type df: pandas.DataFrame
    :param filename: The filename/filepath to write
                     (warning: any existing file with the same name will be overwritten with no confirmation).
    :returns: The written filename
    """
    df.to_csv(filename, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')
    logging.info(f'Written to {filename}')
    return filename


def write_scan_csv(result, filename):
    """
    Write the records of an extremal scan (columns ``d, x, sum, normalized, r_weight``).

    :param result: The scan result
    :type result: :py:class:`quadres.resonance.ScanResult`
    :param filename: The filename/filepath to write
    :returns: The written filename
    """
    return write_table_csv(result.to_dataframe()[CSV_COLUMNS], filename)


def read_scan_csv(filename) -> pd.DataFrame:
    """
    Read a CSV file written by :py:func:`write_scan_csv`.

    :rtype: pandas.DataFrame
    """
    df = pd.read_csv(filename, dtype={'d': 'int64', 'sum': 'int64'})
    missing = [c for c in CSV_COLUMNS if c not in df.columns]
    if len(missing) > 0:
        raise ValueError(f'{filename}: missing columns {", ".join(missing)}')
    return df

# -*- coding: utf-8 -*-

"""
JSON run manifest: echo of the effective configuration, timings and results of a run.
"""

import json
import logging
import typing

import pydantic

from quadres._base_classes import BaseModel


class RunManifest(BaseModel):
    """
    Description of a run of the command line interface.

    - ``command``: the sub-command
    - ``config``: every effective parameter, defaults included
    - ``timings``: wall-clock durations in seconds
    - ``results``: scalar results of the run (moments, counts, ...)
    - ``bound``: predicted bound parameters, if relevant
    - ``regime_flag``: ``asymptotic`` or ``clamped``, if relevant
    """
    command: str
    version: str
    config: typing.Dict[str, typing.Any] = {}
    timings: typing.Dict[str, float] = {}
    results: typing.Dict[str, typing.Any] = {}
    bound: typing.Optional[typing.Dict[str, typing.Any]] = None
    regime_flag: typing.Optional[typing.Literal['asymptotic', 'clamped']] = None
    outputs: typing.List[str] = pydantic.Field(default_factory=list)


def to_dict(manifest: RunManifest) -> dict:
    """
    Dump of a RunManifest into a JSON-serializable dict.
    """
    return manifest.model_dump(mode='json')


def to_json(manifest: RunManifest, **kwargs) -> str:
    """
    Dump of a RunManifest into a JSON-encoded string.

    :param kwargs: Arguments to be passed to the json.dumps function (standard library)
    """
    return json.dumps(to_dict(manifest), **kwargs)


def write_manifest_json(manifest: RunManifest, filename, **kwargs):
    """
    Write a RunManifest to a JSON file.

    :param filename: The filename/filepath to write
                     (warning: any existing file with the same name will be overwritten with no confirmation).
    :param kwargs: Arguments to be passed to the json.dump function (standard library)
    :returns: The written filename
    """
    kwargs.setdefault('indent', 2)
    with open(filename, 'w') as ff:
        json.dump(to_dict(manifest), ff, **kwargs)
    logging.info(f'Written to {filename}')
    return filename


def read_manifest_json(filename) -> RunManifest:
    """
    Read a RunManifest from a JSON file.
    """
    with open(filename, 'r') as ff:
        return RunManifest.model_validate_json(ff.read())

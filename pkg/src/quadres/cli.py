# -*- coding: utf-8 -*-

"""
Command line interface: ``quadres <command> [options]``.

Commands:

- ``charsum``: exact sum and truncated expansion for one discriminant
- ``scan``: extremal scan of a dyadic range (CSV records and JSON manifest)
- ``resonator``: build a resonator set (text file and GCD sum report)
- ``resonance``: resonance moments of a resonator set (JSON manifest)
- ``verify``: run a property suite

Exit codes: 0 on success, 1 on internal error or failed verification, 2 on usage or domain error.
"""

import sys
import os.path
import time
import typing
import argparse
import logging

import pydantic

import quadres
from quadres._base_classes import BaseModel
from quadres._exceptions import QuadresError, DomainError
from quadres._utils import get_default
from quadres.charsum import partial_sum, polya_approx, default_z
from quadres.discriminant import as_discriminant
from quadres.io import read_resonator_set, write_resonator_set, write_scan_csv, write_table_csv, \
    RunManifest, write_manifest_json, to_json
from quadres.resonance import scan_extremal, resonance_quotient, resonator_size, predicted_bound
from quadres.resonator import build_structured_set, build_greedy_set, build_random_set, candidate_pool, gcd_sum
from quadres.verify import SUITES, run_suite

COMMANDS = ['charsum', 'scan', 'resonator', 'resonance', 'verify']


class RunConfig(BaseModel):
    """
    Effective parameters of a run, defaults included.
    """
    command: typing.Literal['charsum', 'scan', 'resonator', 'resonance', 'verify']
    X: typing.Optional[int] = pydantic.Field(None, ge=2)
    x: typing.Optional[float] = pydantic.Field(None, gt=0)
    N: typing.Optional[int] = pydantic.Field(None, ge=1)
    y: typing.Optional[int] = pydantic.Field(None, ge=1)
    delta: float = pydantic.Field(default_factory=lambda: get_default('delta'), gt=0, lt=0.5)
    epsilon: float = pydantic.Field(default_factory=lambda: get_default('epsilon'), gt=0, lt=1)
    kappa: float = pydantic.Field(default_factory=lambda: get_default('kappa'), gt=0)
    seed: int = pydantic.Field(default_factory=lambda: get_default('seed'), ge=0, lt=2 ** 64)
    threads: int = pydantic.Field(default_factory=lambda: get_default('threads'), ge=1)
    z_cap: int = pydantic.Field(default_factory=lambda: get_default('z_cap'), ge=1)
    output_path: typing.Optional[str] = None
    format: typing.Literal['csv', 'json'] = 'csv'
    d: typing.Optional[int] = None
    length: typing.Optional[float] = pydantic.Field(None, gt=0)
    strategy: typing.Literal['full', 'guided'] = 'full'
    K: typing.Optional[int] = pydantic.Field(None, ge=1)
    resonator: typing.Optional[str] = None
    method: typing.Literal['structured', 'greedy', 'random'] = 'structured'
    suite: typing.Optional[str] = None

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if len(missing) > 0:
            raise DomainError(f'Missing parameter(s) for {self.command}: '
                              + ', '.join(f'--{n}' for n in missing))


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--X', type=int, help='Range parameter: discriminants with X < |d| <= 2X')
    common.add_argument('--x', type=float, help='Sum length parameter: sums over n <= |d|/x')
    common.add_argument('--N', type=int, help='Size of the resonator set')
    common.add_argument('--y', type=int, help='Friability of the resonator set')
    common.add_argument('--delta', type=float, help='Exponent gap of the resonator size')
    common.add_argument('--epsilon', type=float, help='Exponent of the error scale of character averages')
    common.add_argument('--kappa', type=float, help='Constant of the truncation error bound')
    common.add_argument('--seed', type=int, help='Seed of randomized constructions and samples')
    common.add_argument('--threads', type=int, help='Number of worker processes')
    common.add_argument('--z-cap', dest='z_cap', type=int, help='Maximum truncation length')
    common.add_argument('--out', dest='output_path', help='Output file')
    common.add_argument('--format', choices=['csv', 'json'], help='Format of the printed report')
    common.add_argument('-v', '--verbose', action='count', default=0, help='More logging')
    common.add_argument('-q', '--quiet', action='store_true', help='Only log errors')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='quadres', description='Quadratic character sums and resonance method')
    parser.add_argument('--version', action='version', version=f'%(prog)s {quadres.__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('charsum', parents=[common], help='Character sum of one discriminant')
    p.add_argument('--d', type=int, required=True, help='Fundamental discriminant')
    p.add_argument('--len', dest='length', type=float, help='Sum length (default |d|/x)')

    p = sub.add_parser('scan', parents=[common], help='Extremal scan of a dyadic range')
    p.add_argument('--strategy', choices=['full', 'guided'], default='full')
    p.add_argument('--K', type=int, help='Number of discriminants of a guided scan')
    p.add_argument('--resonator', help='Resonator set file (required for a guided scan)')

    p = sub.add_parser('resonator', parents=[common], help='Build a resonator set')
    p.add_argument('--method', choices=['structured', 'greedy', 'random'], default='structured')

    p = sub.add_parser('resonance', parents=[common], help='Resonance moments of a resonator set')
    p.add_argument('--resonator', help='Resonator set file (default: structured set)')
    p.add_argument('--method', choices=['structured', 'greedy', 'random'], default='structured')

    p = sub.add_parser('verify', parents=[common], help='Run a property suite')
    p.add_argument('--suite', choices=list(SUITES.keys()), required=True)
    return parser


def _setup_logging(verbose, quiet):
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s: %(message)s', force=True)


def _manifest_path(config, default):
    path = config.output_path or default
    return os.path.splitext(path)[0] + '.json'


def _print_table(df, fmt):
    if fmt == 'json':
        print(df.to_json(orient='records'))
    else:
        print(df.to_string(index=False))


def _build_set(config):
    if config.method == 'structured':
        return build_structured_set(config.N, config.y)
    if config.method == 'greedy':
        return build_greedy_set(config.N, candidate_pool(config.N, config.y), y=config.y)
    return build_random_set(config.N, config.y, seed=config.seed)


def cmd_charsum(config: RunConfig) -> int:
    """
    Exact sum, truncated expansion and its error bound for one discriminant.
    """
    d = as_discriminant(config.d)
    if config.length is None:
        config.require('x')
        length = d.q / config.x
    else:
        length = config.length
    results = dict(d=d.d, parity=d.parity, length=length, sum=partial_sum(d, length))
    alpha = length / d.q
    if 0 < alpha < 1:
        p = polya_approx(d, alpha, z=default_z(d, 1 / alpha), kappa=config.kappa)
        results.update(z=p.z, approx=p.approx, err_bound=p.err_bound,
                       c_part=p.c_part, s_part=p.s_part)
    if config.format == 'json':
        print(to_json(RunManifest(command='charsum', version=quadres.__version__,
                                  config=config.model_dump(mode='json'), results=results)))
    else:
        for k, v in results.items():
            print(f'{k}={v}')
    return 0


def cmd_scan(config: RunConfig) -> int:
    """
    Extremal scan, written as CSV records with a JSON manifest.
    """
    config.require('X', 'x')
    rset = None
    if config.strategy == 'guided':
        if config.resonator is None:
            raise DomainError('A resonance-guided scan requires a resonator file (--resonator)')
        config.require('K')
    if config.resonator is not None:
        rset = read_resonator_set(config.resonator)

    t0 = time.perf_counter()
    result = scan_extremal(config.X, config.x, strategy=config.strategy, K=config.K, rset=rset,
                           seed=config.seed, threads=config.threads)
    elapsed = time.perf_counter() - t0

    out = config.output_path or 'scan.csv'
    write_scan_csv(result, out)
    top = result.top
    manifest = RunManifest(
        command='scan', version=quadres.__version__, config=config.model_dump(mode='json'),
        timings=dict(scan=elapsed),
        results=dict(population=result.population, records=len(result),
                     control=len(result.control_records),
                     top_d=None if top is None else top.d_int,
                     top_normalized=None if top is None else top.normalized),
        bound=None if result.bound is None else result.bound.model_dump(),
        regime_flag=None if result.bound is None else result.bound.regime_flag,
        outputs=[out])
    write_manifest_json(manifest, _manifest_path(config, out))
    print(f'{len(result)} records written to {out}')
    return 0


def cmd_resonator(config: RunConfig) -> int:
    """
    Build a resonator set, write it and report its GCD sum.
    """
    config.require('N')
    t0 = time.perf_counter()
    rset = _build_set(config)
    report = gcd_sum(rset, threads=config.threads)
    elapsed = time.perf_counter() - t0

    out = config.output_path or 'resonator.txt'
    write_resonator_set(rset, out)
    results = dict(N=rset.size, y=rset.y, friability=rset.friability, min=rset.elements[0],
                   max=rset.elements[-1], gcd_sum=report.total, normalized=report.normalized)
    write_manifest_json(RunManifest(command='resonator', version=quadres.__version__,
                                    config=config.model_dump(mode='json'), timings=dict(build=elapsed),
                                    results=results, outputs=[out]),
                        _manifest_path(config, out))
    for k, v in results.items():
        print(f'{k}={v}')
    return 0


def cmd_resonance(config: RunConfig) -> int:
    """
    Resonance moments of a resonator set (read from a file or built).
    """
    config.require('X', 'x')
    if config.resonator is not None:
        rset = read_resonator_set(config.resonator)
    else:
        if config.N is None:
            N = resonator_size(config.X, config.x, config.delta)
            if N < 1:
                raise DomainError(f'X^(1/2-delta)/x < 1 for X={config.X}, x={config.x}: give --N explicitly')
            config.N = N
        rset = _build_set(config)

    t0 = time.perf_counter()
    moments = resonance_quotient(rset, config.X, config.x, z_cap=config.z_cap, threads=config.threads)
    elapsed = time.perf_counter() - t0
    try:
        bound = predicted_bound(config.X, config.x)
    except DomainError:
        bound = None
    results = moments.model_dump(exclude={'set', 'z_policy', 'X', 'x'})
    results['N'] = rset.size
    out = config.output_path or 'resonance.json'
    write_manifest_json(RunManifest(command='resonance', version=quadres.__version__,
                                    config=config.model_dump(mode='json'), timings=dict(moments=elapsed),
                                    results=dict(results, z_policy=moments.z_policy),
                                    bound=None if bound is None else bound.model_dump(),
                                    regime_flag=None if bound is None else bound.regime_flag),
                        _manifest_path(config, out))
    for k, v in results.items():
        print(f'{k}={v}')
    return 0


def cmd_verify(config: RunConfig) -> int:
    """
    Run a property suite and print the pass/fail table. Returns 1 if a check failed.
    """
    df = run_suite(config.suite)
    if config.output_path is not None:
        write_table_csv(df, config.output_path)
    _print_table(df, config.format)
    return 0 if bool(df['passed'].all()) else 1


_DISPATCH = {
    'charsum': cmd_charsum,
    'scan': cmd_scan,
    'resonator': cmd_resonator,
    'resonance': cmd_resonance,
    'verify': cmd_verify,
}


def main(argv=None) -> int:
    """
    Entry point of the ``quadres`` command.

    :param argv: Arguments (default: ``sys.argv[1:]``)
    :returns: Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    _setup_logging(args.verbose, args.quiet)

    options = {k: v for k, v in vars(args).items() if k not in ('verbose', 'quiet') and v is not None}
    try:
        config = RunConfig(**options)
        return _DISPATCH[config.command](config)
    except (QuadresError, ValueError) as e:
        print(f'quadres {args.command}: error: {e}', file=sys.stderr)
        return 2
    except Exception as e:
        logging.exception(f'Internal error: {e}')
        return 1


if __name__ == '__main__':
    sys.exit(main())

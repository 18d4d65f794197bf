#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import os.path
import json
import unittest
import tempfile
import contextlib

from quadres import cli
from quadres.arith import is_squarefree
from quadres.charsum import partial_sum


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def parse_lines(text):
    return dict(line.split('=', 1) for line in text.splitlines() if '=' in line)


class TestCharsum(unittest.TestCase):

    def test_sums(self):
        code, out, _ = run('charsum', '--d', '-4', '--len', '2')
        assert code == 0
        assert parse_lines(out)['sum'] == '1'

        code, out, _ = run('charsum', '--d', '5', '--len', '5')
        assert code == 0
        assert parse_lines(out)['sum'] == '0'

    def test_default_length(self):
        code, out, _ = run('charsum', '--d', '-1003', '--x', '10')
        assert code == 0
        values = parse_lines(out)
        assert values['sum'] == str(partial_sum(-1003, 100.3))
        assert 'err_bound' in values

    def test_json(self):
        code, out, _ = run('charsum', '--d', '-4', '--len', '2', '--format', 'json')
        assert code == 0
        data = json.loads(out)
        assert data['results']['sum'] == 1
        assert data['config']['kappa'] == 10.

    def test_errors(self):
        code, _, err = run('charsum', '--d', '9', '--len', '3')
        assert code == 2
        assert 'not a fundamental discriminant' in err

        code, _, err = run('charsum', '--d', '5')
        assert code == 2
        assert '--x' in err


class TestScan(unittest.TestCase):

    def test_full(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            a, b = os.path.join(tmp, 'a.csv'), os.path.join(tmp, 'b.csv')
            assert run('scan', '--X', '1000', '--x', '10', '--out', a)[0] == 0
            assert run('scan', '--X', '1000', '--x', '10', '--out', b)[0] == 0
            with open(a, 'r') as ff:
                lines = ff.read().splitlines()
            assert len(lines) >= 2
            with open(a, 'rb') as fa, open(b, 'rb') as fb:
                assert fa.read() == fb.read()

            with open(os.path.join(tmp, 'a.json'), 'r') as ff:
                manifest = json.load(ff)
            assert manifest['command'] == 'scan'
            assert manifest['config']['X'] == 1000
            assert manifest['config']['delta'] == 0.05
            assert manifest['results']['records'] == len(lines) - 1
            assert manifest['regime_flag'] == 'clamped'

    def test_guided(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            rfile = os.path.join(tmp, 'resonator.txt')
            assert run('resonator', '--N', '3', '--y', '7', '--out', rfile)[0] == 0
            out = os.path.join(tmp, 'guided.csv')
            code, _, _ = run('scan', '--X', '1000', '--x', '10', '--strategy', 'guided', '--K', '30',
                             '--resonator', rfile, '--out', out)
            assert code == 0
            with open(os.path.join(tmp, 'guided.json'), 'r') as ff:
                manifest = json.load(ff)
            assert manifest['results']['records'] == 30 + manifest['results']['control']

    def test_guided_errors(self):
        code, _, err = run('scan', '--X', '1000', '--x', '10', '--strategy', 'guided', '--K', '30')
        assert code == 2
        assert '--resonator' in err


class TestResonator(unittest.TestCase):

    def test_structured(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            path = os.path.join(tmp, 'structured.txt')
            code, out, _ = run('resonator', '--N', '64', '--out', path, '-q')
            assert code == 0
            with open(path, 'r') as ff:
                lines = ff.read().splitlines()
            assert lines[0].startswith('# resonator N=64 y=')
            assert len(lines[1:]) == 64
            assert all(is_squarefree(int(m)) for m in lines[1:])
            assert parse_lines(out)['N'] == '64'
            assert os.path.isfile(os.path.join(tmp, 'structured.json'))

    def test_greedy_deterministic(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            a, b = os.path.join(tmp, 'a.txt'), os.path.join(tmp, 'b.txt')
            for path in [a, b]:
                assert run('resonator', '--N', '64', '--method', 'greedy', '--seed', '1', '--out', path, '-q')[0] == 0
            with open(a, 'r') as fa, open(b, 'r') as fb:
                assert fa.read() == fb.read()

    def test_infeasible(self):
        code, _, err = run('resonator', '--N', '1000000', '--y', '3')
        assert code == 2
        assert 'infeasible' in err


class TestResonance(unittest.TestCase):

    def test_moments(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            path = os.path.join(tmp, 'resonance.json')
            code, out, _ = run('resonance', '--X', '1000', '--x', '10', '--N', '3', '--y', '7', '--out', path)
            assert code == 0
            assert parse_lines(out)['pivot_holds'] == 'True'
            with open(path, 'r') as ff:
                manifest = json.load(ff)
            assert manifest['results']['N'] == 3
            assert manifest['results']['z_policy']['capped'] == 0
            assert manifest['regime_flag'] == 'clamped'

    def test_size_too_small(self):
        code, _, err = run('resonance', '--X', '1000', '--x', '100')
        assert code == 2
        assert '--N' in err


class TestVerify(unittest.TestCase):

    def test_innersum(self):
        code, out, _ = run('verify', '--suite', 'innersum')
        assert code == 0
        assert 'innersum' in out

    def test_parity(self):
        code, out, _ = run('verify', '--suite', 'parity', '--format', 'json')
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 3
        assert all(r['passed'] for r in rows)

    def test_unknown_suite(self):
        code, _, _ = run('verify', '--suite', 'unknown')
        assert code == 2

    def test_no_command(self):
        assert run()[0] == 2

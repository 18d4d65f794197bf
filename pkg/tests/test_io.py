#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os.path
import json
import unittest
import tempfile

from quadres import io as qio
from quadres.resonance import scan_extremal
from quadres.resonator import ResonatorSet, build_structured_set
from quadres._exceptions import DomainError


class TestResonatorFile(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory(prefix='quadres-tests')
        self.path = os.path.join(self.tmp.name, 'resonator.txt')

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, content):
        with open(self.path, 'w') as ff:
            ff.write(content)

    def test_write(self):
        rset = build_structured_set(3, y=7)
        qio.write_resonator_set(rset, self.path)
        with open(self.path, 'r') as ff:
            assert ff.read() == '# resonator N=3 y=7\n5\n6\n7\n'

        r = qio.read_resonator_set(self.path)
        assert r.elements == rset.elements
        assert r.y == 7
        assert r.method == 'file'

    def test_friability_in_header(self):
        qio.write_resonator_set(ResonatorSet(elements=[10, 14, 15]), self.path)
        with open(self.path, 'r') as ff:
            assert ff.readline() == '# resonator N=3 y=7\n'

    def test_without_header(self):
        self._write('15\n\n10\n14\n')
        r = qio.read_resonator_set(self.path)
        assert r.elements == (10, 14, 15)
        assert r.y is None

    def test_errors(self):
        self._write('# resonator N=4 y=7\n5\n6\n7\n')
        try:
            qio.read_resonator_set(self.path)
            assert False, 'Wrong number of elements should rise an error'
        except DomainError:
            pass

        self._write('5\nsix\n7\n')
        try:
            qio.read_resonator_set(self.path)
            assert False, 'Invalid line should rise an error'
        except DomainError as e:
            assert 'line 2' in str(e)

        self._write('# resonator N=0 y=7\n')
        try:
            qio.read_resonator_set(self.path)
            assert False, 'Empty file should rise an error'
        except DomainError:
            pass

        self._write('4\n5\n')
        try:
            qio.read_resonator_set(self.path)
            assert False, 'Non squarefree element should rise an error'
        except ValueError:
            pass

    def test_header_errors(self):
        for content in ['# resonator N=4 y=\n5\n6\n7\n', '# resonator N=3, y=7\n5\n6\n7\n',
                        '5\n# resonator N=4 y=7\n6\n7\n']:
            self._write(content)
            try:
                qio.read_resonator_set(self.path)
                assert False, f'Invalid header should rise an error: {content!r}'
            except DomainError as e:
                assert 'line' in str(e)

    def test_comments(self):
        self._write('# resonator N=3 y=7\n5\n# written by hand\n6\n7\n')
        with self.assertLogs(level='WARNING'):
            r = qio.read_resonator_set(self.path)
        assert r.elements == (5, 6, 7)
        assert r.y == 7


class TestScanCsv(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.result = scan_extremal(1000, 10, strategy='guided', K=20, rset=ResonatorSet(elements=[2, 3]))

    def test_write_read(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            path = os.path.join(tmp, 'scan.csv')
            qio.write_scan_csv(self.result, path)
            with open(path, 'r') as ff:
                header = ff.readline()
            assert header == 'd,x,sum,normalized,r_weight\n'

            df = qio.read_scan_csv(path)
            assert df['d'].tolist() == [r.d_int for r in self.result.records]
            assert df['sum'].tolist() == [r.sum_value for r in self.result.records]
            for v, r in zip(df['normalized'], self.result.records):
                assert abs(v - r.normalized) <= 1e-11 * max(1., r.normalized)

    def test_deterministic(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            a, b = os.path.join(tmp, 'a.csv'), os.path.join(tmp, 'b.csv')
            qio.write_scan_csv(self.result, a)
            qio.write_scan_csv(scan_extremal(1000, 10, strategy='guided', K=20,
                                             rset=ResonatorSet(elements=[2, 3])), b)
            with open(a, 'rb') as fa, open(b, 'rb') as fb:
                assert fa.read() == fb.read()

    def test_missing_columns(self):
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            path = os.path.join(tmp, 'bad.csv')
            with open(path, 'w') as ff:
                ff.write('d,x\n5,10\n')
            try:
                qio.read_scan_csv(path)
                assert False, 'Missing columns should rise an error'
            except ValueError:
                pass


class TestManifest(unittest.TestCase):

    def test_write_read(self):
        manifest = qio.RunManifest(command='scan', version='0.1.0', config=dict(X=1000, x=10.),
                                   timings=dict(scan=0.5), results=dict(population=608),
                                   regime_flag='clamped', outputs=['scan.csv'])
        with tempfile.TemporaryDirectory(prefix='quadres-tests') as tmp:
            path = os.path.join(tmp, 'scan.json')
            qio.write_manifest_json(manifest, path)
            with open(path, 'r') as ff:
                data = json.load(ff)
            assert data['config'] == {'X': 1000, 'x': 10.}
            assert data['regime_flag'] == 'clamped'
            r = qio.read_manifest_json(path)
        assert r.results == {'population': 608}
        assert r.outputs == ['scan.csv']
        assert json.loads(qio.to_json(manifest))['command'] == 'scan'

    def test_invalid(self):
        try:
            qio.RunManifest(command='scan', version='0.1.0', regime_flag='other')
            assert False, 'Unknown regime flag should rise an error'
        except ValueError:
            pass

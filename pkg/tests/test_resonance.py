#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
import unittest

import numpy as np

from quadres import resonance
from quadres._constants import ZETA2
from quadres._exceptions import DomainError
from quadres.arith import prime_euler_product
from quadres.charsum import c_component, partial_sum
from quadres.discriminant import count_fundamental, enumerate_fundamental_array
from quadres.resonator import ResonatorSet, build_structured_set, inner_sum_pairs


class TestMoments(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.X, cls.x = 1000, 10
        cls.cd = resonance.cd_table(cls.X, cls.x)
        cls.one = ResonatorSet(elements=[1])

    def test_range_ratio(self):
        ratio = resonance.range_ratio(1000)
        assert ratio == count_fundamental(1000, 2000) / count_fundamental(0, 1000)
        assert 0.9 < ratio < 1.1

    def test_resonator_size(self):
        assert resonance.resonator_size(10 ** 6, 10, 0.05) == 50
        assert resonance.resonator_size(10 ** 6, 10 ** 3, 0.05) == 0

    def test_m1_trivial_set(self):
        m1_emp, m1_main = resonance.moment_m1(self.one, 10 ** 4)
        assert m1_emp == count_fundamental(10 ** 4, 2 * 10 ** 4)
        assert 0.9 <= m1_emp / m1_main <= 1.1

    def test_m1_main_term(self):
        rset = ResonatorSet(elements=[2, 3])
        m1_emp, m1_main = resonance.moment_m1(rset, 10 ** 4)
        assert abs(m1_main - 10 ** 4 / ZETA2 * (2 / 3 + 3 / 4) * resonance.range_ratio(10 ** 4)) < 1e-6
        assert 0.9 <= m1_emp / m1_main <= 1.1
        assert m1_emp <= rset.size ** 2 * count_fundamental(10 ** 4, 2 * 10 ** 4)

    def test_cd_table(self):
        cd = self.cd
        assert list(cd.columns) == ['d', 'z', 'z_used', 'c_value']
        assert cd['d'].tolist() == enumerate_fundamental_array(self.X).tolist()
        assert (cd.loc[cd['d'] > 0, 'c_value'] == 0).all()
        neg = cd[cd['d'] < 0].head(30)
        for d, z, c in zip(neg['d'], neg['z_used'], neg['c_value']):
            expected = c_component(int(d), z, self.x)
            assert abs(c - expected) <= 1e-9 * max(1., abs(expected)), d

    def test_cd_table_cap(self):
        with self.assertLogs(level='WARNING'):
            cd = resonance.cd_table(self.X, self.x, z_cap=100)
        assert cd['z_used'].max() <= 100
        d = int(cd.loc[cd['d'] < 0, 'd'].iloc[0])
        c = float(cd.loc[cd['d'] == d, 'c_value'].iloc[0])
        assert abs(c - c_component(d, 100, self.x)) < 1e-9

    def test_cd_table_workers(self):
        cd = resonance.cd_table(self.X, self.x, threads=2)
        assert np.allclose(cd['c_value'].to_numpy(), self.cd['c_value'].to_numpy(), rtol=1e-12, atol=1e-12)

    def test_m2_positive_range(self):
        rset = build_structured_set(3, y=7)
        positive = self.cd[self.cd['d'] > 0]
        assert resonance.moment_m2(rset, self.X, self.x, cd=positive) == 0.
        assert resonance.moment_m2(rset, self.X, self.x, cd=self.cd) >= 0.

    def test_quotient_trivial_set(self):
        mom = resonance.resonance_quotient(self.one, self.X, self.x, cd=self.cd)
        c2 = self.cd['c_value'].to_numpy() ** 2
        assert mom.count == len(self.cd)
        assert mom.m1_emp == mom.count
        assert abs(mom.quotient - c2.mean()) <= 1e-9 * c2.mean()
        assert mom.pivot_holds
        assert mom.quotient <= mom.max_cd2
        assert mom.gcd_restricted == 1.
        expected_i2 = prime_euler_product(self.X) * inner_sum_pairs(1, 1, 5)
        assert abs(mom.i2_lower - expected_i2) < 1e-9
        assert abs(mom.mainterm_lower - expected_i2 / self.x ** 4) < 1e-12

    def test_quotient(self):
        rset = build_structured_set(3, y=7)
        mom = resonance.resonance_quotient(rset, self.X, self.x, cd=self.cd)
        assert mom.pivot_holds
        assert mom.quotient <= mom.max_cd2 * (1 + 1e-12)
        assert mom.m2_emp >= 0
        assert rset.size <= mom.gcd_restricted + 1e-9
        assert mom.z_policy['capped'] == 0
        assert mom.m1_ratio > 0

    def test_quotient_errors(self):
        try:
            resonance.resonance_quotient(self.one, self.X, self.x, cd=self.cd.iloc[:0])
            assert False, 'Empty range should rise an error'
        except DomainError:
            pass


class TestCharacterAverage(unittest.TestCase):

    def test_density(self):
        avg = resonance.lemma22_average(1, 10 ** 5)
        assert avg.count == count_fundamental(0, 10 ** 5)
        assert avg.empirical_sum == avg.count
        assert abs(avg.main_term - 10 ** 5 / ZETA2) < 1e-6
        assert abs(avg.residual) / avg.main_term < 0.01

    def test_square(self):
        avg = resonance.lemma22_average(4, 10 ** 5)
        assert abs(avg.main_term / 10 ** 5 - 2 / 3 / ZETA2) < 1e-12
        assert abs(avg.relative_residual) <= 0.01

    def test_non_square(self):
        for n in [2, 3, 5, 6]:
            avg = resonance.lemma22_average(n, 10 ** 5)
            assert avg.main_term == 0.
            assert abs(avg.empirical_sum) <= 10 ** 3, n

    def test_error_scale(self):
        avg = resonance.lemma22_average(1, 1000, eps=0.1)
        assert abs(avg.error_scale - 1000 ** 0.6) < 1e-9

    def test_domain(self):
        try:
            resonance.lemma22_average(0, 1000)
            assert False, 'n = 0 should rise an error'
        except DomainError:
            pass


class TestPredictedBound(unittest.TestCase):

    def test_clamped(self):
        b = resonance.predicted_bound(10 ** 6, 10 ** 2)
        assert b.regime_flag == 'clamped'
        expected = 100 * math.exp(math.sqrt(math.log(10) / math.log(math.log(10))))
        assert abs(b.bound - expected) < 1e-9
        assert abs(b.bound - 526.8) < 0.2
        assert b.bound >= math.sqrt(10 ** 6 / 10 ** 2)

    def test_asymptotic(self):
        b = resonance.predicted_bound(1e14, 1)
        assert b.regime_flag == 'asymptotic'
        assert b.log3 > 1

    def test_clamped_below_asymptotic_regime(self):
        for ratio in [16, 100, 10 ** 4, 3e6]:
            b = resonance.predicted_bound(10 ** 12, 10 ** 6 / ratio)
            assert b.regime_flag == 'clamped', ratio
            assert b.log3 <= 1

    def test_monotone(self):
        # log3 crosses 0 at sqrt(X)/x = e**e and 1 at e**(e**e); the bound increases past e**e
        for edge in [math.exp(math.e), math.exp(math.exp(math.e))]:
            X = 10 ** 16
            below = resonance.predicted_bound(X, math.sqrt(X) / (edge * 0.999))
            above = resonance.predicted_bound(X, math.sqrt(X) / (edge * 1.001))
            assert above.bound >= below.bound, edge
        bounds = [resonance.predicted_bound(10 ** 16, 10 ** 8 / r).bound for r in np.geomspace(math.exp(math.e), 1e7, 60)]
        assert all(b2 >= b1 for b1, b2 in zip(bounds, bounds[1:]))

    def test_domain(self):
        try:
            resonance.predicted_bound(100, 5)
            assert False, 'sqrt(X)/x <= e should rise an error'
        except DomainError:
            pass


class TestScan(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.full = resonance.scan_extremal(1000, 10)

    def test_full(self):
        result = self.full
        assert result.population == count_fundamental(1000, 2000)
        assert len(result) == result.population
        values = result.normalized_values
        assert np.all(values[:-1] >= values[1:])
        assert values[0] >= 2 * np.median(values)
        assert result.bound is not None

    def test_records(self):
        for r in self.full.records[:50]:
            assert r.sum_value == partial_sum(r.d_int, abs(r.d_int) / r.x)
            assert abs(r.normalized * math.sqrt(abs(r.d_int) / r.x) - abs(r.sum_value)) < 1e-9
            assert abs(r.sum_value) <= abs(r.d_int) / r.x
            assert r.resonator_weight is None

    def test_deterministic(self):
        again = resonance.scan_extremal(1000, 10)
        assert self.full.to_dataframe().equals(again.to_dataframe())

    def test_dataframe(self):
        df = self.full.to_dataframe()
        assert list(df.columns) == ['d', 'x', 'sum', 'normalized', 'r_weight']
        assert len(df) == len(self.full)

    def test_guided_exhaustive(self):
        rset = build_structured_set(3, y=7)
        guided = resonance.scan_extremal(1000, 10, strategy='guided', K=self.full.population, rset=rset)
        assert [r.d_int for r in guided.records] == [r.d_int for r in self.full.records]
        assert [r.sum_value for r in guided.records] == [r.sum_value for r in self.full.records]
        assert len(guided.control_records) == 0

    def test_guided(self):
        rset = build_structured_set(3, y=7)
        guided = resonance.scan_extremal(1000, 10, strategy='guided', K=50, rset=rset, seed=1)
        n_control = math.ceil(0.01 * guided.population)
        assert len(guided.control_records) == n_control
        assert len(guided) == 50 + n_control
        weights = [r.resonator_weight for r in guided.records if not r.control]
        assert min(weights) >= max(r.resonator_weight for r in guided.control_records)

    def test_guided_clamp(self):
        rset = build_structured_set(3, y=7)
        with self.assertLogs(level='WARNING'):
            guided = resonance.scan_extremal(1000, 10, strategy='guided', K=10 ** 6, rset=rset)
        assert guided.K == guided.population

    def test_guided_errors(self):
        try:
            resonance.scan_extremal(1000, 10, strategy='guided', K=10)
            assert False, 'A guided scan needs a resonator set'
        except DomainError:
            pass
        try:
            resonance.scan_extremal(1000, 10, strategy='guided', rset=ResonatorSet(elements=[1]))
            assert False, 'A guided scan needs K'
        except DomainError:
            pass
        try:
            resonance.scan_extremal(1000, 10, strategy='other')
            assert False, 'Unknown strategy should rise an error'
        except DomainError:
            pass

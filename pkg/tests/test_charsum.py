#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
import cmath
import unittest

import numpy as np

from quadres import charsum
from quadres.arith import kronecker
from quadres.discriminant import sample_fundamental, fundamental_array
from quadres._exceptions import DomainError, ResourceError


def literal_c(d, z, x):
    return math.fsum(kronecker(d, m) * (1 - math.cos(2 * math.pi * m / x)) / m
                     for m in range(-math.floor(z), math.floor(z) + 1) if m != 0)


def literal_s(d, z, x):
    return math.fsum(kronecker(d, m) * math.sin(2 * math.pi * m / x) / m
                     for m in range(-math.floor(z), math.floor(z) + 1) if m != 0)


class TestCharTable(unittest.TestCase):

    def test_examples(self):
        assert charsum.char_table(5, 5).tolist() == [1, -1, -1, 1, 0]
        assert charsum.char_table(-4, 4).tolist() == [1, 0, -1, 0]
        table = charsum.char_table(-3, 10)
        assert table[1] == 1
        assert table.values[0] == 0

    def test_periodic_extension(self):
        table = charsum.char_table(5, 23)
        assert table.tolist() == [kronecker(5, n) for n in range(1, 24)]
        table = charsum.char_table(-8, 100)
        assert table.tolist() == [kronecker(-8, n) for n in range(1, 101)]

    def test_against_kronecker(self):
        for d in sample_fundamental(10 ** 3, 10 ** 5, 20, seed=2).tolist():
            table = charsum.char_table(d, 10 ** 4)
            assert table.tolist() == [kronecker(d, n) for n in range(1, 10 ** 4 + 1)], d

    def test_errors(self):
        try:
            charsum.char_table(5, 1000, cap=100)
            assert False, 'Length above cap should rise an error'
        except ResourceError:
            pass
        try:
            charsum.char_table(9, 5)
            assert False, 'Non fundamental discriminant should rise an error'
        except DomainError:
            pass

    def test_readonly(self):
        table = charsum.char_table(5, 10)
        try:
            table.values[1] = 0
            assert False, 'Table values should be read-only'
        except ValueError:
            pass


class TestPartialSum(unittest.TestCase):

    def test_examples(self):
        assert charsum.partial_sum(5, 3) == -1
        assert charsum.partial_sum(5, 5) == 0
        assert charsum.partial_sum(-4, 2) == 1
        assert charsum.partial_sum(-4, 2.7) == 1
        assert charsum.partial_sum(5, 0.5) == 0

    def test_full_period(self):
        for d in sample_fundamental(10, 10 ** 4, 1000, seed=4).tolist():
            assert charsum.partial_sum(d, abs(d)) == 0, d

    def test_brute_force(self):
        for d in fundamental_array(10, 60).tolist():
            for n in range(0, 3 * abs(d)):
                assert charsum.partial_sum(d, n) == sum(kronecker(d, k) for k in range(1, n + 1))

    def test_vectorized(self):
        ds = sample_fundamental(10 ** 3, 10 ** 4, 100, seed=5)
        lengths = np.abs(ds) / 7
        sums = charsum.partial_sums_for_range(ds, lengths)
        assert sums.tolist() == [charsum.partial_sum(d, ln) for d, ln in zip(ds.tolist(), lengths.tolist())]

    def test_kronecker_vector(self):
        ds = sample_fundamental(10, 10 ** 5, 200, seed=6)
        for n in [1, 2, 4, 12, 97, 65537, 2 * 65537, 360]:
            assert charsum.kronecker_vector(ds, n).tolist() == [kronecker(d, n) for d in ds.tolist()], n


class TestGaussSum(unittest.TestCase):

    def test_examples(self):
        assert abs(charsum.gauss_sum(5) - math.sqrt(5)) < 1e-9
        assert abs(charsum.gauss_sum(-4) - 2j) < 1e-9

    def test_closed_form(self):
        for d in sample_fundamental(10, 10 ** 4, 100, seed=8).tolist():
            tau = charsum.gauss_sum(d)
            assert abs(abs(tau) - math.sqrt(abs(d))) < 1e-6 * math.sqrt(abs(d))
            closed = charsum.gauss_sum_closed_form(d)
            assert abs(tau - closed) <= 1e-6 * abs(closed), d
        assert abs(charsum.gauss_sum_closed_form(-3) - cmath.sqrt(-3)) < 1e-12


class TestPolya(unittest.TestCase):

    def test_parity_vanishing(self):
        assert charsum.c_component(5, 50, 7) == 0.
        assert charsum.s_component(-3, 50, 7) == 0.
        for d in sample_fundamental(10, 10 ** 4, 200, seed=9).tolist():
            if d > 0:
                assert charsum.c_component(d, 100, 10) == 0.
            else:
                assert charsum.s_component(d, 100, 10) == 0.

    def test_components_literal(self):
        assert abs(charsum.c_component(-4, 10, 4) - literal_c(-4, 10, 4)) < 1e-12
        assert abs(charsum.c_component(-4, 10, 4) - 2 * (1 - 1 / 3 + 1 / 5 - 1 / 7 + 1 / 9)) < 1e-12
        for d in [5, 8, 12, 13, 17]:
            assert abs(charsum.s_component(d, 25.5, 3.5) - literal_s(d, 25.5, 3.5)) < 1e-12
        for d in [-3, -4, -7, -8, -11]:
            assert abs(charsum.c_component(d, 25.5, 3.5) - literal_c(d, 25.5, 3.5)) < 1e-12

    def test_examples(self):
        p = charsum.polya_approx(-4, 0.5, 200)
        assert abs(p.approx - 1) <= p.err_bound
        assert p.s_part == 0.
        assert abs(p.approx - 1) < 0.05

        p = charsum.polya_approx(5, 0.9999, 5 * math.log(5))
        assert abs(p.approx) <= p.err_bound
        assert p.c_part == 0.

    def test_error_bound(self):
        p = charsum.polya_approx(-4, 0.5, 200, kappa=10)
        assert abs(p.err_bound - 10 * (1 + 4 * math.log(4) / 200)) < 1e-12

    def test_alpha_domain(self):
        for alpha in [0, 1, -0.5, 1.5]:
            try:
                charsum.polya_approx(5, alpha, 10)
                assert False, f'alpha={alpha} should be rejected'
            except DomainError:
                pass

    def test_against_exact(self):
        x = 50
        for d in sample_fundamental(10 ** 5, 2 * 10 ** 5, 50, seed=10).tolist():
            p = charsum.polya_approx(d, 1 / x, charsum.default_z(d, x), kappa=10)
            exact = charsum.partial_sum(d, abs(d) / x)
            assert abs(p.approx - exact) <= p.err_bound, d

    def test_doubling_z(self):
        x = 50
        ds = sample_fundamental(10 ** 4, 2 * 10 ** 4, 50, seed=11).tolist()
        exact = {d: charsum.partial_sum(d, abs(d) / x) for d in ds}
        means = []
        for z in [1000, 2000, 4000, 8000, 16000]:
            means.append(np.mean([abs(charsum.polya_approx(d, 1 / x, z).approx - exact[d]) for d in ds]))
        assert all(b <= 1.1 * a for a, b in zip(means[:-1], means[1:])), means
        assert means[-1] <= means[0], means

    def test_default_z(self):
        assert abs(charsum.default_z(10 ** 6, 100) - 1e4 * math.log(1e6)) < 1e-6
        assert abs(charsum.default_z(10 ** 6, 100) - 138155.1) < 0.1
        assert charsum.default_z(1000, 3) < charsum.default_z(1001, 3)
        assert charsum.default_z(1000, 3) < charsum.default_z(1000, 4)

    def test_lower_estimate(self):
        d, x = -1003, 10
        z = charsum.default_z(d, x)
        p = charsum.polya_approx(d, 1 / x, z)
        assert abs(charsum.c_lower_estimate(d, x, z) - abs(p.approx)) < 1e-9
        assert charsum.c_lower_estimate(1005, x) == 0.

    def test_polya_vinogradov(self):
        assert abs(charsum.polya_vinogradov_bound(-4) - 2 * math.log(4)) < 1e-12
        for d in fundamental_array(10, 200).tolist():
            bound = charsum.polya_vinogradov_bound(d)
            assert all(abs(charsum.partial_sum(d, n)) <= bound for n in range(abs(d)))

import math
from fractions import Fraction as F

import pytest

from twoxor import kernels
from twoxor.kernels import pure
from twoxor.modchain import connected_counts, weighted_counts
from twoxor.numutil import (crt_combine, fraction_str, is_probable_prime,
                            ln_fraction, primes_above)
from twoxor.series import m_series

fast = pytest.importorskip("twoxor.kernels._fast")


def test_backend_reports():
    assert pure.BACKEND == "pure"
    assert fast.BACKEND == "cython"
    assert kernels.backend_name() in ("pure", "cython")


def test_primes_and_crt():
    ps = primes_above(1 << 61, 4)
    assert all(is_probable_prime(p) for p in ps)
    assert len(set(ps)) == 4
    x = 123456789012345678901234567890
    res = [x % p for p in ps]
    assert crt_combine(res, ps) == x
    assert not is_probable_prime(3215031751)  # strong pseudoprime to few bases


def test_chain_mod_backends_agree():
    p = primes_above(1 << 61, 1)[0]
    jobs = [(m, n) for m in range(0, 9) for n in range(1, 9)]
    for kind, sn, sd in [(0, 1, 2), (0, 1, 1), (0, 2, 1), (1, 1, 1)]:
        assert fast.chain_mod(kind, sn, sd, 10, 16, p, jobs) == \
            pure.chain_mod(kind, sn, sd, 10, 16, p, jobs)


def test_mc_backends_agree():
    assert fast.mc_expression_trials(4, 3, 7, 900, 2024) == \
        pure.mc_expression_trials(4, 3, 7, 900, 2024)
    assert fast.mc_multigraph_trials(3, 2, 11, 900, 77) == \
        pure.mc_multigraph_trials(3, 2, 11, 900, 77)
    assert fast.oracle_scan(2, 3, 0, 4096) == pure.oracle_scan(2, 3, 0, 4096)


def test_splitmix_chunking_is_seamless():
    whole = pure.mc_expression_trials(3, 2, 0, 400, 5)
    fc = 0
    hist = {}
    for lo, cnt in ((0, 150), (150, 150), (300, 100)):
        f, h = pure.mc_expression_trials(3, 2, lo, cnt, 5)
        fc += f
        for k, v in h.items():
            hist[k] = hist.get(k, 0) + v
    assert (fc, hist) == whole


def test_weighted_counts_match_series_on_grid():
    for sigma in (F(1, 2), F(1), F(2)):
        got = weighted_counts(sigma, [(m, n) for m in range(6) for n in range(6)])
        ref = m_series(5, 5).pow(sigma)
        for (m, n), val in got.items():
            assert val == ref.coeff(m, n) * math.factorial(n)


def test_connected_counts_match_series_on_grid():
    got = connected_counts([(m, n) for m in range(6) for n in range(6)])
    ref = m_series(5, 5).log()
    for (m, n), val in got.items():
        assert val == ref.coeff(m, n) * math.factorial(n)


def test_weighted_counts_closed_form_large():
    got = weighted_counts(1, [(25, 70)])[(25, 70)]
    assert got == F(70 ** 50, 2 ** 25 * math.factorial(25))
    got2 = weighted_counts(2, [(9, 40)])[(9, 40)]
    want = sum(math.comb(40, k) * F(k * k + (40 - k) ** 2, 2) ** 9
               for k in range(41)) / math.factorial(9)
    assert got2 == want


def test_fraction_helpers():
    q = F(10 ** 400, 3 ** 200)
    assert abs(ln_fraction(q) - (400 * math.log(10) - 200 * math.log(3))) < 1e-9
    assert fraction_str(F(3, 4)) == "3/4"
    assert fraction_str(F(8, 2)) == "4"

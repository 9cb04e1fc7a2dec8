"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`.  The heavy exact
computations (satisfiability censuses at n = 400, connected censuses at
n = 200) are batched once per session through the module caches.
"""

import json
import math
import os
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from twoxor import asympt, census, montecarlo
from twoxor.asympt import K_r, airy_A, prob_sat_critical, saddle_g2, single_block_asympt
from twoxor.census import (connected_count, full_distribution,
                           prob_function_exact, prob_g_blocks_closed_form,
                           prob_sat_exact, warm_connected_cache, warm_w_half_cache)
from twoxor.expressions import IntegerPartition, partitions_of
from twoxor.multigraph import enumerate_multigraphs, multigraph_count
from twoxor.numutil import ln_fraction
from twoxor.oracle import exhaustive_census

W_JOBS = [(150, 400), (200, 400), (100, 200), (50, 100)]
C_JOBS = [(n + r, n) for n in (50, 100, 200) for r in (-1, 0, 1)]


def _report(num, ok, detail=""):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def w_cache():
    t0 = time.time()
    warm_w_half_cache(W_JOBS)
    return time.time() - t0


@pytest.fixture(scope="module")
def c_cache():
    t0 = time.time()
    warm_connected_cache(C_JOBS)
    return time.time() - t0


def test_criterion_1_oracle_equivalence():
    t0 = time.time()
    grid = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (2, 4)]
    ok = True
    for n, m in grid:
        oc = exhaustive_census(n, m)
        ok &= oc.prob_sat() == prob_sat_exact(m, n)
        entries, pfalse = full_distribution(n, m)
        ok &= pfalse == oc.prob_false()
        for e in entries:
            ok &= e.prob_class == oc.class_prob(e.partition)
            k, _ = oc.per_class.get(e.partition, (0, 0))
            if k:
                ok &= k == e.class_size
                ok &= oc.function_count(e.partition) == e.count_per_function
    elapsed = time.time() - t0
    ok &= elapsed < 120
    _report(1, ok, f"9 grids exact, {elapsed:.1f}s")


def test_criterion_2_normalization_identity():
    ok = True
    for n in range(1, 5):
        for m in range(0, 6):
            total = sum((class_prob.class_size * class_prob.prob_per_function
                         for class_prob in full_distribution(n, m)[0]), F(0))
            ok &= total == prob_sat_exact(m, n)
    _report(2, ok, "sum over classes equals Pr(sat), n<=4 m<=5, exact")


def test_criterion_3_closed_form_cross_check():
    ok = prob_g_blocks_closed_form(2, 2, 1) == F(1, 4)
    ok &= prob_g_blocks_closed_form(3, 3, 2) == F(2, 27)
    for g in (2, 3):
        for n in range(g, 13, g):
            for m in range(0, n + 4):
                lhs = prob_g_blocks_closed_form(g, n, m)
                rhs = prob_function_exact(IntegerPartition.of([g] * (n // g)),
                                          m).prob_per_function
                ok &= lhs == rhs
    _report(3, ok, "g in {2,3}, n<=12, m<=n+3, exact equality")


def test_criterion_4_known_constants():
    ok = all(connected_count(n - 1, n) == n ** max(n - 2, 0)
             for n in range(2, 9))
    ok &= abs(K_r(0) - math.sqrt(2 * math.pi) / 4) < 1e-12
    ok &= abs(K_r(1) - F(5, 24)) < 1e-12
    _report(4, ok, "n^(n-2) trees for n<=8; K_0, K_1 to 1e-12")


def test_criterion_5_fixed_excess_convergence(c_cache):
    t0 = time.time()
    ok = True
    details = []
    for r in (-1, 0, 1):
        devs = []
        for n in (50, 100, 200):
            exact = connected_count(n + r, n)
            ln_asy = math.log(K_r(r)) + (n + (3 * r - 1) / 2) * math.log(n)
            devs.append(abs(math.exp(ln_fraction(exact) - ln_asy) - 1))
        ok &= devs[0] + 1e-9 >= devs[1] >= devs[2] - 1e-9
        ok &= devs[2] < 0.10
        details.append(f"r={r}: {devs[0]:.3f}>{devs[1]:.3f}>{devs[2]:.3f}")
    elapsed = c_cache + (time.time() - t0)
    ok &= elapsed < 300
    _report(5, ok, "; ".join(details) + f"; {elapsed:.1f}s")


def test_criterion_6_subcritical_satisfiability(w_cache):
    exact = prob_sat_exact(150, 400)
    ok = abs(float(exact) - 0.707107) < 0.03
    report = montecarlo.run_trials(400, 150, 100000, seed=20260811)
    z = (report.sat_frequency - float(exact)) / report.sat_stderr
    ok &= abs(z) < 4
    _report(6, ok, f"exact={float(exact):.6f}, mc z={z:.2f}")


def test_criterion_7_critical_window(w_cache):
    devs = []
    for n in (100, 200, 400):
        m = n // 2
        exact = float(prob_sat_exact(m, n))
        approx, tail = prob_sat_critical(n, m, r_max=20)
        devs.append(abs(exact / approx - 1))
    ok = devs[0] > devs[1] > devs[2]
    _, tail = prob_sat_critical(400, 200, r_max=20)
    ok &= tail < 1e-8
    _report(7, ok, f"deviations {devs[0]:.4f}>{devs[1]:.4f}>{devs[2]:.4f}, "
                   f"tail={tail:.1e}")


def test_criterion_8_single_block_regimes(c_cache):
    n = 30
    exact = ln_fraction(F(math.factorial(n - 1), n ** n))
    approx, _ = single_block_asympt(n, n - 1)
    dev1 = abs(math.exp(exact - approx) - 1)
    n = 200
    exact2 = ln_fraction(F(math.factorial(n), n ** (2 * n))
                         * connected_count(n, n))
    approx2, _ = single_block_asympt(n, n)
    dev2 = abs(math.exp(exact2 - approx2) - 1)
    ok = dev1 < 0.01 and dev2 < 0.05
    _report(8, ok, f"r=-1 dev={dev1:.4f} (<1%), r=0 dev={dev2:.4f} (<5%)")


def test_criterion_9_saddle_point_g2():
    ok = True
    for kappa in (2, 4, 10):  # kappa/n in {0.01, 0.02, 0.05} at n = 200
        sol, _, boot = saddle_g2(200, kappa)
        u = kappa / 200
        ok &= abs(sol.residual) < 1e-12
        ok &= abs(sol.root - boot) < 0.03 * u ** 3
    sol, ln_e, _ = saddle_g2(200, 10)
    exact = prob_g_blocks_closed_form(2, 200, 110) * F(4 * 200 * 200) ** 110
    ratio = math.exp(ln_e - ln_fraction(exact))
    ok &= abs(ratio - 1) < 0.10
    _report(9, ok, f"bootstrap cubic remainder ok; E ratio={ratio:.4f}")


def test_criterion_10_airy_self_consistency():
    d1 = abs(airy_A(1, 0) - 3 ** (-2 / 3) / math.gamma(2 / 3))
    d2 = abs(airy_A(0, 0) - 3 ** (-1 / 3) / math.gamma(1 / 3))
    ok = d1 < 1e-12 and d2 < 1e-12
    _report(10, ok, f"|dA|={max(d1, d2):.2e}")


def test_criterion_11_multigraph_process_distribution():
    trials = 10 ** 6
    hist = montecarlo.sample_multigraph_frequencies(2, 2, trials, seed=7)
    total_kappa = multigraph_count(2, 2)
    ok = True
    worst = 0.0
    for g, k in enumerate_multigraphs(2, 2):
        key = tuple(x for e in g.edges for x in e)
        p = float(k / total_kappa)
        se = math.sqrt(p * (1 - p) / trials)
        z = (hist.get(key, 0) / trials - p) / se
        worst = max(worst, abs(z))
        ok &= abs(z) < 4
    ok &= sum(hist.values()) == trials
    _report(11, ok, f"6 multigraphs, worst |z|={worst:.2f} over 1e6 samples")


def test_criterion_12_reproducibility():
    a = montecarlo.run_trials(50, 30, 20000, seed=99, parallelism=1)
    b = montecarlo.run_trials(50, 30, 20000, seed=99, parallelism=8)
    ok = a.as_record() == b.as_record()

    def cli_payload(parallel):
        proc = subprocess.run(
            [sys.executable, "-m", "twoxor.cli", "simulate", "--n", "4",
             "--m", "3", "--trials", "5000", "--seed", "123",
             "--parallel", str(parallel)],
            capture_output=True, text=True, env=dict(os.environ))
        rec = json.loads(proc.stdout)
        rec.pop("timestamp")
        rec["inputs"].pop("parallel")
        return json.dumps(rec, sort_keys=True)

    ok &= cli_payload(1) == cli_payload(5)
    _report(12, ok, "library and CLI payloads byte-identical across parallelism")

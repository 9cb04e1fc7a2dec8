"""Exact bivariate coefficients at scale via CRT over word primes.

The quantities

    W_sigma(m,n) = n! [z^m v^n] M^sigma(z,v)      (sigma in {1/2, 1, 2})
    C(m,n)       = n! [z^m v^n] log M(z,v)

have denominators dividing 2^(m+n) m! (resp. 2^m m!), so the scaled integers
are reconstructed from residues modulo ~61-bit primes computed by the kernel
chains.  A priori bounds: the coefficients of M^sigma are nonnegative and
dominated by those of M^2 for sigma <= 2, giving

    0 <= 2^(m+n) m! W_sigma <= 2^(2n) n^(2m),      0 <= 2^m m! C <= n^(2m),

so the number of primes needed is known in advance; one extra verification
prime guards the reconstruction.
"""

import math
from fractions import Fraction

from . import kernels
from .numutil import crt_combine, primes_above

_PRIME_FLOOR = 1 << 61
_prime_cache: list = []


def _primes(count: int) -> list:
    global _prime_cache
    if len(_prime_cache) < count:
        _prime_cache = primes_above(_PRIME_FLOOR, count)
    return _prime_cache[:count]


def _bits_bound(kind: int, jobs) -> int:
    worst = 64
    for m, n in jobs:
        base = 2 * m * math.log2(max(n, 2)) + (2 * n if kind == 0 else 0)
        worst = max(worst, int(base) + 2)
    return worst + 64


def _run(kind: int, sigma: Fraction, jobs: list) -> list:
    """CRT-reconstructed scaled integers for each (m, n) job."""
    m_max = max(m for m, _ in jobs)
    vcap = max(min(2 * m, n) for m, n in jobs)
    bits = _bits_bound(kind, jobs)
    nprimes = bits // 61 + 2  # one prime of slack plus a verification prime
    primes = _primes(nprimes)
    residue_rows = [kernels.chain_mod(kind, sigma.numerator, sigma.denominator,
                                      m_max, vcap, p, jobs) for p in primes]
    out = []
    for j in range(len(jobs)):
        res = [row[j] for row in residue_rows]
        x = crt_combine(res[:-1], primes[:-1])
        if x % primes[-1] != res[-1]:
            raise ArithmeticError("CRT verification prime mismatch; "
                                  "prime budget undersized")
        out.append(x)
    return out


def weighted_counts(sigma, jobs) -> dict:
    """Exact W_sigma(m,n) for each job; sigma must be one of 1/2, 1, 2."""
    sigma = Fraction(sigma)
    if sigma not in (Fraction(1, 2), Fraction(1), Fraction(2)):
        raise ValueError("modular chain supports sigma in {1/2, 1, 2} only")
    jobs = sorted(set((int(m), int(n)) for m, n in jobs))
    trivial = {}
    todo = []
    for m, n in jobs:
        if n == 0:
            trivial[(m, n)] = Fraction(1) if m == 0 else Fraction(0)
        elif m == 0:
            trivial[(m, n)] = sigma ** n
        else:
            todo.append((m, n))
    if todo:
        xs = _run(0, sigma, todo)
        for (m, n), x in zip(todo, xs):
            trivial[(m, n)] = Fraction(x, (1 << (m + n)) * math.factorial(m))
    return trivial


def connected_counts(jobs) -> dict:
    """Exact connected census C(m,n) = n![z^m v^n] log M for each job."""
    jobs = sorted(set((int(m), int(n)) for m, n in jobs))
    out = {}
    todo = []
    for m, n in jobs:
        if m == 0:
            out[(m, n)] = Fraction(1) if n == 1 else Fraction(0)
        elif n == 0 or m < n - 1:
            out[(m, n)] = Fraction(0)
        else:
            todo.append((m, n))
    if todo:
        xs = _run(1, Fraction(1), todo)
        for (m, n), x in zip(todo, xs):
            out[(m, n)] = Fraction(x, (1 << m) * math.factorial(m))
    return out

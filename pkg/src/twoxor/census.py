"""Exact probabilities and counts for random 2-Xor expressions.

Everything here is carried as exact rationals end to end; floats appear only
at output boundaries.  Two independent exact pipelines coexist on purpose:

* coefficient extraction from truncated bivariate series (the direct route,
  used at small sizes and in cross-checks), and
* per-block exponential polynomials plus CRT-backed coefficient chains (the
  production route at scale).

The probability that an expression of m clauses on n variables is satisfiable
is  [z^m v^n] sqrt(M(4z,2v)) / [z^m v^n] M(8z,v), which reduces to
2^n m! W_half(m,n) / n^(2m) with W_half(m,n) = n![z^m v^n] M^(1/2)(z,v).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import modchain
from .exppoly import ExpPolynomial, block_egf, exppoly_product
from .expressions import IntegerPartition, partitions_of, class_size
from .series import m_series

_SMALL_DIRECT = 48  # below this (m and n) the BiSeries route is used directly

_w_half_cache: dict = {}
_connected_cache: dict = {}


class UnsupportedRegimeError(RuntimeError):
    """The requested asymptotic regime is not covered; never guessed silently."""


# --- connected counts ---------------------------------------------------------


def warm_connected_cache(jobs):
    todo = [(m, n) for m, n in jobs if (m, n) not in _connected_cache]
    if todo:
        _connected_cache.update(modchain.connected_counts(todo))


def connected_count(m, n) -> Fraction:
    """Sum of compensation factors of connected multigraphs: n![z^m v^n] log M."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    if (m, n) not in _connected_cache:
        if m <= _SMALL_DIRECT and n <= _SMALL_DIRECT:
            val = m_series(m, n).log().coeff(m, n) * math.factorial(n)
            _connected_cache[(m, n)] = val
        else:
            warm_connected_cache([(m, n)])
    return _connected_cache[(m, n)]


# --- weighted censuses --------------------------------------------------------


def warm_w_half_cache(jobs):
    todo = [(m, n) for m, n in jobs if (m, n) not in _w_half_cache]
    if todo:
        _w_half_cache.update(modchain.weighted_counts(Fraction(1, 2), todo))


def _w_half(m, n) -> Fraction:
    if (m, n) not in _w_half_cache:
        if m <= _SMALL_DIRECT and n <= _SMALL_DIRECT:
            val = m_series(m, n).pow(Fraction(1, 2)).coeff(m, n) * math.factorial(n)
            _w_half_cache[(m, n)] = val
        else:
            warm_w_half_cache([(m, n)])
    return _w_half_cache[(m, n)]


def weighted_count(m, n, sigma) -> Fraction:
    """n![z^m v^n] M^sigma: multigraphs weighted by kappa and sigma^components."""
    sigma = Fraction(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    if sigma == 1:
        return Fraction(n ** (2 * m), 2 ** m * math.factorial(m))
    if sigma == 2:
        # M^2 in closed form: sum_k binom(n,k) ((k^2+(n-k)^2)/2)^m / m!
        acc = Fraction(0)
        for k in range(n + 1):
            acc += math.comb(n, k) * Fraction(k * k + (n - k) * (n - k), 2) ** m
        return acc / math.factorial(m)
    if sigma == Fraction(1, 2):
        return _w_half(m, n)
    if m > _SMALL_DIRECT or n > _SMALL_DIRECT:
        raise UnsupportedRegimeError(
            "generic sigma weighted census supported at desk scale only")
    return m_series(m, n).pow(sigma).coeff(m, n) * math.factorial(n)


# --- satisfiability -----------------------------------------------------------


def prob_sat_exact(m, n) -> Fraction:
    """Pr[random expression satisfiable] = 2^n m! W_half(m,n) / n^(2m)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    return Fraction(2 ** n * math.factorial(m), n ** (2 * m)) * _w_half(m, n)


def prob_input_satisfies_exact(m, n) -> Fraction:
    """Pr[a fixed or random input satisfies a random satisfiable expression]
    = n^(2m) / (2^m m! 2^n W_half(m,n))."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    w = _w_half(m, n)
    if w == 0:
        raise ArithmeticError("no satisfiable expression at this size")
    return Fraction(n ** (2 * m), 2 ** m * math.factorial(m) * 2 ** n) / w


# --- per-class probabilities --------------------------------------------------


@dataclass(frozen=True)
class ClassProbability:
    partition: IntegerPartition
    count_per_function: Fraction
    class_size: int
    prob_per_function: Fraction
    prob_class: Fraction

    def as_record(self, m):
        from .numutil import fraction_str

        return {
            "n": self.partition.size,
            "m": m,
            "partition": str(self.partition),
            "class_size": str(self.class_size),
            "count": fraction_str(self.count_per_function),
            "prob_function": fraction_str(self.prob_per_function),
            "prob_function_float": float(self.prob_per_function),
            "prob_class": fraction_str(self.prob_class),
            "prob_class_float": float(self.prob_class),
        }


EXPPOLY_TERM_CAP = 2_000_000


def _count_via_exppoly(part: IntegerPartition, m: int) -> Fraction:
    factors = [(block_egf(size), mult) for size, mult in sorted(part.counts().items())]
    prod = exppoly_product(factors)
    return math.factorial(m) * 4 ** m * prod.coeff(m)


def _count_via_biseries(part: IntegerPartition, m: int) -> Fraction:
    """Independent route: coefficient extraction from rows of log M(4z, v)."""
    from .series import UniSeries

    logm = m_series(m, max(part.parts)).log()
    acc = UniSeries.one(m)
    for size, mult in sorted(part.counts().items()):
        row = logm.v_row(size) * math.factorial(size)
        for _ in range(mult):
            acc = acc * row
    return math.factorial(m) * 4 ** m * acc.coeff(m)


def _estimated_terms(part: IntegerPartition) -> int:
    # distinct achievable rates are bounded by the square-sum range
    lo = part.size
    hi = sum(p * p for p in part.parts)
    return max(hi - lo + 1, 1)


def prob_function_exact(part: IntegerPartition, m: int) -> ClassProbability:
    """Exact count and probability for one function of the class, and for the
    whole class, of functions whose block partition is `part`."""
    n = part.size
    if n < 1:
        raise ValueError("partition must be nonempty")
    if m < 0:
        raise ValueError("m must be >= 0")
    csize = class_size(part)
    if m < n - part.num_parts:
        count = Fraction(0)
    elif part.num_parts == 1:
        # single block: [z^m] block_egf(n) is the connected census, so
        # E = m! 4^m C(m,n); this route scales to large n.
        count = math.factorial(m) * 4 ** m * connected_count(m, n)
    elif _estimated_terms(part) <= EXPPOLY_TERM_CAP:
        count = _count_via_exppoly(part, m)
    else:
        count = _count_via_biseries(part, m)
    total = Fraction(4 * n * n) ** m
    prob_fn = count / total
    return ClassProbability(part, count, csize, prob_fn, csize * prob_fn)


def prob_g_blocks_closed_form(g, n, m) -> Fraction:
    """Closed forms for n/g blocks of size g; g in {2, 3}.

    g=2:  n^(-2m) sum_l binom(n/2, l) (l + n/2)^m (-1)^(n/2 - l)
    g=3:  n^(-2m) sum_l sum_j binom(n/3, l) binom(l, j) (n/2 + l + 2j)^m
                                 (-3)^(l-j) 2^(n/3 - l)
    """
    if g not in (2, 3):
        raise ValueError("closed forms exist for g in {2, 3} only")
    if n % g:
        raise ValueError(f"g = {g} must divide n = {n}")
    if m < 0:
        raise ValueError("m must be >= 0")
    half = Fraction(n, 2)
    acc = Fraction(0)
    if g == 2:
        q = n // 2
        for l in range(q + 1):
            acc += math.comb(q, l) * (half + l) ** m * (-1) ** (q - l)
    else:
        q = n // 3
        for l in range(q + 1):
            for j in range(l + 1):
                acc += (math.comb(q, l) * math.comb(l, j)
                        * (half + l + 2 * j) ** m * (-3) ** (l - j) * 2 ** (q - l))
    return acc / Fraction(n) ** (2 * m)


def full_distribution(n, m):
    """One ClassProbability per partition of n, plus the FALSE probability.

    Returns (entries, prob_false); entries ordered by partition.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    entries = [prob_function_exact(part, m) for part in partitions_of(n)]
    sat = sum((e.prob_class for e in entries), Fraction(0))
    return entries, 1 - sat

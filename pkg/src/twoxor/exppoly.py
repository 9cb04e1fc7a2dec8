"""Exponential polynomials: finite sums  sum_k c_k * e^{a_k z}  over rationals.

These are the exact closed form of the per-block generating functions: the
EGF (in v) coefficient  l! [v^l] log M(z,v)  is an exponential polynomial in z
whose rates are half-integers s/2, with s ranging over the square-sums of the
integer partitions of l, and whose coefficients are integers.

Two independent constructions are provided:

* a recurrence peeled off  M = exp(C)  along v, used as the production path
  (integer arithmetic, cached table), and
* a direct finite sum over compositions, kept as a cross-check oracle.
"""

import math
from fractions import Fraction

from .series import UniSeries

_ZERO = Fraction(0)


class ExpPolynomial:
    """Immutable sum  sum c_k e^{a_k z}; rates distinct, sorted, no zero terms."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        merged = {}
        for rate, coef in terms:
            rate = Fraction(rate)
            coef = Fraction(coef)
            if coef:
                merged[rate] = merged.get(rate, _ZERO) + coef
        self.terms = tuple(sorted((r, c) for r, c in merged.items() if c))

    @classmethod
    def unit(cls):
        return cls([(0, 1)])

    @property
    def rates(self):
        return tuple(r for r, _ in self.terms)

    @property
    def coefficients(self):
        return tuple(c for _, c in self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, ExpPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        return ExpPolynomial(self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, ExpPolynomial):
            out = {}
            for r1, c1 in self.terms:
                for r2, c2 in other.terms:
                    r = r1 + r2
                    out[r] = out.get(r, _ZERO) + c1 * c2
            return ExpPolynomial(out.items())
        c = Fraction(other)
        return ExpPolynomial([(r, c * x) for r, x in self.terms])

    __rmul__ = __mul__

    def pow(self, k: int):
        """k-th power by binary exponentiation, merging equal rates as it goes."""
        if k < 0:
            raise ValueError("power must be >= 0")
        result = ExpPolynomial.unit()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale_rates(self, factor):
        """Substitute z -> factor*z."""
        f = Fraction(factor)
        return ExpPolynomial([(r * f, c) for r, c in self.terms])

    def egf_coeff(self, m: int) -> Fraction:
        """m! [z^m] of the polynomial:  sum c_k a_k^m, exact."""
        if m < 0:
            raise ValueError("degree must be >= 0")
        return sum((c * r ** m for r, c in self.terms), _ZERO)

    def coeff(self, m: int) -> Fraction:
        return self.egf_coeff(m) / math.factorial(m)

    def eval(self, z0: float) -> float:
        """Floating-point evaluation at z = z0."""
        return math.fsum(float(c) * math.exp(float(r) * z0) for r, c in self.terms)

    def as_uniseries(self, order: int) -> UniSeries:
        """Truncated z-expansion (plain coefficients, not EGF)."""
        coeffs = []
        powers = [Fraction(1)] * len(self.terms)
        rates = [r for r, _ in self.terms]
        cs = [c for _, c in self.terms]
        fact = 1
        for m in range(order + 1):
            if m:
                fact *= m
                powers = [p * r for p, r in zip(powers, rates)]
            coeffs.append(sum((c * p for c, p in zip(cs, powers)), _ZERO) / fact)
        return UniSeries(coeffs, order)

    def __repr__(self):
        bits = " + ".join(f"({c})e^({r}z)" for r, c in self.terms[:4])
        if len(self.terms) > 4:
            bits += f" + ... [{len(self.terms)} terms]"
        return f"ExpPolynomial({bits or '0'})"


def exppoly_product(factors) -> ExpPolynomial:
    """Product of (poly, multiplicity) pairs; empty input gives the unit 1."""
    result = ExpPolynomial.unit()
    for poly, mult in factors:
        if mult < 1:
            raise ValueError("multiplicities must be >= 1")
        result = result * poly.pow(mult)
    return result


# --- block generating functions ---------------------------------------------
#
# _raw_block(l) holds  l! [v^l] log M(z,v)  as {2*rate: integer coefficient}.
# Recurrence: with M_j = e^{j^2 z/2},
#   C_l = M_l - sum_{k=1}^{l-1} binom(l-1, k-1) C_k M_{l-k},
# which shifts every rate of C_k by (l-k)^2/2 and keeps coefficients integral.

_block_cache = [None, {1: 1}]  # index l; key = 2*rate, value = int coefficient


def _raw_block(l: int) -> dict:
    if l < 1:
        raise ValueError("block size must be >= 1")
    while len(_block_cache) <= l:
        n = len(_block_cache)
        acc = {n * n: 1}
        binom = 1  # binom(n-1, k-1)
        for k in range(1, n):
            shift = (n - k) * (n - k)
            for s, c in _block_cache[k].items():
                key = s + shift
                acc[key] = acc.get(key, 0) - binom * c
            binom = binom * (n - 1 - (k - 1)) // k
        _block_cache.append({s: c for s, c in acc.items() if c})
    return _block_cache[l]


def block_egf(l: int) -> ExpPolynomial:
    """l! [v^l] log M(z,v): the EGF of connected multigraphs on l labelled
    vertices, edges marked by z.  Rates are half-integers, coefficients ints."""
    raw = _raw_block(l)
    return ExpPolynomial([(Fraction(s, 2), c) for s, c in raw.items()])


def _compositions(total, parts):
    """Ordered tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def e_exponential_sum(j: int, n: int) -> ExpPolynomial:
    """[v^n] of ((M(z,v)-1)/v)^j: sum over compositions k_1+...+k_j = n of
    exp(sum (k_t+1)^2 z / 2) / prod (k_t+1)!."""
    out = {}
    for comp in _compositions(n, j):
        rate = Fraction(sum((k + 1) ** 2 for k in comp), 2)
        w = Fraction(1)
        for k in comp:
            w /= math.factorial(k + 1)
        out[rate] = out.get(rate, _ZERO) + w
    return ExpPolynomial(out.items())


def block_egf_reference(l: int) -> ExpPolynomial:
    """Independent construction of block_egf via the finite alternating sum
    l! * sum_{j=1}^{l} (-1)^(j-1)/j * e_{j, l-j}(z).  Exponential in l; use for
    cross-checks only."""
    acc = {}
    for j in range(1, l + 1):
        sign = Fraction((-1) ** (j - 1), j)
        for rate, coef in e_exponential_sum(j, l - j).terms:
            acc[rate] = acc.get(rate, _ZERO) + sign * coef
    fact = math.factorial(l)
    return ExpPolynomial([(r, fact * c) for r, c in acc.items()])

"""Small numeric helpers shared across the package.

Everything exact lives in `fractions.Fraction` / `int`; these utilities cover
the boundary cases: logarithms of huge rationals, word-size primes for the
CRT-based coefficient chains, and JSON-friendly rendering.
"""

import math
from fractions import Fraction

_LN2 = math.log(2.0)


def ln_int(n: int) -> float:
    """Natural log of a positive integer of arbitrary size."""
    if n <= 0:
        raise ValueError("ln_int needs a positive integer")
    k = n.bit_length() - 53
    if k <= 0:
        return math.log(n)
    return math.log(n >> k) + k * _LN2


def ln_fraction(q) -> float:
    """Natural log of a positive Fraction that may overflow float conversion."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("ln_fraction needs a positive rational")
    return ln_int(q.numerator) - ln_int(q.denominator)


def fraction_str(q: Fraction) -> str:
    """Render a rational as 'p/q' (or 'p' when integral)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def fraction_float(q: Fraction) -> float:
    """float(q), falling back to exp(ln q) when the parts overflow."""
    try:
        return float(q)
    except OverflowError:
        if q == 0:
            return 0.0
        sign = 1.0 if q > 0 else -1.0
        return sign * math.exp(ln_fraction(abs(q)))


# --- deterministic primality for 64-bit words -------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers all 64-bit words)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_above(start: int, count: int) -> list:
    """`count` consecutive odd primes >= start (start forced odd)."""
    out = []
    p = start | 1
    while len(out) < count:
        if is_probable_prime(p):
            out.append(p)
        p += 2
    return out


def crt_combine(residues, moduli) -> int:
    """Garner-style CRT; returns x in [0, prod moduli) matching all residues."""
    x = 0
    prod = 1
    for r, p in zip(residues, moduli):
        # adjust x by a multiple of prod so that x = r (mod p)
        t = ((r - x) * pow(prod % p, -1, p)) % p
        x += prod * t
        prod *= p
    return x

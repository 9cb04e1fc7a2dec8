"""Floating-point evaluators for the asymptotic regimes.

All magnitudes that decay like e^(-n) are returned on natural-log scale;
callers exponentiate only when safe.  Saddle points and implicit parameters
(the zeta/lambda of the hyperbolic equations, the g=2 saddle s_n) are solved
by guarded Newton iteration to residuals below 1e-12.

Regime selection for concrete (n, m) is necessarily a set of documented
thresholds; `RegimeTag` records which branch produced a number, and dispatch
is total and deterministic.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .census import UnsupportedRegimeError, connected_count
from .exppoly import block_egf
from .series import UniSeries

SQRT_2PI = math.sqrt(2 * math.pi)

# dispatch thresholds (documented knobs, deterministic)
FIXED_EXCESS_MAX = 10        # r <= this: fixed-excess formulas
DENSE_THRESHOLD = 1.0        # 2m/n - log n above this: dense regime
SQRT_EXCESS_COEF = 0.5       # r <= coef*sqrt(n): moderate-excess single block
LINEAR_EXCESS_ALPHA = 2.0    # m/n >= this: linear-excess single block
CRITICAL_MU_MAX = 1.5        # |mu| <= this counts as the critical window
DEFAULT_RMAX = 20


class RegimeTag(Enum):
    # clause-density ranges
    ALPHA_SUBCRITICAL = "alpha<1/2"
    ALPHA_CRITICAL = "critical window"
    ALPHA_SUPERCRITICAL = "1/2<alpha<1"
    ALPHA_GIANT = "alpha>=1"
    # connected multigraph counts
    CONNECTED_FIXED_EXCESS = "connected: fixed excess"
    CONNECTED_LARGE_EXCESS = "connected: large excess"
    CONNECTED_DENSE = "connected: dense"
    # single-block cases 1-7
    SINGLE_BLOCK_TREE = "single block: r=-1"
    SINGLE_BLOCK_UNICYCLIC = "single block: r=0"
    SINGLE_BLOCK_FIXED_EXCESS = "single block: fixed r>=1"
    SINGLE_BLOCK_MODERATE_EXCESS = "single block: r=o(sqrt n)"
    SINGLE_BLOCK_LINEAR_EXCESS = "single block: r=(alpha-1)n"
    SINGLE_BLOCK_LARGE_EXCESS = "single block: 2m/n-log n bounded"
    SINGLE_BLOCK_DENSE = "single block: dense"
    # two-block regimes
    TWO_BLOCK_FIXED_SINGLE = "two blocks: fixed excess, single large part"
    TWO_BLOCK_FIXED_TWO_LARGE = "two blocks: fixed excess, two large parts"
    TWO_BLOCK_LARGE_SINGLE = "two blocks: large excess, single large part"
    TWO_BLOCK_LARGE_PROPORTIONAL = "two blocks: large excess, proportional parts"
    # fixed function
    FIXED_FUNCTION = "fixed function, alpha constant"
    PROPORTIONAL_SADDLE_G2 = "n/2 blocks of size 2, saddle point"


def classify_alpha(n, m) -> RegimeTag:
    mu = (2 * m / n - 1) * n ** (1 / 3)
    if abs(mu) <= CRITICAL_MU_MAX:
        return RegimeTag.ALPHA_CRITICAL
    alpha = m / n
    if alpha < 0.5:
        return RegimeTag.ALPHA_SUBCRITICAL
    if alpha < 1.0:
        return RegimeTag.ALPHA_SUPERCRITICAL
    return RegimeTag.ALPHA_GIANT


# --- implicit hyperbolic parameters -------------------------------------------


@dataclass(frozen=True)
class SaddleSolution:
    root: float
    residual: float
    iterations: int


def _coth(x):
    if x > 20:
        return 1.0 + 2.0 * math.exp(-2.0 * x)
    return math.cosh(x) / math.sinh(x)


def zeta_solve(x: float) -> SaddleSolution:
    """Positive root of  zeta coth zeta = 1 + x  (x > 0)."""
    if x <= 0:
        raise ValueError("zeta_solve needs x > 0")
    t = 1.0 + x
    z = math.sqrt(3 * x) if x < 1 else t  # small-x and large-x asymptotes
    iters = 0
    for _ in range(100):
        iters += 1
        c = _coth(z)
        f = z * c - t
        # d/dz (z coth z) = coth z - z / sinh^2 z = coth z - z (coth^2 z - 1)
        fp = c - z * (c * c - 1.0)
        step = f / fp
        znew = z - step
        if znew <= 0:
            znew = z / 2
        z = znew
        if abs(f) < 1e-14 * max(1.0, t):
            break
    res = z * _coth(z) - t
    return SaddleSolution(z, res, iters)


def lambda_solve(ratio: float) -> SaddleSolution:
    """Positive root of (lambda/2) coth(lambda/2) = ratio (ratio > 1)."""
    if ratio <= 1:
        raise ValueError("lambda_solve needs ratio > 1")
    half = zeta_solve(ratio - 1.0)
    lam = 2 * half.root
    return SaddleSolution(lam, (lam / 2) * _coth(lam / 2) - ratio, half.iterations)


def _ln_expm1m(lam):
    """ln(e^lam - 1 - lam), stable across scales."""
    if lam > 30:
        return lam + math.log1p(-(1.0 + lam) * math.exp(-lam))
    if lam < 1e-3:
        # lam^2/2 (1 + lam/3 + lam^2/12 + ...)
        return 2 * math.log(lam) - math.log(2.0) + math.log1p(lam / 3 + lam * lam / 12)
    return math.log(math.expm1(lam) - lam)


def _ln_e2_term(lam):
    """ln(e^(2 lam) - 1 - 2 lam e^lam), stable across scales."""
    if lam > 30:
        return 2 * lam + math.log1p(-(math.exp(-2 * lam) + 2 * lam * math.exp(-lam)))
    if lam < 1e-3:
        # lam^3/3 (1 + lam + 17 lam^2/30 + ...)
        return 3 * math.log(lam) - math.log(3.0) + math.log1p(lam + 17 * lam * lam / 30)
    return math.log(math.expm1(2 * lam) - 2 * lam * math.exp(lam))


def ln_alpha_factor(lam: float) -> float:
    """ln of sqrt(2 (e^lam - 1 - lam)^2 / (lam (e^(2 lam) - 1 - 2 lam e^lam)))."""
    return 0.5 * (math.log(2.0) + 2 * _ln_expm1m(lam)
                  - math.log(lam) - _ln_e2_term(lam))


def _ln_sinh(x):
    if x > 20:
        return x + math.log1p(-math.exp(-2 * x)) - math.log(2.0)
    return math.log(math.sinh(x))


def _ln_cosh(x):
    if x > 20:
        return x + math.log1p(math.exp(-2 * x)) - math.log(2.0)
    return math.log(math.cosh(x))


# --- cubic kernel series and its derived constants -----------------------------


def _cubic_kernel_series(order: int) -> UniSeries:
    """sum_l (6l)!/(288^l (3l)!) v^(2l)/(2l)!  truncated at v^order (exact)."""
    coeffs = [Fraction(0)] * (order + 1)
    for l in range(order // 2 + 1):
        coeffs[2 * l] = Fraction(math.factorial(6 * l),
                                 288 ** l * math.factorial(3 * l)
                                 * math.factorial(2 * l))
    return UniSeries(coeffs, order)


_kr_cache = {}


def K_r(r: int) -> float:
    """Fixed-excess constants: K_-1 = 1, K_0 = sqrt(2 pi)/4, and for r > 0
    sqrt(2 pi)/(2^(3r/2) Gamma(3r/2)) [v^(2r)] log(cubic kernel series)."""
    if r < -1:
        raise ValueError("r must be >= -1")
    if r not in _kr_cache:
        if r == -1:
            val = 1.0
        elif r == 0:
            val = SQRT_2PI / 4
        else:
            coef = _cubic_kernel_series(2 * r).log().coeff(2 * r)
            val = (SQRT_2PI / (2 ** (1.5 * r) * math.gamma(1.5 * r))) * float(coef)
        _kr_cache[r] = val
    return _kr_cache[r]


def e_sigma_r(sigma, r: int) -> Fraction:
    """[z^(2r)] of the cubic kernel series raised to the power sigma (exact)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _cubic_kernel_series(2 * r).pow(Fraction(sigma)).coeff(2 * r)


# --- the Airy-type function ----------------------------------------------------


def _recip_gamma_signed(x: float):
    """(sign, ln magnitude) of 1/Gamma(x); zero at the poles."""
    if x > 0:
        return 1.0, -math.lgamma(x)
    if x == math.floor(x):
        return 0.0, -math.inf
    s = math.sin(math.pi * x)
    return math.copysign(1.0, s), math.log(abs(s)) + math.lgamma(1.0 - x) - math.log(math.pi)


def airy_A(y: float, mu: float) -> float:
    """A(y, mu) = e^(-mu^3/6)/3^((y+1)/3) * sum_k (3^(2/3) mu/2)^k /
    (k! Gamma((y+1-2k)/3)); terms hitting Gamma poles contribute zero."""
    c = 3 ** (2 / 3) * mu / 2
    prefactor = math.exp(-mu ** 3 / 6) / 3 ** ((y + 1) / 3)
    sign0, lnmag0 = _recip_gamma_signed((y + 1) / 3)
    total = sign0 * math.exp(lnmag0) if sign0 else 0.0
    if c == 0.0:
        return prefactor * total
    ln_c = math.log(abs(c))
    sign_c = math.copysign(1.0, c)
    small = 0
    for k in range(1, 600):
        sg, lnmag = _recip_gamma_signed((y + 1 - 2 * k) / 3)
        if sg:
            ln_term = k * ln_c - math.lgamma(k + 1) + lnmag
            term = (sign_c ** k) * sg * math.exp(ln_term)
            total += term
            if abs(term) < 1e-16 * max(abs(total), 1e-300):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
    return prefactor * total


# --- connected multigraph asymptotics ------------------------------------------


def connected_asympt(m: int, n: int):
    """ln C_{m,n} by regime; returns (ln value, RegimeTag)."""
    if m < n - 1:
        raise ValueError("no connected multigraph below excess -1")
    if n < 1:
        raise ValueError("n must be >= 1")
    r = m - n
    if r <= FIXED_EXCESS_MAX:
        return (math.log(K_r(r)) + (n + (3 * r - 1) / 2) * math.log(n),
                RegimeTag.CONNECTED_FIXED_EXCESS)
    dense_gap = 2 * m / n - math.log(n)
    if dense_gap > DENSE_THRESHOLD:
        return (2 * m * math.log(n) - m * math.log(2.0) - math.lgamma(m + 1),
                RegimeTag.CONNECTED_DENSE)
    zeta = zeta_solve(m / n - 1.0).root
    lam = 2 * zeta
    val = (ln_alpha_factor(lam) + m * math.log(n) - 0.5 * math.log(2 * math.pi * n)
           + n * (math.log(2.0) + _ln_sinh(zeta)) - m * math.log(lam))
    return val, RegimeTag.CONNECTED_LARGE_EXCESS


# --- satisfiability limits ------------------------------------------------------


def critical_mu(n, m) -> float:
    return (2 * m / n - 1.0) * n ** (1 / 3)


def prob_sat_subcritical(n, m) -> float:
    """(1 - 2m/n)^(1/4); valid for m/n inside (0, 1/2)."""
    if not 0 <= 2 * m < n:
        raise UnsupportedRegimeError("subcritical form needs m/n < 1/2")
    return (1 - 2 * m / n) ** 0.25


def prob_sat_critical(n, m, r_max=DEFAULT_RMAX):
    """Critical-window value and the truncation tail ratio:
    n^(-1/12) sqrt(2 pi) sum_r e_r^(1/2)/2^r A(3r + 1/4, mu)."""
    mu = critical_mu(n, m)
    total = 0.0
    last = 0.0
    for r in range(r_max + 1):
        term = float(e_sigma_r(Fraction(1, 2), r)) / 2 ** r * airy_A(3 * r + 0.25, mu)
        total += term
        last = term
    tail_ratio = abs(last) / abs(total) if total else math.inf
    return n ** (-1 / 12) * SQRT_2PI * total, tail_ratio


def prob_sat_limit(n, m, r_max=DEFAULT_RMAX) -> float:
    """Dispatch to the subcritical form or the critical-window sum; outside
    both (m/n > 1/2 beyond the window) the regime is unsupported."""
    tag = classify_alpha(n, m)
    if tag is RegimeTag.ALPHA_CRITICAL:
        return prob_sat_critical(n, m, r_max)[0]
    if tag is RegimeTag.ALPHA_SUBCRITICAL:
        return prob_sat_subcritical(n, m)
    raise UnsupportedRegimeError(
        f"Pr(sat) limit covers m/n < 1/2 and the critical window; "
        f"(n={n}, m={m}) is supercritical")


def prob_input_limit(n, m, r_max=DEFAULT_RMAX, sigma_variant="half") -> float:
    """ln Pr[random input satisfies a random satisfiable expression].

    Subcritical: -m ln 2 - (1/4) ln(1 - 2m/n).  In the window, two readings
    of the critical constant are exposed: sigma_variant="half" uses the
    e_r^(1/2) family consistent with Pr(sat)*Pr(input) = 2^-m; "two" evaluates
    the literal e_r^(2) display.  The choice is flagged, never silent.
    """
    if m == 0:
        return 0.0
    tag = classify_alpha(n, m)
    if tag is RegimeTag.ALPHA_SUBCRITICAL:
        return -m * math.log(2.0) - 0.25 * math.log(1 - 2 * m / n)
    if tag is not RegimeTag.ALPHA_CRITICAL:
        raise UnsupportedRegimeError(
            f"input-probability limit unsupported at (n={n}, m={m})")
    mu = critical_mu(n, m)
    if sigma_variant == "half":
        total = sum(float(e_sigma_r(Fraction(1, 2), r)) / 2 ** r
                    * airy_A(3 * r + 0.25, mu) for r in range(r_max + 1))
        return (math.log(n) / 12 - m * math.log(2.0)
                - math.log(SQRT_2PI * total))
    if sigma_variant == "two":
        total = sum(float(e_sigma_r(2, r)) / 2 ** r * airy_A(3 * r + 0.25, mu)
                    for r in range(r_max + 1))
        return math.log(n) / 12 - m * math.log(2.0) - math.log(total)
    raise ValueError("sigma_variant must be 'half' or 'two'")


# --- fixed function -------------------------------------------------------------


def prob_fixed_function_limit(tail_counts: dict, alpha: float, n: int) -> float:
    """ln Pr for a fixed function with i_l = tail_counts[l] blocks of size
    l >= 2 (all remaining variables singletons), m = alpha n:

        Pr ~ e^(-alpha e(f)) (2n)^(-m) prod_l phi_l(2 alpha)^(i_l),

    phi_l the block EGF l![v^l] log M.  The support requirement is
    m >= n - xi, i.e. alpha n >= sum (l-1) i_l.
    """
    if any(l < 2 or c < 0 for l, c in tail_counts.items()):
        raise ValueError("tail_counts maps block sizes >= 2 to counts")
    essential = sum(l * c for l, c in tail_counts.items())
    min_m = sum((l - 1) * c for l, c in tail_counts.items())
    if essential > n:
        raise ValueError("tail blocks exceed n variables")
    m = alpha * n
    if m < min_m - 1e-9:
        raise UnsupportedRegimeError(
            f"support violated: m = alpha n = {m:.3f} < n - xi = {min_m}")
    val = -alpha * essential - m * math.log(2 * n)
    for l, c in tail_counts.items():
        if c:
            val += c * math.log(block_egf(l).eval(2 * alpha))
    return val


# --- single-block regimes --------------------------------------------------------


def single_block_asympt(n: int, m: int):
    """ln Pr[expression computes x_1 ~ ... ~ x_n], dispatched over the seven
    excess regimes; returns (ln value, RegimeTag)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = m - n
    if r < -1:
        raise ValueError("single block needs m >= n - 1")
    if r == -1:
        return 0.5 * math.log(2 * math.pi / n) - n, RegimeTag.SINGLE_BLOCK_TREE
    if r == 0:
        return math.log(math.pi / 2) - n, RegimeTag.SINGLE_BLOCK_UNICYCLIC
    if 2 * m / n - math.log(n) > DENSE_THRESHOLD:
        return -m * math.log(2.0), RegimeTag.SINGLE_BLOCK_DENSE
    if r <= FIXED_EXCESS_MAX:
        # Pr ~ c_r e^-n n^(r/2); assembling Thm-1 constants with exact
        # Stirling gives c_r = sqrt(2 pi) K_r (the r = -1, 0 specialisations
        # reproduce cases 1-2).
        return (math.log(SQRT_2PI * K_r(r)) - n + 0.5 * r * math.log(n),
                RegimeTag.SINGLE_BLOCK_FIXED_EXCESS)
    if r <= SQRT_EXCESS_COEF * math.sqrt(n):
        val = (0.5 * math.log(1.5) + 0.5 * r - r * math.log(2 * math.sqrt(3.0))
               - n + 0.5 * r * (math.log(n) - math.log(r)))
        return val, RegimeTag.SINGLE_BLOCK_MODERATE_EXCESS
    if m / n >= LINEAR_EXCESS_ALPHA:
        alpha = m / n
        zeta = zeta_solve(alpha - 1.0).root
        k5 = 0.5 * math.log(alpha) + ln_alpha_factor(2 * zeta)
        inner = ((alpha - 1) * math.log(alpha) + _ln_cosh(zeta)
                 - (alpha - 1) * math.log(2 * zeta) - alpha)
        return k5 + n * inner, RegimeTag.SINGLE_BLOCK_LINEAR_EXCESS
    zeta = zeta_solve(r / n).root
    val = (ln_alpha_factor(2 * zeta) - r * math.log(2 * zeta)
           + n * (_ln_sinh(zeta) - math.log(zeta))
           + (n + r + 0.5) * math.log1p(r / n) - (n + r))
    return val, RegimeTag.SINGLE_BLOCK_LARGE_EXCESS


# --- two-block regimes ------------------------------------------------------------


def _ln_connected_thm2(m, n):
    """Thm-2 form of ln C_{m,n} without regime dispatch (used inside sums)."""
    zeta = zeta_solve(m / n - 1.0).root
    lam = 2 * zeta
    return (ln_alpha_factor(lam) + m * math.log(n) - 0.5 * math.log(2 * math.pi * n)
            + n * (math.log(2.0) + _ln_sinh(zeta)) - m * math.log(lam))


def g_log_deriv(a: float, gamma: float, c: float) -> float:
    """d/da log g(a) = c log(gamma/(1-gamma) * zeta_2(a)/zeta_1(a))."""
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    z1 = zeta_solve(a * c / gamma).root
    z2 = zeta_solve((1 - a) * c / (1 - gamma)).root
    return c * math.log(gamma / (1 - gamma) * z2 / z1)


def find_a0(gamma: float, c: float, tol=1e-12) -> float:
    """Unique maximiser of g on (0,1): bisection on the strictly decreasing
    derivative of log g."""
    lo, hi = 1e-15, 1.0 - 1e-15
    if g_log_deriv(lo, gamma, c) <= 0 or g_log_deriv(hi, gamma, c) >= 0:
        raise ArithmeticError("derivative does not bracket a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if g_log_deriv(mid, gamma, c) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def ln_g(a: float, gamma: float, c: float) -> float:
    def half(x, weight, share):
        if x <= 0:
            return 0.0
        z = zeta_solve(x).root
        return weight * (_ln_cosh(z) - math.log1p(x)) + share * math.log(weight / z)

    x1 = a * c / gamma
    x2 = (1 - a) * c / (1 - gamma)
    return half(x1, gamma, a * c) + half(x2, 1 - gamma, (1 - a) * c)


def two_block_asympt(n: int, p: int, m: int, regime: str) -> float:
    """ln Pr for the class with blocks of sizes p and n-p (p <= n-p).

    regime selects the formula: "fixed-single" (p and the excess fixed),
    "fixed-two-large" (fixed excess, both parts large), "large-single"
    (excess proportional to n, p fixed), or "large-proportional" (excess and
    both parts proportional to n).
    """
    if not 2 <= p <= n - p:
        raise ValueError("need 2 <= p <= n - p")
    r = m - n
    if r < -2:
        raise ValueError("two blocks need m >= n - 2")
    if regime == "fixed-single":
        # dominant split: the fixed part takes excess -1 (a tree, p^(p-2)
        # realisations), the large part excess r+1; expanding
        # (n-p)^(n-p+(3r+2)/2) = n^(...) (1-p/n)^n ... contributes e^-p.
        gamma_tree = p ** (p - 2)  # p![v^p] C_-1(v)
        return (math.log(SQRT_2PI * gamma_tree * K_r(r + 1)) - p
                + ((r + 3) / 2 - p) * math.log(n) - n)
    if regime == "fixed-two-large":
        q = n - p
        ratio = p / q
        s = sum(K_r(d) * K_r(r - d) * ratio ** (1.5 * d)
                for d in range(-1, r + 2))
        return (0.5 * math.log(2 * math.pi * n / (p * q)) - n
                - (n + r) * math.log(n) + (n + 1.5 * r) * math.log(q)
                + p * math.log(ratio) + math.log(s))
    if regime == "large-single":
        # direct Laplace sum over the small part's excess d, exact gamma_{d,p}
        lnm_fact = math.lgamma(m + 1)
        terms = []
        d = -1
        best = -math.inf
        while d <= r + 1:
            big_m = m - p - d  # edges of the large part (excess r - d on n-p)
            if big_m >= (n - p) - 1 and big_m / (n - p) > 1.0:
                gam = connected_count(p + d, p)
                if gam > 0:
                    ln_term = (math.log(float(gam))
                               + _ln_connected_thm2(big_m, n - p))
                    terms.append(ln_term)
                    best = max(best, ln_term)
                    if ln_term < best - 50 and d > 5:
                        break
            d += 1
            if d > 400:
                break
        if not terms:
            raise UnsupportedRegimeError("no admissible excess split")
        s = sum(math.exp(t - best) for t in terms)
        return lnm_fact - 2 * m * math.log(n) + best + math.log(s)
    if regime == "large-proportional":
        gamma = p / n
        c = r / n
        if c <= 0:
            raise UnsupportedRegimeError("large-proportional needs positive excess")
        a0 = find_a0(gamma, c)
        x1 = a0 * c / gamma
        x2 = (1 - a0) * c / (1 - gamma)
        z1, z2 = zeta_solve(x1).root, zeta_solve(x2).root
        lam = c * (c / (1 - gamma) / (z2 * z2 - x2 * (1 + x2))
                   + c / gamma / (z1 * z1 - x1 * (1 + x1)))
        base = (gamma * math.log(gamma) + (1 - gamma) * math.log(1 - gamma)
                + (c + 1) * math.log(c + 1) - c * math.log(2.0) - (c + 1))
        return (0.5 * math.log((c + 1) / (gamma * (1 - gamma) * lam))
                + n * base + ln_alpha_factor(2 * z1) + ln_alpha_factor(2 * z2)
                - math.log(n) + n * ln_g(a0, gamma, c))
    raise ValueError(f"unknown two-block regime {regime!r}")


# --- proportional blocks: the g=2 saddle point ------------------------------------


def _saddle_g2_equation(s):
    """s (2 e^s - 1)/(e^s - 1) and its derivative."""
    if s < 1e-4:
        f = 1 + 1.5 * s + s * s / 12 - s ** 4 / 720
        fp = 1.5 + s / 6 - s ** 3 / 180
        return f, fp
    u = math.exp(s)
    um1 = math.expm1(s)
    f = s * (2 * u - 1) / um1
    fp = (2 * u - 1) / um1 - s * u / (um1 * um1)
    return f, fp


def saddle_g2(n: int, kappa_n: float):
    """Saddle data for n/2 blocks of size 2 at m = n/2 + kappa_n.

    Solves  s(2e^s - 1)/(e^s - 1) = 1 + 2 kappa_n/n  by Newton, then assembles

      ln E = ln m! + (2m + 1) ln 2 - (1/2) ln(6 pi n s)
             + (n/2 - m) ln s + 3 n s/4 + n s^2/48.

    The count is  m! 4^m [z^m] (e^z(e^z-1))^(n/2); evaluating the circle
    integral at the saddle gives the prefactor 2^(2m+1)/sqrt(6 pi n s) -- a
    formulation carrying an extra 2^(n/2) double-counts the factor already
    absorbed into e^z(e^z-1) and is off by exactly that factor (checked
    against the exact census).

    Returns (SaddleSolution, ln E, bootstrap) with the two-term bootstrap
    expansion 4 kappa/(3n) - (8/81)(kappa/n)^2 reported alongside.
    """
    if kappa_n < 1:
        raise ValueError("kappa_n must be >= 1")
    target = 1.0 + 2.0 * kappa_n / n
    s = 4.0 * kappa_n / (3.0 * n)
    iters = 0
    for _ in range(80):
        iters += 1
        f, fp = _saddle_g2_equation(s)
        step = (f - target) / fp
        s -= step
        if s <= 0:
            s = 1e-12
        if abs(f - target) < 1e-13:
            break
    f, _ = _saddle_g2_equation(s)
    sol = SaddleSolution(s, f - target, iters)
    m = n / 2 + kappa_n
    ln_e = (math.lgamma(m + 1) + (2 * m + 1) * math.log(2.0)
            - 0.5 * math.log(6 * math.pi * n * s)
            + (n / 2 - m) * math.log(s) + 0.75 * n * s + n * s * s / 48)
    u = kappa_n / n
    bootstrap = 4 * u / 3 - 8 * u * u / 81
    return sol, ln_e, bootstrap

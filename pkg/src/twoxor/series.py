"""Truncated power series over exact rationals.

`UniSeries` is a plain dense univariate series truncated at a fixed order.
`BiSeries` is a dense bivariate series in (z, v); by convention z marks
clauses/edges and v marks variables/vertices throughout the package.

All transcendental operations (exp, log, rational powers) run on the standard
differential-equation recurrences, so a single code path serves sigma = 1/2,
2, or any other rational exponent.  Operations on mismatched truncation orders
truncate to the smaller order.  Instances are immutable after construction and
safe to share between threads.
"""

from fractions import Fraction
from math import factorial

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class UniSeries:
    """Dense truncated univariate series with Fraction coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = [_frac(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs = coeffs + [_ZERO] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs[: order + 1])
        self.order = order

    @classmethod
    def zero(cls, order):
        return cls([_ZERO], order)

    @classmethod
    def one(cls, order):
        return cls([_ONE], order)

    def coeff(self, k) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"degree {k} outside truncation order {self.order}")
        return self.coeffs[k]

    def egf_coeff(self, k) -> Fraction:
        return self.coeff(k) * factorial(k)

    def truncate(self, order):
        if order >= self.order:
            return self
        return UniSeries(self.coeffs[: order + 1], order)

    def __eq__(self, other):
        return (isinstance(other, UniSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        order = min(self.order, other.order)
        return UniSeries([self.coeffs[k] + other.coeffs[k] for k in range(order + 1)], order)

    def __sub__(self, other):
        order = min(self.order, other.order)
        return UniSeries([self.coeffs[k] - other.coeffs[k] for k in range(order + 1)], order)

    def __mul__(self, other):
        if isinstance(other, UniSeries):
            order = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            out = [_ZERO] * (order + 1)
            for i in range(min(len(a) - 1, order) + 1):
                ai = a[i]
                if not ai:
                    continue
                for j in range(order - i + 1):
                    if b[j]:
                        out[i + j] += ai * b[j]
            return UniSeries(out, order)
        c = _frac(other)
        return UniSeries([c * x for x in self.coeffs], self.order)

    __rmul__ = __mul__

    def exp(self):
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs constant term 0")
        n = self.order
        s = self.coeffs
        out = [_ONE] + [_ZERO] * n
        for k in range(1, n + 1):
            acc = _ZERO
            for j in range(1, k + 1):
                if s[j]:
                    acc += j * s[j] * out[k - j]
            out[k] = acc / k
        return UniSeries(out, n)

    def log(self):
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        s = self.coeffs
        out = [_ZERO] * (n + 1)
        for k in range(1, n + 1):
            acc = k * s[k]
            for j in range(1, k):
                if out[j] and s[k - j]:
                    acc -= j * out[j] * s[k - j]
            out[k] = acc / k
        return UniSeries(out, n)

    def pow(self, sigma):
        """Rational power of a series with constant term 1 (F' S = sigma S' F)."""
        sigma = _frac(sigma)
        if self.coeffs[0] != 1:
            raise ValueError("pow needs constant term 1")
        n = self.order
        s = self.coeffs
        out = [_ONE] + [_ZERO] * n
        for k in range(1, n + 1):
            acc = _ZERO
            for j in range(1, k + 1):
                if s[j]:
                    acc += sigma * j * s[j] * out[k - j]
            for j in range(1, k):
                if out[j] and s[k - j]:
                    acc -= j * out[j] * s[k - j]
            out[k] = acc / k
        return UniSeries(out, n)

    def inverse(self):
        """Multiplicative inverse (constant term must be 1)."""
        if self.coeffs[0] != 1:
            raise ValueError("inverse needs constant term 1")
        n = self.order
        s = self.coeffs
        out = [_ONE] + [_ZERO] * n
        for k in range(1, n + 1):
            acc = _ZERO
            for j in range(1, k + 1):
                if s[j] and out[k - j]:
                    acc += s[j] * out[k - j]
            out[k] = -acc
        return UniSeries(out, n)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[: min(5, self.order + 1)])
        tail = ", ..." if self.order >= 5 else ""
        return f"UniSeries([{head}{tail}], order={self.order})"


# ---------------------------------------------------------------------------


def _row_mul(a, b, nmax):
    out = [_ZERO] * (nmax + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        top = nmax - i
        for j, bj in enumerate(b[: top + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


class BiSeries:
    """Dense truncated bivariate series; coeffs[a][b] multiplies z^a v^b."""

    __slots__ = ("coeffs", "m_max", "n_max")

    def __init__(self, coeffs, m_max=None, n_max=None):
        rows = [[_frac(c) for c in row] for row in coeffs]
        if m_max is None:
            m_max = len(rows) - 1
        if n_max is None:
            n_max = max(len(r) for r in rows) - 1 if rows else 0
        if m_max < 0 or n_max < 0:
            raise ValueError("truncation orders must be >= 0")
        full = []
        for a in range(m_max + 1):
            row = rows[a] if a < len(rows) else []
            row = list(row[: n_max + 1]) + [_ZERO] * (n_max + 1 - len(row))
            full.append(tuple(row))
        self.coeffs = tuple(full)
        self.m_max = m_max
        self.n_max = n_max

    @classmethod
    def zero(cls, m_max, n_max):
        return cls([[_ZERO]], m_max, n_max)

    def coeff(self, m, n) -> Fraction:
        if not (0 <= m <= self.m_max and 0 <= n <= self.n_max):
            raise IndexError(f"degree ({m},{n}) outside truncation "
                             f"({self.m_max},{self.n_max})")
        return self.coeffs[m][n]

    def egf_coeff(self, m, n) -> Fraction:
        """m! n! [z^m v^n]; the bi-exponential coefficient."""
        return self.coeff(m, n) * (factorial(m) * factorial(n))

    def _common(self, other):
        return min(self.m_max, other.m_max), min(self.n_max, other.n_max)

    def __eq__(self, other):
        return (isinstance(other, BiSeries) and self.m_max == other.m_max
                and self.n_max == other.n_max and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.m_max, self.n_max, self.coeffs))

    def __add__(self, other):
        mm, nn = self._common(other)
        return BiSeries([[self.coeffs[a][b] + other.coeffs[a][b]
                          for b in range(nn + 1)] for a in range(mm + 1)], mm, nn)

    def __sub__(self, other):
        mm, nn = self._common(other)
        return BiSeries([[self.coeffs[a][b] - other.coeffs[a][b]
                          for b in range(nn + 1)] for a in range(mm + 1)], mm, nn)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            c = _frac(other)
            return BiSeries([[c * x for x in row] for row in self.coeffs],
                            self.m_max, self.n_max)
        mm, nn = self._common(other)
        out = [[_ZERO] * (nn + 1) for _ in range(mm + 1)]
        for a in range(mm + 1):
            row = self.coeffs[a]
            if not any(row[: nn + 1]):
                continue
            for c in range(mm - a + 1):
                prod = _row_mul(row[: nn + 1], other.coeffs[c][: nn + 1], nn)
                tgt = out[a + c]
                for b in range(nn + 1):
                    if prod[b]:
                        tgt[b] += prod[b]
        return BiSeries(out, mm, nn)

    __rmul__ = __mul__

    # z-direction recurrences; the a = 0 row is handled by the univariate ops.

    def exp(self):
        """exp of a series with zero (0,0) coefficient."""
        if self.coeffs[0][0] != 0:
            raise ValueError("exp needs (0,0) coefficient 0")
        mm, nn = self.m_max, self.n_max
        rows = [list(r) for r in self.coeffs]
        out = [list(UniSeries(rows[0], nn).exp().coeffs)]
        for a in range(1, mm + 1):
            acc = [_ZERO] * (nn + 1)
            for b in range(1, a + 1):
                term = _row_mul(rows[b], out[a - b], nn)
                for t in range(nn + 1):
                    if term[t]:
                        acc[t] += b * term[t]
            out.append([x / a for x in acc])
        return BiSeries(out, mm, nn)

    def log(self):
        """log of a series with (0,0) coefficient 1."""
        if self.coeffs[0][0] != 1:
            raise ValueError("log needs (0,0) coefficient 1")
        mm, nn = self.m_max, self.n_max
        rows = [list(r) for r in self.coeffs]
        r0 = UniSeries(rows[0], nn)
        inv0 = list(r0.inverse().coeffs)
        out = [list(r0.log().coeffs)]
        for a in range(1, mm + 1):
            acc = list(rows[a])
            for b in range(1, a):
                term = _row_mul(out[b], rows[a - b], nn)
                for t in range(nn + 1):
                    if term[t]:
                        acc[t] -= Fraction(b, a) * term[t]
            out.append(_row_mul(acc, inv0, nn))
        return BiSeries(out, mm, nn)

    def pow(self, sigma):
        """Rational power of a series with (0,0) coefficient 1."""
        sigma = _frac(sigma)
        if self.coeffs[0][0] != 1:
            raise ValueError("pow needs (0,0) coefficient 1")
        mm, nn = self.m_max, self.n_max
        rows = [list(r) for r in self.coeffs]
        r0 = UniSeries(rows[0], nn)
        inv0 = list(r0.inverse().coeffs)
        out = [list(r0.pow(sigma).coeffs)]
        for a in range(1, mm + 1):
            acc = [_ZERO] * (nn + 1)
            for b in range(1, a + 1):
                term = _row_mul(rows[b], out[a - b], nn)
                w = sigma * b
                for t in range(nn + 1):
                    if term[t]:
                        acc[t] += w * term[t]
            for b in range(1, a):
                term = _row_mul(out[b], rows[a - b], nn)
                for t in range(nn + 1):
                    if term[t]:
                        acc[t] -= b * term[t]
            acc = [x / a for x in acc]
            out.append(_row_mul(acc, inv0, nn))
        return BiSeries(out, mm, nn)

    def v_row(self, n) -> UniSeries:
        """The z-series multiplying v^n (no n! factor)."""
        if not 0 <= n <= self.n_max:
            raise IndexError(f"v-degree {n} outside truncation {self.n_max}")
        return UniSeries([self.coeffs[a][n] for a in range(self.m_max + 1)], self.m_max)

    def __repr__(self):
        return f"BiSeries(m_max={self.m_max}, n_max={self.n_max})"


def m_series(m_max, n_max, z_scale=1, v_scale=1) -> BiSeries:
    """The multigraph series M(z_scale*z, v_scale*v) = sum_n e^{n^2 z/2} v^n/n!.

    Coefficient of z^a v^b is z_scale^a * v_scale^b * (b^2/2)^a / (a! b!).
    """
    if m_max < 0 or n_max < 0:
        raise ValueError("truncation orders must be >= 0")
    zs, vs = _frac(z_scale), _frac(v_scale)
    cols = []
    for b in range(n_max + 1):
        rate = zs * Fraction(b * b, 2)
        col = []
        cur = vs ** b / factorial(b)
        for a in range(m_max + 1):
            col.append(cur)
            cur = cur * rate / (a + 1)
        cols.append(col)
    return BiSeries([[cols[b][a] for b in range(n_max + 1)]
                     for a in range(m_max + 1)], m_max, n_max)


def series_exp(s: BiSeries) -> BiSeries:
    return s.exp()


def series_log(s: BiSeries) -> BiSeries:
    return s.log()


def series_pow(s: BiSeries, sigma) -> BiSeries:
    return s.pow(sigma)

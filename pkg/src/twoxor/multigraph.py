"""Labelled multigraphs, compensation factors, and small-instance censuses.

A multigraph drawn by the uniform process (2m independent uniform vertices,
paired into m edges) occurs with probability proportional to its compensation
factor kappa(G) = seqv(G) / (2^m m!), where seqv(G) counts the ordered vertex
sequences realizing its edge multiset.  Families are counted by summing kappa,
which is why censuses can be non-integers.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .series import UniSeries


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


DEFAULT_ENUM_CAP = 10 ** 7


@dataclass(frozen=True)
class Multigraph:
    """Canonical form: edges as a sorted tuple of sorted vertex pairs."""

    n: int
    edges: tuple

    @classmethod
    def from_pairs(cls, n, pairs):
        edges = tuple(sorted((u, v) if u <= v else (v, u) for u, v in pairs))
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"vertex outside [1, {n}]")
        return cls(n, edges)

    @property
    def m(self):
        return len(self.edges)

    def excess(self):
        return self.m - self.n

    def degree(self, v):
        d = 0
        for a, b in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1  # a loop contributes 2
        return d

    def min_degree(self):
        return min((self.degree(v) for v in range(1, self.n + 1)), default=0)


def seqv(g: Multigraph) -> int:
    """Ordered vertex sequences u1,v1,...,um,vm realizing E(G):
    m! * 2^(non-loop edge positions) / prod_j multiplicity_j!."""
    mult = {}
    non_loop_positions = 0
    for u, v in g.edges:
        mult[(u, v)] = mult.get((u, v), 0) + 1
        if u != v:
            non_loop_positions += 1
    out = math.factorial(g.m) * 2 ** non_loop_positions
    for c in mult.values():
        out //= math.factorial(c)
    return out


def kappa(g: Multigraph) -> Fraction:
    return Fraction(seqv(g), 2 ** g.m * math.factorial(g.m))


def multigraph_count(m, n) -> Fraction:
    """Total kappa-weighted number of multigraphs: n^(2m) / (2^m m!)."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    return Fraction(n ** (2 * m), 2 ** m * math.factorial(m))


def cubic_count(r) -> Fraction:
    """kappa-weighted number of 3-regular multigraphs on 2r vertices:
    (6r)! / ((3!)^(2r) 2^(3r) (3r)!)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return Fraction(math.factorial(6 * r),
                    6 ** (2 * r) * 8 ** r * math.factorial(3 * r))


def core_count(m, n) -> Fraction:
    """kappa-weighted number of multigraphs with minimum degree >= 2:
    (2m)!/(2^m m!) * Q(n,m), Q(n,m) = [x^(2m)] (e^x - 1 - x)^n."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    if n == 0:
        return Fraction(1) if m == 0 else Fraction(0)
    order = 2 * m
    base = [Fraction(0), Fraction(0)] + \
           [Fraction(1, math.factorial(k)) for k in range(2, order + 1)]
    s = UniSeries(base, order)
    # integer power via repeated squaring on truncated series
    q = UniSeries.one(order)
    b, e = s, n
    while e:
        if e & 1:
            q = q * b
        e >>= 1
        if e:
            b = b * b
    return Fraction(math.factorial(2 * m), 2 ** m * math.factorial(m)) * q.coeff(order)


def sample_multigraph(n, m, rng) -> Multigraph:
    """One draw of the multigraph process using rng.randrange."""
    pairs = [(rng.randrange(1, n + 1), rng.randrange(1, n + 1)) for _ in range(m)]
    return Multigraph.from_pairs(n, pairs)


def _edge_universe(n):
    return [(u, v) for u in range(1, n + 1) for v in range(u, n + 1)]


def enumerate_multigraphs(n, m, cap=DEFAULT_ENUM_CAP):
    """All distinct multigraphs with n vertices and m edges, each with its
    kappa.  Guarded by the sequence-draw budget n^(2m) <= cap."""
    budget = n ** (2 * m)
    if budget > cap:
        raise BudgetExceededError(
            f"enumeration needs n^(2m) = {budget} > cap = {cap}", budget)
    import itertools

    out = []
    for combo in itertools.combinations_with_replacement(_edge_universe(n), m):
        g = Multigraph(n, tuple(combo))
        out.append((g, kappa(g)))
    return out


def connected_components(g: Multigraph) -> int:
    """Number of components; isolated vertices count, loops stay incident."""
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in range(1, g.n + 1)})


def is_connected(g: Multigraph) -> bool:
    return g.n <= 1 or connected_components(g) == 1

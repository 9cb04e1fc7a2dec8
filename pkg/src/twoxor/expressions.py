"""2-Xor expressions, their Boolean functions, and the multigraph bijection.

A clause is an ordered pair of literals l xor l'; an expression an ordered
sequence of clauses over variables x_1..x_n.  Every satisfiable expression
computes a function described by a partition of the polarity-assigned
variables into blocks: the function is TRUE exactly when each block's literals
agree.  Reduction runs union-find with parity; a contradictory merge yields
the absorbing FALSE.

Canonical form fixes the polarity gauge: in each block the minimum-index
variable is positive, and blocks are ordered by minimum variable, so function
equality is plain equality of the representation.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .kernels.pure import _ParityUF
from .multigraph import Multigraph


@dataclass(frozen=True)
class Clause:
    """Ordered pair of literals; a literal is (variable index, sign in {+1,-1})."""

    first: tuple
    second: tuple

    def __post_init__(self):
        for var, sign in (self.first, self.second):
            if var < 1 or sign not in (1, -1):
                raise ValueError(f"bad literal ({var}, {sign})")


@dataclass(frozen=True)
class Expression:
    n: int
    clauses: tuple

    def __post_init__(self):
        for c in self.clauses:
            if max(c.first[0], c.second[0]) > self.n:
                raise ValueError("clause variable exceeds n")

    @property
    def m(self):
        return len(self.clauses)


def evaluate(expr: Expression, assignment) -> bool:
    """Conjunction of xors; clause l1 xor l2 is TRUE iff the literal values differ."""
    if len(assignment) != expr.n:
        raise ValueError(f"assignment length {len(assignment)} != n = {expr.n}")

    def lit(l):
        var, sign = l
        val = bool(assignment[var - 1])
        return val if sign == 1 else not val

    return all(lit(c.first) != lit(c.second) for c in expr.clauses)


@dataclass(frozen=True)
class FunctionRepr:
    """Either FALSE, or blocks: tuple of blocks, each a tuple of (var, sign),
    members sorted by variable, min variable positive, blocks sorted by min."""

    n: int
    is_false: bool
    blocks: tuple = ()

    @classmethod
    def false(cls, n):
        return cls(n, True, ())

    def __str__(self):
        if self.is_false:
            return "FALSE"
        bits = []
        for block in self.blocks:
            bits.append("{" + " ".join(f"{'x' if s == 1 else '~x'}{v}"
                                       for v, s in block) + "}")
        return " ".join(bits)

    def num_blocks(self):
        if self.is_false:
            raise ValueError("FALSE has no block structure")
        return len(self.blocks)

    def truth_table(self):
        """Set of satisfying assignments (tuples), for small n only."""
        import itertools

        if self.is_false:
            return set()
        out = set()
        for bits in itertools.product((0, 1), repeat=self.n):
            ok = True
            for block in self.blocks:
                vals = {bits[v - 1] if s == 1 else 1 - bits[v - 1] for v, s in block}
                if len(vals) > 1:
                    ok = False
                    break
            if ok:
                out.add(bits)
        return out


def reduce(expr: Expression) -> FunctionRepr:
    """Canonical Boolean function computed by the expression."""
    uf = _ParityUF(expr.n)
    for c in expr.clauses:
        (v1, s1), (v2, s2) = c.first, c.second
        uf.add_clause(v1, 0 if s1 == 1 else 1, v2, 0 if s2 == 1 else 1)
        # FALSE is absorbing but remaining clauses are still consumed
    if not uf.alive:
        return FunctionRepr.false(expr.n)
    return _function_from_uf(uf, expr.n)


def _function_from_uf(uf, n) -> FunctionRepr:
    groups = {}
    for v in range(1, n + 1):
        r, q = uf.find(v)
        groups.setdefault(r, []).append((v, q))
    blocks = []
    for members in groups.values():
        members.sort()
        base = members[0][1]
        blocks.append(tuple((v, 1 if q == base else -1) for v, q in members))
    blocks.sort(key=lambda b: b[0][0])
    return FunctionRepr(n, False, tuple(blocks))


# --- integer partitions -------------------------------------------------------


@dataclass(frozen=True, order=True)
class IntegerPartition:
    """Parts stored as a descending tuple, e.g. (3, 2, 1, 1)."""

    parts: tuple

    @classmethod
    def of(cls, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        return cls(parts)

    @classmethod
    def from_counts(cls, counts):
        parts = []
        for size, mult in counts.items():
            parts.extend([size] * mult)
        return cls.of(parts)

    @classmethod
    def parse(cls, text):
        return cls.of(int(tok) for tok in text.replace(" ", "").split("+") if tok)

    def __str__(self):
        return "+".join(str(p) for p in self.parts)

    @property
    def size(self):
        return sum(self.parts)

    @property
    def num_parts(self):
        return len(self.parts)

    def counts(self):
        out = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out


def partition_of(f: FunctionRepr) -> IntegerPartition:
    if f.is_false:
        raise ValueError("FALSE forms a class by itself and has no partition")
    return IntegerPartition.of(len(b) for b in f.blocks)


def essential_count(f: FunctionRepr) -> int:
    """Number of essential variables: n minus the singleton blocks."""
    if f.is_false:
        return 0
    return f.n - sum(1 for b in f.blocks if len(b) == 1)


def class_size(part: IntegerPartition) -> int:
    """|C_i| = 2^(n - xi) n! / prod_l i_l! (l!)^(i_l)."""
    n = part.size
    denom = 1
    for size, mult in part.counts().items():
        denom *= math.factorial(mult) * math.factorial(size) ** mult
    return 2 ** (n - part.num_parts) * math.factorial(n) // denom


def partitions_of(n: int):
    """All partitions of n, parts descending, in deterministic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(IntegerPartition(tuple(prefix)))
            return
        for p in range(min(largest, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def num_classes(n: int) -> int:
    """p(n) + 1: one class per partition plus the class of FALSE."""
    return len(partitions_of(n)) + 1


# --- the colored-multigraph bijection ----------------------------------------
#
# A clause maps to the edge {var1, var2}; the color records literal order and
# polarities.  Loops admit 4 colors (sign pair), non-loop edges 8 (whether the
# clause lists the smaller vertex first, plus both signs).


def to_multigraph(expr: Expression):
    """Returns (canonical multigraph, labels).

    labels[i] = ((u, v), color) for clause i with u <= v; loops take one of 4
    colors (the sign pair), other edges one of 8 (whether the clause listed the
    larger vertex first, plus both signs).  The labels carry the full bijection;
    the multigraph is the canonical underlying object.
    """
    labels = []
    for c in expr.clauses:
        (v1, s1), (v2, s2) = c.first, c.second
        b1 = 0 if s1 == 1 else 1
        b2 = 0 if s2 == 1 else 1
        if v1 == v2:
            labels.append(((v1, v2), 2 * b1 + b2))
        else:
            swapped = 0 if v1 < v2 else 1
            if swapped:
                b1, b2 = b2, b1  # store signs in vertex order
            labels.append(((min(v1, v2), max(v1, v2)), 4 * swapped + 2 * b1 + b2))
    g = Multigraph.from_pairs(expr.n, [pair for pair, _ in labels])
    return g, tuple(labels)


def from_multigraph(n: int, labels) -> Expression:
    """Inverse of to_multigraph."""
    clauses = []
    for (u, v), col in labels:
        if u == v:
            b1, b2 = divmod(col, 2)
            clauses.append(Clause((u, 1 if b1 == 0 else -1),
                                  (u, 1 if b2 == 0 else -1)))
        else:
            swapped, rest = divmod(col, 4)
            b1, b2 = divmod(rest, 2)
            if swapped:
                lits = ((v, 1 if b2 == 0 else -1), (u, 1 if b1 == 0 else -1))
            else:
                lits = ((u, 1 if b1 == 0 else -1), (v, 1 if b2 == 0 else -1))
            clauses.append(Clause(*lits))
    return Expression(n, tuple(clauses))


def clause_from_code(n: int, code: int) -> Clause:
    """Decode an index in [0, 4n^2) to a clause (the sampling order)."""
    two_n = 2 * n
    l1, l2 = divmod(code, two_n)
    return Clause((l1 // 2 + 1, 1 if l1 % 2 == 0 else -1),
                  (l2 // 2 + 1, 1 if l2 % 2 == 0 else -1))


def sample_expression(n, m, rng) -> Expression:
    """m clauses drawn uniformly with replacement from the 4n^2 possibilities."""
    total = 4 * n * n
    return Expression(n, tuple(clause_from_code(n, rng.randrange(total))
                               for _ in range(m)))


# --- textual format: "1 -3, -6 5, 7 -7" ---------------------------------------


def parse_expression(text: str, n=None) -> Expression:
    clauses = []
    top = 0
    for chunk in text.split(","):
        toks = chunk.split()
        if not toks:
            continue
        if len(toks) != 2:
            raise ValueError(f"clause {chunk!r} needs exactly two literals")
        lits = []
        for tok in toks:
            val = int(tok)
            if val == 0:
                raise ValueError("literal 0 is not allowed")
            lits.append((abs(val), 1 if val > 0 else -1))
            top = max(top, abs(val))
        clauses.append(Clause(*lits))
    if n is None:
        n = top
    return Expression(n, tuple(clauses))


def format_expression(expr: Expression) -> str:
    return ", ".join(f"{c.first[0] * c.first[1]} {c.second[0] * c.second[1]}"
                     for c in expr.clauses)

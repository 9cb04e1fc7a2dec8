"""Brute-force ground truth: exhaust all (4n^2)^m expressions for tiny sizes.

The oracle stays deliberately dumb: it enumerates every clause sequence in
mixed-radix order, reduces each, and tallies counts per canonical function and
per class.  No symmetry tricks, so it can arbitrate every other pipeline.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .expressions import FunctionRepr, IntegerPartition, partition_of
from .multigraph import BudgetExceededError, DEFAULT_ENUM_CAP


def _decode_sig(n, sig) -> FunctionRepr:
    groups = {}
    for v in range(1, n + 1):
        bid, rel = sig[2 * (v - 1)], sig[2 * (v - 1) + 1]
        groups.setdefault(bid, []).append((v, 1 if rel == 0 else -1))
    blocks = [tuple(members) for _, members in sorted(
        groups.items(), key=lambda kv: kv[1][0][0])]
    return FunctionRepr(n, False, tuple(blocks))


@dataclass
class OracleCensus:
    n: int
    m: int
    total: int
    false_count: int
    per_function: dict  # FunctionRepr -> count
    per_class: dict = field(default_factory=dict)  # IntegerPartition -> (#fns, total)

    def __post_init__(self):
        if not self.per_class:
            for f, c in self.per_function.items():
                part = partition_of(f)
                k, t = self.per_class.get(part, (0, 0))
                self.per_class[part] = (k + 1, t + c)

    def prob_false(self) -> Fraction:
        return Fraction(self.false_count, self.total)

    def prob_sat(self) -> Fraction:
        return 1 - self.prob_false()

    def class_prob(self, part) -> Fraction:
        _, t = self.per_class.get(part, (0, 0))
        return Fraction(t, self.total)

    def function_count(self, part) -> int:
        """Count per individual function of the class (they are equiprobable)."""
        k, t = self.per_class.get(part, (0, 0))
        if k == 0:
            return 0
        counts = {self.per_function[f] for f in self.per_function
                  if partition_of(f) == part}
        if len(counts) != 1:
            raise AssertionError(f"class {part} not equiprobable: {counts}")
        return counts.pop()

    def as_record(self):
        return {
            "n": self.n,
            "m": self.m,
            "total": self.total,
            "false_count": self.false_count,
            "classes": {
                str(part): {"functions_seen": k, "total_count": t}
                for part, (k, t) in sorted(self.per_class.items(),
                                           key=lambda kv: str(kv[0]))
            },
        }


def exhaustive_census(n, m, cap=DEFAULT_ENUM_CAP) -> OracleCensus:
    """Enumerate all (4n^2)^m expressions and reduce each one."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    total = (4 * n * n) ** m
    if total > cap:
        raise BudgetExceededError(
            f"oracle needs (4n^2)^m = {total} > cap = {cap}", total)
    hist = kernels.oracle_scan(n, m, 0, total)
    false_count = hist.pop((), 0)
    per_function = {_decode_sig(n, sig): c for sig, c in hist.items()}
    assert sum(per_function.values()) + false_count == total
    return OracleCensus(n, m, total, false_count, per_function)

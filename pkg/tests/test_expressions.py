import itertools
import math
import random

import pytest

from twoxor.expressions import (Clause, Expression, FunctionRepr,
                                IntegerPartition, class_size, clause_from_code,
                                essential_count, evaluate, format_expression,
                                from_multigraph, num_classes, parse_expression,
                                partition_of, partitions_of, reduce,
                                sample_expression, to_multigraph)
from twoxor.multigraph import connected_components


def all_expressions(n, m):
    total = 4 * n * n
    for codes in itertools.product(range(total), repeat=m):
        yield Expression(n, tuple(clause_from_code(n, c) for c in codes))


def expression_for_blocks(n, blocks):
    """Chain clauses realizing a given polarity-labelled partition."""
    clauses = []
    for block in blocks:
        for (v1, s1), (v2, s2) in zip(block, block[1:]):
            clauses.append(Clause((v1, s1), (v2, -s2)))
    if not clauses:  # TRUE needs at least zero clauses; keep it empty
        return Expression(n, ())
    return Expression(n, tuple(clauses))


def test_evaluate_basics():
    n = 2
    taut = parse_expression("1 -1", n=n)
    contr = parse_expression("1 1", n=n)
    x12 = parse_expression("1 2", n=n)
    for bits in itertools.product((0, 1), repeat=n):
        assert evaluate(taut, bits)
        assert not evaluate(contr, bits)
    assert evaluate(x12, (0, 1)) and evaluate(x12, (1, 0))
    assert not evaluate(x12, (1, 1)) and not evaluate(x12, (0, 0))
    with pytest.raises(ValueError):
        evaluate(x12, (0, 1, 1))


def test_running_example():
    e = parse_expression("1 3, -6 5, 7 -7, 2 -3", n=7)
    f = reduce(e)
    assert str(f) == "{x1 ~x2 ~x3} {x4} {x5 x6} {x7}"
    part = partition_of(f)
    assert part == IntegerPartition.of([3, 2, 1, 1])
    assert part.num_parts == 4
    assert essential_count(f) == 5


def test_reduce_matches_truth_tables_exhaustively():
    for n in (1, 2, 3):
        for m in (0, 1, 2, 3):
            if (4 * n * n) ** m > 50000:
                continue
            for e in all_expressions(n, m):
                f = reduce(e)
                tt = {bits for bits in itertools.product((0, 1), repeat=n)
                      if evaluate(e, bits)}
                assert tt == f.truth_table(), e


def test_false_and_true():
    assert reduce(parse_expression("1 2, 1 -2")).is_false
    empty = reduce(Expression(3, ()))
    assert not empty.is_false
    assert empty.blocks == (((1, 1),), ((2, 1),), ((3, 1),))
    # FALSE is absorbing even when later clauses are benign
    e = parse_expression("1 1, 2 -2")
    assert reduce(e).is_false


def test_block_flip_gauge_invariance():
    rng = random.Random(5)
    for _ in range(200):
        e = sample_expression(4, 4, rng)
        f = reduce(e)
        if f.is_false:
            continue
        for k in range(len(f.blocks)):
            flipped = [tuple((v, -s) for v, s in b) if i == k else b
                       for i, b in enumerate(f.blocks)]
            e2 = expression_for_blocks(4, flipped)
            f2 = reduce(e2)
            # flipping one block's polarities describes the same function,
            # up to the blocks that e2 cannot see (singletons stay singletons)
            assert f2.truth_table() == f.truth_table()
            assert f2 == f


def test_satisfying_count_is_power_of_blocks():
    rng = random.Random(9)
    for n in (2, 3, 4):
        for _ in range(120):
            e = sample_expression(n, rng.randrange(0, 5), rng)
            f = reduce(e)
            if not f.is_false:
                assert len(f.truth_table()) == 2 ** f.num_blocks()


def test_partition_bookkeeping():
    with pytest.raises(ValueError):
        partition_of(FunctionRepr.false(3))
    true5 = reduce(Expression(5, ()))
    assert partition_of(true5) == IntegerPartition.of([1] * 5)
    assert essential_count(true5) == 0
    single = IntegerPartition.of([6])
    assert single.num_parts == 1 and single.size == 6


def test_class_sizes_and_counts():
    assert class_size(IntegerPartition.parse("3+2+1+1")) == 1680
    assert class_size(IntegerPartition.of([1] * 7)) == 1
    assert num_classes(5) == 8
    assert len(partitions_of(5)) == 7
    assert sorted(p.size for p in partitions_of(6)) == [6] * 11


def test_reachable_function_count_matches_class_sizes():
    # all functions on n variables appear by m = n - 1 clauses; dedup over
    # m <= n covers every class support
    for n in (1, 2, 3):
        seen = set()
        false_seen = False
        for m in range(0, n + 1):
            if (4 * n * n) ** m > 50000:
                break
            for e in all_expressions(n, m):
                f = reduce(e)
                if f.is_false:
                    false_seen = True
                else:
                    seen.add(f)
        expected = sum(class_size(p) for p in partitions_of(n))
        assert len(seen) == expected
        assert false_seen == (True if n >= 1 else False)


def test_multigraph_bijection():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randrange(1, 6)
        m = rng.randrange(0, 5)
        e = sample_expression(n, m, rng)
        g, labels = to_multigraph(e)
        assert from_multigraph(n, labels) == e
        f = reduce(e)
        if not f.is_false:
            assert connected_components(g) == f.num_blocks()
    # loops carry 4 colors, other edges 8: distinct clause encodings = 4n^2
    n = 3
    codes = {format_expression(Expression(n, (clause_from_code(n, c),)))
             for c in range(4 * n * n)}
    assert len(codes) == 4 * n * n


def test_textual_round_trip():
    e = parse_expression("1 -3, -6 5, 7 -7", n=7)
    assert parse_expression(format_expression(e), n=7) == e
    assert parse_expression("2 3").n == 3  # n inferred from max variable
    with pytest.raises(ValueError):
        parse_expression("1 0")
    with pytest.raises(ValueError):
        parse_expression("1 2 3")

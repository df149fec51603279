from collections import Counter

import pytest

from dimwitness import (
    BadArgument,
    DeterministicStrategy,
    IncompleteDecoding,
    TooLarge,
    WitnessKind,
    balanced_partition_value,
    enumerate_max,
    eval_linear,
    eval_quadratic,
    evaluate,
    strategy_table,
)

Q, L, G = WitnessKind.QUADRATIC, WitnessKind.LINEAR, WitnessKind.GUESSING


class TestStrategyTable:
    def test_two_preparations_distinct_symbols(self):
        strategy = DeterministicStrategy(2, 2, (1, 2), {(1, 1): 2, (1, 2): 1})
        table = strategy_table(strategy, Q)
        # the lone pair is (2, 1); the b=1 effect fires on preparation 2's symbol
        assert table.p[1, 0, 0] - table.p[0, 0, 0] == 1.0
        assert eval_quadratic(table) == 1.0

    def test_single_message_carries_nothing(self):
        strategy = DeterministicStrategy(2, 1, (1, 1), {(1, 1): 1})
        assert eval_quadratic(strategy_table(strategy, Q)) == 0.0

    def test_balanced_four_preparations(self):
        _, strategy = enumerate_max(Q, 4, 2)
        table = strategy_table(strategy, Q)
        assert eval_quadratic(table) == 4.0  # 6 pairs, 2 within groups

    def test_missing_decoding_entry(self):
        strategy = DeterministicStrategy(2, 2, (1, 2), {(1, 1): 1})
        with pytest.raises(IncompleteDecoding):
            strategy_table(strategy, Q)

    def test_encoding_validation(self):
        with pytest.raises(BadArgument):
            DeterministicStrategy(2, 2, (1, 3), {})


class TestEnumerateMax:
    def test_reference_quadratic_point(self):
        value, strategy = enumerate_max(Q, 7, 2)
        assert value == 12.0
        assert strategy.encoding == (1, 1, 1, 1, 2, 2, 2)

    def test_full_dimension_maximum(self):
        for n in (3, 4, 5):
            value, _ = enumerate_max(Q, n, n)
            assert value == n * (n - 1) / 2

    def test_linear_next_to_full_dimension(self):
        assert enumerate_max(L, 3, 2)[0] == 2.0
        for n in (3, 4, 5, 6):
            assert enumerate_max(L, n, n - 1)[0] == n * (n - 1) / 2 - 1

    def test_guessing_is_dimension_over_preparations(self):
        for n in range(2, 7):
            for d in range(1, n + 1):
                assert enumerate_max(G, n, d)[0] == d / n

    def test_guard(self):
        with pytest.raises(TooLarge):
            enumerate_max(Q, 30, 3)

    def test_canonical_balanced_maximizer(self):
        value, strategy = enumerate_max(Q, 7, 3)
        assert value == 16.0
        assert strategy.encoding == (1, 1, 1, 2, 2, 3, 3)

    def test_maximizer_group_sizes_differ_by_at_most_one(self):
        for n in range(2, 9):
            for d in range(1, n + 1):
                _, strategy = enumerate_max(Q, n, d)
                sizes = Counter(strategy.encoding).values()
                assert max(sizes) - min(sizes) <= 1, (n, d)

    def test_strategy_reproduces_enumerated_value(self):
        for kind in (Q, L, G):
            for n, d in [(4, 2), (5, 3), (6, 2)]:
                value, strategy = enumerate_max(kind, n, d)
                assert evaluate(kind, strategy_table(strategy, kind)) == pytest.approx(value, abs=1e-12)


class TestBalancedPartitionValue:
    def test_reference_values(self):
        assert balanced_partition_value(7, 3) == 16.0
        assert balanced_partition_value(6, 3) == 12.0

    def test_single_group(self):
        for n in range(2, 8):
            assert balanced_partition_value(n, 1) == 0.0

    def test_agrees_with_enumeration_on_grid(self):
        for n in range(2, 9):
            for d in range(2, n + 1):
                enum_value, _ = enumerate_max(Q, n, d)
                assert enum_value == balanced_partition_value(n, d), (n, d)
                linear_value, _ = enumerate_max(L, n, d)
                assert linear_value == enum_value, (n, d)

    def test_rejects_bad_arguments(self):
        with pytest.raises(BadArgument):
            balanced_partition_value(1, 2)
        with pytest.raises(BadArgument):
            balanced_partition_value(4, 0)


def test_linear_strategy_value_matches_table_evaluation():
    value, strategy = enumerate_max(L, 5, 3)
    assert eval_linear(strategy_table(strategy, L)) == value

import json
import math
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divpart import partition
from divpart.partition import (
    build_table,
    exact_distribution,
    general_binomial,
    oracle_table,
    tables_equal,
)


def test_general_binomial():
    assert general_binomial(4, 2) == 6
    assert general_binomial(4, 5) == 0
    assert general_binomial(0, 0) == 1
    # (1+x)^(-8): alternating with rising magnitudes
    assert general_binomial(-8, 1) == -8
    assert general_binomial(-8, 2) == 36
    assert general_binomial(-8, 3) == -120
    with pytest.raises(ValueError):
        general_binomial(3, -1)


def test_hand_expansion_examples():
    # (1+uz)^4 (1+uz^2)^5 (1+uz^3)^11 truncated at z^3
    t = build_table(2, 3)
    assert t.value(0, 0) == 1
    assert t.value(1, 1) == 4
    assert t.value(2, 1) == 5
    assert t.value(2, 2) == 6       # C(4,2)
    assert t.value(3, 2) == 20      # 4*5
    assert t.value(3, 3) == 4       # C(4,3)
    assert t.value(3, 1) == 11


@pytest.mark.parametrize("r", [2, 3, 5])
def test_empty_product_cell(r):
    assert build_table(r, 1).value(0, 0) == 1


@pytest.mark.parametrize("r,n_max", [(2, 9), (2, 10), (2, 12), (3, 8), (3, 12)])
def test_oracle_equivalence(r, n_max):
    built = build_table(r, n_max)
    oracles = oracle_table(r, n_max)
    assert tables_equal(built, oracles.naive)
    if oracles.enumeration is not None:
        assert tables_equal(built, oracles.enumeration)
    else:
        assert oracles.enumeration_refused is not None
        assert "< 0" in oracles.enumeration_refused


def test_enumeration_refusal_is_negative_gap_regime():
    oracles = oracle_table(2, 12)
    assert oracles.enumeration is None      # gap(10) = -8
    assert oracle_table(2, 9).enumeration is not None


def test_oracle_budget_guard():
    with pytest.raises(ValueError):
        oracle_table(2, 15)


def test_row_totals_match_bivariate_sums(table_r2_60):
    for n in range(61):
        assert sum(table_r2_60.coeff[n]) == table_r2_60.row_totals[n]


def test_factor_permutation_invariance():
    assert partition.permuted_build_matches(2, 40, trials=5, seed=20240817)


def test_doubling_cost_guard():
    def best_time(n_max):
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            build_table(2, n_max)
            best = min(best, time.perf_counter() - t0)
        return max(best, 1e-4)  # clock floor

    assert best_time(128) / best_time(64) <= 8.0


class TestExactDistribution:
    def test_single_cell_row(self):
        t = build_table(2, 1)
        d = exact_distribution(t, 1)
        assert d.pmf == {1: Fraction(1)}
        assert d.mean == 1 and d.variance == 0
        assert d.negativity_flags == [] and d.total_positive

    def test_two_cell_row(self):
        t = build_table(2, 2)
        d = exact_distribution(t, 2)
        assert d.pmf == {1: Fraction(5, 11), 2: Fraction(6, 11)}

    @given(st.integers(min_value=1, max_value=60))
    @settings(max_examples=30, deadline=None)
    def test_pmf_sums_to_one_exactly(self, n):
        t = _cached_table()
        d = exact_distribution(t, n)
        assert sum(d.pmf.values(), Fraction(0)) == 1

    def test_negativity_flags(self):
        t = build_table(2, 12)
        d = exact_distribution(t, 10)
        assert d.negativity_flags == [1]        # the weight-1 cell is gap(10) = -8
        assert d.pmf[1] == Fraction(-8, 12455)
        assert float(d.negative_mass) > 0

    def test_degenerate_row_rejected(self):
        t = partition.PartitionTable(
            r=2, n_max=1, k_max=1, coeff=[[1], [0]], row_totals=[1, 0], gaps=(4,),
        )
        with pytest.raises(ValueError, match="degenerate"):
            exact_distribution(t, 1)

    def test_capped_table_rejected(self):
        t = build_table(2, 12, k_max=2)
        with pytest.raises(ValueError, match="truncated"):
            exact_distribution(t, 12)

    def test_out_of_range(self):
        t = build_table(2, 5)
        with pytest.raises(ValueError):
            exact_distribution(t, 6)


_TABLE_CACHE = {}


def _cached_table():
    if "t" not in _TABLE_CACHE:
        _TABLE_CACHE["t"] = build_table(2, 60)
    return _TABLE_CACHE["t"]


class TestExport:
    def test_csv_shape(self):
        t = build_table(2, 3)
        text = t.to_csv()
        lines = text.splitlines()
        assert lines[0] == "n,k,coefficient"
        assert "3,2,20" in lines
        assert text.endswith("\n") and "\r" not in text

    def test_json_roundtrip(self):
        t = build_table(2, 10)
        doc = json.loads(t.to_json())
        assert doc["r"] == 2 and doc["n_max"] == 10
        cells = {(n, k): int(c) for n, k, c in doc["entries"]}
        for (n, k), c in cells.items():
            assert t.value(n, k) == c
        assert [int(x) for x in doc["row_totals"]] == t.row_totals

    def test_export_deterministic(self):
        a = build_table(2, 15)
        b = build_table(2, 15)
        assert a.to_csv() == b.to_csv()
        assert a.to_json() == b.to_json()


def test_build_rejects_bad_order():
    with pytest.raises(ValueError):
        build_table(2, 5, factor_order=[1, 2, 3])
    with pytest.raises(ValueError):
        build_table(0, 5)

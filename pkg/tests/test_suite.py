"""Tests for the seeded law suite: determinism, sharding, and the
deliberate-fault canary."""

import pytest

from cuntzkit import suite
from cuntzkit.geometry import InputError


def test_registry_names_are_unique():
    assert len(set(suite.CHECK_NAMES)) == len(suite.CHECK_NAMES) == 22


def test_run_suite_is_deterministic():
    a = suite.run_suite(seed=11, cases=3)
    b = suite.run_suite(seed=11, cases=3)
    assert a == b


def test_small_run_is_clean():
    report = suite.run_suite(seed=2, cases=3)
    assert report["failures"] == 0
    assert all(c["status"] == "pass" for c in report["checks"])


def test_case_caps_are_applied():
    report = suite.run_suite(seed=2, cases=100, names=["weak-chain-construction"])
    assert report["checks"][0]["cases"] == 25


def test_check_order_is_registry_order():
    report = suite.run_suite(seed=2, cases=2, names=["almost-ordered-sums", "bounded-decomposition"])
    got = [c["name"] for c in report["checks"]]
    assert got == [n for n in suite.CHECK_NAMES if n in got]


def test_mutation_canary_fails():
    report = suite.run_suite(seed=2, cases=10, names=["pairwise-ordered-sum-identity"],
                             mutate=("add-off-by-one",))
    assert report["failures"] > 0
    assert report["checks"][0]["status"] == "fail"
    assert report["checks"][0]["failures"][0]["detail"]


def test_mutation_does_not_touch_other_checks():
    report = suite.run_suite(seed=2, cases=5, names=["ordered-refold-identity"],
                             mutate=("add-off-by-one",))
    assert report["failures"] == 0


def test_unknown_check_and_mutation():
    with pytest.raises(InputError):
        suite.run_check("no-such-check", seed=1, cases=1)
    with pytest.raises(InputError):
        suite.run_suite(seed=1, cases=1, mutate=("no-such-fault",))


def test_shards_partition_the_registry():
    parts = [suite.shard_names(i, 4) for i in range(4)]
    flat = [n for part in parts for n in part]
    assert sorted(flat) == sorted(suite.CHECK_NAMES)
    with pytest.raises(InputError):
        suite.shard_names(4, 4)


def test_merge_equals_full_run():
    full = suite.run_suite(seed=9, cases=2)
    shards = [suite.run_suite(seed=9, cases=2, names=suite.shard_names(i, 3)) for i in range(3)]
    assert suite.merge_reports(shards) == full


def test_merge_rejects_mismatched_seed():
    a = suite.run_suite(seed=1, cases=2, names=["bounded-decomposition"])
    b = suite.run_suite(seed=2, cases=2, names=["unit-cancellation"])
    with pytest.raises(InputError):
        suite.merge_reports([a, b])

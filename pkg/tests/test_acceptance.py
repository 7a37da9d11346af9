"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``. Every tolerance is
pinned here; the statistical checks run under the fixed master seed, so
the whole suite is deterministic.
"""

import random
from fractions import Fraction

import pytest

from wildquery.analysis import config_step_bound, mean_step_bound
from wildquery.experiments import (
    ExperimentConfig,
    emit,
    run_chord_decay,
    run_chord_single,
    run_chord_wildcard,
    run_identity_sweep,
    run_position_law,
    run_trie_exact,
    run_trie_random,
)
from wildquery.trie import random_trie
from wildquery.wildcard import (
    QueryPattern,
    backtracking_query,
    brute_force_query,
    random_pattern,
)

SEED = 2024


def cfg(experiment, **kw):
    kw.setdefault("seed", SEED)
    return ExperimentConfig(experiment=experiment, **kw)


@pytest.fixture(scope="module")
def binary_sweep():
    """trie-exact reports for every m <= 12, 1 <= w <= min(5, m)."""
    reports = {}
    for m in range(1, 13):
        for w in range(1, min(5, m) + 1):
            reports[(m, w)] = run_trie_exact(cfg("trie-exact", m=m, w=w, k=2))
    return reports


def test_criterion_01_exact_average_tightness(binary_sweep):
    for (m, w), report in binary_sweep.items():
        measured = report.aggregates["measured_mean"]
        bound = report.aggregates["bound_mean"]
        assert measured["num"] == bound["num"]
        assert measured["den"] == bound["den"]
        closed = mean_step_bound(m, w, 2)
        assert Fraction(measured["num"], measured["den"]) == closed
    assert Fraction(
        binary_sweep[(2, 1)].aggregates["measured_mean"]["num"],
        binary_sweep[(2, 1)].aggregates["measured_mean"]["den"],
    ) == 5
    assert Fraction(
        binary_sweep[(3, 2)].aggregates["measured_mean"]["num"],
        binary_sweep[(3, 2)].aggregates["measured_mean"]["den"],
    ) == Fraction(41, 3)
    print(
        "\nACCEPTANCE 1 PASS: enumerated mean equals the closed form exactly "
        f"for all {len(binary_sweep)} (m,w) pairs, m<=12, w<=5"
    )


def test_criterion_02_per_configuration_tightness(binary_sweep):
    rows = 0
    for (m, w), report in binary_sweep.items():
        for row in report.rows:
            assert row.ok and row.measured == row.bound_num
            rows += 1
    print(
        f"ACCEPTANCE 2 PASS: steps == per-configuration bound on all {rows} "
        "complete-trie configurations"
    )


def test_criterion_03_kary_tightness():
    pairs = 0
    for k in (2, 3, 4):
        for m in range(1, 9):
            for w in range(1, min(4, m) + 1):
                report = run_trie_exact(cfg("trie-exact", m=m, w=w, k=k))
                assert report.aggregates["mean_equals_bound"]
                pairs += 1
    spot = run_trie_exact(cfg("trie-exact", m=1, w=1, k=3))
    assert spot.aggregates["bound_mean"] == {"num": 5, "den": 1, "decimal": 5.0}
    print(
        f"ACCEPTANCE 3 PASS: k-ary enumerated means exact for k in 2..4 "
        f"({pairs} (k,m,w) triples), spot (1,1,3) -> 5"
    )


def test_criterion_04_upper_bound_on_random_tries():
    report = run_trie_random(
        cfg("trie-random", m=12, w=4, k=2, population=1 << 10, trials=10_000)
    )
    assert report.aggregates["bound_violations"] == 0
    assert report.aggregates["mean_within_3_sigma"]
    print(
        "ACCEPTANCE 4 PASS: 10^4 random-trie trials all within the "
        "per-configuration bound; sample mean under the average bound "
        f"({report.aggregates['sample_mean']:.2f} vs "
        f"{report.aggregates['bound_mean']['decimal']:.2f})"
    )


def test_criterion_05_formula_identities():
    report = run_identity_sweep(cfg("identity-sweep", m=20))
    assert report.aggregates["all_equal"]
    print(
        f"ACCEPTANCE 5 PASS: {report.aggregates['checks']} exact identity "
        "checks up to m=20, zero violations"
    )


def test_criterion_06_position_law():
    report = run_position_law(cfg("position-law", m=10, w=3, trials=100_000))
    assert report.aggregates["sums_exact"]
    assert report.aggregates["all_within_3_sigma"]
    print(
        "ACCEPTANCE 6 PASS: position pmf sums to 1 exactly and matches "
        f"10^5 sampled draws within 3 sigma over {len(report.rows)} cells"
    )


def test_criterion_07_oracle_equivalence():
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(1000):
        k = rng.choice([2, 3, 4])
        m = rng.randint(1, {2: 12, 3: 7, 4: 6}[k])
        population = rng.randint(0, k**m)
        trie = random_trie(k, m, population, seed=rng.getrandbits(48))
        w = rng.randint(0, min(m, {2: 8, 3: 5, 4: 4}[k]))
        pattern = random_pattern(m, w, k, rng)
        fast = backtracking_query(trie, pattern).matches
        slow = brute_force_query(trie, pattern)
        mismatches += fast != frozenset(slow)
    assert mismatches == 0
    print(
        "ACCEPTANCE 7 PASS: search agrees with the brute-force oracle on "
        "1000 random (trie, pattern) instances, zero mismatches"
    )


def test_criterion_08_chord_single_lookup_sweep():
    report = run_chord_single(
        cfg("chord-single", m=12, n=256, trials=0, entries_factor=1,
            mode="full")
    )
    assert report.aggregates["all_correct"]
    assert report.aggregates["halving_violations"] == 0
    assert report.aggregates["max_hops"] <= 12
    assert report.aggregates["lookups"] == (1 << 12) * 256
    print(
        "ACCEPTANCE 8 PASS: exhaustive (target, start) sweep, "
        f"{report.aggregates['lookups']} lookups all correct, every hop "
        f"halves the distance, max hops {report.aggregates['max_hops']} <= 12"
    )


def test_criterion_09_wildcard_queries_on_the_ring():
    for w in (2, 3, 4):
        report = run_chord_wildcard(
            cfg("chord-wildcard", m=16, w=w, n=1 << 10, trials=1000,
                entries_factor=4, mode="full")
        )
        assert all(row.ok for row in report.rows)
        agg = report.aggregates
        assert agg["mean_under_bound_plus_m"]
        assert agg["mean_under_half_naive"]
        print(
            f"ACCEPTANCE 9 PASS (w={w}): per-run hops within the "
            "per-configuration bound; mean "
            f"{agg['mean_total_hops']:.2f} <= bound+m "
            f"{agg['bound_mean_plus_m']:.2f} and < half of naive "
            f"{agg['naive_hops']}"
        )


def test_criterion_10_chord_correctness_decay():
    report = run_chord_decay(
        cfg("chord-decay", m=16, n=256, trials=500, entries_factor=8,
            mode="entry-bound")
    )
    agg = report.aggregates
    assert agg["monotone_non_increasing"]
    assert agg["zero_errors_at_max"]
    rates = agg["error_rate_by_factor"]
    print(
        "ACCEPTANCE 10 PASS: error rate non-increasing over C=1,2,4,8 "
        f"({', '.join(f'{c}:{r:.4f}' for c, r in rates.items())}), zero at "
        "C=8, non-error lookups within m hops"
    )


def test_criterion_11_reproducibility(tmp_path):
    cases = [
        ("trie-random", dict(m=10, w=3, population=256, trials=400), run_trie_random),
        ("position-law", dict(m=6, w=2, trials=20_000), run_position_law),
        (
            "chord-wildcard",
            dict(m=12, w=3, n=256, trials=60, entries_factor=4, mode="full"),
            run_chord_wildcard,
        ),
    ]
    for name, params, runner in cases:
        for fmt in ("csv", "json"):
            first = tmp_path / f"{name}-a.{fmt}"
            second = tmp_path / f"{name}-b.{fmt}"
            emit(runner(cfg(name, **params)), fmt, first)
            emit(runner(cfg(name, **params)), fmt, second)
            assert first.read_bytes() == second.read_bytes(), (name, fmt)
    print(
        "ACCEPTANCE 11 PASS: reruns with identical config and seed emit "
        "byte-identical CSV and JSON reports"
    )

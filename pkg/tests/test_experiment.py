import pytest

from smallcuts.enumeration import EnumerationConfig
from smallcuts.experiment import aggregate, run_experiment
from smallcuts.generators import GeneratorSpec
from smallcuts.strategies import OPTIMUM, STRATEGIES

SPEC = GeneratorSpec("planted-range", 9, (0, 255), small_range=(0, 31), seed=5)


@pytest.fixture(scope="module")
def report():
    return run_experiment(SPEC, 12, EnumerationConfig(seed=1, repetitions=8))


def test_shape(report):
    assert [t.index for t in report.triples] == list(range(12))
    for t in report.triples:
        assert [o.strategy for o in t.outcomes] == list(STRATEGIES)


def test_optimum_is_100_percent(report):
    a = report.aggregate(OPTIMUM)
    assert a.pct_of_opt_all == 100.0 and a.pct_of_opt_high_sim == 100.0 and a.failures == 0


def test_aggregates_are_row_sums(report):
    for a in report.aggregates:
        rows = [t for t in report.triples if not t.outcome(a.strategy).failed]
        assert a.failures == len(report.triples) - len(rows)
        assert a.sum_all == pytest.approx(sum(t.outcome(a.strategy).weight for t in rows))
        hi = [t for t in rows if t.u_sim >= report.median_u_sim]
        assert a.sum_high_sim == pytest.approx(sum(t.outcome(a.strategy).weight for t in hi))
        opt = sum(t.outcome(OPTIMUM).weight for t in rows)
        assert a.pct_of_opt_all == pytest.approx(100 * a.sum_all / opt)
        assert a.pct_of_opt_all >= 100 - 1e-9


def test_high_sim_subset_is_at_least_half(report):
    assert 2 * report.high_sim_count >= len(report.triples)


def test_parallel_equals_serial(report):
    again = run_experiment(SPEC, 12, EnumerationConfig(seed=1, repetitions=8), workers=3)
    assert again == report


def test_failures_counted():
    spec = GeneratorSpec("uniform-random", 8, (0, 255), seed=2)
    r = run_experiment(spec, 10, EnumerationConfig(repetitions=4), rho_max=1.0)
    for name in ("FirstIntersection", "BestSimilarity"):
        a = r.aggregate(name)
        assert a.failures == sum(t.outcome(name).failed for t in r.triples)
    assert aggregate(r.triples, r.median_u_sim) == r.aggregates


def test_rejects_empty():
    with pytest.raises(ValueError):
        run_experiment(SPEC, 0)

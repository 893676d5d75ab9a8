"""Tests for the heavy-tailed suspension: sampling, observable and annealed means."""

import numpy as np
import pytest

from src.suspension import (
    SuspensionState,
    ZetaLaw,
    annealed_divergence_experiment,
    arcs_overlap,
    compare_growth_models,
    covering_time_law,
    exact_truncated_mean,
    make_psi,
    quenched_response_value,
    sample_heights,
    sample_suspension,
)


def test_zeta_law_probabilities(rng):
    law = ZetaLaw(2.5)
    assert law.survival(1) == pytest.approx(1.0)
    assert law.survival(2) == pytest.approx(1.0 - law.pmf(1))
    draws = law.sample(rng, 100_000)
    assert draws.min() >= 1
    p1 = float(law.pmf(1))
    sigma = np.sqrt(p1 * (1.0 - p1) / draws.size)
    assert abs(np.mean(draws == 1) - p1) <= 4.0 * sigma


def test_zeta_law_needs_integrable_exponent():
    with pytest.raises(ValueError):
        ZetaLaw(1.0)


def test_sample_heights_independent_of_threads():
    single = sample_heights(3, 0.5, 150_000, threads=1)
    pooled = sample_heights(3, 0.5, 150_000, threads=4)
    assert np.array_equal(single[0], pooled[0])
    assert np.array_equal(single[1], pooled[1])
    roofs, heights = single
    assert np.all(heights >= 0) and np.all(heights < roofs)


def test_sample_heights_rejects_bad_arguments():
    with pytest.raises(ValueError, match="delta"):
        sample_heights(0, 0.0, 10)
    with pytest.raises(ValueError, match="count"):
        sample_heights(0, 0.5, 0)


def test_forward_symbols_of_current_column():
    state = SuspensionState(omega0=4, i=1, delta=0.5)
    assert state.covering_time == 3
    assert state.forward_symbols(3) == ("I", "I", "D")
    longer = state.forward_symbols(40)
    assert longer[:3] == ("I", "I", "D")
    assert set(longer) <= {"I", "D"}
    assert state.forward_symbols(40) == longer


@pytest.mark.parametrize("omega0, i, delta", [(0, 0, 0.5), (3, 3, 0.5), (3, -1, 0.5), (3, 0, 0.0), (3, 0, 1.5)])
def test_invalid_states(omega0, i, delta):
    with pytest.raises(ValueError):
        SuspensionState(omega0=omega0, i=i, delta=delta)


def test_exact_truncated_mean():
    assert exact_truncated_mean(0.5, 1) == pytest.approx(1.0)
    cap = 20
    n = np.arange(1, cap)
    law = covering_time_law(0.5, n)
    from_law = float(np.sum(n * law) + cap * (1.0 - np.sum(law)))
    assert exact_truncated_mean(0.5, cap) == pytest.approx(from_law, rel=1e-10)


def test_covering_time_law_sums_to_one():
    assert float(np.sum(covering_time_law(0.7, np.arange(1, 200_000)))) == pytest.approx(1.0, abs=1e-3)


def test_exact_mean_grows_like_a_power():
    caps = [10**k for k in range(2, 6)]
    means = [exact_truncated_mean(0.5, cap) for cap in caps]
    comparison = compare_growth_models(caps, means)
    assert comparison.preferred == "power"
    assert comparison.power_slope == pytest.approx(0.5, abs=0.15)


@pytest.mark.parametrize("omega0, i", [(1, 0), (4, 1), (7, 0), (12, 9)])
def test_operator_route_equals_covering_time(omega0, i):
    state = SuspensionState(omega0=omega0, i=i, delta=0.5, seed=11)
    closed = quenched_response_value(state)
    assert closed.value == omega0 - i
    computed = quenched_response_value(state, route="operator")
    assert computed.value == pytest.approx(omega0 - i, abs=1e-8)
    assert not computed.truncated


def test_operator_route_truncation_is_flagged():
    state = SuspensionState(omega0=5, i=0, delta=0.5)
    result = quenched_response_value(state, route="operator", depth=1)
    assert result.truncated
    assert result.value == pytest.approx(2.0, abs=1e-8)
    with pytest.raises(ValueError, match="route"):
        quenched_response_value(state, route="annealed")


def test_psi_is_localized_and_orthogonal_to_its_image():
    psi = make_psi(modes=256)
    assert psi.leakage <= 1e-6
    assert psi.doubling_correlation == pytest.approx(0.0, abs=1e-12)
    assert psi.profile.mean == 0.0
    assert psi.support() == [(0.55, 0.75), pytest.approx((0.05, 0.25))]


def test_psi_rejects_arc_meeting_its_preimage():
    with pytest.raises(ValueError, match="preimage"):
        make_psi((0.1, 0.4), modes=32)


def test_arcs_overlap():
    assert arcs_overlap((0.1, 0.2), (0.15, 0.3))
    assert not arcs_overlap((0.1, 0.2), (0.3, 0.4))
    assert arcs_overlap((0.9, 1.1), (0.05, 0.15))


def test_annealed_table_layout():
    table = annealed_divergence_experiment(5, 0.5, [1000, 4000], [4, 16, 64], tail_max=5)
    assert len(table.rows) == 6
    assert [row["cap"] for row in table.rows[:3]] == [4, 16, 64]
    assert all(row["truncated_mean"] <= row["cap"] for row in table.rows)
    assert len(table.tail_law) == 5
    with pytest.raises(ValueError, match="caps"):
        annealed_divergence_experiment(5, 0.5, [1000], [4])
    with pytest.raises(ValueError, match="sample_sizes"):
        annealed_divergence_experiment(5, 0.5, [1000, 1000], [4, 16])


@pytest.mark.slow
def test_covering_time_tail_law_and_divergence():
    table = annealed_divergence_experiment(7, 0.5, [1_000_000], [10, 100, 1000, 10_000], threads=4)
    deviations = [abs(row["empirical"] - row["exact"]) / row["sigma"] for row in table.tail_law]
    assert max(deviations) <= 4.0
    assert np.mean(np.array(deviations) <= 3.0) >= 0.9
    assert table.slopes[1_000_000] == pytest.approx(0.5, abs=0.15)


@pytest.mark.slow
def test_operator_route_on_sampled_states():
    states = [s for s in sample_suspension(13, 0.5, 100) if s.covering_time <= 2000]
    for state in states:
        assert quenched_response_value(state, route="operator").value == pytest.approx(state.covering_time, abs=1e-8)

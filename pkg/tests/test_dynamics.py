import math

import numpy as np
import pytest

from belldyn.channels import (
    ChannelPair,
    ChannelSpec,
    DomainError,
    FlipType,
    MarkovianSchedule,
    NonMarkovianSchedule,
)
from belldyn.dynamics import (
    ChangeKind,
    RegimeLabel,
    SweepSpec,
    classify_regime,
    detect_frozen_discord,
    find_change_points,
    find_oscillation_zeros,
    simulate,
)
from belldyn.states import BellDiagonalState, PauliAxis

MARK = MarkovianSchedule(gamma=1.0)
OSC = NonMarkovianSchedule(a=1.0, tau=5.0)


def phase_pair(x, schedule=MARK):
    spec = ChannelSpec(FlipType.PHASE, schedule)
    return ChannelPair(channel_a=spec, channel_b=spec, x=x)


def mixed_pair(x, schedule=MARK):
    return ChannelPair(
        channel_a=ChannelSpec(FlipType.BIT, schedule),
        channel_b=ChannelSpec(FlipType.PHASE, schedule),
        x=x,
    )


P_SWEEP = SweepSpec(variable="p", start=0.0, stop=1.0, steps=1001)
NU_SWEEP = SweepSpec(variable="nu", start=0.0, stop=40.0, steps=4001)


class TestSweepSpec:
    def test_rejects_bad_variable(self):
        with pytest.raises(DomainError):
            SweepSpec(variable="q", start=0.0, stop=1.0, steps=10)

    def test_rejects_single_step(self):
        with pytest.raises(DomainError):
            SweepSpec(variable="p", start=0.0, stop=1.0, steps=1)

    def test_rejects_p_past_one(self):
        with pytest.raises(DomainError):
            SweepSpec(variable="p", start=0.0, stop=1.5, steps=10)

    def test_values_are_uniform(self):
        vals = SweepSpec(variable="p", start=0.0, stop=1.0, steps=5).values()
        assert np.allclose(vals, [0.0, 0.25, 0.5, 0.75, 1.0])


class TestSimulate:
    def test_first_sample_is_initial_state(self):
        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        traj = simulate(s0, phase_pair(1.0), P_SWEEP)
        assert traj.samples[0].state.coefficients == pytest.approx(s0.coefficients)
        assert traj.samples[0].sweep_value == 0.0

    def test_sample_count_and_ordering(self):
        traj = simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(0.5), P_SWEEP)
        vals = [s.sweep_value for s in traj.samples]
        assert len(vals) == 1001
        assert vals == sorted(vals)

    def test_additivity_holds_at_every_sample(self):
        traj = simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(0.25), P_SWEEP)
        for s in traj.samples:
            assert (s.corr.mutual_info - s.corr.classical) - s.corr.quantum == 0.0

    def test_t_equivalent_markovian(self):
        sweep = SweepSpec(variable="p", start=0.0, stop=0.9, steps=10)
        traj = simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(1.0), sweep)
        for s in traj.samples:
            if 0.0 < s.sweep_value < 1.0:
                assert s.t_equivalent == pytest.approx(-math.log1p(-s.sweep_value), abs=1e-14)

    def test_t_equivalent_non_markovian_uses_2tau(self):
        traj = simulate(
            BellDiagonalState(0.1, 0.5, 0.3), phase_pair(1.0, OSC),
            SweepSpec(variable="nu", start=0.0, stop=1.0, steps=3),
        )
        assert traj.samples[-1].t_equivalent == pytest.approx(2.0 * 5.0 * 1.0)

    def test_variable_kind_mismatch_rejected(self):
        with pytest.raises(DomainError):
            simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(1.0, OSC), P_SWEEP)
        with pytest.raises(DomainError):
            simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(1.0), NU_SWEEP)


class TestChangePoints:
    def test_equal_rates_reference_point(self):
        # (1-p)^2 = 0.6 for the dominant-to-pinned switch
        traj = simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(1.0), P_SWEEP)
        points = find_change_points(traj)
        assert len(points) == 1
        assert points[0].kind == ChangeKind.ARGMAX_SWITCH
        assert points[0].sweep_value == pytest.approx(1.0 - math.sqrt(0.6), abs=1e-9)
        assert points[0].axes == (PauliAxis.Y, PauliAxis.Z)

    def test_one_sided_switch_lands_on_grid_sample(self):
        traj = simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(0.0), P_SWEEP)
        points = find_change_points(traj)
        assert len(points) == 1
        assert points[0].sweep_value == 0.4  # exact, 0.5 (1-p) = 0.3

    def test_pinned_axis_dominant_gives_no_points(self):
        traj = simulate(BellDiagonalState(0.1, 0.2, 0.5), phase_pair(1.0), P_SWEEP)
        assert find_change_points(traj) == []

    def test_refined_point_satisfies_defining_equation(self):
        from belldyn.channels import coefficient_map_factors

        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        for x in (0.25, 0.5, 0.75, 1.0):
            pair = phase_pair(x)
            traj = simulate(s0, pair, P_SWEEP)
            for cp in find_change_points(traj):
                p = cp.sweep_value
                out = coefficient_map_factors(
                    s0, FlipType.PHASE, FlipType.PHASE, p, x * p
                )
                gap = abs(out.coefficient(cp.axes[0])) - abs(out.coefficient(cp.axes[1]))
                assert abs(gap) < 1e-9

    def test_double_change_points_above_threshold(self):
        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        traj = simulate(s0, mixed_pair(0.6), P_SWEEP)
        points = find_change_points(traj)
        assert len(points) == 2
        # first: both-sides axis meets the A-pinned axis, (1 - x p) = c3/c2
        assert points[0].sweep_value == pytest.approx((1.0 - 0.6) / 0.6, abs=1e-10)
        assert points[0].axes == (PauliAxis.Y, PauliAxis.Z)
        # second: A-pinned axis meets the B-pinned axis
        assert points[1].sweep_value == pytest.approx(5.0 / 6.0, abs=1e-10)
        assert points[1].axes == (PauliAxis.Z, PauliAxis.X)

    def test_single_change_point_below_threshold(self):
        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        traj = simulate(s0, mixed_pair(0.4), P_SWEEP)
        points = find_change_points(traj)
        assert len(points) == 1
        # c2 (1-p) = c1, the scaled factors cancel
        assert points[0].sweep_value == pytest.approx(0.8, abs=1e-10)
        assert points[0].axes == (PauliAxis.Y, PauliAxis.X)

    def test_non_argmax_crossing_is_ignored(self):
        # c1 and c2 cross at p = 0.6 while c3 holds the argmax there
        s0 = BellDiagonalState(0.2, -0.5, 0.45)
        sweep = SweepSpec(variable="p", start=0.0, stop=0.95, steps=951)
        traj = simulate(s0, mixed_pair(1.0), sweep)
        points = find_change_points(traj)
        assert len(points) == 1
        assert points[0].sweep_value == pytest.approx(0.1, abs=1e-10)

    def test_all_zero_endpoint_tie_reports_boundary_switch(self):
        # at x=1 every coefficient vanishes at p=1; the argmax tie-break
        # jumps to the lowest axis exactly at the endpoint
        s0 = BellDiagonalState(0.2, -0.5, 0.45)
        traj = simulate(s0, mixed_pair(1.0), P_SWEEP)
        points = find_change_points(traj)
        assert len(points) == 2
        assert points[1].sweep_value == 1.0
        assert points[1].axes == (PauliAxis.Z, PauliAxis.X)


class TestOscillationZeros:
    def test_markovian_pair_has_none(self):
        assert find_oscillation_zeros(phase_pair(1.0), P_SWEEP) == []

    def test_zero_count_and_first_roots(self):
        points = find_oscillation_zeros(phase_pair(1.0, OSC), NU_SWEEP)
        assert len(points) == 254  # (k pi - arctan mu)/mu <= 40 for k <= 254
        assert points[0].sweep_value == pytest.approx(0.08114235059009696, abs=1e-10)
        assert points[1].sweep_value == pytest.approx(0.23841870173449706, abs=1e-10)
        assert all(p.kind == ChangeKind.OSCILLATION_ZERO for p in points)
        assert all(p.axes is None for p in points)

    def test_side_b_zeros_added_when_x_below_one(self):
        points = find_oscillation_zeros(phase_pair(0.5, OSC), NU_SWEEP)
        # 254 from side A plus 127 stretched side-B roots, no coincidences
        assert len(points) == 381

    def test_x_zero_drops_side_b(self):
        points = find_oscillation_zeros(phase_pair(0.0, OSC), NU_SWEEP)
        assert len(points) == 254

    def test_overdamped_kernel_has_no_zeros(self):
        over = NonMarkovianSchedule(a=0.04, tau=5.0)
        assert find_oscillation_zeros(phase_pair(1.0, over), NU_SWEEP) == []


class TestClassifyRegime:
    def test_same_type_zero_pinned_coefficient(self):
        s0 = BellDiagonalState(0.5, 0.3, 0.0)
        assert classify_regime(s0, phase_pair(1.0)) == RegimeLabel.MONOTONE_DECAY

    def test_same_type_dominant_pinned_coefficient(self):
        s0 = BellDiagonalState(0.1, 0.2, 0.5)
        assert classify_regime(s0, phase_pair(0.7)) == RegimeLabel.CLASSICAL_CONSTANT

    def test_same_type_generic(self):
        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        assert classify_regime(s0, phase_pair(1.0)) == RegimeLabel.SINGLE_SUDDEN_CHANGE

    def test_mixed_threshold(self):
        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        assert classify_regime(s0, mixed_pair(0.4)) == RegimeLabel.SINGLE_SUDDEN_CHANGE
        assert classify_regime(s0, mixed_pair(0.6)) == RegimeLabel.DOUBLE_SUDDEN_CHANGE
        assert classify_regime(s0, mixed_pair(0.5)) == RegimeLabel.DOUBLE_SUDDEN_CHANGE

    def test_mixed_slow_axis_dominant(self):
        # the axis only the weaker side touches decays slowest
        s0 = BellDiagonalState(0.5, 0.3, 0.1)
        assert classify_regime(s0, mixed_pair(0.8)) == RegimeLabel.MONOTONE_DECAY

    def test_mixed_mid_axis_dominant(self):
        s0 = BellDiagonalState(0.1, 0.3, 0.5)
        assert classify_regime(s0, mixed_pair(0.8)) == RegimeLabel.SINGLE_SUDDEN_CHANGE

    def test_non_markovian_labels(self):
        s0 = BellDiagonalState(0.1, 0.5, 0.3)
        assert classify_regime(s0, phase_pair(1.0, OSC)) == RegimeLabel.OSCILLATORY_SAME_TYPE
        assert classify_regime(s0, mixed_pair(1.0, OSC)) == RegimeLabel.OSCILLATORY_MIXED

    def test_regime_matches_counted_points_same_type(self):
        rng = np.random.default_rng(17)
        sweep = SweepSpec(variable="p", start=0.0, stop=1.0, steps=401)
        checked = 0
        while checked < 25:
            c = rng.uniform(-1.0, 1.0, size=3)
            try:
                s0 = BellDiagonalState(*c)
            except Exception:
                continue
            # skip near-degenerate coefficient relations, where the label
            # is a boundary call and the count is grid-sensitive
            mags = sorted(abs(v) for v in c)
            if mags[2] - mags[1] < 0.05 or mags[0] < 0.05:
                continue
            x = float(rng.uniform(0.1, 0.9))
            pair = phase_pair(x)
            label = classify_regime(s0, pair)
            traj = simulate(s0, pair, sweep)
            interior = [
                p for p in find_change_points(traj) if p.sweep_value < 1.0
            ]
            expected = {
                RegimeLabel.MONOTONE_DECAY: 0,
                RegimeLabel.CLASSICAL_CONSTANT: 0,
                RegimeLabel.SINGLE_SUDDEN_CHANGE: 1,
            }[label]
            assert len(interior) == expected, (s0, x, label)
            checked += 1


class TestFrozenDiscord:
    def test_special_family_freezes_until_switch(self):
        s0 = BellDiagonalState(1.0, -0.5, 0.5)
        traj = simulate(s0, phase_pair(1.0), P_SWEEP)
        intervals = detect_frozen_discord(traj)
        assert len(intervals) == 1
        iv = intervals[0]
        assert iv.special_family
        assert not iv.degenerate
        assert iv.start == 0.0
        p_star = 1.0 - math.sqrt(0.5)
        assert iv.stop == pytest.approx(p_star, abs=2e-3)  # grid resolution
        assert iv.quantum_value == pytest.approx(0.18872187554086706, abs=1e-12)

    def test_generic_state_has_no_frozen_interval(self):
        # Q flattens smoothly at the very end of the sweep; the exactness
        # confirmation must reject that tail
        traj = simulate(BellDiagonalState(0.1, 0.5, 0.3), phase_pair(1.0), P_SWEEP)
        assert detect_frozen_discord(traj) == []

    def test_maximally_mixed_is_degenerate_flat(self):
        traj = simulate(BellDiagonalState(0.0, 0.0, 0.0), phase_pair(1.0), P_SWEEP)
        intervals = detect_frozen_discord(traj)
        assert len(intervals) == 1
        iv = intervals[0]
        assert iv.degenerate
        assert iv.start == 0.0
        assert iv.stop == 1.0
        assert iv.quantum_value == 0.0

    def test_family_detection_requires_dominant_c1(self):
        # c2 = -c1 c3 but |c1| < |c3| does not freeze
        s0 = BellDiagonalState(0.3, -0.15, 0.5)
        traj = simulate(s0, phase_pair(1.0), P_SWEEP)
        assert all(not iv.special_family for iv in detect_frozen_discord(traj))

    def test_unequal_rates_still_freeze(self):
        # freezing only needs the two decaying axes to satisfy the family
        # relation; the rates may differ
        s0 = BellDiagonalState(1.0, -0.5, 0.5)
        traj = simulate(s0, phase_pair(0.5), P_SWEEP)
        intervals = detect_frozen_discord(traj)
        assert len(intervals) == 1
        assert intervals[0].quantum_value == pytest.approx(
            0.18872187554086706, abs=1e-12
        )


def test_oscillatory_trajectory_is_bounded_by_initial_values():
    s0 = BellDiagonalState(0.1, 0.5, 0.3)
    traj = simulate(s0, phase_pair(1.0, OSC), NU_SWEEP)
    t0 = traj.samples[0].corr
    for s in traj.samples:
        assert s.corr.mutual_info <= t0.mutual_info + 1e-9
        assert s.corr.classical <= t0.classical + 1e-9
        assert s.corr.quantum <= t0.quantum + 1e-9


def test_oscillatory_classical_has_constant_segments():
    # between kernel zeros the pinned axis often carries the argmax, and
    # there the classical correlation is exactly flat
    s0 = BellDiagonalState(0.1, 0.5, 0.3)
    traj = simulate(s0, phase_pair(1.0, OSC), NU_SWEEP)
    c_vals = np.array([s.corr.classical for s in traj.samples])
    on_pinned = np.array([s.chi_axis == PauliAxis.Z for s in traj.samples])
    runs = 0
    i = 0
    n = len(c_vals)
    while i < n:
        if not on_pinned[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and on_pinned[j + 1]:
            j += 1
        if j > i:
            seg = c_vals[i : j + 1]
            assert seg.max() - seg.min() <= 1e-12
            runs += 1
        i = j + 1
    assert runs >= 2

"""Finite-horizon analyzers.  Return structures are derived from
independent oracles (2-adic valuations, popcount words) before the
verdicts are checked, and certificates are frozen exactly."""

from fractions import Fraction

import pytest

from zerodim.analysis import (ap_verdict, confinement_verdict, depth_ball,
                              equicontinuity_verdict, escape_length,
                              invariant_core, orbit_cylinders,
                              orbit_symmetry_verdict, pair_type1_verdict,
                              pointwise_period_verdict, proximal_verdict,
                              regional_proximal_check, regular_ap_verdict,
                              return_times, standard_rp_witness,
                              translate_cover_verdict, type1_verdict,
                              type2_verdict, uniform_recurrence_verdict,
                              usc_verdict, weak_rigidity_verdict)
from zerodim.cantor import Cylinder, from_cylinder
from zerodim.errors import DomainError, PreconditionError
from zerodim.flows import build_mcmahon, build_two_copy, get_system

OD = get_system("odometer")
TM = get_system("thue-morse")
FS = get_system("full-shift")
SM = get_system("successor-map")
CS = get_system("circle-stack")
CC = get_system("circle-stack-components")


def tm_bit(i: int) -> int:
    return bin(i).count("1") % 2


def tm_value(c: int) -> int:
    """Coordinate c of the mirror-extension point."""
    return tm_bit(c) if c >= 0 else tm_bit(-c - 1)


def tm_returns_oracle(depth: int, span: int) -> tuple:
    """Shifts whose translated depth window matches the original,
    computed straight from the popcount formula."""
    offs = range(-(depth - 1), depth)
    base = [tm_value(j) for j in offs]
    return tuple(n for n in range(-span, span + 1)
                 if n != 0 and [tm_value(n + j) for j in offs] == base)


class TestReturnTimes:
    def test_odometer_against_valuation_oracle(self):
        zero = OD.point("zero")
        for d in (1, 2, 3):
            got = return_times(OD, zero, d, -20, 20)
            want = tuple(n for n in range(-20, 21)
                         if n != 0 and n % (2 ** d) == 0)
            assert got == want
        assert return_times(OD, zero, 2, -8, 8) == (-8, -4, 4, 8)

    def test_thue_morse_against_popcount_oracle(self):
        r = TM.point("reflection")
        for d in (1, 2, 3):
            assert return_times(TM, r, d, -40, 40) == tm_returns_oracle(d, 40)

    def test_word_group_rejected(self):
        t2 = build_two_copy(3)
        with pytest.raises(DomainError):
            return_times(t2, t2.point("o-plus"), 2, -4, 4)


class TestAlmostPeriodic:
    def test_odometer_bound_is_the_level_gap(self):
        zero = OD.point("zero")
        for d in range(1, 5):
            v = ap_verdict(OD, zero, horizon=4 * 2 ** d, depth=d)
            assert v.holds
            assert v.certificate["syndetic_bound"] == 2 ** d
            assert v.certificate["max_gap_in_span"] == 2 ** d

    def test_odometer_frozen_certificate(self):
        v = ap_verdict(OD, OD.point("zero"), horizon=8, depth=2)
        assert v.certificate == {
            "syndetic_bound": 4, "max_gap_in_span": 4,
            "return_count": 6,
            "first_returns": [-12, -8, -4, 4, 8, 12]}

    def test_thue_morse_depth_two(self):
        v = ap_verdict(TM, TM.point("reflection"), horizon=24, depth=2)
        assert v.holds and v.certificate["syndetic_bound"] == 8

    def test_thue_morse_depth_three_needs_wider_window(self):
        r = TM.point("reflection")
        narrow = ap_verdict(TM, r, horizon=32, depth=3)
        assert narrow.fails
        assert narrow.certificate["empty_window_start"] == 7
        assert narrow.certificate["empty_window_length"] == 16
        # the oracle confirms: no depth-3 return inside [7, 23)
        times = set(tm_returns_oracle(3, 48)) | {0}
        assert not any(n in times for n in range(7, 23))
        wide = ap_verdict(TM, r, horizon=48, depth=3)
        assert wide.holds and wide.certificate["syndetic_bound"] == 18
        gaps = [b - a for a, b in zip(sorted(times), sorted(times)[1:])
                if -48 <= a and b <= 48]
        assert max(gaps) == 18

    def test_single_spike_never_returns(self):
        x = FS.family("single", 0)
        assert return_times(FS, x, 1, -200, 200) == ()
        v = ap_verdict(FS, x, horizon=200, depth=1)
        assert v.fails
        assert v.certificate["empty_window_start"] == -200
        assert v.certificate["empty_window_length"] == 100
        assert v.certificate["returns_in_span"] == []

    def test_horizon_validation(self):
        with pytest.raises(PreconditionError):
            ap_verdict(OD, OD.point("zero"), horizon=1, depth=2)
        with pytest.raises(PreconditionError):
            ap_verdict(OD, OD.point("zero"), horizon=8, depth=0)


class TestRegularReturns:
    def test_odometer_modulus_stable_across_horizons(self):
        zero = OD.point("zero")
        for d in (1, 2, 3):
            for H in (8 * 2 ** d, 16 * 2 ** d):
                v = regular_ap_verdict(OD, zero, horizon=H, depth=d)
                assert v.holds
                assert v.certificate["modulus"] == 2 ** d
                assert v.certificate["multiples_verified"] == \
                    2 * (H // 2 ** d)

    def test_thue_morse_modulus_is_a_horizon_artifact(self):
        # a large modulus always slips through with only one multiple
        # verified per direction; the certificate exposes the thin
        # evidence and the reported modulus drifts as the horizon grows
        r = TM.point("reflection")
        reported = []
        for H in (24, 36, 48):
            v = regular_ap_verdict(TM, r, horizon=H, depth=2)
            assert v.holds
            assert v.certificate["multiples_verified"] == 2
            reported.append(v.certificate["modulus"])
        assert reported == [18, 24, 30]

    def test_fixed_point_has_modulus_one(self):
        v = regular_ap_verdict(FS, FS.point("zero"), horizon=8, depth=2)
        assert v.holds and v.certificate["modulus"] == 1


class TestPointwisePeriod:
    def test_successor_dial_periods(self):
        for c in (2, 3, 5):
            x = SM.family("unit-at", c)
            v = pointwise_period_verdict(SM, x, period_max=16)
            assert v.holds and v.certificate["period"] == c + 1

    def test_fixed_point_period_one(self):
        v = pointwise_period_verdict(SM, SM.point("zero"), period_max=4)
        assert v.holds and v.certificate["period"] == 1

    def test_cap_reports_inconclusive(self):
        v = pointwise_period_verdict(SM, SM.family("unit-at", 20),
                                     period_max=10)
        assert v.inconclusive
        assert v.certificate["tested_through"] == 10


class TestTwoSidedRecurrence:
    def test_reflections_individually_recur(self):
        for name in ("reflection", "reflection-flipped"):
            v = type1_verdict(TM, TM.point(name), horizon=32, depth=1)
            assert v.holds
        v = type1_verdict(TM, TM.point("reflection-flipped"),
                          horizon=32, depth=1)
        assert v.certificate == {"forward": 3, "backward": -2}

    def test_pair_recurrence_fails_backward(self):
        v = pair_type1_verdict(TM, TM.point("reflection"),
                               TM.point("reflection-flipped"),
                               horizon=32, depth=1)
        assert v.fails
        assert v.certificate == {"missing_directions": ["backward"],
                                 "forward": 3, "backward": None}
        # oracle: left of the origin both points carry the same symbols
        # while their origin symbols differ, so one backward shift can
        # never return both to their own cells at once
        r, rf = TM.point("reflection"), TM.point("reflection-flipped")
        for n in range(-32, 0):
            assert r.value(n) == rf.value(n) == tm_value(n)
        assert r.value(0) != rf.value(0)

    def test_single_spike_fails_both_directions(self):
        v = type1_verdict(FS, FS.family("single", 0), horizon=200, depth=1)
        assert v.fails
        assert v.certificate == {
            "missing_directions": ["forward", "backward"],
            "forward": None, "backward": None}


class TestConeSubnetRecurrence:
    def test_odometer_bound(self):
        v = type2_verdict(OD, OD.point("zero"), horizon=16, depth=2)
        assert v.holds
        assert v.certificate["subnet_bound"] == 4
        assert v.certificate["allowed"] == 8

    def test_fixed_point_bound_one(self):
        v = type2_verdict(FS, FS.point("zero"), horizon=8, depth=2)
        assert v.holds and v.certificate["subnet_bound"] == 1

    def test_step_point_has_empty_cones(self):
        v = type2_verdict(FS, FS.point("step"), horizon=8, depth=2)
        assert v.fails
        assert v.certificate["no_return_in_cone_of"] == "5"

    def test_single_spike_fails(self):
        v = type2_verdict(FS, FS.family("single", 0), horizon=8, depth=1)
        assert v.fails


class TestWeakRigidity:
    def test_odometer_joint_shift(self):
        v = weak_rigidity_verdict(OD, [OD.point("zero"), OD.point("one")],
                                  horizon=16, depth=3)
        assert v.holds
        assert v.certificate == {"shift": 8, "points": 2}

    def test_single_point(self):
        v = weak_rigidity_verdict(OD, [OD.point("zero")],
                                  horizon=4, depth=1)
        assert v.holds and v.certificate["shift"] == 2

    def test_empty_list_rejected(self):
        with pytest.raises(PreconditionError):
            weak_rigidity_verdict(OD, [], horizon=4, depth=1)


class TestEscapeAndConfinement:
    def test_escape_length(self):
        U = depth_ball(FS.point("zero"), 1)
        hit = escape_length(FS, FS.family("single", 3), U, horizon=6)
        assert hit == (3, 3)

    def test_confinement_flips_with_horizon(self):
        U = depth_ball(FS.point("zero"), 1)
        x = FS.family("single", 3)
        v = confinement_verdict(FS, x, U, horizon=2)
        assert v.holds and v.certificate["elements_checked"] == 5
        v = confinement_verdict(FS, x, U, horizon=4)
        assert v.fails
        assert v.certificate == {"escape_length": 3, "escape_element": "3"}


class TestInvariantCore:
    def test_shift_core_shrinks_to_nothing(self):
        U0 = from_cylinder(Cylinder(FS.scheme, 0, 0, (0,)))
        shallow = invariant_core(FS, U0, depth=3, horizon=2)
        allz = (0, 0, 0, 0, 0)
        assert shallow.inner == shallow.outer == frozenset({allz})
        assert not shallow.unknown and len(shallow.excluded) == 31
        deep = invariant_core(FS, U0, depth=3, horizon=4)
        assert deep.inner == frozenset()
        assert deep.outer == frozenset({allz})
        assert deep.unknown == {allz: 4}

    def test_successor_core_is_exact_and_stable(self):
        Us = from_cylinder(Cylinder(SM.scheme, 2, 2, (0,)))
        core = invariant_core(SM, Us, depth=3, horizon=8)
        assert len(core.inner) == 12
        assert core.inner == core.outer
        assert not core.unknown and len(core.excluded) == 12
        assert all(p[0] == 0 for p in core.inner)
        doubled = invariant_core(SM, Us, depth=3, horizon=16)
        assert doubled.inner == core.inner and doubled.outer == core.outer

    def test_json_round_trip_shape(self):
        U0 = from_cylinder(Cylinder(FS.scheme, 0, 0, (0,)))
        data = invariant_core(FS, U0, depth=2, horizon=2).to_json()
        import json
        json.dumps(data)
        assert set(data) == {"depth", "horizon", "window", "inner",
                             "outer", "excluded", "unknown"}


class TestOrbitCells:
    def test_single_spike_cells(self):
        oc = orbit_cylinders(FS, FS.family("single", 0), horizon=4, depth=2)
        assert sorted(oc.cells) == [(0, 0, 0), (0, 0, 1), (0, 1, 0),
                                    (1, 0, 0)]
        assert oc.witnesses[(0, 1, 0)] == "0"


class TestUpperSemicontinuity:
    def test_odometer_holds_at_matching_depth(self):
        v = usc_verdict(OD, OD.point("zero"), horizon=8, depth=2,
                        neighbor_depth_max=6)
        assert v.holds
        assert v.certificate["neighbor_depth"] == 2

    def test_shift_fixed_point_fails(self):
        v = usc_verdict(FS, FS.point("zero"), horizon=6, depth=2,
                        neighbor_depth_max=6)
        assert v.fails
        assert v.certificate["deepest_tried"] == 6
        assert v.certificate["escape_element"] == "5"

    def test_limit_circle_modulus_grows_with_horizon(self):
        needed = []
        for H in (8, 16, 32):
            v = usc_verdict(CS, CS.point("limit"), horizon=H, depth=2,
                            neighbor_depth_max=8)
            assert v.holds
            needed.append(v.certificate["neighbor_depth"])
        assert needed == [6, 7, 8]
        v = usc_verdict(CS, CS.point("limit"), horizon=64, depth=2,
                        neighbor_depth_max=8)
        assert v.fails and v.certificate["deepest_tried"] == 8

    def test_rotating_circle_holds(self):
        v = usc_verdict(CS, CS.point("level-1"), horizon=8, depth=2,
                        neighbor_depth_max=8)
        assert v.holds and v.certificate["neighbor_depth"] == 3


class TestOrbitSymmetry:
    def test_odometer_pair_symmetric(self):
        v = orbit_symmetry_verdict(OD, [(OD.point("zero"), OD.point("one"))],
                                   horizon=8, depth=3)
        assert v.holds
        assert v.certificate == {"witnesses": [["1", "-1"]]}

    def test_step_reaches_zero_one_way(self):
        v = orbit_symmetry_verdict(FS, [(FS.family("step", 0),
                                         FS.point("zero"))],
                                   horizon=8, depth=2)
        assert v.fails
        assert v.certificate["forward_element"] == "-1"
        assert v.certificate["no_return_within"] == 8

    def test_unreached_pair_is_inconclusive(self):
        t2 = build_two_copy(3)
        v = orbit_symmetry_verdict(t2, [(t2.point("o-plus"),
                                         t2.point("o-minus"))],
                                   horizon=1, depth=3)
        assert v.inconclusive
        assert v.certificate["established"] == 0

    def test_empty_pairs_rejected(self):
        with pytest.raises(PreconditionError):
            orbit_symmetry_verdict(OD, [], horizon=4, depth=2)


class TestEquicontinuity:
    def test_odometer_modulus_equals_depth(self):
        for d in (2, 4):
            v = equicontinuity_verdict(OD, horizon=64, depth=d)
            assert v.holds and v.certificate["modulus"] == d

    def test_successor_and_components_hold(self):
        v = equicontinuity_verdict(SM, horizon=64, depth=3)
        assert v.holds and v.certificate["modulus"] == 3
        v = equicontinuity_verdict(CC, horizon=16, depth=2)
        assert v.holds and v.certificate["modulus"] == 2

    def test_expansive_systems_fail_with_growth(self):
        v = equicontinuity_verdict(FS, horizon=16, depth=2)
        assert v.fails and v.certificate["growth"] == [[8, 10], [16, 18]]
        v = equicontinuity_verdict(TM, horizon=16, depth=3)
        assert v.fails and v.certificate["growth"] == [[8, 11], [16, 19]]
        v = equicontinuity_verdict(CS, horizon=16, depth=2)
        assert v.fails and v.certificate["growth"] == [[8, 7], [16, 8]]

    def test_cap_fails_explicitly(self):
        v = equicontinuity_verdict(FS, horizon=100, depth=2,
                                   input_depth_max=32)
        assert v.fails
        assert v.certificate["exceeded_cap_at_radius"] == 31

    def test_word_group_kind_rejected(self):
        with pytest.raises(DomainError):
            equicontinuity_verdict(build_two_copy(3), horizon=4, depth=2)


class TestUniformRecurrence:
    def test_thue_morse_windows(self):
        v = uniform_recurrence_verdict(TM, word_length=1, window_max=12)
        assert v.holds and v.certificate["recurrence_window"] == 3
        v = uniform_recurrence_verdict(TM, word_length=2, window_max=16)
        assert v.holds and v.certificate["recurrence_window"] == 9

    def test_full_shift_pumps_a_counterexample(self):
        v = uniform_recurrence_verdict(FS, word_length=1, window_max=8)
        assert v.fails
        assert v.certificate == {"pumped_word": [0], "pumped_length": 8,
                                 "avoided_word": [1]}

    def test_needs_a_language(self):
        with pytest.raises(DomainError):
            uniform_recurrence_verdict(CS, word_length=1, window_max=4)


class TestProximality:
    def test_sign_pairs_stay_apart(self):
        t2 = build_two_copy(4)
        v = proximal_verdict(t2, t2.point("o-plus"), t2.point("o-minus"),
                             horizon=2, depth=4)
        assert v.fails
        assert v.certificate["min_distance"] == Fraction(1)
        mm = build_mcmahon(4)
        v = proximal_verdict(mm, mm.point("base"), mm.point("marked"),
                             horizon=2, depth=4)
        assert v.fails
        assert v.certificate["min_distance"] == Fraction(1)

    def test_equal_points_rejected(self):
        with pytest.raises(PreconditionError):
            proximal_verdict(OD, OD.point("zero"), OD.point("zero"),
                             horizon=2, depth=2)


class TestRegionalProximality:
    def test_two_copy_witness_chain(self):
        t2 = build_two_copy(4)
        v = regional_proximal_check(t2, standard_rp_witness(t2, 4), depth=4)
        assert v.holds
        quarters = [Fraction(1, 2 ** k) for k in range(2, 6)]
        assert v.certificate["approach_x"] == quarters
        assert v.certificate["pushed_together"] == quarters
        assert v.certificate["approach_y"] == [Fraction(0)] * 4

    def test_flip_count_witness_chain(self):
        mm = build_mcmahon(4)
        v = regional_proximal_check(mm, standard_rp_witness(mm, 4), depth=4)
        assert v.holds
        halves = [Fraction(1, 2 ** k) for k in range(1, 5)]
        assert v.certificate["approach_x"] == halves
        assert v.certificate["pushed_together"] == halves
        assert v.certificate["approach_y"] == \
            [Fraction(1, 2 ** k) for k in range(2, 6)]

    def test_witness_needs_truncation_room(self):
        with pytest.raises(DomainError):
            standard_rp_witness(build_two_copy(3), 5)
        with pytest.raises(DomainError):
            standard_rp_witness(OD, 3)


class TestTranslateCover:
    def test_odometer_cover_is_one_block(self):
        v = translate_cover_verdict(OD, OD.point("zero"), horizon=16,
                                    depth=2, cover_cap=8)
        assert v.holds
        assert v.certificate == {"cover": [0, 1, 2, 3], "cover_size": 4}

    def test_nonnegative_translates_cannot_reach_left(self):
        v = translate_cover_verdict(FS, FS.family("single", 0), horizon=8,
                                    depth=1, cover_cap=4)
        assert v.fails
        assert v.certificate["partial_cover"] == [0, 1, 2, 3, 4]
        assert v.certificate["uncovered_sample"][0] == -8

"""Symbol-space points, exact ultrametric distance, and the clopen
algebra, with membership semantics checked pointwise."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerodim.cantor import (ClopenSet, Cylinder, Point, Scheme, Tail, clopen,
                            complement, constant_tail, depth_cylinder,
                            distance, from_cylinder, full_cylinder,
                            intersection, make_point, periodic_tail,
                            points_equal, reanchor_tail, scheme_from_json,
                            sym_diff, union)
from zerodim.errors import (DomainError, PreconditionError, RangeError,
                            ResourceCapError)

BIN = Scheme("two-sided")
ONE = Scheme("one-sided")


def binary_points():
    """Strategy: points on the two-sided binary scheme with short
    windows and short periodic tails."""
    sym = st.integers(0, 1)
    tails = st.lists(sym, min_size=1, max_size=3).map(periodic_tail)
    return st.builds(
        lambda win, lo, r, l: make_point(BIN, win, r, l, lo=lo),
        st.lists(sym, min_size=0, max_size=5),
        st.integers(-3, 3),
        tails, tails)


class TestScheme:
    def test_kind_validation(self):
        with pytest.raises(DomainError):
            Scheme("circular")

    def test_index_alphabet_needs_one_sided_start_two(self):
        with pytest.raises(DomainError):
            Scheme("two-sided", alphabet="index")
        with pytest.raises(DomainError):
            Scheme("one-sided", start=1, alphabet="index")
        s = Scheme("one-sided", start=2, alphabet="index")
        assert s.size(2) == 2 and s.size(7) == 7

    def test_depth_window(self):
        assert BIN.depth_window(1) == (0, 0)
        assert BIN.depth_window(3) == (-2, 2)
        assert ONE.depth_window(3) == (0, 2)
        with pytest.raises(PreconditionError):
            BIN.depth_window(0)

    def test_coordinate_bounds(self):
        with pytest.raises(RangeError):
            ONE.check_coord(-1)
        BIN.check_coord(-100)

    def test_json_round_trip(self):
        for s in (BIN, ONE, Scheme("one-sided", 2, "index"),
                  Scheme("one-sided", 0, (2, 3))):
            assert scheme_from_json(s.to_json()) == s


class TestTails:
    def test_primitive_reduction(self):
        assert periodic_tail((0, 1, 0, 1)).symbols == (0, 1)
        assert periodic_tail((1, 1, 1)).symbols == (1,)

    def test_reanchor_preserves_values(self):
        t = periodic_tail((0, 1, 1))
        for steps in range(7):
            moved = reanchor_tail(t, steps)
            for k in range(9):
                assert moved.at(k) == t.at(k + steps)

    def test_empty_tail_rejected(self):
        with pytest.raises(DomainError):
            Tail(())


class TestPoints:
    def test_window_absorption(self):
        # explicit symbols equal to the tails get absorbed
        p = make_point(BIN, (0, 0, 1, 0, 0), 0, 0, lo=-2)
        assert (p.lo, p.hi, p.window) == (0, 0, (1,))

    def test_fully_periodic_point_canonical(self):
        a = make_point(BIN, (), periodic_tail((0, 1)), periodic_tail((1, 0)))
        b = make_point(BIN, (0,), periodic_tail((1, 0)),
                       periodic_tail((1, 0)), lo=0)
        assert a == b
        assert [a.value(n) for n in range(-2, 3)] == [0, 1, 0, 1, 0]

    def test_one_sided_constraints(self):
        with pytest.raises(DomainError):
            make_point(ONE, (0,), 0, 0)
        with pytest.raises(DomainError):
            make_point(ONE, (0,), 0, lo=3)
        p = make_point(ONE, (1, 0, 1), 0)
        assert p.value(0) == 1 and p.value(5) == 0
        with pytest.raises(RangeError):
            p.value(-1)

    def test_symbol_validation_index_alphabet(self):
        s = Scheme("one-sided", start=2, alphabet="index")
        p = make_point(s, (0, 1, 2), 0)
        assert p.value(4) == 2 and p.value(9) == 0
        with pytest.raises(RangeError):
            make_point(s, (1, 3, 0), 0)

    def test_mapping_window(self):
        p = make_point(BIN, {3: 1}, 0, 0)
        assert p.value(3) == 1
        assert all(p.value(n) == 0 for n in range(-5, 3))
        with pytest.raises(DomainError):
            make_point(BIN, {0: 1, 2: 1}, 0, 0)

    @given(binary_points())
    @settings(max_examples=120)
    def test_rebuild_from_values_is_identity(self, p):
        lo, hi = min(p.lo, -6), max(p.hi, 6)
        window = [p.value(n) for n in range(lo, hi + 1)]
        q = make_point(BIN, window, reanchor_tail(p.right, hi - p.hi),
                       reanchor_tail(p.left, p.lo - lo), lo=lo)
        assert q == p


class TestDistance:
    def test_exact_values(self):
        zero = make_point(BIN, (), 0, 0)
        for k in range(0, 9):
            y = make_point(BIN, {k: 1}, 0, 0)
            assert distance(zero, y) == Fraction(1, 2 ** k)
            ym = make_point(BIN, {-k: 1}, 0, 0)
            assert distance(zero, ym) == Fraction(1, 2 ** k)

    def test_tail_difference_detected(self):
        # windows agree everywhere; tails differ far out with long lcm
        a = make_point(BIN, (), periodic_tail((0, 0, 1)), 0)
        b = make_point(BIN, (), periodic_tail((0, 0, 0, 1)), 0)
        d = distance(a, b)
        assert 0 < d < 1
        k = 0
        while Fraction(1, 2 ** k) > d:
            k += 1
        assert a.value(k) != b.value(k)
        assert all(a.value(n) == b.value(n) for n in range(-k + 1, k))

    @given(binary_points(), binary_points())
    @settings(max_examples=100)
    def test_symmetry_and_identity(self, x, y):
        assert distance(x, y) == distance(y, x)
        assert (distance(x, y) == 0) == (x == y)
        assert distance(x, x) == 0

    @given(binary_points(), binary_points(), binary_points())
    @settings(max_examples=100)
    def test_ultrametric(self, x, y, z):
        assert distance(x, z) <= max(distance(x, y), distance(y, z))


class TestCylinders:
    def test_membership(self):
        c = Cylinder(BIN, -1, 1, (0, 1, 0))
        x = make_point(BIN, (0, 1, 0), 1, 1, lo=-1)
        assert c.member(x)
        assert not c.member(make_point(BIN, (), 0, 0))

    def test_depth_cylinder(self):
        x = make_point(BIN, {0: 1, 1: 0, 2: 1}, 0, 0)
        c = depth_cylinder(x, 3)
        assert (c.lo, c.hi) == (-2, 2)
        assert c.pattern == (0, 0, 1, 0, 1)
        assert c.member(x)

    def test_full_cylinder(self):
        c = full_cylinder(BIN)
        assert c.member(make_point(BIN, (1,), 0, 1))
        assert from_cylinder(c).is_full

    def test_pattern_width_checked(self):
        with pytest.raises(DomainError):
            Cylinder(BIN, 0, 2, (1, 0))


def sample_points():
    """All binary points with window [-2, 2] and constant tails."""
    out = []
    for pat in itertools.product((0, 1), repeat=5):
        for lt in (0, 1):
            for rt in (0, 1):
                out.append(make_point(BIN, pat, rt, lt, lo=-2))
    return out


SAMPLES = sample_points()


class TestClopenAlgebra:
    def test_canonicalization_drops_free_coordinate(self):
        a = clopen(BIN, 0, [(1,)])
        b = clopen(BIN, -1, [(0, 1), (1, 1)])
        assert a == b
        assert (b.lo, b.hi) == (0, 0)

    def test_full_and_empty(self):
        full = clopen(BIN, 0, [(0,), (1,)])
        assert full.is_full
        empty = clopen(BIN, 0, [])
        assert empty.is_empty
        assert complement(empty) == full
        assert complement(full) == empty
        assert all(full.member(x) for x in SAMPLES)
        assert not any(empty.member(x) for x in SAMPLES)

    def test_boolean_semantics_pointwise(self):
        a = clopen(BIN, 0, [(1,)])
        b = clopen(BIN, -1, [(0, 1), (1, 0)])
        c = clopen(BIN, 1, [(1, 1)])
        for x in SAMPLES:
            av, bv, cv = a.member(x), b.member(x), c.member(x)
            assert union(a, b).member(x) == (av or bv)
            assert intersection(a, b).member(x) == (av and bv)
            assert sym_diff(a, c).member(x) == (av != cv)
            assert complement(b).member(x) == (not bv)

    def test_de_morgan_structural(self):
        a = clopen(BIN, 0, [(1, 0), (1, 1)])
        b = clopen(BIN, -1, [(0, 1)])
        lhs = complement(union(a, b))
        rhs = intersection(complement(a), complement(b))
        assert lhs == rhs

    def test_double_complement(self):
        a = clopen(BIN, -1, [(0, 1), (1, 0)])
        assert complement(complement(a)) == a

    def test_window_cap(self):
        a = clopen(BIN, 0, [(1,)])
        b = clopen(BIN, 30, [(1,)])
        with pytest.raises(ResourceCapError):
            union(a, b)

    def test_mixed_width_rejected(self):
        with pytest.raises(DomainError):
            clopen(BIN, 0, [(1,), (0, 1)])

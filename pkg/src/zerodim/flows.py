"""Catalog of concrete computable group actions.

Every system packages a phase space, an acting group, an exact action
on finitely described points, and an input-depth table saying how much
of a point must be known to pin its image to a given depth.  The
catalog covers shifts, a substitution subshift, odometers, an
integer-indexed successor space, two sign-extension actions of word
groups, a stack of rotated circles, and its component quotient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .cantor import (
    ClopenSet,
    Point,
    Scheme,
    Tail,
    clopen,
    depth_cylinder,
    distance as cantor_distance,
    make_point,
    periodic_tail,
    reanchor_tail,
    sym_diff,
)
from .errors import DomainError, PreconditionError, RangeError
from .groups import Group, IntegerGroup, power_set

KINDS = ("cylinder-z", "cylinder-word", "tower", "quotient")


# ---------------------------------------------------------------------------
# the system container


class FlowSystem:
    """One phase space with one acting group.

    ``kind`` selects which analyzers apply: "cylinder-z" (integer
    action on a symbol space), "cylinder-word" (word-group action on a
    symbol space with extra structure), "tower" (metric stack of
    circles), "quotient" (collapsed components of a tower).
    """

    def __init__(self, system_id: str, kind: str, group: Group,
                 scheme: Optional[Scheme], act_fn: Callable,
                 input_depth_fn: Callable, points: Mapping[str, object], *,
                 dist_fn: Optional[Callable] = None,
                 language_fn: Optional[Callable] = None,
                 reps_fn: Optional[Callable] = None,
                 families: Optional[Mapping[str, Callable]] = None,
                 format_point_fn: Optional[Callable] = None,
                 metadata: Optional[Mapping] = None, summary: str = ""):
        if kind not in KINDS:
            raise DomainError("unknown system kind %r" % kind)
        self.system_id = system_id
        self.kind = kind
        self.group = group
        self.scheme = scheme
        self._act = act_fn
        self._input_depth = input_depth_fn
        self._points = dict(points)
        self._dist = dist_fn
        self._language = language_fn
        self._reps = reps_fn
        self._families = dict(families or {})
        self._format_point = format_point_fn
        self.metadata = dict(metadata or {})
        self.summary = summary
        self._language_cache: dict = {}

    # -- core operations

    def act(self, g, x):
        self.group.validate(g)
        return self._act(g, x)

    def distance(self, x, y) -> Fraction:
        if self._dist is not None:
            return self._dist(x, y)
        return cantor_distance(x, y)

    def equal(self, x, y) -> bool:
        return self.distance(x, y) == 0

    def required_input_depth(self, g, depth: int) -> int:
        if depth < 1:
            raise PreconditionError("depth must be >= 1")
        self.group.validate(g)
        return self._input_depth(g, depth)

    def orbit_points(self, x, radius: int) -> dict:
        """act(g, x) for every g in the radius-ball plus the identity."""
        reach = power_set(self.group, radius)
        return {g: self.act(g, x) for g in reach}

    # -- named points and families

    def point(self, name: str):
        try:
            return self._points[name]
        except KeyError:
            raise DomainError("system %r has no point named %r (have: %s)"
                              % (self.system_id, name,
                                 ", ".join(sorted(self._points))))

    def point_names(self) -> tuple:
        return tuple(sorted(self._points))

    def family(self, name: str, *args, **kwargs):
        try:
            builder = self._families[name]
        except KeyError:
            raise DomainError("system %r has no point family %r"
                              % (self.system_id, name))
        return builder(*args, **kwargs)

    def family_names(self) -> tuple:
        return tuple(sorted(self._families))

    # -- optional structure

    def language(self, length: int) -> Optional[frozenset]:
        """Admissible words of the given length, for subshift systems."""
        if self._language is None:
            return None
        if length < 1:
            raise PreconditionError("word length must be >= 1")
        if length not in self._language_cache:
            self._language_cache[length] = self._language(length)
        return self._language_cache[length]

    def neighbor_reps(self, x, depth: int) -> tuple:
        """Finite set of representative points within 2^-depth of x."""
        if self._reps is None:
            raise DomainError("system %r has no neighborhood representatives"
                              % self.system_id)
        return tuple(self._reps(x, depth))

    def format_point(self, x) -> str:
        if self._format_point is not None:
            return self._format_point(x)
        return repr(x)

    # -- description

    def describe(self) -> str:
        return "%s (%s, group %s)" % (self.system_id, self.kind,
                                      self.group.describe())

    def to_json(self) -> dict:
        data = {
            "id": self.system_id,
            "kind": self.kind,
            "group": self.group.to_json(),
            "points": sorted(self._points),
            "families": sorted(self._families),
            "metadata": dict(sorted(self.metadata.items())),
            "summary": self.summary,
        }
        if self.scheme is not None:
            data["scheme"] = self.scheme.to_json()
        return data

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return "<system %s>" % self.system_id


# ---------------------------------------------------------------------------
# shared point builders


def shift_point(x: Point, n: int) -> Point:
    """The point m -> x(m + n) (two-sided schemes)."""
    if x.scheme.kind != "two-sided":
        raise DomainError("shift needs a two-sided scheme")
    if n == 0:
        return x
    window = {c - n: x.value(c) for c in range(x.lo, x.hi + 1)}
    return make_point(x.scheme, window, right=x.right, left=x.left,
                      lo=x.lo - n)


def step_point(scheme: Scheme, i: int) -> Point:
    """The two-sided point that is 0 at coordinates <= i and 1 above."""
    return make_point(scheme, {}, right=1, left=0, lo=i + 1)


def ring_point(scheme: Scheme, j: int, flip_at: Optional[int] = None) -> Point:
    """The point that is 0 exactly on [-j, j], optionally flipped at
    one coordinate of that block."""
    if j < 0:
        raise PreconditionError("ring index must be >= 0")
    window = {c: 0 for c in range(-j, j + 1)}
    if flip_at is not None:
        if flip_at not in window:
            raise RangeError("flip coordinate %d outside [-%d, %d]"
                             % (flip_at, j, j))
        window[flip_at] = 1
    return make_point(scheme, window, right=1, left=1)


def _materialize(x: Point, upto: int):
    """One-sided helper: explicit symbols from the start through
    ``upto`` plus the right tail re-anchored past them."""
    lo = x.scheme.start
    hi = max(x.hi, upto)
    symbols = [x.value(c) for c in range(lo, hi + 1)]
    tail = reanchor_tail(x.right, hi - x.hi)
    return symbols, tail


def _flip_coords(y: Point, coords) -> Point:
    """Flip the binary symbols of a two-sided point at the given
    coordinates."""
    coords = sorted(coords)
    if not coords:
        return y
    lo = min(coords[0], y.lo)
    hi = max(coords[-1], y.hi)
    window = {c: y.value(c) for c in range(lo, hi + 1)}
    for c in coords:
        window[c] = 1 - window[c]
    right = reanchor_tail(y.right, hi - y.hi)
    left = reanchor_tail(y.left, y.lo - lo)
    return make_point(y.scheme, window, right=right, left=left)


def _constant_fill_reps(scheme: Scheme):
    """Representative neighbors for symbol-space points: the point
    itself plus each constant completion of its depth window."""
    sizes = set()
    if isinstance(scheme.alphabet, int):
        sizes.add(scheme.alphabet)
    elif isinstance(scheme.alphabet, tuple):
        sizes.update(scheme.alphabet)
    else:
        sizes.add(2)

    def reps(x: Point, depth: int) -> tuple:
        cyl = depth_cylinder(x, depth)
        out = [x]
        seen = {x}
        for s in range(max(sizes)):
            try:
                if scheme.kind == "two-sided":
                    p = make_point(scheme,
                                   dict(zip(range(cyl.lo, cyl.hi + 1),
                                            cyl.pattern)),
                                   right=s, left=s)
                else:
                    p = make_point(scheme, list(cyl.pattern), right=s)
            except (RangeError, DomainError):
                continue
            if p not in seen:
                seen.add(p)
                out.append(p)
        return tuple(out)

    return reps


# ---------------------------------------------------------------------------
# full shift


def build_full_shift(alphabet: int = 2) -> FlowSystem:
    scheme = Scheme("two-sided", alphabet=alphabet)
    group = IntegerGroup()

    def act(n: int, x: Point) -> Point:
        return shift_point(x, n)

    def input_depth(n: int, depth: int) -> int:
        return depth + abs(n)

    def language(length: int) -> frozenset:
        return frozenset(itertools.product(range(alphabet), repeat=length))

    zero = make_point(scheme, {}, right=0, left=0)
    points = {
        "zero": zero,
        "one": make_point(scheme, {}, right=1, left=1),
        "alternating": make_point(scheme, {}, right=periodic_tail((0, 1)),
                                  left=periodic_tail((1, 0))),
        "step": step_point(scheme, 0),
    }
    families = {
        "step": lambda i: step_point(scheme, i),
        "single": lambda k: make_point(scheme, {k: 1}, right=0, left=0),
    }
    return FlowSystem(
        "full-shift", "cylinder-z", group, scheme, act, input_depth, points,
        language_fn=language, reps_fn=_constant_fill_reps(scheme),
        families=families, metadata={"alphabet": alphabet},
        summary="every bi-infinite word over %d symbols under translation"
                % alphabet)


# ---------------------------------------------------------------------------
# odometers


def _digit_count_for(scheme: Scheme, amount: int) -> int:
    """Digits from the start whose place values exceed ``amount``."""
    k, prod = 0, 1
    while prod <= amount:
        prod *= scheme.size(scheme.start + k)
        k += 1
    return k + 1


def odometer_add(scheme: Scheme, n: int, x: Point) -> Point:
    """Add the integer n in the mixed-radix carry arithmetic."""
    if n == 0:
        return x
    block = _lcm(x.right.period(), scheme.alphabet_period())
    span = x.hi - scheme.start + 1
    count = max(span, _digit_count_for(scheme, abs(n))) + block + 2
    digits, tail = _materialize(x, scheme.start + count - 1)
    carry = n
    for i in range(len(digits)):
        if carry == 0:
            break
        size = scheme.size(scheme.start + i)
        total = digits[i] + carry
        digits[i] = total % size
        carry = total // size
    if carry == 0:
        return make_point(scheme, digits, right=tail)
    # a surviving carry means the tail was uniformly extremal: wrap it
    anchor = scheme.start + len(digits)
    if carry > 0:
        new_tail: Tail | int = 0
    else:
        maxes = tuple(scheme.size(anchor + k) - 1
                      for k in range(scheme.alphabet_period()))
        new_tail = periodic_tail(maxes)
    return make_point(scheme, digits, right=new_tail)


def build_odometer(moduli: Sequence[int] = (2,)) -> FlowSystem:
    moduli = tuple(int(m) for m in moduli)
    if not moduli or any(m < 2 for m in moduli):
        raise DomainError("odometer moduli must all be >= 2")
    alphabet: object = moduli[0] if len(set(moduli)) == 1 else moduli
    scheme = Scheme("one-sided", start=0, alphabet=alphabet)
    group = IntegerGroup()

    def act(n: int, x: Point) -> Point:
        return odometer_add(scheme, n, x)

    def input_depth(n: int, depth: int) -> int:
        return depth

    zero = make_point(scheme, [], right=0)
    maxes = tuple(scheme.size(k) - 1 for k in range(scheme.alphabet_period()))
    points = {
        "zero": zero,
        "one": odometer_add(scheme, 1, zero),
        "minus-one": make_point(scheme, [], right=periodic_tail(maxes)),
    }
    label = "odometer" if moduli == (2,) else \
        "odometer-" + "".join(str(m) for m in moduli)
    return FlowSystem(
        label, "cylinder-z", group, scheme, act, input_depth, points,
        reps_fn=_constant_fill_reps(scheme),
        metadata={"moduli": list(moduli)},
        summary="carry arithmetic on digit streams with moduli cycling "
                "through %s" % (list(moduli),))


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# substitution subshift


TM_RULES: Mapping[int, tuple] = {0: (0, 1), 1: (1, 0)}


def substitution_factors(rules: Mapping[int, tuple], length: int) -> frozenset:
    """Words of the given length appearing in the iterated substitution.

    Expands the first letter until the factor set repeats, which is the
    admissible language of the associated subshift for primitive rules
    whose images all start revisiting every letter.
    """
    if length < 1:
        raise PreconditionError("word length must be >= 1")
    word = (min(rules),)
    prev: Optional[frozenset] = None
    for _ in range(64):
        word = tuple(s for a in word for s in rules[a])
        if len(word) < 2 * length:
            continue
        factors = frozenset(word[i:i + length]
                            for i in range(len(word) - length + 1))
        if factors == prev:
            return factors
        prev = factors
    raise PreconditionError("substitution language did not stabilize")


def reflected_expansion(rules: Mapping[int, tuple], radius: int,
                        scheme: Scheme, flip_right: bool = False) -> Point:
    """Mirror-extension point of the iterated substitution.

    The right half carries the substitution's fixed sequence, the left
    half its reflection, which is admissible because the language is
    closed under reversal.  Outside the requested radius the
    description falls back to constant 0, so callers must pick the
    radius beyond every horizon and depth they will probe.
    """
    if radius < 1:
        raise PreconditionError("radius must be >= 1")
    seq = (min(rules),)
    while len(seq) <= radius:
        seq = tuple(s for a in seq for s in rules[a])
    window = {}
    for c in range(-radius, radius + 1):
        v = seq[c] if c >= 0 else seq[-c - 1]
        if flip_right and c >= 0:
            v = 1 - v
        window[c] = v
    return make_point(scheme, window, right=0, left=0)


def build_thue_morse() -> FlowSystem:
    scheme = Scheme("two-sided", alphabet=2)
    group = IntegerGroup()

    def act(n: int, x: Point) -> Point:
        return shift_point(x, n)

    def input_depth(n: int, depth: int) -> int:
        return depth + abs(n)

    def language(length: int) -> frozenset:
        return substitution_factors(TM_RULES, length)

    points = {
        "reflection": reflected_expansion(TM_RULES, 64, scheme),
        "reflection-flipped": reflected_expansion(TM_RULES, 64, scheme,
                                                  flip_right=True),
    }
    families = {
        "reflection": lambda radius: reflected_expansion(TM_RULES, radius,
                                                         scheme),
        "reflection-flipped": lambda radius: reflected_expansion(
            TM_RULES, radius, scheme, flip_right=True),
    }
    return FlowSystem(
        "thue-morse", "cylinder-z", group, scheme, act, input_depth, points,
        language_fn=language, reps_fn=_constant_fill_reps(scheme),
        families=families,
        metadata={"rules": {str(k): "".join(str(s) for s in v)
                            for k, v in sorted(TM_RULES.items())}},
        summary="the doubling substitution 0->01, 1->10 under translation")


# ---------------------------------------------------------------------------
# successor space


def _first_active(x: Point) -> Optional[int]:
    start = x.scheme.start
    bound = max(x.hi, start - 1) + x.right.period() + 1
    for c in range(start, bound + 1):
        if x.value(c) != 0:
            return c
    return None


def successor_act(n: int, x: Point) -> Point:
    p = _first_active(x)
    if p is None:
        return x
    q = p + 1
    symbols, tail = _materialize(x, q)
    idx = q - x.scheme.start
    symbols[idx] = (symbols[idx] + n) % q
    return make_point(x.scheme, symbols, right=tail)


def build_successor_map() -> FlowSystem:
    scheme = Scheme("one-sided", start=2, alphabet="index")
    group = IntegerGroup()

    def act(n: int, x: Point) -> Point:
        return successor_act(n, x)

    def input_depth(n: int, depth: int) -> int:
        return depth

    zero = make_point(scheme, [], right=0)
    points = {
        "zero": zero,
        "unit": make_point(scheme, [1], right=0),
    }
    families = {
        "unit-at": lambda c: make_point(
            scheme, [0] * (c - scheme.start) + [1], right=0),
    }
    return FlowSystem(
        "successor-map", "cylinder-z", group, scheme, act, input_depth,
        points, reps_fn=_constant_fill_reps(scheme), families=families,
        metadata={"start": 2},
        summary="turn the dial after the first engaged position; "
                "coordinate n carries n symbols")


# ---------------------------------------------------------------------------
# two-copy sign extension


class TwoCopyGroup(Group):
    """Group generated by coordinate flips and region-conditioned sign
    swaps, in exact normal form.

    An element is a pair (flips, region): a finite set of coordinates
    whose symbols get flipped, and the clopen set of base points whose
    copy sign gets reversed.  Composition follows
    (v, D)(w, E) = (v + w, (D shifted by w) xor E), all computed on
    canonical clopen sets, so element equality is exact.
    """

    variant = "two-copy-word"

    def __init__(self, m: int):
        if m < 1:
            raise DomainError("truncation index must be >= 1")
        self.m = m
        self.scheme = Scheme("two-sided", alphabet=2)
        self._empty = clopen(self.scheme, 0, [])
        gens = {}
        for j in range(-m, m + 1):
            gens["e%d" % j] = (frozenset({j}), self._empty)
        for i in range(1, m + 1):
            gens["b%d" % i] = (frozenset(), self._region(i))
        self._named = gens

    def _region(self, i: int) -> ClopenSet:
        pattern = (0,) * (2 * i + 1) + (1,)
        return clopen(self.scheme, -i, [pattern])

    @property
    def identity(self):
        return (frozenset(), self._empty)

    def multiply(self, a, b):
        va, da = a
        vb, db = b
        return (va ^ vb, sym_diff(_flip_region(da, vb), db))

    def inverse(self, a):
        v, d = a
        return (v, _flip_region(d, v))

    def generators(self) -> tuple:
        order = ["e%d" % j for j in range(-self.m, self.m + 1)] + \
                ["b%d" % i for i in range(1, self.m + 1)]
        return (self.identity,) + tuple(self._named[k] for k in order)

    def named_generator(self, name: str):
        try:
            return self._named[name]
        except KeyError:
            raise DomainError("no generator named %r" % name)

    def validate(self, g) -> None:
        if not (isinstance(g, tuple) and len(g) == 2):
            raise RangeError("element must be a (flips, region) pair")
        v, d = g
        if not isinstance(v, frozenset) or \
                any(not isinstance(c, int) for c in v):
            raise RangeError("flip part must be a frozenset of ints")
        if any(abs(c) > self.m for c in v):
            raise RangeError("flip coordinate outside truncation range")
        if not isinstance(d, ClopenSet):
            raise RangeError("region part must be a clopen set")

    def sort_key(self, g):
        v, d = g
        return (len(v), tuple(sorted(v)), len(d.patterns), d.lo, d.hi,
                tuple(sorted(d.patterns)))

    def format_element(self, g) -> str:
        for name, el in self._named.items():
            if el == g:
                return name
        v, d = g
        if g == self.identity:
            return "1"
        flips = ",".join(str(c) for c in sorted(v)) if v else "-"
        if d.is_empty:
            region = "-"
        else:
            region = "[%d..%d:%d]" % (d.lo, d.hi, len(d.patterns))
        return "flips{%s}signs%s" % (flips, region)

    def parse_element(self, text: str):
        out = self.identity
        for part in text.split("*"):
            part = part.strip()
            if part in ("", "1", "e"):
                continue
            out = self.multiply(out, self.named_generator(part))
        return out

    def to_json(self) -> dict:
        return {"variant": self.variant, "m": self.m}


def _flip_region(d: ClopenSet, v: frozenset) -> ClopenSet:
    """Image of a clopen set under flipping the coordinates in v."""
    if d.lo > d.hi or not v:
        return d
    idxs = [c - d.lo for c in v if d.lo <= c <= d.hi]
    if not idxs:
        return d
    pats = [tuple(1 - s if i in idxs else s for i, s in enumerate(p))
            for p in d.patterns]
    return clopen(d.scheme, d.lo, pats)


def build_two_copy(m: int = 3) -> FlowSystem:
    group = TwoCopyGroup(m)
    scheme = group.scheme

    def act(g, x):
        v, d = g
        y, sign = x
        return (_flip_coords(y, v), sign * (-1 if d.member(y) else 1))

    def input_depth(g, depth: int) -> int:
        v, d = g
        if d.lo > d.hi:
            return depth
        return max(depth, max(abs(d.lo), abs(d.hi)) + 1)

    def dist(a, b) -> Fraction:
        ya, sa = a
        yb, sb = b
        if sa != sb:
            return Fraction(1)
        return cantor_distance(ya, yb)

    def fmt(x) -> str:
        y, sign = x
        return "(%s, %s)" % ("+" if sign > 0 else "-", y)

    zero = make_point(scheme, {}, right=0, left=0)
    points = {
        "o-plus": (zero, 1),
        "o-minus": (zero, -1),
    }
    families = {
        "step": lambda i, sign=1: (step_point(scheme, i), sign),
    }
    return FlowSystem(
        "two-copy", "cylinder-word", group, scheme, act, input_depth, points,
        dist_fn=dist, families=families, format_point_fn=fmt,
        metadata={"m": m},
        summary="two copies of the binary shift space glued by "
                "region-conditioned sign swaps (truncation %d)" % m)


# ---------------------------------------------------------------------------
# flip-and-count sign extension


class McMahonGroup(Group):
    """Abelian group generated by single-coordinate flip-and-count
    moves, in exact normal form.

    An element is (flip set, parity bit); composition is
    (S, b)(T, c) = (S xor T, b + c + |S & T|), which realizes each
    generator as an order-4 element whose square is the shared central
    parity swap.
    """

    variant = "flip-count-word"

    def __init__(self, m: int):
        if m < 1:
            raise DomainError("truncation index must be >= 1")
        self.m = m

    @property
    def identity(self):
        return (frozenset(), 0)

    def multiply(self, a, b):
        s, u = a
        t, v = b
        return (s ^ t, (u + v + len(s & t)) % 2)

    def inverse(self, a):
        s, u = a
        return (s, (u + len(s)) % 2)

    def generators(self) -> tuple:
        out = [self.identity]
        for i in range(-self.m, self.m + 1):
            out.append((frozenset({i}), 0))
            out.append((frozenset({i}), 1))
        return tuple(out)

    def validate(self, g) -> None:
        if not (isinstance(g, tuple) and len(g) == 2):
            raise RangeError("element must be a (flips, parity) pair")
        s, b = g
        if not isinstance(s, frozenset) or \
                any(not isinstance(c, int) for c in s):
            raise RangeError("flip part must be a frozenset of ints")
        if any(abs(c) > self.m for c in s):
            raise RangeError("flip coordinate outside truncation range")
        if b not in (0, 1):
            raise RangeError("parity bit must be 0 or 1")

    def sort_key(self, g):
        s, b = g
        return (len(s) + b, tuple(sorted(s)), b)

    def closed_form_length(self, g) -> int:
        s, b = g
        if s:
            return len(s)
        return 0 if b == 0 else 2

    def format_element(self, g) -> str:
        s, b = g
        if not s and not b:
            return "e"
        parts = ["t%d" % i for i in sorted(s)]
        if b:
            parts.append("s")
        return "*".join(parts)

    def parse_element(self, text: str):
        out = self.identity
        for part in text.split("*"):
            part = part.strip()
            if part in ("", "e", "1"):
                continue
            if part == "s":
                out = self.multiply(out, (frozenset(), 1))
            elif part.startswith("t"):
                out = self.multiply(out, (frozenset({int(part[1:])}), 0))
            else:
                raise DomainError("cannot parse element part %r" % part)
        return out

    def to_json(self) -> dict:
        return {"variant": self.variant, "m": self.m}


def build_mcmahon(m: int = 3) -> FlowSystem:
    group = McMahonGroup(m)
    scheme = Scheme("two-sided", alphabet=2)

    def act(g, x):
        s, b = g
        y, bit = x
        count = sum(y.value(i) for i in s)
        return (_flip_coords(y, s), (bit + count + b) % 2)

    def input_depth(g, depth: int) -> int:
        s, _ = g
        if not s:
            return depth
        return max(depth, max(abs(i) for i in s) + 1)

    def dist(a, b) -> Fraction:
        ya, pa = a
        yb, pb = b
        if pa != pb:
            return Fraction(1)
        return cantor_distance(ya, yb)

    def fmt(x) -> str:
        y, bit = x
        return "(%d, %s)" % (bit, y)

    zero = make_point(scheme, {}, right=0, left=0)
    points = {
        "base": (zero, 0),
        "marked": (zero, 1),
    }
    families = {
        "ring": lambda j, bit=0: (ring_point(scheme, j), bit),
        "ring-flipped": lambda j, bit=0: (ring_point(scheme, j, flip_at=j),
                                          bit),
    }
    return FlowSystem(
        "mcmahon", "cylinder-word", group, scheme, act, input_depth, points,
        dist_fn=dist, families=families, format_point_fn=fmt,
        metadata={"m": m},
        summary="binary shift space with a parity bit fed by the flipped "
                "coordinate (truncation %d)" % m)


# ---------------------------------------------------------------------------
# circle stack


@dataclass(frozen=True)
class CirclePoint:
    """A point on one circle of the stack: ``level`` is a positive
    integer or None for the limit circle; ``turn`` is the angular
    position in full turns, stored reduced modulo 1."""

    level: Optional[int]
    turn: Fraction

    def __post_init__(self):
        if self.level is not None and (not isinstance(self.level, int)
                                       or self.level < 1):
            raise RangeError("level must be a positive int or None")
        object.__setattr__(self, "turn", Fraction(self.turn) % 1)

    @property
    def radius(self) -> Fraction:
        if self.level is None:
            return Fraction(1)
        return Fraction(self.level, self.level + 1)

    @property
    def step(self) -> Fraction:
        """Rotation advance per action step on this circle."""
        if self.level is None:
            return Fraction(0)
        return Fraction(1, self.level + 1)

    def __repr__(self) -> str:
        name = "limit" if self.level is None else str(self.level)
        return "<circle %s @ %s>" % (name, self.turn)


def _arc(a: Fraction, b: Fraction) -> Fraction:
    d = abs(a - b)
    return 2 * min(d, 1 - d)


def circle_distance(p: CirclePoint, q: CirclePoint) -> Fraction:
    return max(abs(p.radius - q.radius), _arc(p.turn, q.turn))


def _circle_reps(p: CirclePoint, depth: int) -> tuple:
    eps = Fraction(1, 2 ** depth)
    out = [p]
    if p.level is None:
        out.append(CirclePoint(max(1, 2 ** depth - 1), p.turn))
    else:
        for m in (p.level - 1, p.level + 1):
            if m >= 1 and abs(CirclePoint(m, p.turn).radius - p.radius) <= eps:
                out.append(CirclePoint(m, p.turn))
        if 1 - p.radius <= eps:
            out.append(CirclePoint(None, p.turn))
    out.append(CirclePoint(p.level, p.turn + eps / 4))
    return tuple(out)


def build_circle_stack() -> FlowSystem:
    group = IntegerGroup()

    def act(n: int, p: CirclePoint) -> CirclePoint:
        if p.level is None:
            return p
        return CirclePoint(p.level, p.turn + n * p.step)

    def input_depth(n: int, depth: int) -> int:
        if n == 0:
            return depth
        return depth + 1 + abs(n).bit_length()

    points = {
        "level-1": CirclePoint(1, Fraction(0)),
        "level-2": CirclePoint(2, Fraction(0)),
        "limit": CirclePoint(None, Fraction(0)),
    }
    families = {
        "level": lambda n, turn=Fraction(0): CirclePoint(n, Fraction(turn)),
        "limit-at": lambda turn: CirclePoint(None, Fraction(turn)),
    }
    return FlowSystem(
        "circle-stack", "tower", group, None, act, input_depth, points,
        dist_fn=circle_distance, reps_fn=_circle_reps, families=families,
        metadata={"rotation": "1/(level+1)"},
        summary="circles of radius level/(level+1) each rotated by "
                "1/(level+1), plus a fixed limit circle")


def circle_component(p: CirclePoint):
    """Projection of a stack point to its component label."""
    return p.level


def _component_radius(level: Optional[int]) -> Fraction:
    if level is None:
        return Fraction(1)
    return Fraction(level, level + 1)


def component_projection(base: FlowSystem) -> FlowSystem:
    """Collapse each connected component of a tower system to a point.

    The action becomes trivial because every component is preserved;
    distances compare component radii.
    """
    if base.kind != "tower":
        raise DomainError("component projection needs a tower system")

    def act(n: int, level):
        return level

    def input_depth(n: int, depth: int) -> int:
        return depth

    def dist(a, b) -> Fraction:
        return abs(_component_radius(a) - _component_radius(b))

    def reps(level, depth: int) -> tuple:
        eps = Fraction(1, 2 ** depth)
        out = [level]
        if level is None:
            out.append(max(1, 2 ** depth - 1))
        else:
            for m in (level - 1, level + 1):
                if m >= 1 and abs(_component_radius(m)
                                  - _component_radius(level)) <= eps:
                    out.append(m)
            if 1 - _component_radius(level) <= eps:
                out.append(None)
        return tuple(out)

    def fmt(level) -> str:
        return "limit" if level is None else "level %d" % level

    points = {name: circle_component(p)
              for name, p in [(n, base.point(n)) for n in base.point_names()]}
    return FlowSystem(
        base.system_id + "-components", "quotient", base.group, None, act,
        input_depth, points, dist_fn=dist, reps_fn=reps,
        families={"level": lambda n: n},
        format_point_fn=fmt, metadata={"base": base.system_id},
        summary="components of %s collapsed to points; the action "
                "becomes trivial" % base.system_id)


# ---------------------------------------------------------------------------
# registry


SYSTEM_BUILDERS: Mapping[str, Callable[[], FlowSystem]] = {
    "full-shift": build_full_shift,
    "thue-morse": build_thue_morse,
    "odometer": build_odometer,
    "successor-map": build_successor_map,
    "two-copy": build_two_copy,
    "mcmahon": build_mcmahon,
    "circle-stack": build_circle_stack,
    "circle-stack-components":
        lambda: component_projection(build_circle_stack()),
}


def available_systems() -> tuple:
    return tuple(sorted(SYSTEM_BUILDERS))


def get_system(system_id: str) -> FlowSystem:
    try:
        builder = SYSTEM_BUILDERS[system_id]
    except KeyError:
        raise DomainError("unknown system %r (have: %s)"
                          % (system_id, ", ".join(available_systems())))
    return builder()

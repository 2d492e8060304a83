"""Exact computation on zero-dimensional symbol spaces.

Points of a product of finite discrete coordinate spaces are described
by a finite explicit window plus a rule for each infinite tail
(constant symbol or repeating pattern).  This description is closed
under every action in the package and makes equality and the standard
2^-k ultrametric decidable, so all distances come out as exact dyadic
fractions.

Clopen subsets are stored as a coordinate window plus the set of
admissible patterns on it, kept in a canonical minimal-window form so
that structural equality is set equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DomainError, PreconditionError, RangeError, ResourceCapError

WINDOW_CAP = 24          # widest clopen window the algebra will enumerate
PATTERN_CAP = 1 << 21    # most patterns a single clopen set may hold


# ---------------------------------------------------------------------------
# coordinate schemes


@dataclass(frozen=True)
class Scheme:
    """Index set and per-coordinate alphabet of a symbol space.

    ``kind`` is "two-sided" (coordinates are all integers) or
    "one-sided" (coordinates start at ``start``).  ``alphabet`` is a
    constant size, a tuple of sizes cycling from the start coordinate
    (one-sided schemes only), or the string "index" meaning coordinate
    n carries n symbols (requires a one-sided scheme starting at >= 2).
    """

    kind: str
    start: int = 0
    alphabet: object = 2

    def __post_init__(self):
        if self.kind not in ("two-sided", "one-sided"):
            raise DomainError("unknown scheme kind %r" % self.kind)
        if self.alphabet == "index":
            if self.kind != "one-sided" or self.start < 2:
                raise DomainError("index alphabets need a one-sided scheme "
                                  "starting at >= 2")
        elif isinstance(self.alphabet, tuple):
            if self.kind != "one-sided":
                raise DomainError("cycling alphabets need a one-sided scheme")
            if not self.alphabet or any(not (isinstance(s, int) and s >= 2)
                                        for s in self.alphabet):
                raise DomainError("cycling alphabet sizes must be ints >= 2")
        elif not (isinstance(self.alphabet, int) and self.alphabet >= 2):
            raise DomainError("alphabet must be an int >= 2, a tuple of such, "
                              "or 'index'")

    def size(self, n: int) -> int:
        self.check_coord(n)
        if self.alphabet == "index":
            return n
        if isinstance(self.alphabet, tuple):
            return self.alphabet[(n - self.start) % len(self.alphabet)]
        return self.alphabet

    def alphabet_period(self) -> int:
        return len(self.alphabet) if isinstance(self.alphabet, tuple) else 1

    def check_coord(self, n: int) -> None:
        if self.kind == "one-sided" and n < self.start:
            raise RangeError("coordinate %d below scheme start %d"
                             % (n, self.start))

    def offset(self, n: int) -> int:
        """Depth offset of a coordinate: how early it enters depth windows."""
        if self.kind == "two-sided":
            return abs(n)
        return n - self.start

    def coords_at_offset(self, k: int) -> tuple:
        if self.kind == "two-sided":
            return (k,) if k == 0 else (-k, k)
        return (self.start + k,)

    def depth_window(self, depth: int) -> tuple[int, int]:
        """Coordinate interval covered by offsets < depth."""
        if depth < 1:
            raise PreconditionError("depth must be >= 1")
        if self.kind == "two-sided":
            return (-(depth - 1), depth - 1)
        return (self.start, self.start + depth - 1)

    def to_json(self) -> dict:
        return {"kind": self.kind, "start": self.start,
                "alphabet": self.alphabet}


def scheme_from_json(data: Mapping) -> Scheme:
    alphabet = data.get("alphabet", 2)
    if isinstance(alphabet, list):
        alphabet = tuple(alphabet)
    return Scheme(kind=data["kind"], start=int(data.get("start", 0)),
                  alphabet=alphabet)


# ---------------------------------------------------------------------------
# tails and points


@dataclass(frozen=True)
class Tail:
    """Rule for one infinite side of a point: a constant symbol or a
    repeating pattern read outward from the window edge."""

    symbols: tuple

    def __post_init__(self):
        if not self.symbols:
            raise DomainError("tail needs at least one symbol")

    @property
    def constant(self) -> bool:
        return len(self.symbols) == 1

    def at(self, k: int) -> int:
        """Symbol k steps beyond the anchor (k >= 0, outward)."""
        return self.symbols[k % len(self.symbols)]

    def period(self) -> int:
        return len(self.symbols)


def constant_tail(symbol: int) -> Tail:
    return Tail((symbol,))


def periodic_tail(pattern: Sequence[int]) -> Tail:
    return Tail(_primitive(tuple(pattern)))


def _primitive(pattern: tuple) -> tuple:
    n = len(pattern)
    for p in range(1, n + 1):
        if n % p == 0 and all(pattern[i] == pattern[i % p] for i in range(n)):
            return pattern[:p]
    return pattern


def _rotate_out(tail: Tail) -> Tail:
    """Re-anchor a tail one step further out (pattern rotates)."""
    s = tail.symbols
    return Tail(_primitive(s[-1:] + s[:-1]))


def reanchor_tail(tail: Tail, steps: int) -> Tail:
    """The same infinite tail read from an anchor moved ``steps``
    positions further out (steps >= 0)."""
    if steps < 0:
        raise PreconditionError("reanchor steps must be >= 0")
    s = tail.symbols
    k = steps % len(s)
    return Tail(s[k:] + s[:k])


@dataclass(frozen=True)
class Point:
    """One point, in canonical window-plus-tails form.

    ``window`` holds the symbols at coordinates lo..hi; ``right`` rules
    every coordinate above hi, ``left`` (two-sided schemes only) every
    coordinate below lo.  Construct through ``make_point`` which
    canonicalizes, so structural equality is equality of points.
    """

    scheme: Scheme
    lo: int
    hi: int
    window: tuple
    right: Tail
    left: Optional[Tail] = None

    def value(self, n: int) -> int:
        self.scheme.check_coord(n)
        if self.lo <= n <= self.hi:
            return self.window[n - self.lo]
        if n > self.hi:
            return self.right.at(n - self.hi - 1)
        if self.left is None:
            raise RangeError("coordinate %d below a one-sided window" % n)
        return self.left.at(self.lo - 1 - n)

    def span(self) -> int:
        """Largest depth offset touched by the explicit window."""
        if self.lo > self.hi:
            edge = (self.lo, self.lo - 1) if self.scheme.kind == "two-sided" \
                else (self.lo,)
            return max(self.scheme.offset(n) for n in edge)
        return max(self.scheme.offset(self.lo), self.scheme.offset(self.hi))

    def to_json(self) -> dict:
        data = {
            "scheme": self.scheme.to_json(),
            "lo": self.lo,
            "window": list(self.window),
            "right": list(self.right.symbols),
        }
        if self.left is not None:
            data["left"] = list(self.left.symbols)
        return data

    def __repr__(self) -> str:
        left = "".join(str(s) for s in reversed(self.left.symbols)) + "..." \
            if self.left else ""
        win = "".join(str(s) for s in self.window)
        right = "..." + "".join(str(s) for s in self.right.symbols)
        return "<point ...%s[%s@%d]%s>" % (left, win, self.lo, right)


def make_point(scheme: Scheme, window: Mapping[int, int] | Sequence[int],
               right: Tail | int, left: Tail | int | None = None,
               lo: Optional[int] = None) -> Point:
    """Build a canonical point.

    ``window`` is either a coordinate->symbol mapping or a sequence laid
    out from ``lo`` (default: scheme start, or 0).  Tails may be given
    as bare symbols (constant).  One-sided schemes take no left tail and
    the window is anchored at the scheme start.
    """
    if isinstance(right, int):
        right = constant_tail(right)
    if isinstance(left, int):
        left = constant_tail(left)

    if isinstance(window, Mapping):
        if window:
            coords = sorted(window)
            if coords != list(range(coords[0], coords[-1] + 1)):
                raise DomainError("window mapping must cover a contiguous "
                                  "coordinate interval")
            lo = coords[0]
            symbols = tuple(window[c] for c in coords)
        else:
            symbols = ()
            if lo is None:
                lo = scheme.start if scheme.kind == "one-sided" else 0
    else:
        symbols = tuple(window)
        if lo is None:
            lo = scheme.start if scheme.kind == "one-sided" else 0

    if scheme.kind == "one-sided":
        if left is not None:
            raise DomainError("one-sided schemes have no left tail")
        if lo != scheme.start:
            raise DomainError("one-sided windows must start at %d"
                              % scheme.start)
    elif left is None:
        raise DomainError("two-sided schemes need a left tail")

    hi = lo + len(symbols) - 1
    for n, s in zip(range(lo, hi + 1), symbols):
        _check_symbol(scheme, n, s)
    right = Tail(_primitive(right.symbols))
    if left is not None:
        left = Tail(_primitive(left.symbols))
    _check_tails(scheme, lo, hi, right, left)

    # absorb window edges that merely repeat the tails
    window_list = list(symbols)
    while window_list and window_list[-1] == right.symbols[-1]:
        window_list.pop()
        hi -= 1
        right = _rotate_out(right)
    if left is not None:
        while window_list and window_list[0] == left.symbols[-1]:
            window_list.pop(0)
            lo += 1
            left = _rotate_out(left)

    if not window_list:
        lo, hi, left, right = _normalize_empty(scheme, lo, left, right)
    return Point(scheme=scheme, lo=lo, hi=hi, window=tuple(window_list),
                 right=right, left=left)


def _check_symbol(scheme: Scheme, n: int, s: int) -> None:
    if not (isinstance(s, int) and 0 <= s < scheme.size(n)):
        raise RangeError("symbol %r invalid at coordinate %d (alphabet %d)"
                         % (s, n, scheme.size(n)))


def _check_tails(scheme: Scheme, lo: int, hi: int, right: Tail,
                 left: Optional[Tail]) -> None:
    if scheme.alphabet == "index":
        # each tail symbol must fit at the first coordinate it reaches
        first = max(hi + 1, scheme.start)
        for k, s in enumerate(right.symbols):
            _check_symbol(scheme, first + k, s)
    elif isinstance(scheme.alphabet, tuple):
        # a tail symbol recurs with the tail period; check it against
        # every alphabet residue it can land on
        first = max(hi + 1, scheme.start)
        period = len(right.symbols)
        for k, s in enumerate(right.symbols):
            for j in range(scheme.alphabet_period()):
                _check_symbol(scheme, first + k + j * period, s)
    else:
        for s in right.symbols:
            if not 0 <= s < scheme.alphabet:
                raise RangeError("tail symbol %r outside alphabet" % (s,))
        if left is not None:
            for s in left.symbols:
                if not 0 <= s < scheme.alphabet:
                    raise RangeError("tail symbol %r outside alphabet" % (s,))


def _normalize_empty(scheme: Scheme, lo: int, left: Optional[Tail],
                     right: Tail):
    """Canonical boundary for a point with no explicit window."""
    if scheme.kind == "one-sided":
        return scheme.start, scheme.start - 1, None, right
    assert left is not None
    # the point is fully periodic iff the left rule equals the right
    # pattern continued leftward across the boundary
    L = _lcm(left.period(), right.period())
    meshes = all(left.at(k) == right.symbols[(-1 - k) % right.period()]
                 for k in range(L))
    if meshes:
        # fully periodic point: anchor the boundary at coordinate 0
        shift = lo % right.period()
        pat = right.symbols[-shift:] + right.symbols[:-shift] if shift else right.symbols
        right = Tail(_primitive(pat))
        left = Tail(_primitive(tuple(right.symbols[(-1 - k) % right.period()]
                                     for k in range(right.period()))))
        return 0, -1, left, right
    # slide the boundary left while the left rule agrees with the right
    # pattern's continuation; the first disagreement pins a unique anchor
    while left.at(0) == right.symbols[-1]:
        lo -= 1
        right = _rotate_out(right)
        left = reanchor_tail(left, 1)
    return lo, lo - 1, left, right


def _lcm(a: int, b: int) -> int:
    import math
    return a * b // math.gcd(a, b)


def points_equal(x: Point, y: Point) -> bool:
    return distance(x, y) == 0


def distance(x: Point, y: Point) -> Fraction:
    """2^-k where k is the least depth offset at which x and y differ
    (0 when equal).  Exact: the scan bound covers both windows plus a
    full common period of the tails."""
    if x.scheme != y.scheme:
        raise DomainError("points live on different schemes")
    span = max(x.span(), y.span())
    period = _lcm(_lcm(x.right.period(), y.right.period()),
                  _lcm(x.left.period() if x.left else 1,
                       y.left.period() if y.left else 1))
    bound = span + period + 1
    for k in range(bound + 1):
        for n in x.scheme.coords_at_offset(k):
            if x.value(n) != y.value(n):
                return Fraction(1, 2 ** k)
    return Fraction(0)


# ---------------------------------------------------------------------------
# cylinders and clopen sets


@dataclass(frozen=True)
class Cylinder:
    """Points agreeing with ``pattern`` on coordinates lo..hi.
    An empty window (lo > hi) is the full space."""

    scheme: Scheme
    lo: int
    hi: int
    pattern: tuple

    def __post_init__(self):
        if len(self.pattern) != max(0, self.hi - self.lo + 1):
            raise DomainError("pattern length does not match window")
        for n, s in zip(range(self.lo, self.hi + 1), self.pattern):
            _check_symbol(self.scheme, n, s)

    def member(self, x: Point) -> bool:
        return all(x.value(n) == s
                   for n, s in zip(range(self.lo, self.hi + 1), self.pattern))

    def to_json(self) -> dict:
        return {"scheme": self.scheme.to_json(), "lo": self.lo,
                "pattern": list(self.pattern)}

    def __repr__(self) -> str:
        return "<cyl [%s@%d]>" % ("".join(str(s) for s in self.pattern), self.lo)


def full_cylinder(scheme: Scheme) -> Cylinder:
    anchor = scheme.start if scheme.kind == "one-sided" else 0
    return Cylinder(scheme, anchor, anchor - 1, ())


def depth_cylinder(x: Point, depth: int) -> Cylinder:
    """The cylinder fixing x on every coordinate at offset < depth."""
    lo, hi = x.scheme.depth_window(depth)
    return Cylinder(x.scheme, lo, hi,
                    tuple(x.value(n) for n in range(lo, hi + 1)))


@dataclass(frozen=True)
class ClopenSet:
    """Finite union of same-window cylinders in canonical form.

    Canonical means: no edge coordinate of the window is free (a
    coordinate is free when every completion of every residual pattern
    is admitted), the empty set is stored with an empty window and no
    patterns, and the full space with an empty window and the empty
    pattern.  Build through ``clopen`` / ``from_cylinder`` or the
    algebra operations.
    """

    scheme: Scheme
    lo: int
    hi: int
    patterns: frozenset

    def member(self, x: Point) -> bool:
        probe = tuple(x.value(n) for n in range(self.lo, self.hi + 1))
        return probe in self.patterns

    @property
    def is_empty(self) -> bool:
        return not self.patterns

    @property
    def is_full(self) -> bool:
        return self.lo > self.hi and bool(self.patterns)

    def window_coords(self) -> range:
        return range(self.lo, self.hi + 1)

    def to_json(self) -> dict:
        return {"scheme": self.scheme.to_json(), "lo": self.lo,
                "patterns": sorted(list(p) for p in self.patterns)}

    def __repr__(self) -> str:
        return "<clopen [%d..%d] %d patterns>" % (self.lo, self.hi,
                                                  len(self.patterns))


def clopen(scheme: Scheme, lo: int, patterns: Iterable[Sequence[int]]) -> ClopenSet:
    pats = frozenset(tuple(p) for p in patterns)
    if not pats:
        anchor = scheme.start if scheme.kind == "one-sided" else 0
        return ClopenSet(scheme, anchor, anchor - 1, frozenset())
    width = len(next(iter(pats)))
    if any(len(p) != width for p in pats):
        raise DomainError("all patterns must share the window width")
    hi = lo + width - 1
    for p in pats:
        for n, s in zip(range(lo, hi + 1), p):
            _check_symbol(scheme, n, s)
    return _canonical(scheme, lo, hi, pats)


def from_cylinder(c: Cylinder) -> ClopenSet:
    if c.lo > c.hi:
        return _full_clopen(c.scheme)
    return clopen(c.scheme, c.lo, [c.pattern])


def _full_clopen(scheme: Scheme) -> ClopenSet:
    anchor = scheme.start if scheme.kind == "one-sided" else 0
    return ClopenSet(scheme, anchor, anchor - 1, frozenset({()}))


def _canonical(scheme: Scheme, lo: int, hi: int, pats: frozenset) -> ClopenSet:
    while lo <= hi:
        shrunk = _try_drop(scheme, lo, hi, pats, left=True)
        if shrunk is not None:
            lo, pats = lo + 1, shrunk
            continue
        shrunk = _try_drop(scheme, lo, hi, pats, left=False)
        if shrunk is not None:
            hi, pats = hi - 1, shrunk
            continue
        break
    if lo > hi:
        if pats:
            return _full_clopen(scheme)
        anchor = scheme.start if scheme.kind == "one-sided" else 0
        return ClopenSet(scheme, anchor, anchor - 1, frozenset())
    return ClopenSet(scheme, lo, hi, pats)


def _try_drop(scheme: Scheme, lo: int, hi: int, pats: frozenset,
              left: bool):
    """Residual pattern set if the chosen edge coordinate is free."""
    coord = lo if left else hi
    size = scheme.size(coord)
    groups: dict = {}
    for p in pats:
        rest = p[1:] if left else p[:-1]
        sym = p[0] if left else p[-1]
        groups.setdefault(rest, set()).add(sym)
    if all(len(s) == size for s in groups.values()):
        return frozenset(groups)
    return None


def complement(a: ClopenSet) -> ClopenSet:
    if a.is_empty:
        return _full_clopen(a.scheme)
    if a.is_full:
        return clopen(a.scheme, a.lo, [])
    universe = _all_patterns(a.scheme, a.lo, a.hi)
    return _canonical(a.scheme, a.lo, a.hi, frozenset(universe - a.patterns))


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    a2, b2, lo, hi = _refine(a, b)
    return _canonical(a.scheme, lo, hi, a2 | b2)


def intersection(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    a2, b2, lo, hi = _refine(a, b)
    return _canonical(a.scheme, lo, hi, a2 & b2)


def sym_diff(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    a2, b2, lo, hi = _refine(a, b)
    return _canonical(a.scheme, lo, hi, a2 ^ b2)


def _refine(a: ClopenSet, b: ClopenSet):
    if a.scheme != b.scheme:
        raise DomainError("clopen sets live on different schemes")
    # empty-window canonical forms adopt the other operand's window
    lo_parts = [c.lo for c in (a, b) if c.lo <= c.hi]
    hi_parts = [c.hi for c in (a, b) if c.lo <= c.hi]
    if not lo_parts:
        anchor = a.scheme.start if a.scheme.kind == "one-sided" else 0
        return (frozenset({()}) if a.patterns else frozenset(),
                frozenset({()}) if b.patterns else frozenset(),
                anchor, anchor - 1)
    lo, hi = min(lo_parts), max(hi_parts)
    width = hi - lo + 1
    if width > WINDOW_CAP:
        raise ResourceCapError("refined window width %d exceeds cap %d"
                               % (width, WINDOW_CAP))
    return (_expand(a, lo, hi), _expand(b, lo, hi), lo, hi)


def _expand(c: ClopenSet, lo: int, hi: int) -> frozenset:
    if c.is_empty:
        return frozenset()
    base = {(): True}
    prefix_coords = range(lo, c.lo)
    suffix_coords = range(c.hi + 1, hi + 1)
    prefixes = _enumerate(c.scheme, prefix_coords)
    suffixes = _enumerate(c.scheme, suffix_coords)
    core = c.patterns if c.lo <= c.hi else {()}
    total = len(prefixes) * len(core) * len(suffixes)
    if total > PATTERN_CAP:
        raise ResourceCapError("pattern expansion would produce %d patterns"
                               % total)
    return frozenset(p + mid + s for p in prefixes for mid in core
                     for s in suffixes)


def _enumerate(scheme: Scheme, coords: range) -> list:
    out = [()]
    for n in coords:
        size = scheme.size(n)
        if len(out) * size > PATTERN_CAP:
            raise ResourceCapError("pattern enumeration exceeds cap")
        out = [p + (s,) for p in out for s in range(size)]
    return out


def _all_patterns(scheme: Scheme, lo: int, hi: int) -> frozenset:
    return frozenset(_enumerate(scheme, range(lo, hi + 1)))

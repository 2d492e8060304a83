"""Word-metric geometry on concrete finitely generated groups.

A group here is always given with a distinguished symmetric generating
set containing the identity.  The word length of g is the least number
of generators whose product is g, with the identity having length zero.
Everything downstream (balls, reach sets, cone approximations,
thickness and syndeticity probes) is computed exactly from that metric.

Supported variants: the integers, integer lattices, free groups,
finite groups given by multiplication table, and truncated direct sums
of cyclic groups.  Elements use plain hashable Python values so sets
and dict keys work without ceremony.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import DomainError, PreconditionError, RangeError, ResourceCapError
from .verdict import Verdict, fails, holds, inconclusive

DEFAULT_BALL_CAP = 1_000_000


# ---------------------------------------------------------------------------
# group variants


class Group:
    """Common interface of all group variants.

    Concrete subclasses fix the element representation and provide
    multiplication, inversion, the generating set, and canonical
    formatting.  The generating set is symmetric and contains the
    identity; word-length conventions rely on both properties.
    """

    variant: str = "abstract"

    @property
    def identity(self):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def generators(self) -> tuple:
        """Symmetric generating set, identity included."""
        raise NotImplementedError

    def validate(self, g) -> None:
        """Raise RangeError / DomainError if g is not representable."""

    def sort_key(self, g):
        """Total order used for deterministic listings."""
        return repr(g)

    def format_element(self, g) -> str:
        return repr(g)

    def parse_element(self, text: str):
        raise DomainError("no element parser for variant %r" % self.variant)

    def closed_form_length(self, g) -> Optional[int]:
        """Exact word length when the variant admits one, else None."""
        return None

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return "<%s>" % self.describe()

    def describe(self) -> str:
        return self.variant


class IntegerGroup(Group):
    """The integers with generating set {-1, 0, 1}."""

    variant = "integers"

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return a + b

    def inverse(self, a: int) -> int:
        return -a

    def generators(self) -> tuple:
        return (-1, 0, 1)

    def validate(self, g) -> None:
        if not isinstance(g, int):
            raise RangeError("integer group element must be int, got %r" % (g,))

    def sort_key(self, g: int):
        return (abs(g), -g)

    def format_element(self, g: int) -> str:
        return str(g)

    def parse_element(self, text: str) -> int:
        return int(text)

    def closed_form_length(self, g: int) -> int:
        return abs(g)

    def to_json(self) -> dict:
        return {"variant": self.variant}


class LatticeGroup(Group):
    """Z^d with generators {0, +/- unit vectors}; word length is the L1 norm."""

    variant = "lattice"

    def __init__(self, dim: int):
        if dim < 1:
            raise DomainError("lattice dimension must be >= 1")
        self.dim = dim

    @property
    def identity(self) -> tuple:
        return (0,) * self.dim

    def multiply(self, a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a: tuple) -> tuple:
        return tuple(-x for x in a)

    def generators(self) -> tuple:
        gens = [self.identity]
        for i in range(self.dim):
            for s in (1, -1):
                v = [0] * self.dim
                v[i] = s
                gens.append(tuple(v))
        return tuple(gens)

    def validate(self, g) -> None:
        if not (isinstance(g, tuple) and len(g) == self.dim
                and all(isinstance(x, int) for x in g)):
            raise RangeError("lattice element must be an int %d-tuple" % self.dim)

    def sort_key(self, g: tuple):
        return (sum(abs(x) for x in g), tuple(-x for x in g))

    def format_element(self, g: tuple) -> str:
        return "(" + ",".join(str(x) for x in g) + ")"

    def parse_element(self, text: str) -> tuple:
        body = text.strip().strip("()")
        parts = [p for p in body.split(",") if p.strip()]
        g = tuple(int(p) for p in parts)
        self.validate(g)
        return g

    def closed_form_length(self, g: tuple) -> int:
        return sum(abs(x) for x in g)

    def to_json(self) -> dict:
        return {"variant": self.variant, "dim": self.dim}

    def describe(self) -> str:
        return "lattice(%d)" % self.dim


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class FreeGroupVariant(Group):
    """Free group of finite rank; elements are reduced words.

    A word is a tuple of nonzero ints: +k is the k-th letter, -k its
    inverse.  Reduction (no adjacent cancelling pair) is maintained by
    multiply, so structural equality is group equality.
    """

    variant = "free"

    def __init__(self, rank: int):
        if not 1 <= rank <= 26:
            raise DomainError("free group rank must be in 1..26")
        self.rank = rank

    @property
    def identity(self) -> tuple:
        return ()

    def multiply(self, a: tuple, b: tuple) -> tuple:
        out = list(a)
        for x in b:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def inverse(self, a: tuple) -> tuple:
        return tuple(-x for x in reversed(a))

    def generators(self) -> tuple:
        gens = [()]
        for k in range(1, self.rank + 1):
            gens.append((k,))
            gens.append((-k,))
        return tuple(gens)

    def validate(self, g) -> None:
        if not isinstance(g, tuple):
            raise RangeError("free group element must be a tuple of nonzero ints")
        for x in g:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise RangeError("letter %r outside rank %d" % (x, self.rank))
        for u, v in zip(g, g[1:]):
            if u == -v:
                raise RangeError("word %r is not reduced" % (g,))

    def sort_key(self, g: tuple):
        return (len(g), tuple((abs(x), x < 0) for x in g))

    def format_element(self, g: tuple) -> str:
        if not g:
            return "e"
        out = []
        for x in g:
            letter = _LETTERS[abs(x) - 1]
            out.append(letter if x > 0 else letter + "^-1")
        return "".join(out)

    def parse_element(self, text: str) -> tuple:
        text = text.strip()
        if text in ("", "e", "1"):
            return ()
        word = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch not in _LETTERS[: self.rank]:
                raise RangeError("unknown letter %r" % ch)
            k = _LETTERS.index(ch) + 1
            i += 1
            if text[i : i + 3] == "^-1":
                word.append(-k)
                i += 3
            else:
                word.append(k)
        g = tuple(word)
        self.validate(g)
        return g

    def closed_form_length(self, g: tuple) -> int:
        return len(g)

    def to_json(self) -> dict:
        return {"variant": self.variant, "rank": self.rank}

    def describe(self) -> str:
        return "free(%d)" % self.rank


class FiniteGroup(Group):
    """A finite group given by element names and a multiplication table.

    By default every element is a generator, which makes the word metric
    the discrete metric (length 1 off the identity); an explicit smaller
    symmetric generating set may be supplied.
    """

    variant = "finite"

    def __init__(self, names: Sequence[str],
                 table: Mapping[tuple, str],
                 identity: str,
                 generators: Optional[Sequence[str]] = None,
                 label: str = "finite"):
        self.names = tuple(names)
        self.label = label
        if len(set(self.names)) != len(self.names):
            raise DomainError("duplicate element names")
        self._table = dict(table)
        self._identity = identity
        self._inverse = {}
        for a in self.names:
            for b in self.names:
                if self._table[(a, b)] == identity:
                    self._inverse[a] = b
        if set(self._inverse) != set(self.names):
            raise DomainError("multiplication table has no inverse for some element")
        if generators is None:
            gens = set(self.names)
        else:
            gens = set(generators) | {identity}
            gens |= {self._inverse[g] for g in generators}
        self._generators = tuple(sorted(gens, key=self.sort_key))

    @property
    def identity(self) -> str:
        return self._identity

    def multiply(self, a: str, b: str) -> str:
        return self._table[(a, b)]

    def inverse(self, a: str) -> str:
        return self._inverse[a]

    def generators(self) -> tuple:
        return self._generators

    def elements(self) -> tuple:
        return self.names

    def order(self) -> int:
        return len(self.names)

    def validate(self, g) -> None:
        if g not in self._table and g not in self.names:
            raise RangeError("unknown element %r" % (g,))
        if g not in self.names:
            raise RangeError("unknown element %r" % (g,))

    def sort_key(self, g: str):
        return (g != self._identity, g)

    def format_element(self, g: str) -> str:
        return g

    def parse_element(self, text: str) -> str:
        text = text.strip()
        if text not in self.names:
            raise RangeError("unknown element %r" % text)
        return text

    def to_json(self) -> dict:
        return {"variant": self.variant, "label": self.label,
                "names": list(self.names)}

    def describe(self) -> str:
        return self.label


class CyclicSumGroup(Group):
    """Truncated direct sum of cyclic groups.

    Coordinates are indexed by a fixed finite support (e.g. -m..m); the
    coordinate at index i has modulus ``moduli[i]``.  Elements are
    residue tuples aligned with the support.  Generators are the zero
    vector and the +/-1 unit residues, so the word length of a vector is
    the sum of cyclic distances of its coordinates.
    """

    variant = "cyclic-sum"

    def __init__(self, support: Sequence[int], modulus: int | Sequence[int]):
        self.support = tuple(support)
        if len(set(self.support)) != len(self.support) or not self.support:
            raise DomainError("support must be a nonempty list of distinct indices")
        if isinstance(modulus, int):
            mods = (modulus,) * len(self.support)
        else:
            mods = tuple(modulus)
        if len(mods) != len(self.support) or any(m < 2 for m in mods):
            raise DomainError("need one modulus >= 2 per support index")
        self.moduli = mods

    @classmethod
    def symmetric(cls, radius: int, modulus: int) -> "CyclicSumGroup":
        return cls(tuple(range(-radius, radius + 1)), modulus)

    @property
    def identity(self) -> tuple:
        return (0,) * len(self.support)

    def multiply(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def inverse(self, a: tuple) -> tuple:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def generators(self) -> tuple:
        gens = [self.identity]
        for i, m in enumerate(self.moduli):
            for s in (1, m - 1):
                v = [0] * len(self.support)
                v[i] = s % m
                gens.append(tuple(v))
        # modulus 2 makes +1 and -1 coincide
        seen, out = set(), []
        for g in gens:
            if g not in seen:
                seen.add(g)
                out.append(g)
        return tuple(out)

    def validate(self, g) -> None:
        if not (isinstance(g, tuple) and len(g) == len(self.support)):
            raise RangeError(
                "element must be a residue %d-tuple over support %r"
                % (len(self.support), self.support))
        for x, m in zip(g, self.moduli):
            if not isinstance(x, int) or not 0 <= x < m:
                raise RangeError("residue %r out of range for modulus %d" % (x, m))

    def sort_key(self, g: tuple):
        return (self.closed_form_length(g), g)

    def format_element(self, g: tuple) -> str:
        return "[" + ",".join(str(x) for x in g) + "]"

    def parse_element(self, text: str) -> tuple:
        body = text.strip().strip("[]")
        parts = [p for p in body.split(",") if p.strip()]
        g = tuple(int(p) for p in parts)
        self.validate(g)
        return g

    def closed_form_length(self, g: tuple) -> int:
        return sum(min(x, m - x) for x, m in zip(g, self.moduli))

    def to_json(self) -> dict:
        return {"variant": self.variant, "support": list(self.support),
                "moduli": list(self.moduli)}

    def describe(self) -> str:
        return "cyclic-sum(%d coords)" % len(self.support)


def group_from_json(data: Mapping) -> Group:
    variant = data.get("variant")
    if variant == "integers":
        return IntegerGroup()
    if variant == "lattice":
        return LatticeGroup(int(data["dim"]))
    if variant == "free":
        return FreeGroupVariant(int(data["rank"]))
    if variant == "cyclic-sum":
        return CyclicSumGroup(tuple(data["support"]), tuple(data["moduli"]))
    raise DomainError("cannot rebuild group variant %r from JSON" % variant)


# ---------------------------------------------------------------------------
# word metric and balls


def word_length(group: Group, g, method: str = "auto",
                cap: int = DEFAULT_BALL_CAP) -> int:
    """Least r with g a product of r generators (0 for the identity).

    ``method="auto"`` uses the variant's exact closed form when there is
    one and otherwise searches the Cayley graph breadth first;
    ``method="bfs"`` forces the search and is the reference oracle the
    closed forms are tested against.
    """
    group.validate(g)
    if method not in ("auto", "bfs", "closed"):
        raise DomainError("unknown word_length method %r" % method)
    if method != "bfs":
        closed = group.closed_form_length(g)
        if closed is not None:
            return closed
        if method == "closed":
            raise DomainError("no closed form for variant %r" % group.variant)
    return _word_length_bfs(group, g, cap)


def _word_length_bfs(group: Group, g, cap: int) -> int:
    e = group.identity
    if g == e:
        return 0
    gens = [x for x in group.generators() if x != e]
    seen = {e}
    frontier = [e]
    dist = 0
    while frontier:
        dist += 1
        nxt = []
        for a in frontier:
            for s in gens:
                b = group.multiply(a, s)
                if b in seen:
                    continue
                if b == g:
                    return dist
                seen.add(b)
                nxt.append(b)
                if len(seen) > cap:
                    raise ResourceCapError(
                        "Cayley search exceeded cap %d before reaching %s"
                        % (cap, group.format_element(g)))
        frontier = nxt
    raise RangeError("element %s not generated" % group.format_element(g))


@dataclass(frozen=True)
class ElementSet:
    """A finite set of group elements, tagged with the radius it was
    enumerated at (None when it did not come from a ball)."""

    elements: frozenset
    radius: Optional[int] = None

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def sorted(self, group: Group) -> list:
        return sorted(self.elements, key=group.sort_key)


def ball(group: Group, radius: int, cap: int = DEFAULT_BALL_CAP) -> ElementSet:
    """Non-identity elements of word length <= radius, by Cayley search."""
    if radius < 0:
        raise PreconditionError("ball radius must be >= 0")
    layers = _ball_layers(group, radius, cap)
    out = set()
    for layer in layers[1:]:
        out |= layer
    return ElementSet(frozenset(out), radius)


def sphere(group: Group, radius: int, cap: int = DEFAULT_BALL_CAP) -> ElementSet:
    """Elements of word length exactly radius."""
    layers = _ball_layers(group, radius, cap)
    if radius >= len(layers):
        return ElementSet(frozenset(), radius)
    return ElementSet(frozenset(layers[radius]), radius)


def _ball_layers(group: Group, radius: int, cap: int) -> list:
    e = group.identity
    gens = [x for x in group.generators() if x != e]
    seen = {e}
    layers = [{e}]
    frontier = [e]
    for _ in range(radius):
        nxt = set()
        for a in frontier:
            for s in gens:
                b = group.multiply(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.add(b)
                    if len(seen) > cap:
                        raise ResourceCapError(
                            "ball enumeration exceeded cap %d" % cap)
        if not nxt:
            break
        layers.append(nxt)
        frontier = sorted(nxt, key=group.sort_key)
    return layers


def power_set(group: Group, radius: int, cap: int = DEFAULT_BALL_CAP) -> ElementSet:
    """All products of at most ``radius`` generators: the ball plus the
    identity.  (The generating set contains the identity, so this equals
    the set of products of exactly ``radius`` generators.)"""
    b = ball(group, radius, cap)
    return ElementSet(b.elements | {group.identity}, radius)


# ---------------------------------------------------------------------------
# reach sets and cone approximations


def cone_layer(group: Group, g, cap: int = DEFAULT_BALL_CAP) -> ElementSet:
    """Left translates of g by all products of |g|-1 generators.

    This is the closed ball of radius |g|-1 around g (right-invariant
    metric); it contains g, never contains the identity, and every
    member has word length at most 2|g|-1.  Undefined at the identity.
    """
    n = word_length(group, g, cap=cap)
    if n == 0:
        raise PreconditionError("cone layer undefined at the identity")
    shell = power_set(group, n - 1, cap)
    return ElementSet(frozenset(group.multiply(k, g) for k in shell), None)


@dataclass(frozen=True)
class SequenceDescriptor:
    """Closed-form description of an element sequence g_1, g_2, ...

    kinds:
      ``affine``  g_n = n * step + offset   (componentwise for lattices)
      ``power``   g_n = base^n
      ``list``    explicit finite list
    """

    kind: str
    step: object = None
    offset: object = None
    base: object = None
    elements: tuple = ()

    def element(self, group: Group, n: int):
        if self.kind == "affine":
            step, offset = self.step, self.offset
            if isinstance(step, int):
                return step * n + (offset or 0)
            off = offset if offset is not None else group.identity
            return tuple(s * n + o for s, o in zip(step, off))
        if self.kind == "power":
            acc = group.identity
            for _ in range(n):
                acc = group.multiply(acc, self.base)
            return acc
        if self.kind == "list":
            if n > len(self.elements):
                raise RangeError("descriptor list has only %d entries"
                                 % len(self.elements))
            return self.elements[n - 1]
        raise DomainError("unknown descriptor kind %r" % self.kind)

    def max_index(self, default: int) -> int:
        if self.kind == "list":
            return len(self.elements)
        return default

    def to_json(self, group: Group) -> dict:
        data = {"kind": self.kind}
        if self.kind == "affine":
            data["step"] = list(self.step) if isinstance(self.step, tuple) else self.step
            if self.offset is not None:
                data["offset"] = (list(self.offset)
                                  if isinstance(self.offset, tuple) else self.offset)
        elif self.kind == "power":
            data["base"] = group.format_element(self.base)
        else:
            data["elements"] = [group.format_element(g) for g in self.elements]
        return data


def affine_sequence(step, offset=None) -> SequenceDescriptor:
    return SequenceDescriptor(kind="affine", step=step, offset=offset)


def power_sequence(base) -> SequenceDescriptor:
    return SequenceDescriptor(kind="power", base=base)


def explicit_sequence(elements: Iterable) -> SequenceDescriptor:
    return SequenceDescriptor(kind="list", elements=tuple(elements))


STABLE_RUN = 3  # consecutive equal intersections required to declare stability


@dataclass(frozen=True)
class ConeApproximation:
    """Ball-intersection limit of the reach sets of a sequence.

    ``elements`` is the final intersection of the radius-``radius`` ball
    with the reach set of g_n; ``stabilized`` records whether that
    intersection was constant over the last ``STABLE_RUN`` (or more)
    examined indices, and ``stabilization_index`` is the first sequence
    position from which it never changed again.
    """

    radius: int
    elements: frozenset
    stabilized: bool
    stabilization_index: Optional[int]
    examined: int
    tail_run: int

    def __contains__(self, g) -> bool:
        return g in self.elements


def cone_approx(group: Group, seq: SequenceDescriptor, radius: int,
                max_index: int = 40, cap: int = DEFAULT_BALL_CAP) -> ConeApproximation:
    """Approximate the directional limit set of ``seq`` at ``radius``.

    Word lengths along the sequence must increase strictly (checked).
    Stability means the ball intersection stopped changing and stayed
    constant for at least STABLE_RUN consecutive indices at the end of
    the examined range.
    """
    max_index = seq.max_index(max_index)
    if max_index < 1:
        raise PreconditionError("sequence yields no elements")
    B = ball(group, radius, cap)
    history = []
    prev_len = -1
    for n in range(1, max_index + 1):
        g = seq.element(group, n)
        group.validate(g)
        glen = word_length(group, g, cap=cap)
        if glen <= prev_len:
            raise PreconditionError(
                "sequence word lengths must increase strictly "
                "(|g_%d| = %d after %d)" % (n, glen, prev_len))
        prev_len = glen
        if glen == 0:
            raise PreconditionError("sequence passes through the identity")
        layer = cone_layer(group, g, cap)
        history.append(frozenset(x for x in B if x in layer))
    # longest constant run at the end of the history
    tail = 1
    while tail < len(history) and history[-tail - 1] == history[-1]:
        tail += 1
    stabilized = tail >= STABLE_RUN
    stab_index = len(history) - tail + 1 if stabilized else None
    return ConeApproximation(radius=radius, elements=history[-1],
                             stabilized=stabilized,
                             stabilization_index=stab_index,
                             examined=max_index, tail_run=tail)


# ---------------------------------------------------------------------------
# thickness / syndeticity at a finite window


SetLike = ElementSet | ConeApproximation | Callable


def _membership(group: Group, subset: SetLike) -> Callable:
    if isinstance(subset, (ElementSet, ConeApproximation)):
        return lambda g: g in subset
    if callable(subset):
        return subset
    raise DomainError("subset must be an ElementSet, cone approximation, "
                      "or predicate")


def is_thick_window(group: Group, subset: SetLike, probe_radius: int,
                    window: int, cap: int = DEFAULT_BALL_CAP) -> Verdict:
    """Can the full probe ball be translated into the subset?

    Placing the ball of radius ``probe_radius`` covers every smaller
    finite probe, so a single witness t with ball*t inside the subset
    certifies thickness at this probe scale.  Candidates t are subset
    members in the window ball.  If every candidate is refuted the probe
    is reported unplaceable at this window; an empty candidate list is
    inconclusive.
    """
    if probe_radius < 0 or window < probe_radius:
        raise PreconditionError("need 0 <= probe_radius <= window")
    member = _membership(group, subset)
    probe = power_set(group, probe_radius, cap)
    candidates = [t for t in ball(group, window, cap).sorted(group) if member(t)]
    params = {"probe_radius": probe_radius, "window": window}
    for t in candidates:
        if all(member(group.multiply(k, t)) for k in probe):
            return holds("thick-window", params,
                         {"witness": group.format_element(t),
                          "probe_size": len(probe)})
    if not candidates:
        return inconclusive("thick-window", params,
                            {"reason": "no subset members in window"})
    return fails("thick-window", params,
                 {"unplaceable_probe_radius": probe_radius,
                  "candidates_checked": len(candidates)})


def is_syndetic_window(group: Group, subset: SetLike, k_radius: int,
                       window: int, cap: int = DEFAULT_BALL_CAP) -> Verdict:
    """Does the k-ball of translates of the subset cover the window?

    Checks that every g with |g| <= window - k_radius satisfies
    k*g in subset for some |k| <= k_radius.  For the integers the
    certificate also reports the largest gap between consecutive subset
    members in the window.
    """
    if k_radius < 0 or window <= k_radius:
        raise PreconditionError("need 0 <= k_radius < window")
    member = _membership(group, subset)
    cover = power_set(group, k_radius, cap)
    targets = power_set(group, window - k_radius, cap)
    params = {"k_radius": k_radius, "window": window}
    for g in sorted(targets, key=group.sort_key):
        if not any(member(group.multiply(k, g)) for k in cover):
            return fails("syndetic-window", params,
                         {"uncovered": group.format_element(g)})
    cert: dict = {"covered": len(targets)}
    if isinstance(group, IntegerGroup):
        members = [n for n in range(-window, window + 1) if member(n)]
        if len(members) >= 2:
            cert["max_gap"] = max(b - a for a, b in zip(members, members[1:]))
    return holds("syndetic-window", params, cert)


# ---------------------------------------------------------------------------
# uniform embedding of finite sets into reach sets


def layer_embedding_check(group: Group, finite_set: Iterable, length: int,
                          g, cap: int = DEFAULT_BALL_CAP) -> Optional[object]:
    """A translate t of word length exactly ``length`` with
    finite_set * t inside the reach set of g, or None."""
    layer = cone_layer(group, g, cap)
    fs = list(finite_set)
    for t in sphere(group, length, cap).sorted(group):
        if all(group.multiply(f, t) in layer for f in fs):
            return t
    return None


def layer_embedding_bound(group: Group, finite_set: Iterable, g_bound: int,
                          n_max: int = 8, probe: Optional[Iterable] = None,
                          cap: int = DEFAULT_BALL_CAP) -> Verdict:
    """Smallest n <= n_max such that every g with n <= |g| <= g_bound
    admits a sphere-n translate carrying finite_set into g's reach set.

    ``probe`` optionally restricts the elements g examined (default: all
    of the g_bound ball).  The certificate records the bound and one
    witness per examined g.
    """
    fs = sorted(set(finite_set), key=group.sort_key)
    pool = list(probe) if probe is not None else ball(group, g_bound, cap).sorted(group)
    params = {"g_bound": g_bound, "n_max": n_max,
              "set_size": len(fs)}
    for n in range(1, n_max + 1):
        witnesses = {}
        ok = True
        for g in pool:
            if not n <= word_length(group, g, cap=cap) <= g_bound:
                continue
            t = layer_embedding_check(group, fs, n, g, cap)
            if t is None:
                ok = False
                break
            witnesses[group.format_element(g)] = group.format_element(t)
        if ok and witnesses:
            return holds("layer-embedding-bound", params,
                         {"bound": n, "examined": len(witnesses)})
    return fails("layer-embedding-bound", params,
                 {"no_bound_up_to": n_max})

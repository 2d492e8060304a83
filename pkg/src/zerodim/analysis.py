"""Finite-horizon analyzers with three-valued verdicts.

Each analyzer probes one dynamical property of a system over an
explicit finite search space (a horizon radius in the acting group and
a resolution depth in the phase space) and returns HOLDS, FAILS, or
INCONCLUSIVE together with a replayable certificate.  HOLDS and FAILS
always refer to the bounded claim fixed by the stated parameters; they
are exact at that scope, never extrapolations.  INCONCLUSIVE is
reserved for probes that could not even evaluate the bounded claim
(no candidates, nothing established either way).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .cantor import ClopenSet, Point, depth_cylinder, from_cylinder, make_point
from .errors import (DomainError, PreconditionError, RangeError,
                     ResourceCapError)
from .flows import FlowSystem
from .groups import (DEFAULT_BALL_CAP, _ball_layers, cone_layer, power_set,
                     word_length)
from .verdict import Verdict, fails, holds, inconclusive

CELL_CAP = 8192


# ---------------------------------------------------------------------------
# shared plumbing


def _require_integer_flow(system: FlowSystem) -> None:
    if system.group.variant != "integers":
        raise DomainError("analyzer needs an integer acting group, system %r "
                          "has %s" % (system.system_id,
                                      system.group.describe()))


def _require_cells(system: FlowSystem) -> None:
    if system.kind != "cylinder-z" or system.scheme is None:
        raise DomainError("analyzer needs a symbol-space system with integer "
                          "action, got kind %r" % system.kind)


def _check_probe(horizon: int, depth: int) -> None:
    if horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    if depth < 1:
        raise PreconditionError("depth must be >= 1")


def _length_ordered(group, radius: int, cap: int = DEFAULT_BALL_CAP) -> list:
    """Group elements of length <= radius, identity first, then by
    word length with deterministic tie-breaking."""
    layers = _ball_layers(group, radius, cap)
    out = []
    for layer in layers:
        out.extend(sorted(layer, key=group.sort_key))
    return out


def _close(system: FlowSystem, a, b, depth: int) -> bool:
    return system.distance(a, b) <= Fraction(1, 2 ** depth)


def depth_ball(x: Point, depth: int) -> ClopenSet:
    """The clopen 2^-depth ball around a symbol-space point."""
    return from_cylinder(depth_cylinder(x, depth))


def return_times(system: FlowSystem, x, depth: int, lo: int,
                 hi: int) -> tuple:
    """Nonzero shifts n in [lo, hi] whose action returns x into its own
    depth cell."""
    _require_integer_flow(system)
    out = [n for n in range(lo, hi + 1)
           if n != 0 and _close(system, system.act(n, x), x, depth)]
    return tuple(out)


def _params(system: FlowSystem, **kw) -> dict:
    base = {"system": system.system_id}
    base.update(kw)
    return base


# ---------------------------------------------------------------------------
# recurrence analyzers (integer actions)


def ap_verdict(system: FlowSystem, x, *, horizon: int, depth: int) -> Verdict:
    """Syndetic return times: every length-(horizon//2) window of
    shifts near the origin must contain a depth-cell return."""
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    if horizon < 2:
        raise PreconditionError("horizon must be >= 2")
    name = "almost-periodic"
    params = _params(system, point=system.format_point(x), horizon=horizon,
                     depth=depth)
    span = horizon + horizon // 2
    times = return_times(system, x, depth, -span, span)
    tset = set(times) | {0}
    kmax = horizon // 2
    best = None
    for k in range(1, kmax + 1):
        if all(any(n in tset for n in range(g, g + k))
               for g in range(-horizon, horizon - k + 2)):
            best = k
            break
    if best is None:
        gap_start = next(g for g in range(-horizon, horizon - kmax + 2)
                         if all(n not in tset
                                for n in range(g, g + kmax)))
        return fails(name, params, {
            "empty_window_start": gap_start,
            "empty_window_length": kmax,
            "checked_span": span,
            "returns_in_span": list(times),
        })
    full = sorted(tset)
    gaps = [b - a for a, b in zip(full, full[1:])]
    return holds(name, params, {
        "syndetic_bound": best,
        "max_gap_in_span": max(gaps) if gaps else None,
        "return_count": len(times),
        "first_returns": list(times[:8]),
    })


def regular_ap_verdict(system: FlowSystem, x, *, horizon: int,
                       depth: int) -> Verdict:
    """Return times must contain every multiple of a single modulus
    within the horizon."""
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    name = "regular-return"
    params = _params(system, point=system.format_point(x), horizon=horizon,
                     depth=depth)
    tset = set(return_times(system, x, depth, -horizon, horizon))
    obstructions = []
    for kappa in range(1, horizon + 1):
        missing = next((kappa * j * sgn
                        for j in range(1, horizon // kappa + 1)
                        for sgn in (1, -1)
                        if kappa * j * sgn not in tset), None)
        if missing is None:
            return holds(name, params, {
                "modulus": kappa,
                "multiples_verified": 2 * (horizon // kappa),
            })
        if len(obstructions) < 12:
            obstructions.append([kappa, missing])
    return fails(name, params, {
        "obstructions": obstructions,
        "moduli_checked": horizon,
    })


def pointwise_period_verdict(system: FlowSystem, x, *,
                             period_max: int) -> Verdict:
    """Least exact period of the point, if one exists within the cap."""
    _require_integer_flow(system)
    if period_max < 1:
        raise PreconditionError("period cap must be >= 1")
    name = "pointwise-period"
    params = _params(system, point=system.format_point(x),
                     period_max=period_max)
    for p in range(1, period_max + 1):
        if system.equal(system.act(p, x), x):
            return holds(name, params, {"period": p})
    return inconclusive(name, params, {"tested_through": period_max})


def type1_verdict(system: FlowSystem, x, *, horizon: int,
                  depth: int) -> Verdict:
    """A depth-cell return in each direction within the horizon."""
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    name = "two-sided-recurrence"
    params = _params(system, point=system.format_point(x), horizon=horizon,
                     depth=depth)
    forward = next((n for n in range(1, horizon + 1)
                    if _close(system, system.act(n, x), x, depth)), None)
    backward = next((n for n in range(-1, -horizon - 1, -1)
                     if _close(system, system.act(n, x), x, depth)), None)
    if forward is not None and backward is not None:
        return holds(name, params, {"forward": forward, "backward": backward})
    missing = [side for side, w in (("forward", forward),
                                    ("backward", backward)) if w is None]
    return fails(name, params, {
        "missing_directions": missing,
        "forward": forward,
        "backward": backward,
    })


def pair_type1_verdict(system: FlowSystem, x, y, *, horizon: int,
                       depth: int) -> Verdict:
    """Simultaneous depth-cell returns of two points under the same
    shifts, in each direction."""
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    name = "pair-recurrence"
    params = _params(system, point_x=system.format_point(x),
                     point_y=system.format_point(y), horizon=horizon,
                     depth=depth)

    def simultaneous(n: int) -> bool:
        return (_close(system, system.act(n, x), x, depth)
                and _close(system, system.act(n, y), y, depth))

    forward = next((n for n in range(1, horizon + 1) if simultaneous(n)),
                   None)
    backward = next((n for n in range(-1, -horizon - 1, -1)
                     if simultaneous(n)), None)
    if forward is not None and backward is not None:
        return holds(name, params, {"forward": forward, "backward": backward})
    missing = [side for side, w in (("forward", forward),
                                    ("backward", backward)) if w is None]
    return fails(name, params, {
        "missing_directions": missing,
        "forward": forward,
        "backward": backward,
    })


def type2_verdict(system: FlowSystem, x, *, horizon: int, depth: int,
                  schedule: Optional[Sequence] = None,
                  cap: int = DEFAULT_BALL_CAP) -> Verdict:
    """Returns found inside reach cones: along the schedule, the least
    return length within each cone must stay bounded on the tail."""
    _check_probe(horizon, depth)
    name = "cone-subnet-recurrence"
    group = system.group
    if schedule is None:
        _require_integer_flow(system)
        schedule = list(range(1, horizon + 1))
    else:
        schedule = list(schedule)
        if len(schedule) < 2:
            raise PreconditionError("schedule needs at least two elements")
    params = _params(system, point=system.format_point(x), horizon=horizon,
                     depth=depth, schedule_length=len(schedule))
    minima = []
    for g in schedule:
        layer = cone_layer(group, g, cap=cap)
        best = None
        for c in sorted(layer, key=lambda h: (word_length(group, h),
                                              group.sort_key(h))):
            if _close(system, system.act(c, x), x, depth):
                best = word_length(group, c)
                break
        minima.append((g, best))
    tail = minima[len(minima) // 2:]
    undetermined = [g for g, b in tail if b is None]
    if undetermined:
        return fails(name, params, {
            "no_return_in_cone_of": group.format_element(undetermined[0]),
            "tail_length": len(tail),
        })
    n_star = max(b for _, b in tail)
    bound = horizon // 2
    cert = {
        "subnet_bound": n_star,
        "allowed": bound,
        "tail_minima": [[group.format_element(g), b] for g, b in tail[:8]],
    }
    if n_star <= bound:
        return holds(name, params, cert)
    return fails(name, params, cert)


def weak_rigidity_verdict(system: FlowSystem, points: Sequence, *,
                          horizon: int, depth: int) -> Verdict:
    """One shift returning every listed point to its own depth cell."""
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    if not points:
        raise PreconditionError("need at least one point")
    name = "weak-rigidity"
    params = _params(system, points=[system.format_point(p) for p in points],
                     horizon=horizon, depth=depth)
    for n in itertools.chain.from_iterable((k, -k)
                                           for k in range(1, horizon + 1)):
        if all(_close(system, system.act(n, p), p, depth) for p in points):
            return holds(name, params, {"shift": n, "points": len(points)})
    return fails(name, params, {"checked_through": horizon,
                                "points": len(points)})


# ---------------------------------------------------------------------------
# neighborhoods, escape, and invariant cores


def escape_length(system: FlowSystem, x, neighborhood: Callable | ClopenSet,
                  *, horizon: int,
                  cap: int = DEFAULT_BALL_CAP) -> Optional[tuple]:
    """Least word length of a group element moving x out of the
    neighborhood, with the element; None if none exists within the
    horizon."""
    member = (neighborhood.member if isinstance(neighborhood, ClopenSet)
              else neighborhood)
    for g in _length_ordered(system.group, horizon, cap):
        if not member(system.act(g, x)):
            return (word_length(system.group, g), g)
    return None


def confinement_verdict(system: FlowSystem, x,
                        neighborhood: Callable | ClopenSet, *,
                        horizon: int) -> Verdict:
    """Whether the orbit through the horizon ball stays inside the
    neighborhood."""
    if horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    name = "orbit-confinement"
    params = _params(system, point=system.format_point(x), horizon=horizon)
    hit = escape_length(system, x, neighborhood, horizon=horizon)
    if hit is None:
        checked = len(power_set(system.group, horizon))
        return holds(name, params, {"elements_checked": checked})
    length, g = hit
    return fails(name, params, {
        "escape_length": length,
        "escape_element": system.group.format_element(g),
    })


@dataclass(frozen=True)
class InvariantCoreApprox:
    """Two-sided approximation of the points whose horizon orbit stays
    in a clopen set, resolved at cylinder-cell granularity.

    ``inner`` holds cells where every horizon element provably maps the
    cell into the set; ``outer`` holds cells never provably mapped out.
    Cells with undetermined elements are counted in ``unknown`` and stay
    in the outer approximation only.
    """

    depth: int
    horizon: int
    window: tuple
    inner: frozenset
    outer: frozenset
    excluded: Mapping
    unknown: Mapping

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "horizon": self.horizon,
            "window": list(self.window),
            "inner": sorted(list(p) for p in self.inner),
            "outer": sorted(list(p) for p in self.outer),
            "excluded": {"".join(map(str, k)): v
                         for k, v in sorted(self.excluded.items())},
            "unknown": {"".join(map(str, k)): v
                        for k, v in sorted(self.unknown.items())},
        }


def _cells(system: FlowSystem, depth: int) -> list:
    scheme = system.scheme
    lo, hi = scheme.depth_window(depth)
    sizes = [scheme.size(c) for c in range(lo, hi + 1)]
    total = 1
    for s in sizes:
        total *= s
    if total > CELL_CAP:
        raise ResourceCapError("depth %d means %d cells, cap is %d"
                               % (depth, total, CELL_CAP))
    return [lo, hi, list(itertools.product(*(range(s) for s in sizes)))]


def _cell_point(system: FlowSystem, lo: int, pattern: tuple) -> Point:
    scheme = system.scheme
    window = dict(zip(range(lo, lo + len(pattern)), pattern))
    if scheme.kind == "two-sided":
        return make_point(scheme, window, right=0, left=0)
    return make_point(scheme, [window[c] for c in sorted(window)], right=0)


def invariant_core(system: FlowSystem, target: ClopenSet, *, depth: int,
                   horizon: int) -> InvariantCoreApprox:
    _require_cells(system)
    _check_probe(horizon, depth)
    if target.scheme != system.scheme:
        raise DomainError("target set lives on a different scheme")
    lo, hi, cells = _cells(system, depth)
    if target.is_full or target.is_empty:
        chosen = frozenset(cells) if target.is_full else frozenset()
        return InvariantCoreApprox(depth, horizon, (lo, hi), chosen, chosen,
                                   {}, {})
    need_depth = max(system.scheme.offset(target.lo),
                     system.scheme.offset(target.hi)) + 1
    reach = _length_ordered(system.group, horizon)
    inner, outer = [], []
    excluded, unknown = {}, {}
    for pattern in cells:
        base = _cell_point(system, lo, pattern)
        all_in = True
        out_witness = None
        unknown_count = 0
        for g in reach:
            if system.required_input_depth(g, need_depth) > depth:
                unknown_count += 1
                all_in = False
                continue
            if not target.member(system.act(g, base)):
                out_witness = g
                break
        if out_witness is not None:
            excluded[pattern] = system.group.format_element(out_witness)
            continue
        outer.append(pattern)
        if unknown_count:
            unknown[pattern] = unknown_count
        elif all_in:
            inner.append(pattern)
    return InvariantCoreApprox(depth, horizon, (lo, hi), frozenset(inner),
                               frozenset(outer), excluded, unknown)


# ---------------------------------------------------------------------------
# orbit cells and semicontinuity


@dataclass(frozen=True)
class OrbitCells:
    """Depth cells met by the orbit through the horizon ball, with one
    reaching element per cell."""

    depth: int
    horizon: int
    window: tuple
    cells: frozenset
    witnesses: Mapping

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "horizon": self.horizon,
            "window": list(self.window),
            "cells": sorted(list(c) for c in self.cells),
            "witnesses": {"".join(map(str, k)): v
                          for k, v in sorted(self.witnesses.items())},
        }


def orbit_cylinders(system: FlowSystem, x, *, horizon: int,
                    depth: int) -> OrbitCells:
    _require_cells(system)
    _check_probe(horizon, depth)
    lo, hi = system.scheme.depth_window(depth)
    witnesses: dict = {}
    for g in _length_ordered(system.group, horizon):
        pattern = depth_cylinder(system.act(g, x), depth).pattern
        if pattern not in witnesses:
            witnesses[pattern] = system.group.format_element(g)
    return OrbitCells(depth, horizon, (lo, hi), frozenset(witnesses),
                      witnesses)


def usc_verdict(system: FlowSystem, x, *, horizon: int, depth: int,
                neighbor_depth_max: int) -> Verdict:
    """Orbit containment under perturbation: representative neighbors
    at some tested resolution must keep their horizon orbits inside
    the depth-resolution trace of the point's own orbit."""
    _check_probe(horizon, depth)
    if neighbor_depth_max < depth:
        raise PreconditionError("neighbor depth cap below depth")
    name = "orbit-upper-semicontinuity"
    params = _params(system, point=system.format_point(x), horizon=horizon,
                     depth=depth, neighbor_depth_max=neighbor_depth_max)
    reach = _length_ordered(system.group, horizon)
    cellwise = system.kind == "cylinder-z"
    if cellwise:
        own = frozenset(depth_cylinder(system.act(g, x), depth).pattern
                        for g in reach)
    else:
        own_pts = [system.act(g, x) for g in reach]
    last_failure = None
    for dprime in range(depth, neighbor_depth_max + 1):
        failure = None
        for rep in system.neighbor_reps(x, dprime):
            for g in reach:
                moved = system.act(g, rep)
                if cellwise:
                    bad = depth_cylinder(moved, depth).pattern not in own
                else:
                    bad = all(not _close(system, moved, p, depth)
                              for p in own_pts)
                if bad:
                    failure = (dprime, rep, g)
                    break
            if failure:
                break
        if failure is None:
            return holds(name, params, {
                "neighbor_depth": dprime,
                "representatives": len(system.neighbor_reps(x, dprime)),
            })
        last_failure = failure
    dprime, rep, g = last_failure
    return fails(name, params, {
        "deepest_tried": dprime,
        "escaping_representative": system.format_point(rep),
        "escape_element": system.group.format_element(g),
    })


def orbit_symmetry_verdict(system: FlowSystem, pairs: Sequence, *,
                           horizon: int, depth: int) -> Verdict:
    """For each sampled pair, reaching y from x at the stated depth
    must be matched by reaching x back from y."""
    _check_probe(horizon, depth)
    if not pairs:
        raise PreconditionError("need at least one pair")
    name = "orbit-symmetry"
    params = _params(system, horizon=horizon, depth=depth, pairs=len(pairs))
    reach = _length_ordered(system.group, horizon)
    established = []
    unestablished = []
    for x, y in pairs:
        fwd = next((g for g in reach
                    if _close(system, system.act(g, x), y, depth)), None)
        if fwd is None:
            unestablished.append([system.format_point(x),
                                  system.format_point(y)])
            continue
        back = next((h for h in reach
                     if _close(system, system.act(h, y), x, depth)), None)
        if back is None:
            return fails(name, params, {
                "from": system.format_point(x),
                "to": system.format_point(y),
                "forward_element": system.group.format_element(fwd),
                "no_return_within": horizon,
            })
        established.append([system.group.format_element(fwd),
                            system.group.format_element(back)])
    if unestablished:
        return inconclusive(name, params, {
            "unestablished_pairs": unestablished,
            "established": len(established),
        })
    return holds(name, params, {"witnesses": established})


# ---------------------------------------------------------------------------
# equicontinuity


def equicontinuity_verdict(system: FlowSystem, *, horizon: int, depth: int,
                           input_depth_max: int = 64) -> Verdict:
    """Stabilization of the input-depth modulus across the horizon.

    The modulus table lists, per radius, the input resolution needed so
    that every element of that radius ball maps it inside the target
    depth.  A table still growing across the top half of the range, or
    blowing past the cap, refutes uniform control at this horizon."""
    if system.kind not in ("cylinder-z", "tower", "quotient"):
        raise DomainError("equicontinuity table needs an integer-action "
                          "system, got kind %r" % system.kind)
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    if horizon < 2:
        raise PreconditionError("horizon must be >= 2")
    name = "equicontinuity"
    params = _params(system, horizon=horizon, depth=depth,
                     input_depth_max=input_depth_max)
    table = []
    current = depth
    for h in range(1, horizon + 1):
        for g in (h, -h):
            current = max(current, system.required_input_depth(g, depth))
        if current > input_depth_max:
            return fails(name, params, {
                "exceeded_cap_at_radius": h,
                "value": current,
                "input_depth_max": input_depth_max,
                "table": table,
            })
        table.append(current)
    mid = (horizon + 1) // 2
    cert = {"table": table, "midpoint": mid}
    if table[-1] == table[mid - 1]:
        cert["modulus"] = table[-1]
        return holds(name, params, cert)
    cert["growth"] = [[mid, table[mid - 1]], [horizon, table[-1]]]
    return fails(name, params, cert)


# ---------------------------------------------------------------------------
# language-level recurrence


def uniform_recurrence_verdict(system: FlowSystem, *, word_length: int,
                               window_max: int,
                               pump_period_max: int = 4) -> Verdict:
    """Every admissible window of some bounded size must contain every
    admissible word of the stated length; a pumpable word avoiding one
    refutes it."""
    if word_length < 1:
        raise PreconditionError("word length must be >= 1")
    if window_max < word_length:
        raise PreconditionError("window cap below word length")
    name = "uniform-recurrence"
    params = _params(system, word_length=word_length, window_max=window_max)
    lang_n = system.language(word_length)
    if lang_n is None:
        raise DomainError("system %r has no word language"
                          % system.system_id)

    def contains_all(w: tuple) -> bool:
        found = {w[i:i + word_length]
                 for i in range(len(w) - word_length + 1)}
        return lang_n <= found

    for R in range(word_length, window_max + 1):
        words = system.language(R)
        if all(contains_all(w) for w in words):
            return holds(name, params, {
                "recurrence_window": R,
                "windows_checked": len(words),
            })
    for p in range(1, pump_period_max + 1):
        for w in sorted(system.language(p)):
            reps = (window_max // p) + 2
            pumped = (w * reps)[:window_max]
            if pumped not in system.language(window_max):
                continue
            cyclic = {(w * ((word_length // p) + 2))[i:i + word_length]
                      for i in range(p)}
            avoided = next((u for u in sorted(lang_n) if u not in cyclic),
                           None)
            if avoided is not None:
                return fails(name, params, {
                    "pumped_word": list(w),
                    "pumped_length": window_max,
                    "avoided_word": list(avoided),
                })
    return inconclusive(name, params, {"window_max": window_max,
                                       "pump_period_max": pump_period_max})


# ---------------------------------------------------------------------------
# proximality


def proximal_verdict(system: FlowSystem, x, y, *, horizon: int,
                     depth: int) -> Verdict:
    """Some horizon element must push the two points into one depth
    cell."""
    _check_probe(horizon, depth)
    if system.equal(x, y):
        raise PreconditionError("points coincide; proximality needs a "
                                "distinct pair")
    name = "proximal-pair"
    params = _params(system, point_x=system.format_point(x),
                     point_y=system.format_point(y), horizon=horizon,
                     depth=depth)
    best = None
    for g in _length_ordered(system.group, horizon):
        d = system.distance(system.act(g, x), system.act(g, y))
        if best is None or d < best[0]:
            best = (d, g)
        if d <= Fraction(1, 2 ** depth):
            return holds(name, params, {
                "witness": system.group.format_element(g),
                "distance": d,
            })
    return fails(name, params, {
        "min_distance": best[0],
        "at_element": system.group.format_element(best[1]),
    })


@dataclass(frozen=True)
class RegionalProximalWitness:
    """Approach data for one pair: points x_j near x, y_j near y, and
    elements g_j pushing x_j and y_j together."""

    x: object
    y: object
    entries: tuple  # of (x_j, y_j, g_j)


def regional_proximal_check(system: FlowSystem,
                            witness: RegionalProximalWitness, *,
                            depth: int) -> Verdict:
    """Verify a regional-proximality witness chain: both approach
    distances and the pushed-together distances must be nonincreasing
    and end at or below the target resolution."""
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    if len(witness.entries) < 2:
        raise PreconditionError("witness needs at least two entries")
    name = "regional-proximal"
    params = _params(system, point_x=system.format_point(witness.x),
                     point_y=system.format_point(witness.y), depth=depth,
                     entries=len(witness.entries))
    dx, dy, dd = [], [], []
    for xj, yj, gj in witness.entries:
        dx.append(system.distance(xj, witness.x))
        dy.append(system.distance(yj, witness.y))
        dd.append(system.distance(system.act(gj, xj), system.act(gj, yj)))
    for label, seq in (("approach_x", dx), ("approach_y", dy),
                       ("pushed_together", dd)):
        for i in range(1, len(seq)):
            if seq[i] > seq[i - 1]:
                return fails(name, params, {
                    "violated_sequence": label,
                    "at_entry": i,
                    "values": seq,
                })
    eps = Fraction(1, 2 ** depth)
    for label, seq in (("approach_x", dx), ("approach_y", dy),
                       ("pushed_together", dd)):
        if seq[-1] > eps:
            return fails(name, params, {
                "sequence_not_fine_enough": label,
                "final_value": seq[-1],
                "target": eps,
            })
    return holds(name, params, {
        "approach_x": dx,
        "approach_y": dy,
        "pushed_together": dd,
        "elements": [system.group.format_element(g)
                     for _, _, g in witness.entries],
    })


def standard_rp_witness(system: FlowSystem,
                        depth: int) -> RegionalProximalWitness:
    """The canonical witness chains of the two word-group systems."""
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    count = max(2, depth)
    m = system.metadata.get("m")
    if m is None or count > m:
        raise DomainError("system %r has no standard witness at depth %d "
                          "(truncation %s)" % (system.system_id, depth, m))
    if system.system_id == "two-copy":
        x, y = system.point("o-plus"), system.point("o-minus")
        entries = []
        for j in range(1, count + 1):
            entries.append((system.family("step", j, 1), y,
                            system.group.named_generator("b%d" % j)))
        return RegionalProximalWitness(x, y, tuple(entries))
    if system.system_id == "mcmahon":
        x, y = system.point("marked"), system.point("base")
        entries = []
        for j in range(1, count + 1):
            entries.append((system.family("ring-flipped", j, 1),
                            system.family("ring", j, 0),
                            (frozenset({j}), 0)))
        return RegionalProximalWitness(x, y, tuple(entries))
    raise DomainError("no standard witness for system %r" % system.system_id)


# ---------------------------------------------------------------------------
# covering returns by translates


def translate_cover_verdict(system: FlowSystem, x, *, horizon: int,
                            depth: int, cover_cap: int) -> Verdict:
    """Greedy cover of the horizon interval by nonnegative translates
    of the return-time set, candidates taken in ascending order."""
    _require_integer_flow(system)
    _check_probe(horizon, depth)
    if cover_cap < 1:
        raise PreconditionError("cover cap must be >= 1")
    name = "translate-cover"
    params = _params(system, point=system.format_point(x), horizon=horizon,
                     depth=depth, cover_cap=cover_cap)
    span = horizon + cover_cap
    times = set(return_times(system, x, depth, -span, span)) | {0}
    targets = set(range(-horizon, horizon + 1))
    chosen = []
    covered: set = set()
    for c in range(0, cover_cap + 1):
        gain = {t for t in targets - covered if (t - c) in times}
        if gain:
            chosen.append(c)
            covered |= gain
        if covered == targets:
            return holds(name, params, {
                "cover": chosen,
                "cover_size": len(chosen),
            })
    return fails(name, params, {
        "partial_cover": chosen,
        "uncovered_sample": sorted(targets - covered)[:8],
    })

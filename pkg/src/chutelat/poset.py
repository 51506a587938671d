"""Chute-move posets: enumeration, lattice queries, polygons, chute paths.

The partial order is the reflexive-transitive closure of single chute
moves.  A poset is built by undirected breadth-first search from a seed
dream, after which every query (covers, meets, joins, intervals) runs on
dense bitmask closures.  Nothing here assumes the structural theorems:
meets and joins are searched for and their uniqueness is checked, with a
TheoremViolation carrying a witness whenever a check fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import chute
from .errors import TheoremViolation
from .perm import Permutation
from .pipedream import PipeDream, is_reduced, phi, theta, trace
from .tableaux import (
    InversionsTableau,
    delta_multiset,
    increment,
    increment_multiset,
    lehmer_form,
    lehmer_leq,
    restrict,
    validate_inversions_tableau,
)

__all__ = [
    "ChutePoset",
    "Interval",
    "PolygonType",
    "seed_dream",
    "enumerate_poset",
    "cached_poset",
    "brute_force_enumerate",
    "leq_via_lehmer",
    "theta_inverse",
    "single_moves_all_covers",
    "classify_polygon",
    "PathStep",
    "chute_path",
    "to_dot",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def seed_dream(w: Permutation) -> PipeDream:
    """Left-justified filling: row i holds crosses in columns 1..c(i) where
    c is the Lehmer code of the inverse permutation.  Under the exit-label
    wiring convention used here this dream traces to w itself; the caller
    re-checks that at enumeration time."""
    code = w.inverse().lehmer_code()
    boxes = {(i, c) for i, ci in enumerate(code, start=1) for c in range(1, ci + 1)}
    return PipeDream.from_crosses(w.n, boxes)


class ChutePoset:
    """All reduced pipe dreams of one wiring, ordered by chute moves.

    Elements sit in a canonical order (breadth-first layer from the seed,
    then the serialized grid as tie-break), so indices, DOT output, and
    witnesses are stable across runs.  Internally every element carries
    bitmasks of its strict up- and down-sets; covers are the single-move
    edges with nothing strictly between.
    """

    def __init__(self, w: Permutation, elements: tuple[PipeDream, ...]):
        self.w = w
        self.elements = elements
        self.index = {d: k for k, d in enumerate(elements)}
        if len(self.index) != len(elements):
            raise ValueError("duplicate elements")
        size = len(elements)
        self.thetas = tuple(theta(d) for d in elements)
        self.phis = tuple(lehmer_form(t, w) for t in self.thetas)
        self.vectors = tuple(L.as_vector() for L in self.phis)
        self.theta_index = {t: k for k, t in enumerate(self.thetas)}
        if len(self.theta_index) != size:
            raise TheoremViolation(
                "crossing-row map is not injective on this fiber",
                witness={"w": str(w)},
            )
        moves = []
        for d in elements:
            row = tuple(
                (mv, self.index[chute.apply(d, mv)]) for mv in chute.find_moves(d)
            )
            moves.append(row)
        self._moves_up: tuple = tuple(moves)
        totals = [sum(v) for v in self.vectors]
        for k, row in enumerate(self._moves_up):
            for _mv, j in row:
                if totals[j] <= totals[k]:
                    raise TheoremViolation(
                        "a move failed to raise the Lehmer total",
                        witness={"from": elements[k].to_json(), "to": elements[j].to_json()},
                    )
        order = sorted(range(size), key=lambda k: (totals[k], k))
        rank = [0] * size
        for r, k in enumerate(order):
            rank[k] = r
        self._toporank = tuple(rank)
        up = [0] * size
        for k in reversed(order):
            m = 0
            for _mv, j in self._moves_up[k]:
                m |= (1 << j) | up[j]
            up[k] = m
        down = [0] * size
        for k in order:
            for _mv, j in self._moves_up[k]:
                down[j] |= (1 << k) | down[k]
        self._up = tuple(up)
        self._down = tuple(down)
        covers_up = []
        covers_down = [[] for _ in range(size)]
        for k in range(size):
            row = tuple(
                (mv, j) for (mv, j) in self._moves_up[k] if up[k] & down[j] == 0
            )
            covers_up.append(row)
            for _mv, j in row:
                covers_down[j].append(k)
        self._covers_up = tuple(covers_up)
        self._covers_down = tuple(tuple(sorted(c)) for c in covers_down)
        self._full = (1 << size) - 1

    # -- basic lookups ------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.elements)

    def idx(self, p: PipeDream) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise ValueError("dream is not an element of this poset") from None

    def moves_from(self, p: PipeDream) -> tuple:
        """Applicable moves with their targets, in rectangle order."""
        return tuple((mv, self.elements[j]) for mv, j in self._moves_up[self.idx(p)])

    def hasse_up(self, p: PipeDream) -> tuple:
        """Cover edges out of p, each labeled with its move."""
        return tuple((mv, self.elements[j]) for mv, j in self._covers_up[self.idx(p)])

    def covers_up_idx(self, a: int) -> tuple:
        return self._covers_up[a]

    def covers_down_idx(self, a: int) -> tuple[int, ...]:
        return self._covers_down[a]

    def _down0(self, a: int) -> int:
        return self._down[a] | (1 << a)

    def _up0(self, a: int) -> int:
        return self._up[a] | (1 << a)

    # -- order queries ------------------------------------------------------

    def leq_idx(self, a: int, b: int) -> bool:
        return a == b or bool((self._up[a] >> b) & 1)

    def leq(self, p: PipeDream, q: PipeDream) -> bool:
        return self.leq_idx(self.idx(p), self.idx(q))

    def min_element(self) -> PipeDream:
        indeg = [0] * self.size
        for row in self._moves_up:
            for _mv, j in row:
                indeg[j] += 1
        sources = [k for k in range(self.size) if indeg[k] == 0]
        if len(sources) != 1:
            raise TheoremViolation(
                f"{len(sources)} move-minimal elements",
                witness={"sources": [self.elements[k].to_json() for k in sources]},
            )
        if self._up0(sources[0]) != self._full:
            raise TheoremViolation(
                "unique source is not a minimum",
                witness={"source": self.elements[sources[0]].to_json()},
            )
        return self.elements[sources[0]]

    def max_element(self) -> PipeDream:
        sinks = [k for k in range(self.size) if not self._moves_up[k]]
        if len(sinks) != 1:
            raise TheoremViolation(
                f"{len(sinks)} move-maximal elements",
                witness={"sinks": [self.elements[k].to_json() for k in sinks]},
            )
        if self._down0(sinks[0]) != self._full:
            raise TheoremViolation(
                "unique sink is not a maximum",
                witness={"sink": self.elements[sinks[0]].to_json()},
            )
        return self.elements[sinks[0]]

    def _extreme(self, common: int, a: int, b: int, lower: bool) -> int:
        """Greatest (lower=True) or least element of the nonempty set
        ``common``; the candidate is the last (first) set bit in any linear
        extension, so failure of the dominance check is a genuine witness
        that no greatest/least element exists."""
        kind = "lower" if lower else "upper"
        if common == 0:
            raise TheoremViolation(
                f"no common {kind} bound",
                witness={"pair": [self.elements[a].to_json(), self.elements[b].to_json()]},
            )
        rank = self._toporank
        if lower:
            best = max(_bits(common), key=lambda k: rank[k])
            covered = self._down0(best)
        else:
            best = min(_bits(common), key=lambda k: rank[k])
            covered = self._up0(best)
        stray = common & ~covered
        if stray:
            raise TheoremViolation(
                f"common {kind} bounds have no extreme element",
                witness={
                    "pair": [self.elements[a].to_json(), self.elements[b].to_json()],
                    "bounds": [self.elements[k].to_json() for k in _bits(common)],
                },
            )
        return best

    def meet_idx(self, a: int, b: int) -> int:
        return self._extreme(self._down0(a) & self._down0(b), a, b, lower=True)

    def join_idx(self, a: int, b: int) -> int:
        return self._extreme(self._up0(a) & self._up0(b), a, b, lower=False)

    def meet(self, p: PipeDream, q: PipeDream) -> PipeDream:
        return self.elements[self.meet_idx(self.idx(p), self.idx(q))]

    def join(self, p: PipeDream, q: PipeDream) -> PipeDream:
        return self.elements[self.join_idx(self.idx(p), self.idx(q))]

    def interval_idx(self, a: int, b: int) -> "Interval":
        if not self.leq_idx(a, b):
            raise ValueError("interval endpoints are not comparable")
        mask = self._up0(a) & self._down0(b)
        return Interval(self, a, b, tuple(_bits(mask)), mask)

    def interval(self, p: PipeDream, q: PipeDream) -> "Interval":
        return self.interval_idx(self.idx(p), self.idx(q))


@dataclass(frozen=True, eq=False)
class Interval:
    """A closed interval, carried as canonical indices plus a bitmask."""

    poset: ChutePoset
    bottom: int
    top: int
    members: tuple[int, ...]
    mask: int

    @property
    def size(self) -> int:
        return len(self.members)

    def dreams(self) -> tuple[PipeDream, ...]:
        return tuple(self.poset.elements[k] for k in self.members)


class PolygonType(Enum):
    DIAMOND = "diamond"
    PENTAGON = "pentagon"
    POLYGON = "polygon"
    NOT_A_POLYGON = "not_a_polygon"


def classify_polygon(iv: Interval) -> PolygonType:
    """Decide whether the interval consists of exactly two maximal chains
    meeting only at the endpoints, and name it by its cardinality.

    Within an interval every saturated upward chain reaches the top, so
    maximal chains are exactly the cover paths from bottom to top and the
    count can be capped at three.  Intervals with a third chain (equally:
    a chord in the cycle picture) are not polygons; two diamonds glued
    along an edge is the smallest shape that distinction matters for.
    Cardinality 4 and 5 polygons get their usual names; anything larger
    reports POLYGON, which the structure theorems say never happens (the
    checkers treat that as a failure, not this function).
    """
    if iv.size < 4:
        return PolygonType.NOT_A_POLYGON
    poset = iv.poset
    chains = []
    stack = [(iv.bottom, (iv.bottom,))]
    while stack:
        v, path = stack.pop()
        if v == iv.top:
            chains.append(path)
            if len(chains) > 2:
                return PolygonType.NOT_A_POLYGON
            continue
        for _mv, j in poset.covers_up_idx(v):
            if (iv.mask >> j) & 1:
                stack.append((j, path + (j,)))
    if len(chains) != 2:
        return PolygonType.NOT_A_POLYGON
    if set(chains[0]) & set(chains[1]) != {iv.bottom, iv.top}:
        return PolygonType.NOT_A_POLYGON
    # an element off both chains would start a third one
    assert set(chains[0]) | set(chains[1]) == set(iv.members)
    if iv.size == 4:
        return PolygonType.DIAMOND
    if iv.size == 5:
        return PolygonType.PENTAGON
    return PolygonType.POLYGON


# ---------------------------------------------------------------------------
# enumeration


def enumerate_poset(w: Permutation) -> ChutePoset:
    """Undirected breadth-first closure of the seed dream under moves and
    inverse moves.  The seed's wiring is re-checked at runtime; a mismatch
    means the seed construction itself is broken, so it aborts loudly."""
    seed = seed_dream(w)
    if trace(seed).wiring != w:
        raise RuntimeError(f"seed dream traces to {trace(seed).wiring}, wanted {w}")
    layer = {seed: 0}
    frontier = [seed]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for d in frontier:
            found = []
            for mv in chute.find_moves(d):
                found.append(chute.apply(d, mv))
            for mv in chute.find_inverse_moves(d):
                found.append(chute.inverse_apply(d, mv))
            for e in found:
                if e not in layer:
                    layer[e] = depth
                    nxt.append(e)
        frontier = nxt
    elements = tuple(sorted(layer, key=lambda d: (layer[d], d.rows)))
    return ChutePoset(w, elements)


@lru_cache(maxsize=None)
def cached_poset(w: Permutation) -> ChutePoset:
    return enumerate_poset(w)


@lru_cache(maxsize=None)
def _brute_force_all(n: int) -> dict:
    if not 1 <= n <= 6:
        raise ValueError("brute force is guarded to n <= 6")
    interior = [(r, c) for r in range(1, n) for c in range(1, n + 1 - r)]
    found: dict[Permutation, list[PipeDream]] = {}
    for bits in range(1 << len(interior)):
        boxes = {interior[k] for k in range(len(interior)) if (bits >> k) & 1}
        d = PipeDream.from_crosses(n, boxes)
        if is_reduced(d):
            found.setdefault(trace(d).wiring, []).append(d)
    return {v: tuple(sorted(ds, key=lambda d: d.rows)) for v, ds in found.items()}


def brute_force_enumerate(w: Permutation) -> frozenset[PipeDream]:
    """Independent oracle: every cross/bump assignment of the interior,
    filtered by reducedness and wiring.  Exponential, hence the guard."""
    return frozenset(_brute_force_all(w.n).get(w, ()))


# ---------------------------------------------------------------------------
# order by tableaux


def leq_via_lehmer(p: PipeDream, q: PipeDream) -> bool:
    """Componentwise comparison of the Lehmer images; agreement with the
    move-closure order is the central verified theorem, not an assumption."""
    return lehmer_leq(phi(p), phi(q))


def theta_inverse(t: InversionsTableau) -> PipeDream:
    """The reduced pipe dream whose crossing-row tableau is t, found by
    lookup in the enumerated fiber of t's permutation."""
    poset = cached_poset(t.w)
    k = poset.theta_index.get(t)
    if k is None:
        raise ValueError("tableau is not realized by any reduced pipe dream")
    return poset.elements[k]


def single_moves_all_covers(poset: ChutePoset) -> bool:
    """Whether every single move lands on a cover.  Measured, never assumed;
    the Hasse diagram is computed by transitive reduction regardless."""
    return all(
        poset._up[k] & poset._down[j] == 0
        for k in range(poset.size)
        for _mv, j in poset._moves_up[k]
    )


# ---------------------------------------------------------------------------
# explicit chute paths


@dataclass(frozen=True)
class PathStep:
    """One increment batch: the chosen box and the full set it drags along."""

    box: tuple[int, int]
    bset: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"box": list(self.box), "bset": [list(b) for b in self.bset]}


def chute_path(t_from: InversionsTableau, t_to: InversionsTableau) -> tuple[PathStep, ...]:
    """Explicit path in the increment picture from t_from up to t_to.

    Repeatedly: take the multiset difference M of Lehmer forms, collect the
    boxes of M whose single increment stays inside the inversions-tableau
    family after restricting to their column, take the rightmost such box
    per row, break ties toward the leftmost column and lowest row, widen it
    to the set B of same-entry boxes to its right that trade against the
    same value, and apply one increment per box of B.  Four conditions are
    re-checked at every step:

      (I)   each widened box holds p0 and trades against q0,
      (II)  B never leaves the difference multiset,
      (III) the batch increment lands on an inversions tableau,
      (IV)  q0 is absent from the chosen column beforehand.

    A failed condition, or a nonempty difference with no incrementable box,
    raises TheoremViolation: both would contradict the structure theory
    this package exists to check.  Incomparable inputs raise ValueError.
    """
    w = t_from.w
    if t_to.w != w:
        raise ValueError("tableaux tagged with different permutations")
    for t in (t_from, t_to):
        res = validate_inversions_tableau(t, w)
        if not res:
            raise ValueError(f"not an inversions tableau: {res.message}")
    n = w.n
    delta = delta_multiset(t_from, t_to, w)
    if delta is None:
        raise ValueError("tableaux are incomparable")
    steps: list[PathStep] = []
    t = t_from
    for _ in range(sum(delta.values()) + 1):
        m = delta_multiset(t, t_to, w)
        assert m is not None, "a step overshot the target"
        if not m:
            return tuple(steps)
        x_boxes = []
        for (i, j) in sorted(m, key=lambda b: (b[1], b[0])):
            cut = restrict(t, j)
            inc, _kind = increment(cut, i, j)
            if validate_inversions_tableau(inc, cut.w):
                x_boxes.append((i, j))
        if not x_boxes:
            raise TheoremViolation(
                "difference multiset nonempty but no box is incrementable",
                witness={"from": t.to_json(), "to": t_to.to_json(),
                         "remaining": sorted(m.elements())},
            )
        rightmost = {}
        for (i, j) in x_boxes:
            rightmost[i] = max(rightmost.get(i, 0), j)
        candidates = [(i, j) for (i, j) in x_boxes if j == rightmost[i]]
        x0, y0 = min(candidates, key=lambda b: (b[1], b[0]))
        p0 = t.get(x0, y0)
        below = {t.get(ii, y0) for ii in range(1, x0)}
        q0 = p0 + 1
        while q0 in below:
            q0 += 1
        ys = tuple(
            y for y in range(y0 + 1, n + 1)
            if t.get(x0, y) == p0 and p0 < t.get(y0, y)
        )
        bset = ((x0, y0),) + tuple((x0, y) for y in ys)
        failures = []
        for y in ys:
            if t.get(y0, y) != q0:
                failures.append(f"(I) entry at ({y0},{y}) is {t.get(y0, y)}, not q0={q0}")
            if increment(t, x0, y)[0].get(x0, y) != q0:
                failures.append(f"(I) increment at ({x0},{y}) does not reach q0={q0}")
        if any(m[b] < 1 for b in bset):
            failures.append("(II) widened set leaves the difference multiset")
        lifted = increment_multiset(t, bset)
        if not validate_inversions_tableau(lifted, w):
            failures.append("(III) batch increment leaves the inversions-tableau family")
        if any(t.get(ii, y0) == q0 for ii in range(1, y0)):
            failures.append(f"(IV) q0={q0} already sits in column {y0}")
        if not failures:
            before = lehmer_form(t, w)
            after = lehmer_form(lifted, w)
            for box in before.support():
                want = before.get(*box) + (1 if box in bset else 0)
                if after.get(*box) != want:
                    failures.append(f"Lehmer form moved wrongly at {box}")
        if failures:
            raise TheoremViolation(
                "; ".join(failures),
                witness={"tableau": t.to_json(), "box": [x0, y0],
                         "bset": [list(b) for b in bset]},
            )
        steps.append(PathStep((x0, y0), bset))
        t = lifted
    raise TheoremViolation(
        "path did not terminate within the multiset budget",
        witness={"from": t_from.to_json(), "to": t_to.to_json()},
    )


# ---------------------------------------------------------------------------
# output


def to_dot(poset: ChutePoset, tooltips: bool = True) -> str:
    """Hasse diagram in DOT form, bottom-up.  Nodes carry their canonical
    index; each cover edge is labeled with the pipe pair of its move."""
    lines = [
        "digraph chutelat {",
        "  rankdir=BT;",
        '  node [shape=circle, fontsize=10];',
    ]
    for k, d in enumerate(poset.elements):
        if tooltips:
            blob = json.dumps(d.to_json(), separators=(",", ":"))
            blob = blob.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {k} [tooltip="{blob}"];')
        else:
            lines.append(f"  {k};")
    for k in range(poset.size):
        for mv, j in poset.covers_up_idx(k):
            lines.append(f'  {k} -> {j} [label="({mv.pipe_lo},{mv.pipe_hi})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Machine checks of the structure theorems, one permutation at a time.

Each check either passes, fails with a serializable witness, or is skipped
when the shared time budget runs out.  Failures are first-class results,
not exceptions: the point of the package is to hunt for counterexamples,
so a red check with a witness is a more valuable outcome than a crash.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

from .errors import TheoremViolation
from .perm import Permutation
from .pipedream import transpose, triforce_embed
from .poset import ChutePoset, PolygonType, cached_poset, classify_polygon

__all__ = [
    "CheckResult",
    "VerificationReport",
    "Deadline",
    "run_checks",
    "CHECK_NAMES",
    "DEFAULT_BUDGET_MS",
]

DEFAULT_BUDGET_MS = 600_000


class _BudgetExceeded(Exception):
    pass


class _SkipCheck(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Deadline:
    """Wall-clock budget shared by all checks of one verification run."""

    def __init__(self, budget_ms: int | None):
        if budget_ms is None:
            env = os.environ.get("CHUTELAT_BUDGET_MS")
            budget_ms = int(env) if env else DEFAULT_BUDGET_MS
        self.budget_ms = budget_ms
        self.start = time.perf_counter()

    def poll(self) -> None:
        if (time.perf_counter() - self.start) * 1000.0 > self.budget_ms:
            raise _BudgetExceeded


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    witness: object
    ms: int

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "ms": self.ms,
        }


@dataclass(frozen=True)
class VerificationReport:
    w: Permutation
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {"w": str(self.w), "checks": [c.to_json() for c in self.checks]}


def _pair_witness(poset: ChutePoset, a: int, b: int, note: str) -> dict:
    return {
        "note": note,
        "pair": [poset.elements[a].to_json(), poset.elements[b].to_json()],
    }


def check_isomorphism(poset: ChutePoset, deadline: Deadline):
    """Move-closure order equals componentwise order on Lehmer forms, and
    the Lehmer form separates elements."""
    seen = {}
    for k, v in enumerate(poset.vectors):
        if v in seen:
            return _pair_witness(poset, seen[v], k, "equal Lehmer forms")
        seen[v] = k
    size = poset.size
    for a in range(size):
        deadline.poll()
        va = poset.vectors[a]
        for b in range(size):
            vb = poset.vectors[b]
            comp = all(x <= y for x, y in zip(va, vb))
            if poset.leq_idx(a, b) != comp:
                return _pair_witness(
                    poset, a, b,
                    "move order and componentwise order disagree",
                )
    return None


def check_lattice(poset: ChutePoset, deadline: Deadline):
    """Unique bottom and top, every pair has a meet and a join, and the
    bounded-fork criterion is replayed: each up-fork has a least upper
    bound.  Existence failures surface through the meet/join search."""
    poset.min_element()
    poset.max_element()
    size = poset.size
    for a in range(size):
        deadline.poll()
        for b in range(a, size):
            poset.meet_idx(a, b)
            poset.join_idx(a, b)
    for g0 in range(size):
        deadline.poll()
        ups = [j for _mv, j in poset.covers_up_idx(g0)]
        for x in range(len(ups)):
            for y in range(x + 1, len(ups)):
                poset.join_idx(ups[x], ups[y])
    return None


def _buckets_have_extreme(poset, deadline, meet_side: bool):
    """Definitional semidistributivity on one side.  The covers-only
    criterion is evaluated in the same sweep; since a cover failure is a
    special case of a definitional one, the routes can only disagree when
    the definition fails while every cover bucket is clean, which would
    refute the covers-only reduction and gets its own witness."""
    size = poset.size
    rank = poset._toporank
    def_bad = None
    cover_bad = None
    for fixed in range(size):
        deadline.poll()
        buckets: dict[int, list[int]] = {}
        for g in range(size):
            key = poset.meet_idx(g, fixed) if meet_side else poset.join_idx(g, fixed)
            buckets.setdefault(key, []).append(g)
        if meet_side:
            cover_keys = set(poset.covers_down_idx(fixed))
        else:
            cover_keys = {j for _mv, j in poset.covers_up_idx(fixed)}
        for key, members in buckets.items():
            if meet_side:
                ext = max(members, key=lambda g: rank[g])
                ok = all(poset.leq_idx(g, ext) for g in members)
            else:
                ext = min(members, key=lambda g: rank[g])
                ok = all(poset.leq_idx(ext, g) for g in members)
            if not ok:
                if def_bad is None:
                    def_bad = (key, fixed)
                if cover_bad is None and key in cover_keys:
                    cover_bad = (key, fixed)
    side = "meet" if meet_side else "join"
    if def_bad is not None and cover_bad is None:
        return _pair_witness(
            poset, *def_bad,
            f"{side}-side covers-only criterion disagrees with definition",
        )
    if def_bad is not None:
        return _pair_witness(
            poset, *def_bad,
            f"{side}-semidistributivity fails on this bucket",
        )
    return None


def check_semidistributive(poset: ChutePoset, deadline: Deadline):
    bad = _buckets_have_extreme(poset, deadline, meet_side=True)
    if bad is not None:
        return bad
    return _buckets_have_extreme(poset, deadline, meet_side=False)


def check_polygonal(poset: ChutePoset, deadline: Deadline):
    """Every fork span is a diamond or a pentagon, and no interval at all
    is a larger polygon."""
    size = poset.size

    def verdict_witness(a, b, verdict):
        return {
            "note": "interval is not a diamond or pentagon",
            "bottom": poset.elements[a].to_json(),
            "top": poset.elements[b].to_json(),
            "verdict": verdict.value,
        }

    for g0 in range(size):
        deadline.poll()
        ups = [j for _mv, j in poset.covers_up_idx(g0)]
        for x in range(len(ups)):
            for y in range(x + 1, len(ups)):
                top = poset.join_idx(ups[x], ups[y])
                verdict = classify_polygon(poset.interval_idx(g0, top))
                if verdict not in (PolygonType.DIAMOND, PolygonType.PENTAGON):
                    return verdict_witness(g0, top, verdict)
        downs = poset.covers_down_idx(g0)
        for x in range(len(downs)):
            for y in range(x + 1, len(downs)):
                bot = poset.meet_idx(downs[x], downs[y])
                verdict = classify_polygon(poset.interval_idx(bot, g0))
                if verdict not in (PolygonType.DIAMOND, PolygonType.PENTAGON):
                    return verdict_witness(bot, g0, verdict)
    for a in range(size):
        deadline.poll()
        up = poset._up[a]
        for b in range(size):
            if (up >> b) & 1:
                verdict = classify_polygon(poset.interval_idx(a, b))
                if verdict is PolygonType.POLYGON:
                    return verdict_witness(a, b, verdict)
    return None


def check_transpose_antiisomorphism(poset: ChutePoset, deadline: Deadline):
    """Transposition is an order anti-isomorphism onto the fiber of the
    inverse permutation, swapping meets with joins; and a pair whose Lehmer
    forms differ only in the last column transposes to a reversed pair
    differing only in one row."""
    w = poset.w
    other = cached_poset(w.inverse())
    if other.size != poset.size:
        return {"note": "fibers of w and its inverse differ in size",
                "sizes": [poset.size, other.size]}
    image = []
    for d in poset.elements:
        td = transpose(d)
        if td not in other.index:
            return {"note": "transpose left the fiber", "dream": d.to_json()}
        image.append(other.index[td])
    size = poset.size
    for a in range(size):
        deadline.poll()
        for b in range(size):
            if poset.leq_idx(a, b) != other.leq_idx(image[b], image[a]):
                return _pair_witness(poset, a, b, "transpose order not reversed")
    for a in range(size):
        deadline.poll()
        for b in range(a, size):
            m = poset.meet_idx(a, b)
            if other.join_idx(image[a], image[b]) != image[m]:
                return _pair_witness(poset, a, b, "transpose of meet is not the join")
    n = w.n
    row0 = w.inverse()(n)
    last_col = {k for k, box in enumerate(_support(poset)) if box[1] == n}
    bad_row = {k for k, box in enumerate(_support(other)) if box[0] == row0}
    for a in range(size):
        deadline.poll()
        va = poset.vectors[a]
        for b in range(size):
            if not poset.leq_idx(a, b):
                continue
            vb = poset.vectors[b]
            diff = {k for k in range(len(va)) if va[k] != vb[k]}
            if not diff <= last_col:
                continue
            ta, tb = image[a], image[b]
            if not other.leq_idx(tb, ta):
                return _pair_witness(poset, a, b, "transposed pair not reversed")
            wa = other.vectors[ta]
            wb = other.vectors[tb]
            tdiff = {k for k in range(len(wa)) if wa[k] != wb[k]}
            if not tdiff <= bad_row:
                return _pair_witness(
                    poset, a, b,
                    "transposed pair differs outside the forced row",
                )
    return None


def _support(poset: ChutePoset):
    return poset.phis[0].support() if poset.size else ()


def check_triforce_interval(poset: ChutePoset, deadline: Deadline):
    """The doubled staircase embeds the whole fiber as the interval between
    the images of bottom and top, preserving order both ways."""
    w = poset.w
    if w.n > 4:
        raise _SkipCheck("triforce check guarded to n <= 4")
    big = cached_poset(w.triforce())
    image = []
    for d in poset.elements:
        e = triforce_embed(d)
        if e not in big.index:
            return {"note": "embedded dream left the fiber", "dream": d.to_json()}
        image.append(big.index[e])
    lo = image[poset.idx(poset.min_element())]
    hi = image[poset.idx(poset.max_element())]
    iv = big.interval_idx(lo, hi)
    if set(iv.members) != set(image):
        return {"note": "image is not the bottom-to-top interval",
                "interval_size": iv.size, "image_size": len(set(image))}
    size = poset.size
    for a in range(size):
        deadline.poll()
        for b in range(size):
            if poset.leq_idx(a, b) != big.leq_idx(image[a], image[b]):
                return _pair_witness(poset, a, b, "embedding is not an order map")
    return None


_CHECKERS = {
    "isomorphism": check_isomorphism,
    "lattice": check_lattice,
    "sd": check_semidistributive,
    "polygonal": check_polygonal,
    "transpose": check_transpose_antiisomorphism,
    "triforce": check_triforce_interval,
}
CHECK_NAMES = tuple(_CHECKERS)


def run_checks(
    w: Permutation,
    names: tuple[str, ...] | None = None,
    budget_ms: int | None = None,
) -> VerificationReport:
    if names is None:
        names = CHECK_NAMES
    unknown = [nm for nm in names if nm not in _CHECKERS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    deadline = Deadline(budget_ms)
    results = []
    for nm in names:
        t0 = time.perf_counter()
        try:
            deadline.poll()
            poset = cached_poset(w)
            witness = _CHECKERS[nm](poset, deadline)
            status = "pass" if witness is None else "fail"
        except _BudgetExceeded:
            status, witness = "skipped", {"reason": "budget exhausted"}
        except _SkipCheck as exc:
            status, witness = "skipped", {"reason": exc.reason}
        except TheoremViolation as exc:
            status = "fail"
            witness = {"message": str(exc), "witness": exc.witness}
        ms = int((time.perf_counter() - t0) * 1000)
        results.append(CheckResult(nm, status, witness, ms))
    return VerificationReport(w, tuple(results))

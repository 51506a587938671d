"""Chute moves: the covering mechanism on reduced pipe dreams.

A move lives on a rectangle R of height and width at least 2 inside the
staircase whose tiles look like

    B C C C          C C C B
    C C C C    -->   C C C C
    B C C B/E        C C C B/E

northwest and southwest corners bump, southeast corner bump-or-elbow, every
other box (the northeast corner included) a cross.  Applying the move turns
the southwest bump into a cross and the northeast cross into a bump, which
slides one crossing down-left along its rectangle without changing the
wiring.  The pipes meeting at the northeast corner name the move: the same
pair (i, j) also names the tableau box whose entry the move raises.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import TheoremViolation
from .pipedream import BUMP, CROSS, ELBOW, PipeDream, theta, trace
from .tableaux import InversionsTableau, increment, increment_multiset

__all__ = [
    "ChuteMove",
    "find_moves",
    "find_inverse_moves",
    "apply",
    "inverse_apply",
    "vertical_pipes",
    "IncrementReport",
    "check_increment_correspondence",
]


@dataclass(frozen=True)
class ChuteMove:
    """Rectangle rows top..bottom, columns left..right, plus the pipe pair
    crossing at the northeast corner before the move."""

    top: int
    bottom: int
    left: int
    right: int
    pipe_lo: int
    pipe_hi: int

    def __post_init__(self):
        if not (1 <= self.top < self.bottom and 1 <= self.left < self.right):
            raise ValueError(
                f"degenerate rectangle rows {self.top}..{self.bottom}, "
                f"cols {self.left}..{self.right}"
            )
        if not 1 <= self.pipe_lo < self.pipe_hi:
            raise ValueError(f"bad pipe pair ({self.pipe_lo},{self.pipe_hi})")

    @property
    def rect(self) -> tuple[int, int, int, int]:
        return (self.top, self.bottom, self.left, self.right)

    @property
    def pipes(self) -> tuple[int, int]:
        return (self.pipe_lo, self.pipe_hi)

    def to_json(self) -> dict:
        return {"rect": list(self.rect), "pipes": list(self.pipes)}

    @staticmethod
    def from_json(obj: dict) -> "ChuteMove":
        t, b, l, r = obj["rect"]
        i, j = obj["pipes"]
        return ChuteMove(t, b, l, r, i, j)


def _rect_boxes(t, b, l, r):
    for row in range(t, b + 1):
        for col in range(l, r + 1):
            yield (row, col)


def _matches(dream: PipeDream, t: int, b: int, l: int, r: int, after: bool) -> bool:
    """Tile pattern of a move rectangle, before (after=False) or after the
    move.  Each box must satisfy every corner constraint that names it, so
    degenerate rectangles fail by contradiction, never by a size filter."""
    if b + r > dream.n + 1:
        return False
    for (row, col) in _rect_boxes(t, b, l, r):
        allowed = {CROSS, BUMP, ELBOW}
        if (row, col) == (t, l):
            allowed &= {BUMP}
        if (row, col) == (b, l):
            allowed &= {CROSS} if after else {BUMP}
        if (row, col) == (t, r):
            allowed &= {BUMP} if after else {CROSS}
        if (row, col) == (b, r):
            allowed &= {BUMP, ELBOW}
        if (row, col) not in ((t, l), (b, l), (t, r), (b, r)):
            allowed &= {CROSS}
        if dream.tile(row, col) not in allowed:
            return False
    return True


def _all_rects(n):
    """Every rectangle in the staircase, degenerate ones included; the
    pattern matcher is what rules the degenerate ones out."""
    for t in range(1, n + 1):
        for b in range(t, n + 1):
            for l in range(1, n + 1):
                for r in range(l, n + 2 - b):
                    yield (t, b, l, r)


def find_moves(dream: PipeDream) -> list[ChuteMove]:
    """All applicable moves, sorted by (top, left, bottom, right)."""
    routing = trace(dream)
    out = []
    for (t, b, l, r) in _all_rects(dream.n):
        if _matches(dream, t, b, l, r, after=False):
            h, v = routing.cross_pipes[(t, r)]
            out.append(ChuteMove(t, b, l, r, min(h, v), max(h, v)))
    out.sort(key=lambda m: (m.top, m.left, m.bottom, m.right))
    return out


def find_inverse_moves(dream: PipeDream) -> list[ChuteMove]:
    """All moves that produce this dream, sorted like ``find_moves``.  The
    pipe pair is read at the southwest corner, where the moved crossing
    now sits."""
    routing = trace(dream)
    out = []
    for (t, b, l, r) in _all_rects(dream.n):
        if _matches(dream, t, b, l, r, after=True):
            h, v = routing.cross_pipes[(b, l)]
            out.append(ChuteMove(t, b, l, r, min(h, v), max(h, v)))
    out.sort(key=lambda m: (m.top, m.left, m.bottom, m.right))
    return out


def apply(dream: PipeDream, move: ChuteMove) -> PipeDream:
    """Perform the move; rejects rectangles whose tiles do not match."""
    t, b, l, r = move.rect
    if not _matches(dream, t, b, l, r, after=False):
        raise ValueError(f"move {move} is not applicable")
    return dream.with_tiles({(b, l): CROSS, (t, r): BUMP})


def inverse_apply(dream: PipeDream, move: ChuteMove) -> PipeDream:
    """Undo the move; rejects rectangles whose tiles do not match."""
    t, b, l, r = move.rect
    if not _matches(dream, t, b, l, r, after=True):
        raise ValueError(f"move {move} cannot be undone here")
    return dream.with_tiles({(b, l): BUMP, (t, r): CROSS})


def vertical_pipes(dream: PipeDream, move: ChuteMove) -> tuple[int, ...]:
    """Labels of the pipes crossing vertically through the move rectangle:
    those passing through cross tiles of a single column spanning all of
    rows top..bottom.  Such columns are read off the tile pattern and the
    pipe is identified at the bottom box."""
    routing = trace(dream)
    t, b, l, r = move.rect
    labels = []
    for col in range(l, r + 1):
        if all(dream.tile(row, col) == CROSS for row in range(t, b + 1)):
            labels.append(routing.cross_pipes[(b, col)][1])
    return tuple(sorted(labels))


@dataclass(frozen=True)
class IncrementReport:
    """Witness data tying one chute move to its tableau increments."""

    box: tuple[int, int]          # (x0, y0), the pipe pair of the move
    vertical: tuple[int, ...]     # Y, pipes crossing the rectangle vertically
    p0: int                       # entry at (x0, y0) before the move
    q0: int                       # entry at (x0, y0) after the move
    increments: tuple[tuple[int, int], ...]  # B, sorted by column

    def to_json(self) -> dict:
        return {
            "box": list(self.box),
            "vertical": list(self.vertical),
            "p0": self.p0,
            "q0": self.q0,
            "increments": [list(b) for b in self.increments],
        }


def check_increment_correspondence(dream: PipeDream, move: ChuteMove) -> IncrementReport:
    """Verify, on one applicable move, that the tableau side changes by the
    predicted multiset of increments.

    With (x0, y0) the move's pipe pair, Y the vertically-crossing pipes and
    B = {(x0, y0)} united with {(x0, y) : y in Y}, the checks are: the
    tableau after the move equals the tableau before with every box of B
    incremented once; Y computes identically before and after the move; for
    every y in Y the entries satisfy before(x0,y) = after(y0,y) = p0 and
    after(x0,y) = before(y0,y) = q0 with q0 the increment target at
    (x0, y0); and q0 appears nowhere in column y0 before the move.  Any
    failure raises TheoremViolation carrying the report.
    """
    t1 = theta(dream)
    after_dream = apply(dream, move)
    t2 = theta(after_dream)
    x0, y0 = move.pipes
    y_before = vertical_pipes(dream, move)
    y_after = vertical_pipes(after_dream, move)
    if any(y <= y0 for y in y_before):
        raise TheoremViolation(
            f"vertical pipe label not above {y0}: {y_before}",
            witness={"move": move.to_json(), "dream": dream.to_json()},
        )
    p0 = t1.get(x0, y0)
    incremented, _kind = increment(t1, x0, y0)
    q0 = incremented.get(x0, y0)
    bset = ((x0, y0),) + tuple((x0, y) for y in y_before)
    bset = tuple(sorted(bset, key=lambda bx: (bx[1], bx[0])))
    report = IncrementReport(
        box=(x0, y0), vertical=y_before, p0=p0, q0=q0, increments=bset
    )
    failures = []
    if y_before != y_after:
        failures.append(f"vertical pipes changed: {y_before} -> {y_after}")
    try:
        if increment_multiset(t1, Counter(bset)) != t2:
            failures.append("tableau after the move is not the incremented tableau")
    except ValueError as exc:
        failures.append(f"increment multiset not applicable: {exc}")
    for y in y_before:
        if t1.get(x0, y) != p0:
            failures.append(f"entry before at ({x0},{y}) is not p0={p0}")
        if t2.get(y0, y) != p0:
            failures.append(f"entry after at ({y0},{y}) is not p0={p0}")
        if t2.get(x0, y) != q0:
            failures.append(f"entry after at ({x0},{y}) is not q0={q0}")
        if t1.get(y0, y) != q0:
            failures.append(f"entry before at ({y0},{y}) is not q0={q0}")
    for i in range(1, y0):
        if t1.get(i, y0) == q0:
            failures.append(f"q0={q0} already sits in column {y0} at row {i}")
    if failures:
        raise TheoremViolation(
            "; ".join(failures), witness={"report": report.to_json(), "move": move.to_json()}
        )
    return report

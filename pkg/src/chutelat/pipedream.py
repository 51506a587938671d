"""Pipe dreams on the staircase and the crossing-row map onto tableaux.

A pipe dream of size n fills the staircase {(r, c) : r + c <= n + 1} (rows
top to bottom, columns left to right) with tiles:

* ``C`` (cross): both pipes pass straight through;
* ``B`` (bump): the pipe from the west turns north, the pipe from the
  south turns east;
* ``E`` (elbow): the single west-to-north arc; exactly the boxes on the
  southeast boundary r + c = n + 1 hold one.

Pipe i enters at the west end of row i; reading the pipe labels along the
north edge left to right gives the wiring permutation.  A dream is reduced
when no two pipes cross twice; the reduced dreams with wiring w form PD(w).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .perm import Permutation
from .tableaux import InversionsTableau, LehmerTableau, lehmer_form

__all__ = [
    "CROSS",
    "BUMP",
    "ELBOW",
    "PipeDream",
    "CrossingRecord",
    "Routing",
    "trace",
    "is_reduced",
    "theta",
    "phi",
    "transpose",
    "hat_delete",
    "triforce_embed",
    "phi_transpose_entry",
]

CROSS = "C"
BUMP = "B"
ELBOW = "E"


@dataclass(frozen=True)
class PipeDream:
    """Immutable tile grid; row r is ``rows[r-1]``, a string over C/B/E."""

    rows: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for r, row in enumerate(rows, start=1):
            if len(row) != n + 1 - r:
                raise ValueError(f"row {r} has length {len(row)}, expected {n + 1 - r}")
            for c, t in enumerate(row, start=1):
                if t not in "CBE":
                    raise ValueError(f"bad tile {t!r} at ({r},{c})")
                if (t == ELBOW) != (r + c == n + 1):
                    raise ValueError(
                        f"tile {t} at ({r},{c}): elbows sit exactly on the "
                        f"southeast boundary"
                    )

    @property
    def n(self) -> int:
        return len(self.rows)

    def tile(self, r: int, c: int) -> str:
        if not (1 <= r and 1 <= c and r + c <= self.n + 1):
            raise ValueError(f"({r},{c}) outside the staircase for n={self.n}")
        return self.rows[r - 1][c - 1]

    def boxes(self):
        n = self.n
        for r in range(1, n + 1):
            for c in range(1, n + 2 - r):
                yield (r, c)

    def crosses(self) -> tuple[tuple[int, int], ...]:
        return tuple(b for b in self.boxes() if self.tile(*b) == CROSS)

    def with_tiles(self, updates: dict[tuple[int, int], str]) -> "PipeDream":
        rows = [list(row) for row in self.rows]
        for (r, c), t in updates.items():
            rows[r - 1][c - 1] = t
        return PipeDream(tuple("".join(row) for row in rows))

    @staticmethod
    def all_bump(n: int) -> "PipeDream":
        if n < 1:
            raise ValueError("n must be positive")
        return PipeDream(tuple(BUMP * (n - r) + ELBOW for r in range(1, n + 1)))

    @staticmethod
    def from_crosses(n: int, crosses) -> "PipeDream":
        dream = PipeDream.all_bump(n)
        updates = {}
        for (r, c) in crosses:
            if r + c > n:
                raise ValueError(f"({r},{c}) cannot hold a cross for n={n}")
            updates[(r, c)] = CROSS
        return dream.with_tiles(updates)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": list(self.rows)}

    @staticmethod
    def from_json(obj: dict) -> "PipeDream":
        dream = PipeDream(tuple(obj["rows"]))
        if dream.n != obj["n"]:
            raise ValueError("n field disagrees with row count")
        return dream

    def render_ascii(self) -> str:
        """One glyph per box: '+' for a cross, ')' for a bump or elbow."""
        return "\n".join(
            "".join("+" if t == CROSS else ")" for t in row) for row in self.rows
        )


class CrossingRecord(NamedTuple):
    """Two pipes crossing at a box; lo < hi are the pipe labels."""

    pipe_lo: int
    pipe_hi: int
    row: int
    col: int


@dataclass(eq=False)
class Routing:
    """Everything the tracer learns in one pass over a dream."""

    wiring: Permutation
    crossings: tuple[CrossingRecord, ...]
    # cross box -> (pipe passing west-to-east, pipe passing south-to-north)
    cross_pipes: dict[tuple[int, int], tuple[int, int]] = field(repr=False)
    # 1-indexed by pipe label: the boxes each pipe passes through, in order
    paths: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    def crossing_of(self, i: int, j: int) -> CrossingRecord | None:
        """The first crossing of pipes i and j, None if they never cross."""
        lo, hi = min(i, j), max(i, j)
        for rec in self.crossings:
            if rec.pipe_lo == lo and rec.pipe_hi == hi:
                return rec
        return None

    def crossings_of_pair(self, i: int, j: int) -> list[CrossingRecord]:
        lo, hi = min(i, j), max(i, j)
        return [r for r in self.crossings if (r.pipe_lo, r.pipe_hi) == (lo, hi)]


@lru_cache(maxsize=8192)
def trace(dream: PipeDream) -> Routing:
    """Follow every pipe from the west edge to the north edge.

    Total on arbitrary fillings, reduced or not.  Pipes only move north and
    east, so each trace terminates after at most one visit per box edge.
    """
    n = dream.n
    exit_pipe = [0] * (n + 1)
    horiz: dict[tuple[int, int], int] = {}
    vert: dict[tuple[int, int], int] = {}
    paths = []
    for pipe in range(1, n + 1):
        r, c, from_west = pipe, 1, True
        path = []
        while True:
            path.append((r, c))
            t = dream.tile(r, c)
            if from_west:
                goes_east = t == CROSS
                if t == CROSS:
                    horiz[(r, c)] = pipe
            else:
                goes_east = t == BUMP
                if t == CROSS:
                    vert[(r, c)] = pipe
                if t == ELBOW:
                    raise AssertionError(
                        f"pipe {pipe} entered boundary box ({r},{c}) from the south"
                    )
            if goes_east:
                c += 1
                from_west = True
            else:
                r -= 1
                from_west = False
                if r == 0:
                    exit_pipe[c] = pipe
                    break
        paths.append(tuple(path))
    wiring = Permutation(tuple(exit_pipe[1:]))
    cross_pipes = {}
    records = []
    for box in sorted(horiz):
        h, v = horiz[box], vert[box]
        cross_pipes[box] = (h, v)
        records.append(CrossingRecord(min(h, v), max(h, v), box[0], box[1]))
    records.sort()
    return Routing(wiring, tuple(records), cross_pipes, tuple(paths))


def is_reduced(dream: PipeDream) -> bool:
    """No pair of pipes crosses more than once."""
    pairs = [(r.pipe_lo, r.pipe_hi) for r in trace(dream).crossings]
    return len(pairs) == len(set(pairs))


def theta(dream: PipeDream) -> InversionsTableau:
    """Send a reduced dream to the tableau of crossing rows: box (i, j)
    holds the row where pipes i and j cross, and 0 when they do not."""
    routing = trace(dream)
    if not is_reduced(dream):
        raise ValueError("crossing-row tableau needs a reduced dream")
    n = dream.n
    rows = [[0] * (n - i) for i in range(1, n)]
    for rec in routing.crossings:
        rows[rec.pipe_lo - 1][rec.pipe_hi - rec.pipe_lo - 1] = rec.row
    return InversionsTableau(tuple(tuple(r) for r in rows), routing.wiring)


def phi(dream: PipeDream) -> LehmerTableau:
    """Crossing rows followed by the column-local relabeling."""
    t = theta(dream)
    return lehmer_form(t, t.w)


def transpose(dream: PipeDream) -> "PipeDream":
    """Reflect across the main diagonal; wiring becomes its inverse and the
    chute-move order reverses."""
    n = dream.n
    return PipeDream(
        tuple(
            "".join(dream.tile(c, r) for c in range(1, n + 2 - r))
            for r in range(1, n + 1)
        )
    )


def _pipe_row_boxes(dream: PipeDream, pipe: int) -> dict[int, list[tuple[int, int]]]:
    path = trace(dream).paths[pipe - 1]
    rows: dict[int, list[tuple[int, int]]] = {}
    for (r, c) in path:
        rows.setdefault(r, []).append((r, c))
    return rows


def hat_delete(dream: PipeDream) -> "PipeDream":
    """Remove the trace of the last pipe: in every row, delete the rightmost
    box the pipe n passes through and close the gap leftwards.  The result
    is a dream of size n-1 whose wiring is the wiring of the input with its
    largest value dropped."""
    if not is_reduced(dream):
        raise ValueError("row deletion needs a reduced dream")
    n = dream.n
    if n < 2:
        raise ValueError("nothing left after deleting from size 1")
    by_row = _pipe_row_boxes(dream, n)
    new_rows = []
    for r in range(1, n):
        boxes = by_row.get(r)
        if not boxes:
            raise AssertionError(f"pipe {n} misses row {r}")
        tiles = [dream.tile(*b) for b in boxes]
        if not (
            tiles == [CROSS]
            or (len(tiles) == 2 and tiles[0] == BUMP and tiles[1] in (BUMP, ELBOW))
        ):
            raise AssertionError(
                f"pipe {n} occupies {boxes} in row {r} with tiles {tiles}; "
                f"a reduced dream allows a single cross or a bump pair"
            )
        drop_col = max(c for (_, c) in boxes)
        row = dream.rows[r - 1]
        new_row = row[: drop_col - 1] + row[drop_col:]
        # the box arriving at the new boundary is a bump or the old elbow
        if new_row[-1] == BUMP:
            new_row = new_row[:-1] + ELBOW
        elif new_row[-1] != ELBOW:
            raise AssertionError(f"cross landed on the boundary in row {r}")
        new_rows.append(new_row)
    return PipeDream(tuple(new_rows))


def triforce_embed(dream: PipeDream) -> "PipeDream":
    """Embed into the staircase of size 2n: interior tiles are reflected
    across the antidiagonal, box (i, j) landing at (n+1-j, n+1-i), and all
    other boxes are bumps (elbows on the new boundary).  The wiring of the
    image is the triforce of the wiring."""
    n = dream.n
    big = PipeDream.all_bump(2 * n)
    updates = {}
    for (r, c) in dream.boxes():
        if r + c <= n:
            updates[(n + 1 - c, n + 1 - r)] = dream.tile(r, c)
    return big.with_tiles(updates)


def phi_transpose_entry(dream: PipeDream, i: int, j: int) -> int:
    """Entry of the relabeled tableau of the transposed dream at the box
    the inversion (i, j) maps to, computed without transposing: one less
    than the crossing column of pipes i and j, minus the number of pipes
    whose labels occur before j in the wiring word and which cross pipe i
    strictly to the left of that column."""
    if not 1 <= i < j <= dream.n:
        raise ValueError(f"({i},{j}) is not a valid pipe pair for n={dream.n}")
    routing = trace(dream)
    w = routing.wiring
    rec = routing.crossing_of(i, j)
    if rec is None:
        raise ValueError(f"({i},{j}) is not an inversion of {w}")
    col = rec.col
    earlier_values = {w(k) for k in range(1, w.position_of(j))}
    competitors = 0
    for other in routing.crossings:
        if other.pipe_lo == i and other.pipe_hi == j:
            continue
        if i == other.pipe_lo:
            d = other.pipe_hi
        elif i == other.pipe_hi:
            d = other.pipe_lo
        else:
            continue
        if d in earlier_values and other.col < col:
            competitors += 1
    return col - competitors - 1

"""Staircase tableaux over the inversion diagram and the Lehmer bijection.

Boxes live in the reflected-French staircase {(i, j) : 1 <= i < j <= n}:
row i is the i-th row from the bottom, column j runs from 2 to n, and "below
box (i, j)" always means the boxes (i', j) with i' < i.  A tableau stores
row i at ``rows[i-1]`` as the entries of (i, i+1), ..., (i, n).

Three nested families appear here:

* column-injective tableaux for w: zero exactly off the inversion diagram
  of w, nonzero entries distinct within each column;
* inversions tableaux IT(w): column-injective, balanced, and bounded by the
  row index (row i holds entries <= i); these are the images of reduced
  pipe dreams under the crossing-row map;
* Lehmer tableaux: the image of the column-injective family under the
  column-local relabeling ``lehmer_form``, ordered componentwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import TheoremViolation
from .perm import Permutation

__all__ = [
    "StairTableau",
    "InversionsTableau",
    "LehmerTableau",
    "ValidationResult",
    "validate_inversions_tableau",
    "column_injective_violation",
    "is_balanced",
    "lambda_shape_balanced",
    "hook_boxes",
    "hook_balanced",
    "balance_equivalence_check",
    "lehmer_form",
    "lehmer_form_inverse",
    "increment",
    "increment_multiset",
    "delta_multiset",
    "restrict",
    "lehmer_leq",
    "lehmer_max",
]


def _check_stair_shape(rows, allow_none=False):
    n = len(rows) + 1
    for i, row in enumerate(rows, start=1):
        if len(row) != n - i:
            raise ValueError(
                f"row {i} has {len(row)} entries, expected {n - i}"
            )
        for v in row:
            if v is None and allow_none:
                continue
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"bad entry {v!r} in row {i}")


@dataclass(frozen=True, eq=False)
class StairTableau:
    """Nonnegative filling of the staircase; equality compares entries only."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_stair_shape(rows)

    @property
    def n(self) -> int:
        return len(self.rows) + 1

    def get(self, i: int, j: int) -> int:
        if not 1 <= i < j <= self.n:
            raise ValueError(f"({i},{j}) is not a box for n={self.n}")
        return self.rows[i - 1][j - i - 1]

    def boxes(self):
        """All boxes (i, j), column-major: j ascending, i ascending within."""
        n = self.n
        for j in range(2, n + 1):
            for i in range(1, j):
                yield (i, j)

    def nonzero_boxes(self) -> frozenset[tuple[int, int]]:
        return frozenset(b for b in self.boxes() if self.get(*b) != 0)

    def with_entries(self, updates: Mapping[tuple[int, int], int]):
        rows = [list(r) for r in self.rows]
        for (i, j), v in updates.items():
            if not 1 <= i < j <= self.n:
                raise ValueError(f"({i},{j}) is not a box for n={self.n}")
            rows[i - 1][j - i - 1] = v
        return _rebuild(self, tuple(tuple(r) for r in rows))

    def column(self, j: int) -> tuple[int, ...]:
        """Entries of column j from the bottom row up: (1,j), ..., (j-1,j)."""
        return tuple(self.get(i, j) for i in range(1, j))

    def __eq__(self, other):
        if not isinstance(other, StairTableau):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    @staticmethod
    def zero(n: int) -> "StairTableau":
        return StairTableau(tuple(tuple(0 for _ in range(n - i)) for i in range(1, n)))


@dataclass(frozen=True, eq=False)
class InversionsTableau(StairTableau):
    """A staircase tableau tagged with the permutation it is attached to.

    The tag records which inversion diagram the zero pattern is measured
    against; it does not by itself certify membership in IT(w), which is
    what ``validate_inversions_tableau`` decides.
    """

    w: Permutation

    def __post_init__(self):
        super().__post_init__()
        if self.w.n != self.n:
            raise ValueError(f"tableau has n={self.n} but w has n={self.w.n}")

    def to_json(self) -> dict:
        return {"n": self.n, "w": str(self.w), "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json(obj: dict) -> "InversionsTableau":
        w = Permutation.parse(obj["w"])
        rows = tuple(tuple(r) for r in obj["rows"])
        t = InversionsTableau(rows, w)
        if t.n != obj["n"]:
            raise ValueError("n field disagrees with row count")
        return t


@dataclass(frozen=True)
class LehmerTableau:
    """Entries on the inversion diagram of w only; None everywhere else."""

    w: Permutation
    rows: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_stair_shape(rows, allow_none=True)
        if self.w.n != self.n:
            raise ValueError(f"tableau has n={self.n} but w has n={self.w.n}")
        inv = self.w.inversions()
        for j in range(2, self.n + 1):
            for i in range(1, j):
                have = rows[i - 1][j - i - 1] is not None
                if have != ((i, j) in inv):
                    raise ValueError(
                        f"support mismatch at ({i},{j}): entries must sit "
                        f"exactly on the inversions of {self.w}"
                    )

    @property
    def n(self) -> int:
        return len(self.rows) + 1

    def get(self, i: int, j: int) -> int | None:
        if not 1 <= i < j <= self.n:
            raise ValueError(f"({i},{j}) is not a box for n={self.n}")
        return self.rows[i - 1][j - i - 1]

    def support(self) -> tuple[tuple[int, int], ...]:
        """Inversion boxes in (column, row)-sorted order."""
        return tuple(sorted(self.w.inversions(), key=lambda b: (b[1], b[0])))

    def as_vector(self) -> tuple[int, ...]:
        return tuple(self.get(i, j) for (i, j) in self.support())

    def total(self) -> int:
        return sum(self.as_vector())

    def to_json(self) -> dict:
        return {"n": self.n, "w": str(self.w), "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json(obj: dict) -> "LehmerTableau":
        w = Permutation.parse(obj["w"])
        rows = tuple(tuple(r) for r in obj["rows"])
        t = LehmerTableau(w, rows)
        if t.n != obj["n"]:
            raise ValueError("n field disagrees with row count")
        return t


def _rebuild(t: StairTableau, rows):
    if isinstance(t, InversionsTableau):
        return InversionsTableau(rows, t.w)
    return StairTableau(rows)


def lehmer_leq(a: LehmerTableau, b: LehmerTableau) -> bool:
    """Componentwise order on Lehmer tableaux for the same permutation."""
    if a.w != b.w:
        raise ValueError("Lehmer tableaux for different permutations")
    return all(x <= y for x, y in zip(a.as_vector(), b.as_vector()))


def lehmer_max(a: LehmerTableau, b: LehmerTableau) -> LehmerTableau:
    """Componentwise maximum, the candidate join in the Lehmer picture."""
    if a.w != b.w:
        raise ValueError("Lehmer tableaux for different permutations")
    rows = tuple(
        tuple(
            None if x is None else max(x, y)
            for x, y in zip(ra, rb)
        )
        for ra, rb in zip(a.rows, b.rows)
    )
    return LehmerTableau(a.w, rows)


# ---------------------------------------------------------------------------
# balance


def lambda_shape_balanced(t: StairTableau, i: int, j: int, k: int) -> bool:
    """The corner entry t(i,k) lies weakly between t(i,j) and t(j,k)."""
    if not 1 <= i < j < k <= t.n:
        raise ValueError(f"({i},{j},{k}) is not a shape for n={t.n}")
    lo, hi = sorted((t.get(i, j), t.get(j, k)))
    return lo <= t.get(i, k) <= hi


def is_balanced(t: StairTableau) -> bool:
    n = t.n
    return all(
        lambda_shape_balanced(t, i, j, k)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 1)
    )


def hook_boxes(n: int, i: int, j: int) -> list[tuple[int, int]]:
    """The boxes of column j between rows i and j, the boxes of row i between
    columns i and j, and the corner (i, j); always of odd cardinality."""
    if not 1 <= i < j <= n:
        raise ValueError(f"({i},{j}) is not a box for n={n}")
    arm = [(i, jj) for jj in range(i + 1, j)]
    leg = [(ii, j) for ii in range(i + 1, j)]
    return arm + leg + [(i, j)]


def hook_balanced(t: StairTableau, i: int, j: int) -> bool:
    """The corner entry equals the median of the hook's entries."""
    entries = sorted(t.get(*b) for b in hook_boxes(t.n, i, j))
    assert len(entries) % 2 == 1
    return t.get(i, j) == entries[len(entries) // 2]


def balance_equivalence_check(t: StairTableau) -> bool:
    """Balance can be read off shapes or hooks; both answers must agree."""
    by_shapes = is_balanced(t)
    by_hooks = all(
        hook_balanced(t, i, j) for i in range(1, t.n) for j in range(i + 1, t.n + 1)
    )
    if by_shapes != by_hooks:
        raise TheoremViolation(
            "shape balance and hook balance disagree",
            witness={"rows": t.rows, "shapes": by_shapes, "hooks": by_hooks},
        )
    return by_shapes


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationResult:
    """First violation found, or ok=True; scan order is deterministic."""

    ok: bool
    condition: str | None = None
    box: tuple[int, int] | None = None
    shape: tuple[int, int, int] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


_OK = ValidationResult(True)


def column_injective_violation(t: StairTableau, w: Permutation) -> ValidationResult:
    """Zero-pattern and per-column distinctness; the membership test for
    column-injective tableaux.  Scans columns left to right and rows bottom
    to top, reporting the first offending box."""
    if t.n != w.n:
        raise ValueError(f"tableau n={t.n} but w has n={w.n}")
    inv = w.inversions()
    for j in range(2, t.n + 1):
        seen = {}
        for i in range(1, j):
            v = t.get(i, j)
            if v == 0 and (i, j) in inv:
                return ValidationResult(
                    False, "zero_on_inversion", box=(i, j),
                    message=f"({i},{j}) is an inversion of {w} but holds 0",
                )
            if v != 0 and (i, j) not in inv:
                return ValidationResult(
                    False, "nonzero_off_inversion", box=(i, j),
                    message=f"({i},{j}) is not an inversion of {w} but holds {v}",
                )
            if v != 0:
                if v in seen:
                    return ValidationResult(
                        False, "column_duplicate", box=(i, j),
                        message=f"entry {v} repeats in column {j} "
                                f"(rows {seen[v]} and {i})",
                    )
                seen[v] = i
    return _OK


def validate_inversions_tableau(t: StairTableau, w: Permutation) -> ValidationResult:
    """Membership test for IT(w).

    Scan order: per box (columns left to right, rows bottom to top) check
    the zero pattern, then column distinctness, then the row bound; after
    all boxes pass, check the three-box shapes in lexicographic (i, j, k)
    order.  The first violation wins.
    """
    if t.n != w.n:
        raise ValueError(f"tableau n={t.n} but w has n={w.n}")
    inv = w.inversions()
    for j in range(2, t.n + 1):
        seen = {}
        for i in range(1, j):
            v = t.get(i, j)
            if v == 0 and (i, j) in inv:
                return ValidationResult(
                    False, "zero_on_inversion", box=(i, j),
                    message=f"({i},{j}) is an inversion of {w} but holds 0",
                )
            if v != 0 and (i, j) not in inv:
                return ValidationResult(
                    False, "nonzero_off_inversion", box=(i, j),
                    message=f"({i},{j}) is not an inversion of {w} but holds {v}",
                )
            if v != 0:
                if v in seen:
                    return ValidationResult(
                        False, "column_duplicate", box=(i, j),
                        message=f"entry {v} repeats in column {j} "
                                f"(rows {seen[v]} and {i})",
                    )
                seen[v] = i
                if v > i:
                    return ValidationResult(
                        False, "row_bound", box=(i, j),
                        message=f"entry {v} at ({i},{j}) exceeds its row index",
                    )
    n = t.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                if not lambda_shape_balanced(t, i, j, k):
                    return ValidationResult(
                        False, "unbalanced", shape=(i, j, k),
                        message=f"shape ({i},{j},{k}) entries "
                                f"{t.get(i, j)},{t.get(i, k)},{t.get(j, k)} "
                                f"are not balanced",
                    )
    return _OK


# ---------------------------------------------------------------------------
# the Lehmer bijection


def lehmer_form(t: StairTableau, w: Permutation) -> LehmerTableau:
    """Column-local relabeling: each entry a becomes the number of positive
    integers below a that are missing from the part of the column under its
    box.  A bijection from column-injective tableaux for w onto arbitrary
    fillings of the inversion diagram."""
    res = column_injective_violation(t, w)
    if not res:
        raise ValueError(f"not column-injective for {w}: {res.message}")
    inv = w.inversions()
    rows = [[None] * (t.n - i) for i in range(1, t.n)]
    for j in range(2, t.n + 1):
        below: set[int] = set()
        for i in range(1, j):
            v = t.get(i, j)
            if (i, j) in inv:
                missing = v - 1 - sum(1 for u in below if u < v)
                rows[i - 1][j - i - 1] = missing
            if v != 0:
                below.add(v)
    return LehmerTableau(w, tuple(tuple(r) for r in rows))


def lehmer_form_inverse(lt: LehmerTableau) -> InversionsTableau:
    """Rebuild the column-injective tableau column by column, bottom to top:
    the entry over Lehmer value m is the (m+1)-th positive integer not yet
    used below in its column."""
    n = lt.n
    rows = [[0] * (n - i) for i in range(1, n)]
    for j in range(2, n + 1):
        used: set[int] = set()
        for i in range(1, j):
            m = lt.get(i, j)
            if m is None:
                continue
            candidate = 0
            remaining = m + 1
            while remaining:
                candidate += 1
                if candidate not in used:
                    remaining -= 1
            rows[i - 1][j - i - 1] = candidate
            used.add(candidate)
    return InversionsTableau(tuple(tuple(r) for r in rows), lt.w)


# ---------------------------------------------------------------------------
# increments


def increment(t: StairTableau, i: int, j: int) -> tuple[StairTableau, str]:
    """Raise the entry at (i, j) to the next value legal for its column.

    With a = t(i,j) and b the smallest integer above a missing from the
    column below (i, j): if b is absent from the whole column the entry is
    replaced ("pure"); if b sits higher in the column the two entries swap
    places ("trade").  Either way the column stays injective and the Lehmer
    form gains exactly 1 at (i, j).
    """
    a = t.get(i, j)
    if a == 0:
        raise ValueError(f"({i},{j}) holds 0; increments live on inversion boxes")
    below = {t.get(ii, j) for ii in range(1, i)} - {0}
    b = a + 1
    while b in below:
        b += 1
    for ii in range(i + 1, j):
        if t.get(ii, j) == b:
            return t.with_entries({(i, j): b, (ii, j): a}), "trade"
    return t.with_entries({(i, j): b}), "pure"


def increment_multiset(
    t: StairTableau, boxes: Mapping[tuple[int, int], int] | Iterable[tuple[int, int]]
) -> StairTableau:
    """Apply ``increment`` once per multiset element; the order does not
    matter (a tested property), so boxes are processed in sorted order."""
    if isinstance(boxes, Mapping):
        counts = Counter(dict(boxes))
    else:
        counts = Counter(boxes)
    for box, mult in counts.items():
        if mult < 0:
            raise ValueError(f"negative multiplicity at {box}")
    out = t
    for box in sorted(counts, key=lambda b: (b[1], b[0])):
        for _ in range(counts[box]):
            out, _kind = increment(out, *box)
    return out


def delta_multiset(
    t1: StairTableau, t2: StairTableau, w: Permutation | None = None
) -> Counter | None:
    """Box-by-box difference of Lehmer forms, as a multiset of boxes, or
    None when some coordinate would be negative (incomparable pair)."""
    if w is None:
        if isinstance(t1, InversionsTableau):
            w = t1.w
        else:
            raise ValueError("w is required for untagged tableaux")
    if isinstance(t1, InversionsTableau) and isinstance(t2, InversionsTableau):
        if t1.w != t2.w:
            raise ValueError("tableaux tagged with different permutations")
    l1 = lehmer_form(t1, w)
    l2 = lehmer_form(t2, w)
    out: Counter = Counter()
    for box in l1.support():
        d = l2.get(*box) - l1.get(*box)
        if d < 0:
            return None
        if d > 0:
            out[box] = d
    return out


def restrict(t: StairTableau, j: int) -> StairTableau:
    """Keep columns 2..j only.  For a tableau tagged with w the result is
    tagged with w minus its values above j, and membership in the
    inversions-tableau family is preserved."""
    if not 2 <= j <= t.n:
        raise ValueError(f"cutoff {j} out of range 2..{t.n}")
    rows = tuple(tuple(t.rows[i - 1][: j - i]) for i in range(1, j))
    if isinstance(t, InversionsTableau):
        return InversionsTableau(rows, t.w.delete_values_above(j))
    return StairTableau(rows)

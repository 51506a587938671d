"""Permutations in one-line notation.

The text form concatenates digits for n <= 9 ("361542") and falls back to
comma-separated values ("3,6,1,5,4,2,12,...") for larger degrees, so every
permutation round-trips through ``str`` and ``Permutation.parse``.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Permutation"]


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1, ..., n}, stored as its one-line word."""

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        n = len(word)
        if n == 0 or sorted(word) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {word!r}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"position {i} out of range 1..{self.n}")
        return self.word[i - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.word)
        return ",".join(str(v) for v in self.word)

    @staticmethod
    def parse(text: str) -> "Permutation":
        """Parse the text form; inverse of ``str``.

        >>> Permutation.parse("361542").word
        (3, 6, 1, 5, 4, 2)
        """
        text = text.strip()
        if not text:
            raise ValueError("empty permutation text")
        if "," in text:
            try:
                word = tuple(int(part) for part in text.split(","))
            except ValueError:
                raise ValueError(f"bad permutation text: {text!r}") from None
        else:
            if not text.isdigit():
                raise ValueError(f"bad permutation text: {text!r}")
            word = tuple(int(ch) for ch in text)
        return Permutation(word)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def longest(n: int) -> "Permutation":
        """The order-reversing permutation w0 = n, n-1, ..., 1."""
        return Permutation(tuple(range(n, 0, -1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, val in enumerate(self.word, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def position_of(self, value: int) -> int:
        """Position of ``value`` in the word, i.e. inverse(value)."""
        return self.word.index(value) + 1

    def inversions(self) -> frozenset[tuple[int, int]]:
        """Value pairs (i, j), i < j, where i appears to the right of j.

        These index the boxes of the inversion diagram: (i, j) with i < j is
        an inversion exactly when position_of(i) > position_of(j).
        """
        pos = self.inverse().word
        n = self.n
        return frozenset(
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if pos[i - 1] > pos[j - 1]
        )

    def length(self) -> int:
        """Coxeter length = number of inversions."""
        return len(self.inversions())

    def lehmer_code(self) -> tuple[int, ...]:
        """code(i) = #{j > i : word[j] < word[i]}."""
        w = self.word
        n = self.n
        return tuple(
            sum(1 for j in range(i + 1, n) if w[j] < w[i]) for i in range(n)
        )

    def delete_values_above(self, j: int) -> "Permutation":
        """Drop the values j+1..n from the word; the result lives in S_j."""
        if not 1 <= j <= self.n:
            raise ValueError(f"cutoff {j} out of range 1..{self.n}")
        return Permutation(tuple(v for v in self.word if v <= j))

    def hat(self) -> "Permutation":
        """Drop the largest value n; companion of pipe-dream row deletion."""
        if self.n < 2:
            raise ValueError("hat needs n >= 2")
        return self.delete_values_above(self.n - 1)

    def triforce(self) -> "Permutation":
        """Double the degree: fix 1..n and place the reversed complement of
        the word in positions n+1..2n.  The inversions of the result are a
        shifted copy of the inversions of this permutation."""
        n = self.n
        top = list(range(1, n + 1))
        bottom = [2 * n + 1 - self.word[2 * n - i] for i in range(n + 1, 2 * n + 1)]
        return Permutation(tuple(top + bottom))

    def descents(self) -> tuple[int, ...]:
        """Positions r with word[r] > word[r+1]."""
        w = self.word
        return tuple(r for r in range(1, self.n) if w[r - 1] > w[r])

"""Schubert polynomials two ways: summed over pipe dreams, and by the
classical divided-difference recursion.  The two must agree; the package
treats agreement as a checkable fact, so both routes are independent."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .perm import Permutation
from .poset import cached_poset

__all__ = [
    "IntPolynomial",
    "schubert_from_pipedreams",
    "schubert_oracle",
    "divided_difference",
]


def _trim(exps: tuple[int, ...]) -> tuple[int, ...]:
    k = len(exps)
    while k and exps[k - 1] == 0:
        k -= 1
    return exps[:k]


def _term_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in x1, x2, ... with a canonical representation:
    terms sorted graded-lex descending, no zero coefficients, exponent
    tuples trimmed of trailing zeros.  Equal polynomials compare equal."""

    terms: tuple[tuple[tuple[int, ...], int], ...]

    @staticmethod
    def from_dict(d: dict) -> "IntPolynomial":
        clean = {}
        for exps, coeff in d.items():
            if coeff == 0:
                continue
            key = _trim(tuple(exps))
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            clean[key] = clean.get(key, 0) + coeff
        items = tuple(
            (exps, coeff)
            for exps, coeff in sorted(
                clean.items(), key=lambda kv: _term_key(kv[0]), reverse=True
            )
            if coeff != 0
        )
        return IntPolynomial(items)

    @staticmethod
    def zero() -> "IntPolynomial":
        return IntPolynomial(())

    @staticmethod
    def monomial(exps, coeff: int = 1) -> "IntPolynomial":
        return IntPolynomial.from_dict({tuple(exps): coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        d = dict(self.terms)
        for exps, coeff in other.terms:
            d[exps] = d.get(exps, 0) + coeff
        return IntPolynomial.from_dict(d)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        d = dict(self.terms)
        for exps, coeff in other.terms:
            d[exps] = d.get(exps, 0) - coeff
        return IntPolynomial.from_dict(d)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                m = max(len(e1), len(e2))
                a = e1 + (0,) * (m - len(e1))
                b = e2 + (0,) * (m - len(e2))
                key = tuple(x + y for x, y in zip(a, b))
                d[key] = d.get(key, 0) + c1 * c2
        return IntPolynomial.from_dict(d)

    def evaluate_ones(self) -> int:
        """Value at x1 = x2 = ... = 1."""
        return sum(coeff for _exps, coeff in self.terms)

    def is_positive(self) -> bool:
        return all(coeff > 0 for _exps, coeff in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.terms:
            vars_part = " ".join(
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(exps, start=1)
                if e
            )
            if not vars_part:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(vars_part)
            else:
                parts.append(f"{coeff} * {vars_part}")
        return " + ".join(parts)


def _swap_vars(poly: IntPolynomial, r: int) -> IntPolynomial:
    d = {}
    for exps, coeff in poly.terms:
        padded = exps + (0,) * (r + 1 - len(exps))
        lst = list(padded)
        lst[r - 1], lst[r] = lst[r], lst[r - 1]
        key = tuple(lst)
        d[key] = d.get(key, 0) + coeff
    return IntPolynomial.from_dict(d)


def divided_difference(poly: IntPolynomial, r: int) -> IntPolynomial:
    """(f - s_r f) / (x_r - x_{r+1}), computed termwise by the telescoping
    identity, then re-multiplied to confirm exact division."""
    if r < 1:
        raise ValueError("variable index must be positive")
    d: dict = {}
    for exps, coeff in poly.terms:
        padded = exps + (0,) * (r + 1 - len(exps))
        p, q = padded[r - 1], padded[r]
        if p == q:
            continue
        sign = 1 if p > q else -1
        lo, hi = min(p, q), max(p, q)
        for k in range(lo, hi):
            lst = list(padded)
            lst[r - 1], lst[r] = k, p + q - 1 - k
            key = tuple(lst)
            d[key] = d.get(key, 0) + sign * coeff
    out = IntPolynomial.from_dict(d)
    xr = IntPolynomial.monomial((0,) * (r - 1) + (1,))
    xr1 = IntPolynomial.monomial((0,) * r + (1,))
    assert out * (xr - xr1) == poly - _swap_vars(poly, r), "division was not exact"
    return out


@lru_cache(maxsize=None)
def _oracle_by_word(word: tuple[int, ...], rule: str) -> IntPolynomial:
    v = Permutation(word)
    n = v.n
    ascents = [r for r in range(1, n) if v.word[r - 1] < v.word[r]]
    if not ascents:
        return IntPolynomial.from_dict(
            {tuple(range(n - 1, 0, -1)): 1} if n > 1 else {(): 1}
        )
    r = ascents[0] if rule == "first" else ascents[-1]
    lst = list(word)
    lst[r - 1], lst[r] = lst[r], lst[r - 1]
    return divided_difference(_oracle_by_word(tuple(lst), rule), r)


def schubert_oracle(w: Permutation, ascent_rule: str = "first") -> IntPolynomial:
    """Divided-difference route, independent of any pipe dream code: start
    from the staircase monomial of the longest element and walk down along
    ascents.  The wiring convention used here reads exit labels, so the
    recursion runs on the inverse permutation."""
    if ascent_rule not in ("first", "last"):
        raise ValueError(f"unknown ascent rule {ascent_rule!r}")
    return _oracle_by_word(w.inverse().word, ascent_rule)


def schubert_from_pipedreams(w: Permutation) -> IntPolynomial:
    """One monomial per reduced pipe dream: the exponent of x_r counts the
    crosses in row r."""
    poset = cached_poset(w)
    d: dict = {}
    for dream in poset.elements:
        counts = [0] * w.n
        for (r, _c) in dream.crosses():
            counts[r - 1] += 1
        key = _trim(tuple(counts))
        d[key] = d.get(key, 0) + 1
    return IntPolynomial.from_dict(d)

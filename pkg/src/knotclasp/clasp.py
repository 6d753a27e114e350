"""Clasp-number lower bounds from Conway polynomial coefficients.

A knot with clasp number at most two has Conway polynomial

    (b1*b2 + eps*b3*(b3 + delta)) z^4 + (b1 + b2 - eps*delta) z^2 + 1

for integers b1, b2, b3, a sign eps and delta in {0, 1}.  This module
decides exactly whether a given ``m4 z^4 + m2 z^2 + 1`` has that shape,
implements the mod-8 shortcut that rules it out, and builds the genus-two
Seifert matrix that produces the form.

The decision is a necessary condition only.  A witness says nothing about
whether a two-clasp disk actually exists.

Decision procedure
------------------
Fix (eps, delta) and put ``S = m2 + eps*delta`` so ``b1 + b2 = S``.  Then
``Y = b1 - b2`` must satisfy ``Y^2 = S^2 - 4 m4 + 4 eps b3 (b3 + delta)``.
With ``X = 2 b3 + delta`` this becomes

* eps = +1:  ``Y^2 - X^2 = S^2 - 4 m4 - delta^2``  (divisor pairs),
* eps = -1:  ``Y^2 + X^2 = S^2 - 4 m4 + delta^2``  (bounded search),

subject to ``X = delta`` and ``Y = S`` modulo 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator

import numpy as np

from .invariants import SeifertMatrix
from .laurent import LaurentPoly

__all__ = [
    "ClaspError",
    "ConwayGenus2",
    "TwoClaspWitness",
    "NotRealizable",
    "NoneWithin",
    "ClaspBounds",
    "shibuya_lower",
    "conway_genus2_of",
    "mod8_obstruction",
    "one_clasp_form",
    "lemma21_matrix",
    "lemma21_closed_form",
    "lemma21_parameters",
    "two_clasp_realizable",
    "two_clasp_realizable_oracle",
    "genus_lower_from_conway",
]

SIGN_ORDER = ((1, 0), (1, 1), (-1, 0), (-1, 1))


class ClaspError(ValueError):
    pass


@dataclass(frozen=True)
class ConwayGenus2:
    m4: int
    m2: int

    def poly(self) -> LaurentPoly:
        return LaurentPoly({8: self.m4, 4: self.m2, 0: 1})


@dataclass(frozen=True)
class TwoClaspWitness:
    b1: int
    b2: int
    b3: int
    eps: int
    delta: int

    def coefficients(self) -> ConwayGenus2:
        return ConwayGenus2(
            self.b1 * self.b2 + self.eps * self.b3 * (self.b3 + self.delta),
            self.b1 + self.b2 - self.eps * self.delta,
        )

    def as_list(self) -> list[int]:
        return [self.b1, self.b2, self.b3, self.eps, self.delta]


@dataclass(frozen=True)
class NotRealizable:
    """No integer solution exists; any knot with this polynomial has c >= 3."""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NoneWithin:
    bound: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ClaspBounds:
    lower: int
    upper: int | None = None
    provenance: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ClaspError(f"inconsistent clasp bounds [{self.lower}, {self.upper}]")


def shibuya_lower(g_lb: int, u_lb: int) -> int:
    if g_lb < 0 or u_lb < 0:
        raise ClaspError("genus and unknotting lower bounds are non-negative")
    return max(g_lb, u_lb)


def _z_coefficients(p: LaurentPoly) -> dict[int, int]:
    out = {}
    for key, c in p.doubled_terms.items():
        if key % 2 or key < 0:
            raise ClaspError(f"{p.format('z')} is not a polynomial in z")
        out[key // 2] = c
    return out


def conway_genus2_of(p: LaurentPoly) -> ConwayGenus2:
    coeffs = _z_coefficients(p)
    if coeffs.get(0) != 1 or any(k not in (0, 2, 4) for k in coeffs):
        raise ClaspError(f"{p.format('z')} is not of the form m4 z^4 + m2 z^2 + 1")
    return ConwayGenus2(coeffs.get(4, 0), coeffs.get(2, 0))


def mod8_obstruction(c: ConwayGenus2) -> bool:
    return c.m4 % 8 == 3 and c.m2 % 4 == 2


def one_clasp_form(p: LaurentPoly) -> int | None:
    try:
        coeffs = _z_coefficients(p)
    except ClaspError:
        return None
    if coeffs.get(0) != 1 or any(k not in (0, 2) for k in coeffs):
        return None
    return coeffs.get(2, 0)


def genus_lower_from_conway(p: LaurentPoly) -> int:
    if p.is_zero():
        raise ClaspError("zero polynomial is not a knot Conway polynomial")
    top = max(_z_coefficients(p))
    if top % 2:
        raise ClaspError("odd z-degree: not a knot Conway polynomial")
    return top // 2


# ---------------------------------------------------------------------------
# the genus-two Seifert matrix


def lemma21_matrix(a11: int, a12: int, a22: int, eps1: int, eps2: int, delta: int) -> SeifertMatrix:
    """Seifert matrix of a disk with two clasping bands; ``a21 = a12 + delta``."""
    if eps1 not in (1, -1) or eps2 not in (1, -1) or delta not in (0, 1):
        raise ClaspError("eps1, eps2 must be +-1 and delta 0 or 1")
    return SeifertMatrix.of(
        [
            [a11, a12, 0, 0],
            [a12 + delta, a22, 0, 0],
            [-1, 0, -eps1, 0],
            [0, -1, 0, -eps2],
        ]
    )


def lemma21_parameters(a11: int, a12: int, a22: int, eps1: int, eps2: int, delta: int) -> TwoClaspWitness:
    """The (b1, b2, b3, eps, delta) that the matrix above realizes."""
    return TwoClaspWitness(-eps1 * a11, -eps2 * a22, a12, -eps1 * eps2, delta)


def lemma21_closed_form(b1: int, b2: int, b3: int, eps: int, delta: int) -> LaurentPoly:
    return TwoClaspWitness(b1, b2, b3, eps, delta).coefficients().poly()


# ---------------------------------------------------------------------------
# exact decision


def _divisor_pairs(n: int) -> Iterator[tuple[int, int]]:
    """Pairs (p, q) with p*q = n, p of either sign, by trial division."""
    m = abs(n)
    small = []
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
    divisors = sorted(set(small + [m // d for d in small]))
    for d in divisors:
        for p in (d, -d):
            yield p, n // p


def _key(x: int, y: int) -> tuple:
    return (abs(x), x < 0, -y)


def _candidates_hyperbolic(s: int, c: int, delta: int) -> list[tuple[int, int]]:
    # Y^2 - X^2 = c, X = delta, Y = s (mod 2)
    if c == 0:
        # Y = +-X; the smallest admissible |X| is delta itself
        if (delta - s) % 2:
            return []
        return [(delta, delta), (delta, -delta)]
    out = []
    for p, q in _divisor_pairs(c):
        # (Y - X)(Y + X) = c with p = Y - X, q = Y + X
        if (p + q) % 2:
            continue
        y, x = (p + q) // 2, (q - p) // 2
        if (x - delta) % 2 == 0 and (y - s) % 2 == 0:
            out.append((x, y))
    return out


def _candidates_circle(s: int, c: int, delta: int) -> list[tuple[int, int]]:
    # Y^2 + X^2 = c
    if c < 0:
        return []
    out = []
    x = 0
    while x * x <= c:
        r = c - x * x
        y = isqrt(r)
        if y * y == r:
            for sx in {x, -x}:
                for sy in {y, -y}:
                    if (sx - delta) % 2 == 0 and (sy - s) % 2 == 0:
                        out.append((sx, sy))
        x += 1
    return out


def _witness(s: int, x: int, y: int, eps: int, delta: int) -> TwoClaspWitness:
    return TwoClaspWitness((s + y) // 2, (s - y) // 2, (x - delta) // 2, eps, delta)


def two_clasp_realizable(c: ConwayGenus2) -> TwoClaspWitness | NotRealizable:
    """First witness in (eps, delta) order, then by smallest |X|, or NotRealizable."""
    for eps, delta in SIGN_ORDER:
        s = c.m2 + eps * delta
        if eps == 1:
            cands = _candidates_hyperbolic(s, s * s - 4 * c.m4 - delta * delta, delta)
        else:
            cands = _candidates_circle(s, s * s - 4 * c.m4 + delta * delta, delta)
        if cands:
            x, y = min(cands, key=lambda xy: _key(*xy))
            w = _witness(s, x, y, eps, delta)
            assert w.coefficients() == c, (c, w)
            return w
    return NotRealizable()


def two_clasp_realizable_oracle(c: ConwayGenus2, bound: int) -> TwoClaspWitness | NoneWithin:
    """Exhaustive search over |b1|, |b2|, |b3| <= bound."""
    if bound < 0:
        raise ClaspError("bound must be non-negative")
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    b1 = r[:, None]
    b3 = r[None, :]
    for eps, delta in SIGN_ORDER:
        b2 = c.m2 + eps * delta - b1
        ok = (np.abs(b2) <= bound) & (b1 * b2 + eps * b3 * (b3 + delta) == c.m4)
        hits = np.argwhere(ok)
        if hits.size:
            i, j = hits[0]
            return TwoClaspWitness(int(r[i]), int(b2[i, 0]), int(r[j]), eps, delta)
    return NoneWithin(bound)

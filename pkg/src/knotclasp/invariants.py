"""Polynomial invariants of diagrams and Seifert matrices.

Three engines live here:

* Alexander polynomial from the abelianized Fox-calculus (Wirtinger)
  matrix of a knot diagram, normalized to be symmetric with value 1 at t=1,
  and the Conway polynomial derived from it;
* Jones polynomial from the Kauffman bracket state sum, with writhe
  correction and ``A = t^(-1/4)``;
* Alexander/Conway polynomials of an explicitly given Seifert matrix.

The bracket state sum walks the ``2^n`` states as an integer counter.  Each
state's loop count is the number of cycles of ``sigma . alpha``, halved,
where ``alpha`` pairs the two ends of every arc and ``sigma`` pairs slots
inside each crossing according to the smoothing.  Cycles are counted for a
whole block of states at once with numpy pointer doubling, so the counter
range can be cut into blocks and summed in any order (or in parallel).
"""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import determinant
from .diagram import Diagram, DiagramError, Shadow, _UnionFind, simplify
from .laurent import ONE, LaurentError, LaurentPoly, conway_from_alexander, normalize_alexander

__all__ = [
    "InvariantError",
    "SeifertMatrix",
    "alexander_from_seifert",
    "conway_from_seifert",
    "alexander",
    "conway",
    "kauffman_bracket",
    "bracket_state_counts",
    "bracket_from_counts",
    "jones",
    "UnknotCertificate",
    "unknot_certificate",
]

_T = LaurentPoly({2: 1})


class InvariantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Seifert matrices


@dataclass(frozen=True)
class SeifertMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("Seifert matrix must be square")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "SeifertMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(tuple(zip(*self.entries))) if self.entries else self


def _pencil(v: SeifertMatrix, left: LaurentPoly, right: LaurentPoly) -> list[list[LaurentPoly]]:
    # left * V - right * V^T
    e = v.entries
    n = v.dim
    return [[left * e[i][j] - right * e[j][i] for j in range(n)] for i in range(n)]


def alexander_from_seifert(v: SeifertMatrix) -> LaurentPoly:
    """``det(tV - V^T)``, unnormalized."""
    return determinant.det(_pencil(v, _T, ONE))


def conway_from_seifert(v: SeifertMatrix) -> LaurentPoly:
    """Conway polynomial from ``det(t^(1/2) V - t^(-1/2) V^T)``."""
    if v.dim % 2:
        raise InvariantError("a knot Seifert matrix has even dimension")
    sym = alexander_from_seifert(v).shift(-v.dim)
    if not sym.is_palindromic() or sym.eval_at_one() != 1:
        raise InvariantError("matrix is not the Seifert matrix of a knot (det(V - V^T) != 1)")
    return conway_from_alexander(sym)


# ---------------------------------------------------------------------------
# Alexander / Conway from diagrams


def _require_knot(d: Diagram, what: str) -> None:
    if not d.is_knot:
        raise InvariantError(f"{what} is computed for knots only; diagram has {d.n_components} components")


def alexander_matrix(d: Diagram) -> list[list[LaurentPoly]]:
    """Abelianized Fox-derivative matrix: one row per crossing, one column per over-arc."""
    uf = _UnionFind()
    for x in d.crossings:
        uf.union(x.arcs[1], x.arcs[3])
        uf.find(x.arcs[0])
        uf.find(x.arcs[2])
    roots = sorted({uf.find(l) for l in uf.parent})
    col = {r: k for k, r in enumerate(roots)}
    n = len(d.crossings)
    if len(roots) != n:
        raise InvariantError("diagram does not have one over-arc per crossing")
    one_minus_t = ONE - _T
    rows = []
    for x in d.crossings:
        row = [LaurentPoly() for _ in range(n)]
        over = col[uf.find(x.arcs[1])]
        inc = col[uf.find(x.under_in_arc)]
        out = col[uf.find(x.under_out_arc)]
        if x.sign > 0:
            entries = ((over, one_minus_t), (inc, _T), (out, -ONE))
        else:
            entries = ((over, -one_minus_t), (inc, ONE), (out, -_T))
        for j, val in entries:
            row[j] = row[j] + val
        rows.append(row)
    return rows


def alexander(d: Diagram) -> LaurentPoly:
    _require_knot(d, "Alexander polynomial")
    if not d.crossings:
        return ONE
    m = alexander_matrix(d)
    minor = [row[:-1] for row in m[:-1]]
    raw = determinant.det(minor)
    try:
        return normalize_alexander(raw)
    except LaurentError as exc:
        raise InvariantError(f"Alexander determinant {raw} failed normalization: {exc}") from exc


def conway(d: Diagram) -> LaurentPoly:
    return conway_from_alexander(alexander(d))


# ---------------------------------------------------------------------------
# Kauffman bracket and Jones polynomial

_BLOCK = 1 << 14


def _slot_tables(d: Diagram) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = len(d.crossings)
    alpha = np.empty(4 * n, dtype=np.int64)
    ends: dict[int, list[int]] = {}
    for i, x in enumerate(d.crossings):
        for p, label in enumerate(x.arcs):
            ends.setdefault(label, []).append(4 * i + p)
    for s1, s2 in ends.values():
        alpha[s1], alpha[s2] = s2, s1
    base = 4 * np.arange(n, dtype=np.int64)
    # sigma partners for slot offsets 0..3 under A (a-b, c-d) and B (a-d, b-c)
    a_partner = np.stack([base + 1, base + 0, base + 3, base + 2], axis=1).reshape(-1)
    b_partner = np.stack([base + 3, base + 2, base + 1, base + 0], axis=1).reshape(-1)
    return alpha, a_partner, b_partner


def bracket_state_counts(d: Diagram, start: int = 0, stop: int | None = None) -> Counter:
    """Multiplicities of (A-count minus B-count, loop count) over states in [start, stop).

    Bit ``i`` of the state counter set means crossing ``i`` is A-smoothed.
    """
    n = len(d.crossings)
    total = 1 << n
    stop = total if stop is None else min(stop, total)
    counts: Counter = Counter()
    if n == 0:
        counts[(0, d.free_loops)] += 1
        return counts
    alpha, a_partner, b_partner = _slot_tables(d)
    width = 4 * n
    rounds = max(1, int(np.ceil(np.log2(width))) + 1)
    shifts = np.arange(n, dtype=np.int64)
    idx = np.arange(width, dtype=np.int64)
    for lo in range(start, stop, _BLOCK):
        hi = min(lo + _BLOCK, stop)
        states = np.arange(lo, hi, dtype=np.int64)
        bits = ((states[:, None] >> shifts) & 1).astype(bool)
        slot_bits = np.repeat(bits, 4, axis=1)
        sigma = np.where(slot_bits, a_partner, b_partner)
        perm = sigma[:, alpha]
        label = np.broadcast_to(idx, perm.shape).copy()
        for _ in range(rounds):
            label = np.minimum(label, np.take_along_axis(label, perm, axis=1))
            perm = np.take_along_axis(perm, perm, axis=1)
        cycles = (label == idx).sum(axis=1)
        loops = cycles // 2 + d.free_loops
        a_count = bits.sum(axis=1)
        diff = 2 * a_count - n
        keys, mult = np.unique(np.stack([diff, loops], axis=1), axis=0, return_counts=True)
        for (k_diff, k_loops), c in zip(keys.tolist(), mult.tolist()):
            counts[(k_diff, k_loops)] += c
    return counts


def _bracket_counts_unionfind(d: Diagram) -> Counter:
    # plain per-state union-find; reference route for the vectorized engine
    n = len(d.crossings)
    counts: Counter = Counter()
    arcs = [x.arcs for x in d.crossings]
    for state in range(1 << n):
        parent = {}

        def find(u):
            while parent.setdefault(u, u) != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        diff = 0
        for i, (a, b, c, e) in enumerate(arcs):
            if state >> i & 1:
                pairs = ((a, b), (c, e))
                diff += 1
            else:
                pairs = ((a, e), (b, c))
                diff -= 1
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(u) for u in list(parent)}) + d.free_loops
        counts[(diff, loops)] += 1
    return counts


def _bracket_counts_shadow(d: Diagram) -> Counter:
    # walks every state through Shadow.smooth; slowest, used as a cross-check
    counts: Counter = Counter()
    n = len(d.crossings)
    for state in range(1 << n):
        s = Shadow.of(d)
        for i in range(n):
            s = s.smooth(i, "A" if state >> i & 1 else "B")
        counts[(s.a_minus_b, s.loops())] += 1
    return counts


_LOOP_FACTOR = LaurentPoly({4: -1, -4: -1})  # -A^2 - A^-2 (doubled exponents)


def bracket_from_counts(counts: Counter) -> LaurentPoly:
    total = LaurentPoly()
    powers = {1: ONE}
    for (diff, loops), mult in sorted(counts.items()):
        if loops not in powers:
            powers[loops] = _LOOP_FACTOR ** (loops - 1)
        total = total + LaurentPoly({2 * diff: mult}) * powers[loops]
    return total


def kauffman_bracket(d: Diagram, workers: int | None = None, method: str = "vectorized") -> LaurentPoly:
    """Kauffman bracket in ``A`` (unknot normalized to 1)."""
    if not d.crossings and d.free_loops == 0:
        raise DiagramError("empty diagram with no components")
    if method == "unionfind":
        return bracket_from_counts(_bracket_counts_unionfind(d))
    if method == "shadow":
        return bracket_from_counts(_bracket_counts_shadow(d))
    if method != "vectorized":
        raise ValueError(f"unknown bracket method {method!r}")
    total = 1 << len(d.crossings)
    if not workers or workers <= 1 or total <= 4 * _BLOCK:
        return bracket_from_counts(bracket_state_counts(d))
    step = -(-total // workers)
    counts: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(bracket_state_counts, d, lo, lo + step) for lo in range(0, total, step)]
        for f in futures:
            counts.update(f.result())
    return bracket_from_counts(counts)


def _bracket_to_jones(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    # f = (-A^3)^(-w) <D>, then A^k -> t^(-k/4)
    f = bracket.shift(-6 * writhe)
    if writhe % 2:
        f = -f
    out = {}
    for key, c in f.doubled_terms.items():
        # key = 2k for A^k; t-doubled exponent is -k/2 = -key/4
        if key % 4:
            raise InvariantError("bracket exponents inconsistent with a link diagram")
        out[-key // 4] = c
    return LaurentPoly(out)


def jones(d: Diagram, workers: int | None = None, method: str = "vectorized") -> LaurentPoly:
    """Jones polynomial in ``t`` (half-integer exponents for even-component links)."""
    return _bracket_to_jones(kauffman_bracket(d, workers=workers, method=method), d.writhe)


# ---------------------------------------------------------------------------
# unknot detection


class UnknotCertificate(enum.Enum):
    TRIVIALLY_CERTIFIED = "TriviallyCertified"
    POLYNOMIAL_TRIVIAL = "PolynomialTrivial"
    NONTRIVIAL_POLYNOMIAL = "NontrivialPolynomial"

    @property
    def looks_trivial(self) -> bool:
        return self is not UnknotCertificate.NONTRIVIAL_POLYNOMIAL


def unknot_certificate(d: Diagram) -> UnknotCertificate:
    """Reidemeister I/II reduction first; otherwise polynomial evidence only."""
    _require_knot(d, "unknot certificate")
    reduced = simplify(d)
    if not reduced.crossings:
        return UnknotCertificate.TRIVIALLY_CERTIFIED
    if alexander(reduced) != ONE:
        return UnknotCertificate.NONTRIVIAL_POLYNOMIAL
    if jones(reduced) != ONE:
        return UnknotCertificate.NONTRIVIAL_POLYNOMIAL
    return UnknotCertificate.POLYNOMIAL_TRIVIAL

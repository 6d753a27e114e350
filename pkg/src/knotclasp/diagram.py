"""Oriented knot and link diagrams.

Diagrams are read from planar-diagram (PD) codes in the KnotAtlas text
convention: ``X[a,b,c,d]`` lists the four arcs at a crossing counterclockwise,
starting from the incoming under-strand, and arc labels increase by one along
the orientation of each component (wrapping around within the component).

A :class:`Diagram` keeps the PD labels it was built from together with the
direction of every over-strand, so surgeries never have to re-infer
orientation from labels.  Surgeries (crossing change, smoothings, twist
insertion, connected sum, Reidemeister simplification) return new diagrams
whose arcs are relabelled canonically.

Crossingless split unknotted components are tracked as ``free_loops``; they
cannot be written in PD notation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import networkx as nx

__all__ = [
    "DiagramError",
    "PdParseError",
    "MalformedTokenError",
    "LabelMultiplicityError",
    "NonContiguousLabelsError",
    "DtParseError",
    "NonRealizableError",
    "OrientationError",
    "CrossingIndexError",
    "PdCode",
    "Crossing",
    "Diagram",
    "Shadow",
    "TwistSite",
    "parse_pd",
    "parse_dt",
    "orient",
    "crossing_change",
    "smooth_oriented",
    "smooth_kauffman",
    "insert_twists",
    "mirror",
    "connected_sum",
    "seifert_circles",
    "seifert_genus",
    "simplify",
]


class DiagramError(ValueError):
    """Base class for invalid diagram input or surgery requests."""


class PdParseError(DiagramError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at character {position})"
        super().__init__(message)
        self.position = position


class MalformedTokenError(PdParseError):
    pass


class LabelMultiplicityError(PdParseError):
    pass


class NonContiguousLabelsError(PdParseError):
    pass


class DtParseError(DiagramError):
    pass


class NonRealizableError(DtParseError):
    pass


class CrossingIndexError(DiagramError, IndexError):
    pass


class OrientationError(DiagramError):
    pass


# ---------------------------------------------------------------------------
# PD codes


@dataclass(frozen=True)
class PdCode:
    """Validated PD code: a tuple of 4-tuples of arc labels 1..2n."""

    crossings: tuple[tuple[int, int, int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.crossings)

    def to_text(self) -> str:
        return " ".join("X[{},{},{},{}]".format(*x) for x in self.crossings)

    def __str__(self) -> str:
        return self.to_text()


_PD_TOKEN = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def _validate_labels(crossings: Sequence[tuple[int, int, int, int]], allow_kinks: bool = False) -> None:
    counts: dict[int, int] = {}
    for x in crossings:
        if not allow_kinks and len(set(x)) < 4:
            raise LabelMultiplicityError(f"arc label repeated within X{list(x)} (a kink; pass allow_kinks=True)")
        for label in x:
            counts[label] = counts.get(label, 0) + 1
    for label, k in sorted(counts.items()):
        if k != 2:
            raise LabelMultiplicityError(f"arc {label} appears {k} times, expected 2")
    expected = set(range(1, 2 * len(crossings) + 1))
    if set(counts) != expected:
        missing = sorted(expected - set(counts))
        extra = sorted(set(counts) - expected)
        raise NonContiguousLabelsError(
            f"labels must be exactly 1..{2 * len(crossings)}; missing {missing}, unexpected {extra}"
        )


def parse_pd(text: str, allow_kinks: bool = False) -> PdCode:
    """Parse whitespace-separated ``X[a,b,c,d]`` tokens.

    A label used twice by one crossing describes a Reidemeister-I kink.
    Tables never contain those, so they are rejected unless ``allow_kinks``.
    """
    crossings = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _PD_TOKEN.match(text, pos)
        if m is None:
            raise MalformedTokenError("expected a token of the form X[a,b,c,d]", pos)
        values = tuple(int(v) for v in m.groups())
        if min(values) < 1:
            raise MalformedTokenError("arc labels must be positive", pos)
        crossings.append(values)
        pos = m.end()
        if pos < n and not text[pos].isspace():
            raise MalformedTokenError("tokens must be separated by whitespace", pos)
    _validate_labels(crossings, allow_kinks)
    return PdCode(tuple(crossings))


# ---------------------------------------------------------------------------
# DT codes


def _parse_dt_numbers(text: str) -> list[int]:
    cleaned = text.replace(",", " ").replace("[", " ").replace("]", " ")
    values = []
    for tok in cleaned.split():
        try:
            values.append(int(tok))
        except ValueError:
            raise DtParseError(f"non-integer DT entry {tok!r}") from None
    for v in values:
        if v == 0 or v % 2:
            raise DtParseError(f"DT entries must be non-zero even integers, got {v}")
    n = len(values)
    if sorted(abs(v) for v in values) != list(range(2, 2 * n + 1, 2)):
        raise DtParseError("DT entries must be a signed permutation of 2, 4, ..., 2n")
    return values


def parse_dt(text: str) -> PdCode:
    """Realize a Dowker-Thistlethwaite code as a PD code.

    A positive even entry means the even-numbered visit to that crossing is
    the under-pass.  The planar embedding is found with a planarity test on
    the projection graph, where every crossing is replaced by a wheel so that
    each strand must pass straight through.  Any valid embedding is accepted,
    so the result is determined only up to mirror image (and, for composite
    knots, up to the usual DT ambiguity).
    """
    values = _parse_dt_numbers(text)
    n = len(values)
    if n == 0:
        return PdCode(())
    visit_crossing: dict[int, int] = {}
    visit_is_over: dict[int, bool] = {}
    for i, even in enumerate(values):
        odd = 2 * i + 1
        visit_crossing[odd] = i
        visit_crossing[abs(even)] = i
        even_under = even > 0
        visit_is_over[abs(even)] = not even_under
        visit_is_over[odd] = even_under

    def port(v: int, incoming: bool) -> tuple:
        base = 0 if v % 2 else 1
        return ("q", visit_crossing[v], base if incoming else base + 2)

    g = nx.Graph()
    for c in range(n):
        for j in range(4):
            g.add_edge(("h", c), ("q", c, j))
            g.add_edge(("q", c, j), ("q", c, (j + 1) % 4))
    for k in range(1, 2 * n + 1):
        nxt = k % (2 * n) + 1
        g.add_edge(port(k, incoming=False), ("m", k))
        g.add_edge(("m", k), port(nxt, incoming=True))
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NonRealizableError(f"DT code {text!r} is not realizable by a planar diagram")

    # arc k runs from visit k to visit k+1
    port_arc: dict[tuple, int] = {}
    for v in range(1, 2 * n + 1):
        port_arc[port(v, incoming=True)] = 2 * n if v == 1 else v - 1
        port_arc[port(v, incoming=False)] = v
    crossings = []
    for c in range(n):
        cw = [p for p in emb.neighbors_cw_order(("h", c))]
        ccw = [cw[0]] + cw[:0:-1]
        under_visit = next(v for v, cc in visit_crossing.items() if cc == c and not visit_is_over[v])
        start = ccw.index(port(under_visit, incoming=True))
        ordered = ccw[start:] + ccw[:start]
        crossings.append(tuple(port_arc[p] for p in ordered))
    pd = PdCode(tuple(crossings))
    _validate_labels(pd.crossings, allow_kinks=True)
    return pd


# ---------------------------------------------------------------------------
# oriented diagrams


@dataclass(frozen=True)
class Crossing:
    """One crossing: arcs CCW from the incoming under-strand.

    ``over_in`` is the position (1 or 3) where the over-strand enters.
    """

    arcs: tuple[int, int, int, int]
    over_in: int

    @property
    def over_out(self) -> int:
        return (self.over_in + 2) % 4

    @property
    def sign(self) -> int:
        return 1 if self.over_in == 3 else -1

    @property
    def under_in_arc(self) -> int:
        return self.arcs[0]

    @property
    def under_out_arc(self) -> int:
        return self.arcs[2]

    @property
    def over_in_arc(self) -> int:
        return self.arcs[self.over_in]

    @property
    def over_out_arc(self) -> int:
        return self.arcs[self.over_out]

    def is_incoming(self, position: int) -> bool:
        return position == 0 or position == self.over_in


class _UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    # basic data -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(x.sign for x in self.crossings)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def slots(self) -> dict[int, list[tuple[int, int]]]:
        """Arc label -> the two (crossing, position) slots where it ends."""
        out: dict[int, list[tuple[int, int]]] = {}
        for i, x in enumerate(self.crossings):
            for p, label in enumerate(x.arcs):
                out.setdefault(label, []).append((i, p))
        return out

    def other_slot(self, i: int, p: int) -> tuple[int, int]:
        label = self.crossings[i].arcs[p]
        a, b = self.slots[label]
        return b if a == (i, p) else a

    def _trace(self, i: int, p: int) -> list[tuple[int, int]]:
        """Incoming slots visited by the strand entering crossing i at p."""
        seen = []
        start = (i, p)
        cur = start
        while True:
            seen.append(cur)
            ci, cp = cur
            cur = self.other_slot(ci, (cp + 2) % 4)
            if cur == start:
                return seen

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Arc labels of each traced component, in orientation order."""
        done: set[tuple[int, int]] = set()
        comps = []
        for i, x in enumerate(self.crossings):
            for p in (0, x.over_in):
                if (i, p) in done:
                    continue
                path = self._trace(i, p)
                done.update(path)
                comps.append(tuple(self.crossings[ci].arcs[cp] for ci, cp in path))
        return tuple(comps)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    def component_of_arc(self) -> dict[int, int]:
        return {label: k for k, comp in enumerate(self.components) for label in comp}

    def to_pd(self) -> PdCode:
        return PdCode(tuple(x.arcs for x in self.crossings))

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as cycles of corners; corner (i, p) lies between positions p and p+1."""
        seen: set[tuple[int, int]] = set()
        out = []
        for i in range(len(self.crossings)):
            for p in range(4):
                if (i, p) in seen:
                    continue
                face = []
                cur = (i, p)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    ci, cp = cur
                    cur = self.other_slot(ci, (cp + 1) % 4)
                out.append(face)
        return out

    # surgeries ------------------------------------------------------------

    def crossing_change(self, i: int) -> "Diagram":
        return crossing_change(self, i)

    def smooth_oriented(self, i: int) -> "Diagram":
        return smooth_oriented(self, i)

    def smooth_kauffman(self, i: int, kind: str) -> "Shadow":
        return smooth_kauffman(self, i, kind)

    def mirror(self) -> "Diagram":
        return mirror(self)


def _rebuild(
    raw: Sequence[tuple[tuple[Hashable, Hashable, Hashable, Hashable], int]],
    merges: Iterable[tuple[Hashable, Hashable]] = (),
    dropped_labels: Iterable[Hashable] = (),
    free_loops: int = 0,
) -> Diagram:
    """Merge arc labels, count vanished loops and relabel canonically.

    ``raw`` holds (arcs, over_in) pairs with arbitrary hashable labels.
    ``dropped_labels`` are labels of removed crossings; every merged class
    among them that no longer touches a crossing becomes a free loop.
    """
    uf = _UnionFind()
    for a, b in merges:
        uf.union(a, b)
    crossings = [(tuple(uf.find(l) for l in arcs), oi) for arcs, oi in raw]
    alive = {l for arcs, _ in crossings for l in arcs}
    vanished = {uf.find(l) for l in dropped_labels} - alive
    free_loops += len(vanished)

    slots: dict[Hashable, list[tuple[int, int]]] = {}
    for i, (arcs, _) in enumerate(crossings):
        for p, l in enumerate(arcs):
            slots.setdefault(l, []).append((i, p))
    for l, s in slots.items():
        if len(s) != 2:
            raise DiagramError(f"internal: label {l!r} has {len(s)} ends")

    def other(i: int, p: int) -> tuple[int, int]:
        a, b = slots[crossings[i][0][p]]
        return b if a == (i, p) else a

    new_label: dict[Hashable, int] = {}
    for i, (arcs, oi) in enumerate(crossings):
        for p in (0, oi):
            label = arcs[p]
            ci, cp = i, p
            while label not in new_label:
                new_label[label] = len(new_label) + 1
                label = crossings[ci][0][(cp + 2) % 4]
                ci, cp = other(ci, (cp + 2) % 4)
    out = tuple(
        Crossing(tuple(new_label[l] for l in arcs), oi) for arcs, oi in crossings
    )
    return Diagram(out, free_loops)


# ---------------------------------------------------------------------------
# orientation


def orient(pd: PdCode) -> Diagram:
    """Infer strand directions and crossing signs from PD arc numbering."""
    xs = pd.crossings
    if not xs:
        return Diagram((), free_loops=1)
    _validate_labels(xs, allow_kinks=True)
    slots: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(xs):
        for p, label in enumerate(x):
            slots.setdefault(label, []).append((i, p))

    def other(i: int, p: int) -> tuple[int, int]:
        a, b = slots[xs[i][p]]
        return b if a == (i, p) else a

    over_in: dict[int, int] = {}
    visited: set[tuple[int, int]] = set()
    for i in range(len(xs)):
        for p in range(4):
            if (i, p) in visited:
                continue
            # passes as (crossing, entry position), traced in an arbitrary direction
            passes = []
            cur = (i, p)
            while cur not in visited:
                ci, cp = cur
                visited.add(cur)
                visited.add((ci, (cp + 2) % 4))
                passes.append(cur)
                cur = other(ci, (cp + 2) % 4)
            labels = [xs[ci][cp] for ci, cp in passes]
            lo, hi = min(labels), max(labels)
            if sorted(labels) != list(range(lo, hi + 1)):
                raise OrientationError(
                    f"component with arcs {sorted(labels)} is not numbered contiguously"
                )

            def succ(x: int) -> int:
                return lo if x == hi else x + 1

            forward = passes
            backward = [(ci, (cp + 2) % 4) for ci, cp in reversed(passes)]
            chosen = None
            for cand in (forward, backward):
                ok = True
                for ci, cp in cand:
                    if cp == 2:
                        ok = False
                        break
                    if xs[ci][(cp + 2) % 4] != succ(xs[ci][cp]):
                        ok = False
                        break
                if ok:
                    chosen = cand
                    break
            if chosen is None:
                raise OrientationError(
                    f"arc numbering of component {sorted(labels)} is inconsistent with any orientation"
                )
            for ci, cp in chosen:
                if cp in (1, 3):
                    over_in[ci] = cp
    crossings = tuple(Crossing(tuple(x), over_in[i]) for i, x in enumerate(xs))
    return Diagram(crossings, 0)


def _check_index(d: Diagram, i: int) -> None:
    if not 0 <= i < len(d.crossings):
        raise CrossingIndexError(f"crossing index {i} out of range for {len(d.crossings)} crossings")


def crossing_change(d: Diagram, i: int) -> Diagram:
    """Swap over and under at crossing ``i``; labels are kept."""
    _check_index(d, i)
    x = d.crossings[i]
    a, b, c, e = x.arcs
    if x.over_in == 3:
        new = Crossing((e, a, b, c), 1)
    else:
        new = Crossing((b, c, e, a), 3)
    return Diagram(d.crossings[:i] + (new,) + d.crossings[i + 1:], d.free_loops)


def mirror(d: Diagram) -> Diagram:
    out = d
    for i in range(len(d.crossings)):
        out = crossing_change(out, i)
    return out


def _raw(d: Diagram) -> list[tuple[tuple[int, int, int, int], int]]:
    return [(x.arcs, x.over_in) for x in d.crossings]


def smooth_oriented(d: Diagram, i: int) -> Diagram:
    """Orientation-respecting smoothing of crossing ``i`` (the L0 of a skein triple)."""
    _check_index(d, i)
    x = d.crossings[i]
    raw = _raw(d)
    del raw[i]
    merges = [(x.under_in_arc, x.over_out_arc), (x.over_in_arc, x.under_out_arc)]
    return _rebuild(raw, merges, x.arcs, d.free_loops)


@dataclass(frozen=True)
class Shadow:
    """Unoriented partial Kauffman state of a diagram.

    ``choices[i]`` is ``None`` for an unresolved crossing, else ``"A"`` or
    ``"B"``.  The A-smoothing of ``X[a,b,c,d]`` joins a with b and c with d;
    the B-smoothing joins a with d and b with c.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    choices: tuple[str | None, ...]
    free_loops: int = 0

    @classmethod
    def of(cls, d: Diagram) -> "Shadow":
        return cls(tuple(x.arcs for x in d.crossings), (None,) * len(d.crossings), d.free_loops)

    @property
    def unresolved(self) -> list[int]:
        return [i for i, c in enumerate(self.choices) if c is None]

    def smooth(self, i: int, kind: str) -> "Shadow":
        if not 0 <= i < len(self.crossings):
            raise CrossingIndexError(f"crossing index {i} out of range for {len(self.crossings)} crossings")
        if kind not in ("A", "B"):
            raise ValueError(f"smoothing kind must be 'A' or 'B', got {kind!r}")
        if self.choices[i] is not None:
            raise DiagramError(f"crossing {i} is already smoothed")
        choices = list(self.choices)
        choices[i] = kind
        return Shadow(self.crossings, tuple(choices), self.free_loops)

    def loops(self) -> int:
        if self.unresolved:
            raise DiagramError("state still has unresolved crossings")
        uf = _UnionFind()
        for (a, b, c, e), kind in zip(self.crossings, self.choices):
            if kind == "A":
                uf.union(a, b)
                uf.union(c, e)
            else:
                uf.union(a, e)
                uf.union(b, c)
            for label in (a, b, c, e):
                uf.find(label)
        roots = {uf.find(l) for l in uf.parent}
        return len(roots) + self.free_loops

    @property
    def a_minus_b(self) -> int:
        return sum(1 if c == "A" else -1 for c in self.choices if c is not None)


def smooth_kauffman(d: Diagram | Shadow, i: int, kind: str) -> Shadow:
    shadow = d if isinstance(d, Shadow) else Shadow.of(d)
    return shadow.smooth(i, kind)


# ---------------------------------------------------------------------------
# twist insertion


@dataclass(frozen=True)
class TwistSite:
    """A crossing regarded as a one-crossing twist region.

    ``axis`` picks which pair of opposite corners the twist chain runs
    between: ``"vertical"`` stacks crossings between the (a, b) and (d, c)
    sides of ``X[a,b,c,d]``; ``"horizontal"`` between (a, d) and (b, c).
    """

    crossing: int
    axis: str = "vertical"

    def __post_init__(self):
        if self.axis not in ("vertical", "horizontal"):
            raise ValueError(f"axis must be 'vertical' or 'horizontal', got {self.axis!r}")


def insert_twists(d: Diagram, site: TwistSite, k: int) -> Diagram:
    """Add ``k`` signed half-twists to the twist region at ``site``.

    The crossing at ``site`` is replaced by a chain of ``|1 + k|`` crossings;
    positive ``k`` extends the twist in the crossing's own sense and negative
    ``k`` twists back.  The chain starts at the site's crossing index.
    """
    if k == 0:
        _check_index(d, site.crossing)
        return d
    _check_index(d, site.crossing)
    x = d.crossings[site.crossing]
    a, b, c, e = x.arcs
    total = 1 + k
    m = abs(total)
    fresh = lambda side, j: ("twist", side, j)  # noqa: E731

    if site.axis == "vertical":
        left = [a] + [fresh("L", j) for j in range(2, m + 1)] + [e]
        right = [b] + [fresh("R", j) for j in range(2, m + 1)] + [c]
        corners = [(left[j], right[j], right[j + 1], left[j + 1]) for j in range(m)]
        straight = [(a, e), (b, c)]
    else:
        bottom = [a] + [fresh("B", j) for j in range(2, m + 1)] + [b]
        top = [e] + [fresh("T", j) for j in range(2, m + 1)] + [c]
        corners = [(bottom[j], bottom[j + 1], top[j + 1], top[j]) for j in range(m)]
        straight = [(a, b), (e, c)]

    inflow = {a, x.over_in_arc}
    raw = _raw(d)
    if m == 0:
        for p, q in straight:
            if (p in inflow) == (q in inflow):
                raise OrientationError("twist count incompatible with strand orientations")
        del raw[site.crossing]
        return _rebuild(raw, straight, x.arcs, d.free_loops)

    # orient the chain by tracing each strand from its external ends
    slot_of: dict[Hashable, list[tuple[int, int]]] = {}
    for j, cs in enumerate(corners):
        for p, label in enumerate(cs):
            slot_of.setdefault(label, []).append((j, p))
    external = {a, b, c, e}
    incoming: set[tuple[int, int]] = set()
    for start_label in external:
        (j, p), = [s for s in slot_of[start_label]]
        if start_label not in inflow:
            continue
        while True:
            incoming.add((j, p))
            out_label = corners[j][(p + 2) % 4]
            if out_label in external:
                if out_label in inflow:
                    raise OrientationError("twist count incompatible with strand orientations")
                break
            (j, p), = [s for s in slot_of[out_label] if s != (j, (p + 2) % 4)]
    under_diag = (0, 2) if total > 0 else (1, 3)
    chain = []
    for j, cs in enumerate(corners):
        u_in = next(p for p in under_diag if (j, p) in incoming)
        o_in = next(p for p in (0, 1, 2, 3) if p not in under_diag and (j, p) in incoming)
        rotated = tuple(cs[(u_in + r) % 4] for r in range(4))
        chain.append((rotated, (o_in - u_in) % 4))
    raw[site.crossing:site.crossing + 1] = chain
    return _rebuild(raw, (), (), d.free_loops)


# ---------------------------------------------------------------------------
# connected sum


def _head_tail(d: Diagram, label: int) -> tuple[tuple[int, int], tuple[int, int]]:
    s1, s2 = d.slots[label]
    if d.crossings[s1[0]].is_incoming(s1[1]):
        return s1, s2
    return s2, s1


def connected_sum(d1: Diagram, d2: Diagram, arc1: int | None = None, arc2: int | None = None) -> Diagram:
    """Splice two knot diagrams together at the given arcs (default: arc 1 of each)."""
    for name, dd in (("first", d1), ("second", d2)):
        if not dd.is_knot:
            raise DiagramError(f"connected_sum needs knots; the {name} input has {dd.n_components} components")
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    arc1 = 1 if arc1 is None else arc1
    arc2 = 1 if arc2 is None else arc2
    if arc1 not in d1.slots or arc2 not in d2.slots:
        raise DiagramError("arc label not present in diagram")
    n1 = len(d1.crossings)
    raw: list[list] = [[list(x.arcs), x.over_in] for x in d1.crossings]
    raw += [[[("second", l) for l in x.arcs], x.over_in] for x in d2.crossings]
    (h1c, h1p), _ = _head_tail(d1, arc1)
    (h2c, h2p), _ = _head_tail(d2, arc2)
    # arc1's tail now feeds d2's head slot; arc2's tail feeds d1's head slot
    raw[h1c][0][h1p] = ("second", arc2)
    raw[n1 + h2c][0][h2p] = arc1
    return _rebuild([(tuple(arcs), oi) for arcs, oi in raw])


# ---------------------------------------------------------------------------
# Seifert circles


def seifert_circles(d: Diagram) -> int:
    uf = _UnionFind()
    for x in d.crossings:
        uf.union(x.under_in_arc, x.over_out_arc)
        uf.union(x.over_in_arc, x.under_out_arc)
        for label in x.arcs:
            uf.find(label)
    return len({uf.find(l) for l in uf.parent}) + d.free_loops


def seifert_genus(d: Diagram) -> int:
    """Genus of the surface produced by Seifert's algorithm on ``d``."""
    if not d.is_knot:
        raise DiagramError("seifert_genus is defined here for knot diagrams only")
    twice = len(d.crossings) - seifert_circles(d) + 1
    if twice % 2:
        raise DiagramError("internal: odd Euler characteristic for a knot diagram")
    return twice // 2


# ---------------------------------------------------------------------------
# Reidemeister simplification


def _try_r1(d: Diagram) -> Diagram | None:
    for face in d.faces():
        if len(face) != 1:
            continue
        (i, p), = face
        arcs = d.crossings[i].arcs
        loop = arcs[(p + 1) % 4]
        raw = _raw(d)
        del raw[i]
        merges = [(arcs[(p + 2) % 4], loop), (loop, arcs[(p + 3) % 4])]
        return _rebuild(raw, merges, arcs, d.free_loops)
    return None


def _try_r2(d: Diagram) -> Diagram | None:
    for face in d.faces():
        if len(face) != 2:
            continue
        (i, p), (j, q) = face
        if i == j or p % 2 == q % 2:
            continue
        xi, xj = d.crossings[i].arcs, d.crossings[j].arcs
        shared_a, shared_b = xi[p], xi[(p + 1) % 4]
        merges = [
            (xi[(p + 2) % 4], shared_a),
            (shared_a, xj[(q + 3) % 4]),
            (xi[(p + 3) % 4], shared_b),
            (shared_b, xj[(q + 2) % 4]),
        ]
        raw = [r for k, r in enumerate(_raw(d)) if k not in (i, j)]
        return _rebuild(raw, merges, xi + xj, d.free_loops)
    return None


def simplify(d: Diagram) -> Diagram:
    """Greedily apply crossing-reducing Reidemeister I and II moves."""
    while d.crossings:
        nxt = _try_r1(d)
        if nxt is None:
            nxt = _try_r2(d)
        if nxt is None:
            break
        d = nxt
    return d

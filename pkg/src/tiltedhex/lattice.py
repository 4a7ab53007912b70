"""Regions of the triangular lattice and their tilings.

Coordinates: row ``r`` counts unit strips from the top, ``c`` is the
horizontal position of the cell centre in half-edge units.  Cell (r, c) points
up iff ``c - r`` is even.  An up cell (r, c) shares edges with the down cells
(r, c-1), (r, c+1) and (r+1, c).

Lattice points are (X, y) with y the horizontal line index and X in half-edge
units; an up cell (r, c) has corners (c, r), (c-1, r+1), (c+1, r+1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .closedform import HalvedHexParams, HexParams, SemiHexParams, TiltedParams


class Untileable(Exception):
    """Forced-lozenge removal stranded a cell with no partner."""

    def __init__(self, cell):
        self.cell = cell
        super().__init__(f"cell {tuple(cell)} has no admissible partner")


class InvalidTiling(ValueError):
    pass


class TriCell(NamedTuple):
    row: int
    col: int

    @property
    def up(self) -> bool:
        return (self.col - self.row) % 2 == 0

    @property
    def orientation(self) -> str:
        return "U" if self.up else "D"

    def neighbors(self) -> Tuple["TriCell", ...]:
        """Edge-adjacent cells in counter-clockwise order."""
        r, c = self
        if self.up:
            return (TriCell(r, c + 1), TriCell(r, c - 1), TriCell(r + 1, c))
        return (TriCell(r - 1, c), TriCell(r, c - 1), TriCell(r, c + 1))

    def corners(self) -> Tuple[Tuple[int, int], ...]:
        """Lattice points (X, y), counter-clockwise as drawn on screen."""
        r, c = self
        if self.up:
            return ((c, r), (c - 1, r + 1), (c + 1, r + 1))
        return ((c - 1, r), (c, r + 1), (c + 1, r))


def cell_from_json(item) -> TriCell:
    r, c, o = item
    cell = TriCell(int(r), int(c))
    if cell.orientation != o:
        raise ValueError(f"cell {item} has inconsistent orientation")
    return cell


@dataclass(frozen=True)
class Region:
    cells: FrozenSet[TriCell]
    # purely cosmetic: removed dent triangles, drawn black by the renderer
    dents: FrozenSet[TriCell] = field(default=frozenset(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(TriCell(*c) for c in self.cells))
        object.__setattr__(self, "dents", frozenset(TriCell(*c) for c in self.dents))

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    @property
    def up_count(self) -> int:
        return sum(1 for c in self.cells if c.up)

    @property
    def down_count(self) -> int:
        return len(self.cells) - self.up_count

    @property
    def balanced(self) -> bool:
        return 2 * self.up_count == len(self.cells)

    def max_row_width(self) -> int:
        widths: Dict[int, int] = {}
        for c in self.cells:
            widths[c.row] = widths.get(c.row, 0) + 1
        return max(widths.values(), default=0)

    def without(self, cells: Iterable) -> "Region":
        return Region(self.cells - frozenset(TriCell(*c) for c in cells), self.dents)

    def to_json(self) -> list:
        return [[c.row, c.col, c.orientation] for c in sorted(self.cells)]

    @classmethod
    def from_json(cls, data) -> "Region":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(frozenset(cell_from_json(item) for item in data))


ORIENTATIONS = ("left", "right", "vertical")


@dataclass(frozen=True, order=True)
class Lozenge:
    up: TriCell
    down: TriCell

    def __post_init__(self):
        up, down = TriCell(*self.up), TriCell(*self.down)
        if not up.up or down.up or down not in up.neighbors():
            raise ValueError(f"{tuple(up)} and {tuple(down)} do not form a lozenge")
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)

    @classmethod
    def of(cls, a, b) -> "Lozenge":
        a, b = TriCell(*a), TriCell(*b)
        return cls(a, b) if a.up else cls(b, a)

    @property
    def orientation(self) -> str:
        dc = self.down.col - self.up.col
        if self.down.row != self.up.row:
            return "vertical"
        return "right" if dc == 1 else "left"

    @property
    def cells(self) -> Tuple[TriCell, TriCell]:
        return (self.up, self.down)


@dataclass(frozen=True)
class Tiling:
    lozenges: FrozenSet[Lozenge]

    def __post_init__(self):
        object.__setattr__(self, "lozenges", frozenset(self.lozenges))

    def __len__(self) -> int:
        return len(self.lozenges)

    def __iter__(self):
        return iter(sorted(self.lozenges))

    def partner_map(self) -> Dict[TriCell, TriCell]:
        m = {}
        for lz in self.lozenges:
            m[lz.up] = lz.down
            m[lz.down] = lz.up
        return m

    def covered(self) -> FrozenSet[TriCell]:
        return frozenset(c for lz in self.lozenges for c in lz.cells)

    def check(self, region: Region) -> None:
        seen = set()
        for lz in self.lozenges:
            for c in lz.cells:
                if c in seen:
                    raise InvalidTiling(f"cell {tuple(c)} covered twice")
                if c not in region:
                    raise InvalidTiling(f"cell {tuple(c)} lies outside the region")
                seen.add(c)
        if len(seen) != len(region):
            raise InvalidTiling(f"{len(region) - len(seen)} cells left uncovered")

    def to_json(self) -> list:
        return [[[lz.up.row, lz.up.col], [lz.down.row, lz.down.col], lz.orientation] for lz in self]

    @classmethod
    def from_json(cls, data) -> "Tiling":
        return cls(frozenset(Lozenge.of(u, d) for u, d, *_ in data))


# ---------------------------------------------------------------- builders

def _strip_region(top_width: int, west: Sequence[int], east: Sequence[int],
                  dent_rows: Iterable[int] = ()) -> Tuple[Region, List[int]]:
    """Region bounded by a horizontal top edge and two polyline sides.

    ``west``/``east`` hold, per unit strip, the horizontal shift (in half
    units) of the side from the strip's top edge to its bottom edge.  The
    leftmost up cell of each row in ``dent_rows`` is cut out.  Also returns the
    left end of each strip's top edge.
    """
    assert len(west) == len(east)
    dent_rows = set(dent_rows)
    cells, dents, left = set(), set(), []
    xl, xr = 0, 2 * top_width
    for r, (dw, de) in enumerate(zip(west, east)):
        xlb, xrb = xl + dw, xr + de
        left.append(xl)
        row = []
        for c in range(min(xl, xlb) - 1, max(xr, xrb) + 2):
            if (c - r) % 2 == 0:
                top, bot = (c, c), (c - 1, c + 1)
            else:
                top, bot = (c - 1, c + 1), (c, c)
            if xl <= top[0] and top[1] <= xr and xlb <= bot[0] and bot[1] <= xrb:
                row.append(TriCell(r, c))
        if r in dent_rows:
            if not row or row[0] != (r, xl) or not row[0].up:
                raise AssertionError(f"no corner up cell to dent in row {r}")
            dents.add(row[0])
            row = row[1:]
        cells.update(row)
        xl, xr = xlb, xrb
    left.append(xl)
    return Region(frozenset(cells), frozenset(dents)), left


def build_hexagon(p: HexParams) -> Region:
    """Sides a, b, c, a, b, c counter-clockwise from the north side."""
    west = [-1] * p.b + [1] * p.c
    east = [1] * p.c + [-1] * p.b
    return _strip_region(p.a, west, east)[0]


def build_semihexagon(p: SemiHexParams) -> Region:
    """Trapezoid with top a, legs b, base a+b; up cells s_i of the base row removed."""
    region, _ = _strip_region(p.a, [-1] * p.b, [1] * p.b)
    if p.b == 0:
        return region
    base = sorted(c for c in region.cells if c.row == p.b - 1 and c.up)
    dents = frozenset(base[i - 1] for i in p.s)
    return Region(region.cells - dents, dents)


class TiltedOutline(NamedTuple):
    west: Tuple[int, ...]
    east: Tuple[int, ...]
    level_rows: Dict[int, int]  # staircase level -> row of its rise
    left: Tuple[int, ...]       # left end of each strip's top edge


def tilted_outline(p: TiltedParams) -> TiltedOutline:
    """Side polylines of the tilted region.

    The staircase runs down the west side: level j (from h+l at the top to 1)
    is one rising strip followed by k strips parallel to the south-west side.
    The east side is B strips going down-right then l strips going down-left,
    with B = h(k+1) + (l-1)k + t, or B = t when there are no levels.
    """
    k, n, l = p.k, p.n, p.l
    west, level_rows = [], {}
    for j in range(n, 0, -1):
        level_rows[j] = len(west)
        west.append(-1)
        if j > 1:
            west += [1] * k
    west += [1] * p.t
    big = p.h * (k + 1) + (l - 1) * k + p.t if n else p.t
    east = [1] * big + [-1] * l
    xl, left = 0, []
    for dw in west:
        left.append(xl)
        xl += dw
    left.append(xl)
    return TiltedOutline(tuple(west), tuple(east), level_rows, tuple(left))


def build_tilted_region(p: TiltedParams) -> Region:
    o = tilted_outline(p)
    dent_rows = [o.level_rows[j] for j in p.b]
    return _strip_region(p.x, o.west, o.east, dent_rows)[0]


def build_halved_hexagon(p: HalvedHexParams) -> Region:
    """Hexagon (c, a, a+b-c, c, a, a+b-c) with its west staircase cut off.

    The cut replaces the north-west side and the top a-1 strips of the
    south-west side by a zigzag of unit steps.  With a = 0 nothing is cut and
    the region is the c by (b-c) parallelogram.
    """
    a, b, c = p.a, p.b, p.c
    hexagon = build_hexagon(HexParams(c, a, a + b - c)) if a else build_hexagon(HexParams(c, 0, b - c))
    if a == 0:
        return hexagon
    zigzag = ([-1, 1] * a)[:-1] + [1] * (b - c + 1)
    east = [1] * (a + b - c) + [-1] * a
    kept, _ = _strip_region(c, zigzag, east)
    return Region(hexagon.cells & kept.cells)


# ------------------------------------------------------- forced lozenges

def remove_forced(region: Region) -> Tuple[Region, int]:
    """Strip lozenges forced by degree-one cells until none remain."""
    cells = set(region.cells)
    removed = 0
    stack = sorted(cells)
    while stack:
        cell = stack.pop()
        if cell not in cells:
            continue
        nbrs = [nb for nb in cell.neighbors() if nb in cells]
        if not nbrs:
            raise Untileable(cell)
        if len(nbrs) == 1:
            mate = nbrs[0]
            cells.discard(cell)
            cells.discard(mate)
            removed += 1
            stack.extend(nb for nb in mate.neighbors() if nb in cells)
            stack.extend(nb for nb in cell.neighbors() if nb in cells)
    return Region(frozenset(cells), region.dents), removed


# ------------------------------------------------------------ dual graph

@dataclass(frozen=True)
class MatchGraph:
    """Dual graph of a region.  ``adj`` lists neighbours in rotation order."""

    v1: Tuple[TriCell, ...]
    v2: Tuple[TriCell, ...]
    adj: Dict[TriCell, Tuple[TriCell, ...]] = field(compare=False, hash=False)

    @property
    def vertices(self) -> Tuple[TriCell, ...]:
        return self.v1 + self.v2

    def edges(self) -> List[Tuple[TriCell, TriCell]]:
        return [(u, v) for u in self.v1 for v in self.adj[u]]

    def __len__(self) -> int:
        return len(self.v1) + len(self.v2)

    def remove(self, vertices: Iterable) -> "MatchGraph":
        gone = {TriCell(*v) for v in vertices}
        return dual_graph(Region(frozenset(self.vertices) - gone))


def dual_graph(region: Region) -> MatchGraph:
    cells = region.cells
    adj = {c: tuple(nb for nb in c.neighbors() if nb in cells) for c in sorted(cells)}
    v1 = tuple(c for c in adj if c.up)
    v2 = tuple(c for c in adj if not c.up)
    return MatchGraph(v1, v2, adj)


# ---------------------------------------------------- lattice symmetries

def _to_axial(X: int, y: int) -> Tuple[int, int]:
    return (X + y) // 2, y


def _from_axial(i: int, j: int) -> Tuple[int, int]:
    return 2 * i - j, j


def _rot60(i: int, j: int) -> Tuple[int, int]:
    return i - j, i


def _reflect(i: int, j: int) -> Tuple[int, int]:
    return j - i, j


def _cell_from_corners(pts) -> TriCell:
    ys = sorted(y for _, y in pts)
    top = ys[0]
    if ys[1] == top:  # two corners on top: down cell
        (X, y), = [p for p in pts if p[1] != top]
        return TriCell(top, X)
    (X, y), = [p for p in pts if p[1] == top]
    return TriCell(top, X)


def _transform(cells, rot: int, flip: bool) -> List[TriCell]:
    out = []
    for cell in cells:
        pts = []
        for X, y in cell.corners():
            i, j = _to_axial(X, y)
            if flip:
                i, j = _reflect(i, j)
            for _ in range(rot):
                i, j = _rot60(i, j)
            pts.append(_from_axial(i, j))
        out.append(_cell_from_corners(pts))
    return out


def _normalize(cells: List[TriCell]) -> Tuple[TriCell, ...]:
    if not cells:
        return ()
    dr = -min(c.row for c in cells)
    dc = -min(c.col for c in cells)
    if (dc - dr) % 2:
        dc += 1
    return tuple(sorted(TriCell(c.row + dr, c.col + dc) for c in cells))


def canonical_form(region: Region) -> Tuple[TriCell, ...]:
    cells = list(region.cells)
    return min(_normalize(_transform(cells, rot, flip)) for rot in range(6) for flip in (False, True))


def congruent(r1: Region, r2: Region) -> bool:
    if len(r1) != len(r2):
        return False
    target = _normalize(list(r2.cells))
    cells = list(r1.cells)
    return any(_normalize(_transform(cells, rot, flip)) == target
               for rot in range(6) for flip in (False, True))


# -------------------------------------------------------------- faces

_SQRT3 = math.sqrt(3.0)


def _point_xy(X: int, y: int) -> Tuple[float, float]:
    # upward y so that positive angles turn counter-clockwise
    return X / 2.0, -y * _SQRT3 / 2.0


def _center_xy(cell: TriCell) -> Tuple[float, float]:
    pts = [_point_xy(*p) for p in cell.corners()]
    return sum(p[0] for p in pts) / 3.0, sum(p[1] for p in pts) / 3.0


def _angle(origin, target) -> float:
    return math.atan2(target[1] - origin[1], target[0] - origin[0])


def cells_at_point(X: int, y: int) -> Tuple[TriCell, ...]:
    return (TriCell(y, X), TriCell(y - 1, X + 1), TriCell(y - 1, X - 1),
            TriCell(y - 1, X), TriCell(y, X + 1), TriCell(y, X - 1))


def _ccw_edges(cell: TriCell):
    pts = [_point_xy(*p) for p in cell.corners()]
    corners = list(cell.corners())
    # orient corners counter-clockwise in the upward-y frame
    area = sum(pts[i][0] * pts[(i + 1) % 3][1] - pts[(i + 1) % 3][0] * pts[i][1] for i in range(3))
    if area < 0:
        corners.reverse()
    return [(corners[i], corners[(i + 1) % 3]) for i in range(3)]


def boundary_walks(cells: FrozenSet[TriCell]) -> List[List[TriCell]]:
    """Cyclic sequences of cells met along each boundary component.

    Every cell touching the boundary, even at a single corner, shows up; a
    cell may repeat if the boundary passes it more than once.
    """
    out_edges: Dict[Tuple[int, int], List[Tuple[Tuple[int, int], TriCell]]] = {}
    for cell in cells:
        for (p, q), nb in zip(_ccw_edges(cell), _edge_neighbors(cell)):
            if nb not in cells:
                out_edges.setdefault(p, []).append((q, cell))
    unused = {(p, q) for p, lst in out_edges.items() for q, _ in lst}
    walks = []
    while unused:
        start = min(unused)
        p, q = start
        walk: List[TriCell] = []
        cur = start
        while True:
            unused.discard(cur)
            p, q = cur
            cell = next(c for qq, c in out_edges[p] if qq == q)
            # pick the next edge from q by the smallest counter-clockwise turn
            back = _angle(_point_xy(*q), _point_xy(*p))
            best, best_turn = None, None
            for r, _c in out_edges.get(q, ()):
                turn = (_angle(_point_xy(*q), _point_xy(*r)) - back) % (2 * math.pi)
                if best_turn is None or turn < best_turn:
                    best, best_turn = (q, r), turn
            # cells around q between the two edges, swept clockwise from back
            qxy = _point_xy(*q)
            fan = []
            for c in cells_at_point(*q):
                if c in cells:
                    turn = (_angle(qxy, _center_xy(c)) - back) % (2 * math.pi)
                    if turn > best_turn:
                        fan.append((-turn, c))
            walk.append(cell)
            walk.extend(c for _, c in sorted(fan))
            cur = best
            if cur == start:
                break
        dedup = [c for i, c in enumerate(walk) if c != walk[i - 1]] if len(walk) > 1 else walk
        walks.append(dedup)
    return walks


def _edge_neighbors(cell: TriCell) -> Tuple[TriCell, ...]:
    """Neighbour across each edge, in the order returned by _ccw_edges."""
    out = []
    nbrs = cell.neighbors()
    for p, q in _ccw_edges(cell):
        for nb in nbrs:
            if p in nb.corners() and q in nb.corners():
                out.append(nb)
                break
    return tuple(out)


def inner_faces(cells: FrozenSet[TriCell]) -> List[List[TriCell]]:
    """Hexagonal faces of the dual graph around fully interior lattice points."""
    points = {p for c in cells for p in c.corners()}
    faces = []
    for X, y in sorted(points):
        ring = cells_at_point(X, y)
        if all(c in cells for c in ring):
            pxy = _point_xy(X, y)
            faces.append(sorted(ring, key=lambda c: _angle(pxy, _center_xy(c))))
    return faces


def region_json(region: Region) -> str:
    return json.dumps(region.to_json(), separators=(",", ":"))


def find_tilted_match(region: Region, k: int, max_side: int = 6) -> Optional[TiltedParams]:
    """Search small tilted parameter sets for one whose region is congruent."""
    from itertools import combinations

    target = canonical_form(region)
    for n in range(max_side + 1):
        for l in range(n + 1):
            for a in combinations(range(1, n + 1), l):
                for x in range(max_side + 1):
                    for t in range(max_side + 1):
                        p = TiltedParams(k, x, t, n - l, a)
                        cand = build_tilted_region(p)
                        if len(cand) == len(region) and canonical_form(cand) == target:
                            return p
    return None


def find_semihexagon_match(region: Region, max_side: int = 8) -> Optional[SemiHexParams]:
    """Search dented trapezoids for one congruent to ``region``."""
    from itertools import combinations

    target = canonical_form(region)
    for b in range(max_side + 1):
        for a in range(max_side + 1):
            if 2 * a * b + b * b - b != len(region):
                continue
            for s in combinations(range(1, a + b + 1), b):
                cand = build_semihexagon(SemiHexParams(a, b, s))
                if len(cand) == len(region) and canonical_form(cand) == target:
                    return SemiHexParams(a, b, s)
    return None

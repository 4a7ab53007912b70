"""Tilings of tilted regions as families of lozenge paths, read off as
plane partitions, plus counters for the matching partition classes.

Both maps work on the region exactly as ``build_tilted_region`` draws it
(staircase on the west side), so no reflection step is needed.

First family (one path per kept level a_p).  Path p starts at the west end of
the strip where level a_p rises and moves east through right lozenges
(one cell pair along the strip) and vertical lozenges (one strip down and half
a step east) until it leaves the region.  Every vertical lozenge is labelled by
a_p - p + 1 plus the number of right lozenges met before it.  Cells off the
paths are covered by left lozenges.

Second family (x = t = 0, one path per dented level b_j).  Path j starts
below the dent and moves down through right and left lozenges; each right
lozenge is labelled by the number of left lozenges before it.  Cells off the
paths are covered by vertical lozenges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .closedform import InvalidParams, TiltedParams
from .lattice import InvalidTiling, Lozenge, Region, Tiling, TriCell, build_tilted_region, tilted_outline


class InvalidPartition(ValueError):
    pass


@dataclass(frozen=True)
class PlanePartition:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data) -> "PlanePartition":
        if isinstance(data, str):
            data = json.loads(data)
        pp = cls(tuple(tuple(int(v) for v in r) for r in data["rows"]))
        if list(pp.shape) != list(data.get("shape", pp.shape)):
            raise InvalidPartition("shape does not match row lengths")
        return pp


@dataclass(frozen=True)
class LozengePath:
    steps: Tuple[str, ...]
    labels: Tuple[int, ...]


# ------------------------------------------------------ shared counting

def count_fillings(shape: Sequence[int],
                   lo: Callable[[int, int], int],
                   hi: Callable[[int, int], int],
                   row_gap: Callable[[int, int], int] = lambda i, j: 0,
                   col_gap: Callable[[int, int], int] = lambda i, j: 0) -> int:
    """Count fillings of a left-justified shape with bounds and gaps.

    Entry (i, j) lies in [lo(i,j), hi(i,j)], is at most T[i][j-1] - row_gap(i,j)
    and at most T[i-1][j] - col_gap(i,j).  Cells are visited column by column
    and the memo key is the latest value in each row, so its length is the
    number of rows rather than the row length.
    """
    if any(u < v for u, v in zip(shape, shape[1:])):
        raise ValueError("shape must be weakly decreasing")
    cells = [(i, j) for j in range(max(shape, default=0)) for i in range(len(shape)) if j < shape[i]]
    if not cells:
        return 1

    @lru_cache(maxsize=None)
    def rec(idx: int, prof: Tuple[int, ...]) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        top = hi(i, j)
        if j > 0:
            top = min(top, prof[i] - row_gap(i, j))
        if i > 0:
            top = min(top, prof[i - 1] - col_gap(i, j))
        total = 0
        for v in range(lo(i, j), top + 1):
            nxt = list(prof)
            nxt[i] = v
            total += rec(idx + 1, _retire(nxt, shape, i, j))
        return total

    try:
        return rec(0, (0,) * len(shape))
    finally:
        rec.cache_clear()


def _retire(prof: List[int], shape: Sequence[int], i: int, j: int) -> Tuple[int, ...]:
    """Blank out profile entries nobody reads again, so equal futures share a key."""
    if i > 0 and shape[i - 1] == j + 1:
        prof[i - 1] = -1
    if shape[i] == j + 1 and (i + 1 == len(shape) or shape[i + 1] <= j):
        prof[i] = -1
    return tuple(prof)


def iter_fillings(shape, lo, hi, row_gap=lambda i, j: 0, col_gap=lambda i, j: 0) -> Iterator[PlanePartition]:
    cells = [(i, j) for i, L in enumerate(shape) for j in range(L)]
    grid = [[0] * L for L in shape]

    def rec(idx):
        if idx == len(cells):
            yield PlanePartition(tuple(tuple(r) for r in grid))
            return
        i, j = cells[idx]
        top = hi(i, j)
        if j > 0:
            top = min(top, grid[i][j - 1] - row_gap(i, j))
        if i > 0:
            top = min(top, grid[i - 1][j] - col_gap(i, j))
        for v in range(lo(i, j), top + 1):
            grid[i][j] = v
            yield from rec(idx + 1)

    yield from rec(0)


# ---------------------------------------------------------- first family

def cor1_shape(p: TiltedParams) -> Tuple[int, ...]:
    l, a = p.l, p.a
    return tuple(p.t + (p.k + 1) * a[l - i] - p.k - (l - i + 1) for i in range(1, l + 1))


def cor1_bounds(p: TiltedParams, literal: bool = False):
    """Per-row (lo, hi) bounds.  The printed cap x+h is one short of what the
    paths can reach; ``literal=True`` keeps it for comparison."""
    l, a = p.l, p.a
    cap = p.x + p.h + (0 if literal else 1)
    return [(a[l - i] - l + i, cap) for i in range(1, l + 1)]


def _cor1_class(p: TiltedParams, literal: bool):
    bounds = cor1_bounds(p, literal)
    return cor1_shape(p), (lambda i, j: bounds[i][0]), (lambda i, j: bounds[i][1])


def enumerate_pp_cor1(p: TiltedParams, literal: bool = False) -> int:
    return count_fillings(*_cor1_class(p, literal))


def iter_pp_cor1(p: TiltedParams) -> Iterator[PlanePartition]:
    return iter_fillings(*_cor1_class(p, False))


def check_pp_cor1(p: TiltedParams, pp: PlanePartition) -> None:
    shape = cor1_shape(p)
    if pp.shape != shape:
        raise InvalidPartition(f"shape {pp.shape} != {shape}")
    for i, (row, (lo, hi)) in enumerate(zip(pp.rows, cor1_bounds(p))):
        if any(not lo <= v <= hi for v in row):
            raise InvalidPartition(f"row {i + 1} leaves [{lo}, {hi}]")
        if any(u < v for u, v in zip(row, row[1:])):
            raise InvalidPartition(f"row {i + 1} is not weakly decreasing")
        if i and any(u < v for u, v in zip(pp.rows[i - 1], row)):
            raise InvalidPartition(f"column condition fails between rows {i} and {i + 1}")


def _cor1_starts(p: TiltedParams) -> List[TriCell]:
    o = tilted_outline(p)
    starts = []
    for ap in p.a:
        r = o.level_rows[ap]
        starts.append(TriCell(r, o.left[r]))
    return starts


def cor1_paths(p: TiltedParams, tiling: Tiling) -> List[LozengePath]:
    mate = tiling.partner_map()
    paths = []
    for idx, cell in enumerate(_cor1_starts(p), 1):
        base = p.a[idx - 1] - idx + 1
        steps, labels, rights = [], [], 0
        while cell in mate:
            other = mate[cell]
            if not cell.up:
                raise InvalidTiling(f"path {idx} reached down cell {tuple(cell)}")
            if other == (cell.row, cell.col + 1):
                steps.append("R")
                rights += 1
                cell = TriCell(cell.row, cell.col + 2)
            elif other == (cell.row + 1, cell.col):
                steps.append("V")
                labels.append(base + rights)
                cell = TriCell(cell.row + 1, cell.col + 1)
            else:
                raise InvalidTiling(f"path {idx} blocked at {tuple(cell)}")
        paths.append(LozengePath(tuple(steps), tuple(labels)))
    return paths


def tiling_to_pp_cor1(p: TiltedParams, tiling: Tiling) -> PlanePartition:
    region = build_tilted_region(p)
    tiling.check(region)
    paths = cor1_paths(p, tiling)
    rows = tuple(tuple(sorted(paths[p.l - i].labels, reverse=True)) for i in range(1, p.l + 1))
    return PlanePartition(rows)


def _fill(region: Region, used: Dict[TriCell, Lozenge], up_side: bool, partner) -> Tiling:
    """Cover every cell not on a path with the single allowed orientation."""
    out = dict(used)
    for cell in sorted(region.cells):
        if cell in out or cell.up != up_side:
            continue
        mate = partner(cell)
        if mate not in region or mate in out:
            raise InvalidPartition(f"no room for a filler lozenge at {tuple(cell)}")
        lz = Lozenge.of(cell, mate)
        out[cell] = out[mate] = lz
    if len(out) != len(region):
        raise InvalidPartition("partition does not determine a tiling")
    return Tiling(frozenset(out.values()))


def pp_to_tiling_cor1(p: TiltedParams, pp: PlanePartition) -> Tiling:
    check_pp_cor1(p, pp)
    region = build_tilted_region(p)
    used: Dict[TriCell, Lozenge] = {}
    for idx, cell in enumerate(_cor1_starts(p), 1):
        base = p.a[idx - 1] - idx + 1
        labels = sorted(pp.rows[p.l - idx])
        rights = 0
        pending = list(labels)
        while cell in region and cell not in used:
            if pending and pending[0] == base + rights:
                pending.pop(0)
                mate, nxt = TriCell(cell.row + 1, cell.col), TriCell(cell.row + 1, cell.col + 1)
            else:
                if pending and pending[0] < base + rights:
                    raise InvalidPartition(f"label {pending[0]} unreachable on path {idx}")
                mate, nxt = TriCell(cell.row, cell.col + 1), TriCell(cell.row, cell.col + 2)
                rights += 1
            if not cell.up or mate not in region or mate in used:
                raise InvalidPartition(f"path {idx} cannot continue at {tuple(cell)}")
            lz = Lozenge.of(cell, mate)
            used[cell] = used[mate] = lz
            cell = nxt
        if pending:
            raise InvalidPartition(f"path {idx} ended before placing labels {pending}")
    tiling = _fill(region, used, True, lambda c: TriCell(c.row, c.col - 1))
    if tiling_to_pp_cor1(p, tiling) != pp:
        raise InvalidPartition("partition is not in the image of the path map")
    return tiling


# --------------------------------------------------------- second family

def complement(h: int, l: int, a: Sequence[int]) -> Tuple[int, ...]:
    kept = set(a)
    return tuple(j for j in range(1, h + l + 1) if j not in kept)


def _cor2_params(h: int, l: int, k: int, a: Sequence[int]) -> TiltedParams:
    if len(a) != l:
        raise InvalidParams(f"expected {l} kept levels, got {len(a)}")
    return TiltedParams(k, 0, 0, h, tuple(a))


def cor2_shape(h: int, l: int, a: Sequence[int]) -> Tuple[int, ...]:
    b = complement(h, l, a)
    return tuple(b[h - i] - (h - i + 1) for i in range(1, h + 1))


def _cor2_class(k: int, h: int, l: int, a: Sequence[int]):
    """Constraints read off the path geometry, for left-justified rows."""
    lam = cor2_shape(h, l, a)

    def lo(i, j):
        return k * (lam[i] - j)  # m-th part from the right is at least k*m

    def hi(i, j):
        return (lam[i] + h - i - 1) * k + h - i - 1

    def col_gap(i, j):
        return 1 + (lam[i - 1] - lam[i] + 1) * k

    return lam, lo, hi, (lambda i, j: 0), col_gap


def enumerate_pp_cor2(k: int, h: int, l: int, a: Sequence[int]) -> int:
    _cor2_params(h, l, k, a)
    return count_fillings(*_cor2_class(k, h, l, a))


def iter_pp_cor2(k: int, h: int, l: int, a: Sequence[int]) -> Iterator[PlanePartition]:
    return iter_fillings(*_cor2_class(k, h, l, a))


def cor2_literal_ok(k: int, h: int, l: int, a: Sequence[int], pp: PlanePartition) -> bool:
    """The three stated properties, read word for word, on top of the usual
    plane-partition monotonicity.  Property 3 compares neighbours within a
    row against (lambda_i - lambda_{i+1})k for that row i."""
    lam = cor2_shape(h, l, a)
    if pp.shape != lam:
        return False
    rows = pp.rows
    for i, row in enumerate(rows):
        if any(u < v for u, v in zip(row, row[1:])):
            return False
        if i and any(u < v for u, v in zip(rows[i - 1], row)):
            return False
        if any(v > h + k * (h + l) for v in row):
            return False
        if any(row[len(row) - m] < k * m for m in range(1, len(row) + 1)):
            return False
        nxt = lam[i + 1] if i + 1 < h else 0
        if any(u - v < (lam[i] - nxt) * k for u, v in zip(row, row[1:])):
            return False
    return True


def enumerate_pp_cor2_literal(k: int, h: int, l: int, a: Sequence[int]) -> int:
    lam = cor2_shape(h, l, a)
    cap = h + k * (h + l)
    grid = [[0] * L for L in lam]
    cells = [(i, j) for i, L in enumerate(lam) for j in range(L)]

    def rec(idx):
        if idx == len(cells):
            return 1 if cor2_literal_ok(k, h, l, a, PlanePartition(tuple(map(tuple, grid)))) else 0
        i, j = cells[idx]
        top = cap
        if j:
            top = min(top, grid[i][j - 1])
        if i:
            top = min(top, grid[i - 1][j])
        total = 0
        for v in range(k * (lam[i] - j), top + 1):
            grid[i][j] = v
            total += rec(idx + 1)
        return total

    return rec(0)


def _cor2_starts(p: TiltedParams) -> List[TriCell]:
    o = tilted_outline(p)
    return [TriCell(o.level_rows[bj] + 1, o.left[o.level_rows[bj]]) for bj in p.b]


def cor2_paths(p: TiltedParams, tiling: Tiling) -> List[LozengePath]:
    mate = tiling.partner_map()
    paths = []
    for idx, cell in enumerate(_cor2_starts(p), 1):
        steps, labels, lefts = [], [], 0
        while cell in mate:
            other = mate[cell]
            if cell.up:
                raise InvalidTiling(f"path {idx} reached up cell {tuple(cell)}")
            if other == (cell.row, cell.col - 1):
                steps.append("R")
                labels.append(lefts)
                cell = TriCell(cell.row + 1, cell.col - 1)
            elif other == (cell.row, cell.col + 1):
                steps.append("L")
                lefts += 1
                cell = TriCell(cell.row + 1, cell.col + 1)
            else:
                raise InvalidTiling(f"path {idx} blocked at {tuple(cell)}")
        paths.append(LozengePath(tuple(steps), tuple(labels)))
    return paths


def tiling_to_pp_cor2(h: int, l: int, k: int, a: Sequence[int], tiling: Tiling) -> PlanePartition:
    p = _cor2_params(h, l, k, a)
    tiling.check(build_tilted_region(p))
    paths = cor2_paths(p, tiling)
    return PlanePartition(tuple(tuple(sorted(paths[h - i].labels, reverse=True)) for i in range(1, h + 1)))


def check_pp_cor2(k: int, h: int, l: int, a: Sequence[int], pp: PlanePartition) -> None:
    lam, lo, hi, _, col_gap = _cor2_class(k, h, l, a)
    if pp.shape != lam:
        raise InvalidPartition(f"shape {pp.shape} != {lam}")
    for i, row in enumerate(pp.rows):
        for j, v in enumerate(row):
            if not lo(i, j) <= v <= hi(i, j):
                raise InvalidPartition(f"entry ({i + 1},{j + 1}) out of range")
            if j and row[j - 1] < v:
                raise InvalidPartition(f"row {i + 1} is not weakly decreasing")
            if i and pp.rows[i - 1][j] - v < col_gap(i, j):
                raise InvalidPartition(f"column gap fails at ({i + 1},{j + 1})")


def pp_to_tiling_cor2(h: int, l: int, k: int, a: Sequence[int], pp: PlanePartition) -> Tiling:
    check_pp_cor2(k, h, l, a, pp)
    p = _cor2_params(h, l, k, a)
    region = build_tilted_region(p)
    used: Dict[TriCell, Lozenge] = {}
    for idx, cell in enumerate(_cor2_starts(p), 1):
        pending = sorted(pp.rows[h - idx])
        lefts = 0
        while cell in region and cell not in used:
            if pending and pending[0] == lefts:
                pending.pop(0)
                mate, nxt = TriCell(cell.row, cell.col - 1), TriCell(cell.row + 1, cell.col - 1)
            else:
                mate, nxt = TriCell(cell.row, cell.col + 1), TriCell(cell.row + 1, cell.col + 1)
                lefts += 1
            if cell.up or mate not in region or mate in used:
                raise InvalidPartition(f"path {idx} cannot continue at {tuple(cell)}")
            lz = Lozenge.of(cell, mate)
            used[cell] = used[mate] = lz
            cell = nxt
        if pending:
            raise InvalidPartition(f"path {idx} ended before placing labels {pending}")
    tiling = _fill(region, used, False, lambda c: TriCell(c.row - 1, c.col))
    if tiling_to_pp_cor2(h, l, k, a, tiling) != pp:
        raise InvalidPartition("partition is not in the image of the path map")
    return tiling

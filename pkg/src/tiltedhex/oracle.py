"""Brute-force counts: perfect matchings by a frontier DP, explicit tiling
enumeration, and Kuo condensation checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence

from .closedform import TiltedParams, count_tilted
from .lattice import (
    ORIENTATIONS,
    Lozenge,
    MatchGraph,
    Region,
    Tiling,
    TriCell,
    boundary_walks,
    build_tilted_region,
    dual_graph,
    inner_faces,
)


class LimitExceeded(RuntimeError):
    pass


class InvalidQuad(ValueError):
    pass


class Profile(NamedTuple):
    """DP state: how far the sweep got and which swept vertices still wait
    for a partner (bit i set = i-th vertex in sweep order is open)."""

    position: int
    frontier: int


SWEEPS = ("rows", "columns")


def _sweep_order(vertices: Sequence[TriCell], sweep: str) -> List[TriCell]:
    if sweep == "rows":
        return sorted(vertices)
    if sweep == "columns":
        return sorted(vertices, key=lambda c: (c.col, c.row))
    raise ValueError(f"unknown sweep {sweep!r}")


def _matchings_by_sweep(g: MatchGraph, sweep: str, stats: Optional[dict] = None) -> int:
    order = _sweep_order(g.vertices, sweep)
    index = {c: i for i, c in enumerate(order)}
    earlier, last_nb = [], []
    for i, c in enumerate(order):
        nbrs = [index[nb] for nb in g.adj[c] if nb in index]
        earlier.append([j for j in nbrs if j < i])
        last_nb.append(max(nbrs, default=-1))
    # expire[i]: vertices whose final chance to be matched is vertex i
    expire = [0] * len(order)
    for u, m in enumerate(last_nb):
        if m > u:
            expire[m] |= 1 << u

    table: Dict[int, int] = {0: 1}
    peak = 1
    for i in range(len(order)):
        nxt: Dict[int, int] = {}
        bit = 1 << i
        opens = last_nb[i] > i
        for frontier, ways in table.items():
            for j in earlier[i]:
                if frontier >> j & 1:
                    key = frontier ^ (1 << j)
                    nxt[key] = nxt.get(key, 0) + ways
            if opens:
                key = frontier | bit
                nxt[key] = nxt.get(key, 0) + ways
        dead = expire[i]
        table = {f: w for f, w in nxt.items() if not f & dead} if dead else nxt
        peak = max(peak, len(table))
        if not table:
            break
    if stats is not None:
        stats["peak_states"] = peak
    return table.get(0, 0)


def count_matchings(g: MatchGraph, sweep: str = "rows", stats: Optional[dict] = None) -> int:
    """Number of perfect matchings of ``g``.

    Vertices are swept in the given order; the table maps each Profile
    frontier to the number of partial matchings reaching it.  A fresh table is
    built per call.
    """
    if len(g.v1) != len(g.v2):
        return 0
    if not g.v1:
        return 1
    return _matchings_by_sweep(g, sweep, stats)


def count_region(region: Region, sweep: str = "rows") -> int:
    return count_matchings(dual_graph(region), sweep)


def iter_tilings(region: Region) -> Iterator[Tiling]:
    """All tilings, branching on the first uncovered cell in (row, col) order."""
    order = sorted(region.cells)
    free = set(order)
    chosen: List[Lozenge] = []
    rank = {o: i for i, o in enumerate(ORIENTATIONS)}

    def options(cell: TriCell):
        opts = []
        for nb in cell.neighbors():
            if nb in free:
                lz = Lozenge.of(cell, nb)
                opts.append((rank[lz.orientation], lz))
        return [lz for _, lz in sorted(opts)]

    def rec(pos: int):
        while pos < len(order) and order[pos] not in free:
            pos += 1
        if pos == len(order):
            yield Tiling(frozenset(chosen))
            return
        cell = order[pos]
        for lz in options(cell):
            free.difference_update(lz.cells)
            chosen.append(lz)
            yield from rec(pos + 1)
            chosen.pop()
            free.update(lz.cells)

    if region.balanced:
        yield from rec(0)


def enumerate_tilings(region: Region, limit: int) -> List[Tiling]:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    out = []
    for til in iter_tilings(region):
        if len(out) == limit:
            raise LimitExceeded(f"region has more than {limit} tilings")
        out.append(til)
    return out


# ------------------------------------------------------------------ Kuo

@dataclass(frozen=True)
class KuoQuad:
    u: TriCell
    v: TriCell
    w: TriCell
    s: TriCell

    def as_tuple(self):
        return (self.u, self.v, self.w, self.s)


def _in_cyclic_order(seq: Sequence[TriCell], quad: Sequence[TriCell]) -> bool:
    """Do the quad's cells occur in this cyclic order (either direction)?"""
    pos: Dict[TriCell, List[int]] = {}
    for i, c in enumerate(seq):
        pos.setdefault(c, []).append(i)
    if any(q not in pos for q in quad):
        return False
    n = len(seq)
    for direction in (1, -1):
        for start in pos[quad[0]]:
            prev = 0
            ok = True
            for q in quad[1:]:
                offs = [((p - start) * direction) % n for p in pos[q]]
                ahead = [o for o in offs if o > prev]
                if not ahead:
                    ok = False
                    break
                prev = min(ahead)
            if ok:
                return True
    return False


def graph_faces(g: MatchGraph) -> List[List[TriCell]]:
    cells = frozenset(g.vertices)
    return boundary_walks(cells) + inner_faces(cells)


def validate_quad(g: MatchGraph, q: KuoQuad) -> None:
    verts = q.as_tuple()
    if len(set(verts)) != 4:
        raise InvalidQuad("quad vertices must be distinct")
    v1, v2 = set(g.v1), set(g.v2)
    if q.u not in v1 or q.w not in v1 or q.v not in v2 or q.s not in v2:
        raise InvalidQuad("need u, w up cells and v, s down cells of the graph")
    if not any(_in_cyclic_order(face, verts) for face in graph_faces(g)):
        raise InvalidQuad("quad does not lie on a face in cyclic order")


def kuo_terms(g: MatchGraph, q: KuoQuad):
    u, v, w, s = q.as_tuple()
    m = lambda *gone: count_matchings(g.remove(gone))
    lhs = m() * m(u, v, w, s)
    rhs = m(u, v) * m(w, s) + m(u, s) * m(v, w)
    return lhs, rhs


def check_kuo_graph(g: MatchGraph, q: KuoQuad) -> bool:
    validate_quad(g, q)
    lhs, rhs = kuo_terms(g, q)
    return lhs == rhs


def boundary_quads(g: MatchGraph) -> Iterator[KuoQuad]:
    """Alternating up/down quadruples along the outer boundary walk.

    Only cells met once on their walk are used, so cyclic order is unambiguous.
    """
    for walk in boundary_walks(frozenset(g.vertices)):
        once = [c for c in walk if walk.count(c) == 1]
        n = len(once)
        for i in range(n):
            if not once[i].up:
                continue
            for j in range(i + 1, n):
                if once[j].up:
                    continue
                for m in range(j + 1, n):
                    if not once[m].up:
                        continue
                    for r in range(m + 1, n):
                        if not once[r].up:
                            yield KuoQuad(once[i], once[j], once[m], once[r])


def kuo_region_params(p: TiltedParams):
    """The six parameter sets in the recurrence, in the order
    A, B, C, D, E, F for A*B = C*D + E*F."""
    a, short = p.a, p.a[:-1]
    k, x, t, h = p.k, p.x, p.t, p.h
    return (
        TiltedParams(k, x, t, h, a),
        TiltedParams(k, x, t - 1, h, short),
        TiltedParams(k, x, t, h, short),
        TiltedParams(k, x, t - 1, h, a),
        TiltedParams(k, x + 1, t - 1, h, short),
        TiltedParams(k, x - 1, t, h, a),
    )


def check_kuo_region(p: TiltedParams, method: str = "closed_form") -> bool:
    if p.x < 1 or p.t < 1 or p.l < 1:
        raise ValueError("the recurrence needs x, t, l >= 1")
    if method == "closed_form":
        count = count_tilted
    elif method == "oracle":
        count = lambda q: count_region(build_tilted_region(q))
    else:
        raise ValueError(f"unknown method {method!r}")
    A, B, C, D, E, F = (count(q) for q in kuo_region_params(p))
    return A * B == C * D + E * F

"""SVG drawings of regions and tilings, and the verify-report figure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from .lattice import Region, Tiling

DEFAULT_COLORS = {"left": "#e8b04a", "right": "#5b8fd1", "vertical": "#d9d9d9"}


@dataclass(frozen=True)
class RenderSpec:
    colors: Dict[str, str] = field(default_factory=lambda: dict(DEFAULT_COLORS))
    scale: float = 24.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        if set(self.colors) != set(DEFAULT_COLORS):
            raise ValueError("colors must name exactly left, right and vertical")
        if len(set(self.colors.values())) != 3:
            raise ValueError("the three orientation colors must differ")


def _xy(pt, scale):
    X, y = pt
    return X * scale / 2.0, y * scale * math.sqrt(3.0) / 2.0


def _poly(points, scale, ox, oy) -> str:
    return " ".join(f"{x - ox:.3f},{y - oy:.3f}" for x, y in (_xy(p, scale) for p in points))


def region_svg(region: Region, tiling: Optional[Tiling] = None, spec: RenderSpec = RenderSpec()) -> str:
    s = spec.scale
    every = list(region.cells) + list(region.dents)
    pts = [p for c in every for p in c.corners()] or [(0, 0)]
    xs = [_xy(p, s)[0] for p in pts]
    ys = [_xy(p, s)[1] for p in pts]
    pad = s / 2
    ox, oy = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - ox + pad, max(ys) - oy + pad
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3f}" height="{h:.3f}" '
        f'viewBox="0 0 {w:.3f} {h:.3f}">',
    ]
    if tiling is None:
        for c in sorted(region.cells):
            out.append(f'<polygon class="cell {c.orientation}" points="{_poly(c.corners(), s, ox, oy)}" '
                       'fill="none" stroke="#808080" stroke-width="0.5"/>')
    else:
        for lz in tiling:
            a, b = lz.up.corners(), lz.down.corners()
            shared = set(a) & set(b)
            apex_up = next(p for p in a if p not in shared)
            apex_down = next(p for p in b if p not in shared)
            s1, s2 = sorted(shared)
            quad = [apex_up, s1, apex_down, s2]
            out.append(f'<polygon class="lozenge {lz.orientation}" points="{_poly(quad, s, ox, oy)}" '
                       f'fill="{spec.colors[lz.orientation]}" stroke="#202020" stroke-width="1"/>')
    for d in sorted(region.dents):
        out.append(f'<polygon class="dent" points="{_poly(d.corners(), s, ox, oy)}" fill="black"/>')
    out.append(_outline(region, s, ox, oy))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _outline(region: Region, s, ox, oy) -> str:
    segs = []
    for c in sorted(region.cells):
        corners = c.corners()
        for i in range(3):
            p, q = corners[i], corners[(i + 1) % 3]
            nb = [n for n in c.neighbors() if p in n.corners() and q in n.corners()]
            if not nb or nb[0] not in region:
                (x1, y1), (x2, y2) = _xy(p, s), _xy(q, s)
                segs.append(f"M{x1 - ox:.3f} {y1 - oy:.3f}L{x2 - ox:.3f} {y2 - oy:.3f}")
    return f'<path class="outline" d="{"".join(segs)}" fill="none" stroke="black" stroke-width="2"/>'


def verify_figure(report: dict, path: str) -> None:
    """Scatter of formula vs oracle counts (log scale) and per-point runtime."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    recs = [r for r in report["points"]
            if r.get("closed_form", "").isdigit() and int(r["closed_form"]) > 0 and int(r.get("oracle") or 0) > 0]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    if recs:
        f = [math.log10(int(r["closed_form"])) for r in recs]
        o = [math.log10(int(r["oracle"])) for r in recs]
        ok = [r["match"] for r in recs]
        ax1.scatter([a for a, g in zip(f, ok) if g], [b for b, g in zip(o, ok) if g], s=6, label="match")
        bad = [(a, b) for a, b, g in zip(f, o, ok) if not g]
        if bad:
            ax1.scatter(*zip(*bad), s=12, c="red", label="mismatch")
        top = max(f + o) if f else 1
        ax1.plot([0, top], [0, top], lw=0.5, c="k")
        ax1.legend(loc="upper left")
    ax1.set_xlabel("log10 formula count")
    ax1.set_ylabel("log10 oracle count")
    ms = [r.get("runtime_ms", 0) for r in report["points"]]
    ax2.plot(range(len(ms)), ms, lw=0.6)
    ax2.set_xlabel("grid point (canonical order)")
    ax2.set_ylabel("runtime (ms)")
    s = report["summary"]
    fig.suptitle(f"{s['total']} points, {len(s['mismatches'])} mismatches, {s['pole_errors']} pole errors")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

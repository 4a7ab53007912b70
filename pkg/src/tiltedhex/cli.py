"""Command line front end: count, verify, render, bijection.

Exit codes: 0 ok, 2 invalid input, 3 verification mismatch, 4 resource
guard tripped, 5 tiling index out of range.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations, islice
from typing import Optional, Sequence

from . import bijection as bij
from .closedform import (
    HalvedHexParams,
    HexParams,
    InvalidParams,
    NonIntegerResult,
    SemiHexParams,
    TiltedParams,
    count_hexagon,
    count_semihexagon,
    count_tilted,
    halved_hexagon_product,
    tilted_product,
)
from .exactnum import PoleError
from .lattice import (
    Region,
    build_halved_hexagon,
    build_hexagon,
    build_semihexagon,
    build_tilted_region,
)
from .oracle import check_kuo_region, count_region, iter_tilings, kuo_region_params
from .render import DEFAULT_COLORS, RenderSpec, region_svg, verify_figure

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_GUARD, EXIT_INDEX = 0, 2, 3, 4, 5
MAX_ROW_WIDTH = 20
WORKERS_ENV = "TILTEDHEX_WORKERS"
ROUNDTRIP_SAMPLE = 20

FAMILIES = ("tilted", "hexagon", "semihex", "halved")


class CliError(Exception):
    def __init__(self, code: int, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def parse_dents(text: Optional[str]) -> tuple:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise CliError(EXIT_INPUT, f"could not parse dent list {text!r}")


def _pick(args, name, positional, pos):
    v = getattr(args, name, None)
    if v is None and len(positional) > pos:
        v = positional[pos]
    if v is None:
        raise CliError(EXIT_INPUT, f"missing parameter {name}")
    return v


def build_params(args):
    fam = args.family
    pos = list(getattr(args, "values", []) or [])
    try:
        if fam == "tilted":
            return TiltedParams(args.k or 0, args.x or 0, args.t or 0, args.h or 0, parse_dents(args.dents))
        if fam == "hexagon":
            return HexParams(*(_pick(args, n, pos, i) for i, n in enumerate("abc")))
        if fam == "halved":
            return HalvedHexParams(*(_pick(args, n, pos, i) for i, n in enumerate("abc")))
        if fam == "semihex":
            a, b = _pick(args, "a", pos, 0), _pick(args, "b", pos, 1)
            return SemiHexParams(a, b, parse_dents(args.dents))
    except InvalidParams as exc:
        raise CliError(EXIT_INPUT, str(exc))
    raise CliError(EXIT_INPUT, f"unknown family {fam!r}")


def build_region(params) -> Region:
    if isinstance(params, TiltedParams):
        return build_tilted_region(params)
    if isinstance(params, HexParams):
        return build_hexagon(params)
    if isinstance(params, SemiHexParams):
        return build_semihexagon(params)
    return build_halved_hexagon(params)


def formula_value(params) -> Fraction:
    if isinstance(params, TiltedParams):
        return tilted_product(params)
    if isinstance(params, HexParams):
        return Fraction(count_hexagon(params))
    if isinstance(params, SemiHexParams):
        return Fraction(count_semihexagon(params))
    return halved_hexagon_product(params)


def _guard(region: Region) -> None:
    w = region.max_row_width()
    if w > MAX_ROW_WIDTH:
        raise CliError(EXIT_GUARD, f"region row width {w} exceeds the guard of {MAX_ROW_WIDTH} cells",
                       max_row_width=w, guard=MAX_ROW_WIDTH)


def _ms(start: float, timing: bool) -> float:
    return round((time.perf_counter() - start) * 1000, 3) if timing else 0


# ------------------------------------------------------------------ count

def cmd_count(args) -> int:
    params = build_params(args)
    start = time.perf_counter()
    rec = {"family": args.family, "params": params.as_dict(), "method": args.method}
    formula = oracle = None
    if args.method in ("formula", "both"):
        try:
            formula = formula_value(params)
        except PoleError as exc:
            raise CliError(EXIT_INPUT, f"formula undefined: {exc}")
    if args.method in ("oracle", "both"):
        region = build_region(params)
        _guard(region)
        oracle = count_region(region)
    value = formula if formula is not None else Fraction(oracle)
    rec["count"] = str(value)
    if formula is not None and formula.denominator != 1:
        rec["integral"] = False
    code = EXIT_OK
    if args.method == "both":
        rec["oracle_count"] = str(oracle)
        rec["agrees"] = formula == oracle
        code = EXIT_OK if rec["agrees"] else EXIT_MISMATCH
    rec["runtime_ms"] = _ms(start, args.timing)
    print(_dump(rec))
    return code


# ----------------------------------------------------------------- verify

def grid_points(max_k: int, max_x: int, max_t: int, max_hl: int, min_x: int = 0, min_t: int = 0):
    for k in range(max_k + 1):
        for x in range(min_x, max_x + 1):
            for t in range(min_t, max_t + 1):
                for n in range(max_hl + 1):
                    for l in range(n + 1):
                        for a in combinations(range(1, n + 1), l):
                            yield TiltedParams(k, x, t, n - l, a)


def _safe_count(p: TiltedParams):
    try:
        return count_tilted(p), None
    except PoleError as exc:
        return None, f"pole: {exc}"
    except NonIntegerResult as exc:
        return None, f"non-integer: {exc.value}"


def verify_point(job) -> dict:
    p, checks, timing = job
    start = time.perf_counter()
    rec = {"params": p.as_dict()}
    ok = True
    formula, err = _safe_count(p)
    if err:
        rec["error"] = err
        ok = False
    if "counts" in checks:
        oracle = count_region(build_tilted_region(p))
        if formula is not None:
            rec["closed_form"] = str(formula)
        else:
            rec["closed_form"] = "" if err.startswith("pole") else str(tilted_product(p))
        rec["oracle"] = str(oracle)
        ok &= formula == oracle
    if "kuo" in checks and p.x >= 1 and p.t >= 1 and p.l >= 1:
        try:
            kc, ko = check_kuo_region(p, "closed_form"), check_kuo_region(p, "oracle")
        except (PoleError, NonIntegerResult) as exc:
            kc, ko = False, False
            rec["kuo_error"] = str(exc)
        rec["kuo"] = {"closed_form": kc, "oracle": ko}
        ok &= kc and ko
    if "bijections" in checks and formula is not None:
        res = {"cor1_count": bij.enumerate_pp_cor1(p) == formula}
        rt = True
        for til in islice(iter_tilings(build_tilted_region(p)), ROUNDTRIP_SAMPLE):
            rt &= bij.pp_to_tiling_cor1(p, bij.tiling_to_pp_cor1(p, til)) == til
        res["cor1_roundtrip"] = rt
        if p.x == 0 and p.t == 0:
            res["cor2_count"] = bij.enumerate_pp_cor2(p.k, p.h, p.l, p.a) == formula
            rt2 = True
            for til in islice(iter_tilings(build_tilted_region(p)), ROUNDTRIP_SAMPLE):
                pp = bij.tiling_to_pp_cor2(p.h, p.l, p.k, p.a, til)
                rt2 &= bij.pp_to_tiling_cor2(p.h, p.l, p.k, p.a, pp) == til
            res["cor2_roundtrip"] = rt2
        rec["bijections"] = res
        ok &= all(res.values())
    rec["match"] = bool(ok)
    rec["runtime_ms"] = _ms(start, timing)
    return rec


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise CliError(EXIT_INPUT, f"{WORKERS_ENV} must be an integer")
    return os.cpu_count() or 1


def run_verify(max_k, max_x, max_t, max_hl, checks, min_x=0, min_t=0, timing=True, workers=None) -> dict:
    points = list(grid_points(max_k, max_x, max_t, max_hl, min_x, min_t))
    widest = 0
    for p in points:
        regions = [p] + (list(kuo_region_params(p)) if "kuo" in checks and p.x and p.t and p.l else [])
        for q in regions:
            widest = max(widest, build_tilted_region(q).max_row_width())
    if widest > MAX_ROW_WIDTH:
        raise CliError(EXIT_GUARD, f"grid contains a region of row width {widest}, guard is {MAX_ROW_WIDTH}",
                       max_row_width=widest, guard=MAX_ROW_WIDTH)
    jobs = [(p, tuple(checks), timing) for p in points]
    workers = workers or _worker_count()
    if workers == 1 or len(jobs) < 2:
        records = [verify_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(verify_point, jobs, chunksize=8))
    mismatches = [r["params"] for r in records if not r["match"]]
    return {
        "grid": {"max_k": max_k, "max_x": max_x, "max_t": max_t, "max_hl": max_hl,
                 "min_x": min_x, "min_t": min_t, "checks": sorted(checks)},
        "points": records,
        "summary": {"total": len(records), "mismatches": mismatches,
                    "pole_errors": sum(1 for r in records if r.get("error", "").startswith("pole"))},
    }


def cmd_verify(args) -> int:
    checks = {"counts", "kuo", "bijections"} if args.check == "all" else {args.check}
    report = run_verify(args.max_k, args.max_x, args.max_t, args.max_hl, checks,
                        args.min_x, args.min_t, timing=args.timing)
    text = _dump(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        if args.figures:
            verify_figure(report, os.path.splitext(args.out)[0] + ".png")
    else:
        print(text)
    s = report["summary"]
    print(f"verify: {s['total']} points, {len(s['mismatches'])} mismatches", file=sys.stderr)
    return EXIT_OK if not s["mismatches"] else EXIT_MISMATCH


# ------------------------------------------------------ render, bijection

def _nth_tiling(region: Region, index: int):
    if index < 0:
        raise CliError(EXIT_INDEX, "tiling index must be >= 0")
    til = next(islice(iter_tilings(region), index, None), None)
    if til is None:
        raise CliError(EXIT_INDEX, f"tiling index {index} out of range")
    return til


def parse_colors(text: Optional[str]) -> dict:
    colors = dict(DEFAULT_COLORS)
    if text:
        for part in text.split(","):
            key, _, val = part.partition("=")
            if key not in colors or not val:
                raise CliError(EXIT_INPUT, f"bad color spec {part!r}")
            colors[key] = val
    return colors


def cmd_render(args) -> int:
    params = build_params(args)
    try:
        spec = RenderSpec(parse_colors(args.colors), args.scale)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    region = build_region(params)
    tiling = None
    if args.tiling_index is not None:
        _guard(region)
        tiling = _nth_tiling(region, args.tiling_index)
    svg = region_svg(region, tiling, spec)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_bijection(args) -> int:
    args.family = "tilted"
    p = build_params(args)
    if args.corollary == 2 and (p.x or p.t):
        raise CliError(EXIT_INPUT, "the second bijection needs x = t = 0")
    region = build_tilted_region(p)
    _guard(region)
    til = _nth_tiling(region, args.tiling_index)
    if args.corollary == 1:
        pp = bij.tiling_to_pp_cor1(p, til)
        back = bij.pp_to_tiling_cor1(p, pp)
    else:
        pp = bij.tiling_to_pp_cor2(p.h, p.l, p.k, p.a, til)
        back = bij.pp_to_tiling_cor2(p.h, p.l, p.k, p.a, pp)
    rec = {
        "corollary": args.corollary,
        "params": p.as_dict(),
        "tiling_index": args.tiling_index,
        "tiling": til.to_json(),
        "partition": pp.to_json(),
        "shape": list(pp.shape),
        "roundtrip": back == til,
    }
    print(_dump(rec))
    return EXIT_OK if rec["roundtrip"] else EXIT_MISMATCH


# ----------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_INPUT, message)


def _param_flags(sp, with_family=True):
    if with_family:
        sp.add_argument("family", choices=FAMILIES)
        sp.add_argument("values", nargs="*", type=int, help="a b c for hexagon/halved, a b for semihex")
    for name in ("k", "x", "t", "h", "a", "b", "c"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--dents", help="comma separated; kept levels for tilted, dent positions for semihex")


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tiltedhex", description=__doc__.splitlines()[0])
    ap.add_argument("--no-timing", dest="timing", action="store_false",
                    help="report runtime_ms as 0 so output is byte-stable")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("count")
    _param_flags(sp)
    sp.add_argument("--method", choices=("formula", "oracle", "both"), default="formula")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("verify")
    sp.add_argument("--max-k", type=int, default=3)
    sp.add_argument("--max-x", type=int, default=3)
    sp.add_argument("--max-t", type=int, default=3)
    sp.add_argument("--max-hl", type=int, default=5)
    sp.add_argument("--min-x", type=int, default=0)
    sp.add_argument("--min-t", type=int, default=0)
    sp.add_argument("--check", choices=("counts", "kuo", "bijections", "all"), default="all")
    sp.add_argument("--out")
    sp.add_argument("--no-figures", dest="figures", action="store_false",
                    help="skip the PNG summary written next to --out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render")
    _param_flags(sp)
    sp.add_argument("--tiling-index", type=int)
    sp.add_argument("--scale", type=float, default=24.0)
    sp.add_argument("--colors", help="e.g. left=#f00,right=#0f0,vertical=#00f")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("bijection")
    sp.add_argument("--corollary", type=int, choices=(1, 2), required=True)
    _param_flags(sp, with_family=False)
    sp.add_argument("--tiling-index", type=int, default=0)
    sp.set_defaults(func=cmd_bijection)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = make_parser().parse_args(argv)
        if args.command == "verify":
            for name in ("max_k", "max_x", "max_t", "max_hl", "min_x", "min_t"):
                if getattr(args, name) < 0:
                    raise CliError(EXIT_INPUT, f"--{name.replace('_', '-')} must be >= 0")
        return args.func(args)
    except CliError as exc:
        print(_dump({"error": str(exc), "exit": exc.code, **exc.extra}), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

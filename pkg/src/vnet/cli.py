"""Command line front end.

Subcommands: construct | analyze | cbc | points | bounds.  Reports are
JSON (bound tables also as CSV), point files use the CSV format of
write_points.  Exit codes: 0 ok, 1 strict-mode check failure, 2 usage
or validation, 3 cap exceeded, 4 internal assertion.

Reports are byte-identical across re-runs except for the generated_at
timestamp.  The --threads knob is accepted for interface stability;
execution is sequential and the output never depends on it.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .discrepancy import (
    DEFAULT_BOX_CAP,
    DEFAULT_KERNEL_CAP,
    average_bound,
    disc_bound,
    r_q,
    r_q_matrices,
    star_discrepancy_exact,
)
from .errors import DimensionCap, SizeCap, VnetError
from .fields import (
    BaseField,
    FieldTower,
    factor_prime_power,
    is_prime,
    poly_from_text,
)
from .nets import (
    DEFAULT_POINT_CAP,
    AlphaVector,
    general_vandermonde,
    generate_points,
    vandermonde_net,
    write_points,
)
from .quality import (
    DEFAULT_INTERVAL_CAP,
    corollary_floor,
    delta_q,
    equidist_check,
    existence_sigma,
    merit_dual_enum,
    t_value,
)
from .search import cbc_from_explicit, cbc_search


def _add_shared(p: argparse.ArgumentParser, with_source: bool = True) -> None:
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--m", type=int, required=True, help="extension degree, q^m points")
    p.add_argument("--s", type=int, help="number of dimensions")
    p.add_argument(
        "--modulus",
        help="extension modulus f as comma separated coefficients, constant first",
    )
    p.add_argument(
        "--base-modulus",
        help="base field modulus g over F_p for prime power q, constant first",
    )
    if with_source:
        p.add_argument("--alpha", help="alpha vector as comma separated encodings")
        p.add_argument(
            "--explicit",
            action="store_true",
            help="use the closed-form t=0 construction (s <= q+1)",
        )
        p.add_argument(
            "--general",
            action="store_true",
            help="general construction from --modulus and repeated --g",
        )
        p.add_argument(
            "--g",
            action="append",
            default=None,
            metavar="POLY",
            help="component polynomial for --general, repeatable",
        )
    p.add_argument("--cap-points", type=int, default=DEFAULT_POINT_CAP)
    p.add_argument("--cap-kernel", type=int, default=DEFAULT_KERNEL_CAP)
    p.add_argument("--cap-intervals", type=int, default=DEFAULT_INTERVAL_CAP)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument(
        "--strict",
        action="store_true",
        help="exit 1 if any reported check or bound fails",
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vnet",
        description="Vandermonde digital net construction, certification, search",
    )
    p.add_argument("--version", action="version", version=f"vnet {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="build a net and certify t")
    _add_shared(pc)
    pc.add_argument("--points", metavar="PATH", help="also write the point file here")
    pc.add_argument("--float", action="store_true", dest="float_values")

    pa = sub.add_parser("analyze", help="full quality and discrepancy report")
    _add_shared(pa)
    pa.add_argument("--dstar", action="store_true", help="exact star discrepancy")
    pa.add_argument("--dstar-max-s", type=int, default=3)

    pb = sub.add_parser("cbc", help="component-by-component search")
    _add_shared(pb, with_source=False)
    pb.add_argument("--seed", choices=("irreducible", "explicit"), default="irreducible")

    pp = sub.add_parser("points", help="emit the point file for a net")
    _add_shared(pp)
    pp.add_argument("--float", action="store_true", dest="float_values")

    pg = sub.add_parser("bounds", help="tabulate existence bounds over a grid")
    pg.add_argument("--q", required=True, help="comma separated field sizes")
    pg.add_argument("--m-range", default="1:8", help="inclusive A:B")
    pg.add_argument("--s-range", default="1:4", help="inclusive A:B")
    pg.add_argument("--threads", type=int, default=1)
    pg.add_argument("--format", choices=("json", "csv"), default="json")
    pg.add_argument("--out")
    pg.add_argument("--strict", action="store_true")
    return p


def _check_threads(args) -> None:
    if getattr(args, "threads", 1) < 1:
        raise ValueError("--threads must be >= 1")


def _tower(args) -> FieldTower:
    g = None
    if args.base_modulus:
        p, _ = factor_prime_power(args.q)
        g = poly_from_text(args.base_modulus, p)
    f = poly_from_text(args.modulus, args.q) if args.modulus else None
    return FieldTower.from_q(args.q, args.m, g=g, f=f)


def _net_source(args):
    """Resolve the requested construction into (meta, tower_or_none,
    alpha_or_none, mats)."""
    from .search import explicit_alpha

    chosen = [bool(args.explicit), args.alpha is not None, bool(args.general)]
    if sum(chosen) != 1:
        raise ValueError("pick exactly one of --explicit, --alpha, --general")
    if args.general:
        if not args.modulus:
            raise ValueError("--general needs --modulus")
        if not args.g:
            raise ValueError("--general needs at least one --g")
        p, e = factor_prime_power(args.q)
        g = poly_from_text(args.base_modulus, p) if args.base_modulus else None
        base = BaseField(p, e, g)
        f = poly_from_text(args.modulus, args.q)
        gs = [poly_from_text(t, args.q) for t in args.g]
        if args.s is not None and args.s != len(gs):
            raise ValueError(f"--s {args.s} does not match {len(gs)} --g options")
        mats = general_vandermonde(base, f, gs)
        meta = {
            "construction": "general",
            "f": list(f),
            "g": [list(t) for t in gs],
            "alpha": None,
        }
        return meta, None, None, mats
    tower = _tower(args)
    if args.explicit:
        if args.s is None:
            raise ValueError("--explicit needs --s")
        alpha = explicit_alpha(args.q, args.m, args.s, tower)
        kind = "explicit"
    else:
        encs = [int(t) for t in args.alpha.split(",") if t != ""]
        if args.s is not None and args.s != len(encs):
            raise ValueError(f"--s {args.s} does not match {len(encs)} encodings")
        alpha = AlphaVector.from_encodings(tower, encs)
        kind = "alpha"
    meta = {
        "construction": kind,
        "f": list(tower.f),
        "g": None,
        "alpha": list(alpha.encodings()),
    }
    return meta, tower, alpha, vandermonde_net(alpha)


def _emit(args, report) -> None:
    report["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    meta, tower, alpha, mats = _net_source(args)
    t = t_value(mats)
    report = {
        "command": "construct",
        "q": args.q,
        "m": args.m,
        "s": mats.s,
        "t": t,
        "rho": args.m - t if alpha is not None else None,
        "n_points": None,
        "points_file": None,
    }
    report.update(meta)
    if args.points:
        pts = generate_points(mats, cap=args.cap_points)
        write_points(pts, args.points, float_values=args.float_values)
        report["n_points"] = pts.n
        report["points_file"] = args.points
    _emit(args, report)
    return 0


def cmd_analyze(args) -> int:
    meta, tower, alpha, mats = _net_source(args)
    q, m, s = args.q, args.m, mats.s
    caps_hit = []
    t = t_value(mats)
    rho = None
    rho_method = None
    witness = None
    if alpha is not None:
        try:
            mrep = merit_dual_enum(alpha, cap=args.cap_kernel)
            rho = mrep.rho
            rho_method = mrep.method
            witness = (
                [list(h) for h in mrep.witness] if mrep.witness is not None else None
            )
            assert mrep.t == t, (
                f"merit mismatch: rank scan t={t}, kernel enumeration t={mrep.t}"
            )
        except SizeCap:
            caps_hit.append("kernel_rho")
            rho = m - t
            rho_method = "rank_scan"
    pts = None
    equidist = None
    try:
        pts = generate_points(mats, cap=args.cap_points)
        equidist = bool(equidist_check(pts, t, cap=args.cap_intervals))
    except SizeCap:
        caps_hit.append("points" if pts is None else "intervals")
    disc = {
        "r_q": None,
        "term_count": None,
        "cap_hit": False,
        "disc_bound": None,
        "avg_bound": None,
        "d_star": None,
    }
    d_star_le_bound = None
    if is_prime(q):
        if alpha is not None:
            ws = r_q(alpha, cap=args.cap_kernel, on_cap="partial")
        else:
            ws = r_q_matrices(mats, cap=args.cap_kernel, on_cap="partial")
        disc["r_q"] = ws.value
        disc["term_count"] = ws.term_count
        disc["cap_hit"] = ws.cap_hit
        if ws.cap_hit:
            caps_hit.append("kernel_rq")
        disc["disc_bound"] = disc_bound(s, q, m, ws)
        disc["avg_bound"] = average_bound(q, m, s)
        if args.dstar and pts is not None:
            try:
                d = star_discrepancy_exact(
                    pts, max_dim=args.dstar_max_s, box_cap=args.cap_intervals
                )
                disc["d_star"] = f"{d.numerator}/{d.denominator}"
                if not ws.cap_hit:
                    tol = 1e-12 * max(1.0, disc["disc_bound"])
                    d_star_le_bound = float(d) <= disc["disc_bound"] + tol
            except (DimensionCap, SizeCap):
                caps_hit.append("d_star")
    report = {
        "command": "analyze",
        "q": q,
        "m": m,
        "s": s,
        "t": t,
        "rho": rho,
        "rho_method": rho_method,
        "witness": witness,
        "checks": {"equidist": equidist, "d_star_le_bound": d_star_le_bound},
        "discrepancy": disc,
        "caps_hit": sorted(caps_hit),
    }
    report.update(meta)
    _emit(args, report)
    if args.strict and any(v is False for v in report["checks"].values()):
        return 1
    return 0


def cmd_cbc(args) -> int:
    if args.s is None:
        raise ValueError("cbc needs --s")
    tower = _tower(args)
    if args.seed == "explicit":
        res = cbc_from_explicit(args.q, args.m, args.s, cap=args.cap_kernel, tower=tower)
    else:
        res = cbc_search(args.q, args.m, args.s, cap=args.cap_kernel, tower=tower)
    from .search import theorem_bound

    report = {
        "command": "cbc",
        "q": args.q,
        "m": args.m,
        "s": args.s,
        "f": list(tower.f),
        "seed": res.seed,
        "alpha": list(res.alpha.encodings()),
        "per_dim_rq": [w.value for w in res.per_dim_rq],
        "term_counts": [w.term_count for w in res.per_dim_rq],
        "bounds": [theorem_bound(args.q, args.m, d) for d in range(1, args.s + 1)],
        "bound_ok": list(res.bound_ok),
        "ties_broken": res.ties_broken,
    }
    _emit(args, report)
    if args.strict and not all(res.bound_ok):
        return 1
    return 0


def cmd_points(args) -> int:
    meta, tower, alpha, mats = _net_source(args)
    pts = generate_points(mats, cap=args.cap_points)
    if args.out:
        write_points(pts, args.out, float_values=args.float_values)
    else:
        write_points(pts, sys.stdout, float_values=args.float_values)
    return 0


def _parse_range(text: str):
    lo, _, hi = text.partition(":")
    lo, hi = int(lo), int(hi or lo)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    return range(lo, hi + 1)


def cmd_bounds(args) -> int:
    qs = [int(t) for t in args.q.split(",") if t != ""]
    rows = []
    for q in qs:
        factor_prime_power(q)
        prime = is_prime(q)
        for m in _parse_range(args.m_range):
            for s in _parse_range(args.s_range):
                sigma = existence_sigma(q, s, m)
                floor = corollary_floor(q, s, m)
                rows.append(
                    {
                        "q": q,
                        "m": m,
                        "s": s,
                        "sigma": sigma,
                        "delta": delta_q(q, s, sigma) if sigma >= 1 else None,
                        "floor": floor,
                        "floor_clamped": min(m, max(0, floor)),
                        "t_guarantee": m - sigma,
                        "avg_bound": average_bound(q, m, s) if prime else None,
                    }
                )
    if args.format == "csv":
        cols = [
            "q", "m", "s", "sigma", "delta",
            "floor", "floor_clamped", "t_guarantee", "avg_bound",
        ]
        lines = [",".join(cols)]
        for r in rows:
            lines.append(
                ",".join("" if r[c] is None else repr(r[c]) for c in cols)
            )
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    _emit(args, {"command": "bounds", "rows": rows})
    return 0


_DISPATCH = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "cbc": cmd_cbc,
    "points": cmd_points,
    "bounds": cmd_bounds,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        _check_threads(args)
        return _DISPATCH[args.command](args)
    except (SizeCap, DimensionCap) as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except AssertionError as e:
        print(f"internal assertion failed: {e}", file=sys.stderr)
        return 4
    except (VnetError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

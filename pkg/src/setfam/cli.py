"""Command-line front end emitting one JSON report per invocation.

Exit codes: 0 ok/verified, 1 usage or domain error, 2 refuted, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import asymptotics, constructions, core, search, shifting, spectral

EXIT_CODES = {"ok": 0, "verified": 0, "refuted": 2, "exhausted-budget": 3, "error": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def render(value: Any) -> str:
    """Decimal-string rendering; rationals always as p/q."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_family(family: core.Family) -> list[list[int]]:
    return family.to_lists()


def read_family_file(path: str | Path, n: int) -> core.Family:
    """One set per line, comma-separated 1-based elements; '#' starts a comment."""
    sets = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            sets.append([int(tok) for tok in line.split(",") if tok.strip()])
        except ValueError:
            raise core.DomainError(f"bad set line in {path}: {raw!r}") from None
    return core.Family.from_sets(n, sets)


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required flag(s): {', '.join(missing)}")


def _budget(args: argparse.Namespace) -> search.SearchBudget:
    return search.SearchBudget.from_env(
        max_nodes=args.max_nodes, max_seconds=args.max_seconds, worker_count=args.workers
    )


def _search_result(rep: search.SearchReport, extra: dict | None = None) -> tuple[str, dict, list]:
    values: dict[str, Any] = {}
    if rep.optimum is not None:
        values["optimum"] = rep.optimum
    if rep.target is not None:
        values["formula"] = rep.target
    values["nodes_explored"] = rep.nodes_explored
    values.update(extra or {})
    return rep.status, values, list(rep.witnesses)


# --- handlers: each returns (status, values, witnesses) ---------------------

def cmd_construct(args: argparse.Namespace) -> tuple[str, dict, list]:
    kind = args.kind
    if kind == "star-split":
        _need(args, "n", "k")
        a, b = constructions.star_split(args.n, args.k, args.x or 1)
        values = {
            "a_size": len(a), "b_size": len(b),
            "star_size": constructions.star_size(args.n, args.k),
            "cross_intersecting": core.are_cross_intersecting(a, b),
            "disjoint": core.are_disjoint_families(a, b),
        }
        return "ok", values, [a, b]
    if kind == "threshold":
        _need(args, "n", "k", "t")
        tp = constructions.threshold_pair(args.n, args.k, args.t)
        a, b = tp.a_family, tp.b_family
        values: dict[str, Any] = {
            "a_size": tp.a_size, "b_size": tp.b_size,
            "a_enumerated": len(a), "b_enumerated": len(b),
            "half_star": Fraction(core.binom(args.n - 1, args.k - 1), 2),
        }
        if args.m is not None:
            a, b = constructions.rebalance_pair(a, b, args.m)
            values.update({"rebalanced_a": len(a), "rebalanced_b": len(b)})
        values["cross_intersecting"] = core.are_cross_intersecting(a, b)
        values["disjoint"] = core.are_disjoint_families(a, b)
        values["min_size"] = min(len(a), len(b))
        return "ok", values, [a, b]
    if kind == "pairing":
        _need(args, "k")
        a, b = constructions.complement_pairing(args.k)
        values = {
            "a_size": len(a), "b_size": len(b), "min_size": min(len(a), len(b)),
            "pair_count": core.binom(2 * args.k - 1, args.k - 1),
            "cross_intersecting": core.are_cross_intersecting(a, b),
            "disjoint": core.are_disjoint_families(a, b),
        }
        return "ok", values, [a, b]
    if kind == "d-family":
        _need(args, "n", "k", "r")
        f = constructions.d_family(args.n, args.k, args.r)
        values = {
            "size": len(f), "size_formula": constructions.d_family_size(args.n, args.k, args.r),
            "diversity": core.diversity(f),
            "diversity_formula": constructions.d_family_diversity(args.n, args.k, args.r),
            "intersecting": core.is_intersecting(f),
        }
        return "ok", values, [f]
    if kind == "q-family":
        _need(args, "k")
        f = constructions.q_family(args.k)
        values = {
            "size": len(f), "diversity": core.diversity(f),
            "diversity_formula": constructions.q_family_diversity(args.k),
            "intersecting": core.is_intersecting(f),
        }
        return "ok", values, [f]
    if kind == "g-lift":
        _need(args, "n", "k")
        profile = constructions.g_closure_profile()
        inside, outside = constructions.lifted_missing_counts(profile, args.n, args.k)
        values = {f"N_{i}": c for i, c in profile.n_counts.items() if c}
        values.update({f"missing_x{x}": c for x, c in inside.items()})
        if outside is not None:
            values["missing_outside"] = outside
        cert = constructions.theorem3_certificate(args.n, args.k)
        values.update({"diversity": cert.diversity_lb, "target": cert.target, "beats": cert.beats})
        return "ok", values, [constructions.g_base()]
    raise UsageError(f"unknown construction {kind!r}")


def _input_families(args: argparse.Namespace, count: int) -> list[core.Family]:
    _need(args, "n")
    files = args.family_file or []
    if len(files) != count:
        raise UsageError(f"expected {count} --family-file argument(s), got {len(files)}")
    return [read_family_file(p, args.n) for p in files]


def cmd_verify(args: argparse.Namespace) -> tuple[str, dict, list]:
    kind = args.kind
    if kind == "intersecting":
        (f,) = _input_families(args, 1)
        return "ok", {"intersecting": core.is_intersecting(f), "size": len(f),
                      "diversity": core.diversity(f)}, []
    a, b = _input_families(args, 2)
    if kind == "cross":
        return "ok", {"cross_intersecting": core.are_cross_intersecting(a, b)}, []
    if kind == "disjoint":
        return "ok", {"disjoint": core.are_disjoint_families(a, b)}, []
    if kind == "shift-window":
        _need(args, "t")
        ca, cb = shifting.compress_pair(a, b)
        values = {
            "cross_intersecting": core.are_cross_intersecting(ca, cb),
            "window_intersecting": shifting.window_intersection_check(ca, cb, args.t),
        }
        return "ok", values, [ca, cb]
    raise UsageError(f"unknown verification {kind!r}")


def cmd_spectrum(args: argparse.Namespace) -> tuple[str, dict, list]:
    _need(args, "n", "k")
    entries = spectral.kneser_spectrum(args.n, args.k)
    values: dict[str, Any] = {"eigenvalues": spectral.format_spectrum(entries)}
    if core.binom(args.n, args.k) <= spectral.ADJACENCY_LIMIT:
        ok = all(spectral.trace_moment(args.n, args.k, p) == spectral.spectrum_moment(args.n, args.k, p)
                 for p in range(5))
        values["trace_check"] = "pass" if ok else "fail"
    else:
        values["trace_check"] = "skipped"
    return "ok", values, []


def cmd_bound(args: argparse.Namespace) -> tuple[str, dict, list]:
    _need(args, "n", "k")
    if args.kind == "thm2":
        b = spectral.theorem2_bound(args.n, args.k)
        c = spectral.kneser_constants(args.n, args.k)
        values = {"closed_form": b.closed_form, "spectral_form": b.spectral_form,
                  "K": c.big_k, "L": c.big_l, "lambda1": c.lambda1,
                  "forms_equal": b.closed_form == b.spectral_form}
        return "ok", values, []
    if args.kind == "cubic":
        w = asymptotics.cubic_warmup_bound(args.n, args.k)
        return "ok", {"bound": w.bound, "half_star": w.half_star, "holds": w.holds}, []
    if args.kind == "thm3":
        cert = constructions.theorem3_certificate(args.n, args.k)
        return "ok", {"diversity": cert.diversity_lb, "target": cert.target, "beats": cert.beats}, []
    raise UsageError(f"unknown bound {args.kind!r}")


def cmd_asymptotics(args: argparse.Namespace) -> tuple[str, dict, list]:
    if args.kind == "roots":
        tol = args.tol if args.tol is not None else 1e-12
        roots = asymptotics.theorem3_roots(tol)
        values = {"f1_root": roots.f1_root, "f1_root_exact": asymptotics.F1_ROOT_EXACT,
                  "f2_root": roots.f2_root, "f2_root_exact": asymptotics.F2_ROOT_EXACT}
        return "ok", values, []
    if args.kind == "limits":
        _need(args, "alpha")
        t = args.t if args.t is not None else 2
        if not 0 < args.alpha < 1:
            raise core.DomainError(f"alpha must lie in (0, 1), got {args.alpha}")
        la, lb = asymptotics.threshold_limits(args.alpha, t)
        target = asymptotics.ratio_limit(args.alpha, 3, 2)
        values = {"limit_a": la, "limit_b": lb,
                  "alpha_boundary": asymptotics.threshold_alpha_boundary(t),
                  "f1": asymptotics.f1(args.alpha), "f2": asymptotics.f2(args.alpha),
                  "target": target}
        return "ok", values, []
    raise UsageError(f"unknown asymptotics command {args.kind!r}")


def cmd_search(args: argparse.Namespace) -> tuple[str, dict, list]:
    budget = _budget(args)
    if args.kind == "maxmin":
        _need(args, "n", "k")
        rep = search.max_min_disjoint_cross(args.n, args.k, budget)
        extra = {}
        if args.k >= 2 and args.n >= 2 * args.k:
            extra["theorem2_bound"] = spectral.theorem2_bound(args.n, args.k).closed_form
        return _search_result(rep, extra)
    if args.kind == "diversity":
        _need(args, "n")
        if args.k is None:
            rep = search.max_diversity_nonuniform(args.n, budget)
        else:
            rep = search.max_diversity_uniform(args.n, args.k, budget)
        return _search_result(rep)
    if args.kind == "maximal":
        _need(args, "n")
        fams = search.maximal_intersecting_families(args.n, budget)
        return "ok", {"count": len(fams)}, fams
    raise UsageError(f"unknown search {args.kind!r}")


def cmd_conjecture(args: argparse.Namespace) -> tuple[str, dict, list]:
    _need(args, "k")
    budget = _budget(args)
    check = search.check_conjecture_odd if args.kind == "odd" else search.check_conjecture_even
    rep = check(args.k, budget)
    values: dict[str, Any] = {}
    if rep.optimum is not None:
        values["max_diversity"] = rep.optimum
    values["formula"] = rep.target
    return rep.status, values, list(rep.witnesses)


# --- parser ------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--max-seconds", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--family-file", action="append")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="setfam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    groups = {
        "construct": (cmd_construct, ["star-split", "threshold", "pairing", "d-family", "q-family", "g-lift"]),
        "verify": (cmd_verify, ["cross", "disjoint", "intersecting", "shift-window"]),
        "spectrum": (cmd_spectrum, None),
        "bound": (cmd_bound, ["thm2", "cubic", "thm3"]),
        "asymptotics": (cmd_asymptotics, ["roots", "limits"]),
        "search": (cmd_search, ["maxmin", "diversity", "maximal"]),
        "conjecture": (cmd_conjecture, ["odd", "even"]),
    }
    for name, (handler, kinds) in groups.items():
        p = sub.add_parser(name)
        if kinds is not None:
            p.add_argument("kind", choices=kinds)
        _common(p)
        p.set_defaults(handler=handler, kind=None)
    return parser


def _params(args: argparse.Namespace) -> dict:
    skip = {"command", "handler", "kind"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    start = time.monotonic()
    argv = list(sys.argv[1:] if argv is None else argv)
    command = " ".join(a for a in argv[:2] if not a.startswith("-"))
    params: dict = {}
    try:
        args = build_parser().parse_args(argv)
        command = args.command + (f" {args.kind}" if args.kind else "")
        params = _params(args)
        status, values, witnesses = args.handler(args)
    except (UsageError, core.DomainError, core.PreconditionError, core.ResourceError) as exc:
        status, values, witnesses = "error", {"message": str(exc)}, []
    report = {
        "command": command,
        "params": {k: render(v) if not isinstance(v, list) else v for k, v in params.items()},
        "status": status,
        "values": {k: render(v) for k, v in values.items()},
        "witnesses": [render_family(f) for f in witnesses],
        "elapsed_ms": int((time.monotonic() - start) * 1000),
    }
    return EXIT_CODES[status], report


def main(argv: Sequence[str] | None = None) -> int:
    code, report = run(argv)
    sys.stdout.write(json.dumps(report, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

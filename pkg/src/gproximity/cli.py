"""Command-line front end.

Reports are plain ``key: value`` lines on stdout with a stable grammar, so
identical invocations produce byte-identical output; timing goes to stderr.
Exit codes: 0 success, 1 domain or negative result, 2 usage/parse errors.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import analysis, instances, operators, solver
from .errors import (ClassificationError, DomainError, GproximityError,
                     HypothesisError, OrbitError, ParseError)
from .graph import validate_graph
from .maps import Instance
from .metric import (DEFAULT_TOL, CoordinateSpace, TabulatedSpace,
                     pair_distance, validate_metric, validate_sets)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _fmt_point(p) -> str:
    if isinstance(p, tuple):
        return "(" + ", ".join(repr(float(c)) for c in p) + ")"
    return str(p)


def _fmt_edge(edge) -> str:
    if edge is None:
        return "none"
    return _fmt_point(edge[0]) + " -> " + _fmt_point(edge[1])


class Report:
    def __init__(self):
        self.lines = []

    def add(self, key, value):
        self.lines.append(f"{key}: {value}")

    def section(self, name):
        self.lines.append(f"[{name}]")

    def emit(self):
        sys.stdout.write("\n".join(self.lines) + "\n")


def _load(path) -> Instance:
    try:
        return instances.load_instance(path)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_start(inst: Instance, text: str):
    try:
        if isinstance(inst.space, TabulatedSpace):
            return int(text)
        coords = tuple(float(tok) for tok in text.split(","))
        if len(coords) != inst.space.dimension:
            raise ValueError(f"expected {inst.space.dimension} coordinates")
        return coords
    except ValueError as exc:
        print(f"error: bad start point {text!r}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _echo(rep: Report, inst: Instance, args):
    rep.add("command", args.command)
    rep.add("instance", inst.name)
    rep.add("kind", inst.kind)
    rep.add("points", len(inst.points))
    rep.add("tolerance", _fmt(args.tol))


def _validation_block(rep: Report, inst: Instance, tol: float) -> bool:
    reports = [("metric", validate_metric(inst.space, tol)),
               ("sets", validate_sets(inst.space, inst.sets)),
               ("graph", validate_graph(inst.graph, inst.points))]
    if inst.map_pair is not None:
        reports.append(("cyclic", operators.validate_pair(inst)))
    elif inst.cyclic_map is not None:
        reports.append(("cyclic", operators.validate_cyclic(inst)))
    ok = True
    for label, report in reports:
        rep.add(f"{label}-valid", _fmt(report.ok))
        for v in report.violations:
            rep.add(f"{label}-violation", str(v))
            ok = False
    return ok


def cmd_validate(args) -> int:
    inst = _load(args.instance)
    rep = Report()
    _echo(rep, inst, args)
    ok = _validation_block(rep, inst, args.tol)
    rep.add("exit-status", 0 if ok else 1)
    rep.emit()
    return EXIT_OK if ok else EXIT_NEGATIVE


def _classify_block(rep: Report, inst: Instance, args) -> int:
    rep.add("d(A,B)", _fmt(inst.d_ab))
    if inst.map_pair is not None:
        ok, edge = operators.pair_preserves_edges(inst)
        rep.add("pair-preserves-edges", _fmt(ok))
        if not ok:
            rep.add("violating-edge", _fmt_edge(edge))
        return EXIT_OK if ok else EXIT_NEGATIVE
    try:
        est = operators.min_contraction_factor(inst)
    except ClassificationError as exc:
        rep.add("classification-error", str(exc))
        return EXIT_NEGATIVE
    if est.contractive:
        rep.add("contraction-factor", _fmt(est.alpha_min))
    else:
        rep.add("contraction-factor", "not-contractive")
        rep.add("worst-ratio", _fmt(est.alpha_min))
    if est.worst_edge is not None:
        rep.add("worst-edge", _fmt_edge(est.worst_edge))
    nonexp = operators.is_edge_nonexpansive(inst, tol=args.tol)
    rep.add("nonexpansive", _fmt(nonexp.ok))
    alpha = getattr(args, "alpha", None)
    if alpha is not None:
        chk = operators.is_g_contraction(inst, alpha, tol=args.tol)
        rep.add(f"g-contraction({_fmt(alpha)})", _fmt(chk.ok))
        if not chk.ok:
            rep.add("contraction-worst-edge", _fmt_edge(chk.worst_edge))
    params = operators.crr_params_feasible(inst, getattr(args, "crr_grid", 0.05),
                                           tol=args.tol)
    if params is None:
        rep.add("crr-params", "none")
    else:
        rep.add("crr-params",
                f"alpha={_fmt(params.alpha)} beta={_fmt(params.beta)} gamma={_fmt(params.gamma)}")
        rep.add("crr-rate-k", _fmt(params.k))
    return EXIT_OK


def cmd_classify(args) -> int:
    inst = _load(args.instance)
    rep = Report()
    _echo(rep, inst, args)
    code = _classify_block(rep, inst, args)
    rep.add("exit-status", code)
    rep.emit()
    return code


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    rep = Report()
    _echo(rep, inst, args)
    rep.add("mode", args.mode)
    rep.add("epsilon", _fmt(args.epsilon))
    cfg = solver.SolveConfig(args.epsilon, args.max_iter, args.tol)
    try:
        if args.mode == "single":
            x0 = _parse_start(inst, args.start) if args.start else inst.sets.a[0]
            rep.add("start", _fmt_point(x0))
            result = solver.find_proximity_point(inst, x0, cfg)
            _solve_report(rep, inst, result, cfg)
        elif args.mode == "parallel":
            x0 = _parse_start(inst, args.start) if args.start else inst.sets.a[0]
            y0 = _parse_start(inst, args.start_b) if args.start_b else inst.sets.b[0]
            rep.add("start", _fmt_point(x0))
            rep.add("start-b", _fmt_point(y0))
            result = solver.two_map_parallel(inst, x0, y0, cfg)
            _pair_report(rep, result)
        else:
            x0 = _parse_start(inst, args.start) if args.start else inst.sets.a[0]
            y0 = _parse_start(inst, args.start_b) if args.start_b else inst.sets.b[0]
            if args.alpha is None or args.gamma is None:
                print("error: alternating mode needs --alpha and --gamma", file=sys.stderr)
                return EXIT_USAGE
            rep.add("start", _fmt_point(x0))
            rep.add("start-b", _fmt_point(y0))
            result = solver.two_map_alternating(inst, x0, y0, args.alpha, args.gamma, cfg)
            _pair_report(rep, result)
            if result.bounds:
                for n, b in enumerate(result.bounds):
                    rep.add("gap-bound", f"{n} {_fmt(b)}")
    except (DomainError, OrbitError, HypothesisError) as exc:
        rep.add("error", str(exc))
        rep.add("exit-status", EXIT_NEGATIVE)
        rep.emit()
        return EXIT_NEGATIVE
    code = EXIT_OK if result.found else EXIT_NEGATIVE
    rep.add("exit-status", code)
    rep.emit()
    return code


_STEP_PREVIEW = 12


def _solve_report(rep: Report, inst: Instance, result: solver.SolveResult,
                  cfg: solver.SolveConfig):
    rep.add("status", result.status)
    rep.add("iterations", result.iterations)
    res = result.trace.residuals
    for n, r in enumerate(res[:_STEP_PREVIEW]):
        rep.add("step", f"{n} {_fmt_point(result.trace.points[n])} residual={_fmt(r)}")
    if len(res) > _STEP_PREVIEW:
        rep.add("steps-truncated", len(res) - _STEP_PREVIEW)
    if result.witness is not None:
        rep.add("witness", _fmt_point(result.witness))
    if result.found and inst.cyclic_map is not None:
        params = operators.crr_params_feasible(inst, 0.1, tol=cfg.tol)
        if params is not None and result.trace.residuals:
            d0 = result.trace.residuals[0] + inst.d_ab
            bound = solver.crr_iteration_bound(d0, params.k, inst.d_ab, cfg.epsilon)
            rep.add("crr-iteration-bound", bound)


def _pair_report(rep: Report, result: solver.SolveResult):
    rep.add("status", result.status)
    rep.add("iterations", result.iterations)
    res = result.trace.residuals
    for n, r in enumerate(res[:_STEP_PREVIEW]):
        x, y = result.trace.points[n]
        rep.add("step", f"{n} {_fmt_point(x)} | {_fmt_point(y)} residual={_fmt(r)}")
    if len(res) > _STEP_PREVIEW:
        rep.add("steps-truncated", len(res) - _STEP_PREVIEW)
    if result.witness is not None:
        x, y = result.witness
        rep.add("witness", _fmt_point(x) + " | " + _fmt_point(y))


_MEMBER_PREVIEW = 20


def _enumerate_block(rep: Report, inst: Instance, epsilon: float, mode: str,
                     tol: float) -> int:
    rep.add("epsilon", _fmt(epsilon))
    dab = inst.d_ab
    rep.add("d(A,B)", _fmt(dab))
    if inst.map_pair is not None:
        pset = analysis.enumerate_pair_set(inst, epsilon, tol=tol)
        rep.add("set-size", len(pset.members))
        for x, y in pset.members[:_MEMBER_PREVIEW]:
            rep.add("member", _fmt_point(x) + " | " + _fmt_point(y))
        if len(pset.members) > _MEMBER_PREVIEW:
            rep.add("members-truncated", len(pset.members) - _MEMBER_PREVIEW)
        if pset.members:
            rep.add("pair-diameter", _fmt(analysis.pair_diameter(inst, pset)))
        return len(pset.members)
    ps = analysis.enumerate_proximity_set(inst, epsilon, mode=mode, tol=tol)
    rep.add("mode", mode)
    rep.add("set-size", len(ps.members))
    for p in ps.members[:_MEMBER_PREVIEW]:
        rep.add("member", _fmt_point(p))
    if len(ps.members) > _MEMBER_PREVIEW:
        rep.add("members-truncated", len(ps.members) - _MEMBER_PREVIEW)
    if ps.members:
        rep.add("set-diameter", _fmt(analysis.proximity_diameter(inst, ps)))
        try:
            est = operators.min_contraction_factor(inst)
        except ClassificationError:
            est = None
        if est is not None and est.contractive and est.alpha_min < 1.0:
            bound = analysis.contraction_diam_bound(est.alpha_min, epsilon, dab)
            rep.add("contraction-diam-bound", _fmt(bound))
    return len(ps.members)


def cmd_enumerate(args) -> int:
    inst = _load(args.instance)
    rep = Report()
    _echo(rep, inst, args)
    size = _enumerate_block(rep, inst, args.epsilon, args.mode, args.tol)
    code = EXIT_NEGATIVE if (args.require_nonempty and size == 0) else EXIT_OK
    rep.add("exit-status", code)
    rep.emit()
    return code


_DEMO_STEPS = {"interval": 0.01, "ellipse": 0.1, "segments": 0.01}


def cmd_demo(args) -> int:
    if args.name not in _DEMO_STEPS:
        print(f"error: unknown demo {args.name!r}", file=sys.stderr)
        return EXIT_USAGE
    step = args.grid_step if args.grid_step is not None else _DEMO_STEPS[args.name]
    builder = {"interval": instances.interval_example,
               "ellipse": instances.ellipse_example,
               "segments": instances.segments_example}[args.name]
    try:
        inst = builder(step)
    except GproximityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = Report()
    _echo(rep, inst, args)
    rep.add("grid-step", _fmt(step))
    rep.section("validate")
    ok = _validation_block(rep, inst, args.tol)
    rep.section("classify")
    _classify_block(rep, inst, args)
    cfg = solver.SolveConfig(0.3, 200, args.tol)
    if args.name == "interval":
        rep.section("solve")
        rep.add("start", _fmt_point((-3.0,)))
        rep.add("epsilon", _fmt(0.3))
        result = solver.find_proximity_point(inst, (-3.0,), cfg)
        _solve_report(rep, inst, result, cfg)
        rep.section("enumerate-exact")
        _enumerate_block(rep, inst, 0.0, analysis.STRICT, args.tol)
        rep.section("enumerate")
        _enumerate_block(rep, inst, 0.3, analysis.STRICT, args.tol)
    elif args.name == "ellipse":
        rep.section("solve")
        # reflection across the y-axis: only minor-axis points make progress
        start = (0.0, 0.0)
        rep.add("start", _fmt_point(start))
        rep.add("epsilon", _fmt(0.3))
        result = solver.find_proximity_point(inst, start, cfg)
        _solve_report(rep, inst, result, cfg)
        rep.section("enumerate")
        _enumerate_block(rep, inst, 0.01, analysis.STRICT, args.tol)
    else:
        rep.section("solve-parallel")
        x0, y0 = inst.sets.a[0], inst.sets.b[-1]
        rep.add("start", _fmt_point(x0))
        rep.add("start-b", _fmt_point(y0))
        pcfg = solver.SolveConfig(0.01, 50, args.tol)
        result = solver.two_map_parallel(inst, x0, y0, pcfg)
        _pair_report(rep, result)
        rep.section("solve-alternating")
        result = solver.two_map_alternating(inst, (0.0, 0.0), (1.0, 1.0), 0.0, 1.0, pcfg)
        _pair_report(rep, result)
        rep.section("enumerate")
        _enumerate_block(rep, inst, 0.01, analysis.STRICT, args.tol)
    rep.add("exit-status", 0 if ok else 1)
    rep.emit()
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gproximity",
        description="Approximate best proximity pairs on graph-endowed metric spaces")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="absolute comparison slack (default 1e-9)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check metric, graph and cyclicity axioms")
    p.add_argument("instance")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="classify the map against the operator classes")
    p.add_argument("instance")
    p.add_argument("--alpha", type=float, default=None,
                   help="also test the contraction condition at this factor")
    p.add_argument("--crr-grid", type=float, default=0.05,
                   help="grid resolution for the constants search")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="run an iteration scheme")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["single", "parallel", "alternating"],
                   default="single")
    p.add_argument("--start", default=None,
                   help="start point: index, or comma-separated coordinates")
    p.add_argument("--start-b", default=None, help="second start point for pair modes")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="brute-force the approximate proximity set")
    p.add_argument("instance")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--mode", choices=[analysis.STRICT, analysis.VACUOUS],
                   default=analysis.STRICT)
    p.add_argument("--require-nonempty", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("demo", help="reproduce a worked example end to end")
    p.add_argument("name")
    p.add_argument("--grid-step", type=float, default=None)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except GproximityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_NEGATIVE
    print(f"elapsed-seconds: {time.perf_counter() - started:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

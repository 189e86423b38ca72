"""Command-line front end.

Results go to stdout as ``key=value`` lines (plus a bare verdict word where
one applies); diagnostics go to stderr.  Exit codes: 0 SAT/valid/success,
1 UNSAT/invalid, 2 UNKNOWN/budget, 64 usage, 65 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .config import load_config
from .drawing import Graph, LayeredDrawing, min_layers_fixed_drawing, validate
from .errors import GeoThickError, MalformedInput
from .geometry import format_rational

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_MALFORMED = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(**kv) -> None:
    for k, v in kv.items():
        print(f"{k}={v}")


# --- subcommands ---------------------------------------------------------------------------


def cmd_validate(args, cfg) -> int:
    d = formats.parse_drawing(_read(args.drawing))
    report = validate(d)
    if report.is_empty:
        print("VALID")
        return EXIT_OK
    print("INVALID")
    _emit(crossings=len(report))
    for e1, e2, c in report.pairs:
        print(f"crossing={e1[0]}-{e1[1]},{e2[0]}-{e2[1]},{c}")
    return EXIT_NO


def cmd_min_layers(args, cfg) -> int:
    g = formats.parse_graph(_read(args.graph))
    text = _read(args.positions)
    gamma = formats.parse_drawing(text).gamma if text.lstrip().startswith("layers") else formats.parse_positions(text)
    if set(gamma) != set(g.vertices):
        raise MalformedInput("positions must cover exactly the graph's vertices")
    layers, chi = min_layers_fixed_drawing(g, gamma, cfg.max_coloring_edges)
    _emit(layers=layers)
    if args.output:
        _write(args.output, formats.serialize_drawing(LayeredDrawing(g, gamma, chi, layers)))
    return EXIT_OK


def cmd_kernel_vc(args, cfg) -> int:
    from .kernel_vc import kernelize_vc

    g = formats.parse_graph(_read(args.graph))
    kernel, trace = kernelize_vc(g, args.layers)
    _emit(kernel_vertices=kernel.n, kernel_edges=kernel.m, k_prime=trace.k_prime, threshold=trace.threshold, deleted=len(trace.deletions))
    if args.output:
        _write(args.output, formats.serialize_graph(kernel))
    if args.trace:
        _write(args.trace, formats.serialize_vc_trace(trace))
    return EXIT_OK


def cmd_kernel_fen(args, cfg) -> int:
    from .kernel_fen import kernelize_fen

    g = formats.parse_graph(_read(args.graph))
    kernel, trace = kernelize_fen(g, args.layers)
    _emit(kernel_vertices=kernel.n, kernel_edges=kernel.m, k=trace.k, pruned=len(trace.pruned), removed_paths=len(trace.paths))
    if args.output:
        _write(args.output, formats.serialize_graph(kernel))
    if args.trace:
        _write(args.trace, formats.serialize_fen_trace(trace))
    return EXIT_OK


def cmd_lift(args, cfg) -> int:
    from .kernel_fen import FenTrace, lift_fen
    from .kernel_vc import lift_vc

    d = formats.parse_drawing(_read(args.drawing))
    trace = formats.parse_trace(_read(args.trace))
    original = formats.parse_graph(_read(args.graph)) if args.graph else None
    lifted = lift_fen(d, trace, original) if isinstance(trace, FenTrace) else lift_vc(d, trace, original)
    _emit(lifted_vertices=lifted.graph.n, lifted_edges=lifted.graph.m, layers=lifted.layers)
    if args.output:
        _write(args.output, formats.serialize_drawing(lifted))
    return EXIT_OK


def cmd_solve_gte_edges(args, cfg) -> int:
    from .gte import solve_gte_edges

    inst = formats.parse_instance(_read(args.instance))
    chi = solve_gte_edges(inst)
    if chi is None:
        print("UNSAT")
        return EXIT_NO
    print("SAT")
    for e in inst.missing_edges:
        print(f"color={e[0]}-{e[1]}:{chi[e]}")
    if args.output:
        _write(args.output, formats.serialize_drawing(inst.completed(chi)))
    return EXIT_OK


def cmd_emit_etr(args, cfg) -> int:
    from .etr import build_formula, emit_smtlib, specialize_for_extension

    obj = formats.parse_instance_or_graph(_read(args.input))
    if isinstance(obj, Graph):
        if args.layers is None:
            raise UsageError("--layers is required for a graph input")
        f = build_formula(obj, args.layers, args.real_colors)
    else:
        layers = args.layers or obj.layers
        if layers != obj.layers:
            raise UsageError(f"--layers {layers} disagrees with the instance's {obj.layers} layers")
        f = specialize_for_extension(build_formula(obj.graph, layers, args.real_colors), obj)
    script = emit_smtlib(f)
    if args.output:
        _write(args.output, script)
        _emit(variables=len(f.variables), conjuncts=len(f.conjuncts), max_degree=f.max_degree(), trivially_true=f.trivially_true)
    else:
        sys.stdout.write(script)
    return EXIT_OK


def cmd_solve_etr(args, cfg) -> int:
    from .smt import solve_external

    res = solve_external(_read(args.script), None, cfg.solver, cfg.solver_timeout)
    print(res.status.upper())
    for name in sorted(res.model):
        print(f"{name}={format_rational(res.model[name])}")
    return {"sat": EXIT_OK, "unsat": EXIT_NO}.get(res.status, EXIT_UNKNOWN)


def _report_hardness(hi, args) -> int:
    inst = hi.instance
    _emit(
        source=hi.source,
        layers=inst.layers,
        vertices=inst.graph.n,
        edges=inst.graph.m,
        missing_vertices=len(inst.missing_vertices),
        missing_edges=len(inst.missing_edges),
        expected=hi.expected,
        certainty=hi.certainty,
    )
    if args.verify is not None and hi.gadgets:
        from .reductions.verify import verify_gadget_properties

        rep = verify_gadget_properties(hi, args.verify, args.seed or 0)
        for name, ok in rep.checks.items():
            print(f"check_{name}={'pass' if ok else 'fail'}")
        for f in rep.failures:
            print(f, file=sys.stderr)
        if not rep.ok:
            return EXIT_NO
    if args.output:
        _write(args.output, formats.serialize_hardness(hi))
    return EXIT_OK


def cmd_gen_w1(args, cfg) -> int:
    from .reductions.w1 import gen_w1_instance

    X, parts, k = formats.parse_mcc(_read(args.mcc))
    return _report_hardness(gen_w1_instance(X, parts, k), args)


def cmd_gen_np(args, cfg) -> int:
    from .reductions.sat3 import gen_np_instance

    return _report_hardness(gen_np_instance(formats.parse_dimacs(_read(args.cnf))), args)


def cmd_render(args, cfg) -> int:
    from .svg import render_svg

    d = formats.parse_drawing(_read(args.drawing))
    _write(args.output, render_svg(d, size=args.size, labels=args.labels))
    return EXIT_OK


def cmd_decide(args, cfg) -> int:
    from .gte import decide_gt_small

    g = formats.parse_graph(_read(args.graph))
    res = decide_gt_small(g, args.layers, cfg)
    print(res.verdict)
    _emit(method=res.method)
    if res.drawing is not None and args.output:
        _write(args.output, formats.serialize_drawing(res.drawing))
    return {"SAT": EXIT_OK, "UNSAT": EXIT_NO}.get(res.verdict, EXIT_UNKNOWN)


# --- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--solver", help="SMT solver command")
    common.add_argument("--timeout", type=float, help="solver timeout in seconds")
    common.add_argument("--budget-coloring", type=int, help="largest conflict graph colored exactly")
    common.add_argument("--budget-enumeration", type=int, help="largest exhaustive enumeration")
    common.add_argument("--budget-placement", type=int, help="candidate placements tried")

    p = _Parser(prog="geothick", description="Geometric thickness toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "report monochromatic crossings of a drawing")
    sp.add_argument("drawing")
    sp = add("min-layers", cmd_min_layers, "fewest layers for fixed vertex positions")
    sp.add_argument("graph")
    sp.add_argument("positions")
    sp.add_argument("-o", "--output")
    for name, fn in (("kernel-vc", cmd_kernel_vc), ("kernel-fen", cmd_kernel_fen)):
        sp = add(name, fn, f"{name.split('-')[1]} kernelization")
        sp.add_argument("graph")
        sp.add_argument("--layers", type=int, required=True)
        sp.add_argument("-o", "--output", help="kernel graph file")
        sp.add_argument("--trace", help="trace file for lifting")
    sp = add("lift", cmd_lift, "lift a kernel drawing back to the original graph")
    sp.add_argument("drawing")
    sp.add_argument("trace")
    sp.add_argument("--graph", help="original graph, checked against the result")
    sp.add_argument("-o", "--output")
    sp = add("solve-gte-edges", cmd_solve_gte_edges, "extend a drawing by its missing edges")
    sp.add_argument("instance")
    sp.add_argument("-o", "--output")
    sp = add("emit-etr", cmd_emit_etr, "write the polynomial encoding as SMT-LIB")
    sp.add_argument("input", help="graph or extension instance")
    sp.add_argument("--layers", type=int)
    sp.add_argument("--real-colors", action="store_true")
    sp.add_argument("-o", "--output")
    sp = add("solve-etr", cmd_solve_etr, "run the external solver on an SMT-LIB script")
    sp.add_argument("script")
    for name, fn, arg in (("gen-w1", cmd_gen_w1, "mcc"), ("gen-np", cmd_gen_np, "cnf")):
        sp = add(name, fn, f"generate a hardness instance from a {arg} file")
        sp.add_argument(arg)
        sp.add_argument("-o", "--output")
        sp.add_argument("--verify", type=int, metavar="SAMPLES", help="run the gadget self-checks")
    sp = add("render", cmd_render, "render a drawing as SVG")
    sp.add_argument("drawing")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--size", type=int, default=600)
    sp.add_argument("--labels", action="store_true")
    sp = add("decide", cmd_decide, "decide geometric thickness at most L for a small graph")
    sp.add_argument("graph")
    sp.add_argument("--layers", type=int, required=True)
    sp.add_argument("-o", "--output")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config).with_overrides(
            seed=args.seed,
            solver=args.solver,
            solver_timeout=args.timeout,
            max_coloring_edges=args.budget_coloring,
            enumeration_budget=args.budget_enumeration,
            placement_budget=args.budget_placement,
        )
        return args.fn(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeoThickError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

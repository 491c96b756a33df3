"""
Command-line front end.

    ij-tamari construct   --I 1,2,3,5,9 --Jbar 2,7,8,9 --format dot
    ij-tamari reduce      --I 1,2 --Jbar 2,3,4 --order length
    ij-tamari triangulate --I 1,2,3,5,9 --Jbar 2,7,8,9 --space pair
    ij-tamari verify      --I 1,2,3,5,9 --Jbar 2,7,8,9
    ij-tamari count       --nu ENEENNE --format csv
    ij-tamari sweep       --max-n 5 --random-count 50 --seed 7

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 resource limit.
"""

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import graphviz

from . import __version__
from .algebra import (LeftmostOrder, LengthOrder, ReductionOrder, ReductionTree, build_reduction_tree,
                      coefficient_list, evaluate_at_one, length_pick, monomial_of, non_alternating_pairs,
                      reduced_form_of_tree, shift_beta)
from .config import Settings, load_settings
from .errors import (ConfigError, GraphError, InvalidPair, InvariantViolation, ReductionError, ResourceLimitError,
                     SpaceMismatchError)
from .geometry import FLOW, PAIR, facet_simplices, polytopes_of, verify_reduction_lemma, verify_theorem_3_1
from .ij_construction import ValidPair, build_A, build_G, build_Ghat, normalize_pair, prec, prec_quotient, validate_pair
from .reports import Report
from .sweep import run_sweep
from .tamari import (IJForest, LatticePath, arc_of_vertex, dual_graph, nu_from_pair, nu_table,
                     triangulation_report, verify_corollary_4_9)
from .telemetry import configure_console, get_logger, log_custom_event, log_stage, trace_context

logger = get_logger(__name__)

FORMAT_TAG = "ij-tamari/1"
COMMANDS = ("construct", "reduce", "triangulate", "verify", "count", "sweep")
FORMATS = ("text", "json", "dot", "csv")
ORDERS = ("length", "leftmost")
CHECKS = ("theorem", "lemma", "corollary", "triangulation", "all")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_LIMIT = 3

_FORMATS_BY_COMMAND = {
    "construct": ("text", "json", "dot"),
    "reduce": ("text", "json", "dot"),
    "triangulate": ("text", "json"),
    "verify": ("text", "json"),
    "count": ("text", "json", "csv"),
    "sweep": ("text", "json"),
}


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, fully parsed."""

    command: str
    I: Optional[Tuple[int, ...]] = None
    Jbar: Optional[Tuple[int, ...]] = None
    nu: Optional[str] = None
    order: str = "length"
    simple: bool = False
    normalize: bool = False
    output_format: str = "text"
    space: str = PAIR
    check: str = "all"
    seed: int = 0
    max_n: int = 5
    random_count: int = 0
    random_max_n: int = 9
    max_reductions: Optional[int] = None
    workers: Optional[int] = None
    output: Optional[Path] = None

    @property
    def has_pair(self) -> bool:
        return self.I is not None or self.Jbar is not None

    def validate(self) -> None:
        """
        Raises:
            ConfigError: on a missing or conflicting input, or a non-positive limit
        """
        if self.command not in COMMANDS:
            raise ConfigError("unknown command", {"command": self.command})
        if self.output_format not in _FORMATS_BY_COMMAND[self.command]:
            raise ConfigError(f"{self.command} does not emit {self.output_format}",
                              {"formats": list(_FORMATS_BY_COMMAND[self.command])})
        if self.command == "count":
            if self.has_pair == (self.nu is not None):
                raise ConfigError("count needs exactly one of a pair (--I/--Jbar) or --nu")
        elif self.command != "sweep":
            if self.nu is not None:
                raise ConfigError(f"{self.command} takes a pair, not --nu")
            if self.I is None or self.Jbar is None:
                raise ConfigError(f"{self.command} needs both --I and --Jbar")
        for name in ("max_n", "random_max_n"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive", {name: getattr(self, name)})
        if self.random_count < 0:
            raise ConfigError("random_count must not be negative", {"random_count": self.random_count})
        for name in ("max_reductions", "workers"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError(f"{name} must be positive", {name: value})


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    artifact: str = ""
    error: Optional[str] = None


def parse_int_list(raw: str) -> Tuple[int, ...]:
    """Parse ``1,2,3`` (spaces allowed) into a tuple of ints."""
    items = [item.strip() for item in raw.split(",") if item.strip()]
    try:
        return tuple(int(item) for item in items)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ij-tamari",
                                     description="Reduction trees, flow polytopes and the (I,Jbar)-Tamari complex.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
                        help="console log level (default: IJ_TAMARI_LOG_LEVEL or WARNING)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        sub.add_argument("--format", dest="output_format", choices=formats, default="text")
        sub.add_argument("--output", type=Path, help="write the artifact here instead of stdout")
        sub.add_argument("--max-reductions", type=int, help="cap on leaf reductions per reduction tree")

    def add_pair(sub: argparse.ArgumentParser, required: bool = True) -> None:
        sub.add_argument("--I", dest="I", type=parse_int_list, required=required, help="e.g. 1,2,3,5,9")
        sub.add_argument("--Jbar", dest="Jbar", type=parse_int_list, required=required,
                         help="values of the barred elements, e.g. 2,7,8,9")
        sub.add_argument("--normalize", action="store_true",
                         help="drop elements in no arc instead of rejecting an invalid pair")

    construct = subparsers.add_parser("construct", help="emit A, prec(A), G and Ghat")
    add_pair(construct)
    add_common(construct, _FORMATS_BY_COMMAND["construct"])

    reduce = subparsers.add_parser("reduce", help="reduction tree and reduced form of M_G")
    add_pair(reduce)
    add_common(reduce, _FORMATS_BY_COMMAND["reduce"])
    reduce.add_argument("--order", choices=ORDERS, default="length")
    reduce.add_argument("--simple", action="store_true", help="attach only the G1 and G2 children")

    triangulate = subparsers.add_parser("triangulate", help="facet simplices and their dual graph")
    add_pair(triangulate)
    add_common(triangulate, _FORMATS_BY_COMMAND["triangulate"])
    triangulate.add_argument("--order", choices=ORDERS, default="length")
    triangulate.add_argument("--space", choices=(FLOW, PAIR), default=PAIR)

    verify = subparsers.add_parser("verify", help="run the verifiers on one pair")
    add_pair(verify)
    add_common(verify, _FORMATS_BY_COMMAND["verify"])
    verify.add_argument("--check", choices=CHECKS, default="all")

    count = subparsers.add_parser("count", help="nu-Catalan, Narayana and Schröder numbers")
    add_pair(count, required=False)
    add_common(count, _FORMATS_BY_COMMAND["count"])
    count.add_argument("--nu", help="word over E and N")

    sweep = subparsers.add_parser("sweep", help="verify every small pair plus a random sample")
    add_common(sweep, _FORMATS_BY_COMMAND["sweep"])
    sweep.add_argument("--max-n", type=int, default=5)
    sweep.add_argument("--random-count", type=int, default=0)
    sweep.add_argument("--random-max-n", type=int, default=9)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--workers", type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        I=getattr(args, "I", None),
        Jbar=getattr(args, "Jbar", None),
        nu=getattr(args, "nu", None),
        order=getattr(args, "order", "length"),
        simple=getattr(args, "simple", False),
        normalize=getattr(args, "normalize", False),
        output_format=args.output_format,
        space=getattr(args, "space", PAIR),
        check=getattr(args, "check", "all"),
        seed=getattr(args, "seed", 0),
        max_n=getattr(args, "max_n", 5),
        random_count=getattr(args, "random_count", 0),
        random_max_n=getattr(args, "random_max_n", 9),
        max_reductions=args.max_reductions,
        workers=getattr(args, "workers", None),
        output=args.output,
    )


def _pair(cfg: RunConfig) -> ValidPair:
    if cfg.normalize:
        return normalize_pair(cfg.I, cfg.Jbar)
    return validate_pair(cfg.I, cfg.Jbar)


def _order(name: str) -> ReductionOrder:
    return LeftmostOrder() if name == "leftmost" else LengthOrder()


def _json(command: str, body: Dict[str, Any]) -> str:
    return json.dumps({"format": FORMAT_TAG, "command": command, **body}, ensure_ascii=False, indent=2) + "\n"


# construct

def _arc_dot(vp: ValidPair) -> str:
    dot = graphviz.Digraph("A", graph_attr={"rankdir": "LR"})
    for element in vp.elements():
        dot.node(element.token())
    for arc in build_A(vp):
        dot.edge(str(arc.i), f"{arc.j}b")
    return dot.source


def _construct(cfg: RunConfig, vp: ValidPair, settings: Settings) -> Tuple[int, str]:
    arcs = build_A(vp)
    pm = prec(vp)
    quotient = prec_quotient(arcs, pm, vp)
    g = build_G(vp)
    ag = build_Ghat(vp)
    if cfg.output_format == "dot":
        text = "".join([_arc_dot(vp), quotient.graph.to_dot("precA"), g.to_dot("G"), ag.to_dot("Ghat")])
        return EXIT_OK, text
    if cfg.output_format == "json":
        return EXIT_OK, _json("construct", {
            "pair": vp.to_record(),
            "A": [[arc.i, arc.j] for arc in arcs],
            "prec": {str(j): image for j, image in sorted(pm.items())},
            "prec_A": {**quotient.graph.to_record(), "collapsed": [[arc.i, arc.j] for arc in quotient.collapsed]},
            "G": g.to_record(),
            "Ghat": ag.to_record(),
        })
    lines = [f"pair: {vp.key()}",
             f"A ({len(arcs)} arcs): " + " ".join(arc.label() for arc in arcs),
             "prec: " + " ".join(f"{j}b->{image}" for j, image in sorted(pm.items())),
             f"prec(A) ({len(quotient.graph.edges)} edges): "
             + " ".join(f"({a},{b})" for a, b in quotient.graph.endpoint_pairs()),
             "collapsed: " + " ".join(arc.label() for arc in quotient.collapsed),
             f"G ({len(g.edges)} edges): " + " ".join(f"({a},{b})" for a, b in g.endpoint_pairs()),
             "Ghat sources: " + " ".join(f"(s,{v})" for v in sorted(ag.source_edges)),
             "Ghat sinks: " + " ".join(f"({v},t)" for v in sorted(ag.sink_edges))]
    return EXIT_OK, "\n".join(lines) + "\n"


# reduce

def _tree_dot(tree: ReductionTree) -> str:
    dot = graphviz.Digraph("reduction")
    for node in tree.nodes:
        dot.node(f"n{node.index}", label=monomial_of(node.graph, node.beta_power).render())
    for node in tree.nodes:
        for child in node.children:
            dot.edge(f"n{node.index}", f"n{child}")
    return dot.source


def _reduce(cfg: RunConfig, vp: ValidPair, settings: Settings) -> Tuple[int, str]:
    started = time.time()
    tree = build_reduction_tree(build_G(vp), _order(cfg.order), simple=cfg.simple,
                                max_reductions=settings.max_reductions)
    log_stage("reduction_tree", "reduce", time.time() - started)
    form = reduced_form_of_tree(tree)
    at_one = evaluate_at_one(form)
    if cfg.output_format == "dot":
        return EXIT_OK, _tree_dot(tree)
    if cfg.output_format == "json":
        return EXIT_OK, _json("reduce", {
            "pair": vp.to_record(),
            "order": tree.order_name,
            "simple": tree.simple,
            "nodes": [{
                "index": node.index,
                "parent": node.parent,
                "beta_power": node.beta_power,
                "pair": [list(p) for p in node.pair] if node.pair else None,
                "children": list(node.children),
                "edges": [list(e) for e in node.graph.endpoint_pairs()],
            } for node in tree.nodes],
            "leaves": list(tree.leaf_indices),
            "reduced_form": form.to_records(),
            "p(1,beta)": coefficient_list(at_one),
            "p(1,beta-1)": coefficient_list(shift_beta(at_one, -1)),
        })
    lines = [f"pair: {vp.key()}", f"order: {tree.order_name}", f"simple: {tree.simple}",
             f"nodes: {len(tree.nodes)}", f"leaves: {len(tree.leaf_indices)}",
             f"leaves by beta power: {tree.leaves_by_beta()}", "tree:"]
    for node in tree.nodes:
        reduced = f" reduce {node.pair[0]}+{node.pair[1]} -> {list(node.children)}" if node.pair else ""
        lines.append(f"  [{node.index}] {monomial_of(node.graph, node.beta_power).render()}{reduced}")
    lines.append(f"reduced form: {form.render()}")
    lines.append(f"p(1,beta): {coefficient_list(at_one)}")
    return EXIT_OK, "\n".join(lines) + "\n"


# triangulate

def _triangulate(cfg: RunConfig, vp: ValidPair, settings: Settings) -> Tuple[int, str]:
    tree = build_reduction_tree(build_G(vp), _order(cfg.order), max_reductions=settings.max_reductions)
    simplices = facet_simplices(tree, cfg.space, vp)
    pair_simplices = simplices if cfg.space == PAIR else facet_simplices(tree, PAIR, vp)
    forests = [IJForest.of(arc_of_vertex(v) for v in s.vertices) for s in pair_simplices]
    adjacency = dual_graph(forests)
    polytope = polytopes_of(vp)[cfg.space]
    unimodular = all(s.is_unimodular_in(polytope) for s in simplices)
    if cfg.output_format == "json":
        return EXIT_OK, _json("triangulate", {
            "pair": vp.to_record(),
            "space": cfg.space,
            "dim": polytope.dim,
            "facets": [[v.label() for v in s.vertices] for s in simplices],
            "forests": [forest.to_record() for forest in forests],
            "dual_graph": {str(index): neighbours for index, neighbours in adjacency.items()},
            "unimodular": unimodular,
        })
    lines = [f"pair: {vp.key()}", f"space: {cfg.space}", f"dim: {polytope.dim}",
             f"facets: {len(simplices)}", f"unimodular: {unimodular}"]
    for index, (simplex, forest) in enumerate(zip(simplices, forests)):
        lines.append(f"  [{index}] {forest.label()}")
        lines.extend(f"      {v.label()}" for v in simplex.vertices)
    lines.append("dual graph:")
    lines.extend(f"  {index}: {neighbours}" for index, neighbours in adjacency.items())
    return EXIT_OK, "\n".join(lines) + "\n"


# verify

def _lemma_report(vp: ValidPair, settings: Settings) -> Report:
    g = build_G(vp)
    if not non_alternating_pairs(g):
        report = Report("reduction lemma", subject=vp.to_record())
        report.skip("G(I,Jbar) is alternating")
        return report
    return verify_reduction_lemma(g, length_pick(g), vp, settings.max_flow_count)


def _verify(cfg: RunConfig, vp: ValidPair, settings: Settings) -> Tuple[int, str]:
    wanted = CHECKS[:-1] if cfg.check == "all" else (cfg.check,)
    reports: List[Report] = []
    if "theorem" in wanted:
        reports.append(verify_theorem_3_1(vp))
    if "lemma" in wanted:
        reports.append(_lemma_report(vp, settings))
    if "corollary" in wanted:
        reports.append(verify_corollary_4_9(vp, max_reductions=settings.max_reductions))
    if "triangulation" in wanted:
        if vp.size > settings.max_pair_size and cfg.check == "all":
            skipped = Report("triangulation", subject=vp.to_record())
            skipped.skip(f"|I|+|Jbar| = {vp.size} exceeds max_pair_size = {settings.max_pair_size}")
            reports.append(skipped)
        else:
            reports.append(triangulation_report(vp, settings.max_reductions, settings.max_flow_count))
    passed = all(report.passed for report in reports)
    exit_code = EXIT_OK if passed else EXIT_FAILED
    if cfg.output_format == "json":
        return exit_code, _json("verify", {"passed": passed, "reports": [r.to_record() for r in reports]})
    return exit_code, "".join(report.to_text() for report in reports)


# count

def _count(cfg: RunConfig, settings: Settings) -> Tuple[int, str]:
    nu = nu_from_pair(_pair(cfg)) if cfg.has_pair else LatticePath(cfg.nu.strip().upper())
    rows = nu_table([nu])
    if cfg.output_format == "json":
        return EXIT_OK, _json("count", {"rows": rows})
    if cfg.output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["nu", "catalan", "narayana", "schroeder"])
        for row in rows:
            writer.writerow([row["nu"], row["catalan"],
                             " ".join(map(str, row["narayana"])), " ".join(map(str, row["schroeder"]))])
        return EXIT_OK, buffer.getvalue()
    lines = []
    for row in rows:
        lines.append(f"nu: {row['nu'] or '(empty)'}")
        lines.append(f"catalan: {row['catalan']}")
        lines.append(f"narayana: {row['narayana']}")
        lines.append(f"schroeder: {row['schroeder']}")
    return EXIT_OK, "\n".join(lines) + "\n"


# sweep

def _sweep(cfg: RunConfig, settings: Settings) -> Tuple[int, str]:
    result = run_sweep(settings, max_n=cfg.max_n, random_count=cfg.random_count,
                       random_max_n=cfg.random_max_n, seed=cfg.seed)
    exit_code = EXIT_OK if result.passed else EXIT_FAILED
    if cfg.output_format == "json":
        return exit_code, _json("sweep", {
            "summary": result.summary(),
            "passed": result.passed,
            "failures": [pair_result.to_record() for pair_result in result.failures],
        })
    lines = [f"{key}: {value}" for key, value in result.summary().items()]
    lines.append("PASS" if result.passed else "FAIL")
    text = "\n".join(lines) + "\n"
    for pair_result in result.failures:
        text += f"\n{pair_result.pair.key()}\n"
        text += "".join(report.to_text() for report in pair_result.reports if not report.passed)
    return exit_code, text


def _dispatch(cfg: RunConfig, settings: Settings) -> Tuple[int, str]:
    if cfg.command == "count":
        return _count(cfg, settings)
    if cfg.command == "sweep":
        return _sweep(cfg, settings)
    vp = _pair(cfg)
    handlers = {"construct": _construct, "reduce": _reduce, "triangulate": _triangulate, "verify": _verify}
    return handlers[cfg.command](cfg, vp, settings)


def run(cfg: RunConfig, settings: Optional[Settings] = None) -> RunResult:
    """
    Execute one command.

    Args:
        cfg: the parsed invocation
        settings: limits; loaded from the environment when omitted

    Returns:
        RunResult: exit code, emitted artifact and error message if any
    """
    with trace_context() as trace_id:
        started = time.time()
        try:
            cfg.validate()
            settings = settings or load_settings()
            settings = settings.with_overrides(max_reductions=cfg.max_reductions, workers=cfg.workers)
            logger.info("command started", {"command": cfg.command, "trace_id": trace_id})
            exit_code, artifact = _dispatch(cfg, settings)
        except ResourceLimitError as exc:
            logger.error(f"resource limit: {exc}", exc.details)
            return RunResult(EXIT_LIMIT, error=str(exc))
        except InvariantViolation as exc:
            logger.error(f"internal postcondition failed: {exc}", exc.details)
            return RunResult(EXIT_FAILED, error=str(exc))
        except (InvalidPair, GraphError, ReductionError, SpaceMismatchError, ConfigError, ValueError) as exc:
            logger.warning(f"invalid input: {exc}", getattr(exc, "details", {}))
            return RunResult(EXIT_INVALID, error=str(exc))

        duration = time.time() - started
        log_stage(cfg.command, cfg.command, duration, exit_code == EXIT_OK)
        log_custom_event("command_completed", {"command": cfg.command, "exit_code": exit_code},
                         {"duration_seconds": duration})
        return RunResult(exit_code, artifact)


def _emit(cfg: RunConfig, result: RunResult, settings_output_dir: Optional[Path]) -> None:
    if not result.artifact:
        return
    target = cfg.output
    if target is None and settings_output_dir is not None:
        extension = "txt" if cfg.output_format == "text" else cfg.output_format
        target = settings_output_dir / f"{cfg.command}.{extension}"
    if target is None:
        sys.stdout.write(result.artifact)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(result.artifact, encoding="utf-8")
    logger.info("artifact written", {"path": str(target)})


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings()
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    configure_console(args.log_level or settings.log_level)

    cfg = config_from_args(args)
    result = run(cfg, settings)
    if result.error:
        sys.stderr.write(f"error: {result.error}\n")
    _emit(cfg, result, settings.output_dir)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""
Run every verifier over a population of valid pairs.

The population is every valid pair with values in [max_n] followed by a
seeded random sample. Pairs are independent, so they may be handed to a
process pool; results always come back in population order.
"""

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional

from .algebra import ReductionTree
from .config import Settings
from .errors import IJTamariError, ResourceLimitError
from .geometry import node_flow_polytope, verify_reduction_lemma, verify_theorem_3_1
from .ij_construction import ValidPair, all_valid_pairs, build_Ghat, random_valid_pairs
from .reports import Report
from .tamari import (length_tree, order_independence_report, prec_bijection_report, triangulation_report,
                     verify_corollary_4_9)
from .telemetry import get_logger, log_stage, trace_context

logger = get_logger(__name__)

REDUCTION_LEMMA_MAX_DIM = 6


@dataclass
class PairResult:
    """Reports for one pair; ``skipped`` names the checks left out for size."""

    pair: ValidPair
    reports: List[Report] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def to_record(self) -> Dict[str, Any]:
        return {
            "pair": self.pair.to_record(),
            "passed": self.passed,
            "reports": [report.to_record() for report in self.reports],
            "skipped": list(self.skipped),
        }


def reduction_lemma_report(vp: ValidPair, tree: ReductionTree, seed: int, samples: int,
                           max_flow_count: int) -> Report:
    """Reduction lemma on up to ``samples`` seeded internal nodes of dimension at most 6."""
    root_ag = build_Ghat(vp)
    candidates = [node for node in tree.internal_nodes()
                  if node_flow_polytope(root_ag, node.graph).dim <= REDUCTION_LEMMA_MAX_DIM]
    rng = random.Random(seed)
    chosen = rng.sample(candidates, min(samples, len(candidates)))
    report = Report("reduction lemma sample", subject=vp.to_record())
    report.summary["instances"] = len(chosen)
    for node in sorted(chosen, key=lambda item: item.index):
        report.extend(verify_reduction_lemma(node.graph, node.pair, vp, max_flow_count),
                      prefix=f"node {node.index}: ")
    return report


def verify_pair(vp: ValidPair, settings: Settings, seed: int = 0, lemma_samples: int = 1) -> PairResult:
    """
    Run every verifier on one pair.

    The commuting-diagram check always runs; the reduction-tree based checks
    run only when |I|+|Jbar| is at most ``settings.max_pair_size``.

    Raises:
        ResourceLimitError: if a configured limit is hit
    """
    result = PairResult(vp)
    with trace_context(f"pair:{vp.key()}"):
        try:
            result.reports.append(verify_theorem_3_1(vp))
            if vp.size > settings.max_pair_size:
                result.skipped.extend(["triangulation", "schroeder and narayana identities",
                                       "longest-pair order independence", "prec bijection",
                                       "reduction lemma sample"])
                logger.info("skipping tree checks for a large pair", {"pair": vp.key(), "size": vp.size})
                return result
            tree = length_tree(vp, settings.max_reductions)
            result.reports.append(triangulation_report(vp, settings.max_reductions, settings.max_flow_count, tree))
            result.reports.append(verify_corollary_4_9(vp, max_reductions=settings.max_reductions))
            result.reports.append(order_independence_report(vp, (seed,), settings.max_reductions))
            result.reports.append(prec_bijection_report(vp, tree))
            result.reports.append(reduction_lemma_report(vp, tree, seed, lemma_samples, settings.max_flow_count))
        except ResourceLimitError:
            raise
        except IJTamariError as exc:
            logger.exception("verifier raised", {"pair": vp.key()})
            failure = Report("error", subject=vp.to_record())
            failure.check(type(exc).__name__, False, message=str(exc), details=exc.details)
            result.reports.append(failure)
    return result


@dataclass
class SweepResult:
    results: List[PairResult]
    exhaustive_max_n: int
    random_count: int
    random_max_n: int
    seed: int

    @property
    def failures(self) -> List[PairResult]:
        return [result for result in self.results if not result.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> Dict[str, Any]:
        return {
            "pairs": len(self.results),
            "exhaustive_max_n": self.exhaustive_max_n,
            "random_pairs": self.random_count,
            "random_max_n": self.random_max_n,
            "seed": self.seed,
            "failed_pairs": len(self.failures),
            "pairs_with_skipped_checks": sum(1 for result in self.results if result.skipped),
        }


def sweep_population(max_n: int, random_count: int, random_max_n: int, seed: int) -> List[ValidPair]:
    return all_valid_pairs(max_n) + random_valid_pairs(random_count, random_max_n, seed)


def run_sweep(settings: Settings, max_n: int = 5, random_count: int = 0, random_max_n: int = 9,
              seed: int = 0, pairs: Optional[List[ValidPair]] = None) -> SweepResult:
    """
    Verify every pair of the population.

    Args:
        settings: limits and worker count
        max_n: exhaustive part covers every valid pair with values in [max_n]
        random_count: size of the random part
        random_max_n: values of random pairs lie in [random_max_n]
        seed: seed of the random part and of every per-pair schedule
        pairs: explicit population, replacing the generated one

    Returns:
        SweepResult: per-pair results in population order
    """
    population = pairs if pairs is not None else sweep_population(max_n, random_count, random_max_n, seed)
    worker = partial(verify_pair, settings=settings, seed=seed)
    started = time.time()
    logger.info("sweep started", {"pairs": len(population), "workers": settings.workers})
    if settings.workers > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            results = list(pool.map(worker, population))
    else:
        results = [worker(vp) for vp in population]
    sweep = SweepResult(results, max_n, random_count if pairs is None else 0, random_max_n, seed)
    log_stage("sweep", "sweep", time.time() - started, sweep.passed)
    return sweep

import logging
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from configs import settings
from exact.errors import ExactError
from exact.fields import Scalar
from tdpair.bridge import check_descent, check_diagrams, check_master_identity, check_split_sums
from tdpair.errors import TDPairError
from tdpair.krawtchouk import check_krawtchouk_identities, is_krawtchouk
from tdpair.leonard import check_leonard_identities
from tdpair.models import CheckId, CheckOutcome, RelationParameters, TridiagonalSystem
from tdpair.rfl import check_rfl_ranks, check_rfl_relations, compute_rfl
from tdpair.split import SplitDecomposition, check_split_bijectivity, check_split_relations, compute_split
from tdpair.system import check_tridiagonal_relations, compute_relation_parameters

logger = logging.getLogger(__name__)

RANK_CHECKS = {CheckId.RFL_RANKS, CheckId.SPLIT_RANKS}


@dataclass
class SuiteResult:
    system: TridiagonalSystem
    params: RelationParameters
    split: SplitDecomposition
    outcomes: dict[CheckId, CheckOutcome] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes.values())


def run_checks(
    system: TridiagonalSystem,
    checks: Iterable[CheckId] | None = None,
    beta: Scalar | None = None,
    threads: int | None = None,
) -> SuiteResult:
    """Run the selected checks (all by default) on one system."""
    selected = [CheckId(c) for c in checks] if checks is not None else list(CheckId)
    timings = {}

    # 1. Shared ingredients
    start = time.perf_counter()
    params = compute_relation_parameters(system, beta)
    timings["parameters"] = time.perf_counter() - start
    start = time.perf_counter()
    rfl = compute_rfl(system)
    timings["rfl"] = time.perf_counter() - start
    start = time.perf_counter()
    split = compute_split(system)
    timings["split"] = time.perf_counter() - start

    # 2. The check table
    table: dict[CheckId, Callable[[], list]] = {
        CheckId.TRIDIAGONAL_RELATIONS: lambda: check_tridiagonal_relations(system, params),
        CheckId.RFL_RELATIONS: lambda: check_rfl_relations(system, rfl, params),
        CheckId.SPLIT_RELATIONS: lambda: check_split_relations(system, split),
        CheckId.SPLIT_RANKS: lambda: check_split_bijectivity(system, split),
        CheckId.DESCENT: lambda: check_descent(system, split),
        CheckId.MASTER: lambda: check_master_identity(system, split),
        CheckId.DIAGRAMS: lambda: check_diagrams(system, split, rfl),
        CheckId.SPLIT_SUMS: lambda: check_split_sums(system, split, params),
        CheckId.RFL_RANKS: lambda: check_rfl_ranks(system, rfl),
        CheckId.LEONARD: lambda: check_leonard_identities(system, None, params, split),
        CheckId.KRAWTCHOUK: lambda: check_krawtchouk_identities(system, rfl, split),
    }
    applicable = {
        CheckId.LEONARD: system.is_leonard,
        CheckId.KRAWTCHOUK: is_krawtchouk(system),
    }

    def run(check: CheckId) -> CheckOutcome:
        if not applicable.get(check, True):
            return CheckOutcome(check, applicable=False)
        begin = time.perf_counter()
        outcome = CheckOutcome(check)
        try:
            items = table[check]()
        except (TDPairError, ExactError) as exc:
            logger.warning("check %s failed to evaluate: %s", check.value, exc)
            outcome.error = str(exc)
        else:
            if check in RANK_CHECKS:
                outcome.ranks = items
            else:
                outcome.residuals = items
        outcome.elapsed = time.perf_counter() - begin
        logger.debug("check %s done in %.3fs, passed=%s", check.value, outcome.elapsed, outcome.passed)
        return outcome

    # 3. Independent checks run side by side
    with ThreadPoolExecutor(max_workers=threads or settings.THREADS) as pool:
        outcomes = list(pool.map(run, selected))
    result = SuiteResult(system, params, split, {o.check: o for o in outcomes}, timings)
    for o in outcomes:
        timings[o.check.value] = o.elapsed
    logger.info("suite over d=%d finished, passed=%s", system.d, result.passed)
    return result

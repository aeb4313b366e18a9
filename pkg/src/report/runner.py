import logging
import time
from collections.abc import Iterable

from exact.errors import ExactError
from report.models import (
    CheckResult,
    LeonardRow,
    LeonardTable,
    RankRecord,
    ResidualRecord,
    SystemReport,
    VerificationReport,
)
from tdpair.documents import PairDocument, SystemDocument, load_system
from tdpair.errors import TDPairError
from tdpair.leonard import LeonardData, leonard_data
from tdpair.models import CheckId, CheckOutcome, RankEntry, Residual
from tdpair.suite import SuiteResult, run_checks
from tdpair.system import verify_pair

logger = logging.getLogger(__name__)


def residual_record(residual: Residual) -> ResidualRecord:
    witness = residual.witness
    return ResidualRecord(
        check_id=residual.check.value,
        label=residual.label,
        index=list(residual.index),
        residual_is_zero=residual.is_zero,
        residual_norm0=residual.norm0,
        counterexample=list(witness) if witness is not None else None,
    )


def rank_record(entry: RankEntry) -> RankRecord:
    return RankRecord(
        check_id=entry.check.value,
        label=entry.label,
        i=entry.i,
        j=entry.j,
        observed=entry.observed,
        expected=entry.expected,
        ok=entry.ok,
    )


def check_result(outcome: CheckOutcome, with_timings: bool = False) -> CheckResult:
    return CheckResult(
        check_id=outcome.check.value,
        applicable=outcome.applicable,
        passed=outcome.passed,
        error=outcome.error or None,
        residuals=[residual_record(r) for r in outcome.residuals],
        ranks=[rank_record(r) for r in outcome.ranks],
        elapsed=outcome.elapsed if with_timings else None,
    )


def system_report(index: int, suite: SuiteResult, with_timings: bool = False) -> SystemReport:
    system, params = suite.system, suite.params
    fmt = system.field.format_scalar
    table = None
    leonard = suite.outcomes.get(CheckId.LEONARD)
    if leonard is not None and leonard.applicable:
        try:
            table = leonard_table(leonard_data(system, suite.split))
        except (TDPairError, ExactError) as exc:
            logger.warning("system %d: no Leonard table: %s", index, exc)
    return SystemReport(
        index=index,
        d=system.d,
        theta=[fmt(t) for t in system.theta],
        thetastar=[fmt(t) for t in system.thetastar],
        shape=list(system.shape),
        parameters={
            "beta": fmt(params.beta),
            "gamma": fmt(params.gamma),
            "gammastar": fmt(params.gammastar),
            "rho": fmt(params.rho),
            "rhostar": fmt(params.rhostar),
        },
        split_bases=[[[fmt(x) for x in vector] for vector in W.rows] for W in suite.split.U],
        passed=suite.passed,
        checks=[check_result(suite.outcomes[c], with_timings) for c in CheckId if c in suite.outcomes],
        leonard=table,
        timings=dict(suite.timings) if with_timings else None,
    )


def verify_document(
    doc: PairDocument,
    *,
    source: str = "",
    checks: Iterable[CheckId] | None = None,
    beta: str | None = None,
    with_timings: bool = False,
) -> VerificationReport:
    """Verify a pair (every system found) or a stored system (that system only)."""
    timings = {}
    field = doc.scalar_field
    beta_value = field.scalar(beta) if beta is not None else None

    # 1. Axioms
    start = time.perf_counter()
    A, Astar = doc.matrices()
    verdict = verify_pair(A, Astar)
    if isinstance(doc, SystemDocument) and verdict.accepted:
        systems = [load_system(doc)]
    else:
        systems = list(verdict.systems)
    timings["verify_pair"] = time.perf_counter() - start
    if not verdict.accepted:
        logger.info("%s rejected: %s", source or "input", verdict.reason.value)
        return VerificationReport(
            source=source,
            field=field.descriptor,
            verdict=verdict.reason.value,
            detail=verdict.detail,
            systems_found=0,
            passed=False,
            timings=timings if with_timings else None,
        )

    # 2. Checks per system
    reports = []
    for index, system in enumerate(systems):
        start = time.perf_counter()
        suite = run_checks(system, checks, beta_value)
        timings[f"system {index}"] = time.perf_counter() - start
        reports.append(system_report(index, suite, with_timings))
    return VerificationReport(
        source=source,
        field=field.descriptor,
        verdict="accepted",
        systems_found=len(verdict.systems),
        passed=all(r.passed for r in reports),
        systems=reports,
        timings=timings if with_timings else None,
    )


def leonard_table(data: LeonardData) -> LeonardTable:
    fmt = data.field.format_scalar
    d = data.d
    rows = [
        LeonardRow(
            i=i,
            theta=fmt(data.theta[i]),
            thetastar=fmt(data.thetastar[i]),
            a=fmt(data.a[i]),
            x=fmt(data.x_at(i)) if i >= 1 else None,
            b=fmt(data.b_at(i)) if i < d else None,
            c=fmt(data.c_at(i)) if i >= 1 else None,
            phi=fmt(data.phi_at(i)) if i >= 1 else None,
        )
        for i in range(d + 1)
    ]
    return LeonardTable(field=data.field.descriptor, d=d, rows=rows)


def table_rows(report: VerificationReport) -> list[dict]:
    """One flat row per rank entry, residual or Leonard scalar, for tabular output."""
    rows = []
    for system in report.systems:
        for check in system.checks:
            for r in check.ranks:
                rows.append(
                    {
                        "system": system.index,
                        "check-id": r.check_id,
                        "kind": "rank",
                        "label": r.label,
                        "index": f"{r.i},{r.j}",
                        "observed": r.observed,
                        "expected": r.expected,
                        "ok": r.ok,
                    }
                )
            for r in check.residuals:
                rows.append(
                    {
                        "system": system.index,
                        "check-id": r.check_id,
                        "kind": "residual",
                        "label": r.label,
                        "index": ",".join(str(k) for k in r.index),
                        "observed": r.residual_norm0,
                        "expected": 0,
                        "ok": r.residual_is_zero,
                    }
                )
        if system.leonard is not None:
            ok = next(c.passed for c in system.checks if c.check_id == CheckId.LEONARD.value)
            for row in system.leonard.rows:
                for name in ("theta", "thetastar", "a", "x", "b", "c", "phi"):
                    value = getattr(row, name)
                    if value is None:
                        continue
                    rows.append(
                        {
                            "system": system.index,
                            "check-id": CheckId.LEONARD.value,
                            "kind": "scalar",
                            "label": name,
                            "index": str(row.i),
                            "observed": value,
                            "expected": "",
                            "ok": ok,
                        }
                    )
    return rows

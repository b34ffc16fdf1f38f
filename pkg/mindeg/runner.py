"""Campaign runner.

Rows are independent: each runs in a worker thread under a semaphore sized
by ``EngineConfig.parallel``, and the report keeps campaign order no matter
which row finishes first. Every row yields exactly one ReportRow.
"""

from __future__ import annotations

import asyncio
import logging
import time
from pathlib import Path

from mindeg.budget import Budget
from mindeg.certificates import CertificateStore
from mindeg.checks import CheckOutcome, CheckRegistry
from mindeg.config import EngineConfig
from mindeg.exceptions import BudgetExceeded, CapExceeded, MindegError
from mindeg.parser import CampaignDefinition, RowDefinition, load_campaign, parse_spec
from mindeg.report import FAIL, SKIPPED_CAP, SKIPPED_TIMEOUT, CampaignReport, ReportRow, write_csv

logger = logging.getLogger(__name__)


class CampaignRunner:
    """Runs the rows of one campaign and assembles the report."""

    def __init__(self, campaign: CampaignDefinition, config: EngineConfig, out_dir: Path | None = None):
        self.campaign = campaign
        self.config = config
        self.store = CertificateStore(campaign.name, out_dir) if out_dir is not None else None

    async def run(self) -> CampaignReport:
        semaphore = asyncio.Semaphore(self.config.parallel)

        async def bounded(row: RowDefinition) -> ReportRow:
            async with semaphore:
                return await asyncio.to_thread(self.run_row, row)

        rows = await asyncio.gather(*(bounded(row) for row in self.campaign.rows))
        return CampaignReport(self.campaign.name, list(rows))

    def run_row(self, row: RowDefinition) -> ReportRow:
        """Run one row to a ReportRow; exceptions become a status, never a gap."""
        start = time.perf_counter()
        family, parameters = _identify(row)
        try:
            config = self.config.with_overrides(**row.overrides())
            check = CheckRegistry.get(row.kind)(row, config, Budget(config.budget_seconds))
            outcome = check.run()
        except CapExceeded as e:
            logger.info("%s skipped: %s", row.label, e)
            return ReportRow(family, parameters, status=SKIPPED_CAP, elapsed_ms=_ms(start), detail=str(e))
        except BudgetExceeded as e:
            logger.info("%s skipped: %s", row.label, e)
            return ReportRow(family, parameters, status=SKIPPED_TIMEOUT, elapsed_ms=_ms(start), detail=str(e))
        except Exception as e:
            logger.warning("%s failed: %s", row.label, e, exc_info=logger.isEnabledFor(logging.DEBUG))
            return ReportRow(family, parameters, status=FAIL, elapsed_ms=_ms(start), detail=f"{type(e).__name__}: {e}")

        return self._to_report_row(row, outcome, _ms(start))

    def _to_report_row(self, row: RowDefinition, outcome: CheckOutcome, elapsed_ms: float) -> ReportRow:
        certificate = ""
        payload = outcome.certificate or outcome.payload
        if self.store is not None and payload is not None:
            name = row.label if row.kind == "mu" else f"{row.kind}-{row.label}"
            certificate = str(self.store.save(name, payload))
        detail = outcome.detail
        if row.cite and row.cite not in detail:
            detail = "; ".join(d for d in (row.cite, detail) if d)
        return ReportRow(
            family=outcome.family,
            parameters=outcome.parameters,
            order=outcome.order,
            degree=outcome.degree,
            mu_predicted=outcome.mu_predicted,
            mu_computed=outcome.mu_computed,
            method=outcome.method,
            relation=outcome.relation,
            status=outcome.status,
            elapsed_ms=elapsed_ms,
            certificate=certificate,
            detail=detail,
        )


def _identify(row: RowDefinition) -> tuple[str, str]:
    """Family and parameters for a row that failed before its check could name them."""
    if row.spec:
        try:
            return parse_spec(row.spec, validate=False).family, row.spec
        except MindegError:
            return row.kind, row.spec
    return row.kind, row.label


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


async def run_campaign(
    name: str,
    config: EngineConfig | None = None,
    out_dir: Path | None = None,
) -> CampaignReport:
    """Load, run and (with ``out_dir``) write a campaign's CSV and certificates."""
    config = config or EngineConfig()
    campaign = load_campaign(name)
    logger.info("campaign %s: %d rows, parallel %d", campaign.name, len(campaign.rows), config.parallel)
    report = await CampaignRunner(campaign, config, out_dir).run()
    if out_dir is not None:
        write_csv(report, Path(out_dir) / f"{campaign.name}.csv")
    return report

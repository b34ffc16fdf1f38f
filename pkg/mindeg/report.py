"""Campaign reports: one ReportRow per campaign row, written as CSV."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import asdict, dataclass, fields
from pathlib import Path

PASS = "pass"
FAIL = "fail"
SKIPPED_CAP = "skipped(CapExceeded)"
SKIPPED_TIMEOUT = "skipped(timeout)"
STATUSES = (PASS, FAIL, SKIPPED_CAP, SKIPPED_TIMEOUT)


@dataclass
class ReportRow:
    family: str
    parameters: str
    order: int | None = None
    degree: int | None = None
    mu_predicted: int | None = None
    mu_computed: int | None = None
    method: str = ""
    relation: str = ""
    status: str = PASS
    elapsed_ms: float = 0.0
    certificate: str = ""
    detail: str = ""

    def as_csv(self) -> dict[str, str]:
        out = {}
        for key, value in asdict(self).items():
            if value is None:
                out[key] = ""
            elif key == "elapsed_ms":
                out[key] = f"{value:.1f}"
            else:
                out[key] = str(value)
        return out


CSV_COLUMNS = tuple(f.name for f in fields(ReportRow))


@dataclass
class CampaignReport:
    campaign: str
    rows: list[ReportRow]

    @property
    def counts(self) -> Counter:
        return Counter(row.status for row in self.rows)

    @property
    def failed(self) -> bool:
        return any(row.status == FAIL for row in self.rows)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def summary(self) -> str:
        counts = self.counts
        parts = [f"{counts[s]} {s}" for s in STATUSES if counts[s]]
        return f"{self.campaign}: {len(self.rows)} rows ({', '.join(parts) or 'empty'})"


def write_csv(report: CampaignReport, path: Path) -> Path:
    """Write the report rows in campaign order."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(CSV_COLUMNS))
        writer.writeheader()
        for row in report.rows:
            writer.writerow(row.as_csv())
    return path


def read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))

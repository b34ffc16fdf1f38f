import pytest

from mindeg.certificates import CertificateStore, load_certificate, verify_certificate
from mindeg.config import EngineConfig
from mindeg.exceptions import CertificateError
from mindeg.parser import CampaignDefinition, RowDefinition
from mindeg.report import CSV_COLUMNS, FAIL, PASS, SKIPPED_CAP, SKIPPED_TIMEOUT, read_csv, write_csv
from mindeg.runner import CampaignRunner, run_campaign


def campaign(*rows: RowDefinition, name: str = "unit") -> CampaignDefinition:
    return CampaignDefinition(name=name, rows=list(rows))


STATUS_ROWS = campaign(
    RowDefinition(spec="S(4)", expected=4),
    RowDefinition(spec="S(4)", expected=5),
    RowDefinition(spec="S(5)", lattice_cap=10),
    RowDefinition(spec="S(5)", budget_seconds=1e-6),
    RowDefinition(kind="no-such-kind", spec="C(2)"),
    RowDefinition(spec="Q(3)"),
    RowDefinition(kind="cyclotomic", params={"r": 7, "p": 2}),
)


@pytest.mark.asyncio
async def test_status_mapping():
    report = await CampaignRunner(STATUS_ROWS, EngineConfig(parallel=3)).run()
    assert [row.status for row in report.rows] == [PASS, FAIL, SKIPPED_CAP, SKIPPED_TIMEOUT, FAIL, FAIL, PASS]
    assert report.rows[0].mu_computed == 4
    assert "predicted 5, computed 4" in report.rows[1].detail
    assert report.rows[4].detail.startswith("ValueError")
    assert (report.rows[5].family, report.rows[5].parameters) == ("mu", "Q(3)")
    assert report.rows[6].parameters == "r=7,p=2"
    assert report.failed and report.exit_code == 1
    assert "2 pass" in report.summary()


@pytest.mark.asyncio
async def test_rows_keep_campaign_order():
    specs = ["D(6)", "C(2)", "S(4)", "C(12)", "Ab(2,2)", "D(3)"]
    report = await CampaignRunner(campaign(*(RowDefinition(spec=s) for s in specs)), EngineConfig(parallel=4)).run()
    assert [row.parameters for row in report.rows] == specs
    assert [row.mu_computed for row in report.rows] == [5, 2, 4, 7, 4, 3]
    assert report.exit_code == 0


@pytest.mark.asyncio
async def test_certificates_are_written_and_verify(tmp_path):
    rows = campaign(
        RowDefinition(spec="S(4)", cite="natural action"),
        RowDefinition(spec="D(4)", method="sandwich", lower="C(4)"),
        RowDefinition(kind="cyclotomic", params={"r": 7, "p": 2}),
    )
    report = await CampaignRunner(rows, EngineConfig(), tmp_path).run()
    assert all(row.status == PASS for row in report.rows)
    assert report.rows[0].detail.startswith("natural action")

    store = CertificateStore("unit", tmp_path)
    assert report.rows[0].certificate == str(store.path_for("S(4)"))
    for row in report.rows:
        summary = verify_certificate(load_certificate(row.certificate))
        assert "verified" in summary


def test_tampered_certificate_is_rejected(tmp_path):
    from mindeg.solver import mu_exact

    from .conftest import build

    cert = mu_exact(build("S(4)"), label="S(4)").to_dict()
    cert["mu"] = 3
    with pytest.raises(CertificateError):
        verify_certificate(cert)
    cert["mu"], cert["order"] = 4, 12
    with pytest.raises(CertificateError):
        verify_certificate(cert)
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(CertificateError):
        load_certificate(path)


@pytest.mark.asyncio
async def test_csv_columns_and_determinism(tmp_path):
    rows = campaign(*(RowDefinition(spec=s) for s in ["S(3)", "C(6)", "D(4)"]))
    first = await CampaignRunner(rows, EngineConfig(parallel=2), tmp_path).run()
    second = await CampaignRunner(rows, EngineConfig(parallel=1), tmp_path).run()
    path = write_csv(first, tmp_path / "unit.csv")
    written = read_csv(path)
    assert list(written[0]) == list(CSV_COLUMNS)
    assert [r["status"] for r in written] == [PASS] * 3

    def stable(report):
        return [{k: v for k, v in row.as_csv().items() if k != "elapsed_ms"} for row in report.rows]

    assert stable(first) == stable(second)


@pytest.mark.slow
@pytest.mark.asyncio
async def test_acceptance_campaign(tmp_path):
    report = await run_campaign("acceptance", EngineConfig(parallel=2), tmp_path)
    assert report.exit_code == 0, [r for r in report.rows if r.status != PASS]
    assert (tmp_path / "acceptance.csv").exists()
    computed = {row.parameters: row.mu_computed for row in report.rows if row.family != "product"}
    assert computed["G(7,7,3)"] == 14
    assert computed["G(3,3,5)"] == 15
    assert computed["Wr(5,3)"] == 15

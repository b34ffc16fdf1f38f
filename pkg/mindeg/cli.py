import asyncio
import logging
from pathlib import Path

import click

from mindeg.certificates import load_certificate, verify_certificate
from mindeg.checks import CheckRegistry
from mindeg.config import EngineConfig
from mindeg.constructors import construct, expected_order
from mindeg.exceptions import MindegError
from mindeg.ffield import factor_cyclotomic
from mindeg.formulas import predict
from mindeg.parser import builtin_campaigns, load_campaign, parse_spec
from mindeg.report import PASS, write_csv
from mindeg.runner import CampaignRunner
from mindeg.solver import SandwichInterval
from mindeg.strategy import CLI_METHODS, compute_mu
from mindeg.utils.hashing import dumps_str


def _fail(e: Exception) -> None:
    click.echo(f"Error: {e}", err=True)
    raise SystemExit(1)


@click.group()
@click.version_option(package_name="mindeg-engine")
@click.option("--max-order", type=int, default=None, help="Cap on materialized group order")
@click.option("--lattice-cap", type=int, default=None, help="Cap on the order of groups whose lattice is enumerated")
@click.option("--budget-seconds", type=float, default=None, help="Time budget per computation")
@click.option("--seed", type=int, default=None, help="Seed for randomized factorization (default: $MINDEG_SEED or 0)")
@click.option("--parallel", type=int, default=None, help="Campaign rows run concurrently")
@click.option("--verbose", is_flag=True, help="Debug logging to stderr")
@click.pass_context
def cli(ctx, max_order, lattice_cap, budget_seconds, seed, parallel, verbose):
    """mindeg: exact minimal faithful permutation degrees of finite groups.

    Build groups from spec text such as G(7,7,3) or X(C(5),G(5,5,3)),
    compute mu(G) with certificates, and replay campaigns of known results.
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        ctx.obj = EngineConfig.from_env(
            max_order=max_order,
            lattice_cap=lattice_cap,
            budget_seconds=budget_seconds,
            seed=seed,
            parallel=parallel,
        )
    except MindegError as e:
        _fail(e)


@cli.command("construct")
@click.option("--spec", "spec_text", required=True, help="Group spec, e.g. G(5,5,3)")
@click.option("--json", "as_json", is_flag=True, help="Print JSON")
@click.pass_obj
def construct_cmd(config, spec_text, as_json):
    """Build a group and print its degree, order and generators."""
    try:
        spec = parse_spec(spec_text)
        built = construct(spec, config.max_order)
        group = built.group
        order = group.projected_order()
    except MindegError as e:
        _fail(e)

    if as_json:
        click.echo(dumps_str({
            "spec": spec.text,
            "family": spec.family,
            "degree": group.degree,
            "order": order,
            "expected_order": expected_order(spec),
            "generators": [list(g.images) for g in group.generators],
        }, indent=True))
        return
    click.echo(f"{spec.text}: {spec.family}, degree {group.degree}, order {order}")
    for g in group.generators:
        click.echo(f"  {g!r}")


@cli.command("mu")
@click.option("--spec", "spec_text", required=True, help="Group spec")
@click.option("--method", type=click.Choice(CLI_METHODS), default="auto", show_default=True)
@click.option("--lower", default=None, help="Spec of a subgroup on the same points, for --method sandwich")
@click.option("--json", "as_json", is_flag=True, help="Print the certificate as JSON")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the certificate here")
@click.pass_obj
def mu_cmd(config, spec_text, method, lower, as_json, out):
    """Compute mu(G) and print it with the closed-form prediction."""
    try:
        spec = parse_spec(spec_text)
        group = construct(spec, config.max_order).group
        result = compute_mu(group, method, config, lower=lower, label=spec.text)
    except MindegError as e:
        _fail(e)

    if result is None:
        click.echo(f"{spec.text}: no nontrivial core-free subgroup, not transitive")
        return
    if isinstance(result, SandwichInterval):
        click.echo(f"{spec.text}: {result.lower} <= mu <= {result.upper} (sandwich inconclusive)")
        return

    if out:
        Path(out).write_text(dumps_str(result.to_dict(), indent=True) + "\n")
    if as_json:
        click.echo(dumps_str(result.to_dict(), indent=True))
        return
    prediction = predict(spec)
    click.echo(f"mu({spec.text}) = {result.mu}  [{result.method}, {result.elapsed_ms:.0f}ms]")
    if prediction.applicable:
        mark = "matches" if prediction.mu == result.mu else "DIFFERS from"
        click.echo(f"  {mark} prediction {prediction.mu} ({prediction.case})")
    for w in result.witness:
        click.echo(f"  subgroup of order {w.order}, index {w.index}")


@cli.command("factor-cyclotomic")
@click.argument("r", type=int)
@click.argument("p", type=int)
@click.option("--json", "as_json", is_flag=True, help="Print JSON")
@click.pass_obj
def factor_cmd(config, r, p, as_json):
    """Factor Q_R(x) = 1 + x + ... + x^(R-1) over F_P."""
    try:
        factorization = factor_cyclotomic(r, p, seed=config.seed)
    except MindegError as e:
        _fail(e)

    if as_json:
        click.echo(dumps_str(factorization.to_dict(), indent=True))
        return
    click.echo(f"Q_{r} over F_{p}: {factorization.l} factor(s) of degree {factorization.d}")
    for f in factorization.factors:
        click.echo(f"  {f}")


@cli.command("verify")
@click.argument("cert", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def verify_cmd(config, cert):
    """Re-verify a certificate file offline."""
    try:
        summary = verify_certificate(load_certificate(Path(cert)), config)
    except MindegError as e:
        _fail(e)
    click.echo(summary)


@cli.command("report")
@click.argument("campaign")
@click.option("--out", type=click.Path(file_okay=False), default="reports", show_default=True,
              help="Directory for the CSV and certificates")
@click.pass_obj
def report_cmd(config, campaign, out):
    """Run a campaign (built-in name or YAML path) and write its report."""
    try:
        definition = load_campaign(campaign)
    except MindegError as e:
        _fail(e)

    click.echo(f"Running campaign: {definition.name} ({len(definition.rows)} rows)")
    report = asyncio.run(CampaignRunner(definition, config, Path(out)).run())
    path = write_csv(report, Path(out) / f"{definition.name}.csv")

    for row in report.rows:
        if row.status != PASS:
            click.echo(f"  {row.status}: {row.parameters}  {row.detail}")
    click.echo(f"\n{report.summary()}")
    click.echo(f"Report: {path}")
    raise SystemExit(report.exit_code)


@cli.command("campaigns")
def campaigns_cmd():
    """List built-in campaigns and row kinds."""
    click.echo("Campaigns:")
    for name in builtin_campaigns():
        click.echo(f"  {name}")
    click.echo("Row kinds:")
    for kind, meta in CheckRegistry.all_meta().items():
        click.echo(f"  {kind:<12} {meta.description}")

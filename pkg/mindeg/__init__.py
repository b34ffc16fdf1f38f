"""mindeg: exact minimal faithful permutation degrees of finite groups."""

__version__ = "0.1.0"

from mindeg.config import EngineConfig
from mindeg.constructors import construct
from mindeg.parser import parse_spec
from mindeg.report import CampaignReport
from mindeg.solver import MuCertificate, mu_exact


def mu(spec_text: str, config: EngineConfig | None = None) -> MuCertificate:
    """mu(G) for a spec string, computed exactly."""
    config = config or EngineConfig()
    group = construct(parse_spec(spec_text), config.max_order).group
    return mu_exact(group, config, label=spec_text)


async def run(campaign: str, config: EngineConfig | None = None, out_dir=None) -> CampaignReport:
    """Run a campaign by built-in name or YAML path."""
    from mindeg.runner import run_campaign
    return await run_campaign(campaign, config, out_dir)


def run_sync(campaign: str, config: EngineConfig | None = None, out_dir=None) -> CampaignReport:
    """Synchronous wrapper for run()."""
    import asyncio
    return asyncio.run(run(campaign, config, out_dir))

from __future__ import annotations

import logging

from mindeg.budget import Budget
from mindeg.config import EngineConfig
from mindeg.constructors import construct
from mindeg.exceptions import CapExceeded, ConfigError
from mindeg.parser import parse_spec
from mindeg.perm import PermGroup
from mindeg.solver import (
    MuCertificate,
    SandwichInterval,
    certify_sandwich,
    mu_exact,
    naive_mu,
    transitive_certificate,
)

logger = logging.getLogger(__name__)

CLI_METHODS = ("auto", "exact", "transitive", "naive", "sandwich")


class Strategy:
    """Picks a mu method from the group's order against the configured caps.

    Exact cover runs whenever the lattice fits under ``lattice_cap``; naive
    stays an oracle. Past the cap only a sandwich can certify; with no
    lower-bound spec, ``decide`` raises CapExceeded before any enumeration.
    """

    def decide(self, group: PermGroup, config: EngineConfig, lower: str | None = None) -> str:
        if lower is not None:
            return "sandwich"
        order = group.projected_order()
        if order <= config.lattice_cap:
            return "exact"
        logger.debug("order %d past lattice cap %d and no lower bound given", order, config.lattice_cap)
        raise CapExceeded(
            f"subgroup lattice of {group.name or 'group'} (order {order})",
            config.lattice_cap,
            hint="give a lower-bound subgroup with --lower for a sandwich, or raise --lattice-cap",
        )


def compute_mu(
    group: PermGroup,
    method: str,
    config: EngineConfig,
    budget: Budget | None = None,
    lower: str | None = None,
    label: str | None = None,
) -> MuCertificate | SandwichInterval | None:
    """Run one mu method by its CLI name; ``transitive`` may return None."""
    if method not in CLI_METHODS:
        raise ConfigError(f"unknown method {method!r}; choose from {', '.join(CLI_METHODS)}")
    if method == "auto":
        method = Strategy().decide(group, config, lower)

    budget = budget or Budget(config.budget_seconds)
    if method == "exact":
        return mu_exact(group, config, budget, label=label)
    if method == "transitive":
        return transitive_certificate(group, config, budget, label=label)
    if method == "naive":
        return naive_mu(group, config, label=label)

    if lower is None:
        raise ConfigError("method 'sandwich' needs a lower-bound subgroup spec")
    sub = construct(parse_spec(lower), config.max_order).group
    return certify_sandwich(group, sub, config, budget, label=label, sub_label=lower)

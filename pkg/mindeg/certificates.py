"""Certificate files and their offline re-verification.

Certificates are written one file per row as ``<out>/<campaign>/<row>.json``.
Verification rebuilds the group from the spec text the certificate names
and re-checks the witness without trusting anything else in the file.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from sympy.combinatorics import Permutation

from mindeg.config import EngineConfig
from mindeg.constructors import construct
from mindeg.exceptions import CertificateError
from mindeg.ffield import CyclotomicFactorization, FpPoly, mult_order
from mindeg.parser import parse_spec
from mindeg.perm import Perm, PermGroup
from mindeg.solver import MuCertificate, moved_points, sympy_group, verify_witness
from mindeg.subgroups import generated_subgroup
from mindeg.utils.hashing import dumps_str

logger = logging.getLogger(__name__)


class CertificateStore:
    """Writes and reads the JSON certificates of one campaign."""

    def __init__(self, campaign: str, out_dir: Path):
        self._dir = Path(out_dir) / _safe_name(campaign)
        self.campaign = campaign

    @property
    def directory(self) -> Path:
        return self._dir

    def path_for(self, row_label: str) -> Path:
        return self._dir / f"{_safe_name(row_label)}.json"

    def save(self, row_label: str, payload: MuCertificate | dict[str, Any]) -> Path:
        self._dir.mkdir(parents=True, exist_ok=True)
        data = payload.to_dict() if isinstance(payload, MuCertificate) else payload
        path = self.path_for(row_label)
        path.write_text(dumps_str(data, indent=True) + "\n")
        return path


def load_certificate(path: Path) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CertificateError(f"certificate not found: {path}")
    except json.JSONDecodeError as e:
        raise CertificateError(f"{path}: invalid JSON: {e}")
    if not isinstance(data, dict):
        raise CertificateError(f"{path}: certificate must be a JSON object")
    return data


def verify_certificate(data: dict[str, Any], config: EngineConfig | None = None) -> str:
    """Re-verify a certificate payload; returns a one-line summary or raises CertificateError."""
    config = config or EngineConfig()
    if "factors" in data:
        return _verify_factorization(data)
    cert = MuCertificate.from_dict(data)
    return _verify_mu(cert, config)


def _verify_factorization(data: dict[str, Any]) -> str:
    try:
        p, r = int(data["p"]), int(data["r"])
        factors = tuple(FpPoly(p, tuple(f)) for f in data["factors"])
    except (KeyError, TypeError, ValueError) as e:
        raise CertificateError(f"malformed factorization: {e}") from e
    d = mult_order(p, r)
    factorization = CyclotomicFactorization(p, r, d, (r - 1) // d, factors, int(data.get("seed", 0)))
    problems = factorization.verify()
    if problems:
        raise CertificateError("; ".join(problems))
    return f"Q_{r} over F_{p}: {len(factors)} factor(s) of degree {d} verified"


def _rebuild(cert: MuCertificate, config: EngineConfig) -> PermGroup:
    group = construct(parse_spec(cert.group), config.max_order).group
    if group.degree != cert.degree:
        raise CertificateError(f"{cert.group} acts on {group.degree} points, certificate says {cert.degree}")
    order = group.projected_order()
    if order != cert.order:
        raise CertificateError(f"{cert.group} has order {order}, certificate says {cert.order}")
    return group


def _verify_mu(cert: MuCertificate, config: EngineConfig) -> str:
    group = _rebuild(cert, config)
    if cert.method == "sandwich":
        return _verify_sandwich(cert, group, config)

    records = []
    for entry in cert.witness:
        gens = [Perm(g) for g in entry.generators]
        if any(g.degree != group.degree or g not in group for g in gens):
            raise CertificateError(f"witness generator outside {cert.group}")
        rec = generated_subgroup(group, gens)
        if rec.order != entry.order:
            raise CertificateError(f"witness subgroup has order {rec.order}, certificate says {entry.order}")
        records.append(rec)
    if cert.method == "transitive-scan" and len(records) != 1:
        raise CertificateError("transitive certificates carry exactly one subgroup")
    verify_witness(group, records, cert.mu)
    logger.debug("verified %s: mu = %d from %d subgroups", cert.group, cert.mu, len(records))
    return f"{cert.group}: mu = {cert.mu} ({cert.method}) verified"


def _verify_sandwich(cert: MuCertificate, group: PermGroup, config: EngineConfig) -> str:
    evidence = cert.lower_bound_evidence
    if evidence is None:
        raise CertificateError("sandwich certificate without lower-bound evidence")
    _verify_mu(evidence, config)
    if evidence.mu != cert.mu:
        raise CertificateError(f"lower bound {evidence.mu} does not meet the claimed {cert.mu}")

    sub = _rebuild(evidence, config)
    G = sympy_group(group)
    for h in sub.generators:
        if not G.contains(Permutation(list(h.images))):
            raise CertificateError(f"{evidence.group} is not a subgroup of {cert.group}")

    upper = len(moved_points(group))
    if upper != cert.mu:
        raise CertificateError(f"{cert.group} moves {upper} points, certificate claims {cert.mu}")
    total = sum(w.index for w in cert.witness)
    if total != cert.mu:
        raise CertificateError(f"orbit lengths sum to {total}, certificate claims {cert.mu}")
    return f"{cert.group}: mu = {cert.mu} (sandwich on {evidence.group}) verified"


def _safe_name(name: str) -> str:
    """Convert a row label or campaign name into a safe file name."""
    return "".join(c if c.isalnum() or c in "-_.,()" else "_" for c in name)

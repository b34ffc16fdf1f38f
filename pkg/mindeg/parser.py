"""Group spec text and campaign YAML files.

Spec grammar::

    spec  := NAME "(" args ")"
    args  := arg ("," arg)*
    arg   := INT | spec

with ``C(k)``, ``Ab(k1,...)``, ``D(n)``, ``S(n)``, ``Wr(m,n)``,
``A(m,p,n)``, ``G(m,p,n)``, ``H(p,q)`` and ``X(spec,spec,...)``.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Any, Iterator

import yaml
from pydantic import BaseModel, Field, ValidationError
from sympy import divisors, primerange

from mindeg.constructors import (
    Abelian,
    Amn,
    Cyclic,
    Dihedral,
    Gmn,
    GroupSpec,
    Hpq,
    Product,
    Symmetric,
    Wreath,
)
from mindeg.exceptions import ParseError
from mindeg.utils.expander import expand_pattern

CAMPAIGN_DIR = Path(__file__).parent / "campaigns"

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<punct>[(),]))")

# name -> (number of integer args or None for variadic, builder)
_FAMILIES: dict[str, tuple[int | None, Any]] = {
    "C": (1, lambda a: Cyclic(*a)),
    "Ab": (None, lambda a: Abelian(tuple(a))),
    "D": (1, lambda a: Dihedral(*a)),
    "S": (1, lambda a: Symmetric(*a)),
    "Wr": (2, lambda a: Wreath(*a)),
    "A": (3, lambda a: Amn(*a)),
    "G": (3, lambda a: Gmn(*a)),
    "H": (2, lambda a: Hpq(*a)),
}


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            return
        match = _TOKEN.match(text, pos)
        if not match:
            rest = text[pos:].lstrip()
            raise ParseError(f"unexpected character {rest[0]!r}", len(text) - len(rest))
        kind = match.lastgroup
        start = match.start(kind)
        yield kind, match.group(kind), start
        pos = match.end()


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokens(text))
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            pos = tok[2] if tok else len(self.text)
            found = repr(tok[1]) if tok else "end of input"
            raise ParseError(f"expected {value!r}, found {found}", pos)
        self.i += 1

    def parse(self) -> GroupSpec:
        spec = self.spec()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return spec

    def spec(self) -> GroupSpec:
        tok = self.peek()
        if tok is None or tok[0] != "name":
            pos = tok[2] if tok else len(self.text)
            raise ParseError("expected a family name", pos)
        name, name_pos = tok[1], tok[2]
        self.i += 1
        if name != "X" and name not in _FAMILIES:
            known = ", ".join(sorted([*_FAMILIES, "X"]))
            raise ParseError(f"unknown family {name!r} (known: {known})", name_pos)
        self.expect("(")
        args: list[Any] = [self.arg()]
        while self.peek() is not None and self.peek()[1] == ",":
            self.i += 1
            args.append(self.arg())
        self.expect(")")

        if name == "X":
            if not all(isinstance(a, GroupSpec) for a in args):
                raise ParseError("X(...) takes group specs", name_pos)
            return Product(tuple(args))
        arity, build = _FAMILIES[name]
        if not all(isinstance(a, int) for a in args):
            raise ParseError(f"{name}(...) takes integers", name_pos)
        if arity is not None and len(args) != arity:
            raise ParseError(f"{name}(...) takes {arity} argument(s), got {len(args)}", name_pos)
        return build(args)

    def arg(self) -> int | GroupSpec:
        tok = self.peek()
        if tok is not None and tok[0] == "int":
            self.i += 1
            return int(tok[1])
        return self.spec()


def parse_spec(text: str, validate: bool = True) -> GroupSpec:
    """Parse spec text; raises ParseError on syntax, SpecInvalid on family invariants."""
    spec = _SpecParser(text).parse()
    if validate:
        spec.validate()
    return spec


# ----------------------------------------------------------------------
# Campaigns
# ----------------------------------------------------------------------

class RowDefinition(BaseModel):
    kind: str = "mu"
    spec: str | None = None
    method: str = "exact"
    expected: int | None = None
    lower: str | None = None
    cite: str = ""
    params: dict[str, Any] = Field(default_factory=dict)
    generate: str | None = None
    up_to: int | None = None
    lattice_cap: int | None = None
    max_order: int | None = None
    budget_seconds: float | None = None

    @property
    def label(self) -> str:
        if self.spec:
            return self.spec
        return ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))

    def overrides(self) -> dict[str, Any]:
        return {
            "lattice_cap": self.lattice_cap,
            "max_order": self.max_order,
            "budget_seconds": self.budget_seconds,
        }


class CampaignDefinition(BaseModel):
    name: str
    description: str = ""
    include: list[str] = Field(default_factory=list)
    rows: list[RowDefinition] = Field(default_factory=list)


def invariant_factor_lists(n: int, smallest: int = 1) -> Iterator[list[int]]:
    """Chains ``k1 | k2 | ... | kt`` with product n, every ``k_i > 1``."""
    if n == 1:
        yield []
        return
    for k in divisors(n):
        if k > 1 and k % smallest == 0:
            for rest in invariant_factor_lists(n // k, k):
                yield [k] + rest


def abelian_specs(up_to: int) -> list[str]:
    """Spec text for every abelian group of order at most ``up_to``."""
    out = []
    for n in range(1, up_to + 1):
        for factors in invariant_factor_lists(n):
            if len(factors) <= 1:
                out.append(f"C({factors[0] if factors else 1})")
            else:
                out.append(f"Ab({','.join(map(str, factors))})")
    return out


def _generate(row: RowDefinition) -> list[RowDefinition]:
    if row.generate == "abelian":
        return [row.model_copy(update={"spec": s, "generate": None}) for s in abelian_specs(row.up_to or 1)]
    if row.generate == "prime-pairs":
        primes = list(primerange(2, row.up_to or 2))
        return [
            row.model_copy(update={"params": {**row.params, "r": r, "p": p}, "generate": None})
            for r in primes
            for p in primes
            if r != p
        ]
    raise ParseError(f"unknown generator {row.generate!r}")


def expand_rows(rows: list[RowDefinition]) -> list[RowDefinition]:
    out = []
    for row in rows:
        if row.generate:
            out.extend(_generate(row))
        elif row.spec:
            out.extend(row.model_copy(update={"spec": s}) for s in expand_pattern(row.spec))
        else:
            out.append(row)
    return out


def resolve_campaign_path(name: str) -> Path:
    path = Path(name)
    if path.suffix in (".yaml", ".yml") and path.exists():
        return path
    builtin = CAMPAIGN_DIR / f"{name}.yaml"
    if builtin.exists():
        return builtin
    available = ", ".join(builtin_campaigns())
    raise ParseError(f"campaign not found: {name} (built-in: {available})")


def builtin_campaigns() -> list[str]:
    return sorted(p.stem for p in CAMPAIGN_DIR.glob("*.yaml"))


def load_campaign(name: str, _seen: frozenset[str] = frozenset()) -> CampaignDefinition:
    """Load a campaign by built-in name or path, with includes and expansions applied."""
    path = resolve_campaign_path(name)
    if str(path) in _seen:
        raise ParseError(f"campaign include cycle through {path}")

    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        raise ParseError(f"Invalid YAML in {path}: {e}")
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: campaign YAML must be a mapping at the top level")
    if "name" not in raw:
        raise ParseError(f"{path}: campaign must have a 'name' field")

    try:
        campaign = CampaignDefinition(**raw)
    except ValidationError as e:
        raise ParseError(f"{path}: {e}")

    rows = []
    for included in campaign.include:
        rows.extend(load_campaign(included, _seen | {str(path)}).rows)
    rows.extend(expand_rows(campaign.rows))
    return campaign.model_copy(update={"rows": rows})

from __future__ import annotations

import importlib
import pkgutil
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, ClassVar

from mindeg.budget import Budget
from mindeg.config import EngineConfig
from mindeg.report import FAIL, PASS

if TYPE_CHECKING:
    from mindeg.parser import RowDefinition
    from mindeg.solver import MuCertificate


@dataclass(frozen=True)
class CheckMeta:
    """Declarative metadata for a campaign row kind."""

    description: str = ""
    param_docs: dict[str, str] = field(default_factory=dict)
    needs_spec: bool = False


@dataclass
class CheckOutcome:
    """What a check measured; the runner adds timing and the certificate path."""

    family: str
    parameters: str
    status: str = PASS
    order: int | None = None
    degree: int | None = None
    mu_predicted: int | None = None
    mu_computed: int | None = None
    method: str = ""
    relation: str = ""
    detail: str = ""
    certificate: MuCertificate | None = None
    payload: dict[str, Any] | None = None

    def fail(self, detail: str) -> CheckOutcome:
        self.status = FAIL
        self.detail = "; ".join(d for d in (self.detail, detail) if d)
        return self


class BaseCheck(ABC):
    """One campaign row kind. ``run`` is synchronous and CPU-bound."""

    meta: ClassVar[CheckMeta] = CheckMeta()

    def __init__(self, row: RowDefinition, config: EngineConfig, budget: Budget):
        self.row = row
        self.config = config
        self.budget = budget

    @abstractmethod
    def run(self) -> CheckOutcome:
        ...

    def param(self, name: str, default: Any = None) -> Any:
        return self.row.params.get(name, default)


class CheckRegistry:
    """Registry mapping row kinds to their check classes."""

    _registry: dict[str, type[BaseCheck]] = {}

    @classmethod
    def register(cls, name: str):
        def decorator(check_class: type[BaseCheck]):
            cls._registry[name] = check_class
            return check_class
        return decorator

    @classmethod
    def get(cls, name: str) -> type[BaseCheck]:
        discover()
        if name not in cls._registry:
            available = ", ".join(sorted(cls._registry.keys()))
            raise ValueError(f"Unknown row kind: '{name}'. Available: [{available}]")
        return cls._registry[name]

    @classmethod
    def list_kinds(cls) -> list[str]:
        discover()
        return sorted(cls._registry.keys())

    @classmethod
    def all_meta(cls) -> dict[str, CheckMeta]:
        discover()
        return {name: klass.meta for name, klass in sorted(cls._registry.items())}


_discovered = False


def discover() -> None:
    """Import every check module in this package so that each registers itself."""
    global _discovered
    if _discovered:
        return
    _discovered = True

    package = importlib.import_module(__name__)
    for info in pkgutil.iter_modules(package.__path__):
        if info.name.startswith("_"):
            continue
        importlib.import_module(f"{__name__}.{info.name}")

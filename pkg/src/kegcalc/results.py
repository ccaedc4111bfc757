"""Result records shared by the solver and the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

EXACT = "exact"
UPPER_BOUND = "upper_bound"
UNKNOWN = "unknown"


@dataclass
class CrosscapResult:
    value: Optional[int]
    status: str
    witness: Optional[Any] = None
    caps: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == EXACT

    def __str__(self) -> str:
        if self.value is None:
            return f"crosscap unknown ({self.status})"
        return f"crosscap = {self.value} ({self.status.replace('_', ' ')})"

"""Run configuration shared by the parser, the table writer and the verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .superalgebra import AlgebraError, Signature

BASES = ("intersection", "symplectic", "pontrjagin")
FORMATS = ("json", "latex")


@dataclass(frozen=True)
class RunConfig:
    n: int = 1
    k: int = 1
    bound: int = 4
    basis: str = "intersection"
    suites: Tuple[str, ...] = ("all",)
    fmt: str = "json"
    out: Optional[str] = None
    workers: int = 1
    signature: Signature = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.bound < 0:
            raise AlgebraError(f"bound must be >= 0, got {self.bound}")
        if self.basis not in BASES:
            raise AlgebraError(f"unknown basis {self.basis!r}")
        if self.fmt not in FORMATS:
            raise AlgebraError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise AlgebraError("workers must be >= 1")
        # Signature checks 1 <= k <= n
        object.__setattr__(self, "signature", Signature(self.n, self.k))

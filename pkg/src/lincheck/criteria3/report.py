"""Result record for linearizability decisions."""
from __future__ import annotations

from dataclasses import dataclass

VERDICTS = ("Linearizable", "NotLinearizable", "Inconclusive")
PATHS = ("VariableCase", "ConstantCase")


@dataclass(frozen=True)
class LinearizabilityReport:
    """Outcome of a linearizability decision.

    verdict           one of Linearizable / NotLinearizable / Inconclusive
    path              VariableCase (variable coefficients) or ConstantCase
    case_label        constant-case label such as "1.1.2", when applicable
    branches          recovered coefficient sets; every branch of a
                      Linearizable report forward-builds exactly to the input
    failed_conditions pairs (condition name, residual or value) naming what
                      ruled linearizability out
    notes             free-form commentary (routing remarks, numeric-only
                      branches, unresolved radicals)
    """

    verdict: str
    path: str
    case_label: str | None = None
    branches: tuple = ()
    failed_conditions: tuple = ()
    notes: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.path not in PATHS:
            raise ValueError(f"unknown path {self.path!r}")
        object.__setattr__(self, "branches", tuple(self.branches))
        object.__setattr__(self, "failed_conditions",
                           tuple(tuple(item) for item in self.failed_conditions))
        if self.verdict == "Linearizable" and not self.branches:
            raise ValueError("a Linearizable report must carry a branch")
        if self.verdict == "NotLinearizable" and not self.failed_conditions:
            raise ValueError("a NotLinearizable report must name what failed")

    @property
    def linearizable(self) -> bool:
        return self.verdict == "Linearizable"

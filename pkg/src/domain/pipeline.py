"""Pipeline report types."""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple


class StepStatus(Enum):
    """Outcome of one pipeline command."""

    OK = "OK"
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class StepResult:
    """One executed command with its outcome."""

    line_no: int
    command: str
    status: StepStatus
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.status.value} {self.line_no}: {self.command}"
        return f"{text} -> {self.detail}" if self.detail else text


@dataclass(frozen=True)
class PipelineReport:
    """Results of a pipeline run, in script order."""

    steps: Tuple[StepResult, ...] = ()

    @property
    def passed(self) -> int:
        return sum(1 for step in self.steps if step.status is StepStatus.PASS)

    @property
    def failed(self) -> int:
        return sum(1 for step in self.steps if step.status is StepStatus.FAIL)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def render(self) -> str:
        """Plain-text report, one line per command; empty for an empty script."""
        return "".join(f"{step}\n" for step in self.steps)

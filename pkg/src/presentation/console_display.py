"""Console display implementation using Rich library."""

import logging
from typing import Optional, Sequence, Tuple

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..config.settings import settings
from ..domain.pipeline import PipelineReport, StepStatus
from ..interfaces.presentation import IDisplay

logger = logging.getLogger(__name__)

_LEVEL_STYLES = {
    "info": "blue",
    "warning": "yellow",
    "error": "red",
}


class ConsoleDisplay(IDisplay):
    """Report rendering with Rich.

    Plain output goes to stdout untouched; panels, tables and messages go to
    stderr so that redirected output stays byte-deterministic.
    """

    def __init__(self, out: Optional[Console] = None, err: Optional[Console] = None):
        """Initialize console display.

        Args:
            out: Console for plain output; defaults to stdout.
            err: Console for human-facing panels; defaults to stderr.
        """
        self._out = out or Console(highlight=False, soft_wrap=True)
        self._err = err or Console(stderr=True, highlight=False)

    def show_text(self, text: str) -> None:
        self._out.out(text, end="", highlight=False)

    def show_result(self, title: str, text: str) -> None:
        self._out.out(text, highlight=False)
        if settings.verbose:
            self._err.print(Panel(Text(text), title=title, border_style="blue"))

    def show_report_summary(self, report: PipelineReport) -> None:
        """Totals panel, plus one row per failed assertion."""
        summary = Text()
        summary.append(f"{report.passed} passed", style="bold green")
        summary.append(", ")
        summary.append(f"{report.failed} failed", style="bold red" if report.failed else "dim")
        summary.append(f", {len(report.steps)} commands")

        failures = [step for step in report.steps if step.status is StepStatus.FAIL]
        if not failures:
            self._err.print(Panel(summary, title="pipeline", border_style="green"))
            return

        table = Table(show_header=True, box=None, padding=(0, 1))
        table.add_column("line", style="cyan", justify="right")
        table.add_column("command")
        table.add_column("reason", style="red")
        for step in failures:
            table.add_row(str(step.line_no), step.command, step.detail)
        self._err.print(Panel(summary, title="pipeline", border_style="red"))
        self._err.print(Panel(table, title="failures", border_style="red"))

    def show_table(self, title: str, columns: Sequence[str], rows: Sequence[Tuple[str, ...]]) -> None:
        table = Table(title=title, show_header=True, padding=(0, 1))
        for index, column in enumerate(columns):
            table.add_column(column, style="cyan" if index == 0 else None)
        for row in rows:
            table.add_row(*row)
        self._out.print(table)

    def log_message(self, message: str, level: str = "info") -> None:
        line = Text()
        line.append(f"[{level.upper()}] ", style=_LEVEL_STYLES.get(level, "white"))
        line.append(message)
        self._err.print(line)

    def show_error(self, error: str) -> None:
        self._err.print(Text(f"error: {error}", style="bold red"))

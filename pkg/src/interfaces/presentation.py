"""Presentation interfaces for vpgkit."""

from abc import ABC, abstractmethod
from typing import Sequence, Tuple

from ..domain.pipeline import PipelineReport


class IDisplay(ABC):
    """Interface for showing results to the user."""

    @abstractmethod
    def show_text(self, text: str) -> None:
        """Write plain text to standard output exactly as given.

        Args:
            text: Deterministic output such as a pipeline report or DOT file.
        """
        pass

    @abstractmethod
    def show_result(self, title: str, text: str) -> None:
        """Display the outcome of a single verb.

        Args:
            title: Verb and its main operand.
            text: One-line result.
        """
        pass

    @abstractmethod
    def show_report_summary(self, report: PipelineReport) -> None:
        """Display pass/fail totals and the failing steps of a pipeline run.

        Args:
            report: Completed pipeline report.
        """
        pass

    @abstractmethod
    def show_table(self, title: str, columns: Sequence[str], rows: Sequence[Tuple[str, ...]]) -> None:
        """Display rows of text as a table.

        Args:
            title: Table title.
            columns: Column headers.
            rows: One tuple per row, as wide as `columns`.
        """
        pass

    @abstractmethod
    def log_message(self, message: str, level: str = "info") -> None:
        """Log a message to display.

        Args:
            message: Message to display.
            level: Log level (info, warning, error).
        """
        pass

    @abstractmethod
    def show_error(self, error: str) -> None:
        """Display an error message.

        Args:
            error: Error message to display.
        """
        pass

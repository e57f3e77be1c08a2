"""Mock display for testing."""

from typing import List, Sequence, Tuple

from src.domain.pipeline import PipelineReport
from src.interfaces.presentation import IDisplay


class MockDisplay(IDisplay):
    """Mock implementation of display for testing."""

    def __init__(self):
        self._texts: List[str] = []
        self._results: List[Tuple[str, str]] = []
        self._summaries: List[PipelineReport] = []
        self._tables: List[Tuple[str, Tuple[str, ...], List[Tuple[str, ...]]]] = []
        self._log_messages: List[Tuple[str, str]] = []  # (message, level)
        self._errors: List[str] = []

    def show_text(self, text: str) -> None:
        self._texts.append(text)

    def show_result(self, title: str, text: str) -> None:
        self._results.append((title, text))

    def show_report_summary(self, report: PipelineReport) -> None:
        self._summaries.append(report)

    def show_table(self, title: str, columns: Sequence[str], rows: Sequence[Tuple[str, ...]]) -> None:
        self._tables.append((title, tuple(columns), list(rows)))

    def log_message(self, message: str, level: str = "info") -> None:
        self._log_messages.append((message, level))

    def show_error(self, error: str) -> None:
        self._errors.append(error)

    # Test helper methods
    def get_output(self) -> str:
        """Everything written through show_text, concatenated."""
        return "".join(self._texts)

    def get_results(self) -> List[Tuple[str, str]]:
        return self._results.copy()

    def get_summaries(self) -> List[PipelineReport]:
        return self._summaries.copy()

    def get_tables(self) -> List[Tuple[str, Tuple[str, ...], List[Tuple[str, ...]]]]:
        return self._tables.copy()

    def get_log_messages(self) -> List[Tuple[str, str]]:
        return self._log_messages.copy()

    def get_errors(self) -> List[str]:
        return self._errors.copy()

    def clear(self) -> None:
        """Clear all recorded data."""
        self._texts.clear()
        self._results.clear()
        self._summaries.clear()
        self._tables.clear()
        self._log_messages.clear()
        self._errors.clear()

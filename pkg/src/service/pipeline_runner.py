"""Pipeline scripts: one verb per line, executed against the workspace."""

import logging
import shlex
from pathlib import Path
from typing import List, Optional

from typing_extensions import override

from ..domain.errors import ExpectationFailed, PipelineError, VpgkitError, WordSyntaxError
from ..domain.pipeline import PipelineReport, StepResult, StepStatus
from ..interfaces.service import IPipelineRunner, IServiceFacade
from ..interfaces.storage import IWorkspace

logger = logging.getLogger(__name__)


class PipelineRunner(IPipelineRunner):
    """Runs scripts through the facade and collects a deterministic report.

    Failed assertions are reported as FAIL and the script goes on; any
    other error stops the script.
    """

    def __init__(self, facade: IServiceFacade, workspace: IWorkspace):
        self._facade = facade
        self._workspace = workspace

    @override
    def run_pipeline(self, script: str, base_dir: Optional[Path] = None) -> PipelineReport:
        self._workspace.clear()
        if base_dir is not None:
            self._workspace.use_directory(base_dir)
        steps: List[StepResult] = []
        for line_no, line in enumerate(script.splitlines(), start=1):
            try:
                tokens = shlex.split(line, comments=True)
            except ValueError as e:
                error = WordSyntaxError(str(e))
                raise PipelineError(line_no, line.strip(), error, PipelineReport(tuple(steps))) from e
            if tokens:
                steps.append(self._step(line_no, tokens, steps))
        report = PipelineReport(tuple(steps))
        logger.info(f"Pipeline finished: {report.passed} passed, {report.failed} failed")
        return report

    def run_file(self, path: Path) -> PipelineReport:
        """Run a script file; its data paths resolve against the file's directory."""
        path = Path(path)
        return self.run_pipeline(self._workspace.read_text(str(path)), base_dir=path.resolve().parent)

    def _step(self, line_no: int, tokens: List[str], done: List[StepResult]) -> StepResult:
        verb, *args = tokens
        command = shlex.join(tokens)
        try:
            detail = self._facade.execute(verb, args)
        except ExpectationFailed as e:
            logger.error(f"Line {line_no} failed: {e}")
            return StepResult(line_no, command, StepStatus.FAIL, str(e))
        except VpgkitError as e:
            logger.error(f"Line {line_no} aborted the pipeline: {type(e).__name__}: {e}")
            raise PipelineError(line_no, command, e, PipelineReport(tuple(done))) from e
        status = StepStatus.PASS if self._facade.is_assertion(verb) else StepStatus.OK
        return StepResult(line_no, command, status, detail)

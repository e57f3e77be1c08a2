"""Dependency injection container for vpgkit."""

from dataclasses import dataclass
from typing import Optional

from .interfaces.presentation import IDisplay
from .interfaces.service import (
    IClosureService,
    ICongruenceExplorer,
    IEquationSolver,
    IPipelineRunner,
    IRecognisableService,
    IServiceFacade,
    IStallingsService,
    IVpaEngine,
)
from .interfaces.storage import IWorkspace

from .presentation.console_display import ConsoleDisplay
from .service.closure_service import ClosureService
from .service.congruence_service import CongruenceExplorer
from .service.equation_service import EquationSolver
from .service.pipeline_runner import PipelineRunner
from .service.recognisable_service import RecognisableService
from .service.service_facade import ServiceFacade
from .service.stallings_service import StallingsService
from .service.vpa_engine import VpaEngine
from .service.workspace import Workspace


@dataclass
class Container:
    """Dependency injection container.

    Holds all service instances for the application.
    """

    engine: IVpaEngine
    closure: IClosureService
    congruence: ICongruenceExplorer
    stallings: IStallingsService
    recognisable: IRecognisableService
    equations: IEquationSolver
    workspace: IWorkspace
    display: IDisplay
    service_facade: IServiceFacade
    pipeline_runner: IPipelineRunner


def create_container() -> Container:
    """Create production container with all dependencies.

    Returns:
        Container with all production service implementations.
    """
    return create_test_container()


def create_test_container(
    engine: Optional[IVpaEngine] = None,
    closure: Optional[IClosureService] = None,
    congruence: Optional[ICongruenceExplorer] = None,
    stallings: Optional[IStallingsService] = None,
    recognisable: Optional[IRecognisableService] = None,
    equations: Optional[IEquationSolver] = None,
    workspace: Optional[IWorkspace] = None,
    display: Optional[IDisplay] = None,
) -> Container:
    """Create a container, substituting any of the given dependencies.

    Args:
        engine: VPA engine (optional).
        closure: Closure service (optional).
        congruence: Congruence explorer (optional).
        stallings: Stallings service (optional).
        recognisable: Recognisable-set service (optional).
        equations: Equation solver (optional).
        workspace: Artifact workspace (optional).
        display: Display, e.g. a MockDisplay (optional).

    Returns:
        Container with the given or production implementations.
    """
    _engine = engine or VpaEngine()
    _closure = closure or ClosureService(_engine)
    _congruence = congruence or CongruenceExplorer()
    _stallings = stallings or StallingsService()
    _recognisable = recognisable or RecognisableService()
    _equations = equations or EquationSolver()
    _workspace = workspace or Workspace(_engine)
    _display = display or ConsoleDisplay()

    service_facade = ServiceFacade(
        engine=_engine,
        closure=_closure,
        congruence=_congruence,
        stallings=_stallings,
        recognisable=_recognisable,
        equations=_equations,
        workspace=_workspace,
    )

    return Container(
        engine=_engine,
        closure=_closure,
        congruence=_congruence,
        stallings=_stallings,
        recognisable=_recognisable,
        equations=_equations,
        workspace=_workspace,
        display=_display,
        service_facade=service_facade,
        pipeline_runner=PipelineRunner(service_facade, _workspace),
    )

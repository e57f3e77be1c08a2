"""Service interfaces for vpgkit."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from ..domain.alphabet import GroupAlphabet, Letter, PartitionedAlphabet, TorsionInfo, Word
from ..domain.automata import (
    Dfa,
    EmptinessVerdict,
    EquivalenceVerdict,
    Renaming,
    RunResult,
    ValidationReport,
    Vpa,
)
from ..domain.congruence import CongruenceTable, Context
from ..domain.enums import CongruenceKind, MatchSide, QuotientSide
from ..domain.equations import EquationSystem, SolutionSet
from ..domain.graphs import CoreGraph, IndexVerdict, WitnessLanguage
from ..domain.groups import CayleyTable, CosetUnion, PartitionCheck, Violation
from ..domain.pipeline import PipelineReport
from .oracle import ILangOracle


class IVpaEngine(ABC):
    """Interface for single-automaton decision procedures and constructions."""

    @abstractmethod
    def validate(self, v: Vpa) -> ValidationReport:
        """Check visibility and ⊥ conventions.

        Args:
            v: Automaton to check.

        Returns:
            Report listing every violation; never raises.
        """
        pass

    @abstractmethod
    def ensure_valid(self, v: Vpa) -> Vpa:
        """Return `v` unchanged, or raise InvalidAutomaton with the report."""
        pass

    @abstractmethod
    def run(self, v: Vpa, word: Sequence[Letter], with_trace: bool = False) -> RunResult:
        """Run `word` from every initial configuration.

        Args:
            v: Automaton.
            word: Word over v's alphabet.
            with_trace: Also return the configurations of one accepting run.

        Returns:
            Acceptance, final configurations and the optional trace.
        """
        pass

    @abstractmethod
    def accepts(self, v: Vpa, word: Sequence[Letter]) -> bool:
        """Membership of `word` in L(v)."""
        pass

    @abstractmethod
    def accepted_words(self, v: Vpa, max_length: int) -> List[Word]:
        """All accepted words up to `max_length`, shortest first."""
        pass

    @abstractmethod
    def is_deterministic(self, v: Vpa) -> bool:
        pass

    @abstractmethod
    def is_complete(self, v: Vpa) -> bool:
        pass

    @abstractmethod
    def complete(self, v: Vpa) -> Vpa:
        pass

    @abstractmethod
    def determinize(self, v: Vpa) -> Vpa:
        """Deterministic, complete, language-equal automaton over the same partition."""
        pass

    @abstractmethod
    def is_empty(self, v: Vpa) -> EmptinessVerdict:
        """Exact emptiness; a nonempty verdict carries a shortest witness."""
        pass

    @abstractmethod
    def track_stack_top(self, v: Vpa, k: int) -> Vpa:
        """Language-equal automaton whose states also record the top-k stack symbols."""
        pass

    @abstractmethod
    def normalize(self, v: Vpa, state_prefix: str = "q", symbol_prefix: str = "s") -> Vpa:
        """Rename states and stack symbols to plain strings."""
        pass


class IClosureService(ABC):
    """Interface for the closure algebra and language comparison over one partition."""

    @abstractmethod
    def union(self, v1: Vpa, v2: Vpa) -> Vpa:
        pass

    @abstractmethod
    def intersection(self, v1: Vpa, v2: Vpa) -> Vpa:
        pass

    @abstractmethod
    def complement(self, v: Vpa) -> Vpa:
        pass

    @abstractmethod
    def concat(self, v1: Vpa, v2: Vpa) -> Vpa:
        pass

    @abstractmethod
    def star(self, v: Vpa) -> Vpa:
        pass

    @abstractmethod
    def rename(self, v: Vpa, renaming: Renaming) -> Vpa:
        pass

    @abstractmethod
    def quotient_finite(self, v: Vpa, words: Iterable[Sequence[Letter]], side: QuotientSide) -> Vpa:
        """Quotient of L(v) by a finite language.

        Args:
            v: Automaton.
            words: The finite language.
            side: RIGHT gives {u : uw ∈ L}, LEFT gives {u : wu ∈ L}.

        Returns:
            Automaton over the same partition.
        """
        pass

    @abstractmethod
    def equivalent(self, v1: Vpa, v2: Vpa) -> EquivalenceVerdict:
        """Decide L(v1) = L(v2); a failure carries a shortest separating word."""
        pass


class ICongruenceExplorer(ABC):
    """Interface for bounded exploration of the matched-word congruences."""

    @abstractmethod
    def explore_classes(
        self, oracle: ILangOracle, kind: CongruenceKind, word_bound: int, context_bound: int
    ) -> CongruenceTable:
        pass

    @abstractmethod
    def distinguish(
        self, oracle: ILangOracle, kind: CongruenceKind, u1: Word, u2: Word, context_bound: int
    ) -> Optional[Context]:
        pass

    @abstractmethod
    def growth_profile(self, oracle: ILangOracle, kind: CongruenceKind, max_bound: int) -> List[int]:
        pass


class IStallingsService(ABC):
    """Interface for core graphs of subgroups of free groups."""

    @abstractmethod
    def build_core_graph(self, alphabet: GroupAlphabet, generators: Sequence[Sequence[Letter]]) -> CoreGraph:
        pass

    @abstractmethod
    def fold(self, graph: CoreGraph) -> CoreGraph:
        pass

    @abstractmethod
    def subgroup_membership(self, graph: CoreGraph, word: Sequence[Letter]) -> bool:
        pass

    @abstractmethod
    def index(self, graph: CoreGraph) -> IndexVerdict:
        pass

    @abstractmethod
    def preimage_dfa(self, graph: CoreGraph) -> Dfa:
        pass

    @abstractmethod
    def infinite_index_witness_language(self, graph: CoreGraph) -> WitnessLanguage:
        pass


class IRecognisableService(ABC):
    """Interface for word problems of finite groups and recognisable sets."""

    @abstractmethod
    def wp_dfa_from_cayley(self, table: CayleyTable) -> Dfa:
        pass

    @abstractmethod
    def to_coset_representation(self, dfa: Dfa, alphabet: GroupAlphabet) -> CosetUnion:
        pass

    @abstractmethod
    def is_symmetric_partition(
        self,
        alphabet: PartitionedAlphabet,
        torsion: TorsionInfo,
        inverse: Mapping[Letter, Letter],
    ) -> PartitionCheck:
        pass

    @abstractmethod
    def lift_to_matched(
        self, word: Sequence[Letter], alphabet: GroupAlphabet, side: MatchSide, violation: Violation
    ) -> Word:
        pass

    @abstractmethod
    def wp_witness_family(self, x: Letter, y: Letter, m: int, n: int, k: int) -> Tuple[Word, Word]:
        pass


class IEquationSolver(ABC):
    """Interface for bounded equation solving."""

    @abstractmethod
    def solve_bounded(self, system: EquationSystem) -> SolutionSet:
        pass

    @abstractmethod
    def encode_monoid_to_group(self, system: EquationSystem) -> EquationSystem:
        pass


class IServiceFacade(ABC):
    """Interface for verb dispatch over a workspace."""

    @property
    @abstractmethod
    def verbs(self) -> List[str]:
        """Every verb name, sorted."""
        pass

    @abstractmethod
    def is_assertion(self, verb: str) -> bool:
        """Whether `verb` is an expect-* check reported as PASS or FAIL."""
        pass

    @abstractmethod
    def execute(self, verb: str, args: Sequence[str]) -> str:
        """Run one verb.

        Args:
            verb: Verb name, e.g. "union" or "expect-equiv".
            args: Verb arguments.

        Returns:
            One-line result text for the report.
        """
        pass


class IPipelineRunner(ABC):
    """Interface for running pipeline scripts."""

    @abstractmethod
    def run_pipeline(self, script: str, base_dir: Optional[Path] = None) -> PipelineReport:
        """Execute a script of verbs in order.

        Args:
            script: One command per line; "#" starts a comment.
            base_dir: Directory relative file paths in the script resolve against.

        Returns:
            Report with one step per command.

        Raises:
            PipelineError: a command other than a failed assertion raised; carries the partial report.
        """
        pass

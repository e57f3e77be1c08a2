"""Service facade: runs workspace verbs against the services."""

import dataclasses
import itertools
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from typing_extensions import override

from ..domain import errors
from ..domain.alphabet import GroupAlphabet, PartitionedAlphabet, Word, format_word, make_partitioned_alphabet
from ..domain.automata import Dfa, Renaming, Vpa
from ..domain.enums import ArtifactKind, CongruenceKind, MatchSide, QuotientSide, ViolationKind
from ..domain.equations import EquationSystem, SolutionSet
from ..domain.errors import ExpectationFailed, InvalidGroup, UnknownArtifact, VpgkitError, WordSyntaxError
from ..domain.graphs import CoreGraph
from ..domain.groups import CayleyTable
from ..interfaces.oracle import ILangOracle
from ..interfaces.service import (
    IClosureService,
    ICongruenceExplorer,
    IEquationSolver,
    IRecognisableService,
    IServiceFacade,
    IStallingsService,
    IVpaEngine,
)
from ..interfaces.storage import IWorkspace
from ..serialization.equation_grammar import parse_equation
from ..serialization.word_syntax import parse_template, parse_word, render_word
from . import catalog
from .congruence_service import profiles_to_csv
from .oracles import CayleyOracle, DfaOracle, ReducedImageOracle, SubgroupOracle, VpaOracle

logger = logging.getLogger(__name__)

Handler = Callable[[List[str]], str]

_LIFT_KINDS = {
    MatchSide.MR: (ViolationKind.TORSION_CALL, ViolationKind.CALL_INVERSE_NOT_RETURN),
    MatchSide.MC: (ViolationKind.TORSION_RETURN, ViolationKind.RETURN_INVERSE_NOT_CALL),
}


def _arity(args: Sequence[str], low: int, high: Optional[int] = None, usage: str = "") -> None:
    if len(args) < low or (high is not None and len(args) > high):
        raise WordSyntaxError(f"usage: {usage}")


def _integer(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise WordSyntaxError(f"{what} must be an integer, got {text!r}") from None


def _enum(enum_type: Any, text: str) -> Any:
    try:
        return enum_type(text)
    except ValueError:
        choices = "|".join(member.value for member in enum_type)
        raise WordSyntaxError(f"expected {choices}, got {text!r}") from None


def _sample(words: Sequence[Word], group: Optional[GroupAlphabet], limit: int = 3) -> str:
    shown = ", ".join(render_word(w, group) for w in words[:limit])
    return shown + (", ..." if len(words) > limit else "")


class ServiceFacade(IServiceFacade):
    """Verb dispatcher over a Workspace.

    Construction verbs bind their result to an output name; query verbs
    return a one-line summary; "expect-*" verbs raise ExpectationFailed when
    the checked property does not hold.
    """

    def __init__(
        self,
        engine: IVpaEngine,
        closure: IClosureService,
        congruence: ICongruenceExplorer,
        stallings: IStallingsService,
        recognisable: IRecognisableService,
        equations: IEquationSolver,
        workspace: IWorkspace,
    ):
        """Initialize facade.

        Args:
            engine: Single-automaton procedures.
            closure: Closure algebra.
            congruence: Congruence explorer.
            stallings: Core graph service.
            recognisable: Finite group and coset service.
            equations: Bounded equation solver.
            workspace: Artifact registry the verbs read and write.
        """
        self._engine = engine
        self._closure = closure
        self._congruence = congruence
        self._stallings = stallings
        self._recognisable = recognisable
        self._equations = equations
        self._workspace = workspace
        self._handlers: Dict[str, Handler] = {
            # artifacts
            "load": self._load,
            "builtin": self._builtin,
            "save": self._save,
            "dot": self._dot,
            "list": self._list,
            # automata
            "validate": self._validate,
            "run": self._run,
            "words": self._words,
            "empty": self._empty,
            "equiv": self._equiv,
            "determinize": self._determinize,
            "complete": self._complete,
            "track": self._track,
            "union": lambda a: self._binary(a, self._closure.union, "union"),
            "intersect": lambda a: self._binary(a, self._closure.intersection, "intersect"),
            "concat": lambda a: self._binary(a, self._closure.concat, "concat"),
            "complement": lambda a: self._unary(a, self._closure.complement, "complement"),
            "star": lambda a: self._unary(a, self._closure.star, "star"),
            "rename": self._rename,
            "quotient": self._quotient,
            # congruences
            "reduce": self._reduce,
            "classes": self._classes,
            "profile": self._profile,
            "distinguish": self._distinguish,
            # groups
            "stallings": self._stallings_graph,
            "index": self._index,
            "member": self._member,
            "witness": self._witness,
            "preimage": self._preimage,
            "wpdfa": self._wpdfa,
            "coword": self._coword,
            "decompose": self._decompose,
            "embed": self._embed,
            "symmetric": self._symmetric,
            "lift": self._lift,
            # equations
            "solve": self._solve,
            # assertions
            "expect-accepts": lambda a: self._expect_run(a, True),
            "expect-rejects": lambda a: self._expect_run(a, False),
            "expect-empty": lambda a: self._expect_empty(a, True),
            "expect-nonempty": lambda a: self._expect_empty(a, False),
            "expect-equiv": lambda a: self._expect_equiv(a, True),
            "expect-inequiv": lambda a: self._expect_equiv(a, False),
            "expect-deterministic": self._expect_deterministic,
            "expect-language": self._expect_language,
            "expect-reduced-image": self._expect_reduced_image,
            "expect-index": self._expect_index,
            "expect-member": lambda a: self._expect_member(a, True),
            "expect-not-member": lambda a: self._expect_member(a, False),
            "expect-witness": self._expect_witness,
            "expect-cosets": self._expect_cosets,
            "expect-profile": self._expect_profile,
            "expect-distinguish": self._expect_distinguish,
            "expect-symmetric": self._expect_symmetric,
            "expect-lift": self._expect_lift,
            "expect-identity": self._expect_identity,
            "expect-witness-family": self._expect_witness_family,
            "expect-solutions": self._expect_solutions,
            "expect-encoding": self._expect_encoding,
            "expect-error": self._expect_error,
        }

    @property
    @override
    def verbs(self) -> List[str]:
        return sorted(self._handlers)

    @override
    def is_assertion(self, verb: str) -> bool:
        return verb.startswith("expect-")

    @override
    def execute(self, verb: str, args: Sequence[str]) -> str:
        handler = self._handlers.get(verb)
        if handler is None:
            raise WordSyntaxError(f"unknown verb {verb!r}")
        logger.debug(f"Executing {verb} {list(args)}")
        return handler(list(args))

    # ------------------------------------------------------------------
    # Artifact lookup helpers

    def _vpa(self, name: str) -> Vpa:
        return self._workspace.get(name, ArtifactKind.VPA)

    def _graph(self, name: str) -> CoreGraph:
        return self._workspace.get(name, ArtifactKind.GRAPH)

    def _cayley(self, name: str) -> CayleyTable:
        return self._workspace.get(name, ArtifactKind.CAYLEY)

    def _letters_of(self, name: str) -> Tuple[PartitionedAlphabet, Optional[GroupAlphabet]]:
        """Partition and, when known, group alphabet of any artifact."""
        kind = self._workspace.kind_of(name)
        artifact = self._workspace.get(name)
        if kind is ArtifactKind.ALPHABET:
            if isinstance(artifact, GroupAlphabet):
                return artifact.base, artifact
            return artifact, None
        if kind is ArtifactKind.VPA:
            return artifact.alphabet, None
        if kind in (ArtifactKind.GRAPH, ArtifactKind.CAYLEY):
            return artifact.alphabet.base, artifact.alphabet
        if kind is ArtifactKind.DFA:
            if artifact.group is not None:
                return artifact.group.base, artifact.group
            return make_partitioned_alphabet([], artifact.letters, []), None
        if kind is ArtifactKind.ORACLE:
            return artifact.alphabet, None
        raise UnknownArtifact(f"{name!r} is a {kind.value} and has no alphabet")

    def _group(self, name: str) -> GroupAlphabet:
        _, group = self._letters_of(name)
        if group is None:
            raise InvalidGroup(f"{name!r} has no inverses declared")
        return group

    def _word(self, name: str, text: str) -> Word:
        alphabet, group = self._letters_of(name)
        return parse_word(text, alphabet, group)

    def _oracle(self, name: str) -> ILangOracle:
        kind = self._workspace.kind_of(name)
        artifact = self._workspace.get(name)
        if kind is ArtifactKind.ORACLE:
            return artifact
        if kind is ArtifactKind.VPA:
            return VpaOracle(self._engine, artifact, name)
        if kind is ArtifactKind.CAYLEY:
            return CayleyOracle(artifact)
        if kind is ArtifactKind.GRAPH:
            return SubgroupOracle(self._stallings, artifact)
        if kind is ArtifactKind.DFA:
            return DfaOracle(artifact, self._letters_of(name)[0])
        raise UnknownArtifact(f"{name!r} is a {kind.value}, not a language")

    def _bind(self, name: str, kind: ArtifactKind, artifact: Any) -> None:
        self._workspace.add(name, kind, artifact, replace=True)

    @staticmethod
    def _describe_vpa(name: str, v: Vpa) -> str:
        states, symbols, transitions = v.size
        return f"{name}: {states} states, {symbols} stack symbols, {transitions} transitions"

    # ------------------------------------------------------------------
    # Artifacts

    def _load(self, args: List[str]) -> str:
        _arity(args, 3, 3, "load NAME KIND PATH")
        name, kind_text, path = args
        kind = _enum(ArtifactKind, kind_text)
        self._workspace.load(name, kind, path)
        return f"{name}: {kind.value} from {path}"

    def _builtin(self, args: List[str]) -> str:
        _arity(args, 2, 2, "builtin NAME ENTRY")
        name, entry = args
        kind, artifact = catalog.build(entry)
        self._bind(name, kind, artifact)
        return f"{name}: {catalog.CATALOG[entry].description}"

    def _save(self, args: List[str]) -> str:
        _arity(args, 2, 2, "save NAME PATH")
        self._workspace.save(args[0], args[1])
        return f"{args[0]} -> {args[1]}"

    def _dot(self, args: List[str]) -> str:
        _arity(args, 2, 2, "dot NAME PATH")
        self._workspace.export_dot(args[0], args[1])
        return f"{args[0]} -> {args[1]}"

    def _list(self, args: List[str]) -> str:
        _arity(args, 0, 0, "list")
        names = self._workspace.names()
        return ", ".join(f"{n} ({self._workspace.kind_of(n).value})" for n in names) or "(empty)"

    # ------------------------------------------------------------------
    # Automata

    def _validate(self, args: List[str]) -> str:
        _arity(args, 1, 1, "validate A")
        report = self._engine.validate(self._vpa(args[0]))
        if report.valid:
            return f"{args[0]}: valid"
        return f"{args[0]}: " + "; ".join(str(issue) for issue in report.issues)

    def _run(self, args: List[str]) -> str:
        _arity(args, 2, 2, "run A WORD")
        result = self._engine.run(self._vpa(args[0]), self._word(args[0], args[1]))
        return f"{'accepted' if result.accepted else 'rejected'} ({len(result.final_configs)} final configurations)"

    def _words(self, args: List[str]) -> str:
        _arity(args, 2, 2, "words A MAXLEN")
        found = self._engine.accepted_words(self._vpa(args[0]), _integer(args[1], "MAXLEN"))
        return f"{len(found)} words: {_sample(found, None, limit=8) or 'none'}"

    def _empty(self, args: List[str]) -> str:
        _arity(args, 1, 1, "empty A")
        return str(self._engine.is_empty(self._vpa(args[0])))

    def _equiv(self, args: List[str]) -> str:
        _arity(args, 2, 2, "equiv A B")
        return str(self._closure.equivalent(self._vpa(args[0]), self._vpa(args[1])))

    def _determinize(self, args: List[str]) -> str:
        _arity(args, 2, 2, "determinize OUT A")
        result = self._engine.determinize(self._vpa(args[1]))
        self._bind(args[0], ArtifactKind.VPA, result)
        return self._describe_vpa(args[0], result)

    def _complete(self, args: List[str]) -> str:
        _arity(args, 2, 2, "complete OUT A")
        result = self._engine.complete(self._vpa(args[1]))
        self._bind(args[0], ArtifactKind.VPA, result)
        return self._describe_vpa(args[0], result)

    def _track(self, args: List[str]) -> str:
        _arity(args, 3, 3, "track OUT A K")
        result = self._engine.track_stack_top(self._vpa(args[1]), _integer(args[2], "K"))
        self._bind(args[0], ArtifactKind.VPA, result)
        return self._describe_vpa(args[0], result)

    def _binary(self, args: List[str], operation: Callable[[Vpa, Vpa], Vpa], verb: str) -> str:
        _arity(args, 3, 3, f"{verb} OUT A B")
        result = operation(self._vpa(args[1]), self._vpa(args[2]))
        self._bind(args[0], ArtifactKind.VPA, result)
        return self._describe_vpa(args[0], result)

    def _unary(self, args: List[str], operation: Callable[[Vpa], Vpa], verb: str) -> str:
        _arity(args, 2, 2, f"{verb} OUT A")
        result = operation(self._vpa(args[1]))
        self._bind(args[0], ArtifactKind.VPA, result)
        return self._describe_vpa(args[0], result)

    def _rename(self, args: List[str]) -> str:
        _arity(args, 3, None, "rename OUT A TARGET a=b ...")
        out, source_name, target_name, *pairs = args
        source = self._vpa(source_name)
        target, _ = self._letters_of(target_name)
        mapping: Dict[str, str] = {}
        for pair in pairs:
            letter, sep, image = pair.partition("=")
            if not sep:
                raise WordSyntaxError(f"expected a=b, got {pair!r}")
            mapping[letter] = image
        result = self._closure.rename(source, Renaming(source.alphabet, target, mapping))
        self._bind(out, ArtifactKind.VPA, result)
        return self._describe_vpa(out, result)

    def _quotient(self, args: List[str]) -> str:
        _arity(args, 3, None, "quotient OUT A left|right WORD...")
        out, name, side_text, *word_texts = args
        side = _enum(QuotientSide, side_text)
        words = [self._word(name, text) for text in word_texts]
        result = self._closure.quotient_finite(self._vpa(name), words, side)
        self._bind(out, ArtifactKind.VPA, result)
        return self._describe_vpa(out, result)

    # ------------------------------------------------------------------
    # Congruences

    def _reduce(self, args: List[str]) -> str:
        _arity(args, 4, 4, "reduce OUT A GROUP SOURCE_BOUND")
        out, name, group_name, bound = args
        oracle = ReducedImageOracle(self._engine, self._vpa(name), self._group(group_name), _integer(bound, "SOURCE_BOUND"))
        self._bind(out, ArtifactKind.ORACLE, oracle)
        return f"{out}: {len(oracle.members)} reduced words"

    def _classes(self, args: List[str]) -> str:
        _arity(args, 4, 4, "classes ORACLE KIND WORD_BOUND CONTEXT_BOUND")
        name, kind_text, word_bound, context_bound = args
        table = self._congruence.explore_classes(
            self._oracle(name),
            _enum(CongruenceKind, kind_text),
            _integer(word_bound, "WORD_BOUND"),
            _integer(context_bound, "CONTEXT_BOUND"),
        )
        return f"{table.class_count} classes; representatives {_sample(table.representatives, None, limit=6)}"

    def _profile(self, args: List[str]) -> str:
        _arity(args, 3, 4, "profile ORACLE KIND|all MAX_BOUND [CSV_PATH]")
        name, kind_text, bound_text, *csv_path = args
        kinds = list(CongruenceKind) if kind_text == "all" else [_enum(CongruenceKind, kind_text)]
        oracle = self._oracle(name)
        max_bound = _integer(bound_text, "MAX_BOUND")
        profiles = {kind: self._congruence.growth_profile(oracle, kind, max_bound) for kind in kinds}
        if csv_path:
            self._workspace.write_text(csv_path[0], profiles_to_csv(profiles))
        return "; ".join(f"{kind.value} {' '.join(map(str, counts))}" for kind, counts in profiles.items())

    def _distinguish(self, args: List[str]) -> str:
        _arity(args, 5, 5, "distinguish ORACLE KIND U1 U2 CONTEXT_BOUND")
        context = self._find_context(args)
        return "indistinguishable" if context is None else f"separated by {context}"

    def _find_context(self, args: List[str]) -> Any:
        name, kind_text, u1, u2, bound = args[:5]
        return self._congruence.distinguish(
            self._oracle(name),
            _enum(CongruenceKind, kind_text),
            self._word(name, u1),
            self._word(name, u2),
            _integer(bound, "CONTEXT_BOUND"),
        )

    # ------------------------------------------------------------------
    # Groups

    def _stallings_graph(self, args: List[str]) -> str:
        _arity(args, 2, None, "stallings OUT GROUP WORD...")
        out, group_name, *word_texts = args
        group = self._group(group_name)
        generators = [parse_word(text, group.base, group) for text in word_texts]
        graph = self._stallings.build_core_graph(group, generators)
        self._bind(out, ArtifactKind.GRAPH, graph)
        return f"{out}: {len(graph.vertices)} vertices, {len(graph.edges)} edges"

    def _index(self, args: List[str]) -> str:
        _arity(args, 1, 1, "index G")
        return str(self._stallings.index(self._graph(args[0])))

    def _member(self, args: List[str]) -> str:
        _arity(args, 2, 2, "member G WORD")
        inside = self._stallings.subgroup_membership(self._graph(args[0]), self._word(args[0], args[1]))
        return "member" if inside else "not a member"

    def _witness(self, args: List[str]) -> str:
        _arity(args, 1, 1, "witness G")
        return str(self._stallings.infinite_index_witness_language(self._graph(args[0])))

    def _bind_dfa(self, out: str, dfa: Dfa) -> str:
        self._bind(out, ArtifactKind.DFA, dfa)
        return f"{out}: {len(dfa.states)} states over {len(dfa.letters)} letters"

    def _preimage(self, args: List[str]) -> str:
        _arity(args, 2, 2, "preimage OUT G")
        return self._bind_dfa(args[0], self._stallings.preimage_dfa(self._graph(args[1])))

    def _wpdfa(self, args: List[str]) -> str:
        _arity(args, 2, 2, "wpdfa OUT CAYLEY")
        return self._bind_dfa(args[0], self._recognisable.wp_dfa_from_cayley(self._cayley(args[1])))

    def _coword(self, args: List[str]) -> str:
        _arity(args, 2, 2, "coword OUT CAYLEY")
        return self._bind_dfa(args[0], self._recognisable.coword_dfa(self._cayley(args[1])))

    def _decompose(self, args: List[str]) -> str:
        _arity(args, 2, 2, "decompose OUT DFA")
        dfa: Dfa = self._workspace.get(args[1], ArtifactKind.DFA)
        if dfa.group is None:
            raise InvalidGroup(f"{args[1]!r} carries no group alphabet")
        union = self._recognisable.to_coset_representation(dfa, dfa.group)
        self._bind(args[0], ArtifactKind.COSETS, union)
        return (
            f"{args[0]}: {len(union.coset_representatives)} of {union.normal_subgroup_index} cosets; "
            f"representatives {_sample(union.coset_representatives, dfa.group, limit=6)}"
        )

    def _embed(self, args: List[str]) -> str:
        _arity(args, 3, 3, "embed OUT DFA TARGET")
        dfa: Dfa = self._workspace.get(args[1], ArtifactKind.DFA)
        target, _ = self._letters_of(args[2])
        result = dfa.to_vpa(target)
        self._bind(args[0], ArtifactKind.VPA, result)
        return self._describe_vpa(args[0], result)

    def _partition_check(self, name: str) -> Any:
        kind = self._workspace.kind_of(name)
        if kind is ArtifactKind.CAYLEY:
            table = self._cayley(name)
            return self._recognisable.is_symmetric_partition(
                table.alphabet.base, table.torsion(), table.alphabet.inverse
            )
        group = self._group(name)
        return self._recognisable.is_symmetric_partition(group.base, group.torsion, group.inverse)

    def _symmetric(self, args: List[str]) -> str:
        _arity(args, 1, 1, "symmetric ALPHABET")
        check = self._partition_check(args[0])
        if check.symmetric:
            return "symmetric"
        return "not symmetric: " + "; ".join(str(v) for v in check.violations)

    def _lifted(self, name: str, side_text: str, word_text: str) -> Tuple[Word, Word, GroupAlphabet]:
        side = _enum(MatchSide, side_text)
        group = self._group(name)
        if self._workspace.kind_of(name) is ArtifactKind.CAYLEY:
            table = self._cayley(name)
            group = dataclasses.replace(group, torsion=table.torsion())
        violation = self._recognisable.is_symmetric_partition(group.base, group.torsion, group.inverse).first(
            _LIFT_KINDS[side]
        )
        if violation is None:
            raise errors.SymmetricPartition(f"no violation lifts into {side.value.upper()}")
        word = parse_word(word_text, group.base, group)
        return word, self._recognisable.lift_to_matched(word, group, side, violation), group

    def _lift(self, args: List[str]) -> str:
        _arity(args, 3, 3, "lift GROUP mr|mc WORD")
        _, lifted, group = self._lifted(*args)
        return render_word(lifted, group)

    # ------------------------------------------------------------------
    # Equations

    def _system(self, path: str, bound: Optional[str] = None) -> EquationSystem:
        def resolve_alphabet(name: str) -> object:
            alphabet, group = self._letters_of(name)
            return group if group is not None else alphabet

        system = parse_equation(self._workspace.read_text(path), resolve_alphabet, self._oracle)
        if bound is not None:
            system = dataclasses.replace(system, bound=_integer(bound, "BOUND"))
        return system

    @staticmethod
    def _format_solutions(solutions: SolutionSet) -> List[str]:
        return [solutions.format_assignment(a) for a in solutions.assignments]

    def _solve(self, args: List[str]) -> str:
        _arity(args, 1, 2, "solve EQUATION_FILE [BOUND]")
        solutions = self._equations.solve_bounded(self._system(*args))
        shown = self._format_solutions(solutions)
        return f"{len(shown)} solutions up to {solutions.exhausted_bound}: " + ("; ".join(shown[:6]) or "none")

    # ------------------------------------------------------------------
    # Assertions

    def _expect_run(self, args: List[str], accepted: bool) -> str:
        _arity(args, 2, 2, "expect-accepts|expect-rejects A WORD")
        if self._engine.accepts(self._vpa(args[0]), self._word(args[0], args[1])) != accepted:
            raise ExpectationFailed(f"{args[1]} is {'rejected' if accepted else 'accepted'}")
        return ""

    def _expect_empty(self, args: List[str], empty: bool) -> str:
        _arity(args, 1, 1 if empty else 2, "expect-empty A | expect-nonempty A [WITNESS]")
        verdict = self._engine.is_empty(self._vpa(args[0]))
        if verdict.empty != empty:
            raise ExpectationFailed(str(verdict))
        if len(args) == 2 and verdict.witness != self._word(args[0], args[1]):
            raise ExpectationFailed(f"witness is {format_word(verdict.witness or ())}")
        return str(verdict)

    def _expect_equiv(self, args: List[str], equivalent: bool) -> str:
        _arity(args, 2, 2 if equivalent else 3, "expect-equiv A B | expect-inequiv A B [COUNTEREXAMPLE]")
        verdict = self._closure.equivalent(self._vpa(args[0]), self._vpa(args[1]))
        if verdict.equivalent != equivalent:
            raise ExpectationFailed(str(verdict))
        if len(args) == 3 and verdict.counterexample != self._word(args[0], args[2]):
            raise ExpectationFailed(str(verdict))
        return str(verdict)

    def _expect_deterministic(self, args: List[str]) -> str:
        _arity(args, 1, 1, "expect-deterministic A")
        v = self._vpa(args[0])
        if not self._engine.is_deterministic(v):
            raise ExpectationFailed("not deterministic")
        if not self._engine.is_complete(v):
            raise ExpectationFailed("not complete")
        return ""

    @staticmethod
    def _compare_sets(found: set, expected: set, group: Optional[GroupAlphabet]) -> str:
        missing = sorted(expected - found, key=len)
        extra = sorted(found - expected, key=len)
        if missing:
            raise ExpectationFailed(f"missing {render_word(missing[0], group)}")
        if extra:
            raise ExpectationFailed(f"unexpected {render_word(extra[0], group)}")
        return f"{len(found)} words agree"

    def _expect_language(self, args: List[str]) -> str:
        _arity(args, 3, 3, "expect-language A MAXLEN FAMILY")
        name, bound_text, family = args
        v = self._vpa(name)
        max_length = _integer(bound_text, "MAXLEN")
        expected = set(parse_template(family, v.alphabet).expand(max_length))
        return self._compare_sets(set(self._engine.accepted_words(v, max_length)), expected, None)

    def _expect_reduced_image(self, args: List[str]) -> str:
        _arity(args, 5, 5, "expect-reduced-image A GROUP SOURCE_BOUND MAXLEN FAMILY")
        name, group_name, source_text, bound_text, family = args
        group = self._group(group_name)
        max_length = _integer(bound_text, "MAXLEN")
        oracle = ReducedImageOracle(self._engine, self._vpa(name), group, _integer(source_text, "SOURCE_BOUND"))
        found = {w for w in oracle.members if len(w) <= max_length}
        expected = set(parse_template(family, group.base, group).expand(max_length))
        return self._compare_sets(found, expected, group)

    def _expect_index(self, args: List[str]) -> str:
        _arity(args, 2, 3, "expect-index G finite N | expect-index G infinite")
        verdict = self._stallings.index(self._graph(args[0]))
        if args[1] == "infinite":
            if verdict.finite:
                raise ExpectationFailed(str(verdict))
        elif args[1] == "finite" and len(args) == 3:
            if not verdict.finite or verdict.index != _integer(args[2], "N"):
                raise ExpectationFailed(str(verdict))
        else:
            raise WordSyntaxError("usage: expect-index G finite N | expect-index G infinite")
        return str(verdict)

    def _expect_member(self, args: List[str], member: bool) -> str:
        _arity(args, 2, 2, "expect-member|expect-not-member G WORD")
        if self._stallings.subgroup_membership(self._graph(args[0]), self._word(args[0], args[1])) != member:
            raise ExpectationFailed(f"{args[1]} is {'not ' if member else ''}in the subgroup")
        return ""

    def _expect_witness(self, args: List[str]) -> str:
        _arity(args, 2, 2, "expect-witness G MAX_MIDDLE")
        graph = self._graph(args[0])
        group = graph.alphabet
        witness = self._stallings.infinite_index_witness_language(graph)
        pair = (witness.letter, group.inv(witness.letter))
        checked = 0
        max_middle = _integer(args[1], "MAX_MIDDLE")
        middles = (m for length in range(max_middle + 1) for m in itertools.product(pair, repeat=length))
        for middle in middles:
            inside = self._stallings.subgroup_membership(graph, witness.member(middle))
            if inside != (group.exponent_sum(middle, witness.letter) == 0):
                raise ExpectationFailed(f"contract fails at {render_word(middle, group)}")
            checked += 1
        return f"{witness}: {checked} words checked"

    def _expect_cosets(self, args: List[str]) -> str:
        _arity(args, 3, 3, "expect-cosets COSETS DFA MAXLEN")
        union = self._workspace.get(args[0], ArtifactKind.COSETS)
        dfa: Dfa = self._workspace.get(args[1], ArtifactKind.DFA)
        alphabet, _ = self._letters_of(args[1])
        checked = 0
        for word in alphabet.words(_integer(args[2], "MAXLEN")):
            if union.contains(word) != dfa.accepts_word(word):
                raise ExpectationFailed(f"disagree on {format_word(word)}")
            checked += 1
        return f"{checked} words agree"

    def _profile_between(self, oracle: ILangOracle, kind: CongruenceKind, low: int, high: int) -> List[int]:
        return [self._congruence.explore_classes(oracle, kind, b, b + 2).class_count for b in range(low, high + 1)]

    def _expect_profile(self, args: List[str]) -> str:
        _arity(args, 3, None, "expect-profile ORACLE KIND stable|increasing FROM TO | expect-profile ORACLE KIND COUNT...")
        name, kind_text, *rest = args
        oracle = self._oracle(name)
        kind = _enum(CongruenceKind, kind_text)
        if rest[0] in ("stable", "increasing"):
            _arity(rest, 3, 3, "expect-profile ORACLE KIND stable|increasing FROM TO")
            low, high = _integer(rest[1], "FROM"), _integer(rest[2], "TO")
            counts = self._profile_between(oracle, kind, low, high)
            shown = " ".join(map(str, counts))
            if rest[0] == "stable" and len(set(counts)) > 1:
                raise ExpectationFailed(f"profile {shown} is not constant")
            if rest[0] == "increasing":
                if any(b >= c for b, c in zip(counts, counts[1:])):
                    raise ExpectationFailed(f"profile {shown} is not strictly increasing")
                short = [low + i for i, count in enumerate(counts) if count < low + i + 1]
                if short:
                    raise ExpectationFailed(f"profile {shown} has fewer than n+1 classes at bound {short[0]}")
            return f"profile {shown}"
        expected = [_integer(text, "COUNT") for text in rest]
        counts = self._congruence.growth_profile(oracle, kind, len(expected))
        if counts != expected:
            raise ExpectationFailed(f"profile is {' '.join(map(str, counts))}")
        return ""

    def _expect_distinguish(self, args: List[str]) -> str:
        _arity(args, 5, 6, "expect-distinguish ORACLE KIND U1 U2 CONTEXT_BOUND [CONTEXT|none]")
        context = self._find_context(args)
        if len(args) == 6 and args[5] == "none":
            if context is not None:
                raise ExpectationFailed(f"separated by {context}")
            return "indistinguishable"
        if context is None:
            raise ExpectationFailed("no separating context within the bound")
        if len(args) == 6 and str(context) != args[5]:
            raise ExpectationFailed(f"separated by {context}")
        return f"separated by {context}"

    def _expect_symmetric(self, args: List[str]) -> str:
        _arity(args, 2, 2, "expect-symmetric ALPHABET yes|no")
        check = self._partition_check(args[0])
        if args[1] not in ("yes", "no"):
            raise WordSyntaxError(f"expected yes|no, got {args[1]!r}")
        wanted = args[1] == "yes"
        if check.symmetric != wanted:
            raise ExpectationFailed(
                "symmetric" if check.symmetric else "; ".join(str(v) for v in check.violations)
            )
        return "symmetric" if check.symmetric else ", ".join(k.value for k in check.kinds())

    def _expect_lift(self, args: List[str]) -> str:
        _arity(args, 3, 3, "expect-lift GROUP mr|mc WORD")
        word, lifted, group = self._lifted(*args)
        profile = group.base.classify(lifted)
        if not (profile.is_mr if args[1] == MatchSide.MR.value else profile.is_mc):
            raise ExpectationFailed(f"{render_word(lifted, group)} is not {args[1].upper()}")
        if self._workspace.kind_of(args[0]) is ArtifactKind.CAYLEY:
            table = self._cayley(args[0])
            same = table.evaluate(lifted) == table.evaluate(word)
        else:
            same = group.reduce(lifted) == group.reduce(word)
        if not same:
            raise ExpectationFailed(f"{render_word(lifted, group)} has a different image")
        return render_word(lifted, group)

    def _expect_identity(self, args: List[str]) -> str:
        _arity(args, 2, 2, "expect-identity CAYLEY WORD")
        table = self._cayley(args[0])
        value = table.evaluate(self._word(args[0], args[1]))
        if value != table.identity:
            raise ExpectationFailed(f"evaluates to {value}")
        return ""

    def _expect_witness_family(self, args: List[str]) -> str:
        _arity(args, 4, 4, "expect-witness-family CAYLEY X Y MAX_K")
        name, x, y, k_text = args
        table = self._cayley(name)
        m = table.order_of(table.generator_map[x])
        n = table.order_of(table.generator_map[y])
        for k in range(1, _integer(k_text, "MAX_K") + 1):
            for word in self._recognisable.wp_witness_family(x, y, m, n, k):
                if not table.is_identity(word):
                    raise ExpectationFailed(f"k={k}: {format_word(word)} is not trivial")
        return f"orders {m} and {n}"

    def _parse_assignment(self, system: EquationSystem, text: str) -> Tuple[Word, ...]:
        values: Dict[str, Word] = {}
        for part in text.split(","):
            name, sep, word_text = part.partition("=")
            name = name.strip()
            if not sep or name not in system.variables:
                raise WordSyntaxError(f"bad assignment {part!r}")
            values[name] = parse_word(word_text, system.constants, system.group)
        if set(values) != set(system.variables):
            raise WordSyntaxError(f"assignment {text!r} must give every variable")
        return tuple(values[name] for name in system.variables)

    def _expect_solutions(self, args: List[str]) -> str:
        _arity(args, 2, None, "expect-solutions EQUATION_FILE BOUND [ASSIGNMENT...]")
        path, bound, *assignments = args
        system = self._system(path, bound)
        expected = {self._parse_assignment(system, text) for text in assignments}
        solutions = self._equations.solve_bounded(system)
        found = set(solutions.as_set())
        if found != expected:
            missing = sorted(expected - found)
            extra = sorted(found - expected)
            detail = f"missing {missing[0]}" if missing else f"unexpected {extra[0]}"
            raise ExpectationFailed(f"{len(found)} solutions; {detail}")
        return f"{len(found)} solutions"

    def _expect_encoding(self, args: List[str]) -> str:
        _arity(args, 2, 2, "expect-encoding EQUATION_FILE BOUND")
        system = self._system(args[0], args[1])
        direct = self._equations.solve_bounded(system)
        encoded = self._equations.solve_bounded(self._equations.encode_monoid_to_group(system))
        if direct.as_set() != encoded.as_set():
            raise ExpectationFailed(f"{len(direct)} monoid solutions, {len(encoded)} through the group")
        return f"{len(direct)} solutions either way"

    def _expect_error(self, args: List[str]) -> str:
        _arity(args, 2, None, "expect-error ERROR_NAME VERB ARGS...")
        wanted, verb, *rest = args
        expected_type = getattr(errors, wanted, None)
        if not (isinstance(expected_type, type) and issubclass(expected_type, VpgkitError)):
            raise WordSyntaxError(f"unknown error name {wanted!r}")
        try:
            self.execute(verb, rest)
        except ExpectationFailed:
            raise
        except expected_type as e:
            return f"{type(e).__name__}: {e}"
        except VpgkitError as e:
            raise ExpectationFailed(f"raised {type(e).__name__}: {e}") from e
        raise ExpectationFailed(f"{verb} succeeded")

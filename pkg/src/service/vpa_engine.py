"""Visibly pushdown automaton engine.

Runs, validation, language enumeration, determinization, emptiness with
shortest witnesses, and stack-top tracking. Every construction that builds a
new automaton goes through `build_reachable`, which explores only the states
and stack symbols reachable from the initial states.
"""

import heapq
import itertools
import logging
from collections import defaultdict, deque
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from typing_extensions import override

from ..domain.alphabet import Letter, PartitionedAlphabet, Word, format_word
from ..domain.automata import (
    BOTTOM,
    Configuration,
    EmptinessVerdict,
    RunResult,
    StackSymbol,
    State,
    ValidationIssue,
    ValidationReport,
    Vpa,
)
from ..domain.enums import IssueKind, LetterKind
from ..domain.errors import InvalidAutomaton
from ..domain.ordering import canonical_key, canonical_sorted
from ..interfaces.service import IVpaEngine

logger = logging.getLogger(__name__)

CallStep = Callable[[State, Letter], Iterable[Tuple[State, StackSymbol]]]
InternalStep = Callable[[State, Letter], Iterable[State]]
ReturnStep = Callable[[State, Letter, StackSymbol], Iterable[State]]


def build_reachable(
    alphabet: PartitionedAlphabet,
    initials: Iterable[State],
    accepting: Callable[[State], bool],
    call_step: CallStep,
    internal_step: InternalStep,
    return_step: ReturnStep,
    bottom: StackSymbol = BOTTOM,
) -> Vpa:
    """Materialise the part of an implicitly given VPA reachable from `initials`.

    Returns are expanded for every pair of known state and known stack symbol
    (plus ⊥), so a step function that is total yields a complete automaton.
    """
    states: Set[State] = set()
    symbols: Set[StackSymbol] = set()
    state_order: List[State] = []
    symbol_order: List[StackSymbol] = []
    state_queue: deque = deque()
    symbol_queue: deque = deque()
    expanded: Set[Tuple[State, StackSymbol]] = set()
    calls, internals, returns = set(), set(), set()

    def add_state(state: State) -> None:
        if state not in states:
            states.add(state)
            state_order.append(state)
            state_queue.append(state)

    def add_symbol(symbol: StackSymbol) -> None:
        if symbol == bottom:
            raise ValueError("construction pushed the bottom symbol")
        if symbol not in symbols:
            symbols.add(symbol)
            symbol_order.append(symbol)
            symbol_queue.append(symbol)

    def expand_returns(state: State, symbol: StackSymbol) -> None:
        if (state, symbol) in expanded:
            return
        expanded.add((state, symbol))
        for letter in alphabet.returns:
            for target in return_step(state, letter, symbol):
                returns.add((state, letter, symbol, target))
                add_state(target)

    initial_set = list(initials)
    for state in initial_set:
        add_state(state)

    while state_queue or symbol_queue:
        if state_queue:
            state = state_queue.popleft()
            for letter in alphabet.calls:
                for target, pushed in call_step(state, letter):
                    calls.add((state, letter, target, pushed))
                    add_symbol(pushed)
                    add_state(target)
            for letter in alphabet.internals:
                for target in internal_step(state, letter):
                    internals.add((state, letter, target))
                    add_state(target)
            for symbol in [bottom] + list(symbol_order):
                expand_returns(state, symbol)
        else:
            symbol = symbol_queue.popleft()
            for state in list(state_order):
                expand_returns(state, symbol)

    return Vpa(
        alphabet=alphabet,
        states=frozenset(states),
        initials=frozenset(initial_set),
        accepts=frozenset(q for q in states if accepting(q)),
        stack_symbols=frozenset(symbols),
        call_transitions=frozenset(calls),
        internal_transitions=frozenset(internals),
        return_transitions=frozenset(returns),
        bottom=bottom,
    )


class VpaEngine(IVpaEngine):
    """Decision procedures and constructions on single automata."""

    @override
    def validate(self, v: Vpa) -> ValidationReport:
        issues: List[ValidationIssue] = []
        alphabet = v.alphabet

        def issue(kind: IssueKind, detail: str, item: Optional[Tuple] = None) -> None:
            issues.append(ValidationIssue(kind, detail, item))

        def check_letter(letter: Letter, expected: LetterKind, item: Tuple) -> None:
            if letter not in alphabet:
                issue(IssueKind.UNKNOWN_LETTER, f"letter {letter!r} not in alphabet", item)
            elif alphabet.kind_of(letter) is not expected:
                issue(
                    IssueKind.VISIBILITY_BROKEN,
                    f"{alphabet.kind_of(letter).value} letter {letter!r} used on a {expected.value} transition",
                    item,
                )

        def check_state(state: State, item: Optional[Tuple]) -> None:
            if state not in v.states:
                issue(IssueKind.UNKNOWN_STATE, f"state {state!r} not declared", item)

        if not v.initials:
            issue(IssueKind.NO_INITIAL_STATE, "no initial state")
        for state in canonical_sorted(v.initials | v.accepts):
            check_state(state, None)
        if v.bottom in v.stack_symbols:
            issue(IssueKind.BOTTOM_PUSHED, f"bottom {v.bottom} declared as a pushable symbol")

        for item in canonical_sorted(v.call_transitions):
            source, letter, target, pushed = item
            check_state(source, item)
            check_state(target, item)
            check_letter(letter, LetterKind.CALL, item)
            if pushed == v.bottom:
                issue(IssueKind.BOTTOM_PUSHED, f"call {letter!r} from {source!r} pushes {v.bottom}", item)
            elif pushed not in v.stack_symbols:
                issue(IssueKind.UNKNOWN_STACK_SYMBOL, f"pushed symbol {pushed!r} not declared", item)
        for item in canonical_sorted(v.internal_transitions):
            source, letter, target = item
            check_state(source, item)
            check_state(target, item)
            check_letter(letter, LetterKind.INTERNAL, item)
        for item in canonical_sorted(v.return_transitions):
            source, letter, popped, target = item
            check_state(source, item)
            check_state(target, item)
            check_letter(letter, LetterKind.RETURN, item)
            if popped != v.bottom and popped not in v.stack_symbols:
                issue(IssueKind.UNKNOWN_STACK_SYMBOL, f"popped symbol {popped!r} not declared", item)

        report = ValidationReport(tuple(issues))
        if not report.valid:
            logger.debug(f"Validation found {len(issues)} issue(s): {issues[0]}")
        return report

    @override
    def ensure_valid(self, v: Vpa) -> Vpa:
        report = self.validate(v)
        if not report.valid:
            raise InvalidAutomaton(report)
        return v

    def _step(self, v: Vpa, config: Configuration, letter: Letter) -> List[Configuration]:
        kind = v.alphabet.kind_of(letter)
        if kind is LetterKind.CALL:
            return [
                Configuration(target, config.stack + (pushed,))
                for target, pushed in v.calls_from(config.state, letter)
            ]
        if kind is LetterKind.INTERNAL:
            return [Configuration(target, config.stack) for target in v.internals_from(config.state, letter)]
        popped_stack = config.stack[:-1] if len(config.stack) > 1 else config.stack
        return [
            Configuration(target, popped_stack)
            for target in v.returns_from(config.state, letter, config.top)
        ]

    def _initial_configs(self, v: Vpa) -> List[Configuration]:
        return [Configuration(q, (v.bottom,)) for q in canonical_sorted(v.initials)]

    @override
    def run(self, v: Vpa, word: Sequence[Letter], with_trace: bool = False) -> RunResult:
        word = v.alphabet.check_word(word)
        layer: Dict[Configuration, Optional[Configuration]] = {c: None for c in self._initial_configs(v)}
        history = [layer]
        for letter in word:
            following: Dict[Configuration, Optional[Configuration]] = {}
            for config in layer:
                for successor in self._step(v, config, letter):
                    following.setdefault(successor, config)
            layer = following
            history.append(layer)
            if not layer:
                break

        finals = frozenset(layer)
        accepting = sorted(
            (c for c in finals if c.state in v.accepts),
            key=lambda c: canonical_key((c.state, c.stack)),
        )
        trace = None
        if with_trace and accepting:
            path = [accepting[0]]
            for index in range(len(history) - 1, 0, -1):
                path.append(history[index][path[-1]])
            trace = tuple(reversed(path))
        return RunResult(accepted=bool(accepting), final_configs=finals, trace=trace)

    @override
    def accepts(self, v: Vpa, word: Sequence[Letter]) -> bool:
        return self.run(v, word).accepted

    @override
    def accepted_words(self, v: Vpa, max_length: int) -> List[Word]:
        """All accepted words of length ≤ max_length, shortest first then lexicographic.

        Prefixes sharing a configuration set are expanded together, and a
        prefix whose configuration set is empty is never extended.
        """
        found: List[Word] = []
        letters = v.alphabet.letters

        def visit(prefix: Word, configs: frozenset) -> None:
            if any(c.state in v.accepts for c in configs):
                found.append(prefix)
            if len(prefix) == max_length:
                return
            for letter in letters:
                successors = frozenset(s for c in configs for s in self._step(v, c, letter))
                if successors:
                    visit(prefix + (letter,), successors)

        visit((), frozenset(self._initial_configs(v)))
        found.sort(key=v.alphabet.word_key)
        logger.debug(f"Enumerated {len(found)} accepted words up to length {max_length}")
        return found

    @override
    def is_deterministic(self, v: Vpa) -> bool:
        if len(v.initials) != 1:
            return False
        return (
            all(len(targets) <= 1 for targets in v.call_map.values())
            and all(len(targets) <= 1 for targets in v.internal_map.values())
            and all(len(targets) <= 1 for targets in v.return_map.values())
        )

    @override
    def is_complete(self, v: Vpa) -> bool:
        alphabet = v.alphabet
        symbols = list(v.stack_symbols) + [v.bottom]
        for state in v.states:
            if any(not v.calls_from(state, c) for c in alphabet.calls):
                return False
            if any(not v.internals_from(state, i) for i in alphabet.internals):
                return False
            if any(not v.returns_from(state, r, g) for r in alphabet.returns for g in symbols):
                return False
        return bool(v.initials)

    @override
    def complete(self, v: Vpa) -> Vpa:
        """Add a rejecting sink so every (state, letter, top) has a successor."""
        if self.is_complete(v):
            return v
        sink = "sink"
        while sink in v.states:
            sink += "'"
        symbols = set(v.stack_symbols)
        filler = v.ordered_stack_symbols[0] if symbols else "#"
        symbols.add(filler)
        states = set(v.states) | {sink}
        calls = set(v.call_transitions)
        internals = set(v.internal_transitions)
        returns = set(v.return_transitions)
        for state in states:
            for c in v.alphabet.calls:
                if state == sink or not v.calls_from(state, c):
                    calls.add((state, c, sink, filler))
            for i in v.alphabet.internals:
                if state == sink or not v.internals_from(state, i):
                    internals.add((state, i, sink))
            for r in v.alphabet.returns:
                for g in list(symbols) + [v.bottom]:
                    if state == sink or not v.returns_from(state, r, g):
                        returns.add((state, r, g, sink))
        logger.debug(f"Completed automaton with sink {sink!r}")
        return Vpa(
            alphabet=v.alphabet,
            states=frozenset(states),
            initials=v.initials or frozenset([sink]),
            accepts=v.accepts,
            stack_symbols=frozenset(symbols),
            call_transitions=frozenset(calls),
            internal_transitions=frozenset(internals),
            return_transitions=frozenset(returns),
            bottom=v.bottom,
        )

    @override
    def determinize(self, v: Vpa) -> Vpa:
        """Summary-pair subset construction.

        A state (S, R, top) holds the pairs (p, q) such that q is reachable
        from p over the well-matched segment read since the last pending call,
        the set R of currently reachable states, and whether the stack is
        empty. S is irrelevant at the top level and is kept empty there. A
        call pushes (S, R, letter, top) and restarts S at the identity.
        """
        if self.is_deterministic(v):
            logger.info("Automaton already deterministic; completing only")
            return self.complete(v)

        identity = frozenset((q, q) for q in v.states)
        empty: frozenset = frozenset()

        def compose_internal(pairs: frozenset, step: Callable[[State], Iterable[State]]) -> frozenset:
            return frozenset((p, t) for p, q in pairs for t in step(q))

        def call_step(state, letter):
            pairs, reach, top = state
            targets = frozenset(t for q in reach for t, _ in v.calls_from(q, letter))
            return [((identity, targets, False), (pairs, reach, letter, top))]

        def internal_step(state, letter):
            pairs, reach, top = state
            step = lambda q: v.internals_from(q, letter)
            reached = frozenset(t for q in reach for t in step(q))
            return [(empty if top else compose_internal(pairs, step), reached, top)]

        def return_step(state, letter, symbol):
            pairs, reach, top = state
            if symbol == v.bottom:
                step = lambda q: v.returns_from(q, letter, v.bottom)
                reached = frozenset(t for q in reach for t in step(q))
                return [(empty if top else compose_internal(pairs, step), reached, top)]
            prev_pairs, prev_reach, call, prev_top = symbol
            inner: Dict[State, List[State]] = defaultdict(list)
            for p, q in pairs:
                inner[p].append(q)

            def through_call(q1: State) -> Iterable[State]:
                for q2, gamma in v.calls_from(q1, call):
                    for q3 in inner.get(q2, ()):
                        yield from v.returns_from(q3, letter, gamma)

            reached = frozenset(t for q1 in prev_reach for t in through_call(q1))
            if prev_top:
                return [(empty, reached, True)]
            return [(compose_internal(prev_pairs, through_call), reached, False)]

        result = build_reachable(
            v.alphabet,
            [(empty, frozenset(v.initials), True)],
            lambda state: bool(state[1] & v.accepts),
            call_step,
            internal_step,
            return_step,
            bottom=v.bottom,
        )
        logger.info(f"Determinized {v!r} into {result!r}")
        return result

    def _summaries(self, v: Vpa) -> Dict[Tuple[State, State], Word]:
        """Shortest, then least, well-matched word leading from p to q, for every reachable pair."""
        key = v.alphabet.word_key
        best: Dict[Tuple[State, State], Word] = {}
        heap: List = []
        counter = itertools.count()

        def offer(pair: Tuple[State, State], word: Word) -> None:
            if pair not in best:
                heapq.heappush(heap, (key(word), next(counter), pair, word))

        call_into: Dict[State, List[Tuple[State, Letter, StackSymbol]]] = defaultdict(list)
        for source, letter, target, pushed in canonical_sorted(v.call_transitions):
            call_into[target].append((source, letter, pushed))
        return_out: Dict[Tuple[State, StackSymbol], List[Tuple[Letter, State]]] = defaultdict(list)
        for source, letter, popped, target in canonical_sorted(v.return_transitions):
            if popped != v.bottom:
                return_out[(source, popped)].append((letter, target))
        internal_out: Dict[State, List[Tuple[Letter, State]]] = defaultdict(list)
        for source, letter, target in canonical_sorted(v.internal_transitions):
            internal_out[source].append((letter, target))
        call_out: Dict[State, List[Tuple[Letter, State, StackSymbol]]] = defaultdict(list)
        for source, letter, target, pushed in canonical_sorted(v.call_transitions):
            call_out[source].append((letter, target, pushed))
        out_from: Dict[State, List[Tuple[State, Word]]] = defaultdict(list)
        into: Dict[State, List[Tuple[State, Word]]] = defaultdict(list)

        for state in v.ordered_states:
            offer((state, state), ())

        while heap:
            _, _, pair, word = heapq.heappop(heap)
            if pair in best:
                continue
            best[pair] = word
            start, end = pair
            out_from[start].append((end, word))
            into[end].append((start, word))
            # As a left part: extend by an internal, or by call · summary · return.
            for letter, target in internal_out[end]:
                offer((start, target), word + (letter,))
            for letter, middle_start, gamma in call_out[end]:
                for middle_end, middle in list(out_from[middle_start]):
                    for ret, target in return_out.get((middle_end, gamma), ()):
                        offer((start, target), word + (letter,) + middle + (ret,))
            # As the middle part of call · summary · return.
            for caller, letter, gamma in call_into.get(start, ()):
                for ret, target in return_out.get((end, gamma), ()):
                    for origin, prefix in list(into[caller]):
                        offer((origin, target), prefix + (letter,) + word + (ret,))
        return best

    @override
    def is_empty(self, v: Vpa) -> EmptinessVerdict:
        """Exact emptiness with a shortest, then lexicographically least, witness.

        Accepted words factor as well-matched segments separated by returns
        on ⊥ and then by calls that stay pending; the search runs over
        (state, phase) where phase 1 means some call is pending.
        """
        if not v.accepts or not v.initials:
            return EmptinessVerdict(empty=True)
        key = v.alphabet.word_key
        summaries = self._summaries(v)
        by_start: Dict[State, List[Tuple[State, Word]]] = defaultdict(list)
        for (start, end), word in summaries.items():
            by_start[start].append((end, word))

        bottom_returns: Dict[State, List[Tuple[Letter, State]]] = defaultdict(list)
        for source, letter, popped, target in canonical_sorted(v.return_transitions):
            if popped == v.bottom:
                bottom_returns[source].append((letter, target))
        pending_calls: Dict[State, List[Tuple[Letter, State]]] = defaultdict(list)
        for source, letter, target, _ in canonical_sorted(v.call_transitions):
            pending_calls[source].append((letter, target))

        heap: List = []
        counter = itertools.count()
        settled: Set[Tuple[State, int]] = set()
        for state in v.ordered_states:
            if state in v.initials:
                heapq.heappush(heap, (key(()), next(counter), (state, 0), ()))
        while heap:
            _, _, node, word = heapq.heappop(heap)
            if node in settled:
                continue
            settled.add(node)
            state, phase = node
            if state in v.accepts:
                logger.info(f"Language nonempty, witness {format_word(word)}")
                return EmptinessVerdict(empty=False, witness=word)
            moves: List[Tuple[Tuple[State, int], Word]] = []
            for end, summary in by_start[state]:
                if summary:
                    moves.append(((end, phase), word + summary))
            if phase == 0:
                for letter, target in bottom_returns[state]:
                    moves.append(((target, 0), word + (letter,)))
            for letter, target in pending_calls[state]:
                moves.append(((target, 1), word + (letter,)))
            for successor, extended in moves:
                if successor not in settled:
                    heapq.heappush(heap, (key(extended), next(counter), successor, extended))
        logger.info("Language empty")
        return EmptinessVerdict(empty=True)

    @override
    def track_stack_top(self, v: Vpa, k: int) -> Vpa:
        """Language-equal automaton whose states are (q, t), t the top-k stack symbols.

        t lists symbols from the top down and ends with ⊥ when the stack is
        shallower than k. Pushed symbols are (γ, t) so a return can restore
        the previous t.
        """
        if k < 0:
            raise ValueError("depth must be non-negative")
        start_top: Tuple = (v.bottom,)[:k]

        def call_step(state, letter):
            q, top = state
            return [((target, ((gamma,) + top)[:k]), (gamma, top)) for target, gamma in v.calls_from(q, letter)]

        def internal_step(state, letter):
            q, top = state
            return [(target, top) for target in v.internals_from(q, letter)]

        def return_step(state, letter, symbol):
            q, top = state
            if symbol == v.bottom:
                if top != start_top:
                    return []
                return [(target, top) for target in v.returns_from(q, letter, v.bottom)]
            gamma, previous = symbol
            if top != ((gamma,) + previous)[:k]:
                return []
            return [(target, previous) for target in v.returns_from(q, letter, gamma)]

        result = build_reachable(
            v.alphabet,
            [(q, start_top) for q in canonical_sorted(v.initials)],
            lambda state: state[0] in v.accepts,
            call_step,
            internal_step,
            return_step,
            bottom=v.bottom,
        )
        logger.info(f"Tracked top {k} stack symbols: {result!r}")
        return result

    @override
    def normalize(self, v: Vpa, state_prefix: str = "q", symbol_prefix: str = "s") -> Vpa:
        """Rename states and stack symbols to short strings in breadth-first order."""
        order: List[State] = []
        seen: Set[State] = set()
        queue = deque(canonical_sorted(v.initials))
        seen.update(queue)
        successors: Dict[State, List[State]] = defaultdict(list)
        for source, _, target, _ in canonical_sorted(v.call_transitions):
            successors[source].append(target)
        for source, _, target in canonical_sorted(v.internal_transitions):
            successors[source].append(target)
        for source, _, _, target in canonical_sorted(v.return_transitions):
            successors[source].append(target)
        while queue:
            state = queue.popleft()
            order.append(state)
            for target in successors[state]:
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
        order.extend(q for q in v.ordered_states if q not in seen)
        state_names = {q: f"{state_prefix}{i}" for i, q in enumerate(order)}
        symbol_names = {g: f"{symbol_prefix}{i}" for i, g in enumerate(v.ordered_stack_symbols)}
        symbol_names[v.bottom] = v.bottom
        return Vpa(
            alphabet=v.alphabet,
            states=frozenset(state_names.values()),
            initials=frozenset(state_names[q] for q in v.initials),
            accepts=frozenset(state_names[q] for q in v.accepts),
            stack_symbols=frozenset(symbol_names[g] for g in v.stack_symbols),
            call_transitions=frozenset(
                (state_names[s], a, state_names[t], symbol_names[g]) for s, a, t, g in v.call_transitions
            ),
            internal_transitions=frozenset(
                (state_names[s], a, state_names[t]) for s, a, t in v.internal_transitions
            ),
            return_transitions=frozenset(
                (state_names[s], a, symbol_names[g], state_names[t]) for s, a, g, t in v.return_transitions
            ),
            bottom=v.bottom,
        )

"""Closure algebra over a fixed partition, and language comparison.

Binary operations insist on literally the same partition on both inputs;
mixing partitions is exactly where closure breaks down.
"""

import logging
from typing import Iterable, List, Sequence, Tuple

from typing_extensions import override

from ..domain.alphabet import Letter, Word
from ..domain.automata import EquivalenceVerdict, Renaming, StackSymbol, State, Vpa
from ..domain.enums import LetterKind, QuotientSide
from ..domain.errors import PartitionMismatch, PartitionViolation, UnknownLetter
from ..domain.ordering import canonical_sorted
from ..interfaces.service import IClosureService, IVpaEngine
from .vpa_engine import build_reachable

logger = logging.getLogger(__name__)

_START = ("start",)


def _require_same_partition(v1: Vpa, v2: Vpa) -> None:
    if not v1.alphabet.same_partition(v2.alphabet):
        raise PartitionMismatch(v1.alphabet, v2.alphabet)


class ClosureService(IClosureService):
    """Boolean operations, concatenation, star, renaming and finite quotients."""

    def __init__(self, engine: IVpaEngine):
        """Initialize closure service.

        Args:
            engine: Engine used for determinization, tracking and emptiness.
        """
        self._engine = engine

    @override
    def union(self, v1: Vpa, v2: Vpa) -> Vpa:
        _require_same_partition(v1, v2)

        def tag(side: int, v: Vpa) -> Tuple[set, set, set]:
            def symbol(g: StackSymbol) -> StackSymbol:
                return g if g == v.bottom else (side, g)

            calls = {((side, s), a, (side, t), (side, g)) for s, a, t, g in v.call_transitions}
            internals = {((side, s), a, (side, t)) for s, a, t in v.internal_transitions}
            returns = {((side, s), a, symbol(g), (side, t)) for s, a, g, t in v.return_transitions}
            return calls, internals, returns

        c1, i1, r1 = tag(1, v1)
        c2, i2, r2 = tag(2, v2)
        result = Vpa(
            alphabet=v1.alphabet,
            states=frozenset({(1, q) for q in v1.states} | {(2, q) for q in v2.states}),
            initials=frozenset({(1, q) for q in v1.initials} | {(2, q) for q in v2.initials}),
            accepts=frozenset({(1, q) for q in v1.accepts} | {(2, q) for q in v2.accepts}),
            stack_symbols=frozenset({(1, g) for g in v1.stack_symbols} | {(2, g) for g in v2.stack_symbols}),
            call_transitions=frozenset(c1 | c2),
            internal_transitions=frozenset(i1 | i2),
            return_transitions=frozenset(r1 | r2),
            bottom=v1.bottom,
        )
        logger.info(f"Union built: {result!r}")
        return result

    @override
    def intersection(self, v1: Vpa, v2: Vpa) -> Vpa:
        """Synchronized product; stack symbols are pairs and ⊥ is shared."""
        _require_same_partition(v1, v2)
        bottom = v1.bottom

        def call_step(state, letter):
            p, q = state
            return [
                ((t1, t2), (g1, g2))
                for t1, g1 in v1.calls_from(p, letter)
                for t2, g2 in v2.calls_from(q, letter)
            ]

        def internal_step(state, letter):
            p, q = state
            return [(t1, t2) for t1 in v1.internals_from(p, letter) for t2 in v2.internals_from(q, letter)]

        def return_step(state, letter, symbol):
            p, q = state
            g1, g2 = (v1.bottom, v2.bottom) if symbol == bottom else symbol
            return [
                (t1, t2)
                for t1 in v1.returns_from(p, letter, g1)
                for t2 in v2.returns_from(q, letter, g2)
            ]

        result = build_reachable(
            v1.alphabet,
            [(p, q) for p in canonical_sorted(v1.initials) for q in canonical_sorted(v2.initials)],
            lambda state: state[0] in v1.accepts and state[1] in v2.accepts,
            call_step,
            internal_step,
            return_step,
            bottom=bottom,
        )
        logger.info(f"Intersection built: {result!r}")
        return result

    @override
    def complement(self, v: Vpa) -> Vpa:
        """Flip acceptance on a complete deterministic equivalent."""
        total = self._engine.determinize(v)
        result = Vpa(
            alphabet=total.alphabet,
            states=total.states,
            initials=total.initials,
            accepts=total.states - total.accepts,
            stack_symbols=total.stack_symbols,
            call_transitions=total.call_transitions,
            internal_transitions=total.internal_transitions,
            return_transitions=total.return_transitions,
            bottom=total.bottom,
        )
        logger.info(f"Complement built: {result!r}")
        return result

    @override
    def concat(self, v1: Vpa, v2: Vpa) -> Vpa:
        """L(v1)·L(v2) without ε-moves.

        Stack symbols carry the phase that pushed them. In phase 2 the second
        automaton sees a phase-1 symbol as ⊥, so its pending-call symbols can
        be answered by returns of the second factor. Every accepting state of
        v1 also carries the outgoing moves of v2's initial states.
        """
        _require_same_partition(v1, v2)
        alphabet = v1.alphabet
        bottom = v1.bottom
        first_symbols = [(1, g) for g in v1.ordered_stack_symbols]
        seam_tops = [bottom] + first_symbols

        calls, internals, returns = set(), set(), set()
        for s, a, t, g in v1.call_transitions:
            calls.add(((1, s), a, (1, t), (1, g)))
        for s, a, t in v1.internal_transitions:
            internals.add(((1, s), a, (1, t)))
        for s, a, g, t in v1.return_transitions:
            returns.add(((1, s), a, g if g == v1.bottom else (1, g), (1, t)))

        def second_moves(source: State, from_state: State) -> None:
            # Moves of v2 from `from_state` while v2's own stack region is empty.
            for c in alphabet.calls:
                for t, g in v2.calls_from(from_state, c):
                    calls.add((source, c, (2, t), (2, g)))
            for i in alphabet.internals:
                for t in v2.internals_from(from_state, i):
                    internals.add((source, i, (2, t)))
            for r in alphabet.returns:
                for t in v2.returns_from(from_state, r, v2.bottom):
                    for top in seam_tops:
                        returns.add((source, r, top, (2, t)))

        for s, a, t, g in v2.call_transitions:
            calls.add(((2, s), a, (2, t), (2, g)))
        for s, a, t in v2.internal_transitions:
            internals.add(((2, s), a, (2, t)))
        for s, a, g, t in v2.return_transitions:
            if g == v2.bottom:
                for top in seam_tops:
                    returns.add(((2, s), a, top, (2, t)))
            else:
                returns.add(((2, s), a, (2, g), (2, t)))
        for q in canonical_sorted(v1.accepts):
            for i in canonical_sorted(v2.initials):
                second_moves((1, q), i)

        epsilon_in_second = bool(v2.initials & v2.accepts)
        accepts = {(2, q) for q in v2.accepts}
        if epsilon_in_second:
            accepts |= {(1, q) for q in v1.accepts}
        result = Vpa(
            alphabet=alphabet,
            states=frozenset({(1, q) for q in v1.states} | {(2, q) for q in v2.states}),
            initials=frozenset((1, q) for q in v1.initials),
            accepts=frozenset(accepts),
            stack_symbols=frozenset(first_symbols + [(2, g) for g in v2.stack_symbols]),
            call_transitions=frozenset(calls),
            internal_transitions=frozenset(internals),
            return_transitions=frozenset(returns),
            bottom=bottom,
        )
        logger.info(f"Concatenation built: {result!r}")
        return result

    @override
    def star(self, v: Vpa) -> Vpa:
        """L(v)* without ε-moves.

        States are (q, e) with e true while the current iteration has nothing
        of its own on the stack; then a return reads ⊥ in v's view and pops
        whatever earlier iterations left. Pushed symbols remember e.
        """
        bottom = v.bottom
        initials = canonical_sorted(v.initials)

        def restarts(state) -> bool:
            return state == _START or state[0] in v.accepts

        def call_step(state, letter):
            moves = []
            if state != _START:
                q, empty = state
                moves += [((t, False), (g, empty)) for t, g in v.calls_from(q, letter)]
            if restarts(state):
                moves += [((t, False), (g, True)) for i in initials for t, g in v.calls_from(i, letter)]
            return moves

        def internal_step(state, letter):
            moves = []
            if state != _START:
                q, empty = state
                moves += [(t, empty) for t in v.internals_from(q, letter)]
            if restarts(state):
                moves += [(t, True) for i in initials for t in v.internals_from(i, letter)]
            return moves

        def return_step(state, letter, symbol):
            moves = []
            if state != _START:
                q, empty = state
                if empty:
                    moves += [(t, True) for t in v.returns_from(q, letter, bottom)]
                elif symbol != bottom:
                    gamma, was_empty = symbol
                    moves += [(t, was_empty) for t in v.returns_from(q, letter, gamma)]
            if restarts(state):
                moves += [(t, True) for i in initials for t in v.returns_from(i, letter, bottom)]
            return moves

        result = build_reachable(
            v.alphabet,
            [_START],
            lambda state: state == _START or state[0] in v.accepts,
            call_step,
            internal_step,
            return_step,
            bottom=bottom,
        )
        logger.info(f"Star built: {result!r}")
        return result

    @override
    def rename(self, v: Vpa, renaming: Renaming) -> Vpa:
        """Letter-wise image; every letter must map into the same part of the target."""
        if not renaming.source.same_partition(v.alphabet):
            raise PartitionMismatch(renaming.source, v.alphabet)
        for letter in v.alphabet.letters:
            if letter not in renaming.mapping:
                raise PartitionViolation(f"renaming is not defined on {letter!r}")
            image = renaming.mapping[letter]
            if image not in renaming.target:
                raise UnknownLetter(image)
            if renaming.target.kind_of(image) is not v.alphabet.kind_of(letter):
                raise PartitionViolation(
                    f"{v.alphabet.kind_of(letter).value} {letter!r} mapped to "
                    f"{renaming.target.kind_of(image).value} {image!r}"
                )
        f = renaming.mapping
        result = Vpa(
            alphabet=renaming.target,
            states=v.states,
            initials=v.initials,
            accepts=v.accepts,
            stack_symbols=v.stack_symbols,
            call_transitions=frozenset((s, f[a], t, g) for s, a, t, g in v.call_transitions),
            internal_transitions=frozenset((s, f[a], t) for s, a, t in v.internal_transitions),
            return_transitions=frozenset((s, f[a], g, t) for s, a, g, t in v.return_transitions),
            bottom=v.bottom,
        )
        logger.info(f"Renamed by {renaming}")
        return result

    def _accepts_from_top(self, v: Vpa, state: State, top: Tuple, word: Word) -> bool:
        """Whether `word` is accepted from a configuration known only by its top symbols.

        `top` lists stack symbols from the top down and ends with ⊥ when it
        reaches the bottom. A word never pops more symbols than its length,
        so len(top) ≥ len(word) suffices.
        """
        has_bottom = bool(top) and top[-1] == v.bottom
        known = list(reversed(top[:-1] if has_bottom else top))
        configs = [(state, tuple(known))]
        for letter in word:
            kind = v.alphabet.kind_of(letter)
            following = []
            for q, stack in configs:
                if kind is LetterKind.CALL:
                    following += [(t, stack + (g,)) for t, g in v.calls_from(q, letter)]
                elif kind is LetterKind.INTERNAL:
                    following += [(t, stack) for t in v.internals_from(q, letter)]
                elif stack:
                    following += [(t, stack[:-1]) for t in v.returns_from(q, letter, stack[-1])]
                elif has_bottom:
                    following += [(t, stack) for t in v.returns_from(q, letter, v.bottom)]
            configs = following
            if not configs:
                return False
        return any(q in v.accepts for q, _ in configs)

    @override
    def quotient_finite(self, v: Vpa, words: Iterable[Sequence[Letter]], side: QuotientSide) -> Vpa:
        language = sorted({v.alphabet.check_word(w) for w in words}, key=v.alphabet.word_key)
        if side is QuotientSide.RIGHT:
            result = self._right_quotient(v, language)
        else:
            result = self._left_quotient(v, language)
        logger.info(f"{side.value.capitalize()} quotient by {len(language)} word(s): {result!r}")
        return result

    def _right_quotient(self, v: Vpa, language: List[Word]) -> Vpa:
        depth = max((len(w) for w in language), default=0)
        tracked = self._engine.track_stack_top(v, depth)
        accepts = frozenset(
            state
            for state in tracked.states
            if any(self._accepts_from_top(v, state[0], state[1], w) for w in language)
        )
        return Vpa(
            alphabet=tracked.alphabet,
            states=tracked.states,
            initials=tracked.initials,
            accepts=accepts,
            stack_symbols=tracked.stack_symbols,
            call_transitions=tracked.call_transitions,
            internal_transitions=tracked.internal_transitions,
            return_transitions=tracked.return_transitions,
            bottom=tracked.bottom,
        )

    def _left_quotient(self, v: Vpa, language: List[Word]) -> Vpa:
        """States (q, pending) where `pending` holds what the prefix left on the stack.

        The suffix starts on an empty stack; when it reads ⊥ it is really
        reading the prefix's pending symbols, top first.
        """
        bottom = v.bottom
        starts = set()
        for word in language:
            for config in self._engine.run(v, word).final_configs:
                starts.add((config.state, config.stack[1:]))

        def call_step(state, letter):
            q, pending = state
            return [((t, pending), g) for t, g in v.calls_from(q, letter)]

        def internal_step(state, letter):
            q, pending = state
            return [(t, pending) for t in v.internals_from(q, letter)]

        def return_step(state, letter, symbol):
            q, pending = state
            if symbol != bottom:
                return [(t, pending) for t in v.returns_from(q, letter, symbol)]
            if pending:
                return [(t, pending[:-1]) for t in v.returns_from(q, letter, pending[-1])]
            return [(t, pending) for t in v.returns_from(q, letter, bottom)]

        if not starts:
            return Vpa(
                alphabet=v.alphabet,
                states=frozenset([_START]),
                initials=frozenset([_START]),
                accepts=frozenset(),
                stack_symbols=frozenset(),
                bottom=bottom,
            )
        return build_reachable(
            v.alphabet,
            canonical_sorted(starts),
            lambda state: state[0] in v.accepts,
            call_step,
            internal_step,
            return_step,
            bottom=bottom,
        )

    @override
    def equivalent(self, v1: Vpa, v2: Vpa) -> EquivalenceVerdict:
        _require_same_partition(v1, v2)
        key = v1.alphabet.word_key
        candidates: List[Tuple[Tuple, Word, bool]] = []
        for left, right, in_first in ((v1, v2, True), (v2, v1, False)):
            verdict = self._engine.is_empty(self.intersection(left, self.complement(right)))
            if not verdict.empty:
                candidates.append((key(verdict.witness), verdict.witness, in_first))
        if not candidates:
            logger.info("Languages are equivalent")
            return EquivalenceVerdict(equivalent=True)
        _, witness, in_first = min(candidates)
        logger.info(f"Languages differ on {' '.join(witness) or 'ε'}")
        return EquivalenceVerdict(equivalent=False, counterexample=witness, in_first=in_first)

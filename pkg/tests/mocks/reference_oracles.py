"""Slow, obviously-correct references the services are checked against."""

import functools
import itertools
from typing import Callable, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from src.config.settings import settings
from src.domain.alphabet import GroupAlphabet, Letter, PartitionedAlphabet, Word
from src.domain.automata import Vpa
from src.domain.enums import LetterKind
from src.domain.groups import CayleyTable


def all_words(letters: Sequence[Letter], max_length: int) -> Iterator[Word]:
    for length in range(max_length + 1):
        yield from itertools.product(letters, repeat=length)


def naive_reduce(alphabet: GroupAlphabet, word: Sequence[Letter]) -> Word:
    """Delete the leftmost cancelling pair and rescan from the start, until none is left."""
    current = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(current) - 1):
            if alphabet.inverse[current[i]] == current[i + 1]:
                del current[i:i + 2]
                changed = True
                break
    return tuple(current)


def simulate(v: Vpa, word: Sequence[Letter]) -> bool:
    """Depth-first run over explicit stacks; ⊥ is implicit and never popped."""

    def go(state, stack: Tuple, rest: Tuple) -> bool:
        if not rest:
            return state in v.accepts
        letter, tail = rest[0], rest[1:]
        kind = v.alphabet.kind_of(letter)
        if kind is LetterKind.CALL:
            return any(
                go(target, stack + (pushed,), tail)
                for s, a, target, pushed in v.call_transitions
                if s == state and a == letter
            )
        if kind is LetterKind.INTERNAL:
            return any(
                go(target, stack, tail)
                for s, a, target in v.internal_transitions
                if s == state and a == letter
            )
        top = stack[-1] if stack else v.bottom
        popped = stack[:-1]
        return any(
            go(target, popped, tail)
            for s, a, symbol, target in v.return_transitions
            if s == state and a == letter and symbol == top
        )

    return any(go(q, (), tuple(word)) for q in v.initials)


def language(v: Vpa, max_length: int) -> Set[Word]:
    """Accepted words of length ≤ max_length, walking the prefix tree over explicit configurations."""
    calls: dict = {}
    internals: dict = {}
    returns: dict = {}
    for s, a, target, pushed in v.call_transitions:
        calls.setdefault((s, a), []).append((target, pushed))
    for s, a, target in v.internal_transitions:
        internals.setdefault((s, a), []).append(target)
    for s, a, symbol, target in v.return_transitions:
        returns.setdefault((s, a, symbol), []).append(target)

    def step(configs, letter):
        kind = v.alphabet.kind_of(letter)
        following = set()
        for state, stack in configs:
            if kind is LetterKind.CALL:
                following.update((t, stack + (g,)) for t, g in calls.get((state, letter), ()))
            elif kind is LetterKind.INTERNAL:
                following.update((t, stack) for t in internals.get((state, letter), ()))
            else:
                top = stack[-1] if stack else v.bottom
                following.update((t, stack[:-1]) for t in returns.get((state, letter, top), ()))
        return following

    found: Set[Word] = set()
    pending = [((), {(q, ()) for q in v.initials})]
    while pending:
        prefix, configs = pending.pop()
        if any(state in v.accepts for state, _ in configs):
            found.add(prefix)
        if len(prefix) < max_length:
            for letter in v.alphabet.letters:
                following = step(configs, letter)
                if following:
                    pending.append((prefix + (letter,), following))
    return found


def cayley_evaluate(table: CayleyTable, word: Sequence[Letter]) -> str:
    value = table.identity
    for letter in word:
        value = table.product[(value, table.generator_map[letter])]
    return value


def coset_index(
    alphabet: GroupAlphabet,
    member: Callable[[Word], bool],
    cap: Optional[int] = None,
) -> Optional[int]:
    """Index of H by breadth-first coset enumeration; None when more than `cap` cosets turn up.

    r·x joins the coset of an existing representative s iff r x s⁻¹ ∈ H.
    """
    cap = cap or settings.coset_cap
    representatives: List[Word] = [()]
    queue: List[Word] = [()]
    while queue:
        r = queue.pop(0)
        for x in alphabet.letters:
            candidate = r + (x,)
            if any(member(candidate + alphabet.inverse_word(s)) for s in representatives):
                continue
            representatives.append(candidate)
            if len(representatives) > cap:
                return None
            queue.append(candidate)
    return len(representatives)


def is_well_matched(alphabet: PartitionedAlphabet, word: Sequence[Letter]) -> bool:
    height = 0
    for letter in word:
        kind = alphabet.kind_of(letter)
        if kind is LetterKind.CALL:
            height += 1
        elif kind is LetterKind.RETURN:
            if height == 0:
                return False
            height -= 1
    return height == 0


def accepts_within(v: Vpa, max_length: int) -> bool:
    """Breadth-first search over explicit configurations for an accepted word of length ≤ max_length."""
    frontier = {(q, ()) for q in v.initials}
    seen = set(frontier)
    for step in range(max_length + 1):
        if any(state in v.accepts for state, _ in frontier):
            return True
        if step == max_length:
            break
        following = set()
        for state, stack in frontier:
            for s, _, target, pushed in v.call_transitions:
                if s == state:
                    following.add((target, stack + (pushed,)))
            for s, _, target in v.internal_transitions:
                if s == state:
                    following.add((target, stack))
            top = stack[-1] if stack else v.bottom
            for s, _, symbol, target in v.return_transitions:
                if s == state and symbol == top:
                    following.add((target, stack[:-1]))
        frontier = following - seen
        seen |= frontier
        if not frontier:
            break
    return False


def pumping_bound(v: Vpa) -> int:
    return len(v.states) ** 2 * (len(v.stack_symbols) + 1) + 1


Config = Tuple[str, Tuple]


def step_configs(v: Vpa, configs: FrozenSet[Config], letter: Letter) -> FrozenSet[Config]:
    kind = v.alphabet.kind_of(letter)
    following = set()
    for state, stack in configs:
        if kind is LetterKind.CALL:
            following.update(
                (target, stack + (pushed,))
                for s, a, target, pushed in v.call_transitions
                if s == state and a == letter
            )
        elif kind is LetterKind.INTERNAL:
            following.update(
                (target, stack) for s, a, target in v.internal_transitions if s == state and a == letter
            )
        else:
            top = stack[-1] if stack else v.bottom
            following.update(
                (target, stack[:-1])
                for s, a, symbol, target in v.return_transitions
                if s == state and a == letter and symbol == top
            )
    return frozenset(following)


def _live_states(v: Vpa) -> Set[str]:
    """States with a path to an accepting state in the transition graph, stack ignored."""
    edges = [(t[0], t[2]) for t in v.call_transitions]
    edges += [(t[0], t[2]) for t in v.internal_transitions]
    edges += [(t[0], t[3]) for t in v.return_transitions]
    live = set(v.accepts)
    changed = True
    while changed:
        changed = False
        for source, target in edges:
            if target in live and source not in live:
                live.add(source)
                changed = True
    return live


def same_language_up_to(first: Vpa, second: Vpa, max_length: int) -> bool:
    """Exhaustive agreement on every word of length ≤ max_length.

    Prefixes that reach the same pair of configuration sets behave alike on
    every suffix, so each pair is explored once per remaining length.
    """
    letters = first.alphabet.letters
    live = (_live_states(first), _live_states(second))

    @functools.lru_cache(maxsize=None)
    def agree(left: FrozenSet[Config], right: FrozenSet[Config], remaining: int) -> bool:
        if any(q in first.accepts for q, _ in left) != any(q in second.accepts for q, _ in right):
            return False
        if remaining == 0:
            return True
        if not any(q in live[0] for q, _ in left) and not any(q in live[1] for q, _ in right):
            return True
        return all(
            agree(step_configs(first, left, x), step_configs(second, right, x), remaining - 1)
            for x in letters
        )

    start = (frozenset((q, ()) for q in first.initials), frozenset((q, ()) for q in second.initials))
    return agree(*start, max_length)

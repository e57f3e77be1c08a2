"""Word problems of finite groups, recognisable sets and symmetric partitions."""

import logging
from collections import deque
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from typing_extensions import override

from ..config.settings import settings
from ..domain.alphabet import GroupAlphabet, Letter, PartitionedAlphabet, TorsionInfo, Word
from ..domain.automata import Dfa
from ..domain.enums import LetterKind, MatchSide, ViolationKind
from ..domain.errors import GroupTooLarge, NotPermutationDfa, SymmetricPartition
from ..domain.groups import CayleyTable, CosetUnion, PartitionCheck, Permutation, Violation, compose
from ..interfaces.service import IRecognisableService

logger = logging.getLogger(__name__)


class RecognisableService(IRecognisableService):
    """Finite-group word problems and the lifting constructions for non-symmetric partitions."""

    def __init__(self, group_cap: Optional[int] = None):
        self._group_cap = group_cap

    @override
    def wp_dfa_from_cayley(self, table: CayleyTable) -> Dfa:
        """States are group elements; reading a multiplies on the right by π(a)."""
        delta = {
            (g, a): table.multiply(g, table.generator_map[a])
            for g in table.elements
            for a in table.alphabet.letters
        }
        dfa = Dfa(
            letters=table.alphabet.letters,
            states=table.elements,
            start=table.identity,
            accepts=frozenset([table.identity]),
            delta=delta,
            group=table.alphabet,
        )
        logger.info(f"WP DFA with {len(table.elements)} states")
        return dfa

    def coword_dfa(self, table: CayleyTable) -> Dfa:
        """Complement of the word problem: words that do not evaluate to 1."""
        wp = self.wp_dfa_from_cayley(table)
        return Dfa(
            letters=wp.letters,
            states=wp.states,
            start=wp.start,
            accepts=frozenset(g for g in wp.states if g != table.identity),
            delta=wp.delta,
            group=wp.group,
        )

    def _letter_actions(self, dfa: Dfa, alphabet: GroupAlphabet) -> Dict[Letter, Permutation]:
        index = {state: i for i, state in enumerate(dfa.states)}
        actions: Dict[Letter, Permutation] = {}
        for letter in alphabet.letters:
            images = []
            for state in dfa.states:
                target = dfa.delta.get((state, letter))
                if target is None:
                    raise NotPermutationDfa(f"no {letter!r} transition from {state!r}")
                images.append(index[target])
            if len(set(images)) != len(images):
                raise NotPermutationDfa(f"letter {letter!r} is not a bijection on states")
            actions[letter] = tuple(images)
        identity = tuple(range(len(dfa.states)))
        for letter in alphabet.generators:
            if compose(actions[letter], actions[alphabet.inv(letter)]) != identity:
                raise NotPermutationDfa(f"{alphabet.inv(letter)!r} does not undo {letter!r}")
        return actions

    @override
    def to_coset_representation(self, dfa: Dfa, alphabet: GroupAlphabet) -> CosetUnion:
        """Finite union of cosets N·g of the kernel N of the letter action.

        The permutation group is enumerated breadth-first in letter order, so
        each representative is the shortest, then lexicographically least,
        word realising its permutation.
        """
        cap = self._group_cap or settings.group_cap
        actions = self._letter_actions(dfa, alphabet)
        identity: Permutation = tuple(range(len(dfa.states)))
        words: Dict[Permutation, Word] = {identity: ()}
        queue = deque([identity])
        while queue:
            perm = queue.popleft()
            for letter in alphabet.letters:
                image = compose(perm, actions[letter])
                if image not in words:
                    if len(words) >= cap:
                        raise GroupTooLarge(cap)
                    words[image] = words[perm] + (letter,)
                    queue.append(image)

        start = dfa.states.index(dfa.start)
        representatives = sorted(
            (word for perm, word in words.items() if dfa.states[perm[start]] in dfa.accepts),
            key=alphabet.base.word_key,
        )
        union = CosetUnion(
            normal_subgroup_index=len(words),
            permutation_group_size=len(words),
            coset_representatives=tuple(representatives),
            letters=alphabet.letters,
            actions=actions,
        )
        logger.info(f"Coset union: {len(representatives)} of {len(words)} cosets of the kernel")
        return union

    @override
    def is_symmetric_partition(
        self,
        alphabet: PartitionedAlphabet,
        torsion: TorsionInfo,
        inverse: Mapping[Letter, Letter],
    ) -> PartitionCheck:
        """Every violation, calls first, in letter order."""
        violations: List[Violation] = []
        for x in alphabet.calls:
            if torsion.is_torsion(x):
                violations.append(Violation(ViolationKind.TORSION_CALL, x, order=torsion[x]))
            partner = inverse[x]
            if alphabet.kind_of(partner) is not LetterKind.RETURN:
                violations.append(Violation(ViolationKind.CALL_INVERSE_NOT_RETURN, x, partner=partner))
        for y in alphabet.returns:
            if torsion.is_torsion(y):
                violations.append(Violation(ViolationKind.TORSION_RETURN, y, order=torsion[y]))
            partner = inverse[y]
            if alphabet.kind_of(partner) is not LetterKind.CALL:
                violations.append(Violation(ViolationKind.RETURN_INVERSE_NOT_CALL, y, partner=partner))
        check = PartitionCheck(tuple(violations))
        logger.info(f"Partition {alphabet}: {'symmetric' if check.symmetric else check.kinds()}")
        return check

    def _holds(self, alphabet: GroupAlphabet, violation: Violation) -> bool:
        kind = violation.kind
        letter = violation.letter
        if letter not in alphabet:
            return False
        letter_kind = alphabet.base.kind_of(letter)
        partner_kind = alphabet.base.kind_of(alphabet.inv(letter))
        if kind is ViolationKind.TORSION_CALL:
            return letter_kind is LetterKind.CALL and alphabet.torsion.is_torsion(letter)
        if kind is ViolationKind.TORSION_RETURN:
            return letter_kind is LetterKind.RETURN and alphabet.torsion.is_torsion(letter)
        if kind is ViolationKind.CALL_INVERSE_NOT_RETURN:
            return letter_kind is LetterKind.CALL and partner_kind is not LetterKind.RETURN
        return letter_kind is LetterKind.RETURN and partner_kind is not LetterKind.CALL

    @override
    def lift_to_matched(
        self, word: Sequence[Letter], alphabet: GroupAlphabet, side: MatchSide, violation: Violation
    ) -> Word:
        """A word with the same image as `word` lying in MR or MC.

        With n = |w|: xⁿx⁻ⁿ·w for a call x whose inverse is no return,
        w·yⁿy⁻ⁿ for a return y whose inverse is no call, and z^(k·n) on the
        matching side for a letter z of order k.
        """
        word = alphabet.base.check_word(word)
        if violation.kind.enables is not side:
            raise SymmetricPartition(f"{violation.kind.value} does not lift into {side.value.upper()}")
        if not self._holds(alphabet, violation):
            raise SymmetricPartition(f"violation does not hold on this alphabet: {violation}")
        n = len(word)
        letter = violation.letter
        if violation.kind is ViolationKind.CALL_INVERSE_NOT_RETURN:
            return alphabet.power((letter,), n) + alphabet.power((letter,), -n) + word
        if violation.kind is ViolationKind.RETURN_INVERSE_NOT_CALL:
            return word + alphabet.power((letter,), n) + alphabet.power((letter,), -n)
        padding = alphabet.power((letter,), alphabet.torsion[letter] * n)
        if violation.kind is ViolationKind.TORSION_CALL:
            return padding + word
        return word + padding

    @override
    def wp_witness_family(self, x: Letter, y: Letter, m: int, n: int, k: int) -> Tuple[Word, Word]:
        """(xy)ᵏ(yⁿ⁻¹xᵐ⁻¹)ᵏ and (yx)ᵏ(xᵐ⁻¹yⁿ⁻¹)ᵏ, trivial whenever x and y have orders m and n."""
        if m < 2 or n < 2 or k < 1:
            raise ValueError("need m, n ≥ 2 and k ≥ 1")
        first = (x, y) * k + ((y,) * (n - 1) + (x,) * (m - 1)) * k
        second = (y, x) * k + ((x,) * (m - 1) + (y,) * (n - 1)) * k
        return first, second

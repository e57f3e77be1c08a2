"""Enumerations for vpgkit."""

from enum import Enum, auto


class LetterKind(Enum):
    """Part of a visibly pushdown partition a letter belongs to."""

    CALL = "call"
    INTERNAL = "internal"
    RETURN = "return"


class CongruenceKind(Enum):
    """The three matched-word congruences.

    - EQUIV: right contexts restricted to MR words, on all of Σ*
    - SIM0: all right contexts, on MC words only
    - APPROX: two-sided contexts, on WM words only
    """

    EQUIV = "equiv"
    SIM0 = "sim0"
    APPROX = "approx"


class QuotientSide(Enum):
    """Side of a quotient by a finite language."""

    LEFT = "left"
    RIGHT = "right"


class MatchSide(Enum):
    """Matched class a lifted word is pushed into."""

    MR = "mr"
    MC = "mc"


class EquationMode(Enum):
    """Where an equation is read: free monoid or free group."""

    MONOID = "monoid"
    GROUP = "group"


class TermKind(Enum):
    """Kind of a symbol on one side of an equation."""

    CONSTANT = auto()
    VARIABLE = auto()
    VARIABLE_INVERSE = auto()


class IssueKind(Enum):
    """Problems `validate` can report on an automaton."""

    BOTTOM_PUSHED = "BottomPushed"
    VISIBILITY_BROKEN = "VisibilityBroken"
    UNKNOWN_STATE = "UnknownState"
    UNKNOWN_STACK_SYMBOL = "UnknownStackSymbol"
    UNKNOWN_LETTER = "UnknownLetter"
    NO_INITIAL_STATE = "NoInitialState"


class ViolationKind(Enum):
    """Reasons a partition fails to be symmetric."""

    TORSION_CALL = "TorsionCall"
    TORSION_RETURN = "TorsionReturn"
    CALL_INVERSE_NOT_RETURN = "CallInverseNotReturn"
    RETURN_INVERSE_NOT_CALL = "ReturnInverseNotCall"

    @property
    def enables(self) -> MatchSide:
        """Matched class this violation lets every word be lifted into."""
        if self in (ViolationKind.TORSION_CALL, ViolationKind.CALL_INVERSE_NOT_RETURN):
            return MatchSide.MR
        return MatchSide.MC


class ArtifactKind(Enum):
    """Kinds of artifacts a workspace can hold."""

    ALPHABET = "alphabet"
    VPA = "vpa"
    DFA = "dfa"
    GRAPH = "graph"
    CAYLEY = "cayley"
    COSETS = "cosets"
    EQUATION = "equation"
    ORACLE = "oracle"

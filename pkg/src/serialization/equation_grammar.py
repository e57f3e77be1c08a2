"""Text form of equation systems.

    X a b = a X b ; over @letters ; X in @anbn ; bound 4 ; mode monoid

Clauses are separated by ";" or newlines; "#" starts a comment. The first
clause holding "=" is the equation. Other clauses:

- over REF: the constants alphabet (required)
- vars X Y: the variables, in order; otherwise every token that is not a letter
- Y in REF: a constraint on Y
- bound N, mode monoid|group

A variable inverse is written "Y^-1". REF is an artifact name, optionally
prefixed by "@".
"""

from typing import Callable, Dict, List, Optional, Tuple

from ..domain.alphabet import GroupAlphabet, PartitionedAlphabet
from ..domain.enums import EquationMode, TermKind
from ..domain.equations import EquationSystem, Term, constant, variable, variable_inverse
from ..domain.errors import WordSyntaxError
from ..interfaces.oracle import ILangOracle

AlphabetResolver = Callable[[str], object]
OracleResolver = Callable[[str], ILangOracle]


def _clauses(text: str) -> List[str]:
    clauses: List[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        clauses.extend(part.strip() for part in line.split(";"))
    return [clause for clause in clauses if clause]


def _ref(token: str) -> str:
    return token[1:] if token.startswith("@") else token


def _side(tokens: List[str], alphabet: PartitionedAlphabet, variables: Optional[List[str]]) -> Tuple[Term, ...]:
    terms: List[Term] = []
    for token in tokens:
        if token == "ε":
            continue
        if token.endswith("^-1") and (variables is None or token[:-3] in variables) and token[:-3] not in alphabet:
            terms.append(variable_inverse(token[:-3]))
        elif token in alphabet and not (variables and token in variables):
            terms.append(constant(token))
        elif variables is None or token in variables:
            terms.append(variable(token))
        else:
            raise WordSyntaxError(f"{token!r} is neither a letter nor a declared variable")
    return tuple(terms)


def parse_equation(text: str, resolve_alphabet: AlphabetResolver, resolve_oracle: OracleResolver) -> EquationSystem:
    """Parse one equation system.

    Raises:
        WordSyntaxError: malformed clauses or unknown symbols.
    """
    equation: Optional[str] = None
    alphabet_ref: Optional[str] = None
    declared: Optional[List[str]] = None
    constraint_refs: Dict[str, str] = {}
    bound = 0
    mode = EquationMode.MONOID

    for clause in _clauses(text):
        words = clause.split()
        if "=" in words:
            if equation is not None:
                raise WordSyntaxError("more than one equation")
            equation = clause
        elif words[0] == "over" and len(words) == 2:
            alphabet_ref = _ref(words[1])
        elif words[0] == "vars":
            declared = words[1:]
        elif len(words) == 3 and words[1] == "in":
            constraint_refs[words[0]] = _ref(words[2])
        elif words[0] == "bound" and len(words) == 2:
            try:
                bound = int(words[1])
            except ValueError:
                raise WordSyntaxError(f"bad bound {words[1]!r}") from None
        elif words[0] == "mode" and len(words) == 2:
            try:
                mode = EquationMode(words[1])
            except ValueError:
                raise WordSyntaxError(f"unknown mode {words[1]!r}") from None
        else:
            raise WordSyntaxError(f"cannot parse clause {clause!r}")

    if equation is None:
        raise WordSyntaxError("no equation given")
    if alphabet_ref is None:
        raise WordSyntaxError("no 'over' clause naming the constants alphabet")

    resolved = resolve_alphabet(alphabet_ref)
    group = resolved if isinstance(resolved, GroupAlphabet) else None
    constants = group.base if group is not None else resolved
    if not isinstance(constants, PartitionedAlphabet):
        raise WordSyntaxError(f"{alphabet_ref!r} is not an alphabet")
    if mode is EquationMode.GROUP and group is None:
        raise WordSyntaxError("group mode needs an alphabet with inverses")

    left_text, right_text = equation.split("=", 1)
    lhs = _side(left_text.split(), constants, declared)
    rhs = _side(right_text.split(), constants, declared)
    if declared is None:
        seen: List[str] = []
        for term in lhs + rhs:
            if term.kind is not TermKind.CONSTANT and term.symbol not in seen:
                seen.append(term.symbol)
        declared = seen

    return EquationSystem(
        mode=mode,
        constants=constants,
        variables=tuple(declared),
        lhs=lhs,
        rhs=rhs,
        constraints={name: resolve_oracle(ref) for name, ref in constraint_refs.items()},
        bound=bound,
        group=group,
    )

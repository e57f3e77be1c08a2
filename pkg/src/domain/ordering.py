"""Process-independent ordering for states, stack symbols and words.

Constructions produce states that are tuples and frozensets of other states.
Iterating such sets directly depends on string hashing, which changes between
interpreter runs, so everything that feeds serialized output is sorted by
`canonical_key` first.
"""

from typing import Any, Hashable, Iterable, List, Tuple


def canonical_key(obj: Any) -> Tuple:
    """Total, hash-independent sort key for nested states."""
    if isinstance(obj, bool):
        return ("b", int(obj))
    if isinstance(obj, int):
        return ("i", obj)
    if isinstance(obj, str):
        return ("s", obj)
    if obj is None:
        return ("n",)
    if isinstance(obj, tuple):
        return ("t", tuple(canonical_key(item) for item in obj))
    if isinstance(obj, (frozenset, set)):
        return ("f", tuple(sorted(canonical_key(item) for item in obj)))
    return ("r", repr(obj))


def canonical_sorted(items: Iterable[Hashable]) -> List[Hashable]:
    """Sort arbitrary hashable states deterministically."""
    return sorted(items, key=canonical_key)

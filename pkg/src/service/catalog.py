"""Built-in automata, groups and oracles that pipelines and tests start from."""

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from ..domain.alphabet import GroupAlphabet, Letter, Word, free_group_alphabet, make_partitioned_alphabet
from ..domain.automata import Vpa
from ..domain.enums import ArtifactKind
from ..domain.errors import UnknownArtifact
from ..domain.groups import CayleyTable
from .oracles import ExponentSumOracle, RuleOracle


def padded_group_alphabet() -> GroupAlphabet:
    """F(a, b) with a a call, b a return, and both inverses internal."""
    return free_group_alphabet(["a", "b"], calls=["a"], returns=["b"])


def padded_vpa() -> Vpa:
    """{(a a a⁻¹)ⁿ b²ⁿ : n ≥ 0}.

    The first call pushes # and every later call pushes $, so the last b
    is the one that pops #.
    """
    alphabet = padded_group_alphabet().base
    return Vpa(
        alphabet=alphabet,
        states=frozenset(["p0", "p1", "p2", "p3", "p4", "p5", "p6", "p7"]),
        initials=frozenset(["p0"]),
        accepts=frozenset(["p0", "p7"]),
        stack_symbols=frozenset(["#", "$"]),
        call_transitions=frozenset([
            ("p0", "a", "p1", "#"),
            ("p1", "a", "p2", "$"),
            ("p3", "a", "p4", "$"),
            ("p4", "a", "p5", "$"),
        ]),
        internal_transitions=frozenset([
            ("p2", "A", "p3"),
            ("p5", "A", "p3"),
        ]),
        return_transitions=frozenset([
            ("p3", "b", "$", "p6"),
            ("p6", "b", "$", "p6"),
            ("p6", "b", "#", "p7"),
        ]),
    )


def _anbn_transitions(call: Letter, ret: Letter) -> Tuple[frozenset, frozenset]:
    calls = frozenset([("s0", call, "s1", "#"), ("s1", call, "s1", "$")])
    returns = frozenset([
        ("s1", ret, "$", "s2"),
        ("s1", ret, "#", "s3"),
        ("s2", ret, "$", "s2"),
        ("s2", ret, "#", "s3"),
    ])
    return calls, returns


def anbn_vpa() -> Vpa:
    """{aⁿbⁿ : n ≥ 0} with a a call and b a return."""
    calls, returns = _anbn_transitions("a", "b")
    return Vpa(
        alphabet=make_partitioned_alphabet(["a"], [], ["b"]),
        states=frozenset(["s0", "s1", "s2", "s3"]),
        initials=frozenset(["s0"]),
        accepts=frozenset(["s0", "s3"]),
        stack_symbols=frozenset(["#", "$"]),
        call_transitions=calls,
        return_transitions=returns,
    )


def anbn_bounded_vpa(limit: int = 3) -> Vpa:
    """{aⁿbⁿ : n ≤ limit}, a finite language over the same partition as anbn_vpa.

    c{d} has read d calls; r{d} still owes d returns. The call at depth d
    pushes h{d}.
    """
    call_transitions = {(f"c{d}", "a", f"c{d + 1}", f"h{d}") for d in range(limit)}
    return_transitions = {(f"c{d}", "b", f"h{d - 1}", f"r{d - 1}") for d in range(1, limit + 1)}
    return_transitions |= {(f"r{d}", "b", f"h{d - 1}", f"r{d - 1}") for d in range(1, limit)}
    states = {f"c{d}" for d in range(limit + 1)} | {f"r{d}" for d in range(limit)}
    return Vpa(
        alphabet=make_partitioned_alphabet(["a"], [], ["b"]),
        states=frozenset(states),
        initials=frozenset(["c0"]),
        accepts=frozenset(["c0", "r0"]),
        stack_symbols=frozenset(f"h{d}" for d in range(limit)),
        call_transitions=frozenset(call_transitions),
        return_transitions=frozenset(return_transitions),
    )


def anbn_cstar_vpa() -> Vpa:
    """{aⁿbⁿc*} with a a call, b a return and c internal."""
    calls, returns = _anbn_transitions("a", "b")
    return Vpa(
        alphabet=make_partitioned_alphabet(["a"], ["c"], ["b"]),
        states=frozenset(["s0", "s1", "s2", "s3", "s4"]),
        initials=frozenset(["s0"]),
        accepts=frozenset(["s0", "s3", "s4"]),
        stack_symbols=frozenset(["#", "$"]),
        call_transitions=calls,
        internal_transitions=frozenset([("s0", "c", "s4"), ("s3", "c", "s4"), ("s4", "c", "s4")]),
        return_transitions=returns,
    )


def astar_bncn_vpa() -> Vpa:
    """{a*bⁿcⁿ} with b a call, c a return and a internal."""
    calls, returns = _anbn_transitions("b", "c")
    return Vpa(
        alphabet=make_partitioned_alphabet(["b"], ["a"], ["c"]),
        states=frozenset(["s0", "s1", "s2", "s3"]),
        initials=frozenset(["s0"]),
        accepts=frozenset(["s0", "s3"]),
        stack_symbols=frozenset(["#", "$"]),
        call_transitions=calls,
        internal_transitions=frozenset([("s0", "a", "s0")]),
        return_transitions=returns,
    )


def cyclic_group(
    n: int,
    images: Optional[Mapping[Letter, int]] = None,
    calls: Iterable[Letter] = (),
    returns: Iterable[Letter] = (),
) -> CayleyTable:
    """ℤ/n with each generator sent to a residue; inverses are the uppercase letters.

    Defaults to a single generator x ↦ 1.
    """
    images = dict(images or {"x": 1})
    orders = {x: n // math.gcd(n, k % n) for x, k in images.items()}
    alphabet = free_group_alphabet(list(images), calls=calls, returns=returns, orders=orders)
    elements = tuple(str(i) for i in range(n))
    generator_map: Dict[Letter, str] = {}
    for x, k in images.items():
        generator_map[x] = str(k % n)
        generator_map[alphabet.inv(x)] = str(-k % n)
    return CayleyTable(
        elements=elements,
        identity="0",
        product={(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)},
        alphabet=alphabet,
        generator_map=generator_map,
    )


_S3_GENERATORS: Dict[Letter, Tuple[int, ...]] = {
    "s": (1, 0, 2),
    "t": (0, 2, 1),
    "r": (1, 2, 0),
}


def symmetric_group_s3(
    generators: Sequence[Letter] = ("s", "t"),
    calls: Iterable[Letter] = (),
    returns: Iterable[Letter] = (),
) -> CayleyTable:
    """S₃ on {0, 1, 2}, elements spelled by their images ("012" is the identity).

    Available generators: s = (0 1), t = (1 2), r = (0 1 2).
    """
    permutations = list(itertools.permutations(range(3)))

    def name(p: Tuple[int, ...]) -> str:
        return "".join(str(i) for i in p)

    def then(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(q[i] for i in p)

    def inverse(p: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(p.index(i) for i in range(3))

    def order(p: Tuple[int, ...]) -> int:
        k, value = 1, p
        while value != (0, 1, 2):
            value, k = then(value, p), k + 1
        return k

    unknown = [x for x in generators if x not in _S3_GENERATORS]
    if unknown:
        raise UnknownArtifact(f"no S3 generator named {unknown[0]!r}")
    orders = {x: order(_S3_GENERATORS[x]) for x in generators}
    alphabet = free_group_alphabet(list(generators), calls=calls, returns=returns, orders=orders)
    generator_map: Dict[Letter, str] = {}
    for x in generators:
        generator_map[x] = name(_S3_GENERATORS[x])
        generator_map[alphabet.inv(x)] = name(inverse(_S3_GENERATORS[x]))
    return CayleyTable(
        elements=tuple(name(p) for p in permutations),
        identity="012",
        product={(name(p), name(q)): name(then(p, q)) for p in permutations for q in permutations},
        alphabet=alphabet,
        generator_map=generator_map,
    )


def wp_z_alphabet() -> GroupAlphabet:
    """{a, a⁻¹} under the symmetric partition: a a call, a⁻¹ a return."""
    return free_group_alphabet(["a"], calls=["a"], returns=["A"])


def wp_z_oracle() -> ExponentSumOracle:
    return ExponentSumOracle(wp_z_alphabet())


def _is_anb2n(word: Word) -> bool:
    n = word.count("a")
    return word == ("a",) * n + ("b",) * (2 * n)


def anb2n_oracle() -> RuleOracle:
    """{aⁿb²ⁿ} with a a call and b internal, so that every bʲ is a right context for ≡."""
    alphabet = make_partitioned_alphabet(["a"], ["b"], [])
    return RuleOracle(alphabet, _is_anb2n, name="{a^n b^2n}")


@dataclass(frozen=True)
class CatalogEntry:
    kind: ArtifactKind
    build: Callable[[], object]
    description: str


CATALOG: Dict[str, CatalogEntry] = {
    "padded": CatalogEntry(ArtifactKind.VPA, padded_vpa, "{(a a A)^n b^2n}"),
    "padded-group": CatalogEntry(ArtifactKind.ALPHABET, padded_group_alphabet, "F(a,b), a call, b return"),
    "anbn": CatalogEntry(ArtifactKind.VPA, anbn_vpa, "{a^n b^n}"),
    "anbn-le3": CatalogEntry(ArtifactKind.VPA, anbn_bounded_vpa, "{a^n b^n : n <= 3}"),
    "anbn-cstar": CatalogEntry(ArtifactKind.VPA, anbn_cstar_vpa, "{a^n b^n c*}"),
    "astar-bncn": CatalogEntry(ArtifactKind.VPA, astar_bncn_vpa, "{a* b^n c^n}"),
    "z2": CatalogEntry(ArtifactKind.CAYLEY, lambda: cyclic_group(2), "Z/2 on x"),
    "z3": CatalogEntry(ArtifactKind.CAYLEY, lambda: cyclic_group(3), "Z/3 on x"),
    "z6": CatalogEntry(ArtifactKind.CAYLEY, lambda: cyclic_group(6, {"x": 3, "y": 2}), "Z/6 on x=3, y=2"),
    "s3": CatalogEntry(ArtifactKind.CAYLEY, symmetric_group_s3, "S3 on two transpositions"),
    "s3-mixed": CatalogEntry(
        ArtifactKind.CAYLEY, lambda: symmetric_group_s3(("s", "r")), "S3 on a transposition and a 3-cycle"
    ),
    "free2": CatalogEntry(
        ArtifactKind.ALPHABET, lambda: free_group_alphabet(["a", "b"]), "F(a,b), all internal"
    ),
    "wpz": CatalogEntry(ArtifactKind.ORACLE, wp_z_oracle, "WP(Z), a call, A return"),
    "anb2n": CatalogEntry(ArtifactKind.ORACLE, anb2n_oracle, "{a^n b^2n}, a call, b internal"),
}


def build(entry: str) -> Tuple[ArtifactKind, object]:
    try:
        item = CATALOG[entry]
    except KeyError:
        raise UnknownArtifact(f"no catalog entry {entry!r}") from None
    return item.kind, item.build()

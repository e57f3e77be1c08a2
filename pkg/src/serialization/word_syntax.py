"""Plain-text words and word-family templates.

A word is a space-separated list of letters, or a compact string of
single-character letters ("aaAbb"). A letter may carry a power, "a^3", and
a negative power inverts it, "a^-1" (the escape hatch when inverses are not
spelled as uppercase letters). "ε" and the empty string are the empty word.

Templates add "[ ... ]" groups and exponents in n, e.g. "[a a A]^{n} b^{2n}",
and stand for the words obtained for n = 0, 1, 2, ...
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..config.settings import settings
from ..domain.alphabet import GroupAlphabet, Letter, PartitionedAlphabet, Word, format_word
from ..domain.errors import UnknownLetter, WordSyntaxError

_TOKEN = re.compile(r"\[|\](?:\^\S+)?|[^\s\[\]]+")
_EXPONENT = re.compile(r"^\{?\s*(?:(-?\d*)(n))?\s*([+-]?\s*\d+)?\s*\}?$")


@dataclass(frozen=True)
class Exponent:
    """coefficient·n + constant."""

    coefficient: int = 0
    constant: int = 1

    def at(self, n: int) -> int:
        return self.coefficient * n + self.constant


@dataclass(frozen=True)
class Segment:
    word: Word
    exponent: Exponent


@dataclass(frozen=True)
class Template:
    segments: Tuple[Segment, ...]
    group: Optional[GroupAlphabet] = None

    @property
    def is_constant(self) -> bool:
        return all(segment.exponent.coefficient == 0 for segment in self.segments)

    def instantiate(self, n: int) -> Word:
        word: Word = ()
        for segment in self.segments:
            count = segment.exponent.at(n)
            if count >= 0:
                word += segment.word * count
            elif self.group is None:
                raise WordSyntaxError(f"negative power of {format_word(segment.word)} needs inverses")
            else:
                word += self.group.inverse_word(segment.word) * -count
        return word

    def expand(self, max_length: int) -> List[Word]:
        """Instances for n = 0, 1, ... whose length stays within max_length."""
        if self.is_constant:
            word = self.instantiate(0)
            return [word] if len(word) <= max_length else []
        slack = sum(abs(segment.exponent.constant) for segment in self.segments)
        words = (self.instantiate(n) for n in range(max_length + slack + 2))
        return [word for word in words if len(word) <= max_length]


def parse_exponent(text: str) -> Exponent:
    match = _EXPONENT.match(text.strip())
    if not match or text.strip() in ("", "{}"):
        raise WordSyntaxError(f"bad exponent {text!r}")
    coefficient_text, has_n, constant_text = match.groups()
    coefficient = 0
    if has_n:
        coefficient = -1 if coefficient_text == "-" else int(coefficient_text or 1)
    constant = int(constant_text.replace(" ", "")) if constant_text else 0
    return Exponent(coefficient, constant)


def _letter(token: str, alphabet: PartitionedAlphabet, group: Optional[GroupAlphabet]) -> Tuple[Word, Exponent]:
    if token in alphabet:
        return (token,), Exponent()
    suffix = settings.inverse_suffix
    if token.endswith(suffix) and group is not None:
        base = token[: -len(suffix)]
        if base in alphabet:
            return (group.inv(base),), Exponent()
    if "^" in token:
        base, exponent = token.split("^", 1)
        if base in alphabet:
            return (base,), parse_exponent(exponent)
    raise UnknownLetter(token)


def parse_template(
    text: str, alphabet: PartitionedAlphabet, group: Optional[GroupAlphabet] = None
) -> Template:
    text = text.strip()
    if text in ("", "ε"):
        return Template((), group)
    tokens = _TOKEN.findall(text)
    if (
        len(tokens) == 1
        and tokens[0] not in alphabet
        and "^" not in tokens[0]
        and all(ch in alphabet for ch in tokens[0])
    ):
        tokens = list(tokens[0])

    segments: List[Segment] = []
    group_start: Optional[int] = None
    for token in tokens:
        if token == "[":
            if group_start is not None:
                raise WordSyntaxError("nested groups are not supported")
            group_start = len(segments)
        elif token.startswith("]"):
            if group_start is None:
                raise WordSyntaxError("unbalanced ]")
            inner = segments[group_start:]
            if any(segment.exponent.coefficient for segment in inner):
                raise WordSyntaxError("exponents in n are not allowed inside a group")
            inner_word = Template(tuple(inner), group).instantiate(0)
            exponent = parse_exponent(token[2:]) if token.startswith("]^") else Exponent()
            del segments[group_start:]
            segments.append(Segment(inner_word, exponent))
            group_start = None
        else:
            word, exponent = _letter(token, alphabet, group)
            segments.append(Segment(word, exponent))
    if group_start is not None:
        raise WordSyntaxError("unbalanced [")
    return Template(tuple(segments), group)


def parse_word(text: str, alphabet: PartitionedAlphabet, group: Optional[GroupAlphabet] = None) -> Word:
    template = parse_template(text, alphabet, group)
    if not template.is_constant:
        raise WordSyntaxError(f"{text!r} is a family, not a word")
    return template.instantiate(0)


def render_word(word: Word, group: Optional[GroupAlphabet] = None) -> str:
    return format_word(tuple(letter_spelling(letter, group) for letter in word))


def letter_spelling(letter: Letter, group: Optional[GroupAlphabet] = None) -> str:
    """How a letter is written in reports under the configured inverse style."""
    if group is None or settings.inverse_style != "suffix" or letter in group.generators:
        return letter
    return group.inv(letter) + settings.inverse_suffix

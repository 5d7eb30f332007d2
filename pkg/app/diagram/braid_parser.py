"""
Braid words in the text grammar ``n: s1 S2 s1 ...``.

``s<i>`` is the positive generator sigma_i and ``S<i>`` its inverse;
strands and generators are numbered from 1, letters are read bottom to top.
"""

import re
from dataclasses import dataclass
from typing import List, Tuple

from app.utils.errors import BraidParseError

_HEADER_RE = re.compile(r"\s*(\d*)\s*:")
_TOKEN_RE = re.compile(r"\S+")
_LETTER_RE = re.compile(r"([sS])(\d+)")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for letter in self.letters:
            if letter == 0 or abs(letter) >= self.strands:
                raise ValueError(f"generator index {letter} invalid for {self.strands} strands")

    @property
    def writhe(self) -> int:
        return sum(1 if letter > 0 else -1 for letter in self.letters)

    def top_positions(self) -> Tuple[int, ...]:
        """top[p] = top position (0-based) of the strand starting at bottom position p."""
        at = list(range(self.strands))
        for letter in self.letters:
            i = abs(letter)
            at[i - 1], at[i] = at[i], at[i - 1]
        top = [0] * self.strands
        for position, strand in enumerate(at):
            top[strand] = position
        return tuple(top)

    def crossing_strands(self) -> List[Tuple[int, int, int]]:
        """(bottom position of left strand, bottom position of right strand, sign) per letter."""
        at = list(range(self.strands))
        out = []
        for letter in self.letters:
            i = abs(letter)
            out.append((at[i - 1], at[i], 1 if letter > 0 else -1))
            at[i - 1], at[i] = at[i], at[i - 1]
        return out

    def to_text(self) -> str:
        body = " ".join(f"s{l}" if l > 0 else f"S{-l}" for l in self.letters)
        return f"{self.strands}: {body}".rstrip()


def parse_braid(text: str) -> BraidWord:
    header = _HEADER_RE.match(text)
    if not header:
        raise BraidParseError("expected '<strands>:' header", 0)
    if not header.group(1):
        raise BraidParseError("empty strand count", header.start(1))
    strands = int(header.group(1))
    if strands < 1:
        raise BraidParseError("strand count must be at least 1", header.start(1))

    letters = []
    for token in _TOKEN_RE.finditer(text, header.end()):
        match = _LETTER_RE.fullmatch(token.group())
        if not match:
            raise BraidParseError(f"unknown token {token.group()!r}", token.start())
        index = int(match.group(2))
        if index < 1 or index >= strands:
            raise BraidParseError(
                f"generator index {index} out of range for {strands} strands", token.start()
            )
        letters.append(index if match.group(1) == "s" else -index)
    return BraidWord(strands, tuple(letters))


def components(braid: BraidWord) -> List[List[int]]:
    """Closure components as sorted lists of 1-based bottom positions, ordered by first position."""
    top = braid.top_positions()
    seen = set()
    result = []
    for start in range(braid.strands):
        if start in seen:
            continue
        cycle = []
        p = start
        while p not in seen:
            seen.add(p)
            cycle.append(p + 1)
            p = top[p]
        result.append(sorted(cycle))
    return result

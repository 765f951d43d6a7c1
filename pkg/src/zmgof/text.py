"""Turn raw text into canonical token sequences.

Two modes are supported:

``words``
    Maximal runs of Unicode letters, lowercased. An apostrophe (ASCII or
    U+2019, normalised to ASCII) stays inside a token only when it has a
    letter on both sides. Digits, hyphens and everything else separate
    tokens, unless ``keep_hyphens`` is set, in which case a hyphen between
    two letters is kept too.

``han_chars``
    Every CJK unified ideograph is its own token; everything else is
    dropped.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Literal

__all__ = [
    "NoContentError",
    "TokenSequence",
    "tokenize",
    "read_text",
]

Mode = Literal["words", "han_chars"]

_LETTER = r"[^\W\d_]"
_WORD_RE = re.compile(rf"{_LETTER}+(?:['’]{_LETTER}+)*")
_WORD_HYPHEN_RE = re.compile(rf"{_LETTER}+(?:['’\-]{_LETTER}+)*")

# CJK Unified Ideographs and extensions A-H
_HAN_RANGES = (
    (0x4E00, 0x9FFF),
    (0x3400, 0x4DBF),
    (0x20000, 0x2A6DF),
    (0x2A700, 0x2B73F),
    (0x2B740, 0x2B81F),
    (0x2B820, 0x2CEAF),
    (0x2CEB0, 0x2EBEF),
    (0x30000, 0x3134F),
    (0x31350, 0x323AF),
)
_HAN_RE = re.compile(
    "[" + "".join(f"{chr(lo)}-{chr(hi)}" for lo, hi in _HAN_RANGES) + "]"
)


class NoContentError(ValueError):
    """Raised when a text has no analyzable tokens."""


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple
    mode: str = "words"
    source_id: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def tokenize(raw: str, mode: Mode = "words", *, keep_hyphens: bool = False,
             source_id: str = "") -> TokenSequence:
    """Split ``raw`` into canonical tokens.

    Parameters
    ----------
    raw : str
        Unicode text.
    mode : {"words", "han_chars"}
        Word tokens or one token per Han ideograph.
    keep_hyphens : bool
        Words mode only: keep a hyphen flanked by letters inside the token.
    source_id : str
        Opaque label carried through to reports.

    Raises
    ------
    NoContentError
        If nothing analyzable remains.
    """
    if mode == "words":
        pattern = _WORD_HYPHEN_RE if keep_hyphens else _WORD_RE
        tokens = tuple(m.group(0).replace("’", "'").lower()
                       for m in pattern.finditer(raw))
    elif mode == "han_chars":
        tokens = tuple(_HAN_RE.findall(raw))
    else:
        raise ValueError(f"unknown tokenize mode {mode!r}")
    if not tokens:
        raise NoContentError("no analyzable content")
    return TokenSequence(tokens, mode, source_id)


def read_text(path, encoding: str = "utf-8") -> str:
    """Read a UTF-8 file, or stdin when ``path`` is ``"-"``."""
    if str(path) == "-":
        import sys
        return sys.stdin.read()
    with open(path, encoding=encoding) as fh:
        return fh.read()

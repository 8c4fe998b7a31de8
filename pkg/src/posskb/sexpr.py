"""Shared lexer for the concept, formula, and knowledge-base syntaxes.

Tokens carry 1-based line/column so every parser in the package can report
positions.  Words cover identifiers, naturals, and decimal/fraction pieces
(the individual parsers validate shape); ``#`` starts a comment running to
end of line.
"""

from __future__ import annotations

from typing import Iterator

from .errors import ParseError

Token = tuple[str, str, int, int]  # kind, text, line, column

_WORD_CHARS = "_.-"
_SINGLE = {"(": "(", ")": ")", ",": ",", ":": ":", "@": "@", "/": "/"}


def tokenize(text: str, start_line: int = 1) -> Iterator[Token]:
    line, col = start_line, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _SINGLE:
            yield (_SINGLE[ch], ch, line, col)
            col += 1
            i += 1
        elif ch == "=":
            if text[i : i + 2] != "=>":
                raise ParseError("expected '=>'", line, col)
            yield ("arrow", "=>", line, col)
            col += 2
            i += 2
        elif ch == "<":
            if text[i : i + 3] != "<=>":
                raise ParseError("expected '<=>'", line, col)
            yield ("arrow", "<=>", line, col)
            col += 3
            i += 3
        elif ch.isalnum() or ch in _WORD_CHARS:
            start = i
            while i < n and (text[i].isalnum() or text[i] in _WORD_CHARS):
                i += 1
            yield ("word", text[start:i], line, col)
            col += i - start
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    yield ("eof", "", line, col)


class TokenStream:
    """Cursor over a token list with one-token lookahead."""

    def __init__(self, tokens: Iterator[Token]):
        self._tokens = list(tokens)
        self._pos = 0

    def peek(self) -> Token:
        return self._tokens[self._pos]

    def next(self) -> Token:
        tok = self._tokens[self._pos]
        if tok[0] != "eof":
            self._pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def at_end(self) -> bool:
        return self.peek()[0] == "eof"

    def expect_end(self) -> None:
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])

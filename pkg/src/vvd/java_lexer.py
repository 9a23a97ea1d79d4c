"""Tokenizer for the pragmatic Java subset consumed by the detectors.

Produces a flat token stream with exact source spans. Comments are emitted
as tokens (so the stream plus inter-token whitespace reproduces the input
byte-for-byte) and are skipped by the parser.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .spans import Span


class TokenKind(enum.Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    STRING = "string-literal"
    CHAR = "char-literal"
    NUMBER = "number-literal"
    PUNCT = "punctuation"
    COMMENT = "comment"
    END = "end"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Span


class LexError(Exception):
    """Unterminated literal/comment or an illegal character."""

    def __init__(self, message: str, span: Span) -> None:
        super().__init__(f"{span.file}:{span.start_line}:{span.start_col}: {message}")
        self.span = span


KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null""".split()
)

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double"}
)

# Longest-match first.
_OPERATORS = (
    ">>>=",
    ">>>",
    ">>=",
    "<<=",
    "...",
    "==",
    "!=",
    "<=",
    ">=",
    "&&",
    "||",
    "++",
    "--",
    "+=",
    "-=",
    "*=",
    "/=",
    "%=",
    "&=",
    "|=",
    "^=",
    "<<",
    ">>",
    "->",
    "::",
)
_SINGLE_CHARS = frozenset("(){}[];,.=<>!~?:&|+-*/%^@")

_DIGITS_HEX = "0123456789abcdefABCDEF_"
_NUMBER_SUFFIXES = "lLfFdD"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


class _Lexer:
    def __init__(self, source: str, file: str) -> None:
        self._src = source
        self._file = file
        self._pos = 0
        self._line = 1
        self._col = 1
        # Position of the most recently consumed character.
        self._last_line = 1
        self._last_col = 1

    def run(self) -> list[Token]:
        tokens: list[Token] = []
        while True:
            self._skip_whitespace()
            if self._pos >= len(self._src):
                break
            tokens.append(self._scan())
        end_span = Span(self._file, self._line, self._col, self._line, self._col)
        tokens.append(Token(TokenKind.END, "", end_span))
        return tokens

    # -- low-level ----------------------------------------------------

    def _cur(self) -> str:
        return self._src[self._pos] if self._pos < len(self._src) else ""

    def _peek(self, k: int = 1) -> str:
        i = self._pos + k
        return self._src[i] if i < len(self._src) else ""

    def _advance(self) -> str:
        ch = self._src[self._pos]
        self._pos += 1
        self._last_line = self._line
        self._last_col = self._col
        if ch == "\n":
            self._line += 1
            self._col = 1
        else:
            self._col += 1
        return ch

    def _skip_whitespace(self) -> None:
        while self._pos < len(self._src) and self._src[self._pos] in " \t\r\n\f":
            self._advance()

    def _token(self, kind: TokenKind, start: int, line: int, col: int) -> Token:
        span = Span(self._file, line, col, self._last_line, self._last_col)
        return Token(kind, self._src[start : self._pos], span)

    def _error(self, message: str, line: int, col: int) -> LexError:
        return LexError(message, Span.point(self._file, line, col))

    # -- scanners -----------------------------------------------------

    def _scan(self) -> Token:
        start, line, col = self._pos, self._line, self._col
        ch = self._cur()

        if ch == "/" and self._peek() in "/*":
            return self._scan_comment(start, line, col)
        if _is_ident_start(ch):
            return self._scan_word(start, line, col)
        if ch.isdigit() or (ch == "." and self._peek().isdigit()):
            return self._scan_number(start, line, col)
        if ch == '"':
            return self._scan_string(start, line, col)
        if ch == "'":
            return self._scan_char(start, line, col)

        for op in _OPERATORS:
            if self._src.startswith(op, self._pos):
                for _ in op:
                    self._advance()
                return self._token(TokenKind.PUNCT, start, line, col)
        if ch in _SINGLE_CHARS:
            self._advance()
            return self._token(TokenKind.PUNCT, start, line, col)
        raise self._error(f"illegal character {ch!r}", line, col)

    def _scan_comment(self, start: int, line: int, col: int) -> Token:
        self._advance()  # /
        if self._advance() == "/":
            while self._pos < len(self._src) and self._cur() != "\n":
                self._advance()
        else:  # block comment
            while True:
                if self._pos >= len(self._src):
                    raise self._error("unterminated block comment", line, col)
                if self._cur() == "*" and self._peek() == "/":
                    self._advance()
                    self._advance()
                    break
                self._advance()
        return self._token(TokenKind.COMMENT, start, line, col)

    def _scan_word(self, start: int, line: int, col: int) -> Token:
        while self._pos < len(self._src) and _is_ident_part(self._cur()):
            self._advance()
        text = self._src[start : self._pos]
        kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
        return self._token(kind, start, line, col)

    def _scan_number(self, start: int, line: int, col: int) -> Token:
        if self._cur() == "0" and self._peek() in "xXbB":
            self._advance()
            self._advance()
            while self._pos < len(self._src) and self._cur() in _DIGITS_HEX:
                self._advance()
            if self._cur() in "lL":
                self._advance()
            return self._token(TokenKind.NUMBER, start, line, col)

        def digits() -> None:
            while self._pos < len(self._src) and (
                self._cur().isdigit() or self._cur() == "_"
            ):
                self._advance()

        digits()
        if self._cur() == "." and (self._peek().isdigit() or self._peek() == ""):
            self._advance()
            digits()
        if self._cur() in "eE" and (
            self._peek().isdigit() or (self._peek() in "+-" and self._peek(2).isdigit())
        ):
            self._advance()
            if self._cur() in "+-":
                self._advance()
            digits()
        if self._cur() in _NUMBER_SUFFIXES:
            self._advance()
        return self._token(TokenKind.NUMBER, start, line, col)

    def _scan_string(self, start: int, line: int, col: int) -> Token:
        if self._src.startswith('"""', self._pos):
            return self._scan_text_block(start, line, col)
        self._advance()  # opening quote
        while True:
            if self._pos >= len(self._src) or self._cur() == "\n":
                raise self._error("unterminated string literal", line, col)
            ch = self._advance()
            if ch == "\\":
                if self._pos >= len(self._src):
                    raise self._error("unterminated string literal", line, col)
                self._advance()
            elif ch == '"':
                return self._token(TokenKind.STRING, start, line, col)

    def _scan_text_block(self, start: int, line: int, col: int) -> Token:
        for _ in range(3):
            self._advance()
        while True:
            if self._pos >= len(self._src):
                raise self._error("unterminated text block", line, col)
            if self._cur() == "\\":
                self._advance()
                if self._pos < len(self._src):
                    self._advance()
                continue
            if self._src.startswith('"""', self._pos):
                for _ in range(3):
                    self._advance()
                return self._token(TokenKind.STRING, start, line, col)
            self._advance()

    def _scan_char(self, start: int, line: int, col: int) -> Token:
        self._advance()  # opening quote
        while True:
            if self._pos >= len(self._src) or self._cur() == "\n":
                raise self._error("unterminated character literal", line, col)
            ch = self._advance()
            if ch == "\\":
                if self._pos >= len(self._src):
                    raise self._error("unterminated character literal", line, col)
                self._advance()
            elif ch == "'":
                return self._token(TokenKind.CHAR, start, line, col)


def tokenize(source: str, file: str = "<memory>") -> list[Token]:
    """Tokenize Java source text. The final token always has kind END.

    Raises LexError on unterminated string/char/comment or an illegal
    character.
    """
    return _Lexer(source, file).run()


def decode_integer(text: str) -> int | None:
    """Decode a Java integer literal (underscores, 0x/0b/0 prefixes, l/L)."""
    t = text.replace("_", "")
    if t and t[-1] in "lL":
        t = t[:-1]
    if not t:
        return None
    try:
        if t.startswith(("0x", "0X")):
            return int(t[2:], 16)
        if t.startswith(("0b", "0B")):
            return int(t[2:], 2)
        if len(t) > 1 and t[0] == "0" and t.isdigit():
            return int(t, 8)
        if t.isdigit():
            return int(t)
    except ValueError:
        return None
    return None


_ESCAPES = {
    "n": "\n",
    "t": "\t",
    "r": "\r",
    "b": "\b",
    "f": "\f",
    "0": "\0",
    "'": "'",
    '"': '"',
    "\\": "\\",
}


def decode_string(text: str) -> str | None:
    """Decode a quoted Java string literal, or None if not decodable."""
    if len(text) < 2 or not text.startswith('"') or not text.endswith('"'):
        return None
    body = text[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        i += 1
        if i >= len(body):
            return None
        esc = body[i]
        if esc in _ESCAPES:
            out.append(_ESCAPES[esc])
            i += 1
        elif esc == "u":
            hexpart = body[i + 1 : i + 5]
            if len(hexpart) != 4:
                return None
            try:
                out.append(chr(int(hexpart, 16)))
            except ValueError:
                return None
            i += 5
        else:
            return None
    return "".join(out)

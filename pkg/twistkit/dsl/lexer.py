"""
Tokenizer for `.twk` documents.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from twistkit.errors import LexError

FUNCTIONS = ("exp", "log", "sin", "cos")

# unicode spellings and their canonical token values
ALIASES = {"⊗": "⊗", "·": "*", "−": "-", "→": "->"}
SINGLE = {"+": "OP", "-": "OP", "*": "OP", "/": "OP", "^": "OP", "⊗": "OP",
          "(": "LPAREN", ")": "RPAREN", "[": "LBRACKET", "]": "RBRACKET",
          "{": "LBRACE", "}": "RBRACE", ",": "COMMA", ":": "COLON", "=": "EQUALS"}
OPENING = ("LPAREN", "LBRACKET", "LBRACE")
CLOSING = ("RPAREN", "RBRACKET", "RBRACE")
OPERAND_END = ("NUMBER", "RPAREN", "RBRACKET", "DERIV")


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    column: int
    end_column: int

    def describe(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        if self.kind == "NEWLINE":
            return "end of line"
        return repr(str(self.value))


def _ends_operand(token: Optional[Token]) -> bool:
    if token is None:
        return False
    if token.kind == "IDENT":
        return token.value not in FUNCTIONS
    return token.kind in OPERAND_END


def tokenize(source: str) -> List[Token]:
    """Split `source` into tokens. NEWLINE tokens are only produced outside
    brackets; `#` starts a comment running to the end of the line."""
    tokens: List[Token] = []
    depth = 0
    line, line_start, idx = 1, 0, 0
    n = len(source)

    def emit(kind: str, value, start: int, end: int) -> None:
        tokens.append(Token(kind, value, line, start - line_start + 1, end - line_start + 1))

    while idx < n:
        c = source[idx]
        if c == "\n":
            if depth == 0 and tokens and tokens[-1].kind != "NEWLINE":
                emit("NEWLINE", "\n", idx, idx + 1)
            idx += 1
            line, line_start = line + 1, idx
            continue
        if c.isspace():
            idx += 1
            continue
        if c == "#":
            while idx < n and source[idx] != "\n":
                idx += 1
            continue
        start = idx
        if c.isdigit():
            while idx < n and source[idx].isdigit():
                idx += 1
            if idx + 1 < n and source[idx] == "." and source[idx + 1].isdigit():
                idx += 1
                while idx < n and source[idx].isdigit():
                    idx += 1
            emit("NUMBER", Fraction(source[start:idx]), start, idx)
            continue
        if c == "d" and source.startswith("d/d", idx) and idx + 3 < n and \
                (source[idx + 3].isalpha() or source[idx + 3] == "_"):
            idx += 3
            name_start = idx
            while idx < n and (source[idx].isalnum() or source[idx] == "_"):
                idx += 1
            emit("DERIV", source[name_start:idx], start, idx)
            continue
        if c.isalpha() or c == "_":
            while idx < n and (source[idx].isalnum() or source[idx] == "_"):
                idx += 1
            emit("IDENT", source[start:idx], start, idx)
            continue
        if source.startswith("(x)", idx) and _ends_operand(tokens[-1] if tokens else None):
            idx += 3
            emit("OP", "⊗", start, idx)
            continue
        if source.startswith("->", idx):
            idx += 2
            emit("ARROW", "->", start, idx)
            continue
        c = ALIASES.get(c, c)
        if c == "->":
            idx += 1
            emit("ARROW", "->", start, idx)
            continue
        kind = SINGLE.get(c)
        if kind is None:
            raise LexError(f"unexpected character {source[idx]!r}", line, idx - line_start + 1)
        if kind in OPENING:
            depth += 1
        elif kind in CLOSING:
            depth = max(0, depth - 1)
        idx += 1
        emit(kind, c, start, idx)
    emit("EOF", None, idx, idx)
    return tokens

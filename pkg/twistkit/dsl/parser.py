"""
Recursive-descent parser for `.twk` documents with precedence climbing for
expressions. Binding strength, loosest first: `+ -`, `* /`, `⊗`, unary
minus, `^` (right associative), function calls and atoms.
"""
import logging
from typing import Iterable, List, Optional, Tuple

from twistkit.dsl.ast import (ActionDecl, BinOp, BracketRule, BundleDecl, Call, Declaration,
                              Deriv, EquivalenceDecl, HParam, Imag, LieAlgebraDecl, ModelDecl,
                              ModuleDecl, Name, Neg, Node, Number, SpecDocument, StarDecl,
                              TwistDecl)
from twistkit.dsl.lexer import FUNCTIONS, Token, tokenize
from twistkit.dsl.resolver import resolve
from twistkit.errors import ArityError, ParseSyntaxError

logger = logging.getLogger(__name__)

BINARY_PRECEDENCE = {"+": 0, "-": 0, "*": 1, "/": 1, "⊗": 2}
FUNCTION_ARITY = {name: 1 for name in FUNCTIONS}
KEYWORDS = ("liealgebra", "model", "action", "twist", "star", "module", "equivalence", "bundle")
MODEL_KINDS = ("torus", "affine")
MODULE_ROLES = ("sections", "left", "right")
CONNECTION_COMPONENTS = ("A_x", "A_y")
OPERAND_START = ("number", "identifier", "'('", "'-'", "d/d<coordinate>")

_DESCRIPTIONS = {"LPAREN": "'('", "RPAREN": "')'", "LBRACKET": "'['", "RBRACKET": "']'",
                 "LBRACE": "'{'", "RBRACE": "'}'", "COMMA": "','", "COLON": "':'",
                 "EQUALS": "'='", "ARROW": "'->'", "NUMBER": "number", "IDENT": "identifier",
                 "NEWLINE": "end of line", "EOF": "end of input"}


def _describe(kind: str, value: Optional[str] = None) -> str:
    if value is not None:
        return f"'{value}'"
    return _DESCRIPTIONS.get(kind, kind)


class Parser:
    r"""Turns a token list into a SpecDocument.

    :param tokens: Output of `tokenize`, ending with an EOF token.
    """

    def __init__(self, tokens: List[Token]) -> None:
        self.tokens = tokens
        self.index = 0

    # token access

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        if token.kind != "EOF":
            self.index += 1
        return token

    def at(self, kind: str, value: Optional[str] = None, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token.kind == kind and (value is None or token.value == value)

    def fail(self, expected: Iterable[str], token: Optional[Token] = None) -> ParseSyntaxError:
        token = token or self.peek()
        return ParseSyntaxError(f"unexpected {token.describe()}", token.line, token.column,
                                expected=expected)

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        if not self.at(kind, value):
            raise self.fail([_describe(kind, value)])
        return self.advance()

    def expect_name(self) -> str:
        return self.expect("IDENT").value

    def expect_end(self) -> None:
        if not (self.at("NEWLINE") or self.at("EOF")):
            raise self.fail(["end of line"])
        self.advance()

    # documents

    def parse_document(self) -> SpecDocument:
        declarations: List[Declaration] = []
        while True:
            while self.at("NEWLINE"):
                self.advance()
            if self.at("EOF"):
                break
            declarations.append(self.parse_declaration())
        logger.debug(f"parsed {len(declarations)} declarations")
        return SpecDocument(tuple(declarations))

    def parse_declaration(self) -> Declaration:
        token = self.peek()
        if token.kind != "IDENT" or token.value not in KEYWORDS:
            raise self.fail([f"'{k}'" for k in KEYWORDS])
        self.advance()
        declaration = getattr(self, f"_parse_{token.value}")(token)
        self.expect_end()
        return declaration

    def _parse_liealgebra(self, start: Token) -> LieAlgebraDecl:
        name = self.expect_name()
        self.expect("LBRACE")
        generators: List[str] = []
        while self.at("IDENT"):
            generators.append(self.advance().value)
        if not generators:
            raise self.fail(["identifier"])
        brackets: List[BracketRule] = []
        if self.at("COLON"):
            self.advance()
            brackets.append(self._parse_bracket_rule())
            while self.at("COMMA"):
                self.advance()
                brackets.append(self._parse_bracket_rule())
        elif not self.at("RBRACE"):
            raise self.fail(["identifier", "':'", "'}'"])
        self.expect("RBRACE")
        return LieAlgebraDecl(name, tuple(generators), tuple(brackets),
                              line=start.line, column=start.column)

    def _parse_bracket_rule(self) -> BracketRule:
        start = self.expect("LBRACKET")
        left = self.expect_name()
        self.expect("COMMA")
        right = self.expect_name()
        self.expect("RBRACKET")
        self.expect("EQUALS")
        return BracketRule(left, right, self.parse_expression(),
                           line=start.line, column=start.column)

    def _parse_model(self, start: Token) -> ModelDecl:
        name = None
        if self.at("IDENT") and self.at("EQUALS", offset=1):
            name = self.advance().value
            self.advance()
        token = self.peek()
        if token.kind != "IDENT" or token.value not in MODEL_KINDS:
            raise self.fail([f"'{k}'" for k in MODEL_KINDS])
        self.advance()
        self.expect("LPAREN")
        dim = self._parse_integer()
        self.expect("RPAREN")
        return ModelDecl(name, token.value, dim, line=start.line, column=start.column)

    def _parse_integer(self, signed: bool = False) -> int:
        sign = 1
        if signed and self.at("OP", "-"):
            self.advance()
            sign = -1
        token = self.peek()
        if token.kind != "NUMBER" or token.value.denominator != 1:
            raise self.fail(["integer"])
        self.advance()
        return sign * int(token.value)

    def _parse_action(self, start: Token) -> ActionDecl:
        group = None
        if self.at("IDENT") and self.at("COLON", offset=1):
            group = self.advance().value
            self.advance()
        generator = self.expect_name()
        self.expect("ARROW")
        return ActionDecl(group, generator, self.parse_expression(),
                          line=start.line, column=start.column)

    def _parse_twist(self, start: Token) -> TwistDecl:
        name = self.expect_name()
        algebra = None
        if self.at("COLON"):
            self.advance()
            algebra = self.expect_name()
        self.expect("EQUALS")
        if self.at("IDENT", "series") and self.at("LBRACKET", offset=1):
            self.advance()
            series = self._parse_expression_list()
            return TwistDecl(name, algebra, series=series, line=start.line, column=start.column)
        return TwistDecl(name, algebra, value=self.parse_expression(),
                         line=start.line, column=start.column)

    def _parse_expression_list(self) -> Tuple[Node, ...]:
        self.expect("LBRACKET")
        items = [self.parse_expression()]
        while self.at("COMMA"):
            self.advance()
            items.append(self.parse_expression())
        if not self.at("RBRACKET"):
            raise self.fail(["','", "']'"])
        self.advance()
        return tuple(items)

    def _parse_star(self, start: Token) -> StarDecl:
        name = self.expect_name()
        self.expect("EQUALS")
        twist = self.expect_name()
        self.expect("IDENT", "on")
        group = self.expect_name()
        return StarDecl(name, twist, group, line=start.line, column=start.column)

    def _parse_module(self, start: Token) -> ModuleDecl:
        name = self.expect_name()
        self.expect("IDENT", "over")
        star = self.expect_name()
        roles = {}
        while self.at("IDENT") and self.peek().value in MODULE_ROLES:
            token = self.advance()
            if token.value in roles:
                raise self.fail(["end of line"], token)
            roles[token.value] = self.expect_name()
        return ModuleDecl(name, star, roles.get("sections"), roles.get("left"), roles.get("right"),
                          line=start.line, column=start.column)

    def _parse_equivalence(self, start: Token) -> EquivalenceDecl:
        name = self.expect_name()
        self.expect("IDENT", "on")
        star = self.expect_name()
        self.expect("EQUALS")
        return EquivalenceDecl(name, star, self._parse_expression_list(),
                               line=start.line, column=start.column)

    def _parse_bundle(self, start: Token) -> BundleDecl:
        name = None
        if self.at("IDENT") and not self.at("IDENT", "degree"):
            name = self.advance().value
        self.expect("IDENT", "degree")
        degree = self._parse_integer(signed=True)
        components = {}
        if self.at("IDENT", "with"):
            self.advance()
            self.expect("IDENT", "connection")
            self.expect("LBRACE")
            while True:
                token = self.peek()
                if token.kind != "IDENT" or token.value not in CONNECTION_COMPONENTS \
                        or token.value in components:
                    raise self.fail([f"'{c}'" for c in CONNECTION_COMPONENTS if c not in components])
                self.advance()
                self.expect("EQUALS")
                components[token.value] = self.parse_expression()
                if not self.at("COMMA"):
                    break
                self.advance()
            self.expect("RBRACE")
        return BundleDecl(name, degree, components.get("A_x"), components.get("A_y"),
                          line=start.line, column=start.column)

    # expressions

    def parse_expression(self, min_precedence: int = 0) -> Node:
        left = self.parse_unary()
        while True:
            token = self.peek()
            precedence = BINARY_PRECEDENCE.get(token.value) if token.kind == "OP" else None
            if precedence is None or precedence < min_precedence:
                return left
            self.advance()
            right = self.parse_expression(precedence + 1)
            left = BinOp(token.value, left, right, line=token.line, column=token.column)

    def parse_unary(self) -> Node:
        if self.at("OP", "-"):
            token = self.advance()
            return Neg(self.parse_unary(), line=token.line, column=token.column)
        return self.parse_power()

    def parse_power(self) -> Node:
        base = self.parse_primary()
        if self.at("OP", "^"):
            token = self.advance()
            return BinOp("^", base, self.parse_unary(), line=token.line, column=token.column)
        return base

    def parse_primary(self) -> Node:
        token = self.peek()
        position = {"line": token.line, "column": token.column}
        if token.kind == "NUMBER":
            self.advance()
            return Number(token.value, **position)
        if token.kind == "DERIV":
            self.advance()
            return Deriv(token.value, **position)
        if token.kind == "LPAREN":
            self.advance()
            inner = self.parse_expression()
            self.expect("RPAREN")
            return inner
        if token.kind == "IDENT":
            self.advance()
            if token.value == "i":
                return Imag(**position)
            if token.value == "h":
                return HParam(**position)
            if token.value in FUNCTION_ARITY:
                return self._parse_call(token)
            return Name(token.value, **position)
        raise self.fail(OPERAND_START)

    def _parse_call(self, token: Token) -> Call:
        self.expect("LPAREN")
        args = [self.parse_expression()]
        while self.at("COMMA"):
            self.advance()
            args.append(self.parse_expression())
        expected = FUNCTION_ARITY[token.value]
        if len(args) != expected:
            raise ArityError(f"{token.value} takes {expected} argument(s), got {len(args)}",
                             token.line, token.column)
        self.expect("RPAREN")
        return Call(token.value, tuple(args), line=token.line, column=token.column)


def parse_document(text: str) -> SpecDocument:
    """Syntax only; names are not resolved."""
    return Parser(tokenize(text)).parse_document()


def parse_expression(text: str) -> Node:
    parser = Parser(tokenize(text))
    expression = parser.parse_expression()
    while parser.at("NEWLINE"):
        parser.advance()
    if not parser.at("EOF"):
        raise parser.fail(["end of input"])
    return expression


def parse_spec(text: str) -> SpecDocument:
    r"""Parse and resolve a `.twk` document.

    :raises SpecError: LexError, ParseSyntaxError, UnresolvedNameError,
        ArityError, ExpressionTypeError or DuplicateNameError, with the
        source position of the offending token
    """
    document = parse_document(text)
    resolve(document)
    return document

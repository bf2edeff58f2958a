from twistkit.dsl.lexer import Token, tokenize
from twistkit.dsl.parser import Parser, parse_document, parse_expression, parse_spec
from twistkit.dsl.printer import print_expression, print_spec
from twistkit.dsl.resolver import Scope, resolve
from twistkit.dsl.builder import SpecBuilder

__all__ = [
    "Token",
    "tokenize",
    "Parser",
    "parse_document",
    "parse_expression",
    "parse_spec",
    "print_expression",
    "print_spec",
    "Scope",
    "resolve",
    "SpecBuilder",
]

"""
Canonical rendering of documents. Every binary operation is parenthesized,
so parsing the output yields the same tree.
"""
from fractions import Fraction

from twistkit.dsl.ast import (ActionDecl, BinOp, BundleDecl, Call, Declaration, Deriv,
                              EquivalenceDecl, HParam, Imag, LieAlgebraDecl, ModelDecl, ModuleDecl,
                              Name, Neg, Node, Number, SpecDocument, StarDecl, TwistDecl)
from twistkit.errors import StructuralError


def format_number(value: Fraction) -> str:
    """Integer or finite decimal, the two literal forms the lexer reads."""
    if value < 0:
        return f"-{format_number(-value)}"
    if value.denominator == 1:
        return str(value.numerator)
    digits = 0
    scaled = value
    while scaled.denominator != 1:
        if digits > 64:
            raise StructuralError(f"{value} has no finite decimal expansion")
        scaled *= 10
        digits += 1
    text = str(scaled.numerator).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


def print_expression(node: Node) -> str:
    if isinstance(node, Number):
        return format_number(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, HParam):
        return "h"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Deriv):
        return f"d/d{node.coordinate}"
    if isinstance(node, Neg):
        return f"(-{print_expression(node.operand)})"
    if isinstance(node, Call):
        return f"{node.function}({', '.join(print_expression(a) for a in node.args)})"
    if isinstance(node, BinOp):
        return f"({print_expression(node.left)} {node.op} {print_expression(node.right)})"
    raise StructuralError(f"cannot print {node!r}")


def _print_list(items) -> str:
    return "[" + ", ".join(print_expression(item) for item in items) + "]"


def print_declaration(decl: Declaration) -> str:
    if isinstance(decl, LieAlgebraDecl):
        body = " ".join(decl.generators)
        if decl.brackets:
            rules = ", ".join(f"[{r.left},{r.right}] = {print_expression(r.value)}"
                              for r in decl.brackets)
            body = f"{body} : {rules}"
        return f"liealgebra {decl.name} {{ {body} }}"
    if isinstance(decl, ModelDecl):
        prefix = f"{decl.name} = " if decl.name else ""
        return f"model {prefix}{decl.model_kind}({decl.dim})"
    if isinstance(decl, ActionDecl):
        prefix = f"{decl.group} : " if decl.group else ""
        return f"action {prefix}{decl.generator} -> {print_expression(decl.value)}"
    if isinstance(decl, TwistDecl):
        head = f"twist {decl.name}" + (f" : {decl.algebra}" if decl.algebra else "")
        if decl.series is not None:
            return f"{head} = series {_print_list(decl.series)}"
        return f"{head} = {print_expression(decl.value)}"
    if isinstance(decl, StarDecl):
        return f"star {decl.name} = {decl.twist} on {decl.group}"
    if isinstance(decl, ModuleDecl):
        text = f"module {decl.name} over {decl.star}"
        for role in ("sections", "left", "right"):
            if getattr(decl, role) is not None:
                text += f" {role} {getattr(decl, role)}"
        return text
    if isinstance(decl, EquivalenceDecl):
        return f"equivalence {decl.name} on {decl.star} = {_print_list(decl.terms)}"
    if isinstance(decl, BundleDecl):
        text = "bundle " + (f"{decl.name} " if decl.name else "") + f"degree {decl.degree}"
        components = [f"{label} = {print_expression(c)}"
                      for label, c in (("A_x", decl.A_x), ("A_y", decl.A_y)) if c is not None]
        if components:
            text += f" with connection {{ {', '.join(components)} }}"
        return text
    raise StructuralError(f"cannot print {decl!r}")


def print_spec(document: SpecDocument) -> str:
    return "".join(print_declaration(decl) + "\n" for decl in document.declarations)

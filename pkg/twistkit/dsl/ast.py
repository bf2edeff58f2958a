"""
Syntax tree of `.twk` documents. Source positions do not take part in
equality, so a re-parsed document compares equal to the original.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple


@dataclass(frozen=True)
class Node:
    line: int = field(default=0, compare=False, repr=False, kw_only=True)
    column: int = field(default=0, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Number(Node):
    value: Fraction


@dataclass(frozen=True)
class Imag(Node):
    pass


@dataclass(frozen=True)
class HParam(Node):
    pass


@dataclass(frozen=True)
class Name(Node):
    name: str


@dataclass(frozen=True)
class Deriv(Node):
    coordinate: str


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Call(Node):
    function: str
    args: Tuple[Node, ...]


def walk(node: Node) -> Iterator[Node]:
    yield node
    if isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, Call):
        for arg in node.args:
            yield from walk(arg)


@dataclass(frozen=True)
class Declaration(Node):
    kind = "declaration"


@dataclass(frozen=True)
class BracketRule(Node):
    left: str
    right: str
    value: Node


@dataclass(frozen=True)
class LieAlgebraDecl(Declaration):
    kind = "liealgebra"
    name: str
    generators: Tuple[str, ...]
    brackets: Tuple[BracketRule, ...] = ()


@dataclass(frozen=True)
class ModelDecl(Declaration):
    kind = "model"
    name: Optional[str]
    model_kind: str
    dim: int

    @property
    def label(self) -> str:
        return self.name or f"{self.model_kind}({self.dim})"


@dataclass(frozen=True)
class ActionDecl(Declaration):
    kind = "action"
    group: Optional[str]
    generator: str
    value: Node

    @property
    def group_name(self) -> str:
        return self.group or "default"


@dataclass(frozen=True)
class TwistDecl(Declaration):
    kind = "twist"
    name: str
    algebra: Optional[str]
    value: Optional[Node] = None
    series: Optional[Tuple[Node, ...]] = None


@dataclass(frozen=True)
class StarDecl(Declaration):
    kind = "star"
    name: str
    twist: str
    group: str


@dataclass(frozen=True)
class ModuleDecl(Declaration):
    kind = "module"
    name: str
    star: str
    sections: Optional[str] = None
    left: Optional[str] = None
    right: Optional[str] = None


@dataclass(frozen=True)
class EquivalenceDecl(Declaration):
    kind = "equivalence"
    name: str
    star: str
    terms: Tuple[Node, ...]


@dataclass(frozen=True)
class BundleDecl(Declaration):
    kind = "bundle"
    name: Optional[str]
    degree: int
    A_x: Optional[Node] = None
    A_y: Optional[Node] = None

    @property
    def label(self) -> str:
        return self.name or f"L{self.degree}"


@dataclass(frozen=True)
class SpecDocument:
    declarations: Tuple[Declaration, ...]

    def of_kind(self, kind: str) -> List[Declaration]:
        return [d for d in self.declarations if d.kind == kind]

    def __len__(self) -> int:
        return len(self.declarations)

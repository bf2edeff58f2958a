"""
Single-pass name resolution and static checks for parsed documents.

Every reference must point at an earlier declaration. Expressions are
checked in the context they appear in:

  - bracket values: linear combinations of generators;
  - twists: elements of U(g)^{(x)k}[[h]] with a tracked tensor arity;
  - action images: coefficient functions times d/d<coordinate>, plus a
    potential;
  - equivalence terms: coefficient functions times PBW words;
  - connection components: h-free functions of x and y.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from twistkit.dsl.ast import (ActionDecl, BinOp, BundleDecl, Call, Deriv, EquivalenceDecl, HParam,
                              Imag, LieAlgebraDecl, ModelDecl, ModuleDecl, Name, Neg, Node, Number,
                              SpecDocument, StarDecl, TwistDecl, walk)
from twistkit.dsl.lexer import FUNCTIONS
from twistkit.errors import (ArityError, DuplicateNameError, ExpressionTypeError,
                             UnresolvedNameError)
from twistkit.models import make_model

logger = logging.getLogger(__name__)

RESERVED = ("i", "h", "d") + FUNCTIONS
BUNDLE_COORDINATES = ("x", "y")


@dataclass
class GroupBinding:
    """Action group: generator images over one Lie algebra and one model."""
    name: str
    algebra: str
    model: ModelDecl
    images: Dict[str, ActionDecl] = field(default_factory=dict)


@dataclass
class Scope:
    algebras: Dict[str, LieAlgebraDecl] = field(default_factory=dict)
    models: Dict[str, ModelDecl] = field(default_factory=dict)
    groups: Dict[str, GroupBinding] = field(default_factory=dict)
    twists: Dict[str, TwistDecl] = field(default_factory=dict)
    twist_algebras: Dict[str, str] = field(default_factory=dict)
    stars: Dict[str, StarDecl] = field(default_factory=dict)
    modules: Dict[str, ModuleDecl] = field(default_factory=dict)
    equivalences: Dict[str, EquivalenceDecl] = field(default_factory=dict)
    bundles: Dict[str, BundleDecl] = field(default_factory=dict)
    latest_algebra: Optional[str] = None
    latest_model: Optional[ModelDecl] = None

    def group_of_star(self, star: str) -> GroupBinding:
        return self.groups[self.stars[star].group]


def _error(cls, message: str, node: Node):
    return cls(message, node.line, node.column)


def coordinates_of(model: ModelDecl) -> Tuple[str, ...]:
    return make_model(model.model_kind, model.dim, 0).coordinate_names


def _check_exponent(node: BinOp) -> int:
    exponent = node.right
    if not isinstance(exponent, Number) or exponent.value.denominator != 1:
        raise _error(ExpressionTypeError, "exponent must be a non-negative integer literal", node)
    return int(exponent.value)


def _check_divisor(node: BinOp) -> None:
    for sub in walk(node.right):
        if isinstance(sub, (Name, Deriv, HParam, Call)):
            raise _error(ExpressionTypeError, "divisor must be a numeric constant", sub)


def tensor_arity(node: Node, generators: Sequence[str]) -> int:
    """Tensor arity of an expression over U(g); scalars have arity 0."""
    if isinstance(node, (Number, Imag, HParam)):
        return 0
    if isinstance(node, Name):
        if node.name not in generators:
            raise _error(UnresolvedNameError, f"unknown generator {node.name!r}", node)
        return 1
    if isinstance(node, Deriv):
        raise _error(ExpressionTypeError, f"d/d{node.coordinate} is not an element of U(g)", node)
    if isinstance(node, Neg):
        return tensor_arity(node.operand, generators)
    if isinstance(node, Call):
        if node.function not in ("exp", "log"):
            raise _error(ExpressionTypeError, f"{node.function} is not defined on U(g)[[h]]", node)
        return tensor_arity(node.args[0], generators)
    left = tensor_arity(node.left, generators)
    if node.op == "^":
        _check_exponent(node)
        return left
    if node.op == "/":
        _check_divisor(node)
        return left
    right = tensor_arity(node.right, generators)
    if node.op == "⊗":
        return max(left, 1) + max(right, 1)
    if left and right and left != right:
        raise _error(ArityError, f"operands of '{node.op}' have tensor arities {left} and {right}",
                     node)
    return max(left, right)


def _lie_degree(node: Node, generators: Sequence[str]) -> int:
    if isinstance(node, (Number, Imag)):
        return 0
    if isinstance(node, Name):
        if node.name not in generators:
            raise _error(UnresolvedNameError, f"unknown generator {node.name!r}", node)
        return 1
    if isinstance(node, Neg):
        return _lie_degree(node.operand, generators)
    if isinstance(node, BinOp):
        if node.op == "⊗":
            raise _error(ArityError, "bracket values live in g, not in a tensor power", node)
        left = _lie_degree(node.left, generators)
        if node.op == "^":
            if left and _check_exponent(node) != 1:
                raise _error(ExpressionTypeError, "bracket value must be linear in the generators",
                             node)
            return left
        if node.op == "/":
            _check_divisor(node)
            return left
        right = _lie_degree(node.right, generators)
        degree = left + right if node.op == "*" else max(left, right)
        if degree > 1:
            raise _error(ExpressionTypeError, "bracket value must be linear in the generators", node)
        return degree
    raise _error(ExpressionTypeError, "bracket value must be a linear combination of generators",
                 node)


def check_function(node: Node, coordinates: Sequence[str], allow_h: bool = True) -> None:
    """Function-valued expression in the given coordinates."""
    if isinstance(node, (Number, Imag)):
        return
    if isinstance(node, HParam):
        if not allow_h:
            raise _error(ExpressionTypeError, "h is not allowed here", node)
        return
    if isinstance(node, Name):
        if node.name not in coordinates:
            raise _error(UnresolvedNameError, f"unknown coordinate {node.name!r}", node)
        return
    if isinstance(node, Deriv):
        raise _error(ExpressionTypeError, f"d/d{node.coordinate} cannot appear inside a function",
                     node)
    if isinstance(node, Neg):
        check_function(node.operand, coordinates, allow_h)
        return
    if isinstance(node, Call):
        if node.function == "log":
            raise _error(ExpressionTypeError, "log is only defined on series in U(g)", node)
        check_function(node.args[0], coordinates, allow_h)
        return
    if node.op == "⊗":
        raise _error(ArityError, "tensor products are not functions", node)
    check_function(node.left, coordinates, allow_h)
    if node.op == "^":
        _check_exponent(node)
    elif node.op == "/":
        _check_divisor(node)
    else:
        check_function(node.right, coordinates, allow_h)


def operator_sort(node: Node, coordinates: Sequence[str]) -> str:
    """"D" for first-order operators, "F" for plain functions (potentials)."""
    if isinstance(node, Deriv):
        if node.coordinate not in coordinates:
            raise _error(UnresolvedNameError, f"unknown coordinate {node.coordinate!r}", node)
        return "D"
    if isinstance(node, Neg):
        return operator_sort(node.operand, coordinates)
    if isinstance(node, BinOp) and node.op in ("+", "-", "*"):
        left = operator_sort(node.left, coordinates)
        right = operator_sort(node.right, coordinates)
        if node.op == "*":
            if left == "D":
                raise _error(ExpressionTypeError, "coefficient functions must stand to the left "
                                                  "of d/d<coordinate>", node)
            return right
        return "D" if "D" in (left, right) else "F"
    if isinstance(node, BinOp) and node.op == "/":
        _check_divisor(node)
        return operator_sort(node.left, coordinates)
    check_function(node, coordinates)
    return "F"


def _equivalence_parts(node: Node, generators: Sequence[str],
                       coordinates: Sequence[str]) -> Tuple[bool, bool]:
    """(uses generators, uses coordinates)."""
    if isinstance(node, (Number, Imag, HParam)):
        return False, False
    if isinstance(node, Name):
        if node.name in generators:
            return True, False
        if node.name in coordinates:
            return False, True
        raise _error(UnresolvedNameError, f"unknown generator or coordinate {node.name!r}", node)
    if isinstance(node, Deriv):
        raise _error(ExpressionTypeError, "equivalence terms act through generators, "
                                          f"not d/d{node.coordinate}", node)
    if isinstance(node, Neg):
        return _equivalence_parts(node.operand, generators, coordinates)
    if isinstance(node, Call):
        check_function(node, coordinates)
        return False, True
    if node.op == "⊗":
        raise _error(ArityError, "equivalence terms are operators, not tensors", node)
    left = _equivalence_parts(node.left, generators, coordinates)
    if node.op == "^":
        _check_exponent(node)
        return left
    if node.op == "/":
        _check_divisor(node)
        return left
    right = _equivalence_parts(node.right, generators, coordinates)
    if node.op == "*" and left[0] and right[1]:
        raise _error(ExpressionTypeError, "coefficient functions must stand to the left of "
                                          "generators", node)
    return left[0] or right[0], left[1] or right[1]


class Resolver:
    r"""Walks the declarations once, in order, building the Scope."""

    def __init__(self) -> None:
        self.scope = Scope()

    def resolve(self, document: SpecDocument) -> Scope:
        for declaration in document.declarations:
            getattr(self, f"_resolve_{declaration.kind}")(declaration)
        for group in self.scope.groups.values():
            generators = self.scope.algebras[group.algebra].generators
            missing = [g for g in generators if g not in group.images]
            if missing:
                first = next(iter(group.images.values()))
                raise _error(UnresolvedNameError, f"action group {group.name} assigns no operator "
                                                  f"to {', '.join(missing)}", first)
        logger.debug(f"resolved {len(document)} declarations")
        return self.scope

    def _declare(self, table: Dict, name: str, node: Node, what: str) -> None:
        if name in RESERVED:
            raise _error(DuplicateNameError, f"{what} name {name!r} is reserved", node)
        if name in table:
            raise _error(DuplicateNameError, f"{what} {name!r} is already declared", node)

    def _lookup(self, table: Dict, name: Optional[str], node: Node, what: str):
        if name not in table:
            raise _error(UnresolvedNameError, f"unknown {what} {name!r}", node)
        return table[name]

    def _resolve_liealgebra(self, decl: LieAlgebraDecl) -> None:
        self._declare(self.scope.algebras, decl.name, decl, "liealgebra")
        seen = set()
        for generator in decl.generators:
            if generator in RESERVED or generator in seen:
                raise _error(DuplicateNameError, f"generator name {generator!r} is reserved or "
                                                 f"repeated", decl)
            seen.add(generator)
        pairs = set()
        for rule in decl.brackets:
            for name in (rule.left, rule.right):
                if name not in decl.generators:
                    raise _error(UnresolvedNameError, f"unknown generator {name!r}", rule)
            if (rule.left, rule.right) in pairs or (rule.right, rule.left) in pairs:
                raise _error(DuplicateNameError, f"bracket [{rule.left},{rule.right}] is given "
                                                 f"twice", rule)
            pairs.add((rule.left, rule.right))
            _lie_degree(rule.value, decl.generators)
        self.scope.algebras[decl.name] = decl
        self.scope.latest_algebra = decl.name

    def _resolve_model(self, decl: ModelDecl) -> None:
        if decl.dim < 1:
            raise _error(ExpressionTypeError, f"model dimension must be positive, got {decl.dim}",
                         decl)
        self._declare(self.scope.models, decl.label, decl, "model")
        self.scope.models[decl.label] = decl
        self.scope.latest_model = decl

    def _resolve_action(self, decl: ActionDecl) -> None:
        group = self.scope.groups.get(decl.group_name)
        if group is None:
            if self.scope.latest_algebra is None:
                raise _error(UnresolvedNameError, "action declared before any liealgebra", decl)
            if self.scope.latest_model is None:
                raise _error(UnresolvedNameError, "action declared before any model", decl)
            group = GroupBinding(decl.group_name, self.scope.latest_algebra,
                                 self.scope.latest_model)
            self.scope.groups[group.name] = group
        generators = self.scope.algebras[group.algebra].generators
        if decl.generator not in generators:
            raise _error(UnresolvedNameError, f"unknown generator {decl.generator!r} of "
                                              f"{group.algebra}", decl)
        if decl.generator in group.images:
            raise _error(DuplicateNameError, f"generator {decl.generator} already acts in group "
                                             f"{group.name}", decl)
        operator_sort(decl.value, coordinates_of(group.model))
        group.images[decl.generator] = decl

    def _resolve_twist(self, decl: TwistDecl) -> None:
        self._declare(self.scope.twists, decl.name, decl, "twist")
        algebra = decl.algebra or self.scope.latest_algebra
        if algebra is None:
            raise _error(UnresolvedNameError, "twist declared before any liealgebra", decl)
        generators = self._lookup(self.scope.algebras, algebra, decl, "liealgebra").generators
        if decl.value is not None:
            arity = tensor_arity(decl.value, generators)
            if arity not in (0, 2):
                raise _error(ArityError, f"twist must have tensor arity 2, got {arity}", decl.value)
        else:
            for entry in decl.series:
                for sub in walk(entry):
                    if isinstance(sub, HParam):
                        raise _error(ExpressionTypeError, "series entries must not contain h", sub)
                arity = tensor_arity(entry, generators)
                if arity not in (0, 2):
                    raise _error(ArityError, f"twist coefficient must have tensor arity 2, got "
                                             f"{arity}", entry)
        self.scope.twists[decl.name] = decl
        self.scope.twist_algebras[decl.name] = algebra

    def _resolve_star(self, decl: StarDecl) -> None:
        self._declare(self.scope.stars, decl.name, decl, "star")
        self._lookup(self.scope.twists, decl.twist, decl, "twist")
        group = self._lookup(self.scope.groups, decl.group, decl, "action group")
        algebra = self.scope.twist_algebras[decl.twist]
        if algebra != group.algebra:
            raise _error(ExpressionTypeError, f"twist {decl.twist} is over {algebra}, action group "
                                              f"{decl.group} over {group.algebra}", decl)
        self.scope.stars[decl.name] = decl

    def _resolve_module(self, decl: ModuleDecl) -> None:
        self._declare(self.scope.modules, decl.name, decl, "module")
        self._lookup(self.scope.stars, decl.star, decl, "star")
        base = self.scope.group_of_star(decl.star)
        for role in (decl.sections, decl.left, decl.right):
            if role is None:
                continue
            group = self._lookup(self.scope.groups, role, decl, "action group")
            if group.algebra != base.algebra or group.model != base.model:
                raise _error(ExpressionTypeError, f"action group {role} does not share the Lie "
                                                  f"algebra and model of star {decl.star}", decl)
        self.scope.modules[decl.name] = decl

    def _resolve_equivalence(self, decl: EquivalenceDecl) -> None:
        self._declare(self.scope.equivalences, decl.name, decl, "equivalence")
        self._lookup(self.scope.stars, decl.star, decl, "star")
        group = self.scope.group_of_star(decl.star)
        generators = self.scope.algebras[group.algebra].generators
        for term in decl.terms:
            _equivalence_parts(term, generators, coordinates_of(group.model))
        self.scope.equivalences[decl.name] = decl

    def _resolve_bundle(self, decl: BundleDecl) -> None:
        self._declare(self.scope.bundles, decl.label, decl, "bundle")
        for component in (decl.A_x, decl.A_y):
            if component is not None:
                check_function(component, BUNDLE_COORDINATES, allow_h=False)
        self.scope.bundles[decl.label] = decl


def resolve(document: SpecDocument) -> Scope:
    return Resolver().resolve(document)

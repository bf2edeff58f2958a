"""
Turns a resolved document into runtime objects: Lie algebras, function
models, action assignments, twists, star products, deformed modules,
equivalence maps and line bundles. Everything is built lazily and cached.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from twistkit.chern import ConnectionT2, LineBundleT2, TrigPolynomial, curvature_offset
from twistkit.dsl.ast import (BinOp, Call, Deriv, HParam, Imag, Name, Neg, Node, Number,
                              SpecDocument, walk)
from twistkit.dsl.resolver import Scope, resolve
from twistkit.errors import DomainError, StructuralError
from twistkit.models import (ActionAssignment, FunctionElement, FunctionModel, SectionAction,
                             VectorField, make_model, pointwise_mul)
from twistkit.modules import DeformedModule, EquivariantBimodule
from twistkit.scalars import DEFAULT_ORDER, I, ONE, ZERO, Scalar, TruncatedSeries, exp_series, \
    log_series, series_invert, series_mul
from twistkit.star import EquivalenceMap, StarAlgebra
from twistkit.twist import Twist, build_exponential_twist, gauge_normalize
from twistkit.uea import LieAlgebraSpec, TensorElement, UEAElement, tensor

logger = logging.getLogger(__name__)

Linear = Tuple[Dict[str, Scalar], Scalar]


def _arity(value) -> int:
    if isinstance(value, UEAElement):
        return 1
    if isinstance(value, TensorElement):
        return value.arity
    return 0


def _unit(spec: LieAlgebraSpec, arity: int):
    return UEAElement.one(spec) if arity == 1 else TensorElement.one(spec, arity)


def lift(series: TruncatedSeries, arity: int, spec: LieAlgebraSpec) -> TruncatedSeries:
    """Embed a scalar series as a multiple of the unit of U(g)^{(x)arity}."""
    current = _arity(series.head)
    if current == arity or arity == 0:
        return series
    if current:
        raise StructuralError(f"cannot lift arity {current} to {arity}")
    unit = _unit(spec, arity)
    return series.map(lambda c: unit * c)


def tensor_series(a: TruncatedSeries, b: TruncatedSeries, spec: LieAlgebraSpec) -> TruncatedSeries:
    """Cauchy product with the tensor product on coefficients."""
    a = lift(a, max(_arity(a.head), 1), spec)
    b = lift(b, max(_arity(b.head), 1), spec)
    arity = _arity(a.head) + _arity(b.head)
    coeffs = []
    for k in range(a.order + 1):
        total = TensorElement.zero(spec, arity)
        for i in range(k + 1):
            if a.coeffs[i].is_zero() or b.coeffs[k - i].is_zero():
                continue
            total = total + tensor(a.coeffs[i], b.coeffs[k - i])
        coeffs.append(total)
    return TruncatedSeries(coeffs, a.order)


def linear_form(node: Node, names: Sequence[str]) -> Linear:
    r"""Affine-linear expression sum_n c_n name_n + c with exact scalars.

    :raises DomainError: if the expression is not linear in `names`
    """
    if isinstance(node, Number):
        return {}, Scalar(node.value)
    if isinstance(node, Imag):
        return {}, I
    if isinstance(node, Name) and node.name in names:
        return {node.name: ONE}, ZERO
    if isinstance(node, Neg):
        terms, constant = linear_form(node.operand, names)
        return {n: -c for n, c in terms.items()}, -constant
    if isinstance(node, BinOp):
        left = linear_form(node.left, names)
        if node.op == "^":
            if left[0]:
                raise DomainError("power of a non-constant term in a linear form")
            return {}, left[1] ** int(node.right.value)
        right = linear_form(node.right, names)
        if node.op in ("+", "-"):
            sign = ONE if node.op == "+" else -ONE
            terms = dict(left[0])
            for n, c in right[0].items():
                terms[n] = terms.get(n, ZERO) + sign * c
            return {n: c for n, c in terms.items() if not c.is_zero()}, left[1] + sign * right[1]
        if node.op == "/":
            factor = right[1].inverse()
            return {n: c * factor for n, c in left[0].items()}, left[1] * factor
        if node.op == "*":
            if left[0] and right[0]:
                raise DomainError("product of two non-constant terms in a linear form")
            (terms, _), factor = (left, right[1]) if left[0] else (right, left[1])
            return {n: c * factor for n, c in terms.items() if not (c * factor).is_zero()}, \
                left[1] * right[1]
    raise DomainError(f"expression at {node.line}:{node.column} is not linear in {list(names)}")


def scalar_value(node: Node) -> Scalar:
    return linear_form(node, ())[1]


class SpecBuilder:
    r"""Builds the objects declared in a document at truncation order `order`.

    :param document: Parsed document; resolved here if `scope` is omitted.
    :param order:    Truncation order N of every series.
    """

    def __init__(self, document: SpecDocument, order: int = DEFAULT_ORDER,
                 scope: Optional[Scope] = None) -> None:
        self.document = document
        self.order = order
        self.scope = scope or resolve(document)
        self._algebras: Dict[str, LieAlgebraSpec] = {}
        self._models: Dict[str, FunctionModel] = {}
        self._groups: Dict[str, ActionAssignment] = {}
        self._twists: Dict[str, Twist] = {}
        self._normalized: Dict[str, Twist] = {}
        self._stars: Dict[Tuple[str, bool], StarAlgebra] = {}
        self._modules: Dict[Tuple[str, bool], DeformedModule] = {}
        self._equivalences: Dict[str, EquivalenceMap] = {}
        self._bundles: Dict[str, LineBundleT2] = {}

    # Lie algebras and models

    def algebra(self, name: str) -> LieAlgebraSpec:
        if name not in self._algebras:
            decl = self.scope.algebras[name]
            rules = {}
            for rule in decl.brackets:
                terms, constant = linear_form(rule.value, decl.generators)
                if not constant.is_zero():
                    raise DomainError(f"[{rule.left},{rule.right}] has a constant term {constant}")
                rules[(rule.left, rule.right)] = terms
            self._algebras[name] = LieAlgebraSpec.from_brackets(decl.generators, rules)
        return self._algebras[name]

    def model(self, label: str) -> FunctionModel:
        if label not in self._models:
            decl = self.scope.models[label]
            self._models[label] = make_model(decl.model_kind, decl.dim, self.order)
        return self._models[label]

    # functions and operators

    def function(self, node: Node, model: FunctionModel) -> FunctionElement:
        if isinstance(node, Number):
            return model.constant(Scalar(node.value))
        if isinstance(node, Imag):
            return model.constant(I)
        if isinstance(node, HParam):
            return model.constant(TruncatedSeries.h(model.order))
        if isinstance(node, Name):
            return model.coordinate(model.coordinate_index(node.name))
        if isinstance(node, Neg):
            return -self.function(node.operand, model)
        if isinstance(node, Call):
            return self._periodic(node, model)
        if isinstance(node, BinOp):
            left = self.function(node.left, model)
            if node.op == "^":
                result = model.one()
                for _ in range(int(node.right.value)):
                    result = pointwise_mul(result, left)
                return result
            if node.op == "/":
                return left * scalar_value(node.right).inverse()
            right = self.function(node.right, model)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return pointwise_mul(left, right)
        raise StructuralError(f"{node!r} is not a function expression")

    def _periodic(self, node: Call, model: FunctionModel) -> FunctionElement:
        """exp(i<m,x>), sin(<m,x>) and cos(<m,x>) for integer m on the torus."""
        if model.kind != "torus":
            raise DomainError(f"{node.function} is not a polynomial on {model}")
        names = model.coordinate_names
        terms, constant = linear_form(node.args[0], names)
        if not constant.is_zero():
            raise DomainError(f"{node.function} argument has a constant term {constant}")
        if node.function == "exp":
            # exp(i<m,x>): every coefficient is i times an integer
            terms = {n: c * (-I) for n, c in terms.items()}
        mode = []
        for n in names:
            c = terms.get(n, ZERO)
            if c.im != 0 or c.re.denominator != 1:
                raise DomainError(f"{node.function} argument at {node.line}:{node.column} does not "
                                  f"have an integer frequency vector")
            mode.append(int(c.re))
        positive = model.basis_element(tuple(mode))
        if node.function == "exp":
            return positive
        negative = model.basis_element(tuple(-m for m in mode))
        if node.function == "cos":
            return (positive + negative) * Scalar(Fraction(1, 2))
        return (positive - negative) * Scalar(0, Fraction(-1, 2))

    def operator(self, node: Node, model: FunctionModel) -> VectorField:
        """First-order operator sum a_j d/dx_j + phi."""
        if not any(isinstance(sub, Deriv) for sub in walk(node)):
            return VectorField(model, [model.zero()] * model.n, self.function(node, model))
        if isinstance(node, Deriv):
            return VectorField.partial(model, model.coordinate_index(node.coordinate))
        if isinstance(node, Neg):
            return self.operator(node.operand, model).scaled(-ONE)
        if node.op == "+":
            return self.operator(node.left, model) + self.operator(node.right, model)
        if node.op == "-":
            return self.operator(node.left, model) + self.operator(node.right, model).scaled(-ONE)
        if node.op == "*":
            return self.operator(node.right, model).scaled(self.function(node.left, model))
        if node.op == "/":
            return self.operator(node.left, model).scaled(scalar_value(node.right).inverse())
        raise StructuralError(f"{node!r} is not a first-order operator")

    def group(self, name: str) -> ActionAssignment:
        if name not in self._groups:
            binding = self.scope.groups[name]
            spec = self.algebra(binding.algebra)
            model = self.model(binding.model.label)
            images = [self.operator(binding.images[g].value, model) for g in spec.names]
            cls = ActionAssignment if all(image.is_derivation for image in images) \
                else SectionAction
            self._groups[name] = cls(spec, model, images, name=name)
            logger.debug(f"built {cls.__name__} {name} on {model}")
        return self._groups[name]

    # twists

    def tensor_expression(self, node: Node, spec: LieAlgebraSpec) -> TruncatedSeries:
        order = self.order
        if isinstance(node, Number):
            return TruncatedSeries.scalar(Scalar(node.value), order)
        if isinstance(node, Imag):
            return TruncatedSeries.scalar(I, order)
        if isinstance(node, HParam):
            return TruncatedSeries.h(order)
        if isinstance(node, Name):
            return TruncatedSeries.constant(UEAElement.generator(spec, node.name), order)
        if isinstance(node, Neg):
            return -self.tensor_expression(node.operand, spec)
        if isinstance(node, Call):
            argument = self.tensor_expression(node.args[0], spec)
            return exp_series(argument) if node.function == "exp" else log_series(argument)
        left = self.tensor_expression(node.left, spec)
        if node.op == "^":
            return left ** int(node.right.value)
        if node.op == "/":
            return series_mul(left, series_invert(TruncatedSeries.scalar(scalar_value(node.right),
                                                                         order)))
        right = self.tensor_expression(node.right, spec)
        if node.op == "⊗":
            return tensor_series(left, right, spec)
        arity = max(_arity(left.head), _arity(right.head))
        left, right = lift(left, arity, spec), lift(right, arity, spec)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return series_mul(left, right)

    def twist(self, name: str) -> Twist:
        if name not in self._twists:
            decl = self.scope.twists[name]
            spec = self.algebra(self.scope.twist_algebras[name])
            if decl.series is not None:
                entries = list(decl.series)
                if len(entries) > self.order + 1:
                    logger.info(f"twist {name}: dropping {len(entries) - self.order - 1} "
                                f"coefficients beyond order {self.order}")
                    entries = entries[:self.order + 1]
                coeffs = [lift(self.tensor_expression(e, spec), 2, spec).head for e in entries]
                twist = Twist(TruncatedSeries(coeffs, self.order), name=name)
            elif isinstance(decl.value, Call) and decl.value.function == "exp":
                exponent = lift(self.tensor_expression(decl.value.args[0], spec), 2, spec)
                twist = build_exponential_twist(exponent, name=name)
            else:
                twist = Twist(lift(self.tensor_expression(decl.value, spec), 2, spec), name=name)
            self._twists[name] = twist
            logger.debug(f"built twist {name} at order {self.order}")
        return self._twists[name]

    def normalized_twist(self, name: str) -> Twist:
        """The twist gauge-normalized to F_0 = 1 (x) 1."""
        if name not in self._normalized:
            self._normalized[name] = gauge_normalize(self.twist(name))
        return self._normalized[name]

    # star products, modules, equivalences

    def star(self, name: str, require_valid_twist: bool = True) -> StarAlgebra:
        key = (name, require_valid_twist)
        if key not in self._stars:
            decl = self.scope.stars[name]
            self._stars[key] = StarAlgebra(self.group(decl.group), self.normalized_twist(decl.twist),
                                           name=name, require_valid_twist=require_valid_twist)
        return self._stars[key]

    def module(self, name: str, require_valid_twist: bool = True) -> DeformedModule:
        key = (name, require_valid_twist)
        if key not in self._modules:
            decl = self.scope.modules[name]
            star = self.scope.stars[decl.star]
            left = decl.left or star.group
            base = EquivariantBimodule(self.group(left), self.group(decl.sections or left),
                                       self.group(decl.right or left), name=name)
            self._modules[key] = DeformedModule(base, self.normalized_twist(star.twist),
                                                require_valid_twist=require_valid_twist)
        return self._modules[key]

    def operator_terms(self, node: Node, assign: ActionAssignment) -> List[Tuple[FunctionElement,
                                                                                UEAElement]]:
        """Coefficient functions times PBW words, as (a, u) pairs."""
        model, spec = assign.model, assign.spec
        if not any(isinstance(sub, Name) and sub.name in spec.names for sub in walk(node)):
            return [(self.function(node, model), UEAElement.one(spec))]
        if isinstance(node, Name):
            return [(model.one(), UEAElement.generator(spec, node.name))]
        if isinstance(node, Neg):
            return [(-a, u) for a, u in self.operator_terms(node.operand, assign)]
        left = self.operator_terms(node.left, assign)
        if node.op == "^":
            result = [(model.one(), UEAElement.one(spec))]
            for _ in range(int(node.right.value)):
                result = [(pointwise_mul(a1, a2), u1 * u2) for a1, u1 in result for a2, u2 in left]
            return result
        if node.op == "/":
            factor = scalar_value(node.right).inverse()
            return [(a * factor, u) for a, u in left]
        right = self.operator_terms(node.right, assign)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left + [(-a, u) for a, u in right]
        if node.op == "*":
            return [(pointwise_mul(a1, a2), u1 * u2) for a1, u1 in left for a2, u2 in right]
        raise StructuralError(f"{node!r} is not an operator expression")

    def equivalence(self, name: str) -> EquivalenceMap:
        if name not in self._equivalences:
            decl = self.scope.equivalences[name]
            assign = self.group(self.scope.stars[decl.star].group)
            terms = list(decl.terms)
            if len(terms) > self.order:
                logger.info(f"equivalence {name}: dropping {len(terms) - self.order} operators "
                            f"beyond order {self.order}")
                terms = terms[:self.order]
            self._equivalences[name] = EquivalenceMap(
                assign, [self.operator_terms(term, assign) for term in terms], name=name)
        return self._equivalences[name]

    # bundles

    def bundle(self, label: str) -> LineBundleT2:
        if label not in self._bundles:
            decl = self.scope.bundles[label]
            model = make_model("torus", 2, 0)
            components = [None if c is None else TrigPolynomial.from_fourier(self.function(c, model))
                          for c in (decl.A_x, decl.A_y)]
            connection = ConnectionT2(components[0], components[1], curvature_offset(decl.degree))
            self._bundles[label] = LineBundleT2(decl.degree, connection, name=label)
        return self._bundles[label]

"""
Lie algebra actions on function models by first-order differential operators.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from twistkit.errors import DomainError, StructuralError
from twistkit.models.model import (DEFAULT_CUTOFFS, FunctionElement, FunctionModel, Key,
                                   check_dimension, pointwise_mul)
from twistkit.report import Report, make_report
from twistkit.scalars import Scalar, TruncatedSeries
from twistkit.uea import LieAlgebraSpec, Monomial, TensorElement, UEAElement

logger = logging.getLogger(__name__)


class VectorField:
    r"""The operator f -> sum_j a_j d/dx_j f + phi f.

    With phi = 0 this is a derivation. On the torus the a_j must be
    constants so that Fourier polynomials stay closed under the action;
    polynomial coefficients are allowed on the affine model.
    """

    def __init__(self, model: FunctionModel, coefficients: Sequence[FunctionElement],
                 potential: Optional[FunctionElement] = None) -> None:
        if len(coefficients) != model.n:
            raise StructuralError(f"vector field on {model} needs {model.n} coefficients, "
                                  f"got {len(coefficients)}")
        for c in coefficients:
            model.require_same(c.model)
            if model.kind == "torus" and set(c.terms) - {model.unit_key}:
                raise DomainError(f"vector field coefficients on {model} must be constant, got {c}")
        if potential is not None:
            model.require_same(potential.model)
        self.model = model
        self.coefficients = tuple(coefficients)
        self.potential = potential if potential is not None and not potential.is_zero() else None

    @classmethod
    def partial(cls, model: FunctionModel, j: int) -> "VectorField":
        coefficients = [model.one() if i == j else model.zero() for i in range(model.n)]
        return cls(model, coefficients)

    @property
    def is_derivation(self) -> bool:
        return self.potential is None

    def derivation_part(self) -> "VectorField":
        return VectorField(self.model, self.coefficients)

    def apply(self, f: FunctionElement) -> FunctionElement:
        result = self.model.zero()
        for j, a in enumerate(self.coefficients):
            if a.is_zero():
                continue
            result = result + pointwise_mul(a, self.model.differentiate(f, j))
        if self.potential is not None:
            result = result + pointwise_mul(self.potential, f)
        return result

    def __add__(self, other: "VectorField") -> "VectorField":
        self.model.require_same(other.model)
        potential = self.potential if other.potential is None else \
            (other.potential if self.potential is None else self.potential + other.potential)
        return VectorField(self.model, [a + b for a, b in zip(self.coefficients, other.coefficients)],
                           potential)

    def scaled(self, factor: Union[Scalar, FunctionElement]) -> "VectorField":
        """Left multiplication by a scalar or a function."""
        mul = (lambda f: pointwise_mul(factor, f)) if isinstance(factor, FunctionElement) \
            else (lambda f: f * factor)
        return VectorField(self.model, [mul(a) for a in self.coefficients],
                           None if self.potential is None else mul(self.potential))

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.model == other.model and \
            self.coefficients == other.coefficients and self.potential == other.potential

    __hash__ = None

    def __str__(self) -> str:
        parts = [f"({a})*d/d{name}" for a, name in zip(self.coefficients, self.model.coordinate_names)
                 if not a.is_zero()]
        if self.potential is not None:
            parts.append(f"({self.potential})")
        return " + ".join(parts) if parts else "0"


class ActionAssignment:
    r"""Assigns a derivation of the function model to every generator of g.

    PBW monomials act by composition, rightmost generator first; results on
    basis functions are memoized.

    :param spec:   Lie algebra whose generators are represented.
    :param model:  Function model acted upon.
    :param images: One operator per generator, in declaration order.
    :param name:   Group label used by reports and the DSL.
    """
    allows_potentials = False

    def __init__(self, spec: LieAlgebraSpec, model: FunctionModel,
                 images: Sequence[VectorField], name: str = "default") -> None:
        if len(images) != spec.dim:
            raise StructuralError(f"action {name} assigns {len(images)} operators to "
                                  f"{spec.dim} generators")
        for index, image in enumerate(images):
            model.require_same(image.model)
            if not self.allows_potentials and not image.is_derivation:
                raise DomainError(f"generator {spec.names[index]} must act by a derivation, "
                                  f"got potential {image.potential}")
        self.spec = spec
        self.model = model
        self.images = tuple(images)
        self.name = name
        self._basis_cache: Dict[Tuple[Monomial, Key], FunctionElement] = {}

    def act_generator(self, i: int, f: FunctionElement) -> FunctionElement:
        if not 0 <= i < self.spec.dim:
            raise StructuralError(f"generator index {i} out of range")
        check_dimension(f.model, self.model.n, "act_generator")
        self.model.require_same(f.model)
        return self.images[i].apply(f)

    def represent_basis(self, monomial: Monomial, key: Key) -> FunctionElement:
        cached = self._basis_cache.get((monomial, key))
        if cached is None:
            if not monomial:
                cached = self.model.basis_element(key)
            else:
                cached = self.images[monomial[0]].apply(self.represent_basis(monomial[1:], key))
            self._basis_cache[(monomial, key)] = cached
        return cached

    def represent(self, u: UEAElement, f: FunctionElement) -> FunctionElement:
        if u.spec != self.spec:
            raise StructuralError("element and action belong to different Lie algebras")
        self.model.require_same(f.model)
        result = self.model.zero()
        for monomial, c in u.terms.items():
            for key, series in f.terms.items():
                result = result + self.represent_basis(monomial, key) * series * c
        return result

    def test_family(self) -> List[FunctionElement]:
        cutoff = DEFAULT_CUTOFFS.get(self.model.kind, 2)
        return [self.model.basis_element(key) for key in self.model.basis(cutoff)]

    def validate(self) -> Report:
        """[a(X_i), a(X_j)] == a([X_i, X_j]) on the test family, for i < j."""
        report = make_report("action", self.name)
        family = self.test_family()
        for i in range(self.spec.dim):
            for j in range(i + 1, self.spec.dim):
                for f in family:
                    lhs = self.act_generator(i, self.act_generator(j, f)) - \
                        self.act_generator(j, self.act_generator(i, f))
                    rhs = self.model.zero()
                    for k, c in self.spec.bracket(i, j).items():
                        rhs = rhs + self.act_generator(k, f) * c
                    if lhs != rhs:
                        names = self.spec.names
                        report.add_failure(None, f"[{names[i]},{names[j]}] not represented on "
                                                 f"{f}: commutator gives {lhs}, bracket gives {rhs}")
                        break
        if report.passed:
            report.details.append({"summary": f"Lie-homomorphism property holds on "
                                              f"{len(family)} test functions"})
        return report

    def require_valid(self) -> None:
        report = self.validate()
        if report.failed:
            raise DomainError(f"action {self.name} is not a Lie algebra homomorphism: "
                              f"{report.witnesses[0]}")

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_basis_cache"] = {}
        return state

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name} on {self.model})"


class SectionAction(ActionAssignment):
    r"""Generators act on sections of a trivial line bundle by D + phi
    (derivation plus multiplication by a potential)."""
    allows_potentials = True

    def potential(self, i: int) -> FunctionElement:
        image = self.images[i]
        return self.model.zero() if image.potential is None else image.potential


def act_generator(assign: ActionAssignment, i: int, f: FunctionElement) -> FunctionElement:
    return assign.act_generator(i, f)


def represent(assign: ActionAssignment, u: UEAElement, f: FunctionElement) -> FunctionElement:
    return assign.represent(u, f)


ActedTerm = Tuple[int, Scalar, Tuple[FunctionElement, ...]]


def tensor_act(assigns: Union[ActionAssignment, Sequence[ActionAssignment]],
               t: Union[TensorElement, TruncatedSeries],
               fs: Sequence[FunctionElement]) -> List[ActedTerm]:
    r"""Leg-wise action of a tensor (or a series of tensors) on a tuple of
    functions, as the formal sum of (h power, coefficient, result tuple).

    :param assigns: One action for all legs, or one per leg.
    """
    series = t if isinstance(t, TruncatedSeries) else TruncatedSeries.constant(t, 0)
    arity = series.head.arity
    if len(fs) != arity:
        raise StructuralError(f"tensor of arity {arity} cannot act on {len(fs)} functions")
    if isinstance(assigns, ActionAssignment):
        assigns = [assigns] * arity
    if len(assigns) != arity:
        raise StructuralError(f"{len(assigns)} actions given for arity {arity}")
    acted: List[ActedTerm] = []
    for k, tensor_k in enumerate(series.coeffs):
        for legs, c in tensor_k.sorted_terms():
            images = tuple(a.represent(UEAElement._raw(a.spec, {leg: Scalar(1)}), f)
                           for a, leg, f in zip(assigns, legs, fs))
            acted.append((k, c, images))
    return acted


def contract(acted: Sequence[ActedTerm], combine, model: FunctionModel) -> FunctionElement:
    """sum h^k c combine(*images) over the output of tensor_act."""
    result = model.zero()
    for k, c, images in acted:
        result = result + combine(*images).h_shift(k) * c
    return result


def poisson_bracket(f: FunctionElement, g: FunctionElement) -> FunctionElement:
    """{f, g} = d_x f d_y g - d_y f d_x g for the standard form dx^dy."""
    model = f.model
    model.require_same(g.model)
    check_dimension(model, 2, "poisson_bracket")
    return pointwise_mul(model.differentiate(f, 0), model.differentiate(g, 1)) - \
        pointwise_mul(model.differentiate(f, 1), model.differentiate(g, 0))


def poisson_bracket_T2(f: FunctionElement, g: FunctionElement) -> FunctionElement:
    if f.model.kind != "torus":
        raise StructuralError(f"poisson_bracket_T2 needs the torus model, got {f.model}")
    return poisson_bracket(f, g)

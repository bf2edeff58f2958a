"""
Line bundles over the 2-torus [0, 2pi)^2 with connections, Chern numbers by
periodic trapezoid quadrature, and flat connections coming from equivariant
actions on sections of the trivial bundle.

Convention: nabla_j = d_j + A_j with complex A_j, curvature
F_xy = d_x A_y - d_y A_x + i c0, and c1 = Re[(i / 2pi) * integral of F_xy].
A degree-d bundle carries the constant offset c0 = -d / 2pi.
"""
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from twistkit.errors import DomainError, StructuralError
from twistkit.models import (FourierFunction, FunctionElement, SectionAction, TorusModel,
                             VectorField, pointwise_mul)
from twistkit.report import Report, make_report
from twistkit.uea import LieAlgebraSpec

logger = logging.getLogger(__name__)

CHERN_NORMALIZATION = 1j / (2 * np.pi)
DEFAULT_GRID = 64
DEFAULT_TOLERANCE = 1e-10

Mode = Tuple[int, int]


def periodic_grid(n: int) -> Tuple[np.ndarray, np.ndarray]:
    points = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return np.meshgrid(points, points, indexing="ij")


class TrigPolynomial:
    r"""Complex trigonometric polynomial sum_m c_m exp(i <m, x>) on T^2.

    :param coefficients: {(m1, m2): complex}, integer modes only.
    :param exact:        Exact FourierFunction this was built from, if any.
    """

    def __init__(self, coefficients: Optional[Dict[Mode, complex]] = None,
                 exact: Optional[FourierFunction] = None) -> None:
        cleaned: Dict[Mode, complex] = {}
        for mode, value in (coefficients or {}).items():
            if len(mode) != 2 or not all(isinstance(m, (int, np.integer)) for m in mode):
                raise DomainError(f"mode {mode} is not an integer vector, the function is not "
                                  f"periodic on T^2")
            value = complex(value)
            if value != 0:
                cleaned[(int(mode[0]), int(mode[1]))] = value
        self.coefficients = cleaned
        self.exact = exact

    @classmethod
    def from_fourier(cls, f: FunctionElement) -> "TrigPolynomial":
        if f.model.kind != "torus" or f.model.n != 2:
            raise DomainError(f"{f} is not a Fourier polynomial on T^2, the periodic-coefficient "
                              f"precondition fails")
        if not f.is_h_constant():
            raise DomainError(f"connection component {f} depends on h")
        return cls({key: complex(c.head) for key, c in f.terms.items()}, exact=f)

    @classmethod
    def zero(cls) -> "TrigPolynomial":
        return cls({})

    def derivative(self, j: int) -> "TrigPolynomial":
        return TrigPolynomial({m: 1j * m[j] * c for m, c in self.coefficients.items()})

    def evaluate(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        values = np.zeros(X.shape, dtype=complex)
        for (m1, m2), c in self.coefficients.items():
            values += c * np.exp(1j * (m1 * X + m2 * Y))
        return values

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        coefficients = dict(self.coefficients)
        for m, c in other.coefficients.items():
            coefficients[m] = coefficients.get(m, 0) + c
        return TrigPolynomial(coefficients)

    def __neg__(self) -> "TrigPolynomial":
        return TrigPolynomial({m: -c for m, c in self.coefficients.items()})

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-other)

    def __repr__(self) -> str:
        return f"TrigPolynomial({self.coefficients})"


class ConnectionT2:
    r"""Connection 1-form A = A_x dx + A_y dy plus the constant curvature
    offset i c0 dx^dy of a topologically nontrivial bundle."""

    def __init__(self, A_x: Optional[TrigPolynomial] = None, A_y: Optional[TrigPolynomial] = None,
                 c0: float = 0.0) -> None:
        for component in (A_x, A_y):
            if component is not None and not isinstance(component, TrigPolynomial):
                raise DomainError(f"connection component {component!r} is not a trigonometric "
                                  f"polynomial")
        self.A_x = A_x or TrigPolynomial.zero()
        self.A_y = A_y or TrigPolynomial.zero()
        self.c0 = float(c0)

    def curvature(self) -> TrigPolynomial:
        """F_xy without the offset."""
        return self.A_y.derivative(0) - self.A_x.derivative(1)

    def curvature_on_grid(self, n: int) -> np.ndarray:
        X, Y = periodic_grid(n)
        return self.curvature().evaluate(X, Y) + 1j * self.c0

    def gauge_transform(self, phi: TrigPolynomial) -> "ConnectionT2":
        """A + d phi."""
        return ConnectionT2(self.A_x + phi.derivative(0), self.A_y + phi.derivative(1), self.c0)

    def is_flat_form(self) -> bool:
        return self.c0 == 0 and not self.curvature().coefficients


class LineBundleT2:
    r"""Complex line bundle over T^2 of declared degree with a connection."""

    def __init__(self, degree: int, connection: Optional[ConnectionT2] = None, name: str = "L") -> None:
        self.degree = int(degree)
        self.connection = connection or ConnectionT2()
        self.name = name

    def __repr__(self) -> str:
        return f"LineBundleT2({self.name}, degree={self.degree})"


def chern_number(L: LineBundleT2, grid: int = DEFAULT_GRID) -> float:
    """(i / 2pi) * integral of the curvature, periodic trapezoid rule on a grid x grid mesh."""
    if grid < 1:
        raise StructuralError(f"grid size must be positive, got {grid}")
    F = L.connection.curvature_on_grid(grid)
    integral = F.mean() * (2 * np.pi) ** 2
    # + 0.0 turns a negative zero into 0.0
    return float(np.real(CHERN_NORMALIZATION * integral)) + 0.0


def curvature_offset(degree: int) -> float:
    return -degree / (2 * np.pi)


def standard_connection(d: int) -> LineBundleT2:
    """Constant-curvature representative of the degree-d bundle."""
    return LineBundleT2(d, ConnectionT2(c0=curvature_offset(d)), name=f"O({d})")


def chern_report(L: LineBundleT2, grid: int = DEFAULT_GRID,
                 tolerance: float = DEFAULT_TOLERANCE) -> Report:
    """Chern number against the declared degree, with a grid-doubling check."""
    report = make_report("chern", L.name)
    c1 = chern_number(L, grid)
    refined = chern_number(L, 2 * grid)
    error = abs(c1 - L.degree)
    report.details.append({"summary": f"c1 = {c1:.12f} (target {L.degree}, |err| < {tolerance:g})",
                           "grid": grid})
    if error >= tolerance:
        report.add_failure(None, f"c1 = {c1:.12f} differs from degree {L.degree}")
    if abs(refined - c1) >= tolerance:
        report.add_failure(None, f"quadrature not converged: {c1:.12f} on {grid}, "
                                 f"{refined:.12f} on {2 * grid}")
    return report


def _frame_generators(action: SectionAction) -> Tuple[int, int]:
    model = action.model
    frame = []
    for j in range(2):
        partial = VectorField.partial(model, j)
        match = [i for i, image in enumerate(action.images) if image.derivation_part() == partial]
        if not match:
            raise DomainError(f"no generator acts as d/d{model.coordinate_names[j]} on sections")
        frame.append(match[0])
    return frame[0], frame[1]


def flat_connection_from_action(action: SectionAction, cutoff: int = 2) -> LineBundleT2:
    """nabla_{a d_x + b d_y} s = a (d_x |> s) + b (d_y |> s) for an action on
    sections of the trivial bundle over T^2.

    :raises DomainError: if a coefficient is not periodic, Leibniz fails or
        the two operators do not commute
    """
    model = action.model
    if model.kind != "torus":
        offending = [str(action.potential(i)) for i in range(action.spec.dim)
                     if not action.potential(i).is_zero()]
        raise DomainError(f"periodic-coefficient precondition fails: operators on {model} with "
                          f"potentials {offending or ['0']} are not defined on T^2")
    if model.n != 2:
        raise StructuralError(f"flat connections are built on torus(2), got {model}")
    gx, gy = _frame_generators(action)
    family = [model.basis_element(key) for key in model.basis(cutoff)]
    for j, g in ((0, gx), (1, gy)):
        for f in family:
            for s in family:
                lhs = action.act_generator(g, pointwise_mul(f, s))
                rhs = pointwise_mul(model.differentiate(f, j), s) + \
                    pointwise_mul(f, action.act_generator(g, s))
                if lhs != rhs:
                    raise DomainError(f"Leibniz rule nabla(fs) = d(f)s + f nabla(s) fails for "
                                      f"d/d{model.coordinate_names[j]}, f = {f}, s = {s}")
    for s in family:
        commutator = action.act_generator(gx, action.act_generator(gy, s)) - \
            action.act_generator(gy, action.act_generator(gx, s))
        if not commutator.is_zero():
            raise DomainError(f"[nabla_x, nabla_y] != 0 on s = {s}: {commutator}")
    one = model.one()
    A_x = TrigPolynomial.from_fourier(action.act_generator(gx, one) - model.differentiate(one, 0))
    A_y = TrigPolynomial.from_fourier(action.act_generator(gy, one) - model.differentiate(one, 1))
    logger.debug(f"flat connection from {action.name}: A_x = {A_x}, A_y = {A_y}")
    return LineBundleT2(0, ConnectionT2(A_x, A_y), name=action.name)


def equivariant_structure(L: LineBundleT2, order: int = 0) -> LineBundleT2:
    """Section action d_j + A_j realising L's connection, fed through
    flat_connection_from_action.

    :raises DomainError: for degree != 0 (the potential would be the
        non-periodic i c0 x) and for non-flat or inexact connections
    """
    connection = L.connection
    if L.degree != 0 or connection.c0 != 0:
        raise DomainError(f"bundle {L.name} of degree {L.degree} needs the potential "
                          f"i*({connection.c0:.6f})*x in d/dy, which is not periodic; "
                          f"periodic-coefficient precondition fails")
    model = TorusModel(2, order)
    potentials = []
    for component in (connection.A_x, connection.A_y):
        if component.exact is not None:
            potentials.append(component.exact)
        elif not component.coefficients:
            potentials.append(model.zero())
        else:
            raise DomainError(f"connection of {L.name} has no exact Fourier form")
    spec = LieAlgebraSpec.abelian(["X", "Y"])
    images = [VectorField(model, VectorField.partial(model, j).coefficients,
                          _rebase(potentials[j], model))
              for j in range(2)]
    return flat_connection_from_action(SectionAction(spec, model, images, name=L.name))


def _rebase(f: FunctionElement, model: TorusModel) -> FunctionElement:
    if f.model == model:
        return f
    return model.element({key: c.head for key, c in f.terms.items()})


def check_dichotomy(L: LineBundleT2, grid: int = DEFAULT_GRID,
                    tolerance: float = DEFAULT_TOLERANCE) -> Report:
    """Either L admits no equivariant structure, or the one it admits has c1 = 0."""
    report = make_report("equivariance-dichotomy", L.name)
    try:
        flat = equivariant_structure(L)
    except DomainError as e:
        report.details.append({"summary": f"no equivariant structure: {e}", "accepted": False})
        return report
    c1 = chern_number(flat, grid)
    report.details.append({"summary": f"equivariant structure accepted, c1 = {c1:.12f}",
                           "accepted": True})
    if abs(c1) >= tolerance:
        report.add_failure(None, f"accepted equivariant structure has c1 = {c1:.12f}")
    return report

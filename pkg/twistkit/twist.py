"""
Drinfel'd twists F in (U(g) (x) U(g))[[h]]: counitality, the cocycle
condition, twisted coproducts and gauge normalization.

Convention: (F (x) 1)(Delta (x) Id)(F) = (1 (x) F)(Id (x) Delta)(F), and the
twisted coproduct is Delta_F(x) = F Delta(x) F^{-1}.
"""
import logging
from typing import Iterable, List, Optional

from twistkit.errors import DomainError, StructuralError
from twistkit.report import Report, make_report
from twistkit.scalars import TruncatedSeries, exp_series, series_invert, series_mul
from twistkit.uea import (LieAlgebraSpec, TensorElement, UEAElement, coproduct,
                          coproduct_on_leg, counit_on_leg, tensor_mul)
from twistkit.utils import timer

logger = logging.getLogger(__name__)


class Twist:
    r"""Truncated series F = sum_k h^k F_k of 2-tensors with invertible F_0.

    :param series: TruncatedSeries whose coefficients are arity-2 TensorElements.
    :param name:   Label used in reports.
    """

    def __init__(self, series: TruncatedSeries, name: str = "F") -> None:
        head = series.head
        if not isinstance(head, TensorElement) or head.arity != 2:
            raise StructuralError("a twist needs arity-2 tensor coefficients")
        for c in series.coeffs:
            if c.arity != 2 or c.spec != head.spec:
                raise StructuralError("twist coefficients must share arity 2 and one Lie algebra")
        if head.is_zero():
            raise DomainError("twist has zero h^0 coefficient, it is not invertible")
        self.series = series
        self.spec: LieAlgebraSpec = head.spec
        self.name = name
        self._inverse: Optional[TruncatedSeries] = None

    @property
    def order(self) -> int:
        return self.series.order

    def coefficient(self, k: int) -> TensorElement:
        return self.series.coefficient(k)

    @property
    def is_normalized(self) -> bool:
        return self.series.head == TensorElement.one(self.spec, 2)

    def require_normalized(self) -> None:
        if not self.is_normalized:
            raise DomainError(f"twist {self.name} is not normalized, F_0 = {self.series.head}; "
                              f"run gauge_normalize first")

    def __eq__(self, other) -> bool:
        return isinstance(other, Twist) and self.series == other.series

    __hash__ = None

    def __str__(self) -> str:
        return str(self.series)

    def __repr__(self) -> str:
        return f"Twist({self.name}, order={self.order})"


def trivial_twist(spec: LieAlgebraSpec, order: int) -> Twist:
    return Twist(TruncatedSeries.constant(TensorElement.one(spec, 2), order), name="1")


def build_exponential_twist(exponent: TruncatedSeries, name: str = "F") -> Twist:
    """F = exp(exponent) mod h^{N+1}.

    :raises DomainError: if the exponent has a nonzero h^0 coefficient
    """
    if not exponent.head.is_zero():
        raise DomainError(f"twist exponent must vanish at order 0, got {exponent.head}")
    return Twist(exp_series(exponent), name=name)


def invert_twist(F: Twist) -> TruncatedSeries:
    """F^{-1} in (U (x) U)[[h]] mod h^{N+1}, cached on the twist."""
    if F._inverse is None:
        F._inverse = series_invert(F.series)
        logger.debug(f"inverted twist {F.name} at order {F.order}")
    return F._inverse


def _constant(element, order: int) -> TruncatedSeries:
    return TruncatedSeries.constant(element, order)


def _first_difference(left: TruncatedSeries, right: TruncatedSeries):
    for k in range(left.order + 1):
        difference = left.coefficient(k) - right.coefficient(k)
        if not difference.is_zero():
            return k, difference
    return None, None


def _order_details(left: TruncatedSeries, right: TruncatedSeries) -> List[dict]:
    return [{"order": k, "holds": left.coefficient(k) == right.coefficient(k)}
            for k in range(left.order + 1)]


def check_counitality(F: Twist) -> Report:
    """(eps (x) Id)(F) = 1 = (Id (x) eps)(F) order by order."""
    report = make_report("counitality", F.name)
    one = UEAElement.one(F.spec)
    for leg, label in ((1, "(ε⊗Id)"), (2, "(Id⊗ε)")):
        reduced = F.series.map(lambda t: counit_on_leg(t, leg))
        for k in range(F.order + 1):
            expected = one if k == 0 else one * 0
            if reduced.coefficient(k) != expected:
                report.add_failure(k, f"{label}(F) = {reduced}")
                break
    if report.passed:
        report.details.append({"summary": f"both counit legs reduce F to 1 up to order {F.order}"})
    return report


def cocycle_sides(F: Twist):
    r"""Both sides of the cocycle condition as arity-3 series:
    L = (F (x) 1)(Delta (x) Id)(F), R = (1 (x) F)(Id (x) Delta)(F)."""
    f_12 = F.series.map(lambda t: t.extend(2))
    f_23 = F.series.map(lambda t: t.extend(0))
    delta_left = F.series.map(lambda t: coproduct_on_leg(t, 1))
    delta_right = F.series.map(lambda t: coproduct_on_leg(t, 2))
    return series_mul(f_12, delta_left), series_mul(f_23, delta_right)


def check_cocycle(F: Twist) -> Report:
    """Exact comparison of both cocycle sides at every order <= N; a failure
    records the lowest failing order and the difference tensor there."""
    report = make_report("cocycle", F.name)
    with timer(f"cocycle check of {F.name}", logger):
        left, right = cocycle_sides(F)
    report.details.extend(_order_details(left, right))
    order, difference = _first_difference(left, right)
    if order is not None:
        report.add_failure(order, f"L - R at h^{order} = {difference}")
    else:
        report.details.append({"summary": f"cocycle condition holds up to order {F.order}"})
    return report


def check_mirrored_cocycle(F: Twist) -> Report:
    """Cross-check in the mirrored convention: J = F^{-1} satisfies
    (Delta (x) Id)(J)(J (x) 1) = (Id (x) Delta)(J)(1 (x) J)."""
    report = make_report("mirrored-cocycle", F.name)
    J = invert_twist(F)
    left = series_mul(J.map(lambda t: coproduct_on_leg(t, 1)), J.map(lambda t: t.extend(2)))
    right = series_mul(J.map(lambda t: coproduct_on_leg(t, 2)), J.map(lambda t: t.extend(0)))
    order, difference = _first_difference(left, right)
    if order is not None:
        report.add_failure(order, f"mirrored L - R at h^{order} = {difference}")
    else:
        report.details.append({"summary": f"F^-1 satisfies the mirrored condition up to order {F.order}"})
    return report


def twisted_coproduct(F: Twist, x: UEAElement) -> TruncatedSeries:
    """Delta_F(x) = F Delta(x) F^{-1}."""
    F.require_normalized()
    if x.spec != F.spec:
        raise StructuralError("element and twist belong to different Lie algebras")
    delta = _constant(coproduct(x), F.order)
    return series_mul(series_mul(F.series, delta), invert_twist(F))


def _conjugate_on_legs(F: Twist, t: TruncatedSeries, outer: int) -> TruncatedSeries:
    """F_12 (Delta (x) Id)(t) F_12^{-1} for outer == 1, F_23 (Id (x) Delta)(t) F_23^{-1}
    for outer == 2. `t` is a series of 2-tensors."""
    position = 2 if outer == 1 else 0
    f = F.series.map(lambda c: c.extend(position))
    f_inv = invert_twist(F).map(lambda c: c.extend(position))
    expanded = t.map(lambda c: coproduct_on_leg(c, outer))
    return series_mul(series_mul(f, expanded), f_inv)


def iterated_twisted_coproduct(F: Twist, x: UEAElement) -> TruncatedSeries:
    """(Id (x) Delta_F) Delta_F (x) as a series of 3-tensors."""
    return _conjugate_on_legs(F, twisted_coproduct(F, x), 2)


def check_twisted_bialgebra(F: Twist, elements: Optional[Iterable[UEAElement]] = None) -> Report:
    """Coassociativity of Delta_F and the counit property of eps on every
    generator (or on `elements`)."""
    report = make_report("twisted-bialgebra", F.name)
    if elements is None:
        elements = [UEAElement.generator(F.spec, i) for i in range(F.spec.dim)]
    for x in elements:
        delta_f = twisted_coproduct(F, x)
        left = _conjugate_on_legs(F, delta_f, 1)
        right = _conjugate_on_legs(F, delta_f, 2)
        order, difference = _first_difference(left, right)
        if order is not None:
            report.add_failure(order, f"Delta_F not coassociative on {x} at h^{order}: {difference}")
        expected = _constant(x, F.order)
        for leg in (1, 2):
            reduced = delta_f.map(lambda t: counit_on_leg(t, leg))
            if reduced != expected:
                report.add_failure(None, f"counit fails on leg {leg} for {x}: {reduced}")
        report.details.append({"element": str(x), "holds": order is None})
    if report.passed:
        report.details.append({"summary": f"Delta_F coassociative and counital up to order {F.order}"})
    return report


def gauge_normalize(F: Twist) -> Twist:
    """Replace F by F F_0^{-1} so that the h^0 term becomes 1 (x) 1.

    :raises DomainError: if F_0 is not invertible in U (x) U or does not
        commute with Delta(X) for some generator X
    """
    head = F.series.head
    if F.is_normalized:
        return F
    head_inverse = head.inverse()
    for i in range(F.spec.dim):
        delta = coproduct(UEAElement.generator(F.spec, i))
        if tensor_mul(head, delta) != tensor_mul(delta, head):
            raise DomainError(f"F_0 does not commute with Delta({F.spec.names[i]})")
    normalized = series_mul(F.series, _constant(head_inverse, F.order))
    logger.debug(f"gauge normalized {F.name} by {head_inverse}")
    return Twist(normalized, name=F.name)

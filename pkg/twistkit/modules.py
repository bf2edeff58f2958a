"""
U-equivariant bimodules of sections of trivial line bundles and their twist
deformation: lambda_F = lambda o F^{-1}(|> (x) |>), rho_F = rho o F^{-1}(|> (x) |>).
"""
import logging
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from twistkit.errors import DomainError, StructuralError
from twistkit.models import (ActionAssignment, FunctionElement, contract, pointwise_mul,
                             tensor_act)
from twistkit.models.model import DEFAULT_CUTOFFS, Key
from twistkit.report import Report, make_report
from twistkit.scalars import ZERO, Scalar, TruncatedSeries
from twistkit.star import MAX_WITNESSES, StarAlgebra, lowest_order
from twistkit.twist import (Twist, check_cocycle, check_counitality, invert_twist,
                            iterated_twisted_coproduct, twisted_coproduct)
from twistkit.uea import UEAElement, coproduct
from twistkit.utils import generate_seed, timer

logger = logging.getLogger(__name__)


class EquivariantBimodule:
    r"""Free rank-one A-B-bimodule of sections: a and b act on a section xi by
    pointwise multiplication, g acts on A, B and the sections separately.

    :param left:     Action of g on the left algebra A.
    :param right:    Action of g on the right algebra B.
    :param sections: Action on sections, possibly with potentials (a flat
                     connection on the trivial bundle).
    :raises DomainError: if the h^0 equivariance identity fails
    """

    def __init__(self, left: ActionAssignment, sections: ActionAssignment,
                 right: Optional[ActionAssignment] = None, name: str = "module") -> None:
        right = left if right is None else right
        for assign in (sections, right):
            if assign.spec != left.spec:
                raise StructuralError(f"module {name}: actions use different Lie algebras")
            left.model.require_same(assign.model)
        self.left = left
        self.right = right
        self.sections = sections
        self.model = left.model
        self.spec = left.spec
        self.name = name
        report = self.check_invariants()
        if report.failed:
            raise DomainError(f"module {name} is not equivariant: {report.witnesses[0]}")

    def left_multiply(self, a: FunctionElement, xi: FunctionElement) -> FunctionElement:
        return pointwise_mul(a, xi)

    def right_multiply(self, xi: FunctionElement, b: FunctionElement) -> FunctionElement:
        return pointwise_mul(xi, b)

    def check_invariants(self, cutoff: int = 1) -> Report:
        """x |> (a xi b) == (x|>a) xi b + a (x|>xi) b + a xi (x|>b) for generators."""
        report = make_report("equivariant-bimodule", self.name)
        basis = [self.model.basis_element(key) for key in self.model.basis(cutoff)]
        for i in range(self.spec.dim):
            for a, xi, b in product(basis, repeat=3):
                lhs = self.sections.act_generator(i, pointwise_mul(pointwise_mul(a, xi), b))
                rhs = pointwise_mul(pointwise_mul(self.left.act_generator(i, a), xi), b) + \
                    pointwise_mul(pointwise_mul(a, self.sections.act_generator(i, xi)), b) + \
                    pointwise_mul(pointwise_mul(a, xi), self.right.act_generator(i, b))
                if lhs != rhs:
                    report.add_failure(0, f"generator {self.spec.names[i]} on ({a}, {xi}, {b})")
                    return report
        return report


class DeformedModule:
    r"""The twisted bimodule: left action lambda_F of (A, *_F), right action
    rho_F of (B, *_F), g still acting on sections through the same operators."""

    def __init__(self, base: EquivariantBimodule, F: Twist, require_valid_twist: bool = True) -> None:
        if F.spec != base.spec:
            raise DomainError(f"twist {F.name} and module {base.name} use different Lie algebras")
        if F.order != base.model.order:
            raise StructuralError(f"truncation orders differ: twist {F.order}, model {base.model.order}")
        F.require_normalized()
        if require_valid_twist:
            for report in (check_counitality(F), check_cocycle(F)):
                if report.failed:
                    raise DomainError(f"twist {F.name} fails {report.check} at order "
                                      f"{report.lowest_failing_order}")
        self.base = base
        self.F = F
        self.model = base.model
        self.F_inv = invert_twist(F)
        self.star_left = StarAlgebra(base.left, F, require_valid_twist=False)
        self.star_right = StarAlgebra(base.right, F, require_valid_twist=False)
        self._left_cache: Dict[Tuple[Key, Key], FunctionElement] = {}
        self._right_cache: Dict[Tuple[Key, Key], FunctionElement] = {}

    @property
    def order(self) -> int:
        return self.F.order

    def _paired(self, first: ActionAssignment, second: ActionAssignment,
                cache: Dict[Tuple[Key, Key], FunctionElement], k1: Key, k2: Key) -> FunctionElement:
        cached = cache.get((k1, k2))
        if cached is None:
            cached = self.model.zero()
            for k, tensor_k in enumerate(self.F_inv.coeffs):
                for (u, v), c in tensor_k.terms.items():
                    term = pointwise_mul(first.represent_basis(u, k1), second.represent_basis(v, k2))
                    cached = cached + term.h_shift(k) * c
            cache[(k1, k2)] = cached
        return cached

    def _bilinear(self, first, second, cache, f: FunctionElement, g: FunctionElement) -> FunctionElement:
        result = self.model.zero()
        for k1, c1 in f.terms.items():
            for k2, c2 in g.terms.items():
                result = result + self._paired(first, second, cache, k1, k2) * (c1 * c2)
        return result

    def left_action(self, a: FunctionElement, xi: FunctionElement) -> FunctionElement:
        """lambda_F(a (x) xi)."""
        return self._bilinear(self.base.left, self.base.sections, self._left_cache, a, xi)

    def right_action(self, xi: FunctionElement, b: FunctionElement) -> FunctionElement:
        """rho_F(xi (x) b)."""
        return self._bilinear(self.base.sections, self.base.right, self._right_cache, xi, b)

    def samples(self, cutoff: Optional[int] = None) -> List[FunctionElement]:
        cutoff = DEFAULT_CUTOFFS.get(self.model.kind, 2) if cutoff is None else cutoff
        return [self.model.basis_element(key) for key in self.model.basis(cutoff)]

    def __repr__(self) -> str:
        return f"DeformedModule({self.base.name}, {self.F.name})"


def deform_module(M: EquivariantBimodule, F: Twist, require_valid_twist: bool = True) -> DeformedModule:
    return DeformedModule(M, F, require_valid_twist=require_valid_twist)


def _record(report: Report, axiom: str, lhs: FunctionElement, rhs: FunctionElement, sample: str,
            counts: Dict[str, int]) -> None:
    if lhs == rhs:
        return
    counts[axiom] = counts.get(axiom, 0) + 1
    report.add_failure(lowest_order(lhs - rhs), f"{axiom} fails on {sample}")
    del report.witnesses[MAX_WITNESSES:]


def check_module_axioms(D: DeformedModule, cutoff: Optional[int] = None) -> Report:
    """Left action law, unit laws, right action law and commuting actions on
    every basis triple within `cutoff`."""
    report = make_report("module-axioms", f"{D.base.name} by {D.F.name}")
    counts: Dict[str, int] = {}
    basis = D.samples(cutoff)
    one = D.model.one()
    lam, rho = D.left_action, D.right_action
    with timer(f"module axioms of {D.base.name}", logger):
        for xi in basis:
            _record(report, "left unit", lam(one, xi), xi, f"xi = {xi}", counts)
            _record(report, "right unit", rho(xi, one), xi, f"xi = {xi}", counts)
        for a, c, xi in product(basis, repeat=3):
            sample = f"({a}, {c}, {xi})"
            _record(report, "left action", lam(D.star_left.product(a, c), xi), lam(a, lam(c, xi)),
                    sample, counts)
            _record(report, "right action", rho(xi, D.star_right.product(a, c)), rho(rho(xi, a), c),
                    sample, counts)
            _record(report, "commuting actions", lam(a, rho(xi, c)), rho(lam(a, xi), c),
                    sample, counts)
    for axiom in ("left action", "left unit", "right action", "right unit", "commuting actions"):
        report.details.append({"axiom": axiom, "failures": counts.get(axiom, 0)})
    if report.passed:
        report.details.append({"summary": f"module laws hold on {len(basis) ** 3} triples "
                                          f"up to order {D.order}"})
    return report


def check_equivariance(D: DeformedModule, cutoff: Optional[int] = None) -> Report:
    """x |> lambda_F(a, rho_F(xi, b)) == sum over (Id (x) Delta_F)Delta_F(x) of
    lambda_F(x1|>a, rho_F(x2|>xi, x3|>b)), for every generator x."""
    report = make_report("equivariance", f"{D.base.name} by {D.F.name}")
    base = D.base
    basis = D.samples(cutoff)
    assigns = (base.left, base.sections, base.right)
    twisted = False
    for i in range(base.spec.dim):
        x = UEAElement.generator(base.spec, i)
        if twisted_coproduct(D.F, x) != TruncatedSeries.constant(coproduct(x), D.order):
            twisted = True
        legs = iterated_twisted_coproduct(D.F, x)
        failures = 0
        for a, xi, b in product(basis, repeat=3):
            lhs = base.sections.represent(x, D.left_action(a, D.right_action(xi, b)))
            rhs = contract(tensor_act(assigns, legs, (a, xi, b)),
                           lambda p, q, r: D.left_action(p, D.right_action(q, r)), D.model)
            if lhs != rhs:
                failures += 1
                if failures <= MAX_WITNESSES:
                    report.add_failure(lowest_order(lhs - rhs),
                                       f"{base.spec.names[i]} on ({a}, {xi}, {b})")
        report.details.append({"generator": base.spec.names[i], "failures": failures})
    report.details.append({"coproduct_twisted": twisted})
    if report.passed:
        kind = "twisted" if twisted else "primitive"
        report.details.append({"summary": f"U_F-equivariance holds on {len(basis) ** 3} triples "
                                          f"with {kind} coproducts"})
    return report


class PsiEndomorphism:
    r"""psi(f): s -> lambda_F(f, s), an endomorphism of the deformed right module."""

    def __init__(self, D: DeformedModule, f: FunctionElement) -> None:
        D.model.require_same(f.model)
        self.D = D
        self.f = f

    def __call__(self, s: FunctionElement) -> FunctionElement:
        return self.D.left_action(self.f, s)

    def compose(self, other: "PsiEndomorphism") -> Callable[[FunctionElement], FunctionElement]:
        return lambda s: self(other(s))


def psi_endomorphism(D: DeformedModule, f: FunctionElement) -> PsiEndomorphism:
    return PsiEndomorphism(D, f)


def exact_rank(vectors: List[Dict[Key, Scalar]]) -> int:
    """Rank of sparse coefficient vectors over Q(i), by exact elimination."""
    rows = [{k: v for k, v in row.items() if not v.is_zero()} for row in vectors]
    rows = [row for row in rows if row]
    rank = 0
    while rows:
        pivot = rows.pop()
        key, value = min(pivot.items())
        rank += 1
        reduced = []
        for row in rows:
            if key in row:
                factor = row[key] * value.inverse()
                row = {k: row.get(k, ZERO) - factor * pivot.get(k, ZERO)
                       for k in set(row) | set(pivot)}
                row = {k: v for k, v in row.items() if not v.is_zero()}
            if row:
                reduced.append(row)
        rows = reduced
    return rank


def check_psi(D: DeformedModule, random_samples: int = 25, seed: int = 0,
              cutoff: Optional[int] = None) -> Report:
    """Multiplicativity, right-linearity, psi(1) = Id, psi(f)s = fs mod h and
    injectivity as the rank of psi(f)(1) mod h over the basis."""
    report = make_report("psi", f"{D.base.name} by {D.F.name}")
    basis = D.samples(cutoff)
    one = D.model.one()
    rng = generate_seed(seed)
    sample_cutoff = DEFAULT_CUTOFFS.get(D.model.kind, 2) if cutoff is None else cutoff
    triples = [tuple(D.model.random_element(rng, sample_cutoff) for _ in range(3))
               for _ in range(random_samples)]
    counts: Dict[str, int] = {}
    for f, s, g in triples:
        sample = f"({f}, {s}, {g})"
        psi_f = psi_endomorphism(D, f)
        _record(report, "multiplicativity", psi_endomorphism(D, D.star_left.product(f, g))(s),
                psi_f.compose(psi_endomorphism(D, g))(s), sample, counts)
        _record(report, "right-linearity", psi_f(D.right_action(s, g)),
                D.right_action(psi_f(s), g), sample, counts)
        _record(report, "head term", psi_f(s).h_coefficient(0), pointwise_mul(f, s).h_coefficient(0),
                sample, counts)
    heads = []
    for f in basis:
        _record(report, "unit", psi_endomorphism(D, one)(f), f, f"s = {f}", counts)
        image = psi_endomorphism(D, f)(one)
        _record(report, "head term", image.h_coefficient(0), f.h_coefficient(0), f"f = {f}", counts)
        heads.append({key: series.head for key, series in image.h_coefficient(0)})
    deficiency = len(heads) - exact_rank(heads)
    if deficiency:
        report.add_failure(0, f"psi not injective: images of {len(heads)} basis functions have "
                              f"rank {len(heads) - deficiency} mod h")
    for check in ("multiplicativity", "right-linearity", "unit", "head term"):
        report.details.append({"property": check, "failures": counts.get(check, 0)})
    report.details.append({"property": "injectivity", "failures": deficiency})
    if report.passed:
        report.details.append({"summary": f"psi is a unital injective algebra map on {len(triples)} "
                                          f"sampled triples and {len(basis)} basis functions"})
    return report

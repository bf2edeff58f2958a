"""
Twist star products f * g = m o F^{-1}(|> (x) |>)(f (x) g), their axioms,
and equivalence transformations T = Id + sum_k h^k T_k.
"""
import logging
from abc import ABC, abstractmethod
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from twistkit.errors import DomainError, StructuralError
from twistkit.models import ActionAssignment, FunctionElement, FunctionModel, pointwise_mul
from twistkit.models.action import poisson_bracket
from twistkit.models.model import DEFAULT_CUTOFFS, Key, require_h_constant
from twistkit.report import Report, make_report
from twistkit.scalars import I, Scalar, TruncatedSeries, exp_series
from twistkit.twist import Twist, check_cocycle, check_counitality, invert_twist
from twistkit.uea import UEAElement
from twistkit.utils import generate_seed, run_in_parallel, timer

logger = logging.getLogger(__name__)

MAX_WITNESSES = 10

Triple = Tuple[FunctionElement, FunctionElement, FunctionElement]


def lowest_order(f: FunctionElement) -> Optional[int]:
    orders = [c.lowest_nonzero_order() for c in f.terms.values()]
    orders = [k for k in orders if k is not None]
    return min(orders) if orders else None


class StarProduct(ABC):
    r"""Abstract base class for h-deformed products on a function model."""

    def __init__(self, model: FunctionModel, name: str) -> None:
        self.model = model
        self.name = name

    @property
    def order(self) -> int:
        return self.model.order

    @abstractmethod
    def product(self, f: FunctionElement, g: FunctionElement) -> FunctionElement:
        pass

    def default_cutoff(self) -> int:
        return DEFAULT_CUTOFFS.get(self.model.kind, 2)

    def basis_functions(self, cutoff: Optional[int] = None) -> List[FunctionElement]:
        cutoff = self.default_cutoff() if cutoff is None else cutoff
        return [self.model.basis_element(key) for key in self.model.basis(cutoff)]

    def random_functions(self, count: int, seed: int, cutoff: Optional[int] = None) -> List[FunctionElement]:
        cutoff = self.default_cutoff() if cutoff is None else cutoff
        rng = generate_seed(seed)
        return [self.model.random_element(rng, cutoff) for _ in range(count)]

    def __call__(self, f: FunctionElement, g: FunctionElement) -> FunctionElement:
        return self.product(f, g)


class StarAlgebra(StarProduct):
    r"""Twist star product of a Lie algebra action and a twist.

    Products of basis functions are cached and * is extended C[[h]]-bilinearly.

    :param assign:              Validated action by derivations.
    :param twist:               Normalized twist over the same Lie algebra.
    :param require_valid_twist: Refuse twists failing the cocycle or
                                counitality checks. Disable only to study
                                what breaks.
    """

    def __init__(self, assign: ActionAssignment, twist: Twist, name: Optional[str] = None,
                 require_valid_twist: bool = True) -> None:
        super().__init__(assign.model, name or twist.name)
        if twist.spec != assign.spec:
            raise StructuralError(f"twist {twist.name} and action {assign.name} use different "
                                  f"Lie algebras")
        if twist.order != assign.model.order:
            raise StructuralError(f"truncation orders differ: twist {twist.order}, "
                                  f"model {assign.model.order}")
        twist.require_normalized()
        assign.require_valid()
        if require_valid_twist:
            for report in (check_counitality(twist), check_cocycle(twist)):
                if report.failed:
                    raise DomainError(f"twist {twist.name} fails {report.check} at order "
                                      f"{report.lowest_failing_order}")
        self.assign = assign
        self.twist = twist
        self.F_inv = invert_twist(twist)
        self._products: Dict[Tuple[Key, Key], FunctionElement] = {}

    def basis_product(self, k1: Key, k2: Key) -> FunctionElement:
        cached = self._products.get((k1, k2))
        if cached is None:
            cached = self.model.zero()
            for k, tensor_k in enumerate(self.F_inv.coeffs):
                for (left, right), c in tensor_k.terms.items():
                    term = pointwise_mul(self.assign.represent_basis(left, k1),
                                         self.assign.represent_basis(right, k2))
                    cached = cached + term.h_shift(k) * c
            self._products[(k1, k2)] = cached
        return cached

    def product(self, f: FunctionElement, g: FunctionElement) -> FunctionElement:
        self.model.require_same(f.model)
        self.model.require_same(g.model)
        result = self.model.zero()
        for k1, c1 in f.terms.items():
            for k2, c2 in g.terms.items():
                result = result + self.basis_product(k1, k2) * (c1 * c2)
        return result

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_products"] = {}
        return state

    def __repr__(self) -> str:
        return f"StarAlgebra({self.name} on {self.model}, order={self.order})"


def star_eval(S: StarProduct, f: FunctionElement, g: FunctionElement) -> FunctionElement:
    return S.product(f, g)


def extract_bk(S: StarProduct, f: FunctionElement, g: FunctionElement, k: int) -> FunctionElement:
    """B_k(f, g): the h^k coefficient of f * g for h-independent f, g."""
    require_h_constant(f, "B_k argument")
    require_h_constant(g, "B_k argument")
    if not 0 <= k <= S.order:
        raise StructuralError(f"order {k} outside 0..{S.order}")
    return S.product(f, g).h_coefficient(k)


def _associativity_failures(S: StarProduct, triples: Sequence[Triple],
                            offset: int) -> List[Tuple[int, int, str]]:
    failures = []
    for index, (f, g, k) in enumerate(triples):
        difference = S.product(S.product(f, g), k) - S.product(f, S.product(g, k))
        if not difference.is_zero():
            failures.append((offset + index, lowest_order(difference),
                             f"({f}, {g}, {k}): (f*g)*k - f*(g*k) = {difference}"))
    return failures


def check_associativity(S: StarProduct, cutoff: Optional[int] = None, random_samples: int = 0,
                        seed: int = 0, workers: int = 1,
                        triples: Optional[Sequence[Triple]] = None) -> Report:
    """(f*g)*k == f*(g*k) exactly, on every basis triple within `cutoff` plus
    `random_samples` seeded random triples (or on the given `triples`)."""
    report = make_report("associativity", S.name)
    if triples is None:
        basis = S.basis_functions(cutoff)
        triples = list(product(basis, repeat=3))
        randoms = S.random_functions(3 * random_samples, seed, cutoff)
        triples += [tuple(randoms[3 * i:3 * i + 3]) for i in range(random_samples)]
    triples = list(triples)
    with timer(f"associativity of {S.name} on {len(triples)} triples", logger):
        chunks = max(1, workers)
        size = (len(triples) + chunks - 1) // chunks or 1
        tasks = [(_associativity_failures, (S, triples[start:start + size], start))
                 for start in range(0, len(triples), size)]
        failures = [item for chunk in run_in_parallel(tasks, workers) for item in chunk]
    for index, order, witness in failures:
        report.add_failure(order, witness)
        report.details.append({"triple": index, "order": order})
    del report.witnesses[MAX_WITNESSES:]
    report.details.append({"summary": f"{len(triples) - len(failures)} of {len(triples)} "
                                      f"triples associative up to order {S.order}"})
    return report


def _sample_set(S: StarProduct, cutoff: Optional[int], random_samples: int,
                seed: int) -> List[FunctionElement]:
    return S.basis_functions(cutoff) + S.random_functions(random_samples, seed, cutoff)


def check_unitality(S: StarProduct, cutoff: Optional[int] = None, random_samples: int = 0,
                    seed: int = 0) -> Report:
    report = make_report("unitality", S.name)
    one = S.model.one()
    samples = _sample_set(S, cutoff, random_samples, seed)
    for f in samples:
        for label, value in (("f*1", S.product(f, one)), ("1*f", S.product(one, f))):
            if value != f:
                report.add_failure(lowest_order(value - f), f"{label} != f for f = {f}: {value}")
    if report.passed:
        report.details.append({"summary": f"1 is a two-sided unit on {len(samples)} functions"})
    return report


def check_classical_limit(S: StarProduct, cutoff: Optional[int] = None, random_samples: int = 0,
                          seed: int = 0) -> Report:
    """f * g == fg mod h."""
    report = make_report("classical-limit", S.name)
    samples = _sample_set(S, cutoff, random_samples, seed)
    for f, g in product(samples, repeat=2):
        difference = S.product(f, g) - pointwise_mul(f, g)
        if not difference.h_coefficient(0).is_zero():
            report.add_failure(0, f"f*g != fg mod h for ({f}, {g})")
    if report.passed:
        report.details.append({"summary": f"h^0 part is the pointwise product on "
                                          f"{len(samples) ** 2} pairs"})
    return report


def check_first_order_poisson(S: StarProduct, cutoff: Optional[int] = None) -> Report:
    """B_1(f,g) - B_1(g,f) == i{f,g} on all basis pairs.

    :raises DomainError: if the model carries no Poisson structure
    """
    if not S.model.has_poisson_structure:
        raise DomainError(f"{S.model} has no declared Poisson structure")
    report = make_report("first-order-poisson", S.name)
    basis = S.basis_functions(cutoff)
    for f, g in product(basis, repeat=2):
        lhs = extract_bk(S, f, g, 1) - extract_bk(S, g, f, 1)
        rhs = poisson_bracket(f, g) * I
        if lhs != rhs:
            report.add_failure(1, f"B1 antisymmetrization on ({f}, {g}) is {lhs}, i{{f,g}} is {rhs}")
    if report.passed:
        report.details.append({"summary": f"B1(f,g) - B1(g,f) = i{{f,g}} on {len(basis) ** 2} pairs"})
    return report


def check_torus_relation(S: StarProduct) -> Report:
    """U*V == exp(-ih) V*U for U = e(1,0), V = e(0,1)."""
    if S.model.kind != "torus" or S.model.n != 2:
        raise StructuralError(f"the torus relation needs torus(2), got {S.model}")
    report = make_report("torus-relation", S.name)
    U, V = S.model.basis_element((1, 0)), S.model.basis_element((0, 1))
    phase = exp_series(TruncatedSeries([Scalar(0), -I], S.order) if S.order > 0
                       else TruncatedSeries([Scalar(0)], 0))
    lhs = S.product(U, V)
    rhs = S.product(V, U) * phase
    for k in range(S.order + 1):
        report.details.append({"order": k, "lhs": str(lhs.h_coefficient(k)),
                               "rhs": str(rhs.h_coefficient(k))})
    if lhs != rhs:
        report.add_failure(lowest_order(lhs - rhs), f"U*V = {lhs}, exp(-ih)V*U = {rhs}")
    else:
        report.details.append({"summary": f"U*V = exp(-ih) V*U up to order {S.order}"})
    return report


OperatorTerm = Tuple[FunctionElement, UEAElement]


class EquivalenceMap:
    r"""T = Id + sum_{k>=1} h^k T_k, each T_k a differential operator
    sum_j a_j (u_j |>) with coefficient functions a_j and u_j in U(g).

    :param assign: Action through which the u_j act.
    :param terms:  terms[k-1] lists the (a_j, u_j) pairs of T_k.
    :raises DomainError: if T(1) != 1
    """

    def __init__(self, assign: ActionAssignment, terms: Sequence[Sequence[OperatorTerm]],
                 name: str = "T") -> None:
        model = assign.model
        if len(terms) > model.order:
            raise StructuralError(f"{len(terms)} operator orders exceed truncation {model.order}")
        for order_terms in terms:
            for coefficient, u in order_terms:
                model.require_same(coefficient.model)
                if u.spec != assign.spec:
                    raise StructuralError("operator uses a different Lie algebra")
        self.assign = assign
        self.model = model
        self.terms = [list(t) for t in terms]
        self.name = name
        image = self.apply(model.one())
        if image != model.one():
            raise DomainError(f"equivalence {name} violates T(1) = 1: T(1) = {image}")

    @property
    def order(self) -> int:
        return self.model.order

    def component(self, k: int, f: FunctionElement) -> FunctionElement:
        """T_k(f) for k >= 1."""
        result = self.model.zero()
        for coefficient, u in self.terms[k - 1]:
            result = result + pointwise_mul(coefficient, self.assign.represent(u, f))
        return result

    def _perturbation(self, f: FunctionElement) -> FunctionElement:
        result = self.model.zero()
        for k in range(1, len(self.terms) + 1):
            result = result + self.component(k, f).h_shift(k)
        return result

    def apply(self, f: FunctionElement) -> FunctionElement:
        return f + self._perturbation(f)

    def inverse_apply(self, f: FunctionElement) -> FunctionElement:
        """T^{-1}(f) by g <- f - (T - Id)(g); exact after N + 1 rounds since
        T - Id raises the h-order."""
        g = f
        for _ in range(self.order + 1):
            g = f - self._perturbation(g)
        return g

    def __repr__(self) -> str:
        return f"EquivalenceMap({self.name}, {len(self.terms)} orders)"


class EquivalentStar(StarProduct):
    r"""f *' g = T(T^{-1}f * T^{-1}g)."""

    def __init__(self, T: EquivalenceMap, base: StarProduct) -> None:
        base.model.require_same(T.model)
        super().__init__(base.model, f"{T.name}({base.name})")
        self.T = T
        self.base = base

    def product(self, f: FunctionElement, g: FunctionElement) -> FunctionElement:
        return self.T.apply(self.base.product(self.T.inverse_apply(f), self.T.inverse_apply(g)))


def apply_equivalence(T: EquivalenceMap, S: StarProduct) -> EquivalentStar:
    return EquivalentStar(T, S)


def check_intertwining(T: EquivalenceMap, S: StarProduct, S_prime: StarProduct,
                       cutoff: Optional[int] = None, random_samples: int = 10,
                       seed: int = 0) -> Report:
    """T(f*g) == T(f) *' T(g) on basis pairs and random pairs."""
    report = make_report("intertwining", f"{T.name}: {S.name} -> {S_prime.name}")
    samples = _sample_set(S, cutoff, 0, seed)
    pairs = list(product(samples, repeat=2))
    randoms = S.random_functions(2 * random_samples, seed, cutoff)
    pairs += [(randoms[2 * i], randoms[2 * i + 1]) for i in range(random_samples)]
    for f, g in pairs:
        lhs = T.apply(S.product(f, g))
        rhs = S_prime.product(T.apply(f), T.apply(g))
        if lhs != rhs:
            report.add_failure(lowest_order(lhs - rhs), f"T(f*g) != T(f)*'T(g) for ({f}, {g})")
    if report.passed:
        report.details.append({"summary": f"T intertwines the products on {len(pairs)} pairs"})
    return report

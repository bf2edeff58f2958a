"""
Verification campaigns over a `.twk` document: every CLI command maps to a
list of Reports, produced in declaration order.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

from twistkit.chern import (DEFAULT_GRID, DEFAULT_TOLERANCE, check_dichotomy, chern_report,
                            standard_connection)
from twistkit.dsl import SpecBuilder, parse_expression
from twistkit.dsl.ast import SpecDocument
from twistkit.dsl.resolver import check_function
from twistkit.errors import DomainError, StructuralError
from twistkit.models import FunctionElement, FunctionModel
from twistkit.models.model import DEFAULT_CUTOFFS
from twistkit.modules import check_equivariance, check_module_axioms, check_psi
from twistkit.report import Report, blocked_report, make_report, skipped_report
from twistkit.scalars import DEFAULT_ORDER
from twistkit.star import (StarProduct, apply_equivalence, check_associativity,
                           check_classical_limit, check_first_order_poisson, check_intertwining,
                           check_torus_relation, check_unitality, star_eval)
from twistkit.twist import (check_cocycle, check_counitality, check_mirrored_cocycle,
                            check_twisted_bialgebra)
from twistkit.uea import validate_lie_algebra
from twistkit.utils import timer

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "check-twist", "star-eval", "assoc-check", "poisson-check",
            "module-check", "equivariance-check", "chern", "equiv-apply", "all")


@dataclass
class RunOptions:
    r"""Knobs shared by every command.

    :param cutoffs: Basis cutoff per model kind for exhaustive checks.
    :param degree:  Extra standard bundle for `chern`.
    :param pair:    Two function expressions for `star-eval`.
    """
    order: int = DEFAULT_ORDER
    cutoffs: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CUTOFFS))
    grid: int = DEFAULT_GRID
    random_samples: int = 25
    seed: int = 0
    workers: int = 1
    tolerance: float = DEFAULT_TOLERANCE
    degree: Optional[int] = None
    pair: Optional[Tuple[str, str]] = None

    def cutoff(self, model: FunctionModel) -> int:
        return self.cutoffs.get(model.kind, DEFAULT_CUTOFFS.get(model.kind, 2))


def failure_report(check: str, subject: str, error: DomainError) -> Report:
    report = make_report(check, subject)
    report.add_failure(None, str(error))
    return report


def guarded(check: str, subject: str, thunk: Callable[[], object]) -> List[Report]:
    """Run `thunk`; a DomainError becomes a failing report."""
    try:
        result = thunk()
    except DomainError as e:
        return [failure_report(check, subject, e)]
    return list(result) if isinstance(result, (list, tuple)) else [result]


class Campaign:
    r"""Runs the checks of one document with one set of options.

    :param document: Parsed and resolved document, None for `chern --degree`.
    """

    def __init__(self, document: Optional[SpecDocument], options: RunOptions) -> None:
        self.document = document
        self.options = options
        self.builder = SpecBuilder(document, options.order) if document is not None else None

    @property
    def scope(self):
        return self.builder.scope

    def require(self, kind: str, command: str) -> List[str]:
        if self.builder is None:
            raise StructuralError(f"{command} needs a spec file")
        names = list(getattr(self.scope, kind))
        if not names:
            raise StructuralError(f"{command} needs at least one {kind[:-1]} declaration")
        return names

    # validate

    def validate(self) -> List[Report]:
        reports: List[Report] = []
        for name in self.require("algebras", "validate"):
            report = validate_lie_algebra(self.builder.algebra(name))
            report.subject = name
            reports.append(report)
        for name in self.scope.groups:
            reports += guarded("action", name, lambda name=name: self.builder.group(name).validate())
        return reports

    # twists

    def twist_reports(self, name: str) -> List[Report]:
        builder = self.builder
        try:
            F = builder.twist(name)
        except DomainError as e:
            return [failure_report("twist-construction", name, e)]
        reports: List[Report] = []
        if not F.is_normalized:
            normalization = make_report("gauge-normalization", name)
            try:
                builder.normalized_twist(name)
                normalization.details.append({"summary": f"F_0 = {F.series.head} normalized to "
                                                         f"1 ⊗ 1"})
            except DomainError as e:
                normalization.add_failure(0, str(e))
                return [normalization] + [blocked_report(check, name, "gauge normalization failed")
                                          for check in ("counitality", "cocycle",
                                                        "mirrored-cocycle", "twisted-bialgebra")]
            reports.append(normalization)
        F = builder.normalized_twist(name)
        with timer(f"twist checks of {name}", logger):
            reports += [check_counitality(F), check_cocycle(F), check_mirrored_cocycle(F),
                        check_twisted_bialgebra(F)]
        return reports

    def check_twist(self) -> List[Report]:
        return [r for name in self.require("twists", "check-twist") for r in self.twist_reports(name)]

    # star products

    def _star(self, name: str) -> StarProduct:
        return self.builder.star(name, require_valid_twist=False)

    def _default_pair(self, model: FunctionModel) -> Tuple[FunctionElement, FunctionElement]:
        units = [tuple(1 if i == j else 0 for i in range(model.n)) for j in range(model.n)]
        return model.basis_element(units[0]), model.basis_element(units[-1])

    def _pair(self, model: FunctionModel) -> Tuple[FunctionElement, FunctionElement]:
        if self.options.pair is None:
            return self._default_pair(model)
        functions = []
        for text in self.options.pair:
            node = parse_expression(text)
            check_function(node, model.coordinate_names)
            functions.append(self.builder.function(node, model))
        return functions[0], functions[1]

    def star_eval_reports(self, name: str) -> List[Report]:
        S = self._star(name)
        f, g = self._pair(S.model)
        value = star_eval(S, f, g)
        report = make_report("star-eval", name)
        report.details += [{"order": k, "value": str(value.h_coefficient(k))}
                           for k in range(S.order + 1)]
        report.details.append({"summary": f"f*g = {value} for f = {f}, g = {g}"})
        reports = [report]
        if S.model.kind == "torus" and S.model.n == 2:
            reports.append(check_torus_relation(S))
        return reports

    def star_eval(self) -> List[Report]:
        names = self.require("stars", "star-eval")
        return [r for name in names
                for r in guarded("star-eval", name, lambda name=name: self.star_eval_reports(name))]

    def assoc_reports(self, name: str) -> List[Report]:
        options = self.options
        S = self._star(name)
        cutoff = options.cutoff(S.model)
        return [check_associativity(S, cutoff, options.random_samples, options.seed,
                                    options.workers),
                check_unitality(S, cutoff),
                check_classical_limit(S, cutoff)]

    def assoc_check(self) -> List[Report]:
        names = self.require("stars", "assoc-check")
        return [r for name in names
                for r in guarded("associativity", name, lambda name=name: self.assoc_reports(name))]

    def poisson_reports(self, name: str) -> List[Report]:
        S = self._star(name)
        if not S.model.has_poisson_structure:
            return [skipped_report("first-order-poisson", name,
                                   f"{S.model} carries no Poisson structure")]
        return [check_first_order_poisson(S, self.options.cutoff(S.model))]

    def poisson_check(self) -> List[Report]:
        names = self.require("stars", "poisson-check")
        return [r for name in names for r in guarded("first-order-poisson", name,
                                                     lambda name=name: self.poisson_reports(name))]

    # equivalences

    def equivalence_reports(self, name: str) -> List[Report]:
        options = self.options
        decl = self.scope.equivalences[name]
        T = self.builder.equivalence(name)
        S = self._star(decl.star)
        S_prime = apply_equivalence(T, S)
        cutoff = options.cutoff(S.model)
        samples = S.random_functions(3 * options.random_samples, options.seed, cutoff)
        triples = [tuple(samples[3 * i:3 * i + 3]) for i in range(options.random_samples)]
        return [check_associativity(S_prime, triples=triples, workers=options.workers),
                check_unitality(S_prime, cutoff),
                check_intertwining(T, S, S_prime, cutoff, options.random_samples, options.seed)]

    def equiv_apply(self) -> List[Report]:
        names = self.require("equivalences", "equiv-apply")
        return [r for name in names for r in guarded("equivalence", name,
                                                     lambda name=name: self.equivalence_reports(name))]

    # modules

    def module_reports(self, name: str) -> List[Report]:
        options = self.options
        D = self.builder.module(name, require_valid_twist=False)
        cutoff = options.cutoff(D.model)
        return [check_module_axioms(D, cutoff),
                check_psi(D, options.random_samples, options.seed, cutoff)]

    def module_check(self) -> List[Report]:
        names = self.require("modules", "module-check")
        return [r for name in names
                for r in guarded("module-axioms", name, lambda name=name: self.module_reports(name))]

    def equivariance_reports(self, name: str) -> List[Report]:
        D = self.builder.module(name, require_valid_twist=False)
        return [check_equivariance(D, self.options.cutoff(D.model))]

    def bundle_dichotomy_reports(self, label: str) -> List[Report]:
        return [check_dichotomy(self.builder.bundle(label), self.options.grid,
                                self.options.tolerance)]

    def equivariance_check(self) -> List[Report]:
        if self.builder is None:
            raise StructuralError("equivariance-check needs a spec file")
        modules, bundles = list(self.scope.modules), list(self.scope.bundles)
        if not modules and not bundles:
            raise StructuralError("equivariance-check needs a module or bundle declaration")
        reports = [r for name in modules for r in guarded(
            "equivariance", name, lambda name=name: self.equivariance_reports(name))]
        return reports + [r for label in bundles for r in guarded(
            "equivariance-dichotomy", label, lambda label=label: self.bundle_dichotomy_reports(label))]

    # bundles

    def chern_reports(self, label: str) -> List[Report]:
        return [chern_report(self.builder.bundle(label), self.options.grid, self.options.tolerance)]

    def chern(self) -> List[Report]:
        options = self.options
        labels = list(self.scope.bundles) if self.builder is not None else []
        if not labels and options.degree is None:
            raise StructuralError("chern needs a bundle declaration or --degree")
        reports = [r for label in labels
                   for r in guarded("chern", label, lambda label=label: self.chern_reports(label))]
        if options.degree is not None:
            reports.append(chern_report(standard_connection(options.degree), options.grid,
                                        options.tolerance))
        return reports

    # everything

    def all(self) -> List[Report]:
        """validate -> twists -> stars -> modules -> bundles; a stage whose
        prerequisites failed is reported as blocked."""
        if self.builder is None:
            raise StructuralError("all needs a spec file")
        scope = self.scope
        reports: List[Report] = []

        failed_algebras: Set[str] = set()
        for name in scope.algebras:
            report = validate_lie_algebra(self.builder.algebra(name))
            report.subject = name
            reports.append(report)
            if report.failed:
                failed_algebras.add(name)
        failed_groups: Set[str] = set()
        for name, binding in scope.groups.items():
            if binding.algebra in failed_algebras:
                reports.append(blocked_report("action", name, f"liealgebra {binding.algebra} failed"))
                failed_groups.add(name)
                continue
            group_reports = guarded("action", name,
                                    lambda name=name: self.builder.group(name).validate())
            reports += group_reports
            if any(r.failed for r in group_reports):
                failed_groups.add(name)

        failed_twists: Set[str] = set()
        for name in scope.twists:
            algebra = scope.twist_algebras[name]
            if algebra in failed_algebras:
                reports.append(blocked_report("twist", name, f"liealgebra {algebra} failed"))
                failed_twists.add(name)
                continue
            twist_reports = self.twist_reports(name)
            reports += twist_reports
            if any(not r.passed for r in twist_reports):
                failed_twists.add(name)

        failed_stars: Set[str] = set()
        for name, decl in scope.stars.items():
            reason = self._blocking_reason(decl.twist, decl.group, failed_twists, failed_groups)
            if reason:
                reports.append(blocked_report("star", name, reason))
                failed_stars.add(name)
                continue
            star_reports = self._stage(name, ("star-eval", self.star_eval_reports),
                                       ("associativity", self.assoc_reports),
                                       ("first-order-poisson", self.poisson_reports))
            reports += star_reports
            if any(not r.passed for r in star_reports):
                failed_stars.add(name)
        for name, decl in scope.equivalences.items():
            if decl.star in failed_stars:
                reports.append(blocked_report("equivalence", name, f"star {decl.star} failed"))
                continue
            reports += guarded("equivalence", name, lambda name=name: self.equivalence_reports(name))

        for name, decl in scope.modules.items():
            if decl.star in failed_stars:
                reports.append(blocked_report("module", name, f"star {decl.star} failed"))
                continue
            reports += self._stage(name, ("module-axioms", self.module_reports),
                                   ("equivariance", self.equivariance_reports))

        for label in scope.bundles:
            reports += self._stage(label, ("chern", self.chern_reports),
                                   ("equivariance-dichotomy", self.bundle_dichotomy_reports))
        return reports

    @staticmethod
    def _blocking_reason(twist: str, group: str, failed_twists: Set[str],
                         failed_groups: Set[str]) -> Optional[str]:
        if twist in failed_twists:
            return f"twist {twist} failed"
        if group in failed_groups:
            return f"action group {group} failed"
        return None

    @staticmethod
    def _stage(name: str, *steps: Tuple[str, Callable[[str], List[Report]]]) -> List[Report]:
        reports: List[Report] = []
        for check, step in steps:
            reports += guarded(check, name, lambda step=step: step(name))
        return reports


def run_command(command: str, document: Optional[SpecDocument],
                options: Optional[RunOptions] = None) -> List[Report]:
    r"""Run one CLI command over a document.

    :raises StructuralError: for an unknown command or a missing declaration
    """
    if command not in COMMANDS:
        raise StructuralError(f"unknown command {command!r}, expected one of {', '.join(COMMANDS)}")
    campaign = Campaign(document, options or RunOptions())
    with timer(f"command {command}", logger):
        reports = getattr(campaign, command.replace("-", "_"))()
    logger.debug(f"{command}: {len(reports)} reports")
    return reports

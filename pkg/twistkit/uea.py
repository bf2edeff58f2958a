"""
Universal enveloping algebras of finite-dimensional Lie algebras.

Elements are stored in the PBW basis: a monomial is a non-decreasing tuple
of generator indices (declaration order), the empty tuple is 1.
"""
import logging
from itertools import combinations_with_replacement, product
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from twistkit.errors import DomainError, StructuralError
from twistkit.report import Report, make_report
from twistkit.scalars import ONE, ZERO, Scalar

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
LegKey = Tuple[Monomial, ...]


class LieAlgebraSpec:
    r"""Structure-constant presentation [X_i, X_j] = sum_k c[i][j][k] X_k.

    Example:
        >>> ab = LieAlgebraSpec.from_brackets(["H", "E"], {("H", "E"): {"E": 1}})
        >>> ab.bracket(1, 0)
        {1: Scalar(-1, 0)}
    """

    def __init__(self,
                 names: Sequence[str],
                 structure_consts: Union[Mapping[Tuple[int, int, int], object],
                                         Sequence, None] = None) -> None:
        r"""
        :param names:            Generator labels, their order is the PBW order.
        :param structure_consts: Either nested c[i][j][k] or a sparse mapping
                                 {(i, j, k): value}. Nothing is symmetrized.
        """
        if len(set(names)) != len(names):
            raise StructuralError(f"generator names must be distinct: {list(names)}")
        if not names:
            raise StructuralError("a Lie algebra needs at least one generator")
        self.names = tuple(names)
        self.dim = len(names)
        consts: Dict[Tuple[int, int, int], Scalar] = {}
        if structure_consts is None:
            items: Iterable = ()
        elif isinstance(structure_consts, Mapping):
            items = structure_consts.items()
        else:
            items = (((i, j, k), structure_consts[i][j][k])
                     for i in range(self.dim) for j in range(self.dim) for k in range(self.dim))
        for (i, j, k), value in items:
            for index in (i, j, k):
                if not 0 <= index < self.dim:
                    raise StructuralError(f"structure constant index {index} out of range")
            value = Scalar.coerce(value)
            if not value.is_zero():
                consts[(i, j, k)] = value
        self._consts = consts
        self._brackets: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for (i, j, k), value in consts.items():
            self._brackets.setdefault((i, j), {})[k] = value
        # memo tables: word -> normal form, monomial -> coproduct
        self._normal_forms: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        self._coproducts: Dict[Monomial, Dict[LegKey, Scalar]] = {}

    @classmethod
    def from_brackets(cls, names: Sequence[str],
                      rules: Mapping[Tuple[str, str], Mapping[str, object]]) -> "LieAlgebraSpec":
        """Build from rules {("H", "E"): {"E": 1}}; [B, A] = -[A, B] is filled in."""
        index = {name: i for i, name in enumerate(names)}
        consts: Dict[Tuple[int, int, int], Scalar] = {}
        for (a, b), rhs in rules.items():
            for name in (a, b, *rhs):
                if name not in index:
                    raise StructuralError(f"unknown generator {name!r} in bracket rule")
            for name, value in rhs.items():
                value = Scalar.coerce(value)
                consts[(index[a], index[b], index[name])] = value
                consts[(index[b], index[a], index[name])] = -value
        return cls(names, consts)

    @classmethod
    def abelian(cls, names: Sequence[str]) -> "LieAlgebraSpec":
        return cls(names, {})

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructuralError(f"{name!r} is not a generator of {list(self.names)}")

    def structure_constant(self, i: int, j: int, k: int) -> Scalar:
        return self._consts.get((i, j, k), ZERO)

    def bracket(self, i: int, j: int) -> Dict[int, Scalar]:
        return dict(self._brackets.get((i, j), {}))

    def is_abelian(self) -> bool:
        return not self._consts

    def format_monomial(self, monomial: Monomial) -> str:
        if not monomial:
            return "1"
        parts: List[str] = []
        for generator in sorted(set(monomial)):
            power = monomial.count(generator)
            name = self.names[generator]
            parts.append(name if power == 1 else f"{name}^{power}")
        return "*".join(parts)

    def _key(self):
        return self.names, tuple(sorted((k, (v.re, v.im)) for k, v in self._consts.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebraSpec) and (self is other or self._key() == other._key())

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"LieAlgebraSpec({list(self.names)}, {len(self._consts)} nonzero constants)"

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_normal_forms"] = {}
        state["_coproducts"] = {}
        return state


def validate_lie_algebra(spec: LieAlgebraSpec) -> Report:
    """Lists every violated antisymmetry and Jacobi instance; passes iff none."""
    report = make_report("lie-algebra", ", ".join(spec.names))
    n = spec.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                total = spec.structure_constant(i, j, k) + spec.structure_constant(j, i, k)
                if not total.is_zero():
                    report.add_failure(None, f"antisymmetry violated at ({i},{j},{k}): "
                                             f"c[{i}][{j}][{k}] + c[{j}][{i}][{k}] = {total}")
                    report.details.append({"kind": "antisymmetry", "indices": [i, j, k]})
    for i, j, l in combinations_with_replacement(range(n), 3):
        for m in range(n):
            total = ZERO
            for k in range(n):
                total = total \
                    + spec.structure_constant(i, j, k) * spec.structure_constant(k, l, m) \
                    + spec.structure_constant(j, l, k) * spec.structure_constant(k, i, m) \
                    + spec.structure_constant(l, i, k) * spec.structure_constant(k, j, m)
            if not total.is_zero():
                report.add_failure(None, f"Jacobi identity violated for ({i},{j},{l}): "
                                         f"coefficient of {spec.names[m]} is {total}")
                report.details.append({"kind": "jacobi", "indices": [i, j, l, m]})
    if report.passed:
        report.details.append({"summary": f"{n} generators, antisymmetry and Jacobi hold"})
    return report


def _normal_form(spec: LieAlgebraSpec, word: Monomial) -> Dict[Monomial, Scalar]:
    """PBW straightening: swap the first descent X_a X_b (a > b) into
    X_b X_a + [X_a, X_b] and recurse. Each swap lowers the number of
    inversions or the length, so this terminates."""
    cached = spec._normal_forms.get(word)
    if cached is not None:
        return cached
    descent = next((p for p in range(len(word) - 1) if word[p] > word[p + 1]), None)
    if descent is None:
        result = {word: ONE}
    else:
        a, b = word[descent], word[descent + 1]
        prefix, suffix = word[:descent], word[descent + 2:]
        result = dict(_normal_form(spec, prefix + (b, a) + suffix))
        for k, c in spec.bracket(a, b).items():
            for monomial, value in _normal_form(spec, prefix + (k,) + suffix).items():
                result[monomial] = result.get(monomial, ZERO) + c * value
        result = {m: v for m, v in result.items() if not v.is_zero()}
    spec._normal_forms[word] = result
    return result


def _coproduct_of_monomial(spec: LieAlgebraSpec, monomial: Monomial) -> Dict[LegKey, Scalar]:
    """Delta(X_1^{a_1}...X_n^{a_n}) = sum prod binom(a_i, k_i) X^k (x) X^{a-k};
    both legs of every term are already normal-ordered."""
    cached = spec._coproducts.get(monomial)
    if cached is not None:
        return cached
    counts: List[Tuple[int, int]] = []
    for generator in monomial:
        if counts and counts[-1][0] == generator:
            counts[-1] = (generator, counts[-1][1] + 1)
        else:
            counts.append((generator, 1))
    result: Dict[LegKey, Scalar] = {}
    for split in product(*(range(power + 1) for _, power in counts)):
        left: Tuple[int, ...] = ()
        right: Tuple[int, ...] = ()
        coefficient = 1
        for (generator, power), k in zip(counts, split):
            left += (generator,) * k
            right += (generator,) * (power - k)
            coefficient *= comb(power, k)
        result[(left, right)] = Scalar(coefficient)
    spec._coproducts[monomial] = result
    return result


def _check_monomial(monomial: Monomial) -> None:
    if any(monomial[p] > monomial[p + 1] for p in range(len(monomial) - 1)):
        raise StructuralError(f"monomial {monomial} is not PBW ordered, use pbw_normalize")


class UEAElement:
    r"""Finite linear combination of PBW monomials."""
    __slots__ = ("spec", "terms")

    def __init__(self, spec: LieAlgebraSpec, terms: Optional[Mapping[Monomial, object]] = None) -> None:
        self.spec = spec
        cleaned: Dict[Monomial, Scalar] = {}
        for monomial, value in (terms or {}).items():
            monomial = tuple(monomial)
            _check_monomial(monomial)
            value = Scalar.coerce(value)
            if not value.is_zero():
                cleaned[monomial] = value
        self.terms = cleaned

    @classmethod
    def _raw(cls, spec: LieAlgebraSpec, terms: Dict[Monomial, Scalar]) -> "UEAElement":
        element = cls.__new__(cls)
        element.spec = spec
        element.terms = {m: v for m, v in terms.items() if not v.is_zero()}
        return element

    @classmethod
    def one(cls, spec: LieAlgebraSpec) -> "UEAElement":
        return cls._raw(spec, {(): ONE})

    @classmethod
    def scalar(cls, spec: LieAlgebraSpec, value) -> "UEAElement":
        return cls._raw(spec, {(): Scalar.coerce(value)})

    @classmethod
    def generator(cls, spec: LieAlgebraSpec, which: Union[int, str]) -> "UEAElement":
        index = spec.index(which) if isinstance(which, str) else which
        return cls._raw(spec, {(index,): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def one_like(self) -> "UEAElement":
        return UEAElement.one(self.spec)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def inverse(self) -> "UEAElement":
        """Units of U(g) are the nonzero multiples of 1."""
        if set(self.terms) == {()}:
            return UEAElement.scalar(self.spec, self.terms[()].inverse())
        raise DomainError(f"{self} is not invertible in U(g)")

    def _check_spec(self, other) -> None:
        if self.spec != other.spec:
            raise StructuralError("elements belong to different Lie algebras")

    def __add__(self, other):
        if isinstance(other, UEAElement):
            self._check_spec(other)
            terms = dict(self.terms)
            for m, v in other.terms.items():
                terms[m] = terms.get(m, ZERO) + v
            return UEAElement._raw(self.spec, terms)
        if isinstance(other, TensorElement):
            raise StructuralError("cannot add elements of different tensor arity (1 and "
                                  f"{other.arity})")
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return self + UEAElement.scalar(self.spec, scalar)

    __radd__ = __add__

    def __neg__(self) -> "UEAElement":
        return UEAElement._raw(self.spec, {m: -v for m, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return uea_mul(self, other)
        if isinstance(other, TensorElement):
            raise StructuralError(f"cannot multiply elements of arity 1 and {other.arity}")
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return UEAElement._raw(self.spec, {m: v * scalar for m, v in self.terms.items()})

    def __rmul__(self, other):
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return UEAElement._raw(self.spec, {m: scalar * v for m, v in self.terms.items()})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __pow__(self, exponent: int) -> "UEAElement":
        result = self.one_like()
        for _ in range(exponent):
            result = uea_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, UEAElement):
            return self.spec == other.spec and self.terms == other.terms
        scalar = Scalar.coerce(other) if not isinstance(other, str) else NotImplemented
        if scalar is NotImplemented:
            return False
        return self.terms == UEAElement.scalar(self.spec, scalar).terms

    __hash__ = None

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({v})*{self.spec.format_monomial(m)}" if m else f"({v})"
                          for m, v in self.sorted_terms())

    def __repr__(self) -> str:
        return f"UEAElement({self})"


def pbw_normalize(spec: LieAlgebraSpec, word: Sequence[int], coeff=ONE) -> UEAElement:
    """Rewrite coeff * X_{w_1} ... X_{w_k} in the PBW basis."""
    word = tuple(word)
    for index in word:
        if not 0 <= index < spec.dim:
            raise StructuralError(f"generator index {index} out of range")
    coeff = Scalar.coerce(coeff)
    return UEAElement._raw(spec, {m: coeff * v for m, v in _normal_form(spec, word).items()})


def uea_mul(a: UEAElement, b: UEAElement) -> UEAElement:
    """Bilinear extension of concatenate-then-normalize."""
    a._check_spec(b)
    spec = a.spec
    terms: Dict[Monomial, Scalar] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            for m, v in _normal_form(spec, m1 + m2).items():
                terms[m] = terms.get(m, ZERO) + c * v
    return UEAElement._raw(spec, terms)


def coproduct(a: UEAElement) -> "TensorElement":
    """Algebra map with Delta(X) = X (x) 1 + 1 (x) X."""
    terms: Dict[LegKey, Scalar] = {}
    for monomial, c in a.terms.items():
        for legs, v in _coproduct_of_monomial(a.spec, monomial).items():
            terms[legs] = terms.get(legs, ZERO) + c * v
    return TensorElement._raw(a.spec, 2, terms)


def counit(a: UEAElement) -> Scalar:
    """Coefficient of the empty monomial."""
    return a.terms.get((), ZERO)


class TensorElement:
    r"""Element of U(g)^{(x) k}, k >= 2: map from k-tuples of PBW monomials
    to coefficients."""
    __slots__ = ("spec", "arity", "terms")

    def __init__(self, spec: LieAlgebraSpec, arity: int,
                 terms: Optional[Mapping[LegKey, object]] = None) -> None:
        if arity < 2:
            raise StructuralError(f"tensor arity must be at least 2, got {arity}")
        self.spec = spec
        self.arity = arity
        cleaned: Dict[LegKey, Scalar] = {}
        for legs, value in (terms or {}).items():
            legs = tuple(tuple(leg) for leg in legs)
            if len(legs) != arity:
                raise StructuralError(f"term {legs} does not have {arity} legs")
            for leg in legs:
                _check_monomial(leg)
            value = Scalar.coerce(value)
            if not value.is_zero():
                cleaned[legs] = value
        self.terms = cleaned

    @classmethod
    def _raw(cls, spec: LieAlgebraSpec, arity: int, terms: Dict[LegKey, Scalar]) -> "TensorElement":
        element = cls.__new__(cls)
        element.spec = spec
        element.arity = arity
        element.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        return element

    @classmethod
    def one(cls, spec: LieAlgebraSpec, arity: int = 2) -> "TensorElement":
        return cls._raw(spec, arity, {((),) * arity: ONE})

    @classmethod
    def zero(cls, spec: LieAlgebraSpec, arity: int = 2) -> "TensorElement":
        return cls._raw(spec, arity, {})

    def is_zero(self) -> bool:
        return not self.terms

    def one_like(self) -> "TensorElement":
        return TensorElement.one(self.spec, self.arity)

    def is_unit_multiple(self) -> bool:
        return set(self.terms) <= {((),) * self.arity}

    def inverse(self) -> "TensorElement":
        """Units of U(g)^{(x) k} are the nonzero multiples of 1 (x) ... (x) 1."""
        unit = ((),) * self.arity
        if set(self.terms) == {unit}:
            return TensorElement._raw(self.spec, self.arity, {unit: self.terms[unit].inverse()})
        raise DomainError(f"{self} is not invertible in U(g)^(x){self.arity}")

    def _check_compatible(self, other: "TensorElement") -> None:
        if self.spec != other.spec:
            raise StructuralError("tensors belong to different Lie algebras")
        if self.arity != other.arity:
            raise StructuralError(f"tensor arities differ: {self.arity} and {other.arity}")

    def __add__(self, other):
        if isinstance(other, TensorElement):
            self._check_compatible(other)
            terms = dict(self.terms)
            for k, v in other.terms.items():
                terms[k] = terms.get(k, ZERO) + v
            return TensorElement._raw(self.spec, self.arity, terms)
        if isinstance(other, UEAElement):
            raise StructuralError(f"cannot add elements of different tensor arity "
                                  f"({self.arity} and 1)")
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return self + self.one_like() * scalar

    __radd__ = __add__

    def __neg__(self) -> "TensorElement":
        return TensorElement._raw(self.spec, self.arity, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        if isinstance(other, UEAElement):
            raise StructuralError(f"cannot multiply elements of arity {self.arity} and 1")
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return TensorElement._raw(self.spec, self.arity,
                                  {k: v * scalar for k, v in self.terms.items()})

    def __rmul__(self, other):
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return TensorElement._raw(self.spec, self.arity,
                                  {k: scalar * v for k, v in self.terms.items()})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __pow__(self, exponent: int) -> "TensorElement":
        result = self.one_like()
        for _ in range(exponent):
            result = tensor_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return False
        return self.spec == other.spec and self.arity == other.arity and self.terms == other.terms

    __hash__ = None

    def extend(self, position: int) -> "TensorElement":
        """Insert a unit leg at 0-based `position`: F.extend(2) is F (x) 1,
        F.extend(0) is 1 (x) F."""
        if not 0 <= position <= self.arity:
            raise StructuralError(f"cannot insert a leg at position {position}")
        terms = {legs[:position] + ((),) + legs[position:]: v for legs, v in self.terms.items()}
        return TensorElement._raw(self.spec, self.arity + 1, terms)

    def sorted_terms(self) -> List[Tuple[LegKey, Scalar]]:
        return sorted(self.terms.items(),
                      key=lambda item: (sum(len(leg) for leg in item[0]), item[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for legs, v in self.sorted_terms():
            body = " ⊗ ".join(self.spec.format_monomial(leg) for leg in legs)
            rendered.append(f"({v})*[{body}]")
        return " + ".join(rendered)

    def __repr__(self) -> str:
        return f"TensorElement(arity={self.arity}, {self})"


def tensor(*factors: Union[UEAElement, TensorElement]) -> TensorElement:
    """Tensor product a (x) b (x) ... of UEA or tensor elements."""
    spec = factors[0].spec
    terms: Dict[LegKey, Scalar] = {(): ONE}
    for factor in factors:
        if factor.spec != spec:
            raise StructuralError("factors belong to different Lie algebras")
        items = ([((m,), v) for m, v in factor.terms.items()]
                 if isinstance(factor, UEAElement) else list(factor.terms.items()))
        new_terms: Dict[LegKey, Scalar] = {}
        for legs, c in terms.items():
            for more, v in items:
                key = legs + more
                new_terms[key] = new_terms.get(key, ZERO) + c * v
        terms = new_terms
    arity = sum(1 if isinstance(f, UEAElement) else f.arity for f in factors)
    return TensorElement._raw(spec, arity, terms)


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    """Leg-wise product, bilinear."""
    a._check_compatible(b)
    spec = a.spec
    terms: Dict[LegKey, Scalar] = {}
    for legs1, c1 in a.terms.items():
        for legs2, c2 in b.terms.items():
            forms = [_normal_form(spec, l1 + l2) for l1, l2 in zip(legs1, legs2)]
            c = c1 * c2
            for combination in product(*(f.items() for f in forms)):
                key = tuple(m for m, _ in combination)
                value = c
                for _, v in combination:
                    value = value * v
                terms[key] = terms.get(key, ZERO) + value
    return TensorElement._raw(spec, a.arity, terms)


def coproduct_on_leg(t: TensorElement, leg: int) -> TensorElement:
    """Apply Delta to the 1-based `leg`: (Delta (x) Id) is leg 1."""
    if not 1 <= leg <= t.arity:
        raise StructuralError(f"leg {leg} out of range for arity {t.arity}")
    p = leg - 1
    terms: Dict[LegKey, Scalar] = {}
    for legs, c in t.terms.items():
        for (left, right), v in _coproduct_of_monomial(t.spec, legs[p]).items():
            key = legs[:p] + (left, right) + legs[p + 1:]
            terms[key] = terms.get(key, ZERO) + c * v
    return TensorElement._raw(t.spec, t.arity + 1, terms)


def counit_on_leg(t: TensorElement, leg: int) -> Union[UEAElement, TensorElement]:
    """Apply epsilon to the 1-based `leg`; arity 2 drops to a UEAElement."""
    if not 1 <= leg <= t.arity:
        raise StructuralError(f"leg {leg} out of range for arity {t.arity}")
    p = leg - 1
    terms: Dict[LegKey, Scalar] = {}
    for legs, c in t.terms.items():
        if legs[p]:
            continue
        key = legs[:p] + legs[p + 1:]
        terms[key] = terms.get(key, ZERO) + c
    if t.arity == 2:
        return UEAElement._raw(t.spec, {key[0]: v for key, v in terms.items()})
    return TensorElement._raw(t.spec, t.arity - 1, terms)

import logging
import random
from abc import ABC, abstractmethod
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from twistkit.errors import DomainError, StructuralError
from twistkit.scalars import DEFAULT_ORDER, ONE, Scalar, TruncatedSeries, series_mul

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]

# basis cutoffs for exhaustive checks, per model kind
DEFAULT_CUTOFFS = {"torus": 2, "affine": 3}


class FunctionModel(ABC):
    r"""Abstract base class for the concrete function spaces standing in for
    C^oo(M)[[h]]. Elements are finite sums of basis functions indexed by an
    integer vector (a key); the product of two basis functions is the basis
    function of the summed key, so models only differ in how the coordinate
    derivatives act on a basis function.
    """
    kind = "abstract"

    def __init__(self, n: int, order: int = DEFAULT_ORDER) -> None:
        r"""
        :param n:     Dimension of the underlying manifold.
        :param order: Truncation order N of every coefficient series.
        """
        if n < 1:
            raise StructuralError(f"model dimension must be positive, got {n}")
        if order < 0:
            raise StructuralError(f"negative truncation order {order}")
        self.n = n
        self.order = order

    @property
    def coordinate_names(self) -> Tuple[str, ...]:
        if self.n <= 3:
            return ("x", "y", "z")[:self.n]
        return tuple(f"x{j + 1}" for j in range(self.n))

    def coordinate_index(self, name: str) -> int:
        try:
            return self.coordinate_names.index(name)
        except ValueError:
            raise StructuralError(f"{name!r} is not a coordinate of {self}")

    @property
    def unit_key(self) -> Key:
        return (0,) * self.n

    @property
    def has_poisson_structure(self) -> bool:
        """Standard symplectic form dx^dy exists on 2-dimensional models."""
        return self.n == 2

    def multiply_keys(self, a: Key, b: Key) -> Key:
        return tuple(p + q for p, q in zip(a, b))

    @abstractmethod
    def check_key(self, key: Key) -> None:
        """Raise StructuralError when `key` does not index a basis function."""
        pass

    @abstractmethod
    def partial_basis(self, j: int, key: Key) -> Optional[Tuple[Key, Scalar]]:
        """d/dx_j of the basis function `key`, as (key', coefficient) or None for 0."""
        pass

    @abstractmethod
    def basis(self, cutoff: int) -> List[Key]:
        """Basis keys inside `cutoff`, in a fixed order."""
        pass

    @abstractmethod
    def coordinate(self, j: int) -> "FunctionElement":
        pass

    @abstractmethod
    def format_key(self, key: Key) -> str:
        pass

    element_class = None

    def element(self, terms: Optional[Mapping[Key, object]] = None) -> "FunctionElement":
        return self.element_class(self, terms)

    def zero(self) -> "FunctionElement":
        return self.element({})

    def one(self) -> "FunctionElement":
        return self.basis_element(self.unit_key)

    def basis_element(self, key: Key, coefficient=ONE) -> "FunctionElement":
        return self.element({tuple(key): coefficient})

    def constant(self, value) -> "FunctionElement":
        return self.element({self.unit_key: value})

    def differentiate(self, f: "FunctionElement", j: int) -> "FunctionElement":
        self.require_same(f.model)
        if not 0 <= j < self.n:
            raise StructuralError(f"coordinate index {j} out of range for {self}")
        terms: Dict[Key, TruncatedSeries] = {}
        for key, c in f.terms.items():
            image = self.partial_basis(j, key)
            if image is None:
                continue
            new_key, factor = image
            value = c * factor
            terms[new_key] = terms[new_key] + value if new_key in terms else value
        return self.element_class._raw(self, terms)

    def random_element(self, rng: random.Random, cutoff: int, size: int = 2) -> "FunctionElement":
        """Small integer combination of `size` distinct basis functions."""
        keys = self.basis(cutoff)
        chosen = rng.sample(keys, min(size, len(keys)))
        return self.element({key: Scalar(rng.randint(-3, 3) or 1, rng.randint(-2, 2))
                             for key in chosen})

    def require_same(self, other: "FunctionModel") -> None:
        if self != other:
            raise StructuralError(f"function models differ: {self} and {other}")

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionModel) and \
            (self.kind, self.n, self.order) == (other.kind, other.n, other.order)

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.order))

    def __str__(self) -> str:
        return f"{self.kind}({self.n})"

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, order={self.order})"


def _as_series(value, order: int) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        if value.order != order:
            raise StructuralError(f"coefficient has order {value.order}, model has {order}")
        return value
    scalar = Scalar.coerce(value)
    if scalar is NotImplemented:
        raise StructuralError(f"cannot use {value!r} as a function coefficient")
    return TruncatedSeries.constant(scalar, order)


class FunctionElement:
    r"""Finite sum of basis functions with TruncatedSeries-of-Scalar
    coefficients. No zero coefficients are stored."""
    __slots__ = ("model", "terms")

    def __init__(self, model: FunctionModel, terms: Optional[Mapping[Key, object]] = None) -> None:
        self.model = model
        cleaned: Dict[Key, TruncatedSeries] = {}
        for key, value in (terms or {}).items():
            key = tuple(key)
            model.check_key(key)
            series = _as_series(value, model.order)
            if key in cleaned:
                series = cleaned[key] + series
            cleaned[key] = series
        self.terms = {k: v for k, v in cleaned.items() if not v.is_zero()}

    @classmethod
    def _raw(cls, model: FunctionModel, terms: Dict[Key, TruncatedSeries]) -> "FunctionElement":
        element = cls.__new__(cls)
        element.model = model
        element.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        return element

    def _new(self, terms: Dict[Key, TruncatedSeries]) -> "FunctionElement":
        return type(self)._raw(self.model, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_h_constant(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def h_coefficient(self, k: int) -> "FunctionElement":
        """The h^k part, as an h-constant function."""
        order = self.model.order
        return self._new({key: TruncatedSeries.constant(c.coefficient(k), order)
                          for key, c in self.terms.items()})

    def h_shift(self, k: int) -> "FunctionElement":
        """Multiply by h^k."""
        return self._new({key: c.shift(k) for key, c in self.terms.items()})

    def keys(self) -> List[Key]:
        return sorted(self.terms)

    def __iter__(self) -> Iterator[Tuple[Key, TruncatedSeries]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, FunctionElement):
            if Scalar.coerce(other) is NotImplemented and not isinstance(other, TruncatedSeries):
                return NotImplemented
            other = self.model.constant(other)
        self.model.require_same(other.model)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self) -> "FunctionElement":
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FunctionElement):
            return pointwise_mul(self, other)
        if isinstance(other, TruncatedSeries):
            return self._new({k: series_mul(c, other) for k, c in self.terms.items()})
        scalar = Scalar.coerce(other)
        if scalar is NotImplemented:
            return NotImplemented
        return self._new({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionElement):
            return False
        return self.model == other.model and self.terms == other.terms

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]*{self.model.format_key(key)}" for key, c in self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


def pointwise_mul(f: FunctionElement, g: FunctionElement) -> FunctionElement:
    """The undeformed product m: basis functions multiply by key addition."""
    f.model.require_same(g.model)
    model = f.model
    terms: Dict[Key, TruncatedSeries] = {}
    for k1, c1 in f.terms.items():
        for k2, c2 in g.terms.items():
            key = model.multiply_keys(k1, k2)
            value = series_mul(c1, c2)
            terms[key] = terms[key] + value if key in terms else value
    return f._new(terms)


def check_dimension(model: FunctionModel, n: int, operation: str) -> None:
    if model.n != n:
        raise StructuralError(f"{operation} needs a {n}-dimensional model, got {model}")


def require_h_constant(f: FunctionElement, what: str) -> None:
    if not f.is_h_constant():
        raise DomainError(f"{what} must not depend on h, got {f}")

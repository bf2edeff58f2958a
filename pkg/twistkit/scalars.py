"""
Exact coefficients and truncated formal power series in h.

`Scalar` is an element of Q(i) stored as two `Fraction`s. `TruncatedSeries`
holds the coefficients of h^0 ... h^N over any ring whose elements support
+, -, *, scaling by a Scalar, `is_zero()` and `one_like()` (Scalar,
UEAElement, TensorElement).
"""
import logging
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Union

from twistkit.errors import DomainError, StructuralError

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 6

Rational = Union[int, Fraction]


class Scalar:
    r"""A Gaussian rational re + im*i with arbitrary precision parts.

    Example:
        >>> Scalar(1, 2) * Scalar(0, 1)
        Scalar(-2, 1)
        >>> str(Scalar(Fraction(1, 2), Fraction(-3, 4)))
        '1/2-3/4*i'
    """
    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("Scalar parts must be exact (int or Fraction)")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value: Any) -> "Scalar":
        """Turn int, Fraction, Scalar or an exact string into a Scalar.
        Returns NotImplemented for anything else so that ring elements
        get a chance to handle the operation."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        if isinstance(value, str):
            return Scalar.parse(value)
        return NotImplemented

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Inverse of `str`: "a/b+c/d*i", "a/b", "c/d*i"."""
        text = text.strip().replace(" ", "")
        if not text:
            raise ValueError("empty scalar literal")
        if not text.endswith("*i"):
            return Scalar(Fraction(text))
        body = text[:-2]
        split = max(body.rfind("+"), body.rfind("-"))
        if split <= 0:
            return Scalar(0, Fraction(body))
        return Scalar(Fraction(body[:split]), Fraction(body[split:]))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def one_like(self) -> "Scalar":
        return ONE

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DomainError("scalar 0 is not invertible")
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.re / norm, -self.im / norm)

    def __add__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.im == 0 and other.im == 0:
            return Scalar(self.re * other.re)
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = Scalar.coerce(other) if not isinstance(other, str) else NotImplemented
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self) -> str:
        return f"Scalar({self.re}, {self.im})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _is_zero(c) -> bool:
    return c.is_zero()


class TruncatedSeries:
    r"""c_0 + c_1 h + ... + c_N h^N, all arithmetic mod h^{N+1}.

    The order N is part of the value: combining series of different orders
    raises StructuralError instead of silently re-truncating.
    """
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: Optional[int] = None) -> None:
        coeffs = list(coeffs)
        if not coeffs:
            raise StructuralError("a series needs at least its h^0 coefficient")
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise StructuralError(f"negative truncation order {order}")
        if len(coeffs) > order + 1:
            raise StructuralError(f"{len(coeffs)} coefficients do not fit order {order}")
        if len(coeffs) < order + 1:
            zero = coeffs[0] * 0
            coeffs += [zero] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, value, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def scalar(cls, value, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([Scalar.coerce(value)], order)

    @classmethod
    def h(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """The formal parameter itself (zero when order == 0)."""
        if order == 0:
            return cls([ZERO], 0)
        return cls([ZERO, ONE], order)

    @property
    def head(self):
        return self.coeffs[0]

    def zero_coefficient(self):
        return self.coeffs[0] * 0

    def one_like(self) -> "TruncatedSeries":
        return TruncatedSeries([self.coeffs[0].one_like()], self.order)

    def coefficient(self, k: int):
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def is_constant(self) -> bool:
        """True when no positive power of h occurs."""
        return all(_is_zero(c) for c in self.coeffs[1:])

    def lowest_nonzero_order(self) -> Optional[int]:
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return k
        return None

    def map(self, fn: Callable) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by h^k."""
        if k == 0:
            return self
        zero = self.zero_coefficient()
        kept = list(self.coeffs[:max(self.order + 1 - k, 0)])
        return TruncatedSeries([zero] * min(k, self.order + 1) + kept, self.order)

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise StructuralError(
                f"truncation orders differ: {self.order} and {other.order}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_order(other)
            return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)
        return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:], self.order)

    def __radd__(self, other):
        return TruncatedSeries((other + self.coeffs[0],) + self.coeffs[1:], self.order)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries([c * other for c in self.coeffs], self.order)

    def __rmul__(self, other):
        return TruncatedSeries([other * c for c in self.coeffs], self.order)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_invert(other))
        factor = Scalar.coerce(other).inverse()
        return self * factor

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            return series_invert(self) ** (-exponent)
        result = self.one_like()
        for _ in range(exponent):
            result = series_mul(result, self)
        return result

    def invert(self) -> "TruncatedSeries":
        return series_invert(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return False
        return self.order == other.order and \
            all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*h")
            else:
                parts.append(f"({c})*h^{k}")
        return " + ".join(parts) if parts else "0"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at order N. Coefficients multiply in the
    order given, so non-commutative rings are handled."""
    a._check_order(b)
    n = a.order
    nonzero_a = [(i, c) for i, c in enumerate(a.coeffs) if not _is_zero(c)]
    nonzero_b = [(j, c) for j, c in enumerate(b.coeffs) if not _is_zero(c)]
    result: List = [None] * (n + 1)
    for i, ca in nonzero_a:
        for j, cb in nonzero_b:
            if i + j > n:
                break
            term = ca * cb
            result[i + j] = term if result[i + j] is None else result[i + j] + term
    zero = None
    for k in range(n + 1):
        if result[k] is None:
            if zero is None:
                zero = a.coeffs[0] * 0
            result[k] = zero
    return TruncatedSeries(result, n)


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Order-by-order inverse: b_0 = a_0^{-1}, b_n = -a_0^{-1} sum_{k>=1} a_k b_{n-k}.

    :raises DomainError: if the h^0 coefficient is not invertible in its ring
    """
    try:
        head_inverse = a.coeffs[0].inverse()
    except DomainError as e:
        raise DomainError(f"series is not invertible, zeroth coefficient {a.coeffs[0]}: {e}") from e
    inverse = [head_inverse]
    for n in range(1, a.order + 1):
        acc = None
        for k in range(1, n + 1):
            if _is_zero(a.coeffs[k]):
                continue
            term = a.coeffs[k] * inverse[n - k]
            acc = term if acc is None else acc + term
        inverse.append(head_inverse * 0 if acc is None else -(head_inverse * acc))
    return TruncatedSeries(inverse, a.order)


def exp_series(x: TruncatedSeries) -> TruncatedSeries:
    """sum_{k<=N} x^k / k! for a series with vanishing h^0 coefficient."""
    if not _is_zero(x.head):
        raise DomainError(f"exp needs a vanishing constant term, got {x.head}")
    result = x.one_like()
    term = result
    for k in range(1, x.order + 1):
        term = series_mul(term, x) * Fraction(1, k)
        result = result + term
    return result


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """log(1 + y) = sum_{k<=N} (-1)^{k+1} y^k / k for a series with unit head."""
    one = a.one_like()
    y = a - one
    if not _is_zero(y.head):
        raise DomainError(f"log needs constant term 1, got {a.head}")
    result = y * 0
    power = y
    for k in range(1, a.order + 1):
        result = result + power * Fraction((-1) ** (k + 1), k)
        power = series_mul(power, y)
    return result

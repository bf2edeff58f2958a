from itertools import product
from typing import List, Optional, Tuple

from twistkit.errors import StructuralError
from twistkit.models.model import FunctionElement, FunctionModel, Key
from twistkit.scalars import Scalar


class PolyFunction(FunctionElement):
    r"""Polynomial sum_a c_a(h) x^a on R^n."""
    __slots__ = ()

    def degree(self) -> int:
        return max((sum(key) for key in self.terms), default=0)


class AffineModel(FunctionModel):
    r"""Polynomials on R^n, d/dx_j x^a = a_j x^(a - e_j)."""
    kind = "affine"
    element_class = PolyFunction

    def check_key(self, key: Key) -> None:
        if len(key) != self.n or any(a < 0 for a in key):
            raise StructuralError(f"{key} is not a multi-exponent of {self}")

    def partial_basis(self, j: int, key: Key) -> Optional[Tuple[Key, Scalar]]:
        if key[j] == 0:
            return None
        lowered = key[:j] + (key[j] - 1,) + key[j + 1:]
        return lowered, Scalar(key[j])

    def basis(self, cutoff: int) -> List[Key]:
        """Monomials of total degree <= cutoff, by degree then exponents."""
        keys = [key for key in product(range(cutoff + 1), repeat=self.n) if sum(key) <= cutoff]
        return sorted(keys, key=lambda key: (sum(key), key))

    def coordinate(self, j: int) -> PolyFunction:
        return self.basis_element(tuple(1 if i == j else 0 for i in range(self.n)))

    def format_key(self, key: Key) -> str:
        parts = []
        for name, power in zip(self.coordinate_names, key):
            if power == 1:
                parts.append(name)
            elif power > 1:
                parts.append(f"{name}^{power}")
        return "*".join(parts) if parts else "1"

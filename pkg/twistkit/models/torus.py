from itertools import product
from typing import List, Optional, Tuple

import numpy as np

from twistkit.errors import DomainError, StructuralError
from twistkit.models.model import FunctionElement, FunctionModel, Key
from twistkit.scalars import Scalar


class FourierFunction(FunctionElement):
    r"""Fourier polynomial sum_m c_m(h) e_m on the torus [0, 2pi)^n,
    e_m(x) = exp(i <m, x>)."""
    __slots__ = ()

    def sample(self, grid: Tuple[np.ndarray, ...], k: int = 0) -> np.ndarray:
        """Values of the h^k part on a meshgrid (floating point)."""
        values = np.zeros(grid[0].shape, dtype=complex)
        for key, c in self.terms.items():
            phase = sum(m * x for m, x in zip(key, grid))
            values = values + complex(c.coefficient(k)) * np.exp(1j * phase)
        return values


class TorusModel(FunctionModel):
    r"""Fourier polynomials on T^n. The coordinate derivatives act diagonally:
    d/dx_j e_m = i m_j e_m.

    Example:
        >>> t = TorusModel(2)
        >>> t.differentiate(t.basis_element((1, 0)), 0) == t.basis_element((1, 0), Scalar(0, 1))
        True
    """
    kind = "torus"
    element_class = FourierFunction

    def check_key(self, key: Key) -> None:
        if len(key) != self.n:
            raise StructuralError(f"mode {key} does not have {self.n} components")

    def partial_basis(self, j: int, key: Key) -> Optional[Tuple[Key, Scalar]]:
        if key[j] == 0:
            return None
        return key, Scalar(0, key[j])

    def basis(self, cutoff: int) -> List[Key]:
        """Modes with every |component| <= cutoff."""
        return list(product(range(-cutoff, cutoff + 1), repeat=self.n))

    def coordinate(self, j: int) -> FunctionElement:
        raise DomainError(f"coordinate {self.coordinate_names[j]} is not a periodic function "
                          f"on {self}; use exp, sin or cos of it")

    def mode(self, *components: int) -> FourierFunction:
        return self.basis_element(tuple(components))

    def format_key(self, key: Key) -> str:
        if key == self.unit_key:
            return "1"
        return "e(" + ",".join(str(m) for m in key) + ")"

from twistkit.models.model import FunctionModel, FunctionElement, pointwise_mul
from twistkit.models.torus import TorusModel, FourierFunction
from twistkit.models.affine import AffineModel, PolyFunction
from twistkit.models.action import (VectorField, ActionAssignment, SectionAction, act_generator,
                                    represent, tensor_act, contract, poisson_bracket,
                                    poisson_bracket_T2)


def make_model(kind: str, n: int, order: int) -> FunctionModel:
    if kind == "torus":
        return TorusModel(n, order)
    if kind == "affine":
        return AffineModel(n, order)
    raise ValueError(f"unknown model kind {kind!r}")


__all__ = [
    "FunctionModel",
    "FunctionElement",
    "TorusModel",
    "FourierFunction",
    "AffineModel",
    "PolyFunction",
    "VectorField",
    "ActionAssignment",
    "SectionAction",
    "make_model",
    "pointwise_mul",
    "act_generator",
    "represent",
    "tensor_act",
    "contract",
    "poisson_bracket",
    "poisson_bracket_T2",
]

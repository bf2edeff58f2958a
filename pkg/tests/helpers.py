"""
Twists, actions and documents shared by the test modules.
"""
import io
import os
from contextlib import redirect_stderr, redirect_stdout

from twistkit.cli import main as cli
from twistkit.dsl.builder import tensor_series
from twistkit.models import ActionAssignment, AffineModel, TorusModel, VectorField
from twistkit.scalars import I, Scalar, TruncatedSeries, log_series
from twistkit.twist import Twist, build_exponential_twist
from twistkit.uea import LieAlgebraSpec, TensorElement, UEAElement, tensor

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")

TRANSLATIONS = LieAlgebraSpec.abelian(["X", "Y"])
AX_PLUS_B = LieAlgebraSpec.from_brackets(["H", "E"], {("H", "E"): {"E": 1}})


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS, name)


def read_corpus(name: str) -> str:
    with open(corpus_path(name), encoding="utf-8") as f:
        return f.read()


def run_cli(*argv):
    """(exit code, stdout, stderr) of one command-line run."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli(list(argv))
    return code, out.getvalue(), err.getvalue()


def first_order_twist(spec: LieAlgebraSpec, r: TensorElement, order: int, name: str) -> Twist:
    """exp(h r)."""
    return build_exponential_twist(TruncatedSeries([TensorElement.zero(spec), r], order), name)


def moyal_twist(order: int) -> Twist:
    X = UEAElement.generator(TRANSLATIONS, "X")
    Y = UEAElement.generator(TRANSLATIONS, "Y")
    r = (tensor(Y, X) - tensor(X, Y)) * (I / 2)
    return first_order_twist(TRANSLATIONS, r, order, "moyal")


def jordanian_twist(order: int) -> Twist:
    H = UEAElement.generator(AX_PLUS_B, "H")
    E = UEAElement.generator(AX_PLUS_B, "E")
    log = log_series(TruncatedSeries([UEAElement.one(AX_PLUS_B), E], order))
    return build_exponential_twist(
        tensor_series(TruncatedSeries.constant(H, order), log, AX_PLUS_B), "jordanian")


def naive_twist(order: int) -> Twist:
    H = UEAElement.generator(AX_PLUS_B, "H")
    E = UEAElement.generator(AX_PLUS_B, "E")
    return first_order_twist(AX_PLUS_B, tensor(H, E), order, "naive")


def symmetric_twist(order: int) -> Twist:
    X = UEAElement.generator(TRANSLATIONS, "X")
    return first_order_twist(TRANSLATIONS, tensor(X, X), order, "symmetric")


def torus_action(order: int) -> ActionAssignment:
    model = TorusModel(2, order)
    return ActionAssignment(TRANSLATIONS, model, [VectorField.partial(model, 0),
                                                  VectorField.partial(model, 1)], name="shifts")


def affine_action(order: int) -> ActionAssignment:
    model = AffineModel(1, order)
    dilation = VectorField(model, [model.coordinate(0) * Scalar(-1)])
    return ActionAssignment(AX_PLUS_B, model, [dilation, VectorField.partial(model, 0)],
                            name="axb")

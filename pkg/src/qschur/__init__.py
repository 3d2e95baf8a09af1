"""Quaternionic Schur analysis: Pick matrices, Toeplitz contractivity and
three-point certification of slice-regular power series."""

from .exceptions import DegenerateClassError, DomainError, NotHermitianError, QSchurError, ShapeError
from .pick import (
    ConjugatedFunction,
    CorruptedFunction,
    HarnessConfig,
    PickProblem,
    SeriesFunction,
    Side,
    TabulatedFunction,
    dual_certify,
    hindmarsh_certify,
    pick_matrix,
    reconstruct_slice_series,
    representation_extend,
    vvector_extend,
)
from .qlinalg import QMatrix, embed, is_psd, solve_stein_entry, stein_residual
from .quaternion import Quaternion, equivalent, join, mul, sphere_representative, split
from .report import CertReport, Verdict
from .series import (
    ComplexSeries,
    QPowerSeries,
    block_criterion,
    certify_schur,
    eval_left,
    eval_right,
    is_contractive,
    sharp,
    slice_decompose,
    toeplitz,
)

__version__ = "0.1.0"

__all__ = [
    "CertReport",
    "ComplexSeries",
    "ConjugatedFunction",
    "CorruptedFunction",
    "DegenerateClassError",
    "DomainError",
    "HarnessConfig",
    "NotHermitianError",
    "PickProblem",
    "QMatrix",
    "QPowerSeries",
    "QSchurError",
    "Quaternion",
    "SeriesFunction",
    "ShapeError",
    "Side",
    "TabulatedFunction",
    "Verdict",
    "block_criterion",
    "certify_schur",
    "dual_certify",
    "embed",
    "equivalent",
    "eval_left",
    "eval_right",
    "hindmarsh_certify",
    "is_contractive",
    "is_psd",
    "join",
    "mul",
    "pick_matrix",
    "reconstruct_slice_series",
    "representation_extend",
    "sharp",
    "slice_decompose",
    "solve_stein_entry",
    "sphere_representative",
    "split",
    "stein_residual",
    "toeplitz",
    "vvector_extend",
]

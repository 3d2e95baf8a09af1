"""Quaternionic power series and their Schur-class tests.

A series ``g(z) = sum z^k g_k`` is held as a finite coefficient vector; the
formal variable commutes with the coefficients, so left evaluation
``sum a^k g_k`` and right evaluation ``sum g_k a^k`` both make sense and
differ in general.  Membership in the Schur class is tested through the
lower triangular Toeplitz matrices ``T_n(g)``, which must all be
contractions.  On the complex slice a series splits as ``s + h j`` with
complex series ``s`` and ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DomainError
from .qlinalg import PSD_TOL, QMatrix, embed, psd_check, spectral_norm
from .quaternion import ONE, ZERO, Quaternion, join
from .report import CertReport, Verdict

__all__ = [
    "QPowerSeries",
    "ComplexSeries",
    "eval_left",
    "eval_right",
    "sharp",
    "toeplitz",
    "complex_toeplitz",
    "is_contractive",
    "certify_schur",
    "slice_decompose",
    "join_slices",
    "block_criterion",
    "toeplitz_defect_embedding",
    "random_schur_series",
    "polynomial",
    "monomial",
    "DEFAULT_GROWTH_BOUND",
    "DEFAULT_GROWTH_MARGIN",
]

DEFAULT_GROWTH_BOUND = 1e6
DEFAULT_GROWTH_MARGIN = 0.05


@dataclass(frozen=True)
class QPowerSeries:
    """Finite coefficient vector ``(g_0, ..., g_d)`` of a quaternionic series.

    ``truncated`` marks a finite section of an infinite series, in which case
    evaluations are only meaningful inside the unit ball.
    """

    coefficients: tuple[Quaternion, ...]
    truncated: bool = False

    def __post_init__(self):
        coeffs = tuple(Quaternion.coerce(c) for c in self.coefficients)
        if not coeffs:
            coeffs = (ZERO,)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, *coeffs, truncated: bool = False) -> QPowerSeries:
        return cls(tuple(coeffs), truncated)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def coefficient(self, k: int) -> Quaternion:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else ZERO

    def scaled(self, factor: float) -> QPowerSeries:
        return QPowerSeries(tuple(c * factor for c in self.coefficients), self.truncated)

    def check_growth(
        self, bound: float = DEFAULT_GROWTH_BOUND, margin: float = DEFAULT_GROWTH_MARGIN
    ) -> None:
        """Reject coefficient vectors with ``|g_k| > bound * (1 + margin)**k``."""
        for k, c in enumerate(self.coefficients):
            if not abs(c) <= bound * (1.0 + margin) ** k:
                raise DomainError(f"coefficient {k} has modulus {abs(c):.6g}, above the growth bound")

    def __call__(self, a: Quaternion) -> Quaternion:
        return eval_left(self, a)

    def to_dict(self) -> dict:
        return {
            "coefficients": [list(c.as_tuple()) for c in self.coefficients],
            "truncated": self.truncated,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> QPowerSeries:
        if not isinstance(obj, dict):
            raise ValueError("series must be a JSON object")
        if "coefficients" not in obj:
            raise ValueError("series is missing field 'coefficients'")
        raw = obj["coefficients"]
        if not isinstance(raw, list) or not raw:
            raise ValueError("field 'coefficients' must be a non-empty list")
        coeffs = []
        for k, c in enumerate(raw):
            if not isinstance(c, list) or len(c) != 4:
                raise ValueError(f"field 'coefficients[{k}]' must be a list of 4 numbers")
            try:
                coeffs.append(Quaternion.from_sequence([float(v) for v in c]))
            except (TypeError, ValueError):
                raise ValueError(f"field 'coefficients[{k}]' must contain numbers") from None
        truncated = obj.get("truncated", False)
        if not isinstance(truncated, bool):
            raise ValueError("field 'truncated' must be a boolean")
        return cls(tuple(coeffs), truncated)


@dataclass(frozen=True)
class ComplexSeries:
    """Complex power series ``sum zeta^k c_k`` (one slice component)."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients) or (0j,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __call__(self, zeta: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * zeta + c
        return acc

    def to_dict(self) -> dict:
        return {"coefficients": [[c.real, c.imag] for c in self.coefficients]}

    @classmethod
    def from_dict(cls, obj: dict) -> ComplexSeries:
        try:
            return cls(tuple(complex(re, im) for re, im in obj["coefficients"]))
        except KeyError:
            raise ValueError("complex series is missing field 'coefficients'") from None


def eval_left(g: QPowerSeries, a: Quaternion) -> Quaternion:
    """``sum a^k g_k``, by Horner's rule with ``a`` multiplied from the left."""
    a = Quaternion.coerce(a)
    coeffs = g.coefficients
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = a * acc + c
    return acc


def eval_right(g: QPowerSeries, a: Quaternion) -> Quaternion:
    """``sum g_k a^k``, by Horner's rule with ``a`` multiplied from the right."""
    a = Quaternion.coerce(a)
    coeffs = g.coefficients
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * a + c
    return acc


def sharp(g: QPowerSeries) -> QPowerSeries:
    """Coefficientwise conjugate ``sum z^k conj(g_k)``."""
    return QPowerSeries(tuple(c.conj() for c in g.coefficients), g.truncated)


def toeplitz(g: QPowerSeries, n: int) -> QMatrix:
    """``n x n`` lower triangular Toeplitz matrix with first column ``g_0 .. g_{n-1}``."""
    if n < 1:
        raise ValueError("n must be positive")
    data = np.zeros((n, n, 4))
    idx = np.arange(n)
    for k in range(min(n, len(g.coefficients))):
        data[idx[k:], idx[: n - k]] = g.coefficients[k].as_tuple()
    return QMatrix(data)


def complex_toeplitz(s: ComplexSeries, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    t = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    for k in range(min(n, len(s.coefficients))):
        t[idx[k:], idx[: n - k]] = s.coefficients[k]
    return t


def _contractivity(t: QMatrix, tol: float) -> tuple[bool, float, float]:
    return psd_check(QMatrix.identity(t.rows) - t @ t.adjoint(), tol)


def is_contractive(t: QMatrix, tol: float = PSD_TOL) -> bool:
    """Whether ``I - T T*`` is positive semidefinite, i.e. ``||T|| <= 1``."""
    return _contractivity(t, tol)[0]


def certify_schur(g: QPowerSeries, n_max: int = 64, tol: float = PSD_TOL) -> CertReport:
    """Check that ``T_n(g)`` is contractive for ``n = 1 .. n_max``.

    The orders are scanned upwards and the first failing order is reported
    as the witness; failure at one order persists at all higher orders since
    ``I - T_n T_n*`` is a principal submatrix of ``I - T_m T_m*`` for ``m > n``.
    A pass certifies the necessary condition up to ``n_max`` only.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    params = {"order": n_max, "tol": tol, "degree": g.degree}
    per_order = []
    worst = 0.0
    for n in range(1, n_max + 1):
        ok, lo, scale = _contractivity(toeplitz(g, n), tol)
        per_order.append({"order": n, "min_eigenvalue": lo})
        worst = max(worst, -lo / scale)
        if not ok:
            return CertReport(
                kind="schur",
                verdict=Verdict.FAIL,
                witness={"kind": "toeplitz", "order": n, "min_eigenvalue": lo, "scale": scale},
                residuals={"contractivity_defect": worst},
                thresholds={"contractivity_defect": tol},
                params=params,
                stages=per_order,
                notes=[f"T_{n}(g) is not contractive, so g is not in the Schur class"],
            )
    notes = [f"no violation found up to order {n_max}: T_n(g) contractive for n = 1..{n_max}"]
    if n_max < len(g.coefficients):
        notes.append(f"order {n_max} does not reach the series degree {g.degree}")
    if g.truncated:
        notes.append("series is a truncation; higher coefficients were not checked")
    return CertReport(
        kind="schur",
        verdict=Verdict.PASS,
        residuals={"contractivity_defect": worst},
        thresholds={"contractivity_defect": tol},
        params=params,
        stages=per_order,
        notes=notes,
    )


def slice_decompose(g: QPowerSeries) -> tuple[ComplexSeries, ComplexSeries]:
    """Split ``g = s + h j`` coefficientwise into complex series."""
    pairs = [c.split() for c in g.coefficients]
    return ComplexSeries(tuple(p[0] for p in pairs)), ComplexSeries(tuple(p[1] for p in pairs))


def join_slices(s: ComplexSeries, h: ComplexSeries, truncated: bool = False) -> QPowerSeries:
    """Inverse of :func:`slice_decompose`."""
    n = max(len(s.coefficients), len(h.coefficients))
    sc = list(s.coefficients) + [0j] * (n - len(s.coefficients))
    hc = list(h.coefficients) + [0j] * (n - len(h.coefficients))
    return QPowerSeries(tuple(join(a, b) for a, b in zip(sc, hc)), truncated)


def block_criterion(s: ComplexSeries, h: ComplexSeries, n: int) -> np.ndarray:
    """The ``2n x 2n`` complex matrix whose positivity decides ``s + h j`` at order ``n``.

    It coincides with the complex embedding of ``I - T_n(g) T_n(g)*`` for
    ``g = s + h j``; the off-diagonal blocks use plain transposes.
    """
    ts = complex_toeplitz(s, n)
    th = complex_toeplitz(h, n)
    eye = np.eye(n, dtype=complex)
    top_left = eye - ts @ ts.conj().T - th @ th.conj().T
    top_right = ts @ th.T - th @ ts.T
    bottom_left = th.conj() @ ts.conj().T - ts.conj() @ th.conj().T
    bottom_right = eye - ts.conj() @ ts.T - th.conj() @ th.T
    return np.block([[top_left, top_right], [bottom_left, bottom_right]])


def toeplitz_defect_embedding(g: QPowerSeries, n: int) -> np.ndarray:
    """Embedding of ``I - T_n(g) T_n(g)*``; the quaternionic route to :func:`block_criterion`."""
    t = toeplitz(g, n)
    return embed(QMatrix.identity(n) - t @ t.adjoint())


def polynomial(coeffs: Iterable[Quaternion | complex | float]) -> QPowerSeries:
    return QPowerSeries(tuple(coeffs))


def monomial(k: int, coeff: Quaternion = ONE) -> QPowerSeries:
    return QPowerSeries((ZERO,) * k + (coeff,))


def series_from_arrays(coeffs: Sequence[Sequence[float]], truncated: bool = False) -> QPowerSeries:
    return QPowerSeries(tuple(Quaternion.from_sequence(c) for c in coeffs), truncated)


def random_schur_series(
    rng: np.random.Generator, degree: int, order: int = 64, shrink: float = 1.0
) -> QPowerSeries:
    """Random polynomial scaled so that ``||T_order(g)|| == shrink``.

    Coefficients are Gaussian; the scaling uses the spectral norm of the
    complex embedding of the Toeplitz matrix.
    """
    raw = QPowerSeries(tuple(Quaternion(*map(float, rng.normal(size=4))) for _ in range(degree + 1)))
    norm = spectral_norm(toeplitz(raw, order))
    return raw.scaled(shrink / norm)

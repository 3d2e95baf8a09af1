"""Dense matrices over the quaternions.

A :class:`QMatrix` keeps its entries in a float array of shape
``(rows, cols, 4)``.  Products go through the complex split
``A = A1 + A2 j``, and positivity is decided on the complex adjoint
embedding ``[[A1, A2], [-conj(A2), conj(A1)]]``, which is a
*-homomorphism preserving positive semidefiniteness.

Complex matrices are plain ``numpy`` arrays of dtype ``complex128``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DomainError, NotHermitianError, ShapeError
from .quaternion import Quaternion, left_matrix, right_matrix

__all__ = [
    "QMatrix",
    "embed",
    "unembed",
    "hermitian_eigvalsh",
    "jacobi_eigvalsh",
    "min_eigenvalue",
    "is_psd",
    "psd_check",
    "solve_stein_entry",
    "stein_residual",
    "spectral_norm",
    "PSD_TOL",
    "HERMITIAN_TOL",
]

PSD_TOL = 1e-9
HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
# embeddings up to this size go through the Jacobi solver, larger ones to LAPACK
JACOBI_MAX_DIM = 16


class QMatrix:
    """Immutable dense quaternionic matrix."""

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ShapeError(f"expected an array of shape (rows, cols, 4), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError("matrix must have at least one row and one column")
        arr.setflags(write=False)
        self._data = arr

    # construction -----------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Quaternion | complex | float]]) -> QMatrix:
        data = [[tuple(Quaternion.coerce(v)) for v in row] for row in rows]
        widths = {len(r) for r in data}
        if len(widths) != 1:
            raise ShapeError("ragged rows")
        return cls(data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Quaternion]) -> QMatrix:
        flat = [tuple(Quaternion.coerce(e)) for e in entries]
        if len(flat) != rows * cols:
            raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(flat)}")
        return cls(np.array(flat, dtype=float).reshape(rows, cols, 4))

    @classmethod
    def from_complex(cls, a1, a2=None) -> QMatrix:
        """Build ``A1 + A2 j`` from complex matrices."""
        a1 = np.atleast_2d(np.asarray(a1, dtype=complex))
        a2 = np.zeros_like(a1) if a2 is None else np.atleast_2d(np.asarray(a2, dtype=complex))
        if a1.shape != a2.shape:
            raise ShapeError(f"component shapes differ: {a1.shape} vs {a2.shape}")
        return cls(np.stack([a1.real, a1.imag, a2.real, a2.imag], axis=-1))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        data = np.zeros((n, n, 4))
        data[np.arange(n), np.arange(n), 0] = 1.0
        return cls(data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def diag(cls, entries: Sequence[Quaternion]) -> QMatrix:
        n = len(entries)
        data = np.zeros((n, n, 4))
        for i, e in enumerate(entries):
            data[i, i] = tuple(Quaternion.coerce(e))
        return cls(data)

    @classmethod
    def column(cls, entries: Sequence[Quaternion]) -> QMatrix:
        return cls.from_entries(len(entries), 1, entries)

    # access -----------------------------------------------------------------

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape[:2]

    def __getitem__(self, idx: tuple[int, int]) -> Quaternion:
        i, j = idx
        return Quaternion(*map(float, self._data[i, j]))

    def entries(self) -> list[Quaternion]:
        """Entries in row-major order."""
        return [Quaternion(*map(float, v)) for v in self._data.reshape(-1, 4)]

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex matrices ``(A1, A2)`` with ``A = A1 + A2 j``."""
        d = self._data
        return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]

    def is_square(self) -> bool:
        return self.rows == self.cols

    # algebra ----------------------------------------------------------------

    def adjoint(self) -> QMatrix:
        d = self._data.transpose(1, 0, 2).copy()
        d[..., 1:] *= -1.0
        return QMatrix(d)

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        a1, a2 = self.split()
        b1, b2 = other.split()
        # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
        return QMatrix.from_complex(a1 @ b1 - a2 @ b2.conj(), a1 @ b2 + a2 @ b1.conj())

    def __add__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return QMatrix(self._data + other._data)

    def __sub__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return QMatrix(self._data - other._data)

    def __neg__(self) -> QMatrix:
        return QMatrix(-self._data)

    def __mul__(self, s: float) -> QMatrix:
        if isinstance(s, (int, float)):
            return QMatrix(self._data * s)
        return NotImplemented

    __rmul__ = __mul__

    def max_abs(self) -> float:
        """Largest entry modulus."""
        return float(np.sqrt((self._data**2).sum(axis=-1)).max())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"

    # serialization ------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [list(map(float, v)) for v in self._data.reshape(-1, 4)],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> QMatrix:
        try:
            rows = int(obj["rows"])
            cols = int(obj["cols"])
            entries = obj["entries"]
        except KeyError as exc:
            raise ValueError(f"matrix is missing field {exc.args[0]!r}") from None
        return cls.from_entries(rows, cols, [Quaternion.from_sequence(e) for e in entries])


def embed(a: QMatrix) -> np.ndarray:
    """Complex adjoint embedding ``[[A1, A2], [-conj(A2), conj(A1)]]``."""
    a1, a2 = a.split()
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


def unembed(m: np.ndarray) -> QMatrix:
    """Recover ``A`` from its embedding (reads the top block row only)."""
    m = np.asarray(m, dtype=complex)
    r, c = m.shape
    if r % 2 or c % 2:
        raise ShapeError("embedding must have even dimensions")
    n, k = r // 2, c // 2
    return QMatrix.from_complex(m[:n, :k], m[:n, k:])


def jacobi_eigvalsh(h: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol * ||h||_F``.  Returns the eigenvalues in ascending order.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if h.ndim != 2 or h.shape != (n, n):
        raise ShapeError(f"expected a square matrix, got {h.shape}")
    # plain lists beat numpy slicing at the sizes this is used for
    a = (0.5 * (h + h.conj().T)).tolist()
    total2 = sum(abs(v) ** 2 for row in a for v in row)
    if n == 1 or total2 == 0.0:
        return np.sort(np.array([a[i][i].real for i in range(n)]))
    thr2 = tol * tol * total2
    for _ in range(max_sweeps):
        off2 = 2.0 * sum(abs(a[p][q]) ** 2 for p in range(n) for q in range(p + 1, n))
        if off2 <= thr2:
            break
        for p in range(n - 1):
            ap = a[p]
            for q in range(p + 1, n):
                aq = a[q]
                apq = ap[q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                tau = (aq[q].real - ap[p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- U* A U with U = [[c, s], [-s conj(phase), c conj(phase)]] on (p, q)
                sph = s * phase.conjugate()
                cph = c * phase.conjugate()
                for row in a:
                    xp = row[p]
                    xq = row[q]
                    row[p] = c * xp - sph * xq
                    row[q] = s * xp + cph * xq
                sp = s * phase
                cp = c * phase
                for k in range(n):
                    xp = ap[k]
                    xq = aq[k]
                    ap[k] = c * xp - sp * xq
                    aq[k] = s * xp + cp * xq
                ap[q] = 0j
                aq[p] = 0j
                ap[p] = complex(ap[p].real)
                aq[q] = complex(aq[q].real)
    return np.sort(np.array([a[i][i].real for i in range(n)]))


def hermitian_eigvalsh(h: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian complex matrix.

    Small matrices use :func:`jacobi_eigvalsh`; larger ones LAPACK.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape[0] <= JACOBI_MAX_DIM:
        return jacobi_eigvalsh(h)
    return np.linalg.eigvalsh(0.5 * (h + h.conj().T))


def _as_complex_hermitian(a) -> np.ndarray:
    if isinstance(a, QMatrix):
        if not a.is_square():
            raise ShapeError(f"expected a square matrix, got {a.shape}")
        return embed(a)
    h = np.atleast_2d(np.asarray(a, dtype=complex))
    if h.shape[0] != h.shape[1]:
        raise ShapeError(f"expected a square matrix, got {h.shape}")
    return h


def _check_hermitian(h: np.ndarray) -> None:
    size = float(np.abs(h).max()) if h.size else 0.0
    asym = float(np.abs(h - h.conj().T).max()) if h.size else 0.0
    if asym > HERMITIAN_TOL * max(1.0, size):
        raise NotHermitianError(f"matrix is not Hermitian (asymmetry {asym:.3e})")


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of a Hermitian matrix (of its embedding for a QMatrix)."""
    h = _as_complex_hermitian(a)
    _check_hermitian(h)
    return float(hermitian_eigvalsh(h)[0])


def psd_check(a, tol: float = PSD_TOL) -> tuple[bool, float, float]:
    """Positivity test returning ``(verdict, min_eigenvalue, scale)``.

    ``scale`` is ``max(1, spectral norm)`` and the verdict is
    ``min_eigenvalue >= -tol * scale``.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    h = _as_complex_hermitian(a)
    _check_hermitian(h)
    eig = hermitian_eigvalsh(h)
    scale = max(1.0, float(np.abs(eig).max()))
    lo = float(eig[0])
    return lo >= -tol * scale, lo, scale


def is_psd(a, tol: float = PSD_TOL) -> bool:
    """Whether a Hermitian quaternionic (or complex) matrix is positive semidefinite.

    Quaternionic matrices are tested through their complex embedding.

    Raises
    ------
    ShapeError
        If the matrix is not square.
    NotHermitianError
        If the matrix is not Hermitian to within ``1e-10`` relative.
    """
    return psd_check(a, tol)[0]


def spectral_norm(a) -> float:
    """Largest singular value (of the embedding for a QMatrix)."""
    m = embed(a) if isinstance(a, QMatrix) else np.asarray(a, dtype=complex)
    return float(np.linalg.norm(m, 2))


def solve_stein_entry(a: Quaternion, b: Quaternion, c: Quaternion) -> Quaternion:
    """Unique ``p`` with ``p - a p b = c``, for ``|a| |b| < 1``.

    Solved as the real 4x4 system ``(I - L_a R_b) vec(p) = vec(c)``.
    """
    if abs(a) * abs(b) >= 1.0:
        raise DomainError(f"|a||b| = {abs(a) * abs(b):.17g} must be < 1")
    m = np.eye(4) - left_matrix(a) @ right_matrix(b)
    p = np.linalg.solve(m, c.as_array())
    return Quaternion(*map(float, p))


def stein_residual(p: QMatrix, t: QMatrix, e: QMatrix, n: QMatrix) -> float:
    """Max entry modulus of ``P - T P T* - E E* + N N*``."""
    if not p.is_square():
        raise ShapeError(f"P must be square, got {p.shape}")
    size = p.rows
    if t.shape != (size, size):
        raise ShapeError(f"T must be {size}x{size}, got {t.shape}")
    if e.rows != size or n.rows != size:
        raise ShapeError("E and N must have as many rows as P")
    off = t.data.copy()
    off[np.arange(size), np.arange(size)] = 0.0
    if np.any(off != 0.0):
        raise ShapeError("T must be diagonal")
    r = p - t @ p @ t.adjoint() - e @ e.adjoint() + n @ n.adjoint()
    return r.max_abs()

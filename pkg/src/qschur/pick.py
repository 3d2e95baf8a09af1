"""Quaternionic Pick matrices and the three-point certification harness.

The Pick matrix of ``f`` at points ``z_1 .. z_n`` of the unit ball is the
unique solution of the Stein equation ``P - T P T* = E E* - N N*`` with
``T = diag(z_i)``, ``E`` a column of ones and ``N = (f(z_i))``.  Its entries
are obtained one at a time from a 4x4 real linear system.

:func:`hindmarsh_certify` samples a function on the ball and looks for
evidence against left-regularity and boundedness: negative 1x1 and 3x3 Pick
matrices, a slice reconstruction that does not fit, or off-slice values that
disagree with the reconstruction.  A pass means no violation was found at
the configured budget.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Protocol, Sequence

import numpy as np

from .exceptions import DegenerateClassError, DomainError
from .qlinalg import PSD_TOL, QMatrix, psd_check, solve_stein_entry, stein_residual
from .quaternion import (
    ONE,
    ZERO,
    Quaternion,
    _check_sphere_triple,
    equivalent,
    sample_ball,
    sample_offslice,
    sphere_representative,
)
from .report import CertReport, Verdict
from .series import ComplexSeries, QPowerSeries, eval_left, eval_right, join_slices, sharp

__all__ = [
    "Side",
    "PickProblem",
    "SampledFunction",
    "SeriesFunction",
    "CorruptedFunction",
    "ConjugatedFunction",
    "TabulatedFunction",
    "HarnessConfig",
    "pick_matrix",
    "pick_problem",
    "stein_data",
    "representation_extend",
    "vvector_extend",
    "extension_residual",
    "slice_pick_split",
    "reconstruct_slice_series",
    "hindmarsh_certify",
    "dual_certify",
]


class Side(str, enum.Enum):
    STANDARD = "standard"
    DUAL = "dual"


class SampledFunction(Protocol):
    def __call__(self, a: Quaternion) -> Quaternion: ...


@dataclass(frozen=True)
class PickProblem:
    """Point/value data ``(z_i, f(z_i))`` for a Pick matrix."""

    points: tuple[Quaternion, ...]
    values: tuple[Quaternion, ...]
    side: Side = Side.STANDARD

    def __post_init__(self):
        pts = tuple(Quaternion.coerce(p) for p in self.points)
        vals = tuple(Quaternion.coerce(v) for v in self.values)
        if not pts:
            raise DomainError("a Pick problem needs at least one point")
        if len(pts) != len(vals):
            raise DomainError(f"{len(pts)} points but {len(vals)} values")
        for i, p in enumerate(pts):
            if not abs(p) < 1.0:
                raise DomainError(f"point {i} has modulus {abs(p):.17g}, outside the open unit ball")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "side", Side(self.side))

    def __len__(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "points": [list(p.as_tuple()) for p in self.points],
            "values": [list(v.as_tuple()) for v in self.values],
            "side": self.side.value,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> PickProblem:
        if not isinstance(obj, dict):
            raise ValueError("problem must be a JSON object")
        out = {}
        for name in ("points", "values"):
            if name not in obj:
                raise ValueError(f"problem is missing field {name!r}")
            raw = obj[name]
            if not isinstance(raw, list):
                raise ValueError(f"field {name!r} must be a list")
            items = []
            for k, q in enumerate(raw):
                if not isinstance(q, list) or len(q) != 4:
                    raise ValueError(f"field '{name}[{k}]' must be a list of 4 numbers")
                try:
                    items.append(Quaternion.from_sequence([float(v) for v in q]))
                except (TypeError, ValueError):
                    raise ValueError(f"field '{name}[{k}]' must contain numbers") from None
            out[name] = tuple(items)
        side = obj.get("side", "standard")
        try:
            side = Side(side)
        except ValueError:
            raise ValueError("field 'side' must be 'standard' or 'dual'") from None
        return cls(out["points"], out["values"], side)


def pick_problem(f: SampledFunction, points: Sequence[Quaternion], side: Side = Side.STANDARD) -> PickProblem:
    pts = tuple(Quaternion.coerce(p) for p in points)
    return PickProblem(pts, tuple(f(p) for p in pts), side)


def pick_matrix(p: PickProblem) -> QMatrix:
    """Pick matrix (or dual Pick matrix) of the data in ``p``.

    Standard entries solve ``x - z_i x conj(z_j) = 1 - f_i conj(f_j)``; dual
    entries solve ``x - conj(z_i) x z_j = 1 - conj(f_i) f_j``.
    """
    n = len(p)
    zs, fs = p.points, p.values
    entries = []
    if p.side is Side.STANDARD:
        for i in range(n):
            for j in range(n):
                rhs = ONE - fs[i] * fs[j].conj()
                entries.append(solve_stein_entry(zs[i], zs[j].conj(), rhs))
    else:
        for i in range(n):
            for j in range(n):
                rhs = ONE - fs[i].conj() * fs[j]
                entries.append(solve_stein_entry(zs[i].conj(), zs[j], rhs))
    return QMatrix.from_entries(n, n, entries)


def stein_data(p: PickProblem) -> tuple[QMatrix, QMatrix, QMatrix]:
    """``(T, E, N)`` of the Stein identity solved by ``pick_matrix(p)``."""
    if p.side is Side.STANDARD:
        t = QMatrix.diag(p.points)
        n = QMatrix.column(p.values)
    else:
        t = QMatrix.diag([z.conj() for z in p.points])
        n = QMatrix.column([v.conj() for v in p.values])
    return t, QMatrix.column([ONE] * len(p)), n


def representation_extend(
    a: Quaternion, b: Quaternion, fa: Quaternion, fb: Quaternion, g: Quaternion, tol: float = 1e-10
) -> Quaternion:
    """Value at ``g`` of a left-regular function known at two conjugate points.

    Computes ``(g - b)(a - b)^{-1} f(a) + (a - g)(a - b)^{-1} f(b)``.
    """
    a, b, g = (Quaternion.coerce(v) for v in (a, b, g))
    _check_sphere_triple(a, b, g, tol)
    d_inv = (a - b).inverse()
    return (g - b) * d_inv * fa + (a - g) * d_inv * fb


def vvector_extend(
    a: complex, fa: Quaternion, fab: Quaternion, g: Quaternion, tol: float = 1e-10
) -> Quaternion:
    """Value at ``g`` forced by a positive Pick matrix at ``(a, conj a, g)``.

    ``a`` is the slice point conjugate to ``g`` and ``fa``, ``fab`` are the
    values at ``a`` and ``conj(a)``.  Returns
    ``(g - conj g)^{-1} (g - conj a) fa + (g - conj g)^{-1} (g - a) fab``.
    """
    g = Quaternion.coerce(g)
    if g.is_real():
        raise DegenerateClassError(f"{g!r} is real; its conjugacy class is a single point")
    aq = Quaternion.coerce(complex(a))
    if not equivalent(aq, g, tol):
        raise DomainError(f"{a!r} is not conjugate to {g!r}")
    d_inv = (g - g.conj()).inverse()
    return d_inv * (g - aq.conj()) * fa + d_inv * (g - aq) * fab


def extension_residual(fa: Quaternion, fab: Quaternion, g: Quaternion) -> float:
    """``|representation_extend - vvector_extend|`` on the slice pair conjugate to ``g``."""
    a = sphere_representative(g)
    aq = Quaternion.from_complex(a)
    rep = representation_extend(aq, aq.conj(), fa, fab, g)
    return abs(rep - vvector_extend(a, fa, fab, g))


def slice_pick_split(zetas: Sequence[complex], values: Sequence[Quaternion]) -> np.ndarray:
    """Complex part of the Pick matrix at slice points.

    With ``f(zeta) = s(zeta) + h(zeta) j`` this is
    ``[(1 - s_i conj(s_j) - h_i conj(h_j)) / (1 - zeta_i conj(zeta_j))]``.
    """
    z = np.asarray(zetas, dtype=complex)
    sv = np.array([v.split()[0] for v in values])
    hv = np.array([v.split()[1] for v in values])
    num = 1.0 - np.outer(sv, sv.conj()) - np.outer(hv, hv.conj())
    return num / (1.0 - np.outer(z, z.conj()))


# sampled functions -------------------------------------------------------------


@dataclass(frozen=True)
class SeriesFunction:
    """Left (or right) evaluation of a power series."""

    series: QPowerSeries
    side: str = "left"

    def __call__(self, a: Quaternion) -> Quaternion:
        if self.side == "right":
            return eval_right(self.series, a)
        return eval_left(self.series, a)


@dataclass(frozen=True)
class CorruptedFunction:
    """``scale * base(a)``, plus ``offslice_offset`` at points off the complex slice."""

    base: Callable[[Quaternion], Quaternion]
    offslice_offset: Quaternion = ZERO
    scale: float = 1.0
    slice_tol: float = 1e-12

    def __call__(self, a: Quaternion) -> Quaternion:
        v = self.base(a) * self.scale
        if math.hypot(a.y, a.z) > self.slice_tol:
            v = v + self.offslice_offset
        return v


@dataclass(frozen=True)
class ConjugatedFunction:
    """``a -> conj(base(conj(a)))``; turns right evaluations into left ones."""

    base: Callable[[Quaternion], Quaternion]

    def __call__(self, a: Quaternion) -> Quaternion:
        return self.base(a.conj()).conj()


class TabulatedFunction:
    """Function known only on a finite table of points."""

    def __init__(self, table: Mapping[Quaternion, Quaternion]):
        self._table = dict(table)

    def __call__(self, a: Quaternion) -> Quaternion:
        try:
            return self._table[a]
        except KeyError:
            raise DomainError(f"no tabulated value at {a!r}") from None


# reconstruction ------------------------------------------------------------------


def reconstruct_slice_series(
    f: SampledFunction, radius: float = 0.5, m: int = 256, d_max: int = 16
) -> QPowerSeries:
    """Recover ``f_0 .. f_{d_max}`` from samples of ``f`` on a circle in the slice.

    ``f`` is sampled at ``radius * exp(2 pi i t / m)``; each value is split as
    ``s + h j`` and the complex Fourier coefficients of ``s`` and ``h`` are
    rescaled by ``radius**-k``.  Aliasing contributes at most about
    ``radius**(m - k) / (1 - radius**m)`` per unit coefficient bound.
    """
    if not 0.0 < radius < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {radius!r}")
    if d_max < 0 or m <= 2 * d_max:
        raise ValueError(f"need m > 2 * d_max, got m={m}, d_max={d_max}")
    zetas = radius * np.exp(2j * np.pi * np.arange(m) / m)
    s_vals = np.empty(m, dtype=complex)
    h_vals = np.empty(m, dtype=complex)
    for t, zeta in enumerate(zetas):
        s_vals[t], h_vals[t] = f(Quaternion.from_complex(zeta)).split()
    k = np.arange(d_max + 1)
    rescale = radius ** (-k.astype(float))
    s_k = np.fft.fft(s_vals)[: d_max + 1] / m * rescale
    h_k = np.fft.fft(h_vals)[: d_max + 1] / m * rescale
    return join_slices(ComplexSeries(tuple(s_k)), ComplexSeries(tuple(h_k)), truncated=True)


# harness ----------------------------------------------------------------------------

_STAGE_ONE_POINT = 1
_STAGE_RANDOM = 2
_STAGE_STRUCTURED = 3
_STAGE_SLICE = 4
_STAGE_OFFSLICE = 5
_STAGE_RIGHT = 6

# sampling beyond this radius makes Pick entries (bounded by 2 / (1 - r^2)) unreliable
_MAX_SAMPLE_RADIUS = 0.98


@dataclass(frozen=True)
class HarnessConfig:
    """Run parameters for :func:`hindmarsh_certify`.

    ``order`` is the degree of the slice reconstruction, not a Toeplitz order:
    coefficient noise grows like ``radius**-order``.
    """

    samples: int = 1000
    structured_samples: int = 200
    slice_samples: int = 200
    offslice_samples: int = 200
    seed: int = 0
    tol: float = PSD_TOL
    margin: float = 0.05
    min_offslice: float = 0.05
    radius: float = 0.5
    dft_points: int = 256
    order: int = 16
    agreement_tol: float = 1e-7
    stein_tol: float = 1e-10
    hermitian_tol: float = 1e-11
    extension_tol: float = 1e-10

    def __post_init__(self):
        if not 0.0 < self.radius < 1.0:
            raise ValueError("radius must lie in (0, 1)")
        if not 0.0 <= self.margin < 1.0:
            raise ValueError("margin must lie in [0, 1)")
        if self.dft_points <= 2 * self.order:
            raise ValueError("dft_points must exceed 2 * order")
        for name in ("samples", "structured_samples", "slice_samples", "offslice_samples"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def sample_radius(self) -> float:
        return 1.0 - self.margin


def _rng(cfg: HarnessConfig, stage: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed & 0xFFFFFFFFFFFFFFFF, stage, trial])


def _q(v: Quaternion) -> list[float]:
    return list(v.as_tuple())


@dataclass
class _Run:
    cfg: HarnessConfig
    witness: dict | None = None
    residuals: dict[str, float] = field(default_factory=dict)
    stages: list[dict] = field(default_factory=list)

    def bump(self, name: str, value: float) -> None:
        self.residuals[name] = max(self.residuals.get(name, 0.0), value)

    def fail(self, witness: dict) -> None:
        if self.witness is None:
            self.witness = witness


def _check_pick(run: _Run, f: SampledFunction, points: Sequence[Quaternion], kind: str, trial: int) -> bool:
    cfg = run.cfg
    prob = pick_problem(f, points)
    p = pick_matrix(prob)
    size = p.max_abs()
    run.bump("hermitian", (p - p.adjoint()).max_abs() / max(1.0, size))
    run.bump("stein", stein_residual(p, *stein_data(prob)) / (1.0 + size))
    ok, lo, scale = psd_check(_hermitize(p), cfg.tol)
    run.bump("pick_psd", max(0.0, -lo / scale))
    if not ok:
        run.fail(
            {
                "kind": kind,
                "trial": trial,
                "points": [_q(z) for z in prob.points],
                "values": [_q(v) for v in prob.values],
                "min_eigenvalue": lo,
                "scale": scale,
            }
        )
    return ok


def _hermitize(p: QMatrix) -> QMatrix:
    # rounding leaves P Hermitian only to ~1e-16; the eigen-solver wants it exact
    return QMatrix(0.5 * (p.data + p.adjoint().data))


def _one_point_stage(run: _Run, f: SampledFunction) -> None:
    cfg = run.cfg
    worst = math.inf
    failures = 0
    for t in range(cfg.samples):
        z = sample_ball(_rng(cfg, _STAGE_ONE_POINT, t), cfg.margin)
        fz = f(z)
        value = (1.0 - fz.norm2()) / (1.0 - z.norm2())
        worst = min(worst, value)
        if value < -cfg.tol * max(1.0, abs(value)):
            failures += 1
            run.fail(
                {
                    "kind": "one_point",
                    "trial": t,
                    "points": [_q(z)],
                    "values": [_q(fz)],
                    "min_eigenvalue": value,
                    "scale": max(1.0, abs(value)),
                }
            )
    if cfg.samples:
        run.bump("one_point", max(0.0, -worst))
    run.stages.append({"stage": "one_point", "samples": cfg.samples, "failures": failures, "min_value": worst})


def _random_triple_stage(run: _Run, f: SampledFunction) -> None:
    cfg = run.cfg
    failures = 0
    for t in range(cfg.samples):
        rng = _rng(cfg, _STAGE_RANDOM, t)
        pts = [sample_ball(rng, cfg.margin) for _ in range(3)]
        failures += not _check_pick(run, f, pts, "random_triple", t)
    run.stages.append({"stage": "random_triples", "samples": cfg.samples, "failures": failures})


def _structured_triple_stage(run: _Run, f: SampledFunction) -> None:
    cfg = run.cfg
    failures = 0
    first = None
    for t in range(cfg.structured_samples):
        g = sample_offslice(_rng(cfg, _STAGE_STRUCTURED, t), cfg.margin, cfg.min_offslice)
        a = Quaternion.from_complex(sphere_representative(g))
        if not _check_pick(run, f, [a, a.conj(), g], "structured_triple", t):
            failures += 1
            if first is None:
                first = t
    run.stages.append(
        {
            "stage": "structured_triples",
            "samples": cfg.structured_samples,
            "failures": failures,
            "first_failure": first,
        }
    )


def _slice_stage(run: _Run, f: SampledFunction, recon: QPowerSeries) -> None:
    cfg = run.cfg
    failures = 0
    s_rec, h_rec = _slice_parts(recon)
    for t in range(cfg.slice_samples):
        rng = _rng(cfg, _STAGE_SLICE, t)
        zetas = []
        while len(zetas) < 3:
            z = complex(*rng.uniform(-1.0, 1.0, size=2))
            if abs(z) < cfg.sample_radius:
                zetas.append(z)
        values = [f(Quaternion.from_complex(z)) for z in zetas]
        p1 = slice_pick_split(zetas, values)
        fitted = [eval_left(recon, Quaternion.from_complex(z)) for z in zetas]
        for v, w in zip(values, fitted):
            run.bump("slice_agreement", abs(v - w))
        # the same matrix from the recovered s, h: L - G L G* - H L H*
        z = np.array(zetas)
        lam = 1.0 / (1.0 - np.outer(z, z.conj()))
        gd = np.diag([s_rec(x) for x in zetas])
        hd = np.diag([h_rec(x) for x in zetas])
        split = lam - gd @ lam @ gd.conj().T - hd @ lam @ hd.conj().T
        run.bump("slice_agreement", float(np.abs(split - p1).max()) / (1.0 + float(np.abs(p1).max())))
        checks = [("slice_split", p1), ("slice_split_recovered", split)]
        checks += [("slice_s", lam - gd @ lam @ gd.conj().T), ("slice_h", lam - hd @ lam @ hd.conj().T)]
        for name, mat in checks:
            ok, lo, scale = psd_check(0.5 * (mat + mat.conj().T), cfg.tol)
            run.bump("slice_split_psd", max(0.0, -lo / scale))
            if not ok:
                failures += 1
                run.fail(
                    {
                        "kind": name,
                        "trial": t,
                        "points": [[z.real, z.imag, 0.0, 0.0] for z in zetas],
                        "values": [_q(v) for v in values],
                        "min_eigenvalue": lo,
                        "scale": scale,
                    }
                )
    run.stages.append({"stage": "slice_checks", "samples": cfg.slice_samples, "failures": failures})


def _slice_parts(g: QPowerSeries) -> tuple[ComplexSeries, ComplexSeries]:
    pairs = [c.split() for c in g.coefficients]
    return ComplexSeries(tuple(p[0] for p in pairs)), ComplexSeries(tuple(p[1] for p in pairs))


def _offslice_stage(run: _Run, f: SampledFunction, recon: QPowerSeries) -> dict | None:
    cfg = run.cfg
    worst = None
    for t in range(cfg.offslice_samples):
        g = sample_offslice(_rng(cfg, _STAGE_OFFSLICE, t), cfg.margin, cfg.min_offslice)
        a = sphere_representative(g)
        aq = Quaternion.from_complex(a)
        fg, fa, fab = f(g), f(aq), f(aq.conj())
        vv = vvector_extend(a, fa, fab, g)
        rep = representation_extend(aq, aq.conj(), fa, fab, g)
        fitted = eval_left(recon, g)
        run.bump("extension_agreement", abs(rep - vv) / (1.0 + abs(vv)))
        run.bump("vvector_agreement", abs(fg - vv))
        err = abs(fg - fitted)
        run.bump("offslice_agreement", err)
        if worst is None or err > worst["residual"]:
            worst = {
                "kind": "offslice_agreement",
                "trial": t,
                "points": [_q(aq), _q(aq.conj()), _q(g)],
                "values": [_q(fa), _q(fab), _q(fg)],
                "reconstructed_value": _q(fitted),
                "vvector_value": _q(vv),
                "residual": err,
            }
    run.stages.append({"stage": "offslice_agreement", "samples": cfg.offslice_samples})
    return worst


def _tail_bounds(cfg: HarnessConfig, recon: QPowerSeries) -> dict[str, float]:
    rho = cfg.sample_radius
    r, m, d = cfg.radius, cfg.dft_points, cfg.order
    eps = float(np.finfo(float).eps)
    mags = [abs(c) for c in recon.coefficients]
    top = max(mags[max(0, d - 3):]) if mags else 0.0
    # Schur coefficients satisfy |s_k|, |h_k| <= 1, hence |f_k| <= sqrt(2)
    coeff_bound = math.sqrt(2.0)
    return {
        "pick_entry_bound": 2.0 / (1.0 - rho * rho),
        "aliasing": coeff_bound * r ** (m - d) / (1.0 - r**m),
        "noise": float(coeff_bound * eps * math.log2(m) * sum((rho / r) ** k for k in range(d + 1))),
        "truncation_a_priori": coeff_bound * rho ** (d + 1) / (1.0 - rho),
        "truncation_estimate": top * rho ** (d + 1) / (1.0 - rho),
    }


def hindmarsh_certify(f: SampledFunction, cfg: HarnessConfig | None = None, kind: str = "hindmarsh") -> CertReport:
    """Search for violations of left-regular Schur behaviour of ``f``.

    Stages, in order:

    1. one-point checks ``1 - |f(z)|^2 >= 0``;
    2. Pick matrices on random triples, then on triples ``(a, conj a, c)``
       with ``a`` the slice point conjugate to an off-slice ``c``;
    3. reconstruction of the slice series ``f_k = s_k + h_k j``;
    4. positivity of the complex part of slice Pick matrices, in direct form
       and rebuilt from the recovered ``s`` and ``h``;
    5. off-slice agreement between ``f`` and the reconstruction.

    All stages always run.  The verdict is ``fail`` on any negative Pick
    matrix or on an agreement residual above threshold, ``inconclusive``
    when the sampling radius or reconstruction error bounds are too large
    to trust, and ``pass`` otherwise.
    """
    cfg = cfg or HarnessConfig()
    run = _Run(cfg)
    _one_point_stage(run, f)
    _random_triple_stage(run, f)
    _structured_triple_stage(run, f)
    recon = reconstruct_slice_series(f, cfg.radius, cfg.dft_points, cfg.order)
    _slice_stage(run, f, recon)
    worst_offslice = _offslice_stage(run, f, recon)

    thresholds = {
        "one_point": cfg.tol,
        "pick_psd": cfg.tol,
        "slice_split_psd": cfg.tol,
        "stein": cfg.stein_tol,
        "hermitian": cfg.hermitian_tol,
        "slice_agreement": cfg.agreement_tol,
        "offslice_agreement": cfg.agreement_tol,
        "vvector_agreement": cfg.agreement_tol,
        "extension_agreement": cfg.extension_tol,
    }
    tails = _tail_bounds(cfg, recon)
    untrusted = (
        cfg.sample_radius > _MAX_SAMPLE_RADIUS
        or tails["aliasing"] + tails["noise"] > cfg.agreement_tol
    )
    notes = []
    if run.witness is None:
        if run.residuals.get("vvector_agreement", 0.0) > cfg.agreement_tol and worst_offslice:
            run.fail(dict(worst_offslice, kind="vvector_agreement"))
        elif run.residuals.get("offslice_agreement", 0.0) > cfg.agreement_tol or run.residuals.get(
            "slice_agreement", 0.0
        ) > cfg.agreement_tol:
            if tails["truncation_estimate"] > cfg.agreement_tol:
                untrusted = True
                notes.append("reconstruction truncated too early to decide agreement; raise order")
            elif worst_offslice:
                run.fail(worst_offslice)
            else:
                run.fail({"kind": "slice_agreement", "residual": run.residuals["slice_agreement"]})
        else:
            for name, limit in thresholds.items():
                if run.residuals.get(name, 0.0) > limit:
                    run.fail({"kind": name, "residual": run.residuals[name]})
                    break

    if run.witness is not None:
        verdict = Verdict.FAIL
        notes.insert(0, f"violation found: {run.witness['kind']}")
    elif untrusted:
        verdict = Verdict.INCONCLUSIVE
        notes.insert(0, "no violation found, but error bounds exceed tolerance")
    else:
        verdict = Verdict.PASS
        notes.insert(
            0,
            f"no violation found at order {cfg.order} with {cfg.samples} random and "
            f"{cfg.structured_samples} structured triples; this is not a proof",
        )
    params = {
        "order": cfg.order,
        "samples": cfg.samples,
        "structured_samples": cfg.structured_samples,
        "slice_samples": cfg.slice_samples,
        "offslice_samples": cfg.offslice_samples,
        "seed": cfg.seed,
        "radius": cfg.radius,
        "dft_points": cfg.dft_points,
        "sample_radius": cfg.sample_radius,
        "tol": cfg.tol,
    }
    return CertReport(
        kind=kind,
        verdict=verdict,
        witness=run.witness,
        reconstructed=recon,
        residuals=run.residuals,
        thresholds=thresholds,
        params=params,
        tail_bounds=tails,
        stages=run.stages,
        notes=notes,
    )


def dual_certify(f: SampledFunction, cfg: HarnessConfig | None = None) -> CertReport:
    """Right-evaluation version of :func:`hindmarsh_certify`.

    Certifies ``a -> conj(f(conj a))`` and conjugates the recovered series
    coefficientwise, so that ``f(a)`` is compared with the right evaluation
    of the reported series.
    """
    cfg = cfg or HarnessConfig()
    report = hindmarsh_certify(ConjugatedFunction(f), cfg, kind="dual")
    recon = sharp(report.reconstructed)
    report.reconstructed = recon
    worst = 0.0
    worst_point = None
    for t in range(cfg.offslice_samples):
        b = sample_offslice(_rng(cfg, _STAGE_RIGHT, t), cfg.margin, cfg.min_offslice)
        err = abs(f(b) - eval_right(recon, b))
        if err > worst:
            worst, worst_point = err, b
    report.residuals["right_agreement"] = worst
    report.thresholds["right_agreement"] = cfg.agreement_tol
    if report.verdict is Verdict.PASS and worst > cfg.agreement_tol:
        report.verdict = Verdict.FAIL
        report.witness = {"kind": "right_agreement", "points": [_q(worst_point)], "residual": worst}
    if report.witness is not None and report.witness["kind"] != "right_agreement":
        report.witness = _conjugate_witness(report.witness)
    report.notes.append("dual run: f(a) is matched against the right evaluation of the reported series")
    return report


def _conjugate_witness(w: dict) -> dict:
    """Map a witness for ``conj(f(conj a))`` back to points and values of ``f``.

    A Pick matrix of the conjugated function at ``w_i`` is the dual Pick
    matrix of ``f`` at ``conj(w_i)``.
    """
    out = dict(w, side="dual")
    for key in ("points", "values"):
        if key in out:
            out[key] = [[q[0], -q[1], -q[2], -q[3]] for q in out[key]]
    for key in ("reconstructed_value", "vvector_value"):
        if key in out:
            q = out[key]
            out[key] = [q[0], -q[1], -q[2], -q[3]]
    return out

"""Certification reports."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .series import QPowerSeries

__all__ = ["Verdict", "CertReport", "CHECK_DESCRIPTIONS"]


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


# which identity each residual measures; copied into every serialized report
CHECK_DESCRIPTIONS = {
    "contractivity_defect": "I - T_n(g) T_n(g)* >= 0 for the lower triangular Toeplitz matrices of g",
    "one_point": "1 - |f(z)|^2 >= 0 (1x1 Pick matrices)",
    "pick_psd": "3x3 Pick matrices P_f(z1, z2, z3) >= 0, random and (a, conj a, c) triples",
    "stein": "P - T P T* = E E* - N N* with T = diag(z), E = ones, N = f(z)",
    "hermitian": "P = P* for computed Pick matrices",
    "slice_split_psd": "complex part of P_f on the slice, L - G L G* - H L H* >= 0",
    "slice_agreement": "f(zeta) = s(zeta) + h(zeta) j for the recovered slice series",
    "offslice_agreement": "f(c) equals the left evaluation of the recovered series off the slice",
    "extension_agreement": "two-point representation formula equals the V-vector formula",
    "vvector_agreement": "f(c) equals the V-vector combination of f(a), f(conj a)",
    "right_agreement": "f(b) equals the right evaluation of the recovered series (dual run)",
}


def _clean(value: Any) -> Any:
    """Map non-finite floats to None so reports stay strict JSON."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


@dataclass
class CertReport:
    """Outcome of a certification run.

    A ``fail`` verdict always carries a ``witness``; a ``pass`` verdict
    requires every residual listed in ``thresholds`` to lie below it.
    Passing means no violation was found at the stated order and sample
    budget, never a proof of membership.
    """

    kind: str
    verdict: Verdict
    witness: dict | None = None
    reconstructed: QPowerSeries | None = None
    residuals: dict[str, float] = field(default_factory=dict)
    thresholds: dict[str, float] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)
    tail_bounds: dict[str, float] = field(default_factory=dict)
    stages: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.verdict = Verdict(self.verdict)
        if self.verdict is Verdict.FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")
        if self.verdict is Verdict.PASS:
            for name, limit in self.thresholds.items():
                value = self.residuals.get(name, 0.0)
                if not value <= limit:
                    raise ValueError(f"pass with residual {name}={value!r} above {limit!r}")

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    def to_dict(self) -> dict:
        checks = {k: CHECK_DESCRIPTIONS[k] for k in self.residuals if k in CHECK_DESCRIPTIONS}
        return _clean(
            {
                "kind": self.kind,
                "verdict": self.verdict.value,
                "witness": self.witness,
                "reconstructed": None if self.reconstructed is None else self.reconstructed.to_dict(),
                "residuals": dict(self.residuals),
                "thresholds": dict(self.thresholds),
                "params": dict(self.params),
                "tail_bounds": dict(self.tail_bounds),
                "stages": list(self.stages),
                "notes": list(self.notes),
                "identity_checks": checks,
            }
        )

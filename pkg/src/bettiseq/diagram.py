"""Filtration grid, barcode/diagram duality, and the per-bin region test.

The i-th bin region of the birth-death plane is K_i \\ C_i with

    K_i = { (b, d) : 0 < b < tau_i,  d > tau_{i-1} }
    C_i = { (b, d) : tau_{i-1} <= b <= tau_i,  tau_{i-1} < d < b }

For valid pairs (d > b) membership reduces to the bar [b, d) overlapping the
open subinterval (tau_{i-1}, tau_i).  The literal set excludes births at
exactly 0; since every H0 class is born at 0, counting paths admit b == 0
through the ``allow_zero_birth`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .homology import PersistenceDiagram, PersistencePair


@dataclass(frozen=True)
class FiltrationGrid:
    """Uniform division of [0, tau_max] into n_bins subintervals."""

    tau_max: float
    n_bins: int

    def __post_init__(self):
        if not self.tau_max > 0:
            raise ValueError("tau_max must be positive")
        if self.n_bins < 1:
            raise ValueError("n_bins must be at least 1")

    @property
    def delta_tau(self) -> float:
        return self.tau_max / self.n_bins

    @property
    def endpoints(self) -> np.ndarray:
        """tau_0 = 0, ..., tau_N = tau_max."""
        return np.linspace(0.0, self.tau_max, self.n_bins + 1)


@dataclass(frozen=True)
class Barcode:
    dim: int
    bars: tuple[tuple[float, float], ...]  # (start, end), end may be inf


def to_barcode(pd: PersistenceDiagram) -> Barcode:
    return Barcode(pd.dim, tuple((p.birth, p.death) for p in pd.pairs))


def from_barcode(bc: Barcode) -> PersistenceDiagram:
    return PersistenceDiagram(
        bc.dim, tuple(PersistencePair(s, e, bc.dim) for s, e in bc.bars)
    )


def region_contains(
    grid: FiltrationGrid,
    i: int,
    p: PersistencePair,
    allow_zero_birth: bool = False,
) -> bool:
    """Is the pair in the i-th bin region K_i \\ C_i (bins numbered 1..N)?"""
    if not 1 <= i <= grid.n_bins:
        raise ValueError("bin index out of range")
    taus = grid.endpoints
    return _region_contains_bd(
        float(taus[i - 1]), float(taus[i]), p.birth, p.death, allow_zero_birth
    )


def _region_contains_bd(
    tau_lo: float, tau_hi: float, b: float, d: float, allow_zero_birth: bool
) -> bool:
    in_k = (b > 0.0 or (allow_zero_birth and b >= 0.0)) and b < tau_hi and d > tau_lo
    in_c = tau_lo <= b <= tau_hi and tau_lo < d < b
    return in_k and not in_c


def truncate_essential(pd: PersistenceDiagram, tau_max: float) -> PersistenceDiagram:
    """Clamp every death (essential or finite) to tau_max; drop pairs born
    at or beyond tau_max.  Vectorizations and metrics consume the result."""
    pairs = []
    for p in pd.pairs:
        if p.birth >= tau_max:
            continue
        death = min(p.death, tau_max)
        pairs.append(PersistencePair(p.birth, death, p.dim))
    return PersistenceDiagram(pd.dim, tuple(pairs))


def require_finite(pd: PersistenceDiagram) -> None:
    if any(math.isinf(p.death) for p in pd.pairs):
        raise ValueError(
            "diagram has essential classes; truncate_essential must run first"
        )

"""RCC-8 classification of two discs from their center distance.

The three tangency relations (EC, TPP/TPPI at the internal threshold, EQ)
hold on measure-zero distance sets, so classification assigns them within a
configurable band of half-width `eps` around the exact thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class RccRelation(Enum):
    DC = "DC"          # disconnected
    EC = "EC"          # externally connected (tangent, no overlap)
    PO = "PO"          # partial overlap
    TPP = "TPP"        # k tangential proper part of l
    NTPP = "NTPP"      # k non-tangential proper part of l
    EQ = "EQ"          # identical regions
    TPPI = "TPPI"      # l tangential proper part of k
    NTPPI = "NTPPI"    # l non-tangential proper part of k

    def __str__(self) -> str:
        return self.value


INVERSE: dict[RccRelation, RccRelation] = {
    RccRelation.DC: RccRelation.DC,
    RccRelation.EC: RccRelation.EC,
    RccRelation.PO: RccRelation.PO,
    RccRelation.EQ: RccRelation.EQ,
    RccRelation.TPP: RccRelation.TPPI,
    RccRelation.TPPI: RccRelation.TPP,
    RccRelation.NTPP: RccRelation.NTPPI,
    RccRelation.NTPPI: RccRelation.NTPP,
}


@dataclass(frozen=True)
class Tolerance:
    """Half-width (m) of the band within which tangency relations apply."""

    eps: float = 1e-9

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eps) and self.eps > 0):
            raise ValueError(f"eps must be positive and finite, got {self.eps!r}")


DEFAULT_TOLERANCE = Tolerance()


def bands_overlap(r_k: float, r_l: float, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True when the EC and TPP/EQ tolerance bands collide (pathological radii).

    Classification stays deterministic in that case (EC wins over TPP/TPPI,
    which win over EQ), but results near the thresholds are not meaningful.
    """
    return (r_k + r_l) - abs(r_k - r_l) <= 2.0 * tol.eps


def classify_discs(
    d: float, r_k: float, r_l: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> RccRelation:
    """Classify the discs' relation at center distance d.

    Band precedence on pathological inputs is EC > TPP/TPPI > EQ; see
    `bands_overlap` for detecting those inputs.
    """
    if not (math.isfinite(d) and d >= 0):
        raise ValueError(f"center distance must be finite and >= 0, got {d!r}")
    if not (math.isfinite(r_k) and r_k > 0 and math.isfinite(r_l) and r_l > 0):
        raise ValueError(f"radii must be positive and finite, got {r_k!r}, {r_l!r}")

    eps = tol.eps
    r_sum = r_k + r_l
    r_diff = abs(r_k - r_l)

    if abs(d - r_sum) <= eps:
        return RccRelation.EC
    if d > r_sum:
        return RccRelation.DC
    if r_diff > eps and abs(d - r_diff) <= eps:
        return RccRelation.TPP if r_k < r_l else RccRelation.TPPI
    if r_diff <= eps:
        return RccRelation.EQ if d <= eps else RccRelation.PO
    if d > r_diff:
        return RccRelation.PO
    return RccRelation.NTPP if r_k < r_l else RccRelation.NTPPI

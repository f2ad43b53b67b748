"""Lattice depth to Hubbard parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

CRITICAL_RATIO = 11.6  # reference marker only; see transition_scan


@dataclass(frozen=True)
class PotentialParams:
    """Depth ``V0`` and recoil energy ``E_R`` in one energy unit; lengths in one length unit."""

    V0: float
    E_R: float = 1.0
    a_s: float = 5.6e-9
    wavelength: float = 10e-6
    L: float = 10e-6

    def __post_init__(self):
        for name in ("V0", "E_R", "a_s", "wavelength", "L"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


def collisional_U(p: PotentialParams) -> float:
    """``U = 4 a_s V0^(3/4) E_R^(1/4) / sqrt(lambda L)``."""
    return 4 * p.a_s * p.V0 ** 0.75 * p.E_R ** 0.25 / math.sqrt(p.wavelength * p.L)


def tunneling_J(V0: float, E_R: float = 1.0) -> float:
    """``J = (E_R/2) exp(-(pi^2/4) sqrt(v)) (sqrt(v) + sqrt(v)^3)`` with ``v = V0/E_R``."""
    if V0 <= 0 or E_R <= 0:
        raise ValueError("V0 and E_R must be positive")
    r = math.sqrt(V0 / E_R)
    return 0.5 * E_R * math.exp(-math.pi ** 2 / 4 * r) * (r + r ** 3)


def ratio_U_over_J(V0: float, template: PotentialParams | None = None) -> float:
    t = template or PotentialParams(V0=1.0)
    p = PotentialParams(V0, t.E_R, t.a_s, t.wavelength, t.L)
    return collisional_U(p) / tunneling_J(V0, t.E_R)


def critical_depth(ratio: float = CRITICAL_RATIO, template: PotentialParams | None = None,
                   lo: float = 1e-3, hi: float = 200.0) -> float:
    """Depth ``V0`` (units of ``E_R``) where U/J equals ``ratio``; U/J is increasing in V0 on [lo, hi]."""
    t = template or PotentialParams(V0=1.0)
    f = lambda v: math.log(ratio_U_over_J(v * t.E_R, t)) - math.log(ratio)
    if f(lo) > 0 or f(hi) < 0:
        raise ValueError(f"U/J = {ratio} is not bracketed by V0/E_R in [{lo}, {hi}]")
    return brentq(f, lo, hi, xtol=1e-12) * t.E_R

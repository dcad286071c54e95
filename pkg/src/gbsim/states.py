"""Single-mode Gaussian input states and their Husimi-Q parameterization.

Every input mode is a zero-mean Gaussian state with a diagonal covariance
matrix, described by its two quadrature variances (v_x, v_p) normalized so
that vacuum has v_x = v_p = 1.  Phases are assumed absorbed into the network,
so v_x >= v_p always (antisqueezing along x).

The Q function of such a state is

    Q(a) = sqrt(mu^2 - 4 lam^2)/pi * exp[lam (a^2 + conj(a)^2) - mu |a|^2]

with

    lam = 1/(2 v_p + 2) - 1/(2 v_x + 2)
    mu  = 1/(v_x + 1) + 1/(v_p + 1)

lam = 0 iff v_x = v_p (no squeezing), mu = 1 iff the state is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

# Tolerance for the purity bound v_x * v_p >= 1 and for the classicality
# threshold v_p >= 1; absorbs exp() roundoff in the constructors.
_REL_TOL = 1e-12


@dataclass(frozen=True)
class GaussianModeState:
    """One input mode: quadrature variances with vacuum = 1.

    Invariants: v_x >= v_p > 0 and v_x * v_p >= 1 (equality iff pure).
    """

    v_x: float
    v_p: float

    def __post_init__(self):
        v_x, v_p = float(self.v_x), float(self.v_p)
        if not (v_p > 0.0 and math.isfinite(v_x) and math.isfinite(v_p)):
            raise ValidationError(f"variances must be positive and finite, got ({v_x}, {v_p})")
        if v_x < v_p:
            raise ValidationError(
                f"v_x must be >= v_p (phases are folded into the network), got ({v_x}, {v_p})"
            )
        if v_x * v_p < 1.0 - _REL_TOL:
            raise ValidationError(f"unphysical state: v_x*v_p = {v_x * v_p} < 1")
        object.__setattr__(self, "v_x", v_x)
        object.__setattr__(self, "v_p", v_p)


@dataclass(frozen=True)
class QFunctionParams:
    """(lam, mu) pair of the Gaussian Q function, with mu^2 > 4 lam^2."""

    lam: float
    mu: float


def vacuum() -> GaussianModeState:
    return GaussianModeState(1.0, 1.0)


def thermal(v: float) -> GaussianModeState:
    """Thermal state with symmetric variance v >= 1 (mean photons (v-1)/2)."""
    if v < 1.0:
        raise ValidationError(f"thermal variance must be >= 1, got {v}")
    return GaussianModeState(v, v)


def squeezed(r: float) -> GaussianModeState:
    """Squeezed vacuum with v_x = e^{2r}, v_p = e^{-2r}.

    The sign of r is canonicalized away: squeezing along any other axis must
    be expressed through a phase in the network matrix.
    """
    r = abs(float(r))
    return GaussianModeState(math.exp(2 * r), math.exp(-2 * r))


def squeezed_thermal(v: float, r: float) -> GaussianModeState:
    """Squeezed thermal state with v_x = v e^{2r}, v_p = v e^{-2r}, v >= 1."""
    if v < 1.0:
        raise ValidationError(f"squeezed-thermal base variance must be >= 1, got {v}")
    r = abs(float(r))
    return GaussianModeState(v * math.exp(2 * r), v * math.exp(-2 * r))


def derive_q_params(state: GaussianModeState) -> QFunctionParams:
    """Map (v_x, v_p) to the (lam, mu) parameters of the input Q function."""
    lam = 1.0 / (2 * state.v_p + 2) - 1.0 / (2 * state.v_x + 2)
    mu = 1.0 / (state.v_x + 1) + 1.0 / (state.v_p + 1)
    return QFunctionParams(lam, mu)


def is_classical(state: GaussianModeState) -> bool:
    """True iff the state is a non-negative mixture of coherent states.

    The criterion is v_p >= 1: both quadratures then carry at least vacuum
    noise, so a Gaussian P function exists.  Vacuum itself counts as the
    degenerate zero-width mixture.
    """
    return state.v_p >= 1.0 - _REL_TOL


def mean_photon_number(state: GaussianModeState) -> float:
    """(v_x + v_p)/4 - 1/2; zero first moments contribute nothing."""
    return (state.v_x + state.v_p) / 4.0 - 0.5


def state_from_descriptor(desc: dict) -> GaussianModeState:
    """Build a state from a tagged config record.

    Recognized forms: {"type": "vacuum"}, {"type": "thermal", "v": 3.0},
    {"type": "squeezed", "r": 0.5}, {"type": "squeezed_thermal", "v": 1.2, "r": 0.3}.
    """
    if not isinstance(desc, dict) or "type" not in desc:
        raise ValidationError(f"state descriptor must be an object with a 'type' field: {desc!r}")
    kind = desc["type"]
    try:
        if kind == "vacuum":
            return vacuum()
        if kind == "thermal":
            return thermal(float(desc["v"]))
        if kind == "squeezed":
            return squeezed(float(desc["r"]))
        if kind == "squeezed_thermal":
            return squeezed_thermal(float(desc["v"]), float(desc["r"]))
    except KeyError as exc:
        raise ValidationError(f"state descriptor {desc!r} is missing field {exc}") from None
    raise ValidationError(f"unknown state type {kind!r}")

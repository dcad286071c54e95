"""Estimating permanents of positive-semidefinite Hermitian matrices by
sampling a thermal-state photon-counting experiment.

Any PSD Hermitian H = U diag(d) U^dag can be scaled by q >= max(d) so that
1 - mu_j := d_j / q lies in [0, 1): then H/q is the D-tilde matrix of an
N-mode network (the eigenvector unitary) fed with thermal states of
parameter mu_j, and

    p(1, 1, ..., 1) = prod_j mu_j * per(H/q) = prod_j mu_j * per(H) / q^N.

Since that experiment has classical inputs it can be sampled exactly, and
per(H) is recovered from the all-ones-pattern frequency.  The frequency
estimator used here carries a plain binomial error bar, so the result is
only multiplicatively accurate when the pattern is observed often; runs with
fewer than 100 hits are flagged low-confidence rather than silently trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .interferometer import validate_unitary
from .matrix_functions import PERMANENT_LIMIT, permanent
from .sampler import estimate_pattern_probability, sample_patterns
from .states import GaussianModeState, thermal

DEFAULT_HEADROOM = 0.1
_HERM_TOL = 1e-10
_EIG_FLOOR = -1e-9
_RECON_TOL = 1e-9
EXACT_CROSSCHECK_LIMIT = 12
SAMPLING_SIZE_LIMIT = 16
LOW_CONFIDENCE_COUNT = 100


def _check_psd_hermitian(h) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {h.shape}")
    scale = max(float(np.abs(h).max()), 1.0) if h.size else 1.0
    if h.size and float(np.abs(h - h.conj().T).max()) > _HERM_TOL * scale:
        raise ValidationError("matrix is not Hermitian within tolerance")
    return (h + h.conj().T) * 0.5


@dataclass(frozen=True)
class ThermalEmbedding:
    """A PSD matrix recast as a thermal photon-counting instance.

    h = u diag(eigenvalues) u^dag, q = max eigenvalue / (1 - headroom),
    mus = 1 - eigenvalues/q, states = thermal(2/mu - 1).
    """

    h: np.ndarray
    u: np.ndarray
    eigenvalues: np.ndarray
    q: float
    mus: np.ndarray
    states: tuple[GaussianModeState, ...]
    is_zero: bool


def embed(h, headroom: float = DEFAULT_HEADROOM) -> ThermalEmbedding:
    """Eigendecompose and scale a PSD Hermitian matrix into thermal states.

    The headroom keeps every mu_j >= headroom, bounding the thermal
    variances and keeping the target pattern probability away from zero.
    """
    if not (0.0 < headroom < 1.0):
        raise ValidationError(f"headroom must be in (0, 1), got {headroom}")
    h = _check_psd_hermitian(h)
    n = h.shape[0]
    if n == 0:
        raise ValidationError("cannot embed an empty matrix")
    w, v = np.linalg.eigh(h)
    scale = float(np.abs(h).max())
    if w.min() < _EIG_FLOOR * max(scale, 1.0):
        raise ValidationError(f"matrix has negative eigenvalue {w.min():.3e}; not PSD")
    w = np.clip(w, 0.0, None)
    if scale == 0.0 or w.max() == 0.0:
        mus = np.ones(n)
        return ThermalEmbedding(h, v, w, 1.0, mus, tuple(thermal(1.0) for _ in range(n)), True)
    recon = float(np.abs((v * w[None, :]) @ v.conj().T - h).max())
    if recon > _RECON_TOL * scale:
        raise ValidationError(f"eigendecomposition reconstruction error {recon:.3e} too large")
    q = float(w.max()) / (1.0 - headroom)
    mus = 1.0 - w / q
    states = tuple(thermal(2.0 / mu - 1.0) for mu in mus)
    return ThermalEmbedding(h, v, w, q, mus, states, False)


@dataclass(frozen=True)
class PermanentEstimate:
    estimate: float
    stderr: float
    count: int
    shots: int
    exact: float | None
    low_confidence: bool

    @property
    def ratio(self) -> float | None:
        if self.exact is None or self.exact == 0.0:
            return None
        return self.estimate / self.exact


def estimate_permanent(
    h,
    shots: int,
    seed: int,
    headroom: float = DEFAULT_HEADROOM,
    workers: int = 1,
) -> PermanentEstimate:
    """Sample the embedded thermal instance and rescale the all-ones-pattern
    frequency to an estimate of per(h).

    For n <= 12 the exact Ryser value is computed alongside for comparison.
    """
    emb = embed(h, headroom=headroom)
    n = emb.h.shape[0]
    if n > SAMPLING_SIZE_LIMIT:
        raise ValidationError(f"sampling path limited to n <= {SAMPLING_SIZE_LIMIT}, got {n}")
    if shots < 1:
        raise ValidationError(f"shot budget must be >= 1, got {shots}")
    exact = exact_permanent_psd(emb.h) if n <= EXACT_CROSSCHECK_LIMIT else None
    if emb.is_zero:
        return PermanentEstimate(0.0, 0.0, 0, shots, exact, False)
    # D-tilde = W^dag (1-mu) W = h/q  requires the network matrix W = u^dag
    net = validate_unitary(emb.u.conj().T)
    report = sample_patterns(list(emb.states), net, shots, seed, workers=workers)
    ones = (1,) * n
    est = estimate_pattern_probability(report, ones)
    count = report.histogram.get(ones, 0)
    factor = emb.q**n / float(np.prod(emb.mus))
    return PermanentEstimate(
        estimate=est.estimate * factor,
        stderr=est.stderr * factor,
        count=count,
        shots=shots,
        exact=exact,
        low_confidence=count < LOW_CONFIDENCE_COUNT,
    )


def exact_permanent_psd(h) -> float:
    """Ryser permanent of a PSD Hermitian matrix, checked to be real and
    non-negative up to roundoff."""
    h = _check_psd_hermitian(h)
    n = h.shape[0]
    if n > PERMANENT_LIMIT:
        from .errors import CostLimitError

        raise CostLimitError(f"permanent of {n}x{n} exceeds the cost limit (n <= {PERMANENT_LIMIT})")
    val = permanent(h)
    scale = max(float(np.abs(h).max()), 1e-300) ** n if n else 1.0
    if abs(val.imag) > 1e-10 * max(abs(val), scale):
        raise ValidationError(f"permanent of PSD matrix has imaginary residue {val.imag:.3e}")
    if val.real < -1e-10 * scale:
        raise ValidationError(f"permanent of PSD matrix is negative: {val.real:.3e}")
    return float(val.real)

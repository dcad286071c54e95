"""The four exact single-photon-detection probability engines.

All engines return p(n) for a detection pattern n with entries in {0, 1}.
Mutual agreement between them on overlapping domains is the core test
surface of the package:

  prob_coherent  closed form for coherent inputs,
                 p = e^{-I} prod_k |beta_k|^{2 n_k}
  prob_general   pairing sum over (2N-1)!! matchings = K * haf(B) where B is
                 the 2N x 2N second-derivative (pairing) matrix
  prob_thermal   prod(mu) * per(D-tilde submatrix), thermal/vacuum inputs only
  prob_squeezed  K * |O_N|^2 with O_N = 2^{N/2} haf(C submatrix), pure
                 squeezed-vacuum inputs only; odd N vanishes identically
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import ContractError, CostLimitError, NumericalIntegrityError, ValidationError
from .interferometer import Interferometer, propagate_coherent
from .matrix_functions import HAFNIAN_LIMIT, hafnian, permanent, submatrix_by_pattern
from .qform import OutputQForm

_IM_TOL = 1e-10
_NEG_TOL = 1e-10
_THERMAL_LAM_TOL = 1e-14
_PURE_MU_TOL = 1e-12


def pattern_weight(pattern) -> int:
    """Validate a {0,1} detection pattern and return N = number of clicks."""
    n = 0
    for x in pattern:
        xi = int(x)
        if xi not in (0, 1):
            raise ValidationError("detection pattern entries must be 0 or 1")
        n += xi
    return n


def enumerate_patterns(m: int, n_max: int) -> Iterator[tuple[int, ...]]:
    """All C(m, n) patterns for each n <= n_max, lexicographic within each n.

    Streams patterns one at a time; nothing is materialized.
    """
    if n_max > m or n_max < 0:
        raise ValidationError(f"n_max must be in [0, {m}], got {n_max}")
    for n in range(n_max + 1):
        for detected in combinations(range(m), n):
            pat = [0] * m
            for i in detected:
                pat[i] = 1
            yield tuple(pat)


def prob_coherent(net: Interferometer, alpha, pattern) -> float:
    """Detection probability for a multimode coherent input."""
    pattern_weight(pattern)
    if len(pattern) != net.m:
        raise ValidationError(f"pattern length {len(pattern)} does not match {net.m} modes")
    beta = propagate_coherent(net, alpha)
    intens = np.abs(beta) ** 2
    p = float(np.exp(-intens.sum()))
    for k, nk in enumerate(pattern):
        if int(nk) == 1:
            p *= intens[k]
    return p


def pairing_matrix(qform: OutputQForm, pattern) -> np.ndarray:
    """2N x 2N symmetric matrix of second derivatives of the exponent F.

    Index order (a_{s1}, ..., a_{sN}, conj(a_{s1}), ..., conj(a_{sN})) with
    detected modes ascending.  Blocks: [[2C, Dt], [Dt^T, 2 conj(C)]], all
    restricted to the detected modes.
    """
    cs = submatrix_by_pattern(qform.c, pattern)
    ds = submatrix_by_pattern(qform.d_tilde, pattern)
    return np.block([[2.0 * cs, ds], [ds.T, 2.0 * cs.conj()]])


def _check_real(value: complex, what: str) -> float:
    if abs(value.imag) > _IM_TOL * max(1.0, abs(value.real)):
        raise NumericalIntegrityError(f"{what} has imaginary residue {value.imag:.3e}")
    re = value.real
    if re < -_NEG_TOL:
        raise NumericalIntegrityError(f"{what} is negative: {re:.3e}")
    return re


def prob_general(qform: OutputQForm, pattern, hafnian_limit: int = HAFNIAN_LIMIT) -> float:
    """K * haf(pairing matrix): valid for every Gaussian input mix."""
    n = pattern_weight(pattern)
    if len(pattern) != qform.m:
        raise ValidationError(f"pattern length {len(pattern)} does not match {qform.m} modes")
    if 2 * n > hafnian_limit:
        raise CostLimitError(f"pattern with N = {n} needs a {2 * n}x{2 * n} hafnian (limit {hafnian_limit})")
    if n == 0:
        return qform.k
    val = qform.k * hafnian(pairing_matrix(qform, pattern), limit=hafnian_limit)
    return min(_check_real(val, "general-engine probability"), 1.0)


def prob_thermal(qform: OutputQForm, pattern) -> float:
    """prod(mu) * per(D-tilde restricted to the detected modes).

    Precondition: every input mode is thermal or vacuum (lam_s = 0); calling
    it with squeezing present is a contract violation, not a silent fallback.
    """
    pattern_weight(pattern)
    if len(pattern) != qform.m:
        raise ValidationError(f"pattern length {len(pattern)} does not match {qform.m} modes")
    if np.abs(qform.lams).max() > _THERMAL_LAM_TOL:
        raise ContractError("thermal engine requires lam_s = 0 for every mode (thermal/vacuum inputs)")
    val = np.prod(qform.mus) * permanent(submatrix_by_pattern(qform.d_tilde, pattern))
    return min(_check_real(val, "thermal-engine probability"), 1.0)


def prob_squeezed(qform: OutputQForm, pattern) -> float:
    """K |O_N|^2 with O_N = 2^{N/2} haf([C]_N); exactly 0 for odd N.

    Precondition: every input mode is pure squeezed vacuum (mu_s = 1).
    """
    n = pattern_weight(pattern)
    if len(pattern) != qform.m:
        raise ValidationError(f"pattern length {len(pattern)} does not match {qform.m} modes")
    if np.abs(qform.mus - 1.0).max() > _PURE_MU_TOL:
        raise ContractError("squeezed engine requires mu_s = 1 for every mode (pure squeezed vacuum)")
    if n % 2 == 1:
        return 0.0
    if n == 0:
        return qform.k
    o_n = 2.0 ** (n / 2) * hafnian(submatrix_by_pattern(qform.c, pattern))
    return min(qform.k * float(abs(o_n)) ** 2, 1.0)

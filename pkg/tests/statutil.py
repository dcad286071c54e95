"""Shared statistical helpers for the sampler tests."""

import numpy as np
from scipy.stats import chi2

from gbsim.engines import enumerate_patterns, prob_thermal


def thermal_chi2_pvalue(report, qform, min_expected: float = 10.0) -> float:
    """Multinomial goodness-of-fit p-value of a sample against prob_thermal.

    Bins: every {0,1} detection pattern whose expected count clears
    min_expected, plus a catch-all bin for everything else (multi-photon
    patterns included).  The catch-all is folded into the largest bin if it
    is itself too thin.
    """
    shots = report.shots
    sel = []
    for pat in enumerate_patterns(qform.m, qform.m):
        p = prob_thermal(qform, pat)
        if p * shots >= min_expected:
            sel.append((pat, p))
    p_other = 1.0 - sum(p for _, p in sel)
    obs = [report.histogram.get(pat, 0) for pat, _ in sel]
    exp = [p * shots for _, p in sel]
    obs_other = shots - sum(obs)
    if p_other * shots >= min_expected:
        obs.append(obs_other)
        exp.append(p_other * shots)
    else:
        i = int(np.argmax(exp))
        obs[i] += obs_other
        exp[i] += p_other * shots
    stat = sum((o - e) ** 2 / e for o, e in zip(obs, exp))
    return float(chi2.sf(stat, len(exp) - 1))


def total_photon_moments(report):
    """Mean and standard error of the total photon count per shot."""
    totals = np.array([sum(pat) for pat in report.histogram])
    counts = np.array([report.histogram[pat] for pat in report.histogram], dtype=float)
    mean = float((totals * counts).sum() / report.shots)
    var = float(((totals - mean) ** 2 * counts).sum() / report.shots)
    return mean, (var / report.shots) ** 0.5

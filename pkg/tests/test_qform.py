import math

import numpy as np
import pytest

from gbsim import (
    ValidationError,
    build_qform,
    derive_q_params,
    haar_random,
    squeezed,
    squeezed_thermal,
    thermal,
    vacuum,
    validate_unitary,
)


def random_orthogonal(m, seed):
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return validate_unitary(q * np.sign(np.diagonal(r)))


def test_all_vacuum_gives_trivial_form():
    net = haar_random(4, 3)
    qf = build_qform([vacuum()] * 4, net)
    assert qf.k == pytest.approx(1.0, abs=1e-14)
    assert np.abs(qf.c).max() < 1e-15
    assert np.abs(qf.d_tilde).max() < 1e-14


def test_equal_thermal_is_network_invariant():
    # no correlation is created: C = 0 and D-tilde stays diagonal
    v = 2.4
    mu = derive_q_params(thermal(v)).mu
    net = haar_random(5, 8)
    qf = build_qform([thermal(v)] * 5, net)
    assert np.abs(qf.c).max() < 1e-14
    assert np.abs(qf.d_tilde - (1 - mu) * np.eye(5)).max() < 1e-12


def test_equal_squeezed_through_orthogonal_network():
    # real orthogonal network on identical squeezed inputs: output = input
    r = 0.4
    lam = derive_q_params(squeezed(r)).lam
    net = random_orthogonal(4, 17)
    qf = build_qform([squeezed(r)] * 4, net)
    assert np.abs(qf.c - lam * np.eye(4)).max() < 1e-12
    assert np.abs(qf.d_tilde).max() < 1e-12


def test_trace_preserved_under_conjugation():
    states = [thermal(1.5), squeezed(0.3), squeezed_thermal(1.2, 0.2), vacuum()]
    mus = [derive_q_params(s).mu for s in states]
    qf = build_qform(states, haar_random(4, 5))
    assert np.trace(qf.d).real == pytest.approx(sum(mus), rel=1e-12)


def test_classical_inputs_give_d_spectrum_in_unit_interval():
    states = [thermal(1.8), thermal(3.5), squeezed_thermal(2.0, 0.2), vacuum()]
    # squeezed_thermal(2.0, 0.2) has v_p = 2 e^{-0.4} > 1: classical
    qf = build_qform(states, haar_random(4, 19))
    w = np.linalg.eigvalsh(qf.d)
    assert w.min() > 0.0
    assert w.max() <= 1.0 + 1e-12


def test_pure_inputs_have_vanishing_d_tilde():
    qf = build_qform([squeezed(0.5), squeezed(1.0), vacuum()], haar_random(3, 23))
    assert np.abs(qf.d_tilde).max() < 1e-14


def test_c_symmetric_and_d_tilde_hermitian():
    states = [squeezed_thermal(1.3, 0.4), thermal(2.0), squeezed(0.6)]
    qf = build_qform(states, haar_random(3, 29))
    assert np.abs(qf.c - qf.c.T).max() == 0.0
    assert np.abs(qf.d_tilde - qf.d_tilde.conj().T).max() == 0.0
    # clamped at build time; re-diagonalizing may still see eps-level noise
    assert np.linalg.eigvalsh(qf.d_tilde).min() >= -1e-12


def test_k_in_unit_interval():
    states = [thermal(4.0), squeezed(1.5), squeezed_thermal(3.0, 1.0)]
    qf = build_qform(states, haar_random(3, 31))
    assert 0.0 < qf.k <= 1.0


def test_dimension_mismatch_rejected():
    with pytest.raises(ValidationError):
        build_qform([vacuum()] * 3, haar_random(4, 1))

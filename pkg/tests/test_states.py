import math

import pytest
from hypothesis import given, strategies as st

from gbsim import (
    GaussianModeState,
    ValidationError,
    derive_q_params,
    is_classical,
    mean_photon_number,
    squeezed,
    squeezed_thermal,
    state_from_descriptor,
    thermal,
    vacuum,
)


def valid_states():
    """Valid states via the canonical constructors."""
    base = st.floats(min_value=1.0, max_value=50.0, allow_nan=False)
    r = st.floats(min_value=0.0, max_value=2.0, allow_nan=False)
    return st.one_of(
        st.just(vacuum()),
        base.map(thermal),
        r.map(squeezed),
        st.tuples(base, r).map(lambda t: squeezed_thermal(*t)),
    )


class TestDeriveQParams:
    def test_vacuum(self):
        p = derive_q_params(vacuum())
        assert p.lam == 0.0
        assert p.mu == 1.0

    def test_thermal_v3(self):
        p = derive_q_params(thermal(3.0))
        assert p.lam == 0.0
        assert p.mu == pytest.approx(0.5, abs=0)

    def test_squeezed_half(self):
        p = derive_q_params(squeezed(0.5))
        assert p.lam == pytest.approx(math.tanh(0.5) / 2, abs=1e-15)
        assert p.mu == pytest.approx(1.0, abs=1e-14)

    @given(valid_states())
    def test_normalizable(self, s):
        p = derive_q_params(s)
        assert p.mu**2 - 4 * p.lam**2 > 0

    @given(valid_states())
    def test_lam_zero_iff_symmetric(self, s):
        # lam = (v_x - v_p) / (2 (v_x + 1)(v_p + 1)): zero iff no squeezing
        p = derive_q_params(s)
        if s.v_x == s.v_p:
            assert p.lam == 0.0
        else:
            expect = (s.v_x - s.v_p) / (2 * (s.v_x + 1) * (s.v_p + 1))
            # abs floor: the two-reciprocal form cancels at the ulp scale
            assert p.lam == pytest.approx(expect, rel=1e-9, abs=2e-16)
            assert p.lam >= 0.0

    @given(valid_states())
    def test_mu_one_iff_pure(self, s):
        p = derive_q_params(s)
        assert (abs(p.mu - 1.0) < 1e-12) == (abs(s.v_x * s.v_p - 1.0) < 1e-9)


class TestValidation:
    @pytest.mark.parametrize("vx,vp", [(0.5, 0.5), (2.0, 0.1), (3.0, -1.0), (0.9, 0.9)])
    def test_unphysical_rejected(self, vx, vp):
        with pytest.raises(ValidationError):
            GaussianModeState(vx, vp)

    def test_ordering_enforced(self):
        with pytest.raises(ValidationError):
            GaussianModeState(1.0, 3.0)

    def test_thermal_below_vacuum_rejected(self):
        with pytest.raises(ValidationError):
            thermal(0.8)

    def test_squeezed_sign_canonicalized(self):
        assert squeezed(-0.7) == squeezed(0.7)


class TestClassicality:
    def test_thermal_classical(self):
        assert is_classical(thermal(3.0))

    def test_squeezed_nonclassical(self):
        assert not is_classical(squeezed(0.5))

    def test_squeezed_thermal_with_wide_vp(self):
        # v_x = 4, v_p = 1.5 survives the squeezing
        assert is_classical(GaussianModeState(4.0, 1.5))

    def test_vacuum_classical(self):
        assert is_classical(vacuum())


class TestMeanPhotonNumber:
    def test_vacuum(self):
        assert mean_photon_number(vacuum()) == 0.0

    def test_thermal_matches_geometric_mean(self):
        # geometric law with nbar = (V-1)/2
        assert mean_photon_number(thermal(3.0)) == pytest.approx(1.0, abs=0)

    def test_squeezed_matches_sinh(self):
        assert mean_photon_number(squeezed(0.5)) == pytest.approx(math.sinh(0.5) ** 2, rel=1e-14)


class TestDescriptors:
    @pytest.mark.parametrize(
        "desc,expected",
        [
            ({"type": "vacuum"}, vacuum()),
            ({"type": "thermal", "v": 3.0}, thermal(3.0)),
            ({"type": "squeezed", "r": 0.5}, squeezed(0.5)),
            ({"type": "squeezed_thermal", "v": 1.2, "r": 0.3}, squeezed_thermal(1.2, 0.3)),
        ],
    )
    def test_round_trip(self, desc, expected):
        assert state_from_descriptor(desc) == expected

    @pytest.mark.parametrize("desc", [{"type": "laser"}, {"type": "thermal"}, {}, "vacuum"])
    def test_bad_descriptor(self, desc):
        with pytest.raises(ValidationError):
            state_from_descriptor(desc)

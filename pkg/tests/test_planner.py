import pytest
from hypothesis import given
from hypothesis import strategies as st

from mediumband.channel import BandClass, pds
from mediumband.planner import DesignRequest, choose_symbol_period

US = 1e-6


class TestChooseSymbolPeriod:
    def test_forty_percent_example(self):
        res = choose_symbol_period(DesignRequest(t_m_estimate=1 * US, target_pds=40.0))
        assert res.t_s == pytest.approx(2.5 * US)
        assert res.band is BandClass.MEDIUMBAND
        assert res.warning is None

    def test_sixty_percent_example(self):
        res = choose_symbol_period(DesignRequest(t_m_estimate=1 * US, target_pds=60.0))
        assert res.t_s == pytest.approx(1.67 * US, rel=0.005)
        assert res.band is BandClass.MEDIUMBAND

    def test_hundred_percent_is_broadband_boundary(self):
        res = choose_symbol_period(DesignRequest(t_m_estimate=1 * US, target_pds=100.0))
        assert res.t_s == pytest.approx(1 * US)
        assert res.band is BandClass.BROADBAND
        assert res.warning is not None

    def test_low_target_warns_narrowband(self):
        res = choose_symbol_period(DesignRequest(t_m_estimate=1 * US, target_pds=5.0))
        assert res.band is BandClass.NARROWBAND
        assert "narrowband" in res.warning

    def test_invalid_requests_rejected(self):
        with pytest.raises(ValueError):
            DesignRequest(t_m_estimate=0.0, target_pds=40.0)
        with pytest.raises(ValueError):
            DesignRequest(t_m_estimate=1 * US, target_pds=0.0)
        with pytest.raises(ValueError):
            DesignRequest(t_m_estimate=1 * US, target_pds=101.0)

    @given(
        t_m=st.floats(min_value=1e-9, max_value=1e-3),
        target=st.floats(min_value=0.1, max_value=100.0),
    )
    def test_round_trip_identity(self, t_m, target):
        res = choose_symbol_period(DesignRequest(t_m_estimate=t_m, target_pds=target))
        assert pds(res.point) == pytest.approx(target, rel=1e-12)

    @given(
        t_m=st.floats(min_value=1e-9, max_value=1e-3),
        lo=st.floats(min_value=0.1, max_value=99.0),
        step=st.floats(min_value=0.1, max_value=10.0),
    )
    def test_larger_target_means_smaller_symbol_period(self, t_m, lo, step):
        a = choose_symbol_period(DesignRequest(t_m_estimate=t_m, target_pds=lo))
        b = choose_symbol_period(
            DesignRequest(t_m_estimate=t_m, target_pds=min(lo + step, 100.0))
        )
        assert b.t_s < a.t_s

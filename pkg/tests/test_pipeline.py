import json
import math

import numpy as np
import pytest

from irid.cfoi import CfoiParams
from irid.errors import (GridMismatch, IoError, ParamError,
                         PipelineStageError, ZeroMagnitude)
from irid.lti import FrequencyGrid, FrequencyResponseSeries, TimeSeries
from irid.pipeline import (IridRequest, compare_frequency, compare_impulse,
                           irid_fcoi, write_outputs)


@pytest.fixture(scope="module")
def small_result():
    req = IridRequest(params=CfoiParams(1.5, -0.4, 1.0), tm=2.0,
                      wmin=0.01, wmax=40.0, norder=5, m=256, npoints=60)
    return irid_fcoi(req)


class TestCompareImpulse:
    def test_identical(self):
        a = TimeSeries(0.0, 1.0, [1.0, 2.0, 3.0])
        assert compare_impulse(a, a) == (0.0, 0.0)

    def test_double(self):
        a = TimeSeries(0.0, 1.0, [1.0, 2.0, 3.0])
        b = TimeSeries(0.0, 1.0, [2.0, 4.0, 6.0])
        rel, _ = compare_impulse(a, b)
        assert rel == pytest.approx(1.0)

    def test_orthogonal(self):
        a = TimeSeries(0.0, 1.0, [1.0, 0.0])
        b = TimeSeries(0.0, 1.0, [0.0, 1.0])
        rel, mabs = compare_impulse(a, b)
        assert rel == pytest.approx(math.sqrt(2))
        assert mabs == pytest.approx(1.0)

    def test_grid_mismatch(self):
        a = TimeSeries(0.0, 1.0, [1.0, 2.0])
        b = TimeSeries(0.0, 0.5, [1.0, 2.0])
        with pytest.raises(GridMismatch):
            compare_impulse(a, b)


class TestCompareFrequency:
    def grid(self):
        return FrequencyGrid([1.0, 2.0, 4.0])

    def test_identical(self):
        a = FrequencyResponseSeries(self.grid(), [1 + 1j, 2j, -3.0])
        assert compare_frequency(a, a) == (0.0, 0.0)

    def test_gain_factor(self):
        a = FrequencyResponseSeries(self.grid(), [1 + 1j, 2j, -3.0])
        b = FrequencyResponseSeries(self.grid(), 10 * a.response)
        mag, phase = compare_frequency(a, b)
        assert mag == pytest.approx(20.0)
        assert phase == pytest.approx(0.0, abs=1e-12)

    def test_rotation(self):
        a = FrequencyResponseSeries(self.grid(), [1 + 1j, 2j, -3.0 + 0.5j])
        b = FrequencyResponseSeries(self.grid(), 1j * a.response)
        mag, phase = compare_frequency(a, b)
        assert mag == pytest.approx(0.0, abs=1e-12)
        assert phase == pytest.approx(90.0)

    def test_grid_mismatch(self):
        a = FrequencyResponseSeries(self.grid(), [1.0, 1.0, 1.0])
        other = FrequencyResponseSeries(FrequencyGrid([1.0, 2.0, 5.0]),
                                        [1.0, 1.0, 1.0])
        with pytest.raises(GridMismatch):
            compare_frequency(a, other)

    def test_zero_magnitude(self):
        a = FrequencyResponseSeries(self.grid(), [1.0, 0.0, 1.0])
        with pytest.raises(ZeroMagnitude):
            compare_frequency(a, a)


class TestRequestValidation:
    def test_out_of_range_order_rejected_before_compute(self):
        with pytest.raises(ParamError, match=r"\(0, 2\)"):
            IridRequest(params=CfoiParams(2.5, -0.4, 1.0), tm=2.0,
                        wmin=0.01, wmax=100.0, norder=5)

    def test_band_ordering(self):
        with pytest.raises(ParamError):
            IridRequest(params=CfoiParams(1.5, -0.4, 1.0), tm=2.0,
                        wmin=10.0, wmax=1.0, norder=5)

    def test_norder_positive(self):
        with pytest.raises(ParamError):
            IridRequest(params=CfoiParams(1.5, -0.4, 1.0), tm=2.0,
                        wmin=0.01, wmax=100.0, norder=0)


class TestIridFcoi:
    def test_series_share_grid(self, small_result):
        res = small_result
        for h in (res.h_d, res.h_c):
            assert h.t0 == res.h_ref.t0
            assert h.dt == res.h_ref.dt
            assert len(h) == len(res.h_ref)
        for f in (res.f_d, res.f_c):
            assert np.array_equal(f.grid.omegas, res.f_ref.grid.omegas)

    def test_grid_within_band(self, small_result):
        omegas = small_result.f_ref.grid.omegas
        assert omegas[0] >= 0.01 and omegas[-1] <= 40.0
        assert np.all(np.diff(omegas) > 0)

    def test_model_shapes(self, small_result):
        assert small_result.gd.num.degree == 5
        assert small_result.gd.den.degree == 5
        assert small_result.gd.den.coeffs[0] == 1.0
        assert small_result.gc.den.coeffs[0] == 1.0
        assert small_result.gd.ts == pytest.approx(2.0 / 256)

    def test_metrics_nonnegative(self, small_result):
        for m in (small_result.metrics.discrete, small_result.metrics.continuous):
            assert m.impulse_rel_l2 >= 0
            assert m.impulse_max_abs >= 0
            assert m.mag_max_err_db >= 0
            assert m.phase_max_err_deg >= 0

    def test_deterministic(self, small_result):
        req = IridRequest(params=CfoiParams(1.5, -0.4, 1.0), tm=2.0,
                          wmin=0.01, wmax=40.0, norder=5, m=256, npoints=60)
        again = irid_fcoi(req)
        assert np.array_equal(again.h_ref.values, small_result.h_ref.values)
        assert np.array_equal(again.h_d.values, small_result.h_d.values)
        assert again.gd.den.coeffs == small_result.gd.den.coeffs
        assert again.metrics == small_result.metrics

    def test_wmax_clamped_to_nyquist(self):
        req = IridRequest(params=CfoiParams(1.0, 0.0, 1.0), tm=2.0,
                          wmin=0.1, wmax=500.0, norder=2, m=64, npoints=20)
        with pytest.warns(UserWarning, match="clamp"):
            res = irid_fcoi(req)
        assert res.f_ref.grid.omegas[-1] <= 0.9 * math.pi / (2.0 / 64)

    def test_fit_stage_failure_is_labelled(self):
        # 3*(nb+na) exceeds the available samples
        req = IridRequest(params=CfoiParams(1.0, 0.0, 1.0), tm=2.0,
                          wmin=0.1, wmax=10.0, norder=11, m=64, npoints=20)
        with pytest.raises(PipelineStageError) as err:
            irid_fcoi(req)
        assert err.value.stage == "fit"

    @pytest.mark.parametrize("lam", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("mu", [-0.2, -0.4])
    @pytest.mark.parametrize("wgc", [0.5, 1.0])
    def test_impulse_invariance_across_parameters(self, lam, mu, wgc):
        # the property the method is named for: the discrete model's
        # impulse response stays close to the exact one
        req = IridRequest(params=CfoiParams(lam, mu, wgc), tm=2.0,
                          wmin=0.01, wmax=100.0, norder=5)
        res = irid_fcoi(req)
        assert res.metrics.discrete.impulse_rel_l2 <= 0.05


class TestWriteOutputs:
    def test_files_written(self, small_result, tmp_path):
        paths = write_outputs(small_result, tmp_path / "out")
        names = {p.name for p in paths}
        assert names == {"impulse.csv", "freq.csv", "coeffs.json",
                         "summary.txt", "impulse.svg", "freq.svg"}
        impulse = (tmp_path / "out" / "impulse.csv").read_text()
        lines = impulse.splitlines()
        assert lines[0] == "t,h_cfoi,h_discrete,h_continuous"
        assert len(lines) == len(small_result.h_ref) + 1
        freq = (tmp_path / "out" / "freq.csv").read_text()
        assert len(freq.splitlines()) == len(small_result.f_ref.grid) + 1
        assert freq.splitlines()[0].startswith("omega_rad_s,mag_db_cfoi")

    def test_no_svg(self, small_result, tmp_path):
        paths = write_outputs(small_result, tmp_path / "bare", svg=False)
        assert {p.name for p in paths} == {"impulse.csv", "freq.csv",
                                           "coeffs.json", "summary.txt"}

    def test_coeffs_roundtrip_bitwise(self, small_result, tmp_path):
        write_outputs(small_result, tmp_path / "rt", svg=False)
        data = json.loads((tmp_path / "rt" / "coeffs.json").read_text())
        assert tuple(data["discrete"]["num"]) == small_result.gd.num.coeffs
        assert tuple(data["discrete"]["den"]) == small_result.gd.den.coeffs
        assert data["discrete"]["ts"] == small_result.gd.ts
        assert tuple(data["continuous"]["num"]) == small_result.gc.num.coeffs
        assert tuple(data["continuous"]["den"]) == small_result.gc.den.coeffs
        assert data["stable_discrete"] == small_result.stable
        m = data["metrics"]["discrete"]
        assert m["impulse_rel_l2"] == small_result.metrics.discrete.impulse_rel_l2

    def test_empty_dir_rejected(self, small_result):
        with pytest.raises(IoError):
            write_outputs(small_result, "")

import numpy as np
import pytest

from oisl.dsp import (AlphaScenario, Architecture, ChannelConfig, DspFormat, ReceiverConfig,
                      calibrate_alpha, fine_limit, measure_penalty, penalty_vs, run_pipeline)

RS = 32e9
N = 2**14


@pytest.mark.parametrize("arch", list(Architecture))
@pytest.mark.parametrize("fmt", list(DspFormat))
def test_clean_channel_is_error_free(fmt, arch):
    ch = ChannelConfig(snr_db=30.0)
    res = run_pipeline(fmt, ch, ReceiverConfig(arch, eq_preamble=4000), n_symbols=N, seed=1)
    assert res.errors == 0 and res.bits > 0


def test_determinism():
    ch = ChannelConfig(6e9, 1e12, 100e3, 10.0, 28e9)
    rx = ReceiverConfig(Architecture.MODIFIED, eq_preamble=4000)
    a = run_pipeline(DspFormat.QPSK, ch, rx, N, seed=9)
    b = run_pipeline(DspFormat.QPSK, ch, rx, N, seed=9)
    assert (a.errors, a.bits, a.lag, a.swapped) == (b.errors, b.bits, b.lag, b.swapped)
    assert np.array_equal(a.coarse_estimates, b.coarse_estimates)
    assert np.array_equal(a.fine_estimates, b.fine_estimates)


def test_frequency_bookkeeping():
    f0 = 7e9
    ch = ChannelConfig(f0, 0.0, 0.0, 20.0, 28e9)
    res = run_pipeline(DspFormat.QPSK, ch, ReceiverConfig(Architecture.MODIFIED,
                                                          eq_preamble=4000), N, seed=2)
    assert np.all(np.abs(res.residual_offsets) < fine_limit(RS, 4))
    total = np.mean(res.coarse_estimates) + np.mean(res.fine_estimates)
    assert total == pytest.approx(f0, abs=RS / 512)
    assert 0 <= res.ber <= 0.5


def test_receiver_config_validation():
    with pytest.raises(ValueError):
        ReceiverConfig(coarse_fft_window=1000)
    rx = ReceiverConfig("modified", eq_algo="rde")
    assert rx.architecture is Architecture.MODIFIED
    assert rx.fine_power(DspFormat.BPSK) == 2 and rx.fine_power(DspFormat.QAM16) == 4


def test_penalty_sweep_shapes():
    ch = ChannelConfig(0.0, 0.0, 100e3, None, 28e9)
    c = measure_penalty(DspFormat.QPSK, ch, ReceiverConfig(eq_preamble=4000),
                        offsets_db=[0.0, 1.0, 2.0], n_symbols=N, seed=3)
    assert len(c.rows()) >= 3
    assert np.all(np.diff(c.ber) <= 0)
    assert 0.0 < c.penalty_dB < 2.0
    rows = penalty_vs("rx_bandwidth_Hz", [28e9], DspFormat.QPSK, ch,
                      ReceiverConfig(eq_preamble=4000), offsets_db=[0.0, 1.0, 2.0],
                      n_symbols=N, seed=3)
    assert rows[0]["penalty_dB"] == pytest.approx(c.penalty_dB)


def test_alpha_calibration():
    cal = calibrate_alpha(AlphaScenario())
    adm = [a / 1e9 for a in cal.admissible]
    assert adm and adm == list(np.arange(adm[0], adm[-1] + 1))
    assert cal.selected_Hz == 17e9
    assert len(cal.rows()) == len(cal.alphas_Hz) * len(cal.shifts_Hz)
    i = list(cal.alphas_Hz).index(17e9)
    j = list(cal.shifts_Hz).index(10e9)
    assert cal.minimum[i, j] <= cal.mean[i, j] <= cal.maximum[i, j]

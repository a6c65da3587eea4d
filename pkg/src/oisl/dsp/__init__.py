"""Dual-polarization coherent receiver simulator with two-stage frequency recovery."""

from .calibration import (AlphaCalibration, AlphaScenario, CalibrationError, calibrate_alpha,
                          log_ratios)
from .cfe import (DegenerateWindowError, coarse_cfe, compensate, compensate_array,
                  fine_cfe_mth_power, fine_limit, spectral_log_ratio)
from .channel import (ChannelConfig, add_awgn, apply_channel, apply_doppler,
                      apply_phase_noise, bandlimit, phase_noise_walk, super_gaussian_response)
from .coding import (differential_code, differential_decode, differential_encode,
                     differential_reference)
from .equalizer import (EqualizerAlgo, EqualizerDivergenceError, adaptive_equalizer)
from .filters import lowpass_fir, lowpass_response, lowpass_taps
from .frame import ComplexFrame
from .metrics import (REFERENCE_BER, CurveError, penalty_at_ber, snr_at_ber,
                      theoretical_ber, theoretical_snr_db)
from .phase import bps, bps_phase
from .receiver import (Architecture, ReceiverConfig, SimResult, count_errors, run_pipeline,
                       transmit)
from .signals import (DspFormat, constellation, decide, generate_symbols, map_bits,
                      matched_filter, pulse_shape_rrc, rrc_taps)
from .sweeps import PenaltyCurve, ber_curve, measure_penalty, penalty_vs

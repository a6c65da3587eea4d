"""Link budget, BER models, pointing jitter and FEC margin tables."""

from .ber import (SCHEMES, Format, ModulationScheme, ber, ber_square_qam, ber_star8,
                  required_snr, scheme)
from .budget import (AseLimited, LinkParams, NoiseRegime, ShotLimited, fspl,
                     photons_per_symbol, received_power, regime_from_name, snr)
from .jitter import intensity_pdf, jitter_avg_ber, jitter_power_penalty
from .margins import (Fec, MarginCell, Suitability, compare_with_golden, design_distance,
                      feasibility_table, margin, margin_cell)

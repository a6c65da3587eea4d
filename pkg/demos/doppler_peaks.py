"""
Doppler shift between neighboring planes
=========================================

Shift and its rate of change over one orbit, the per-shell peaks over all
phase factors, and the head-on bound.
"""

import numpy as np

from oisl.catalogue import builtin_shells
from oisl.doppler import doppler_series, extrema_search, urm_bound
from oisl.orbital import Link

shells = builtin_shells()
a1 = shells["A1"]

# time series at the phase factor that maximizes the shift
series = doppler_series(a1.with_phase_factor(2), Link.K_TO_K, 4000)
print(f"A1 k-to-k, F=2: |df| <= {np.abs(series.delta_f).max() / 1e9:.4f} GHz, "
      f"|df'| <= {np.abs(series.delta_f_dot).max() / 1e9:.4f} GHz/s")

# peaks over the phase factor, with the rate both at that F and at its own best F
for name in ("A1", "C4", "D3"):
    for link in (Link.K_TO_K, Link.K_TO_K_MINUS_1):
        e = extrema_search(shells[name], link)
        print(f"{name} {link.value:>8}: {e.delta_f_max / 1e9:.4f} GHz (F={e.f_at}), "
              f"df' {e.delta_f_dot_max / 1e9:.4f} / {e.delta_f_dot_max_any / 1e9:.4f} GHz/s")

# two satellites closing head-on at orbital speed bound every first-neighbor shift
for h in (400, 550, 1200):
    b = urm_bound(h)
    print(f"bound at {h} km: {b.delta_f_bound_Hz / 1e9:.2f} GHz")

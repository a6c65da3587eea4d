"""
Walker shells and first-neighbor link lengths
==============================================

Positions, link lengths over one orbit and the phase factor that makes an
interorbital link longest.
"""

import numpy as np

from oisl.catalogue import builtin_shells
from oisl.orbital import (Link, SatelliteIndex, intraorbital_distance, link_distance,
                          parse_walker, worst_case_phase_factor)

shells = builtin_shells()
for name, s in shells.items():
    print(f"{name:>3}  H={s.altitude_km:6.0f} km  {s.walker_notation():>18}  T={s.period / 60:5.1f} min")

# Walker notation carries inclination, total count, planes and phase factor
print(parse_walker("53: 1584/72/39", altitude_km=550))

# neighbors in a plane sit on a fixed chord
b1 = shells["B1"]
print(f"B1 intraorbital chord: {intraorbital_distance(b1) / 1e3:.1f} km")

# interorbital lengths breathe with latitude
t = np.linspace(0, b1.period, 2000)
d = link_distance(b1, SatelliteIndex(0, 0), Link.K_TO_K, t)
print(f"B1 k-to-k over one orbit: {d.min() / 1e3:.1f} .. {d.max() / 1e3:.1f} km")

# the worst phase factor stretches the link furthest
for link in (Link.K_TO_K, Link.K_TO_K_MINUS_1):
    f, dmax = worst_case_phase_factor(shells["A1"], link)
    print(f"A1 {link.value}: worst F={f}, longest {dmax / 1e3:.1f} km")

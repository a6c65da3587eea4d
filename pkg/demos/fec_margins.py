"""
FEC margins per shell and modulation
=====================================

Received SNR at the worst-case link length against the SNR two
hard-decision FEC codes need. Green cells clear the staircase code, yellow
cells only the stronger code and red cells neither.
"""

from oisl.catalogue import builtin_shells
from oisl.linkfeas import AseLimited, LinkParams, ShotLimited, feasibility_table
from oisl.orbital import Link

shells = builtin_shells()

for label, regime in (("shot-noise limited", ShotLimited()), ("ASE limited", AseLimited())):
    print(f"\n{label}")
    cells = feasibility_table(regime, links=(Link.INTRA_NEXT, Link.K_TO_K))
    for c in cells:
        if c.shell in ("A1", "B2", "C4"):
            print(f"  {c.link.value:>10} {c.shell:>3} {c.scheme:>10}  "
                  f"{c.margin_staircase_dB:+7.2f} {c.margin_ofec_dB:+7.2f}  {c.classification.value}")

# every parameter of the terminal can be overridden; margins move 1:1 in dB
half_power = LinkParams(tx_power_W=0.5)
cell = feasibility_table(ShotLimited(), [shells["A1"]], half_power, links=(Link.INTRA_NEXT,))[0]
print(f"\nA1 100G-QPSK at 0.5 W: {cell.margin_staircase_dB:+.2f} dB")

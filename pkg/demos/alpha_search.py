"""
Picking the coarse estimator scale
===================================

The coarse estimate is a scaled log ratio of positive- to negative-band
power. Sweeping the scale against known offsets shows which values keep
every window inside the range the fine stage can still resolve.
"""

from oisl.dsp import AlphaScenario, calibrate_alpha

cal = calibrate_alpha(AlphaScenario(snr_db=15.0))
print(f"fine-stage range +-{cal.limit_Hz / 1e9:.1f} GHz")
print("admissible alpha:", [a / 1e9 for a in cal.admissible], "GHz")
print(f"selected alpha: {cal.selected_Hz / 1e9:.0f} GHz")

for row in cal.rows():
    if row["alpha_GHz"] == 17.0:
        print(f"  shift {row['shift_GHz']:4.1f} GHz -> mean {row['mean_GHz']:6.2f} "
              f"[{row['min_GHz']:6.2f}, {row['max_GHz']:6.2f}]")

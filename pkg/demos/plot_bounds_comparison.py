"""
Comparing the upper bounds over peak power
==========================================

Every bound here is capped by the Shannon bound, and the prior bound switches
from the low-power expression to McKellips' above 6.303 dB. The table is written
as CSV so it can go straight into any plotting tool.
"""

import sys

from awgnbound import bounds
from awgnbound.sweep import LN2, sweep, write_csv

# a handful of powers first, in bits
for p_db in (-10, -3, 0, 3, 6, 10, 20):
    bp = bounds.theorem_bound(10 ** (p_db / 10))
    prior, _ = bounds.prior_combined_bounds(bp.p)
    print(f"{p_db:>4} dB  prior {prior / LN2:.5f}  "
          f"refined {bp.combined_nats / LN2:.5f}  "
          f"shannon {bp.shannon_nats / LN2:.5f}  ({bp.regime.value})")

# the improvement is the W term, which is never positive
print("W at 0 dB:", bounds.w_term(1.0), "nats")

# the full table, -20 .. 20 dB
rows = sweep(-20, 20, 0.25)
out = sys.argv[1] if len(sys.argv) > 1 else "bounds_comparison.csv"
with open(out, "w", newline="") as fh:
    write_csv(rows, fh, units="bits")
print(f"wrote {len(rows)} rows to {out}")

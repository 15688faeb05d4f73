"""
How close is the refined bound at low SNR per bit?
==================================================

Sweeps the peak power, computes the capacity at every point and reports the
largest bound-to-capacity gap among the points below 2.5 dB. The energy per
information unit can be counted per bit or per nat; the two give quite
different answers (see the README).
"""

from awgnbound.sweep import gap_report, sweep

rows = sweep(-20, 8, 0.5, with_oracle=True, oracle_tol=1e-7)
for unit in ("bits", "nats"):
    for row in rows:
        row.ebn0_unit = unit
    for bound in ("thangaraj", "theorem"):
        rep = gap_report(2.5, rows=rows, ebn0_unit=unit, bound=bound)
        print(f"per {unit[:-1]}, {bound:>9}: max gap {rep.max_gap_bits:.5f} bits "
              f"at {rep.argmax_p_db:.2f} dB ({rep.n_included} points)")

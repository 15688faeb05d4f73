"""Peak-power sweeps: bound tables, oracle comparison and the low-SNR gap report."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .oracle import CapacityEstimate, capacity_nats, eb_n0_db

LN2 = math.log(2.0)

CSV_FIELDS = [
    "p_linear", "p_db", "ebn0_db", "shannon", "mckellips", "thangaraj",
    "theorem", "combined", "capacity", "gap", "flag",
]
NOT_CONVERGED = "oracle_not_converged"


def to_units(nats: float, units: str) -> float:
    if units == "nats":
        return nats
    if units == "bits":
        return nats / LN2
    raise ValueError(f"units must be 'nats' or 'bits', got {units!r}")


def db_grid(lo: float, hi: float, step: float) -> np.ndarray:
    if not lo < hi:
        raise ValueError("grid needs lo < hi")
    if not step > 0:
        raise ValueError("grid step must be > 0")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def axis_ebn0_db(p: float, rate_nats: float, ebn0_unit: str = "bits") -> float:
    """Eb/N0 for a rate given in nats, with energy counted per bit or per nat."""
    return eb_n0_db(p, to_units(rate_nats, ebn0_unit))


@dataclass
class SweepRow:
    point: bounds.BoundPoint
    p_db: float
    capacity: CapacityEstimate | None = None
    ebn0_unit: str = "bits"

    @property
    def ebn0_db(self) -> float:
        rate = self.point.combined_nats if self.capacity is None else self.capacity.value_nats
        return axis_ebn0_db(self.point.p, rate, self.ebn0_unit)

    @property
    def flagged(self) -> bool:
        return self.capacity is not None and not self.capacity.converged

    def as_record(self, units: str) -> dict:
        bp = self.point
        rec = {
            "p_linear": bp.p,
            "p_db": self.p_db,
            "ebn0_db": self.ebn0_db,
            "shannon": to_units(bp.shannon_nats, units),
            "mckellips": to_units(bp.mckellips_nats, units),
            "thangaraj": to_units(bp.thangaraj_nats, units),
            "theorem": to_units(bp.theorem_nats, units),
            "combined": to_units(bp.combined_nats, units),
            "capacity": None,
            "gap": None,
            "flag": NOT_CONVERGED if self.flagged else "",
        }
        if self.capacity is not None:
            cap = to_units(self.capacity.value_nats, units)
            rec["capacity"] = cap
            rec["gap"] = rec["combined"] - cap
        return rec


def sweep(p_db_min: float, p_db_max: float, p_db_step: float, with_oracle: bool = False,
          oracle_tol: float = 1e-7, ebn0_unit: str = "bits", progress=None) -> list[SweepRow]:
    rows = []
    for p_db in db_grid(p_db_min, p_db_max, p_db_step):
        p = 10.0 ** (p_db / 10.0)
        cap = capacity_nats(math.sqrt(p), tol=oracle_tol) if with_oracle else None
        rows.append(SweepRow(bounds.theorem_bound(p), float(p_db), cap, ebn0_unit))
        if progress is not None:
            progress(rows[-1])
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.12g}"


def write_csv(rows: list[SweepRow], fh, units: str = "nats") -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        rec = row.as_record(units)
        writer.writerow([_fmt(rec[k]) for k in CSV_FIELDS])


def read_csv(fh) -> list[dict]:
    out = []
    for rec in csv.DictReader(fh):
        out.append({k: (float(v) if v not in ("", None) and k != "flag" else v) for k, v in rec.items()})
    return out


@dataclass
class GapReport:
    ebn0_max_db: float
    ebn0_unit: str
    bound: str
    max_gap_bits: float
    argmax_p: float
    n_included: int
    all_converged: bool
    rows: list

    @property
    def argmax_p_db(self) -> float:
        return 10.0 * math.log10(self.argmax_p)


def gap_report(ebn0_max_db: float = 2.5, oracle_tol: float = 1e-7, p_db_min: float = -20.0,
               p_db_max: float = 8.0, p_db_step: float = 0.25, ebn0_unit: str = "bits",
               bound: str = "theorem", rows: list[SweepRow] | None = None) -> GapReport:
    """Largest gap (in bits) between a combined bound and the oracle capacity.

    Only grid points whose Eb/N0, computed from the oracle capacity, is at
    most ``ebn0_max_db`` count. ``bound`` picks the refined bound
    (``"theorem"``) or the regime-switched prior bound (``"thangaraj"``),
    each capped by the Shannon bound. Precomputed ``rows`` (with oracle
    results) can be passed to reuse one sweep for several reports.
    """
    if bound not in ("theorem", "thangaraj"):
        raise ValueError("bound must be 'theorem' or 'thangaraj'")
    if rows is None:
        rows = sweep(p_db_min, p_db_max, p_db_step, with_oracle=True, oracle_tol=oracle_tol,
                     ebn0_unit=ebn0_unit)
    included = []
    for row in rows:
        if row.capacity is None:
            raise ValueError("gap_report needs rows with oracle results")
        if axis_ebn0_db(row.point.p, row.capacity.value_nats, ebn0_unit) <= ebn0_max_db:
            included.append(row)
    if not included:
        raise ValueError("no grid point has Eb/N0 below the limit")
    best_gap, best_p = -math.inf, math.nan
    for row in included:
        bp = row.point
        if bound == "theorem":
            comb = bp.combined_nats
        else:
            comb = bounds.prior_combined_bounds(bp.p)[0]
        gap = (comb - row.capacity.value_nats) / LN2
        if gap > best_gap:
            best_gap, best_p = gap, bp.p
    return GapReport(
        ebn0_max_db=ebn0_max_db,
        ebn0_unit=ebn0_unit,
        bound=bound,
        max_gap_bits=best_gap,
        argmax_p=best_p,
        n_included=len(included),
        all_converged=all(r.capacity.converged for r in included),
        rows=included,
    )

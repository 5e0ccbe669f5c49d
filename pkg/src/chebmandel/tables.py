"""Recomputation of the k=2 sign-region tables and comparison with printed values.

Printed values were transcribed with decimal commas converted to points.
Each printed sign change is stored as the pair of endpoints that bracket it
(end of one printed interval, start of the next).
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .mandel import scan_regions
from .polyfam import FamilySpec

BOUNDARY_TOL = 0.01
XMIN_TOL = 0.005
QMIN_TOL = 0.0015


@dataclass(frozen=True)
class PrintedRow:
    a: float
    positive: Tuple[Tuple[float, float], ...]
    negative: Tuple[Tuple[float, float], ...]
    boundaries: Tuple[Tuple[float, float], ...]
    x_min: float
    q_min: float
    excluded: Tuple[float, ...] = ()
    flag: str = ""


def _pi3(a, neg_hi, pos_lo, x_min, q_min):
    return PrintedRow(a, ((pos_lo, 2.0),), ((0.0, neg_hi),), ((neg_hi, pos_lo),), x_min, q_min)


PI3 = (
    _pi3(1.5, 0.107, 0.108, 0.054, -0.0015),
    _pi3(2.0, 0.46, 0.47, 0.247, -0.0325),
    _pi3(2.5, 0.65, 0.66, 0.363, -0.0666),
    _pi3(3.0, 0.78, 0.79, 0.450, -0.0961),
    _pi3(4.0, 0.96, 0.97, 0.581, -0.1419),
    _pi3(5.0, 1.08, 1.09, 0.678, -0.1755),
    _pi3(6.0, 1.17, 1.18, 0.755, -0.2015),
    _pi3(7.0, 1.24, 1.25, 0.818, -0.2222),
    _pi3(8.0, 1.30, 1.31, 0.871, -0.2392),
    _pi3(9.0, 1.35, 1.36, 0.918, -0.2534),
    _pi3(10.0, 1.38, 1.39, 0.958, -0.2656),
    _pi3(20.0, 1.59, 1.60, 1.2005, -0.3331),
    _pi3(100.0, 1.85, 1.86, 1.5989, -0.4255),
)

PI1 = (
    PrintedRow(0.01, ((0.0, 0.020), (1.18, 2.0)), ((0.021, 1.17),),
               ((0.020, 0.021), (1.17, 1.18)), 0.168, -0.925),
    PrintedRow(0.1, ((0.0, 0.20), (1.15, 2.0)), ((0.21, 1.14),),
               ((0.20, 0.21), (1.14, 1.15)), 0.575, -0.563),
    PrintedRow(0.2, ((0.0, 0.43), (1.07, 2.0)), ((0.44, 1.106),),
               ((0.43, 0.44), (1.106, 1.07)), 0.742, -0.223, excluded=(1.106,),
               flag="printed negative interval ends at 1.106 but next positive interval starts at 1.07;"
                    " 1.106 excluded"),
    PrintedRow(0.25, ((0.0, 0.61), (0.97, 2.0)), ((0.62, 0.96),),
               ((0.61, 0.62), (0.96, 0.97)), 0.787, -0.066),
    PrintedRow(0.3, ((0.0, 2.0),), (), (), 0.812, 0.080),
)

TABLES = {"pi3": PI3, "pi1": PI1}


@dataclass
class TableRow:
    a: float
    region: str
    boundaries: List[float]
    positive: List[Tuple[float, float]]
    negative: List[Tuple[float, float]]
    x_min: Optional[float]
    q_min: Optional[float]


@dataclass
class RowCheck:
    table: str
    row: TableRow
    printed: PrintedRow
    boundary_ok: bool
    x_min_ok: bool
    q_min_ok: bool
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return self.boundary_ok and self.x_min_ok and self.q_min_ok


def compute_row(a, k=2, grid=10_000, root_tol=1e-10, min_tol=1e-8) -> TableRow:
    rep = scan_regions(FamilySpec(k, a), grid, root_tol, min_tol)
    if rep.minima:
        x_min, q_min = min(rep.minima, key=lambda m: m[1])
    else:
        x_min = q_min = None
    return TableRow(a, rep.region, rep.boundaries, rep.positive_intervals(),
                    rep.negative_intervals(), x_min, q_min)


def check_row(table, printed: PrintedRow, row: TableRow, tol_scale=1.0) -> RowCheck:
    notes = []
    btol = BOUNDARY_TOL * tol_scale
    boundary_ok = len(row.boundaries) == len(printed.boundaries)
    if not boundary_ok:
        notes.append(f"expected {len(printed.boundaries)} sign changes, found {len(row.boundaries)}")
    else:
        for b, pair in zip(row.boundaries, printed.boundaries):
            for p in pair:
                if p in printed.excluded:
                    continue
                if abs(b - p) > btol:
                    boundary_ok = False
                    notes.append(f"boundary {b:.6g} vs printed {p}")
    if len(row.negative) != len(printed.negative):
        boundary_ok = False
        notes.append("negative-interval count differs")
    if row.x_min is None:
        x_min_ok = q_min_ok = False
        notes.append("no interior minimum found")
    else:
        x_min_ok = abs(row.x_min - printed.x_min) <= XMIN_TOL * tol_scale
        q_min_ok = abs(row.q_min - printed.q_min) <= QMIN_TOL * tol_scale
    if printed.flag:
        notes.append(printed.flag)
    return RowCheck(table, row, printed, boundary_ok, x_min_ok, q_min_ok, notes)


def check_table(name, tol_scale=1.0, grid=10_000) -> List[RowCheck]:
    return [check_row(name, p, compute_row(p.a, grid=grid), tol_scale) for p in TABLES[name]]

"""Tomogram CSV files and measured-data validation.

A tomogram file holds rows ``theta,X,w`` (optionally preceded by ``#``
comment lines).  Rows sharing a theta value form one sampled tomogram;
its X values must be uniformly spaced.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .inequalities import GRID_TOL, optical_renyi_report, optical_shannon_report
from .states import ModeGrid
from .tomography import OpticalTomogramTable, SampledDensity

SCHEMA_VERSION = 1
ANGLE_TOL = 1e-6
SPACING_TOL = 1e-9
DEFAULT_NORM_TOL = 1e-2
DEFAULT_Q_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


class DatasetError(InvalidInputError):
    pass


def fmt(x) -> str:
    """Fixed 17-significant-digit float formatting used in every output file."""
    return format(float(x), ".17g")


def read_rows(path, columns):
    """Numeric columns of a CSV file whose header names ``columns``."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(lines)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DatasetError(f"{path}: empty file") from None
    missing = [c for c in columns if c not in header]
    if missing:
        raise DatasetError(f"{path}: missing columns {missing} (header {header})")
    idx = [header.index(c) for c in columns]
    rows = []
    for lineno, row in enumerate(reader, start=2):
        try:
            rows.append([float(row[i]) for i in idx])
        except (ValueError, IndexError):
            raise DatasetError(f"{path}: bad row {lineno}: {row}") from None
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    arr = np.array(rows)
    if not np.all(np.isfinite(arr)):
        raise DatasetError(f"{path}: non-finite values")
    return arr


def uniform_grid(x, what="X") -> ModeGrid:
    x = np.sort(np.asarray(x, dtype=np.float64))
    if x.size < 16:
        raise DatasetError(f"{what} grid needs at least 16 points, got {x.size}")
    d = np.diff(x)
    step = (x[-1] - x[0]) / (x.size - 1)
    if step <= 0 or np.max(np.abs(d - step)) > SPACING_TOL * step:
        raise DatasetError(f"{what} values are not uniformly spaced")
    return ModeGrid(x[0], x[-1], x.size)


@dataclass
class MeasuredTomogram:
    theta: float
    grid: ModeGrid
    raw: np.ndarray
    density: SampledDensity
    norm: float


@dataclass
class MeasuredTomogramDataset:
    tomograms: list = field(default_factory=list)

    @classmethod
    def from_records(cls, records, tol=DEFAULT_NORM_TOL) -> "MeasuredTomogramDataset":
        """Group (theta, X, w) records by theta and validate each group."""
        records = np.asarray(records, dtype=np.float64)
        if records.ndim != 2 or records.shape[1] != 3:
            raise DatasetError("records must be (theta, X, w) triples")
        if not tol > 0:
            raise DatasetError("tolerance must be > 0")
        out = []
        for theta in np.unique(records[:, 0]):
            rows = records[records[:, 0] == theta]
            rows = rows[np.argsort(rows[:, 1], kind="stable")]
            grid = uniform_grid(rows[:, 1], f"X (theta={theta})")
            w = rows[:, 2]
            if w.min() < -tol:
                raise DatasetError(
                    f"negative tomogram value {w.min():.3g} at theta={theta} "
                    "(tomograms must be nonnegative)")
            w = np.clip(w, 0.0, None)
            norm = grid.integrate(w)
            if abs(norm - 1.0) > tol:
                raise DatasetError(
                    f"normalization: tomogram at theta={theta} integrates to "
                    f"{norm:.6g}, outside 1 +/- {tol:g}")
            out.append(MeasuredTomogram(float(theta), grid, rows[:, 2].copy(),
                                        SampledDensity([grid], w / norm), norm))
        return cls(out)

    @classmethod
    def read_csv(cls, path, tol=DEFAULT_NORM_TOL) -> "MeasuredTomogramDataset":
        return cls.from_records(read_rows(path, ["theta", "X", "w"]), tol)

    @property
    def thetas(self):
        return [t.theta for t in self.tomograms]

    def find(self, theta):
        for t in self.tomograms:
            d = math.remainder(t.theta - theta, 2.0 * math.pi)
            if abs(d) <= ANGLE_TOL:
                return t
        return None

    def quarter_pairs(self):
        """All (theta, theta + pi/2) pairs present in the dataset."""
        pairs = []
        for t in self.tomograms:
            partner = self.find(t.theta + 0.5 * math.pi)
            if partner is not None:
                pairs.append((t.theta, partner.theta))
        return pairs

    def to_table(self) -> OpticalTomogramTable:
        """Dense angle table for reconstruction (angles folded into [0, pi))."""
        grid = self.tomograms[0].grid
        if any(t.grid != grid for t in self.tomograms):
            raise DatasetError("reconstruction needs one common X grid for all angles")
        if not grid.is_symmetric:
            raise DatasetError("reconstruction needs an X grid symmetric about 0")
        folded = {}
        for t in self.tomograms:
            th = t.theta % (2.0 * math.pi)
            w = t.density.weights
            if th >= math.pi:
                th, w = th - math.pi, w[::-1]
            folded.setdefault(round(th, 9), (th, w))
        keys = sorted(folded)
        return OpticalTomogramTable(grid, [folded[k][0] for k in keys],
                                    np.array([folded[k][1] for k in keys]))


def validate_measured_tomogram(dataset: MeasuredTomogramDataset, pairing=None,
                               q_grid=DEFAULT_Q_GRID, tolerance=GRID_TOL):
    """Run the optical Shannon and Renyi relations on measured tomograms.

    Returns ``(reports, exit_code)`` with exit code 0 when every relation
    holds within ``tolerance`` and 1 otherwise.  Input problems raise
    :class:`DatasetError`.
    """
    if pairing is None:
        pairing = dataset.quarter_pairs()
        if not pairing:
            raise DatasetError("no (theta, theta + pi/2) pairs in the dataset")
    reports = []
    for a, b in pairing:
        if abs(math.remainder(b - a - 0.5 * math.pi, 2.0 * math.pi)) > ANGLE_TOL:
            raise DatasetError(f"pair ({a}, {b}) is not separated by pi/2")
        ta, tb = dataset.find(a), dataset.find(b)
        if ta is None or tb is None:
            raise DatasetError(f"missing partner angle for pair ({a}, {b})")
        extra = {"norm_theta": ta.norm, "norm_theta_perp": tb.norm}
        reports.append(optical_shannon_report(ta.density, tb.density, ta.theta, tolerance, extra))
        for q in q_grid:
            reports.append(optical_renyi_report(ta.density, tb.density, ta.theta, q, tolerance, extra))
    code = 0 if all(r.satisfied for r in reports) else 1
    return reports, code


def write_tomogram_csv(path, blocks, header=("theta", "X", "w")):
    """Write ``blocks`` of (label values, X array, w array) as CSV rows."""
    lines = [f"# schema_version={SCHEMA_VERSION}", ",".join(header)]
    for labels, xs, ws in blocks:
        prefix = "".join(fmt(v) + "," for v in labels)
        lines.extend(prefix + ",".join(fmt(c) for c in x) + "," + fmt(w)
                     for x, w in zip(xs, ws))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")

"""Deterministic CSV export/import for trajectories and analysis reports.

Numbers are written with 17 significant digits so a written double parses
back bit-exactly; files are written atomically (temp file plus rename).
"""

from __future__ import annotations

import csv
import io
import os
import tempfile

import numpy as np

from .analysis import GeneratorSpectrum, QslReport, SweepRow
from .evolution import Trajectory


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trajectory_header(traj: Trajectory) -> list[str]:
    n = traj.dim
    header = ["t"]
    header += [f"diag_{k}" for k in range(n)]
    for r, s in traj.offdiag_pairs:
        header += [f"re_{r}_{s}", f"im_{r}_{s}"]
    header.append("entropy")
    header += [f"eig_{k}" for k in range(n)]
    header.append("trace_dist_to_target")
    return header


def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(trajectory_header(traj))
    n = traj.dim
    for k in range(traj.times.size):
        row = [_fmt(traj.times[k])]
        row += [_fmt(traj.diagonals[k, c]) for c in range(n)]
        for c in range(len(traj.offdiag_pairs)):
            row += [_fmt(traj.offdiag_re[k, c]), _fmt(traj.offdiag_im[k, c])]
        row.append(_fmt(traj.entropy[k]))
        row += [_fmt(traj.eigenvalues[k, c]) for c in range(n)]
        row.append(_fmt(traj.trace_dist[k]))
        writer.writerow(row)
    atomic_write_text(path, buf.getvalue())


def read_csv_columns(path: str) -> dict[str, np.ndarray]:
    """Read any CSV written by this module back into named float columns."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in row] for row in reader]
    data = np.asarray(rows, dtype=float) if rows else np.zeros((0, len(header)))
    return {name: data[:, k].copy() for k, name in enumerate(header)}


def write_sweep_csv(path: str, rows: list[SweepRow]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["gamma", "alignment_time", "gamma_times_tau"])
    for row in rows:
        writer.writerow([_fmt(row.gamma), _fmt(row.alignment_time), _fmt(row.gamma_times_tau)])
    atomic_write_text(path, buf.getvalue())


def write_qsl_csv(path: str, report: QslReport) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["numerator", "denominator", "bound", "measured_tau", "ratio"])
    measured = report.measured_alignment_time
    writer.writerow(
        [
            _fmt(report.numerator),
            _fmt(report.denominator),
            _fmt(report.bound),
            _fmt(measured) if measured is not None else "",
            _fmt(report.ratio) if report.ratio is not None else "",
        ]
    )
    atomic_write_text(path, buf.getvalue())


def write_spectrum_csv(path: str, spectrum: GeneratorSpectrum) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "eigenvalue_re", "eigenvalue_im", "stationary_component"])
    stationary = spectrum.stationary_distribution
    for k in range(spectrum.eigenvalues.size):
        writer.writerow(
            [
                str(k),
                _fmt(spectrum.eigenvalues[k].real),
                _fmt(spectrum.eigenvalues[k].imag),
                _fmt(stationary[k]),
            ]
        )
    atomic_write_text(path, buf.getvalue())

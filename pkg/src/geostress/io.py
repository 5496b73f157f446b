"""Plain-CSV I/O for distance matrices and point clouds.

Values are written with Python's shortest round-trip float repr, so a
written file reloads bit-identically.
"""

import numpy as np

from .model import DistanceMatrix, PointCloud, ValidationError


def _write_array(path, a):
    with open(path, "w") as fh:
        for row in np.atleast_2d(a):
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")


def _read_array(path):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(v) for v in line.split(",")])
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise ValidationError(f"{path}: empty file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValidationError(f"{path}: ragged rows")
    return np.array(rows)


def write_distance_matrix(path, D):
    _write_array(path, D.d)


def read_distance_matrix(path):
    return DistanceMatrix(_read_array(path))


def write_point_cloud(path, X):
    _write_array(path, X.x)


def read_point_cloud(path):
    return PointCloud(_read_array(path))


def write_sweep_csv(path, report):
    with open(path, "w") as fh:
        fh.write("theta,a,method,init_cost,final_cost,converged,failed,failure,wall_time\n")
        for c in report.rows:
            fh.write(
                f"{c.theta!r},{c.a!r},{c.method},{c.init_cost!r},{c.final_cost!r},"
                f"{int(c.converged)},{int(c.failed)},{c.failure},{c.wall_time:.3f}\n"
            )


def sweep_table(report):
    """Aligned human-readable sweep table."""
    header = f"{'theta':>8} {'a':>6} {'method':>6} {'init_cost':>12} {'final_cost':>12} {'status':>10}"
    lines = [header, "-" * len(header)]
    for c in report.rows:
        if c.failed:
            status, init_s, final_s = "FAILED", "-", "-"
        else:
            status = "ok" if c.converged else "maxiter"
            init_s = f"{c.init_cost:.4g}"
            final_s = f"{c.final_cost:.4g}"
        lines.append(
            f"{c.theta:>8g} {c.a:>6g} {c.method:>6} {init_s:>12} {final_s:>12} {status:>10}"
        )
    return "\n".join(lines)


def write_svg_scatter(path, X, size=800, radius=3, margin_frac=0.05):
    """Bare scatter of a 2-d cloud: fixed square viewport, autoscaled
    with a uniform scale so shapes are not distorted, no axes."""
    if X.k != 2:
        raise ValidationError("SVG scatter needs a 2-d cloud")
    x = X.x
    lo = x.min(axis=0)
    hi = x.max(axis=0)
    span = float(max((hi - lo).max(), 1e-12))
    pad = margin_frac * span
    scale = (size - 2 * radius) / (span + 2 * pad)
    mid = 0.5 * (lo + hi)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for px, py in x:
        cx = size / 2 + (px - mid[0]) * scale
        cy = size / 2 - (py - mid[1]) * scale
        parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius}" fill="black"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")

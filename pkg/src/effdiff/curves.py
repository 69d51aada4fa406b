"""d/e ratio over a grid of second-group variances and first-group sizes."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .effect_sizes import pooled_pivot, welch_pivot
from .errors import DomainError
from .special import correction_j


@dataclass(frozen=True)
class CurveGridSpec:
    """Defaults: n2 = 10, s1^2 = 10, n1 in 14..6 and s2^2 = 0, 0.01, ..., 49.99."""

    mean1: float = 1.0
    mean2: float = 0.0
    n2: int = 10
    s1_sq: float = 10.0
    s2_sq_range: tuple[float, float, float] = (0.0, 50.0, 0.01)
    n1_values: tuple[int, ...] = (14, 12, 10, 8, 6)
    s2_sq_values: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        if self.s2_sq_range[2] <= 0:
            raise DomainError("s2_sq step must be > 0")
        if self.n2 < 2 or any(n < 2 for n in self.n1_values):
            raise DomainError("all group sizes must be >= 2")

    def s2_grid(self) -> np.ndarray:
        if self.s2_sq_values is not None:
            return np.asarray(self.s2_sq_values, dtype=float)
        start, stop, step = self.s2_sq_range
        count = int(np.floor((stop - start) / step + 1e-9))
        return start + step * np.arange(count)


def ratio_curve(grid: CurveGridSpec) -> dict[str, np.ndarray]:
    """Columns s2_sq, n1, d, e, d_over_e with one row per (n1, s2_sq) pair."""
    s2 = grid.s2_grid()
    cols = {"s2_sq": [], "n1": [], "d": [], "e": [], "d_over_e": []}
    for n1 in grid.n1_values:
        g, _, m, _ = pooled_pivot(grid.mean1, grid.s1_sq, n1, grid.mean2, s2, grid.n2)
        eb, _, f, _ = welch_pivot(grid.mean1, grid.s1_sq, n1, grid.mean2, s2, grid.n2)
        d = g * correction_j(m)
        e = eb * np.asarray(correction_j(f))
        cols["s2_sq"].append(s2)
        cols["n1"].append(np.full(s2.shape, float(n1)))
        cols["d"].append(d)
        cols["e"].append(e)
        cols["d_over_e"].append(d / e)
    return {k: np.concatenate(v) for k, v in cols.items()}


def write_svg(path: str | Path, curve: dict[str, np.ndarray], width: int = 640, height: int = 400) -> None:
    """One polyline per n1, d/e against s2^2. Axes are scaled to the data."""
    x_all, y_all = curve["s2_sq"], curve["d_over_e"]
    x0, x1 = float(x_all.min()), float(x_all.max())
    y0, y1 = float(y_all.min()), float(y_all.max())
    pad = 40
    sx = (width - 2 * pad) / ((x1 - x0) or 1.0)
    sy = (height - 2 * pad) / ((y1 - y0) or 1.0)
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    for n1 in np.unique(curve["n1"]):
        sel = curve["n1"] == n1
        pts = " ".join(
            f"{pad + (x - x0) * sx:.2f},{height - pad - (y - y0) * sy:.2f}"
            for x, y in zip(x_all[sel], y_all[sel])
        )
        lines.append(f'<polyline fill="none" stroke="black" points="{pts}"><title>n1={int(n1)}</title></polyline>')
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

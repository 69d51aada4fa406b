"""Bundled Iris data and the d-versus-e comparison table."""

from __future__ import annotations

import csv
from importlib import resources
from itertools import combinations

import numpy as np

from .effect_sizes import effect_e, hedges_d, sample_summary

CHARACTERISTICS = ("sepal_length", "sepal_width", "petal_length", "petal_width")
SPECIES = ("setosa", "versicolor", "virginica")


def load_iris() -> dict[str, dict[str, np.ndarray]]:
    """{species: {characteristic: values}} from the packaged CSV."""
    text = resources.files("effdiff").joinpath("data/iris.csv").read_text(encoding="utf-8")
    rows = list(csv.DictReader(text.splitlines()))
    out = {}
    for sp in SPECIES:
        sel = [r for r in rows if r["species"] == sp]
        out[sp] = {c: np.array([float(r[c]) for r in sel]) for c in CHARACTERISTICS}
    return out


def iris_table() -> list[dict]:
    """d, e, d/e and SD ratio for each characteristic and unordered species pair."""
    data = load_iris()
    rows = []
    for char in CHARACTERISTICS:
        for s1, s2 in combinations(SPECIES, 2):
            a = sample_summary(data[s1][char])
            b = sample_summary(data[s2][char])
            d = hedges_d(a, b).estimate
            e = effect_e(a, b).estimate
            rows.append(
                {
                    "characteristic": char,
                    "pair": f"{s1} vs {s2}",
                    "d": d,
                    "e": e,
                    "d_over_e": d / e,
                    "sd_ratio": a.sd / b.sd,
                }
            )
    return rows

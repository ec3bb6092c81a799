"""Synthetic tabular generators for the bundled benchmark datasets.

Each generator is a pure function of its seed and emits stringified CSV cells,
so the committed data files can be regenerated byte-for-byte.  The mix covers
binary and multiclass targets, numeric and categorical features, missing
cells, and both linearly-friendly and strictly nonlinear decision boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SynthTable:
    name: str
    header: list
    rows: list
    kinds: dict
    target: str
    note: str


def _fmt(v: float) -> str:
    return format(float(v), ".6f")


def _assemble(name, numeric_cols, cat_cols, labels, rng, note) -> SynthTable:
    """Interleave numeric then categorical columns, shuffle rows, stringify."""
    n = len(labels)
    header = list(numeric_cols) + list(cat_cols) + ["label"]
    kinds = {c: "numeric" for c in numeric_cols}
    kinds.update({c: "categorical" for c in cat_cols})
    perm = rng.permutation(n)
    rows = []
    for i in perm:
        row = [_fmt(numeric_cols[c][i]) for c in numeric_cols]
        row += [cat_cols[c][i] for c in cat_cols]
        row.append(labels[i])
        rows.append(row)
    return SynthTable(name, header, rows, kinds, "label", note)


def _blank_out(column: list, frac: float, rng) -> None:
    k = max(1, int(round(frac * len(column))))
    for i in rng.choice(len(column), size=k, replace=False):
        column[int(i)] = ""


def moons(n: int = 400, noise: float = 0.2, seed: int = 101) -> SynthTable:
    """Two interleaved half-moons with isotropic Gaussian noise."""
    rng = np.random.default_rng(seed)
    n0 = n // 2
    n1 = n - n0
    t0 = np.linspace(0.0, np.pi, n0)
    t1 = np.linspace(0.0, np.pi, n1)
    x = np.concatenate([np.cos(t0), 1.0 - np.cos(t1)])
    y = np.concatenate([np.sin(t0), 1.0 - np.sin(t1) - 0.5])
    x += rng.normal(0.0, noise, n)
    y += rng.normal(0.0, noise, n)
    labels = ["upper"] * n0 + ["lower"] * n1
    return _assemble(
        "moons", {"x": x, "y": y}, {}, labels, rng,
        "two interleaved half-moons, gaussian noise; nonlinear binary task",
    )


def rings(n: int = 360, seed: int = 102) -> SynthTable:
    """Concentric annuli: class decided by radius, hopeless for linear models."""
    rng = np.random.default_rng(seed)
    n0 = n // 2
    r = np.concatenate([
        rng.uniform(0.0, 1.0, n0),
        rng.uniform(1.15, 2.0, n - n0),
    ])
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    x = r * np.cos(theta) + rng.normal(0.0, 0.12, n)
    y = r * np.sin(theta) + rng.normal(0.0, 0.12, n)
    labels = ["inner"] * n0 + ["outer"] * (n - n0)
    return _assemble(
        "rings", {"x": x, "y": y}, {}, labels, rng,
        "concentric annuli; radius carries the class, no linear separator",
    )


def checker(n: int = 360, seed: int = 103) -> SynthTable:
    """2x2 checkerboard (continuous XOR) plus one irrelevant feature."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-2.0, 2.0, n)
    y = rng.uniform(-2.0, 2.0, n)
    z = rng.normal(0.0, 1.0, n)
    quad = (x > 0.0) ^ (y > 0.0)
    labels = ["dark" if q else "light" for q in quad]
    return _assemble(
        "checker", {"x": x, "y": y, "z": z}, {}, labels, rng,
        "XOR quadrants with an irrelevant numeric column",
    )


def gauss3(n: int = 300, seed: int = 104) -> SynthTable:
    """Three Gaussian blobs in four dimensions, mild overlap."""
    rng = np.random.default_rng(seed)
    centers = np.array([
        [0.0, 0.0, 0.0, 0.0],
        [3.0, 3.0, 0.0, -1.0],
        [-3.0, 3.0, 1.0, 1.0],
    ])
    per = n // 3
    counts = [per, per, n - 2 * per]
    X = np.vstack([
        rng.normal(0.0, 1.15, (c, 4)) + centers[i]
        for i, c in enumerate(counts)
    ])
    labels = sum([[f"blob{i}"] * c for i, c in enumerate(counts)], [])
    cols = {f"f{j}": X[:, j] for j in range(4)}
    return _assemble(
        "gauss3", cols, {}, labels, rng,
        "three gaussian blobs; nearly linearly separable multiclass",
    )


def bands(n: int = 350, seed: int = 105) -> SynthTable:
    """Ordered classes cut from a noisy linear score over five features."""
    rng = np.random.default_rng(seed)
    X = rng.normal(0.0, 1.0, (n, 5))
    w = np.array([1.0, 0.8, 0.6, 0.4, 0.2])
    score = X @ w + rng.normal(0.0, 0.35, n)
    sd = float(np.std(score))
    labels = np.where(
        score < -0.55 * sd, "low", np.where(score > 0.55 * sd, "high", "mid")
    ).tolist()
    cols = {f"f{j}": X[:, j] for j in range(5)}
    return _assemble(
        "bands", cols, {}, labels, rng,
        "terciles of a noisy linear score; a linear model's home turf",
    )


def xor_cat(n: int = 320, seed: int = 106) -> SynthTable:
    """Categorical XOR with label noise, plus blanks in both column kinds."""
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, n)
    b = rng.integers(0, 2, n)
    target = (a ^ b).astype(bool)
    flip = rng.random(n) < 0.06
    target ^= flip
    num = rng.normal(0.0, 1.0, n) + 0.4 * target
    cat1 = np.where(a == 1, "red", "blue").tolist()
    cat2 = np.where(b == 1, "left", "right").tolist()
    size = [["small", "medium", "large"][int(i)] for i in rng.integers(0, 3, n)]
    _blank_out(size, 0.05, rng)
    labels = ["odd" if t else "even" for t in target]

    table = _assemble(
        "xor_cat", {"w": num}, {"tone": cat1, "side": cat2, "size": size},
        labels, rng,
        "XOR of two categorical features with label noise; blanks in a "
        "numeric and a categorical column",
    )
    w_col = table.header.index("w")
    blank_rows = rng.choice(n, size=max(1, int(round(0.05 * n))), replace=False)
    for i in blank_rows:
        table.rows[int(i)][w_col] = ""
    return table


def colors_cat(n: int = 300, seed: int = 107) -> SynthTable:
    """Categorical-only multiclass task, mostly decided by one feature."""
    rng = np.random.default_rng(seed)
    hue = [["crimson", "jade", "cobalt"][int(i)] for i in rng.integers(0, 3, n)]
    finish = np.where(rng.integers(0, 2, n) == 1, "matte", "gloss").tolist()
    grain = [["fine", "coarse"][int(i)] for i in rng.integers(0, 2, n)]
    base = {"crimson": 0, "jade": 1, "cobalt": 2}
    y = np.array([base[h] for h in hue])
    # finish nudges the class for a slice of rows, noise flips another slice
    nudge = (np.asarray(finish) == "matte") & (rng.random(n) < 0.25)
    y = np.where(nudge, (y + 1) % 3, y)
    noise = rng.random(n) < 0.08
    y = np.where(noise, rng.integers(0, 3, n), y)
    labels = [f"grade{int(c)}" for c in y]
    return _assemble(
        "colors_cat", {}, {"hue": hue, "finish": finish, "grain": grain},
        labels, rng,
        "three categorical features, multiclass target with interaction",
    )


GENERATORS = [moons, rings, checker, gauss3, bands, xor_cat, colors_cat]

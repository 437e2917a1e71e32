#!/usr/bin/env python3
"""Regenerate data/sample_corpus.txt and its manifest.

ColorBrewer ramps come from the tables shipped with matplotlib (Apache-2.0
licensed ColorBrewer colors). The rest are synthetic designer-like ramps
drawn from a fixed RNG seed, so the output is reproducible.
"""
import argparse
import collections
import json
import math
import pathlib

import numpy as np
from matplotlib import _cm

SEQUENTIAL_CB = ["Blues", "BuGn", "BuPu", "GnBu", "Greens", "Greys", "Oranges", "OrRd", "PuBu",
                 "PuBuGn", "PuRd", "Purples", "RdPu", "Reds", "YlGn", "YlGnBu", "YlOrBr", "YlOrRd"]
DIVERGING_CB = ["BrBG", "PiYG", "PRGn", "PuOr", "RdBu", "RdYlBu"]

WHITE = np.array([0.95047, 1.0, 1.08883])
M_INV = np.array([[3.2404542, -1.5371385, -0.4985314],
                  [-0.9692660, 1.8760108, 0.0415560],
                  [0.0556434, -0.2040259, 1.0572252]])


def lab_to_linear(lab):
    L, a, b = lab
    fy = (L + 16) / 116
    fx, fz = fy + a / 500, fy - b / 200
    eps, kappa = 216 / 24389, 24389 / 27
    f = lambda t: t ** 3 if t ** 3 > eps else (116 * t - 16) / kappa
    xr = f(fx)
    yr = ((L + 16) / 116) ** 3 if L > kappa * eps else L / kappa
    zr = f(fz)
    return M_INV @ (np.array([xr, yr, zr]) * WHITE)


def to_hex(lab):
    lin = lab_to_linear(lab)
    if np.any(lin < -1e-9) or np.any(lin > 1 + 1e-9):
        return None
    lin = np.clip(lin, 0, 1)
    srgb = np.where(lin <= 0.0031308, 12.92 * lin, 1.055 * lin ** (1 / 2.4) - 0.055)
    return "#" + "".join(f"{int(round(v * 255)):02X}" for v in srgb)


def fit_hex(L, a, b):
    """Hex of (L, a, b), pulling chroma in until the color is in gamut."""
    for s in np.linspace(1, 0, 201):
        h = to_hex((L, a * s, b * s))
        if h is not None:
            return h
    raise ValueError(f"L={L} has no gamut")


def rgb_hex(rgb):
    return "#" + "".join(f"{int(round(v * 255)):02X}" for v in rgb)


def arm(rng, n, l0, l1, hue0, hue_turn, cmax, bend):
    out = []
    for t in np.linspace(0, 1, n):
        L = l0 + (l1 - l0) * t ** bend
        c = cmax * math.sin(math.pi * (0.15 + 0.8 * (1 - t))) ** 0.8
        h = math.radians(hue0 + hue_turn * t)
        out.append((L, c * math.cos(h), c * math.sin(h)))
    return out


def synthetic_sequential(rng):
    n = int(rng.integers(5, 14))
    pts = arm(rng, n, rng.uniform(12, 38), rng.uniform(86, 97), rng.uniform(0, 360), rng.uniform(-70, 70),
              rng.uniform(25, 70), rng.uniform(0.8, 1.3))
    return [fit_hex(*p) for p in pts]


def synthetic_diverging(rng):
    half = int(rng.integers(3, 7))
    hue = rng.uniform(0, 360)
    sep = rng.uniform(100, 135)
    cmax = rng.uniform(35, 60)
    center_l = rng.uniform(88, 96)
    left = arm(rng, half + 1, rng.uniform(20, 40), center_l, hue, rng.uniform(-20, 20), cmax, 1.0)
    right = arm(rng, half + 1, rng.uniform(20, 40), center_l, hue + sep, rng.uniform(-20, 20), cmax, 1.0)
    pts = left[:-1] + [(center_l, 0.0, 0.0)] + list(reversed(right[:-1]))
    return [fit_hex(*p) for p in pts]


def build(seed):
    rng = np.random.default_rng(seed)
    rows = []
    for name in SEQUENTIAL_CB:
        colors = [rgb_hex(c) for c in getattr(_cm, f"_{name}_data")]
        rows.append((f"cb-{name.lower()}-9", "colorbrewer", "sequential", colors))
    for name in SEQUENTIAL_CB[:4]:
        colors = [rgb_hex(c) for c in getattr(_cm, f"_{name}_data")]
        rows.append((f"cb-{name.lower()}-5", "colorbrewer", "sequential", colors[::2]))
    for name in DIVERGING_CB:
        colors = [rgb_hex(c) for c in getattr(_cm, f"_{name}_data")]
        rows.append((f"cb-{name.lower()}-11", "colorbrewer", "diverging", colors))
    for source, nseq, ndiv in (("r", 6, 0), ("tableau", 6, 2), ("colourlovers", 8, 2), ("other", 4, 0)):
        for i in range(nseq):
            rows.append((f"syn-{source}-s{i}", source, "sequential", synthetic_sequential(rng)))
        for i in range(ndiv):
            rows.append((f"syn-{source}-d{i}", source, "diverging", synthetic_diverging(rng)))
    return rows


def manifest(rows):
    lengths = collections.Counter(len(r[3]) for r in rows)
    return {
        "total": len(rows),
        "sequential": sum(r[2] == "sequential" for r in rows),
        "diverging": sum(r[2] == "diverging" for r in rows),
        "by_source": {s: sum(r[1] == s for r in rows) for s in ("colorbrewer", "r", "tableau", "colourlovers", "other")},
        "min_length": min(lengths),
        "max_length": max(lengths),
        "length_histogram": {str(k): lengths[k] for k in sorted(lengths)},
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/sample_corpus.txt")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rows = build(args.seed)
    out = pathlib.Path(args.out)
    lines = ["# Bundled sample corpus. Regenerate with tools/make_sample_corpus.py.",
             "# id,source,kind,colors"]
    lines += [f"{i},{s},{k},{';'.join(c)}" for i, s, k, c in rows]
    out.write_text("\n".join(lines) + "\n")
    out.with_suffix(".manifest.json").write_text(json.dumps(manifest(rows), indent=2) + "\n")


if __name__ == "__main__":
    main()

"""Deterministic grid-function corpora for the verification suites.

A corpus spec (seed, grid geometry, family list) fully determines the
generated functions: generation order is the listed order, randomness comes
from one seeded generator, and smoothing is iterated box averaging so the
bytes are reproducible across platforms.  Every function keeps its support at
least two cells inside the domain boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .measure import GridFunction
from .isoperimetry import disk_mask, indicator_mollify

__all__ = ["CorpusSpec", "generate_corpus", "cone_grid", "tent_grid"]

KNOWN_FAMILIES = ("cone", "tensor_bump", "mollified_disk", "smoothed_noise", "multi_bump")


@dataclass(frozen=True)
class CorpusSpec:
    """Deterministic description of a grid-function corpus."""

    seed: int = 0
    dim: int = 2
    extents: int = 256
    side: float = 1.0  # physical side length; spacing = side / extents
    families: tuple = (
        {"kind": "cone"},
        {"kind": "tensor_bump", "count": 2},
        {"kind": "mollified_disk", "eps_ladder": (0.2, 0.1, 0.05)},
        {"kind": "smoothed_noise", "count": 2, "radius": 4},
        {"kind": "multi_bump", "count": 2, "bumps": 3},
    )

    @property
    def spacing(self) -> float:
        return self.side / self.extents

    def to_json(self, path=None):
        doc = {
            "seed": self.seed,
            "dim": self.dim,
            "extents": self.extents,
            "side": self.side,
            "families": [dict(f) for f in self.families],
        }
        if path is None:
            return doc
        Path(path).write_text(json.dumps(doc, indent=2), encoding="utf-8")
        return None

    @classmethod
    def from_json(cls, source) -> "CorpusSpec":
        doc = source if isinstance(source, dict) else json.loads(
            Path(source).read_text(encoding="utf-8")
        )
        families = []
        for fam in doc.get("families", []):
            fam = dict(fam)
            if fam.get("kind") not in KNOWN_FAMILIES:
                raise ValueError(f"unknown corpus family {fam.get('kind')!r}")
            if "eps_ladder" in fam:
                fam["eps_ladder"] = tuple(fam["eps_ladder"])
            families.append(fam)
        return cls(
            seed=int(doc.get("seed", 0)),
            dim=int(doc.get("dim", 2)),
            extents=int(doc.get("extents", 256)),
            side=float(doc.get("side", 1.0)),
            families=tuple(families) if families else cls.families,
        )


def _cell_axes(extents: tuple[int, ...], spacing: float):
    return [(np.arange(n) + 0.5) * spacing for n in extents]


def _radial_distance(extents, spacing, center):
    grids = np.meshgrid(*_cell_axes(extents, spacing), indexing="ij")
    return np.sqrt(sum((g - c) ** 2 for g, c in zip(grids, center)))


def _zero_margin(values: np.ndarray, cells: int = 2) -> np.ndarray:
    for ax in range(values.ndim):
        sl = [slice(None)] * values.ndim
        sl[ax] = slice(0, cells)
        values[tuple(sl)] = 0.0
        sl[ax] = slice(-cells, None)
        values[tuple(sl)] = 0.0
    return values


def cone_grid(
    extents: int = 512,
    dim: int = 2,
    side: float = 2.2,
    radius: float = 1.0,
    height: float = 1.0,
    center: tuple | None = None,
) -> GridFunction:
    """Radial cone height*(1 - |x-c|/radius)_+ sampled at cell centers."""
    shape = (extents,) * dim
    spacing = side / extents
    if center is None:
        center = (side / 2.0,) * dim
    if radius + max(abs(c - side / 2.0) for c in center) > side / 2.0 - 2.5 * spacing:
        raise ValueError("cone support must keep a two-cell margin")
    dist = _radial_distance(shape, spacing, center)
    values = height * np.clip(1.0 - dist / radius, 0.0, None)
    return GridFunction(spacing, values)


def tent_grid(extents: int = 4096, side: float = 1.0) -> GridFunction:
    """1-d tent min(x, side - x) with a two-cell zero collar."""
    spacing = side / extents
    x = (np.arange(extents) + 0.5) * spacing
    values = np.minimum(x, side - x)
    values = np.clip(values - 2.5 * spacing, 0.0, None)  # zero collar at the ends
    return GridFunction(spacing, values)


def _box_average_axis(arr: np.ndarray, axis: int, radius: int) -> np.ndarray:
    window = 2 * radius + 1
    pad = [(0, 0)] * arr.ndim
    pad[axis] = (radius, radius)
    padded = np.pad(arr, pad)
    csum = np.cumsum(padded, axis=axis, dtype=float)
    zshape = list(csum.shape)
    zshape[axis] = 1
    csum = np.concatenate([np.zeros(zshape), csum], axis=axis)
    n = arr.shape[axis]
    hi = csum.take(range(window, window + n), axis=axis)
    lo = csum.take(range(0, n), axis=axis)
    return (hi - lo) / window


def _box_blur(values: np.ndarray, radius: int, passes: int = 3) -> np.ndarray:
    """Iterated box average with window 2*radius+1 per axis, zero padded."""
    out = values
    for _ in range(passes):
        for ax in range(out.ndim):
            out = _box_average_axis(out, ax, radius)
    return out


def _build_family(fam: dict, spec: CorpusSpec, rng: np.random.Generator):
    kind = fam["kind"]
    shape = (spec.extents,) * spec.dim
    h = spec.spacing
    side = spec.side
    center = (side / 2.0,) * spec.dim
    out = []

    if kind == "cone":
        radius = fam.get("radius", 0.35 * side)
        height = fam.get("height", 1.0)
        for _ in range(fam.get("count", 1)):
            out.append(cone_grid(spec.extents, spec.dim, side, radius, height, center))

    elif kind == "tensor_bump":
        for i in range(fam.get("count", 1)):
            widths = fam.get("widths")
            if widths is None:
                widths = tuple(side * rng.uniform(0.18, 0.32) for _ in range(spec.dim))
            c = tuple(
                side / 2.0 + side * rng.uniform(-0.08, 0.08) for _ in range(spec.dim)
            )
            axes = _cell_axes(shape, h)
            values = np.ones(shape)
            for ax, (xs, w, cc) in enumerate(zip(axes, widths, c)):
                u = np.clip(np.abs(xs - cc) / w, 0.0, 1.0)
                prof = np.cos(np.pi * u / 2.0) ** 2
                prof[u >= 1.0] = 0.0
                sl = [None] * spec.dim
                sl[ax] = slice(None)
                values = values * prof[tuple(sl)]
            _zero_margin(values)
            out.append(GridFunction(h, values))

    elif kind == "mollified_disk":
        radius = fam.get("radius", 0.25 * side)
        ladder = fam.get("eps_ladder", (0.2, 0.1, 0.05))
        for eps_rel in ladder:
            eps = eps_rel * side
            mask = disk_mask(shape, h, center, radius)
            out.append(indicator_mollify(mask, h, max(eps, h)))

    elif kind == "smoothed_noise":
        radius = int(fam.get("radius", 4))
        margin = 2 + radius * 3 + 2
        if 2 * margin >= spec.extents:
            raise ValueError("grid too small for the requested smoothing radius")
        for _ in range(fam.get("count", 1)):
            raw = rng.uniform(-0.5, 1.0, size=shape)
            inner = np.zeros(shape)
            core = tuple(slice(margin, -margin) for _ in range(spec.dim))
            inner[core] = raw[core]
            smooth = _box_blur(inner, radius)
            values = np.clip(smooth, 0.0, None)
            _zero_margin(values)
            out.append(GridFunction(h, values))

    elif kind == "multi_bump":
        bumps = int(fam.get("bumps", 3))
        for _ in range(fam.get("count", 1)):
            values = np.zeros(shape)
            for _ in range(bumps):
                radius = side * rng.uniform(0.08, 0.18)
                c = tuple(
                    rng.uniform(radius + 3 * h, side - radius - 3 * h)
                    for _ in range(spec.dim)
                )
                dist = _radial_distance(shape, h, c)
                values += rng.uniform(0.4, 1.0) * np.clip(1.0 - dist / radius, 0.0, None)
            _zero_margin(values)
            out.append(GridFunction(h, values))

    else:
        raise ValueError(f"unknown corpus family {kind!r}")
    return out


def generate_corpus(spec: CorpusSpec) -> list[tuple[str, GridFunction]]:
    """Deterministic (function_id, GridFunction) list for a corpus spec."""
    if spec.extents < 16:
        raise ValueError("grid too small for the corpus features")
    rng = np.random.default_rng(spec.seed)
    out: list[tuple[str, GridFunction]] = []
    for fam in spec.families:
        if fam["kind"] not in KNOWN_FAMILIES:
            raise ValueError(f"unknown corpus family {fam['kind']!r}")
        built = _build_family(dict(fam), spec, rng)
        for i, gf in enumerate(built):
            out.append((f"{fam['kind']}_{i:02d}", gf))
    return out

"""OA/NOA-based Latin hypercube designs (two-step expansion) and random LHDs.

Randomness comes from numpy's PCG64 generator.  Every (column, level) block
gets its own stream seeded from ``(seed..., namespace, column, level)``, so
the output does not depend on the order in which blocks are processed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .arrays import DesignArray, balance_problems

UNIFORM = "uniform"
MIDPOINT = "midpoint"

Seed = Union[int, Sequence[int]]

# stream namespaces
_EXPAND, _PERTURB, _RANDOM = 0, 1, 2


def _entropy(seed: Seed) -> list[int]:
    if isinstance(seed, (int, np.integer)):
        return [int(seed)]
    return [int(s) for s in seed]


def rng_for(seed: Seed, *key: int) -> np.random.Generator:
    """Independent PCG64 stream for ``seed`` and an integer key."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(_entropy(seed) + list(key))))


@dataclass(frozen=True, eq=False)
class LevelArray:
    """Integer array whose columns are permutations of ``1..n``."""

    values: np.ndarray
    source: DesignArray | None
    seed: Seed | None

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def is_latin(self) -> bool:
        target = np.arange(1, self.n + 1)
        return all(np.array_equal(np.sort(self.values[:, j]), target) for j in range(self.d))

    def stratum(self) -> np.ndarray:
        """Recover the source levels: ``ceil(L / (n / s_j)) - 1``."""
        if self.source is None:
            raise ValueError("level array has no source design")
        block = np.array([self.n // s for s in self.source.levels])
        return (self.values - 1) // block


@dataclass(frozen=True, eq=False)
class Lhd:
    """``n`` points in ``[0, 1)^d``, one per slab ``[(i-1)/n, i/n)`` in every coordinate."""

    points: np.ndarray
    mode: str
    seed: Seed | None
    levels: LevelArray | None = None

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def is_latin(self) -> bool:
        cells = np.floor(self.points * self.n).astype(int)
        target = np.arange(self.n)
        return all(np.array_equal(np.sort(cells[:, j]), target) for j in range(self.d))

    def to_csv(self) -> str:
        return "".join(",".join(f"{v:.17g}" for v in row) + "\n" for row in self.points.tolist())

    def provenance(self) -> dict:
        src = self.levels.source if self.levels is not None else None
        return {
            "n": self.n,
            "d": self.d,
            "mode": self.mode,
            "perturbation_seed": self.seed,
            "permutation_seed": self.levels.seed if self.levels is not None else None,
            "source_sha256": array_hash(src) if src is not None else None,
        }


def array_hash(arr: DesignArray) -> str:
    return hashlib.sha256(arr.to_csv().encode()).hexdigest()


def read_lhd_csv(text: str) -> np.ndarray:
    rows = []
    width = None
    for i, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ValueError(f"row {i}: expected {width} columns, got {len(cells)}")
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            col = next(k for k, c in enumerate(cells, 1) if not _is_float(c))
            raise ValueError(f"row {i}, column {col}: not a number: {cells[col - 1]!r}") from None
    if not rows:
        raise ValueError("empty design file")
    return np.array(rows)


def _is_float(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def expand(arr: DesignArray, seed: Seed) -> LevelArray:
    """Replace the ``n/s_j`` entries equal to ``k`` in column ``j`` by a random
    permutation of ``k*n/s_j + 1, ..., (k+1)*n/s_j``."""
    problems = balance_problems(arr.values, arr.levels)
    if problems:
        raise ValueError("unbalanced array: " + "; ".join(problems))
    n = arr.n
    out = np.empty((n, arr.d), dtype=np.int64)
    for j, s in enumerate(arr.levels):
        m = n // s
        col = arr.values[:, j]
        for k in range(s):
            rows = np.flatnonzero(col == k)
            out[rows, j] = k * m + 1 + rng_for(seed, _EXPAND, j, k).permutation(m)
    return LevelArray(out, arr, seed)


def perturb(levels: LevelArray, mode: str = UNIFORM, seed: Seed | None = None) -> Lhd:
    """``L = (level - u) / n`` with ``u`` in ``(0, 1]`` (uniform) or ``u = 1/2`` (midpoint)."""
    n = levels.n
    if mode == MIDPOINT:
        u = 0.5
    elif mode == UNIFORM:
        if seed is None:
            raise ValueError("uniform perturbation needs a seed")
        u = 1.0 - rng_for(seed, _PERTURB).random(levels.values.shape)
    else:
        raise ValueError(f"unknown perturbation mode {mode!r}")
    pts = (levels.values - u) / n
    return Lhd(pts, mode, seed if mode == UNIFORM else None, levels)


def random_lhd(n: int, d: int, seed: Seed) -> Lhd:
    """Random LHD: independent column permutations plus uniform perturbation."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    vals = np.stack([1 + rng_for(seed, _RANDOM, j).permutation(n) for j in range(d)], axis=1)
    return perturb(LevelArray(vals, None, seed), UNIFORM, seed)


def build_lhd(arr: DesignArray, seed: Seed, mode: str = UNIFORM) -> Lhd:
    return perturb(expand(arr, seed), mode, seed)


def provenance_json(lhd: Lhd) -> str:
    return json.dumps(lhd.provenance(), indent=2, sort_keys=True)

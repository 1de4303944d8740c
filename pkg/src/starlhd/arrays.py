"""Star to (nearly) orthogonal array construction and strength verification."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import Pencil, Star, gf2_rank, span, star_from_rays

OA = "OA"
NOA = "NOA"


@dataclass(frozen=True)
class GeneratorAssignment:
    """Ordered generators ``delta^(j)`` for every ray of ``star``."""

    star: Star
    generators: tuple[tuple[Pencil, ...], ...]

    def __post_init__(self):
        if len(self.generators) != self.star.mu:
            raise ValueError(
                f"{len(self.generators)} generator lists given for a star with {self.star.mu} rays"
            )
        for j, (gens, ray) in enumerate(zip(self.generators, self.star.rays), 1):
            if len(gens) != ray.rank:
                raise ValueError(f"ray {j} has rank {ray.rank} but {len(gens)} generators")
            if not span(gens).same_points(ray):
                raise ValueError(f"generators of ray {j} do not span {ray}")

    @classmethod
    def from_star(cls, star: Star) -> "GeneratorAssignment":
        """Use each ray's own generator order."""
        return cls(star, tuple(r.generators for r in star.rays))

    @classmethod
    def from_labels(cls, star: Star, labels: Sequence[Sequence[str]]) -> "GeneratorAssignment":
        return cls(
            star,
            tuple(tuple(Pencil.from_label(s, star.p) for s in ray) for ray in labels),
        )

    @property
    def p(self) -> int:
        return self.star.p

    def labels(self) -> list[list[str]]:
        return [[g.label for g in gens] for gens in self.generators]

    def to_dict(self) -> dict:
        return {"p": self.p, "generators": self.labels()}


def assignment_from_rays(labels: Sequence[Sequence[str]], p: int) -> GeneratorAssignment:
    """Build the star from generator lists directly; the nucleus is the ray intersection."""
    rays = [span(ray, p) for ray in labels]
    return GeneratorAssignment(star_from_rays(rays), tuple(r.generators for r in rays))


@dataclass(frozen=True, eq=False)
class DesignArray:
    """An ``n x d`` array whose column ``j`` takes levels ``0 .. levels[j]-1``."""

    values: np.ndarray
    levels: tuple[int, ...]
    strength: int = 2
    kind: str = NOA

    def __post_init__(self):
        values = np.array(self.values, dtype=np.int64)
        if values.ndim != 2:
            raise ValueError("values must be a 2-d array")
        levels = tuple(int(s) for s in self.levels)
        if len(levels) != values.shape[1]:
            raise ValueError(f"{len(levels)} level counts for {values.shape[1]} columns")
        if values.size and (values.min() < 0 or np.any(values >= np.array(levels))):
            raise ValueError("entries must satisfy 0 <= values[i, j] < levels[j]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "levels", levels)
        problems = balance_problems(values, levels)
        if problems:
            raise ValueError("unbalanced array: " + "; ".join(problems))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.values[:, j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DesignArray):
            return NotImplemented
        return self.levels == other.levels and np.array_equal(self.values, other.values)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "strength": self.strength,
            "n": self.n,
            "levels": list(self.levels),
            "values": self.values.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DesignArray":
        return cls(
            np.array(data["values"], dtype=np.int64).reshape(-1, len(data["levels"])),
            tuple(data["levels"]),
            int(data.get("strength", 2)),
            data.get("kind", NOA),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.levels)
        w.writerows(self.values.tolist())
        return buf.getvalue()


def balance_problems(values: np.ndarray, levels: Sequence[int]) -> list[str]:
    n = values.shape[0]
    out = []
    for j, s in enumerate(levels):
        if n % s:
            out.append(f"column {j + 1}: n={n} is not a multiple of {s} levels")
            continue
        counts = np.bincount(values[:, j], minlength=s)
        if np.any(counts != n // s):
            out.append(f"column {j + 1}: level counts {counts.tolist()}, expected {n // s} each")
    return out


def read_csv(text: str) -> DesignArray:
    """Parse the array CSV format: a header of level counts, then integer rows."""
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError("empty array file")
    try:
        levels = tuple(int(c) for c in rows[0])
    except ValueError as exc:
        raise ValueError(f"row 1: header must list integer level counts ({exc})") from None
    values = []
    for i, row in enumerate(rows[1:], 2):
        if len(row) != len(levels):
            raise ValueError(f"row {i}: expected {len(levels)} columns, got {len(row)}")
        try:
            values.append([int(c) for c in row])
        except ValueError:
            col = next(k for k, c in enumerate(row, 1) if not c.strip().lstrip("-").isdigit())
            raise ValueError(f"row {i}, column {col}: not an integer: {row[col - 1]!r}") from None
    return DesignArray(np.array(values, dtype=np.int64).reshape(-1, len(levels)), levels)


def _parity(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x) & 1


def star_to_noa(star: Star, gens: GeneratorAssignment | None = None) -> DesignArray:
    """Inner-product construction of a ``2^p``-run array, one column per ray.

    Row ``i`` corresponds to effect ``a_i`` (row 0 is the all-zero row) and
    ``A[i, j] = sum_l (a_i . delta_l^(j)) 2^(t_j - l)``.
    """
    if gens is None:
        gens = GeneratorAssignment.from_star(star)
    if gens.star is not star and [r.points for r in gens.star.rays] != [r.points for r in star.rays]:
        raise ValueError("generator assignment belongs to a different star")
    p = star.p
    rows = np.arange(1 << p, dtype=np.int64)
    cols = []
    for delta in gens.generators:
        t = len(delta)
        col = np.zeros_like(rows)
        for l, g in enumerate(delta):
            col += _parity(rows & g.bits) << (t - 1 - l)
        cols.append(col)
    kind = OA if star.t0 == 0 else NOA
    return DesignArray(np.stack(cols, axis=1), tuple(2 ** len(d) for d in gens.generators), 2, kind)


@dataclass(frozen=True)
class StrengthReport:
    """Exhaustive ``r``-tuple counts for every ``r``-subset of columns."""

    r: int
    n: int
    histograms: dict[tuple[int, ...], np.ndarray] = field(repr=False)
    is_exact: bool
    fraction_factor: Fraction | None
    two_valued: bool
    deficiency: int

    def present_fraction(self, cols: tuple[int, ...]) -> Fraction:
        h = self.histograms[cols]
        return Fraction(int(np.count_nonzero(h)), h.size)

    def support(self, cols: tuple[int, ...]) -> int:
        return int(np.count_nonzero(self.histograms[cols]))


def verify_strength(arr: DesignArray, r: int) -> StrengthReport:
    """Count every ``r``-tuple in every ``n x r`` subarray.

    ``fraction_factor`` is the common fraction of tuples that occur, when it is
    the same for all column subsets.  ``two_valued`` is true when every count is
    either 0 or a single common positive value.
    """
    if not 1 <= r <= arr.d:
        raise ValueError(f"strength r={r} must be in [1, d={arr.d}]")
    n = arr.n
    hists = {}
    exact = True
    deficiency = 0
    fractions = set()
    positive = set()
    for cols in itertools.combinations(range(arr.d), r):
        shape = tuple(arr.levels[c] for c in cols)
        flat = np.ravel_multi_index(tuple(arr.values[:, c] for c in cols), shape)
        h = np.bincount(flat, minlength=math.prod(shape)).reshape(shape)
        hists[cols] = h
        expected = Fraction(n, math.prod(shape))
        unequal = int(np.count_nonzero(h != expected)) if expected.denominator == 1 else h.size
        deficiency += unequal
        exact &= unequal == 0
        fractions.add(Fraction(int(np.count_nonzero(h)), h.size))
        positive.update(int(v) for v in np.unique(h[h > 0]))
    return StrengthReport(
        r=r,
        n=n,
        histograms=hists,
        is_exact=exact,
        fraction_factor=fractions.pop() if len(fractions) == 1 else None,
        two_valued=len(positive) == 1,
        deficiency=deficiency,
    )


@dataclass(frozen=True)
class ExistenceReport:
    divisibility_ok: bool
    rao_ok: bool
    rao_lhs: int
    rao_rhs: int
    failed_subsets: tuple[tuple[int, ...], ...]

    @property
    def passes(self) -> bool:
        return self.divisibility_ok and self.rao_ok


def existence_preconditions(n: int, levels: Sequence[int], r: int) -> ExistenceReport:
    """Necessary conditions for an OA(n, s_1...s_d, r).

    Divisibility: ``n`` is a multiple of the product of the levels of every set
    of at most ``r`` columns.  Rao bound (strength >= 2 only):
    ``n - 1 >= sum(s_j - 1)``.  A failure proves non-existence; passing proves
    nothing.
    """
    failed = []
    for k in range(1, min(r, len(levels)) + 1):
        for cols in itertools.combinations(range(len(levels)), k):
            if n % math.prod(levels[c] for c in cols):
                failed.append(cols)
    lhs, rhs = n - 1, sum(s - 1 for s in levels)
    rao_ok = lhs >= rhs if r >= 2 else True
    return ExistenceReport(not failed, rao_ok, lhs, rhs, tuple(failed))


def _pair_scores(x: np.ndarray, levels: Sequence[int], contrasts: str) -> list[float]:
    n, d = x.shape
    out = []
    for a, b in itertools.combinations(range(d), 2):
        if contrasts == "linear":
            u = x[:, a] - x[:, a].mean()
            v = x[:, b] - x[:, b].mean()
            out.append(float(np.dot(u, v) ** 2 / (np.dot(u, u) * np.dot(v, v))))
        else:
            # Cramer's V^2: mean squared canonical correlation of the level indicators
            table = np.zeros((levels[a], levels[b]))
            np.add.at(table, (x[:, a], x[:, b]), 1)
            expected = np.outer(table.sum(1), table.sum(0)) / n
            chi2 = float(np.sum((table - expected) ** 2 / expected))
            out.append(chi2 / (n * (min(levels[a], levels[b]) - 1)))
    return out


def near_orthogonality_score(arr: DesignArray, contrasts: str = "full") -> float:
    """Average over column pairs of a squared-correlation measure.

    With ``contrasts="full"`` each pair contributes the mean squared canonical
    correlation between the two columns' level indicators (Cramer's V^2), so
    any departure from pairwise balance counts.  ``contrasts="linear"`` uses
    the squared Pearson correlation of the equally spaced level scores.  Both
    are 0 for a strength-2 OA and 1 for two identical columns.
    """
    if contrasts not in ("full", "linear"):
        raise ValueError(f"contrasts must be 'full' or 'linear', got {contrasts!r}")
    x = np.asarray(arr.values)
    if x.shape[1] < 2:
        raise ValueError("need at least two columns")
    const = [j for j in range(x.shape[1]) if np.all(x[:, j] == x[0, j])]
    if const:
        raise ValueError(f"constant column(s): {const}")
    return math.fsum(_pair_scores(x, arr.levels, contrasts)) / math.comb(x.shape[1], 2)


def ray_rank_of_pair(star: Star, j1: int, j2: int) -> int:
    """Rank of the span of two rays; the column pair takes ``2^rank`` distinct values."""
    bits = [g.bits for g in star.rays[j1].generators] + [g.bits for g in star.rays[j2].generators]
    return gf2_rank(bits)


__all__ = [
    "DesignArray",
    "ExistenceReport",
    "GeneratorAssignment",
    "NOA",
    "OA",
    "StrengthReport",
    "assignment_from_rays",
    "existence_preconditions",
    "near_orthogonality_score",
    "read_csv",
    "star_to_noa",
    "verify_strength",
]

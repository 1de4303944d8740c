"""Generator-selection guidelines G1-G3, a compliant-assignment search, and the
replicate study comparing MID/AID across generator assignments.

Ray and generator positions in reports are 1-based, as in ``delta_l^(j)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .arrays import GeneratorAssignment, star_to_noa
from .geometry import Flat, Pencil, Star, gf2_rank
from .lhd import MIDPOINT, Seed, expand, perturb, rng_for
from .metrics import aid, mid


@dataclass(frozen=True)
class GuidelineReport:
    # (j, delta_1^(j))
    g1_violations: tuple[tuple[int, Pencil], ...]
    # (l, j1, j2)
    g2_violations: tuple[tuple[int, int, int], ...]
    # (l1, l2, j1, j2, common sum)
    g3_violations: tuple[tuple[int, int, int, int, Pencil], ...]

    @property
    def compliant(self) -> bool:
        return not (self.g1_violations or self.g2_violations or self.g3_violations)

    @property
    def violated(self) -> tuple[str, ...]:
        names = ("G1", "G2", "G3")
        lists = (self.g1_violations, self.g2_violations, self.g3_violations)
        return tuple(n for n, v in zip(names, lists) if v)


def check_guidelines(gens: GeneratorAssignment, nucleus: Flat | None = None) -> GuidelineReport:
    """List every violation of G1 (first generator in the nucleus), G2 (equal
    ``l``-th generators in two rays) and G3 (equal sums of the ``l1``-th and
    ``l2``-th generators in two rays)."""
    if nucleus is None:
        nucleus = gens.star.nucleus
    delta = gens.generators
    g1 = tuple((j, d[0]) for j, d in enumerate(delta, 1) if d[0] in nucleus.points)
    g2 = []
    g3 = []
    for (j1, d1), (j2, d2) in itertools.combinations(enumerate(delta, 1), 2):
        common = min(len(d1), len(d2))
        for l in range(common):
            if d1[l] == d2[l]:
                g2.append((l + 1, j1, j2))
        for l1, l2 in itertools.combinations(range(common), 2):
            s = d1[l1] + d1[l2]
            if s == d2[l1] + d2[l2]:
                g3.append((l1 + 1, l2 + 1, j1, j2, s))
    g2.sort()
    g3.sort(key=lambda v: v[:4])
    return GuidelineReport(g1, tuple(g2), tuple(g3))


@dataclass(frozen=True)
class InfeasibleReport:
    """No compliant assignment was found within the budget."""

    tries: int
    exhausted: bool
    reason: str

    def __bool__(self) -> bool:
        return False


def search_compliant(
    star: Star, seed: Seed | None = None, max_tries: int = 100_000
) -> GeneratorAssignment | InfeasibleReport:
    """Backtracking search for a G1-G3 compliant generator assignment.

    Rays are filled in order, one generator position at a time.  Candidates are
    the ray's points in ascending index order, or in a seeded shuffled order
    when ``seed`` is given.  ``max_tries`` bounds the number of candidate
    placements examined.
    """
    rays = star.rays
    nuc = star.nucleus.point_bits
    ray_points = []
    for j, ray in enumerate(rays):
        pts = sorted(ray.point_bits)
        if seed is not None:
            pts = [pts[i] for i in rng_for(seed, j).permutation(len(pts))]
        ray_points.append(pts)

    chosen: list[list[int]] = [[] for _ in rays]
    tries = 0

    def ok(j: int, x: int) -> bool:
        cur = chosen[j]
        l = len(cur)
        if l == 0 and x in nuc:
            return False
        if gf2_rank(cur + [x]) <= l:
            return False
        for prev in chosen[:j]:
            if l < len(prev):
                if prev[l] == x:
                    return False
                for l1 in range(l):
                    if cur[l1] ^ x == prev[l1] ^ prev[l]:
                        return False
        return True

    def place(j: int) -> bool:
        nonlocal tries
        if j == len(rays):
            return True
        if len(chosen[j]) == rays[j].rank:
            return place(j + 1)
        for x in ray_points[j]:
            if tries >= max_tries:
                return False
            tries += 1
            if not ok(j, x):
                continue
            chosen[j].append(x)
            if place(j):
                return True
            chosen[j].pop()
        return False

    if place(0):
        p = star.p
        return GeneratorAssignment(
            star, tuple(tuple(Pencil(x, p) for x in c) for c in chosen)
        )
    exhausted = tries < max_tries
    reason = (
        "search space exhausted; no assignment satisfies G1-G3"
        if exhausted
        else f"no compliant assignment within {max_tries} tries"
    )
    return InfeasibleReport(tries, exhausted, reason)


@dataclass(frozen=True)
class SimulationResult:
    label: str
    mid_samples: tuple[float, ...] = field(repr=False)
    aid_samples: tuple[float, ...] = field(repr=False)
    n_reps: int
    seed: Seed

    def quantiles(self, metric: str) -> tuple[float, float, float]:
        x = np.asarray(self.mid_samples if metric == "mid" else self.aid_samples)
        q1, med, q3 = np.quantile(x, [0.25, 0.5, 0.75])
        return float(q1), float(med), float(q3)

    @property
    def median_mid(self) -> float:
        return float(np.median(self.mid_samples))

    @property
    def median_aid(self) -> float:
        return float(np.median(self.aid_samples))


def run_simulation(
    star: Star,
    assignments: Mapping[str, GeneratorAssignment] | Sequence[tuple[str, GeneratorAssignment]],
    n_reps: int = 100,
    seed: int = 0,
) -> list[SimulationResult]:
    """MID/AID of ``n_reps`` randomly expanded LHDs per assignment.

    Only the level-block permutations are random; points sit at cell midpoints.
    Replicate ``r`` uses seed ``(seed, r)`` for every configuration, so the
    configurations are compared under common random numbers.
    """
    items = list(assignments.items()) if isinstance(assignments, Mapping) else list(assignments)
    results = []
    for label, gens in items:
        arr = star_to_noa(star, gens)
        mids, aids = [], []
        for r in range(n_reps):
            pts = perturb(expand(arr, (seed, r)), MIDPOINT)
            mids.append(mid(pts))
            aids.append(aid(pts))
        results.append(SimulationResult(label, tuple(mids), tuple(aids), n_reps, seed))
    return results

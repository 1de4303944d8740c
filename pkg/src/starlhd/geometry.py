"""Points, flats, spreads and covering stars of the binary projective geometry PG(p-1, 2).

A point (pencil) is stored as a ``p``-bit integer.  Bit ``p-1`` is factor ``A``
and bit 0 is the last base factor, so for ``p = 4`` the pencils with indices
``1, 2, 3, 4, ...`` are ``D, C, CD, B, ...``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_P = 16

# one primitive polynomial per degree, leading term included
PRIMITIVE_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class InfeasibleConstructionError(ValueError):
    """A requested spread or star does not exist (a divisibility condition fails)."""


def _check_p(p: int) -> None:
    if not 1 <= p <= MAX_P:
        raise ValueError(f"p must be in [1, {MAX_P}], got {p}")


@dataclass(frozen=True, order=True)
class Pencil:
    """A nonzero vector of GF(2)^p, i.e. one factorial effect."""

    bits: int
    p: int

    def __post_init__(self):
        _check_p(self.p)
        if not 0 < self.bits < (1 << self.p):
            raise ValueError(f"pencil bits must be in [1, 2^{self.p} - 1], got {self.bits}")

    @property
    def index(self) -> int:
        return self.bits

    @property
    def label(self) -> str:
        letters = string.ascii_uppercase
        return "".join(letters[k] for k in range(self.p) if self.bits >> (self.p - 1 - k) & 1)

    @property
    def vector(self) -> tuple[int, ...]:
        """Coordinates in factor order ``(A, B, C, ...)``."""
        return tuple(self.bits >> (self.p - 1 - k) & 1 for k in range(self.p))

    @classmethod
    def from_label(cls, label: str, p: int) -> "Pencil":
        _check_p(p)
        bits = 0
        for ch in label.strip().upper():
            k = ord(ch) - ord("A")
            if not 0 <= k < p:
                raise ValueError(f"letter {ch!r} is not a factor of a 2^{p} experiment")
            if bits >> (p - 1 - k) & 1:
                raise ValueError(f"repeated factor {ch!r} in {label!r}")
            bits |= 1 << (p - 1 - k)
        return cls(bits, p)

    def __add__(self, other: "Pencil") -> "Pencil":
        # GF(2) addition, i.e. the product of two effects
        _same_p(self, other)
        return Pencil(self.bits ^ other.bits, self.p)

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"Pencil({self.label})"

    def to_dict(self) -> dict:
        return {"label": self.label, "index": self.bits}

    @classmethod
    def from_dict(cls, data: dict, p: int) -> "Pencil":
        pencil = cls(int(data["index"]), p)
        if "label" in data and data["label"] != pencil.label:
            raise ValueError(f"label {data['label']!r} does not match index {data['index']}")
        return pencil


def _same_p(a: Pencil, b: Pencil) -> None:
    if a.p != b.p:
        raise ValueError(f"pencils live in different geometries (p={a.p} vs p={b.p})")


def pencil_from_index(i: int, p: int) -> Pencil:
    """Return the ``i``-th effect ``a_i`` (``1 <= i <= 2^p - 1``)."""
    _check_p(p)
    if not 1 <= i <= (1 << p) - 1:
        raise ValueError(f"pencil index must be in [1, {(1 << p) - 1}], got {i}")
    return Pencil(i, p)


def all_pencils(p: int) -> list[Pencil]:
    return [Pencil(i, p) for i in range(1, 1 << p)]


def dot(a: Pencil, b: Pencil) -> int:
    """Inner product over GF(2)."""
    _same_p(a, b)
    return (a.bits & b.bits).bit_count() & 1


def _as_pencil(x, p: int | None) -> Pencil:
    if isinstance(x, Pencil):
        return x
    if p is None:
        raise ValueError("p is required when generators are given as labels or integers")
    if isinstance(x, str):
        return Pencil.from_label(x, p)
    return Pencil(int(x), p)


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a set of integer bit vectors."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def span_bits(generators: Sequence[int]) -> frozenset[int]:
    """All nonzero GF(2) combinations of ``generators``."""
    points = {0}
    for g in generators:
        points |= {x ^ g for x in points}
    points.discard(0)
    return frozenset(points)


@dataclass(frozen=True)
class Flat:
    """A rank-``t`` subspace: ordered generators plus its ``2^t - 1`` points."""

    generators: tuple[Pencil, ...]
    p: int
    points: frozenset[Pencil] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _check_p(self.p)
        for g in self.generators:
            if g.p != self.p:
                raise ValueError(f"generator {g} is not a point of PG({self.p - 1},2)")
        bits = [g.bits for g in self.generators]
        if gf2_rank(bits) != len(bits):
            raise ValueError(
                "generators are linearly dependent: "
                + ", ".join(g.label for g in self.generators)
            )
        object.__setattr__(self, "points", frozenset(Pencil(x, self.p) for x in span_bits(bits)))

    @classmethod
    def empty(cls, p: int) -> "Flat":
        return cls((), p)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def point_bits(self) -> frozenset[int]:
        return frozenset(x.bits for x in self.points)

    def __contains__(self, x) -> bool:
        return _as_pencil(x, self.p) in self.points

    def __len__(self) -> int:
        return len(self.points)

    def same_points(self, other: "Flat") -> bool:
        return self.p == other.p and self.points == other.points

    def sorted_points(self) -> list[Pencil]:
        return sorted(self.points)

    def __str__(self) -> str:
        return "<" + ",".join(g.label for g in self.generators) + ">"

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "generators": [g.label for g in self.generators],
            "points": [x.label for x in self.sorted_points()],
        }

    @classmethod
    def from_dict(cls, data: dict, p: int) -> "Flat":
        flat = cls(tuple(Pencil.from_label(s, p) for s in data["generators"]), p)
        if "points" in data:
            given = {Pencil.from_label(s, p) for s in data["points"]}
            if given != flat.points:
                raise ValueError(f"point list does not match span of {flat}")
        return flat


def span(generators: Sequence, p: int | None = None) -> Flat:
    """Span of a nonempty list of independent pencils (labels or ints need ``p``)."""
    if len(generators) == 0:
        raise ValueError("span of an empty generator list; use Flat.empty(p) for the empty flat")
    pencils = tuple(_as_pencil(g, p) for g in generators)
    return Flat(pencils, pencils[0].p)


def _flat_from_points(point_bits: Iterable[int], p: int) -> Flat:
    # greedy basis in ascending index order
    gens: list[int] = []
    for x in sorted(point_bits):
        if gf2_rank(gens + [x]) > len(gens):
            gens.append(x)
    flat = Flat(tuple(Pencil(g, p) for g in gens), p)
    if flat.point_bits != frozenset(point_bits):
        raise ValueError("point set is not a subspace")
    return flat


@dataclass(frozen=True)
class Spread:
    """Pairwise-disjoint flats of equal rank partitioning all points."""

    flats: tuple[Flat, ...]
    p: int

    @property
    def t(self) -> int:
        return self.flats[0].rank

    def __len__(self) -> int:
        return len(self.flats)

    def is_partition(self) -> bool:
        seen: set[int] = set()
        for f in self.flats:
            if seen & f.point_bits:
                return False
            seen |= f.point_bits
        return len(seen) == (1 << self.p) - 1

    def as_star(self) -> "Star":
        return Star(Flat.empty(self.p), self.flats, self.p)

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t, "flats": [f.to_dict() for f in self.flats]}

    @classmethod
    def from_dict(cls, data: dict) -> "Spread":
        p = int(data["p"])
        return cls(tuple(Flat.from_dict(f, p) for f in data["flats"]), p)


@dataclass(frozen=True)
class Star:
    """A nucleus flat and rays that each contain it."""

    nucleus: Flat
    rays: tuple[Flat, ...]
    p: int

    def __post_init__(self):
        if not self.rays:
            raise ValueError("a star needs at least one ray")
        for j, ray in enumerate(self.rays, 1):
            if ray.p != self.p:
                raise ValueError(f"ray {j} lives in a different geometry")
            if not self.nucleus.points <= ray.points:
                raise ValueError(f"nucleus is not contained in ray {j} = {ray}")

    @property
    def mu(self) -> int:
        return len(self.rays)

    @property
    def t0(self) -> int:
        return self.nucleus.rank

    @property
    def ray_ranks(self) -> list[int]:
        return [r.rank for r in self.rays]

    def is_balanced(self) -> bool:
        t = self.rays[0].rank
        if any(r.rank != t for r in self.rays):
            return False
        return self.mu == balanced_mu(self.p, t, self.t0)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "t0": self.t0,
            "mu": self.mu,
            "nucleus": self.nucleus.to_dict(),
            "rays": [r.to_dict() for r in self.rays],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Star":
        p = int(data["p"])
        return cls(
            Flat.from_dict(data["nucleus"], p),
            tuple(Flat.from_dict(r, p) for r in data["rays"]),
            p,
        )


def star_from_rays(rays: Sequence[Flat]) -> Star:
    """Build a star whose nucleus is the common intersection of ``rays``."""
    p = rays[0].p
    common = set(rays[0].point_bits)
    for r in rays[1:]:
        common &= r.point_bits
    nucleus = _flat_from_points(common, p) if common else Flat.empty(p)
    return Star(nucleus, tuple(rays), p)


def balanced_mu(p: int, t: int, t0: int) -> int:
    return ((1 << (p - t0)) - 1) // ((1 << (t - t0)) - 1)


# ---------------------------------------------------------------------------
# field arithmetic for spreads


def _gf_mul(a: int, b: int, poly: int, p: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> p & 1:
            a ^= poly
    return out


def field_powers(p: int) -> list[int]:
    """Successive powers ``alpha^0 .. alpha^(2^p - 2)`` of a primitive element of GF(2^p)."""
    _check_p(p)
    poly = PRIMITIVE_POLYNOMIALS[p]
    alpha = _gf_mul(1, 2, poly, p) if p > 1 else 1
    out = [1]
    for _ in range((1 << p) - 2):
        out.append(_gf_mul(out[-1], alpha, poly, p))
    return out


def construct_spread(p: int, t: int) -> Spread:
    """Balanced ``(t-1)``-spread of PG(p-1, 2) from cosets of the subfield GF(2^t)."""
    if p > MAX_P:
        raise ValueError(f"p={p} exceeds the primitive polynomial table (p <= {MAX_P})")
    _check_p(p)
    if not 1 <= t <= p:
        raise ValueError(f"need 1 <= t <= p, got t={t}, p={p}")
    if p % t:
        raise InfeasibleConstructionError(
            f"no (t-1)-spread: t={t} does not divide p={p} (Andre's condition)"
        )
    powers = field_powers(p)
    order = (1 << p) - 1
    n_flats = order // ((1 << t) - 1)
    # alpha^(k * n_flats), k = 0..2^t-2, are the nonzero elements of GF(2^t)
    flats = []
    for i in range(n_flats):
        coset = [powers[(i + k * n_flats) % order] for k in range((1 << t) - 1)]
        flats.append(_flat_from_points(coset, p))
    return Spread(tuple(flats), p)


def _reduced_basis(gens: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon basis and pivot bit positions (high bit first)."""
    rows = list(gens)
    pivots = []
    r = 0
    for bit in range(p - 1, -1, -1):
        piv = next((k for k in range(r, len(rows)) if rows[k] >> bit & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k] >> bit & 1:
                rows[k] ^= rows[r]
        pivots.append(bit)
        r += 1
    return rows[:r], pivots


def default_nucleus(p: int, t0: int) -> Flat:
    """Lexicographically smallest rank-``t0`` flat, spanned by the last ``t0`` factors."""
    if t0 == 0:
        return Flat.empty(p)
    return Flat(tuple(Pencil(1 << k, p) for k in range(t0)), p)


def construct_star(p: int, t: int, t0: int, nucleus: Flat | None = None) -> Star:
    """Balanced covering star St(mu, t, t0) of PG(p-1, 2).

    A spread of the quotient geometry by the nucleus is lifted through a fixed
    coordinate complement of the nucleus.  Each ray lists the lifted spread
    generators first and the nucleus generators last.
    """
    _check_p(p)
    if not 0 <= t0 < t < p:
        raise ValueError(f"need 0 <= t0 < t < p, got p={p}, t={t}, t0={t0}")
    if (p - t0) % (t - t0):
        raise InfeasibleConstructionError(
            f"no balanced covering star: (t - t0) = {t - t0} does not divide (p - t0) = {p - t0}"
        )
    if nucleus is None:
        nucleus = default_nucleus(p, t0)
    if nucleus.p != p:
        raise ValueError("nucleus lives in a different geometry")
    if nucleus.rank != t0:
        raise ValueError(f"nucleus has rank {nucleus.rank}, expected t0={t0}")
    if t0 == 0:
        return construct_spread(p, t).as_star()

    _, pivots = _reduced_basis([g.bits for g in nucleus.generators], p)
    complement = [1 << b for b in range(p) if b not in pivots]  # ascending bit order
    quotient = construct_spread(p - t0, t - t0)

    def lift(x: int) -> int:
        out = 0
        for k, e in enumerate(complement):
            if x >> k & 1:
                out ^= e
        return out

    rays = []
    for flat in quotient.flats:
        gens = [Pencil(lift(g.bits), p) for g in flat.generators] + list(nucleus.generators)
        rays.append(Flat(tuple(gens), p))
    return Star(nucleus, tuple(rays), p)


@dataclass(frozen=True)
class CoverReport:
    covers: bool
    missing: tuple[Pencil, ...]
    duplicated: tuple[Pencil, ...]
    nucleus_ok: bool

    def __bool__(self) -> bool:
        return self.covers


def verify_cover(star: Star) -> CoverReport:
    """Check that the rays cover every point and overlap only in the nucleus."""
    counts: dict[int, int] = {}
    for ray in star.rays:
        for x in ray.point_bits:
            counts[x] = counts.get(x, 0) + 1
    nuc = star.nucleus.point_bits
    p = star.p
    missing = tuple(Pencil(x, p) for x in range(1, 1 << p) if x not in counts)
    duplicated = tuple(Pencil(x, p) for x in sorted(counts) if counts[x] > 1 and x not in nuc)
    return CoverReport(
        covers=not missing,
        missing=missing,
        duplicated=duplicated,
        nucleus_ok=all(counts.get(x, 0) == star.mu for x in nuc),
    )


def pairwise_intersections_ok(star: Star) -> bool:
    nuc = star.nucleus.point_bits
    rays = [r.point_bits for r in star.rays]
    return all(
        rays[i] & rays[j] == nuc for i in range(len(rays)) for j in range(i + 1, len(rays))
    )


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    sum_condition: bool
    pair_condition: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.feasible


def check_star_feasibility(p: int, t0: int, ray_ranks: Sequence[int]) -> FeasibilityReport:
    """Necessary conditions for a covering star St(t_1, ..., t_mu; t0).

    Passing does not prove that the star exists.
    """
    ranks = sorted(ray_ranks)
    failures = []
    if any(t <= t0 for t in ranks):
        failures.append(f"every ray rank must exceed t0={t0}")
    lhs = (1 << (p - t0)) - 1
    rhs = sum((1 << (t - t0)) - 1 for t in ranks if t >= t0)
    sum_ok = lhs == rhs
    if not sum_ok:
        failures.append(f"(i) 2^(p-t0) - 1 = {lhs} != sum(2^(t_i-t0) - 1) = {rhs}")
    pair_ok = True
    # the two largest ranks give the worst pair
    if len(ranks) >= 2 and ranks[-1] + ranks[-2] - t0 > p:
        pair_ok = False
        failures.append(
            f"(ii) t_i + t_j - t0 = {ranks[-1] + ranks[-2] - t0} > p = {p} for ranks "
            f"{ranks[-2]} and {ranks[-1]}"
        )
    return FeasibilityReport(not failures, sum_ok, pair_ok, tuple(failures))

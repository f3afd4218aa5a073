"""Six marked points on the projective line.

Points are either Python complex numbers or the singleton ``INF``.  All
arithmetic on the Riemann sphere goes through homogeneous coordinates so
that the point at infinity never appears as a large float.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DegenerateError, KleinError

#: Points closer than this in the chordal metric count as coincident.
DISTINCT_TOL = 1e-9


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ProjPoint = Union[complex, _Infinity]


def is_inf(p) -> bool:
    return p is INF


def as_point(p) -> ProjPoint:
    """Coerce numbers (or ``INF``) to a ProjPoint, rejecting NaN/Inf floats."""
    if p is INF:
        return INF
    z = complex(p)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise KleinError(f"finite point expected, got {p!r}")
    return z


def homogeneous(p: ProjPoint) -> tuple[complex, complex]:
    return (1 + 0j, 0j) if p is INF else (complex(p), 1 + 0j)


def from_homogeneous(x: complex, y: complex) -> ProjPoint:
    if y == 0:
        if x == 0:
            raise DegenerateError("(0:0) is not a point of P^1")
        return INF
    return x / y


def _bracket(p, q) -> complex:
    (x1, y1), (x2, y2) = p, q
    return x1 * y2 - x2 * y1


def chordal_distance(p: ProjPoint, q: ProjPoint) -> float:
    """Chordal distance on the Riemann sphere (diameter 2)."""
    hp, hq = homogeneous(p), homogeneous(q)
    norm = math.hypot(abs(hp[0]), abs(hp[1])) * math.hypot(abs(hq[0]), abs(hq[1]))
    return 2.0 * abs(_bracket(hp, hq)) / norm


def _check_frame(a, b, c, tol=DISTINCT_TOL):
    for p, q in ((a, b), (a, c), (b, c)):
        if chordal_distance(p, q) < tol:
            raise DegenerateError("degenerate frame")


def cross_ratio(p: ProjPoint, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> ProjPoint:
    """Image of ``p`` under the Möbius map sending ``a, b, c`` to ``0, 1, INF``.

    Evaluates ``((p-a)(b-c)) / ((p-c)(b-a))`` in homogeneous coordinates, so
    any argument may be ``INF``.
    """
    p, a, b, c = (as_point(x) for x in (p, a, b, c))
    _check_frame(a, b, c)
    hp, ha, hb, hc = (homogeneous(x) for x in (p, a, b, c))
    num = _bracket(hp, ha) * _bracket(hb, hc)
    den = _bracket(hp, hc) * _bracket(hb, ha)
    return from_homogeneous(num, den)


def mobius(g, p: ProjPoint) -> ProjPoint:
    """Apply the 2x2 matrix ``g`` to ``p``."""
    (a, b), (c, d) = np.asarray(g, dtype=complex)
    x, y = homogeneous(as_point(p))
    return from_homogeneous(a * x + b * y, c * x + d * y)


def frame_matrix(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> np.ndarray:
    """Matrix of the Möbius map sending ``a, b, c`` to ``0, 1, INF``."""
    _check_frame(a, b, c)
    ha, hb, hc = (homogeneous(as_point(x)) for x in (a, b, c))
    # rows are linear forms vanishing at a and at c, scaled so b -> 1
    row0 = np.array([ha[1], -ha[0]]) * _bracket(hb, hc)
    row1 = np.array([hc[1], -hc[0]]) * _bracket(hb, ha)
    return np.array([row0, row1])


@dataclass(frozen=True)
class Triple:
    """Marked unordered triple; the stored order fixes the reference frame."""

    indices: tuple[int, int, int]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) != 3 or len(set(idx)) != 3:
            raise KleinError(f"triple needs 3 distinct indices, got {self.indices}")
        object.__setattr__(self, "indices", idx)

    kind = "triple"


@dataclass(frozen=True)
class PairPartition:
    """Three disjoint unordered pairs; stored order fixes the reference frame."""

    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        pairs = tuple(tuple(int(i) for i in p) for p in self.pairs)
        if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
            raise KleinError(f"expected 3 pairs, got {self.pairs}")
        flat = [i for p in pairs for i in p]
        if len(set(flat)) != 6:
            raise KleinError(f"pairs are not disjoint: {self.pairs}")
        object.__setattr__(self, "pairs", pairs)

    kind = "pairs"


Marking = Union[Triple, PairPartition]


@dataclass(frozen=True)
class MarkedConfiguration:
    points: tuple
    marking: Marking

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if len(pts) != 6:
            raise KleinError(f"need 6 points, got {len(pts)}")
        for i, j in itertools.combinations(range(6), 2):
            if chordal_distance(pts[i], pts[j]) < DISTINCT_TOL:
                raise DegenerateError(f"points {i} and {j} coincide")
        used = (
            self.marking.indices
            if isinstance(self.marking, Triple)
            else [i for p in self.marking.pairs for i in p]
        )
        if any(not 0 <= i < 6 for i in used):
            raise KleinError(f"marking indices out of range: {self.marking}")
        object.__setattr__(self, "points", pts)

    @property
    def kind(self) -> str:
        return self.marking.kind

    def transport(self, g) -> "MarkedConfiguration":
        """Image under a Möbius matrix, marking carried along."""
        return MarkedConfiguration(tuple(mobius(g, p) for p in self.points), self.marking)


@dataclass(frozen=True)
class NormalizedConfiguration:
    """Free points ``b`` after fixing three reference points at 0, 1, INF.

    For a triple marking the marked points sit at 0, 1, INF and ``b`` holds
    the unmarked ones.  For a pair partition the pairs are
    ``(0, b[0]), (1, b[1]), (INF, b[2])``.
    """

    b: tuple[complex, complex, complex]
    kind: str

    def __post_init__(self):
        if self.kind not in ("triple", "pairs"):
            raise KleinError(f"unknown marking kind {self.kind!r}")
        b = tuple(as_point(x) for x in self.b)
        if len(b) != 3 or any(x is INF for x in b):
            raise DegenerateError("normalized points must be 3 finite values")
        refs = (0j, 1 + 0j, INF)
        for x in b:
            if any(chordal_distance(x, r) < DISTINCT_TOL for r in refs):
                raise DegenerateError(f"free point {x} hits 0, 1 or INF")
        for x, y in itertools.combinations(b, 2):
            if chordal_distance(x, y) < DISTINCT_TOL:
                raise DegenerateError("free points coincide")
        object.__setattr__(self, "b", b)

    def to_marked(self) -> MarkedConfiguration:
        pts = (0j, 1 + 0j, INF) + self.b
        if self.kind == "triple":
            return MarkedConfiguration(pts, Triple((0, 1, 2)))
        return MarkedConfiguration(pts, PairPartition(((0, 3), (1, 4), (2, 5))))


def _order_key(z: complex):
    # rounding keeps float noise from flipping the order of near-ties
    return (round(z.real, 9), round(z.imag, 9), z.real, z.imag)


def _frames(cfg: MarkedConfiguration) -> Iterable[tuple[tuple[int, int, int], list[int]]]:
    """Yield (reference indices, free indices) for every admissible frame."""
    if isinstance(cfg.marking, Triple):
        marked = cfg.marking.indices
        rest = [i for i in range(6) if i not in marked]
        for perm in itertools.permutations(marked):
            yield perm, rest
    else:
        for order in itertools.permutations(cfg.marking.pairs):
            for flips in itertools.product((False, True), repeat=3):
                ps = [p[::-1] if f else p for p, f in zip(order, flips)]
                yield tuple(p[0] for p in ps), [p[1] for p in ps]


def _normal_b(cfg, refs, free) -> tuple[complex, ...]:
    a, b, c = (cfg.points[i] for i in refs)
    images = [cross_ratio(cfg.points[i], a, b, c) for i in free]
    if cfg.kind == "triple":
        images.sort(key=_order_key)
    return tuple(images)


def normalize(cfg: MarkedConfiguration) -> NormalizedConfiguration:
    """Send the reference points named by the marking to ``0, 1, INF``.

    The marking's stored order picks the frame: the marked triple in order,
    or the first entry of each pair in order.  Use :func:`canonical_form`
    for a representative independent of that order.
    """
    refs, free = next(iter(_frames(cfg)))
    return NormalizedConfiguration(_normal_b(cfg, refs, free), cfg.kind)


def all_normal_forms(cfg: MarkedConfiguration) -> list[tuple[complex, ...]]:
    """Normalized b-tuples over every frame ordering (6 for triples, 48 for pairs)."""
    return [_normal_b(cfg, refs, free) for refs, free in _frames(cfg)]


def canonical_form(cfg: MarkedConfiguration) -> NormalizedConfiguration:
    """Lexicographically least normal form over all admissible frames."""
    best = min(all_normal_forms(cfg), key=lambda t: [_order_key(z) for z in t])
    return NormalizedConfiguration(best, cfg.kind)


def _as_marked(cfg) -> MarkedConfiguration:
    return cfg.to_marked() if isinstance(cfg, NormalizedConfiguration) else cfg


def equivalent(cfg1, cfg2, tol: float = 1e-8) -> bool:
    """True iff a marking-respecting Möbius map carries ``cfg1`` onto ``cfg2``.

    Accepts marked or normalized configurations.  Point agreement is tested in
    the chordal metric with tolerance ``tol``.
    """
    cfg1, cfg2 = _as_marked(cfg1), _as_marked(cfg2)
    if cfg1.kind != cfg2.kind:
        raise KleinError(f"marking kinds differ: {cfg1.kind} vs {cfg2.kind}")
    target = normalize(cfg2).b
    return any(
        all(chordal_distance(x, y) <= tol for x, y in zip(form, target))
        for form in all_normal_forms(cfg1)
    )


def normalized_distance(n1: NormalizedConfiguration, n2: NormalizedConfiguration) -> float:
    """Max chordal distance between corresponding free points."""
    return max(chordal_distance(x, y) for x, y in zip(n1.b, n2.b))


def make_configuration(points: Sequence, marking) -> MarkedConfiguration:
    """Convenience constructor accepting a raw triple or list of pairs."""
    if not isinstance(marking, (Triple, PairPartition)):
        marking = list(marking)
        if len(marking) == 3 and all(isinstance(m, (int, np.integer)) for m in marking):
            marking = Triple(tuple(marking))
        else:
            marking = PairPartition(tuple(tuple(p) for p in marking))
    return MarkedConfiguration(tuple(points), marking)

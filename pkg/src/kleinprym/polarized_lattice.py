"""Polarized complex tori given by period matrices ``[Z D]``.

Floating point is confined to one place, :func:`integer_coordinates`, which
solves for real lattice coordinates and snaps them to small-denominator
rationals.  Everything downstream (polarization types, kernels, pullbacks)
is exact integer or rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import smith
from .errors import KleinError, LatticeError, LocusError

SNAP_TOL = 1e-9
MAX_DENOMINATOR = 64
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class PolarizationType:
    d: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        if not d or any(x <= 0 for x in d):
            raise KleinError(f"polarization type needs positive integers, got {self.d}")
        if any(b % a for a, b in zip(d, d[1:])):
            raise KleinError(f"divisibility chain fails for {d}")
        object.__setattr__(self, "d", d)

    @property
    def g(self) -> int:
        return len(self.d)

    def __iter__(self):
        return iter(self.d)


D4 = PolarizationType((1, 1, 4))
D2 = PolarizationType((1, 2, 2))
PRINCIPAL = PolarizationType((1, 1, 1))


def _as_type(D) -> PolarizationType:
    return D if isinstance(D, PolarizationType) else PolarizationType(tuple(D))


@dataclass(frozen=True, eq=False)
class PolarizedPeriodMatrix:
    """A point ``Z`` of the Siegel upper half-space with a polarization type."""

    Z: np.ndarray
    D: PolarizationType

    def __post_init__(self):
        Z = np.array(self.Z, dtype=complex)
        D = _as_type(self.D)
        g = D.g
        if Z.shape != (g, g):
            raise LocusError(f"Z must be {g}x{g}, got shape {Z.shape}")
        if np.linalg.norm(Z - Z.T) >= 1e-12 * max(1.0, np.linalg.norm(Z)):
            raise LocusError("Z is not symmetric")
        eig = np.linalg.eigvalsh((Z.imag + Z.imag.T) / 2)
        if eig.min() <= 1e-12:
            raise LocusError("Im Z is not positive definite")
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)
        object.__setattr__(self, "D", D)

    @property
    def g(self) -> int:
        return self.D.g

    @property
    def periods(self) -> np.ndarray:
        """The ``g x 2g`` matrix ``[Z D]`` whose columns span the lattice."""
        return np.hstack([self.Z, np.diag(np.array(self.D.d, dtype=complex))])


def _periods(lattice) -> np.ndarray:
    if isinstance(lattice, PolarizedPeriodMatrix):
        return lattice.periods
    P = np.atleast_2d(np.asarray(lattice, dtype=complex))
    if P.shape[1] != 2 * P.shape[0]:
        raise KleinError(f"period matrix must be g x 2g, got {P.shape}")
    return P


@dataclass(frozen=True)
class Coordinates:
    """Real coordinates of a vector with respect to lattice generators.

    ``values`` are Fractions when every component snapped to a rational with
    small denominator, otherwise floats.
    """

    values: tuple
    rational: bool

    @property
    def integral(self) -> bool:
        return self.rational and all(v.denominator == 1 for v in self.values)

    def as_ints(self) -> tuple[int, ...]:
        if not self.integral:
            raise LatticeError(f"vector is not in the lattice: {self.values}")
        return tuple(int(v) for v in self.values)


def _real_system(P: np.ndarray) -> np.ndarray:
    return np.vstack([P.real, P.imag])


def _snap(x, tol, max_denominator) -> Coordinates:
    snapped = []
    for xi in x:
        r = round(float(xi))
        if abs(xi - r) <= tol:  # integers are by far the common case
            snapped.append(Fraction(r))
            continue
        f = Fraction(float(xi)).limit_denominator(max_denominator)
        if abs(float(f) - xi) > tol:
            return Coordinates(tuple(float(t) for t in x), False)
        snapped.append(f)
    return Coordinates(tuple(snapped), True)


def lattice_coordinates(vectors, lattice, tol: float = SNAP_TOL,
                        max_denominator: int = MAX_DENOMINATOR) -> list[Coordinates]:
    """:func:`integer_coordinates` for the columns of ``vectors`` (one solve)."""
    P = _periods(lattice)
    V = np.asarray(vectors, dtype=complex).reshape(P.shape[0], -1)
    R = _real_system(P)
    if np.linalg.cond(R) > MAX_CONDITION:
        raise LatticeError("lattice coordinate system is ill-conditioned")
    X = np.linalg.solve(R, np.vstack([V.real, V.imag]))
    return [_snap(X[:, j], tol, max_denominator) for j in range(X.shape[1])]


def integer_coordinates(v, lattice, tol: float = SNAP_TOL,
                        max_denominator: int = MAX_DENOMINATOR) -> Coordinates:
    """Solve ``v = [Z D] x`` for real ``x`` and snap to nearby rationals."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    return lattice_coordinates(v[:, None], lattice, tol, max_denominator)[0]


def omega(u: Sequence, v: Sequence, D) -> Fraction:
    """The alternating form with ``omega(Z[i], D[i]) = d_i``.

    Coordinates are taken in the basis ``Z[1..g], D[1..g]``.
    """
    d = _as_type(D).d
    g = len(d)
    if len(u) != 2 * g or len(v) != 2 * g:
        raise KleinError("coordinate vectors must have length 2g")
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    return sum(d[i] * (u[i] * v[g + i] - u[g + i] * v[i]) for i in range(g))


def alternating_matrix(D) -> list[list[int]]:
    d = _as_type(D).d
    g = len(d)
    J = [[0] * (2 * g) for _ in range(2 * g)]
    for i, di in enumerate(d):
        J[i][g + i] = di
        J[g + i][i] = -di
    return J


@dataclass(frozen=True, eq=False)
class AnalyticHom:
    """A homomorphism of complex tori given by its analytic representation.

    ``F`` is ``g_target x g_source``.  ``source`` is a ``g_s x 2g_s`` period
    matrix (or a :class:`PolarizedPeriodMatrix`); ``target`` likewise.
    """

    F: np.ndarray
    source: object
    target: object

    def __post_init__(self):
        F = np.atleast_2d(np.asarray(self.F, dtype=complex))
        Ps, Pt = _periods(self.source), _periods(self.target)
        if F.shape != (Pt.shape[0], Ps.shape[0]):
            raise KleinError(f"F has shape {F.shape}, expected {(Pt.shape[0], Ps.shape[0])}")
        object.__setattr__(self, "F", F)

    @property
    def source_periods(self) -> np.ndarray:
        return _periods(self.source)

    @property
    def target_periods(self) -> np.ndarray:
        return _periods(self.target)

    def image_coordinates(self) -> list[Coordinates]:
        """Target-lattice coordinates of the images of the source generators."""
        return lattice_coordinates(self.F @ self.source_periods, self.target)

    def integer_matrix(self) -> list[list[int]]:
        """Rational representation: column j holds the image of source generator j."""
        cols = []
        for j, c in enumerate(self.image_coordinates()):
            if not c.integral:
                raise LatticeError(f"not a homomorphism: generator {j} maps to {c.values}")
            cols.append(c.as_ints())
        return smith.transpose(cols)

    def compose(self, other: "AnalyticHom") -> "AnalyticHom":
        """``self o other``."""
        return AnalyticHom(self.F @ other.F, other.source, self.target)


def identity_hom(A: PolarizedPeriodMatrix) -> AnalyticHom:
    return AnalyticHom(np.eye(A.g), A, A)


def is_primitive(coords: Sequence[int]) -> bool:
    return math.gcd(*(int(c) for c in coords)) == 1


def restricted_polarization_type(embedding: AnalyticHom, target: PolarizedPeriodMatrix | None = None) -> int:
    """Type of the polarization of ``target`` restricted to an elliptic curve."""
    target = embedding.target if target is None else target
    if embedding.source_periods.shape != (1, 2):
        raise KleinError("restricted type is defined here for 1-dimensional sources")
    hom = AnalyticHom(embedding.F, embedding.source, target)
    M = hom.integer_matrix()
    c1, c2 = (tuple(row[j] for row in M) for j in range(2))
    if not (is_primitive(c1) and is_primitive(c2)):
        raise LatticeError(f"generator images are not primitive: {c1}, {c2}")
    value = omega(c1, c2, _as_type(target.D))
    if value == 0:
        raise LatticeError("generator images span an isotropic sublattice")
    return abs(int(value))


@dataclass(frozen=True)
class KernelGenerator:
    order: int
    coordinates: tuple[Fraction, ...]  # w.r.t. source lattice generators, in [0, 1)
    point: tuple[complex, ...]  # lift to the universal cover of the source


@dataclass(frozen=True)
class IsogenyKernelReport:
    order: int
    elementary_divisors: tuple[int, ...]
    generators: tuple[KernelGenerator, ...]

    def __post_init__(self):
        if self.order != math.prod(self.elementary_divisors):
            raise KleinError("kernel order disagrees with elementary divisors")

    def elements(self) -> frozenset:
        return generated_subgroup([g.coordinates for g in self.generators], self.dimension)

    @property
    def dimension(self) -> int:
        return len(self.elementary_divisors)


def reduce_mod1(coords) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) - math.floor(Fraction(c)) for c in coords)


def generated_subgroup(gens, length: int | None = None) -> frozenset:
    """All elements of the finite subgroup of ``(Q/Z)^n`` spanned by ``gens``."""
    gens = [reduce_mod1(g) for g in gens]
    n = length if length is not None else len(gens[0])
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = reduce_mod1(a + b for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def isogeny_kernel(hom: AnalyticHom) -> IsogenyKernelReport:
    """Kernel of an isogeny of equal-dimensional tori.

    With ``M`` the integer matrix of the map on lattices, a source point with
    real coordinates ``y`` is killed iff ``M y`` is integral, so the kernel is
    ``M^{-1} Z^n / Z^n``.  Writing ``U M V = S`` in Smith form, its generators
    are ``V e_k / s_k``.
    """
    Ps = hom.source_periods
    if Ps.shape != hom.target_periods.shape:
        raise KleinError("isogeny_kernel needs tori of equal dimension")
    M = hom.integer_matrix()
    if smith.int_det(M) == 0:
        raise LatticeError("not an isogeny")
    S, U, V = smith.smith_normal_form(M)
    n = len(S)
    divisors = tuple(S[i][i] for i in range(n))
    gens = []
    for k, s in enumerate(divisors):
        if s == 1:
            continue
        y = reduce_mod1(Fraction(V[i][k], s) for i in range(n))
        point = Ps @ np.array([float(c) for c in y])
        gens.append(KernelGenerator(s, y, tuple(complex(p) for p in point)))
    return IsogenyKernelReport(abs(smith.int_det(M)), divisors, tuple(gens))


def kernel_coordinates_of(points, source) -> list[tuple[Fraction, ...]]:
    """Source-lattice coordinates of given points of the universal cover."""
    out = []
    for p in points:
        c = integer_coordinates(p, source)
        if not c.rational:
            raise LatticeError(f"point {p} is not a torsion point of the source")
        out.append(reduce_mod1(c.values))
    return out


def pullback_gram(hom: AnalyticHom, D=None) -> list[list[int]]:
    """Gram matrix ``M^T J_D M`` of the pulled-back form in source coordinates."""
    D = _as_type(D if D is not None else hom.target.D)
    M = hom.integer_matrix()
    return smith.matmul(smith.transpose(M), smith.matmul(alternating_matrix(D), M))


def type_of_alternating_form(gram) -> tuple[int, ...]:
    """Polarization type of a nondegenerate integral alternating form."""
    divisors = sorted(smith.elementary_divisors(gram))
    if 0 in divisors:
        raise LatticeError("alternating form is degenerate")
    pairs = divisors[0::2]
    if divisors[1::2] != pairs:
        raise LatticeError(f"elementary divisors {divisors} do not come in pairs")
    return tuple(pairs)


def polarization_type_of_pullback(hom: AnalyticHom, targetD=None) -> tuple[int, ...]:
    return type_of_alternating_form(pullback_gram(hom, targetD))


@dataclass(frozen=True)
class PolarizationKernel:
    """Group structure of the kernel of ``lambda: A -> A^``.

    ``invariants`` lists the cyclic factors ``Z/n`` with ``n > 1``.
    """

    invariants: tuple[int, ...]
    order: int
    two_torsion_order: int
    two_torsion_generators: tuple[tuple[Fraction, ...], ...] = field(default=())


def two_torsion_in_kernel_of_lambda(D) -> PolarizationKernel:
    """The kernel of the polarization isogeny is ``prod (Z/d_i)^2``.

    Elements are written in coordinates w.r.t. the lattice basis, each factor
    ``Z/d_i`` generated by ``1/d_i``.  The 2-torsion subgroup is spanned by
    ``1/2`` in each factor with ``d_i`` even.
    """
    d = _as_type(D).d
    factors = tuple(x for x in d for _ in range(2))
    invariants = tuple(x for x in factors if x > 1)
    gens = []
    for k, x in enumerate(factors):
        if x % 2 == 0:
            gens.append(tuple(Fraction(1, 2) if i == k else Fraction(0) for i in range(len(factors))))
    return PolarizationKernel(invariants, math.prod(factors), 2 ** len(gens), tuple(gens))


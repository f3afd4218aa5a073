"""Prym maps of Klein coverings of genus-2 curves and their inverses.

A non-isotropic covering is encoded by six points with a marked triple,
normalized to ``0, 1, INF | b1, b2, b3``.  Its Prym variety is
``(E1 x E2 x E3)/K`` where ``Ei`` is branched at ``0, 1, INF, bi``; its
period matrix lies in the locus ``Z4`` with polarization ``(1, 1, 4)``.

An isotropic covering is encoded by three pairs ``(0, b1), (1, b2),
(INF, b3)``.  ``Ei`` is branched at the four points outside pair ``i`` with
its marked 2-torsion point given by the two remaining pairs; the Prym has a
period matrix in ``Z2`` with polarization ``(1, 2, 2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config_p1 import (
    INF,
    MarkedConfiguration,
    NormalizedConfiguration,
    cross_ratio,
    normalize,
)
from .elliptic_periods import modular_lambda, tau_from_branch_points
from .errors import DegenerateError, InvariantViolation, KleinError, LocusError
from .polarized_lattice import (
    D2,
    D4,
    AnalyticHom,
    IsogenyKernelReport,
    PolarizationType,
    PolarizedPeriodMatrix,
    generated_subgroup,
    isogeny_kernel,
    kernel_coordinates_of,
    polarization_type_of_pullback,
    restricted_polarization_type,
    two_torsion_in_kernel_of_lambda,
)

NON_ISOTROPIC = "non_isotropic"
ISOTROPIC = "isotropic"
CASES = (NON_ISOTROPIC, ISOTROPIC)

MEMBERSHIP_TOL = 1e-9

_HALF = Fraction(1, 2)
_O = Fraction(0)

# Target-lattice coordinates of F_i(first period), F_i(second period).
EXPECTED_EMBEDDING_COORDS = {
    NON_ISOTROPIC: (
        ((2, 0, 1, 0, 0, 0), (0, 0, 0, 0, -2, 1)),
        ((2, 2, 1, 0, 0, 0), (0, 0, 0, 2, 2, -1)),
        ((0, 2, 1, 0, 0, 0), (0, 0, 0, -2, 0, 1)),
    ),
    ISOTROPIC: (
        ((2, -1, -1, 0, 0, 0), (0, 0, 0, 1, 0, 0)),
        ((0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 1, 0)),
        ((0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 1)),
    ),
}

EXPECTED = {
    NON_ISOTROPIC: dict(
        D=D4,
        det_factor=1 / 16,
        restricted=(4, 4, 4),
        kernel_order=16,
        divisors=(1, 1, 2, 2, 2, 2),
        pullback=(4, 4, 4),
        two_torsion_in_ker_lambda=4,
    ),
    ISOTROPIC: dict(
        D=D2,
        det_factor=0.5,
        restricted=(2, 2, 2),
        kernel_order=2,
        divisors=(1, 1, 1, 1, 1, 2),
        pullback=(2, 2, 2),
        two_torsion_in_ker_lambda=16,
    ),
}


def _check_upper(z: Sequence[complex]) -> tuple[complex, complex, complex]:
    z = tuple(complex(x) for x in z)
    if len(z) != 3:
        raise KleinError("need three half-periods")
    if any(x.imag <= 0 for x in z):
        raise LocusError(f"half-periods must have positive imaginary part: {z}")
    return z


def build_Z4(z1: complex, z2: complex, z3: complex) -> PolarizedPeriodMatrix:
    z1, z2, z3 = _check_upper((z1, z2, z3))
    Z = np.array(
        [
            [(z2 + z3) / 4, z2 / 4, -(z2 + z3) / 2],
            [z2 / 4, (z1 + z2) / 4, -(z1 + z2) / 2],
            [-(z2 + z3) / 2, -(z1 + z2) / 2, z1 + z2 + z3],
        ]
    )
    return PolarizedPeriodMatrix(Z, D4)


def build_Z2(z1: complex, z2: complex, z3: complex) -> PolarizedPeriodMatrix:
    z1, z2, z3 = _check_upper((z1, z2, z3))
    Z = np.array(
        [
            [(2 * z1 + z2 + z3) / 4, z2 / 2, z3 / 2],
            [z2 / 2, z2, 0],
            [z3 / 2, 0, z3],
        ]
    )
    return PolarizedPeriodMatrix(Z, D2)


def z4_residuals(Z) -> np.ndarray:
    """Residuals of the three linear equations cutting out Z4."""
    Z = np.asarray(Z)
    return np.array(
        [
            -2 * Z[0, 0] - Z[2, 0],
            Z[1, 0] - (Z[0, 0] + Z[1, 1] - Z[2, 2] / 4),
            -2 * Z[1, 1] - Z[2, 1],
        ]
    )


def z2_residuals(Z) -> np.ndarray:
    """Residuals of the three linear equations cutting out Z2."""
    Z = np.asarray(Z)
    return np.array([Z[2, 2] - 2 * Z[2, 0], Z[2, 1], Z[1, 1] - 2 * Z[1, 0]])


def locus_residual(Z, case: str) -> float:
    Z = np.asarray(Z)
    r = z4_residuals(Z) if case == NON_ISOTROPIC else z2_residuals(Z)
    return float(np.max(np.abs(r)) / max(1.0, np.max(np.abs(Z))))


def in_locus(Z, case: str, tol: float = MEMBERSHIP_TOL) -> bool:
    return locus_residual(Z, case) <= tol


def half_periods_from_matrix(Z, case: str) -> tuple[complex, complex, complex]:
    """Read ``(z1, z2, z3)`` back off a matrix in Z4 or Z2."""
    Z = np.asarray(Z)
    if case == NON_ISOTROPIC:
        z2 = 4 * Z[0, 1]
        return 4 * Z[1, 1] - z2, z2, 4 * Z[0, 0] - z2
    z2, z3 = Z[1, 1], Z[2, 2]
    return (4 * Z[0, 0] - z2 - z3) / 2, z2, z3


def embeddings(A: PolarizedPeriodMatrix, z: Sequence[complex], case: str) -> list[AnalyticHom]:
    """The three elliptic curves ``f_i: E_i -> A`` of the locus construction."""
    z1, z2, z3 = z
    if case == NON_ISOTROPIC:
        return [
            AnalyticHom([[0], [-0.5], [1]], [[z1, 4]], A),
            AnalyticHom([[0.5], [0.5], [-1]], [[z2, 4]], A),
            AnalyticHom([[-0.5], [0], [1]], [[z3, 4]], A),
        ]
    return [
        AnalyticHom([[1], [0], [0]], [[z1, 1]], A),
        AnalyticHom([[0.5], [1], [0]], [[z2, 2]], A),
        AnalyticHom([[0.5], [0], [1]], [[z3, 2]], A),
    ]


def addition_map(A: PolarizedPeriodMatrix, z: Sequence[complex], case: str) -> AnalyticHom:
    """``f1 + f2 + f3: E1 x E2 x E3 -> A``.

    The source basis is ordered like ``[Z D]``: the three ``z``-periods, then
    the three real periods.
    """
    homs = embeddings(A, z, case)
    F = np.hstack([h.F for h in homs])
    P = np.array([h.source_periods[0] for h in homs])
    source = np.hstack([np.diag(P[:, 0]), np.diag(P[:, 1])])
    return AnalyticHom(F, source, A)


def expected_kernel_points(z: Sequence[complex], case: str) -> list[tuple[complex, ...]]:
    """Generators of ``ker(f1 + f2 + f3)`` as points of ``C^3``."""
    z1, z2, z3 = (complex(x) for x in z)
    if case == NON_ISOTROPIC:
        return [(z1 / 2, z2 / 2, 0), (0, z2 / 2, z3 / 2), (2, 2, 0), (0, 2, 2)]
    return [(z1 / 2, z2 / 2, z3 / 2)]


@dataclass(frozen=True, eq=False)
class PrymResult:
    period_matrix: PolarizedPeriodMatrix
    case: str
    z: tuple[complex, complex, complex]
    kernel_report: IsogenyKernelReport
    restricted_types: tuple[int, int, int]

    def __post_init__(self):
        if self.case not in CASES:
            raise KleinError(f"unknown case {self.case!r}")

    @property
    def Z(self) -> np.ndarray:
        return self.period_matrix.Z

    @property
    def D(self) -> PolarizationType:
        return self.period_matrix.D


def _assemble(z, case: str) -> PrymResult:
    A = build_Z4(*z) if case == NON_ISOTROPIC else build_Z2(*z)
    result = PrymResult(
        A,
        case,
        tuple(z),
        isogeny_kernel(addition_map(A, z, case)),
        tuple(restricted_polarization_type(h) for h in embeddings(A, z, case)),
    )
    report = verify_prym(result)
    if not report.passed:
        raise InvariantViolation(f"structural invariant violated: {report.failures()}")
    return result


def _as_normalized(cfg, kind: str) -> NormalizedConfiguration:
    if isinstance(cfg, MarkedConfiguration):
        cfg = normalize(cfg)
    if cfg.kind != kind:
        raise KleinError(f"expected a {kind} configuration, got {cfg.kind}")
    return cfg


def isotropic_branch_data(b: Sequence[complex]) -> list[tuple]:
    """Branch points of ``E1, E2, E3`` for pairs ``(0,b1), (1,b2), (INF,b3)``.

    ``Ei`` is branched at the two pairs other than pair ``i``, listed as
    ``(p, p', q, q')`` with ``p < q`` in pair order.  Under the identity label
    the pair ``{p, p'}`` goes to ``{0, 1}`` and ``{q, q'}`` to ``{INF, m}``, so
    the marked point, the partition into those two pairs, is ``[tau/2]``.
    """
    pairs = [(0j, b[0]), (1 + 0j, b[1]), (INF, b[2])]
    out = []
    for i in range(3):
        (p, pp), (q, qq) = (pairs[j] for j in range(3) if j != i)
        out.append((p, pp, q, qq))
    return out


def isotropic_legendre(b: Sequence[complex]) -> tuple[complex, complex, complex]:
    """Legendre parameters of the three elliptic curves (closed form)."""
    return tuple(cross_ratio(qq, p, pp, q) for p, pp, q, qq in isotropic_branch_data(b))


def prym_forward_non_isotropic(cfg) -> PrymResult:
    """Period matrix in Z4 of the Prym of a non-isotropic Klein covering."""
    cfg = _as_normalized(cfg, "triple")
    taus = [tau_from_branch_points((0j, 1 + 0j, INF, bi)) for bi in cfg.b]
    return _assemble(tuple(4 * t for t in taus), NON_ISOTROPIC)


def prym_forward_isotropic(cfg) -> PrymResult:
    """Period matrix in Z2 of the Prym of an isotropic Klein covering."""
    cfg = _as_normalized(cfg, "pairs")
    taus = [tau_from_branch_points(branch) for branch in isotropic_branch_data(cfg.b)]
    return _assemble(tuple(2 * t for t in taus), ISOTROPIC)


def prym_forward(cfg) -> PrymResult:
    kind = cfg.kind
    if kind == "triple":
        return prym_forward_non_isotropic(cfg)
    return prym_forward_isotropic(cfg)


def case_for_type(D) -> str:
    d = tuple(D)
    if d == D4.d:
        return NON_ISOTROPIC
    if d == D2.d:
        return ISOTROPIC
    raise LocusError(f"no Prym locus has polarization type {d}")


def solve_isotropic(m: Sequence[complex]) -> list[tuple[complex, complex, complex]]:
    """All ``(b1, b2, b3)`` whose three Legendre parameters equal ``m``.

    Eliminating ``b2 = 1 + (m2 b1 - 1)/m1`` and ``b3 = m2 b1`` leaves
    ``m2 (m3 - 1) b1^2 + (1 + m2 - m1 - m3) b1 + (m1 - 1) = 0``.  Its two roots
    differ by swapping the points inside every pair, so they describe the
    same configuration.
    """
    m1, m2, m3 = (complex(x) for x in m)
    a = m2 * (m3 - 1)
    bq = 1 + m2 - m1 - m3
    c = m1 - 1
    if a == 0:
        raise DegenerateError("degenerate boundary point")
    disc = cmath.sqrt(bq * bq - 4 * a * c)
    # pick the non-cancelling root first, the other from the product of roots
    r1 = (-bq - disc) / (2 * a) if abs(-bq - disc) >= abs(-bq + disc) else (-bq + disc) / (2 * a)
    roots = [r1, c / (a * r1)] if r1 != 0 else [r1]
    out = []
    for b1 in roots:
        b3 = m2 * b1
        b2 = 1 + (b3 - 1) / m1
        out.append((b1, b2, b3))
    return out


def _key(z: complex):
    return (round(z.real, 9), round(z.imag, 9))


def prym_inverse(A, case: str | None = None, tol: float = MEMBERSHIP_TOL) -> NormalizedConfiguration:
    """Recover the marked six points from a period matrix in Z4 or Z2.

    Accepts a :class:`PolarizedPeriodMatrix` or a :class:`PrymResult`.  For the
    isotropic case the two algebraic solutions are the same configuration;
    the one with the lexicographically smaller ``b1`` is returned.
    """
    if isinstance(A, PrymResult):
        A = A.period_matrix
    inferred = case_for_type(A.D)
    if case is not None and case != inferred:
        raise LocusError(f"case {case} does not match polarization type {A.D.d}")
    case = inferred
    if not in_locus(A.Z, case, tol):
        raise LocusError("not in Prym locus")
    z = half_periods_from_matrix(A.Z, case)
    scale = 4 if case == NON_ISOTROPIC else 2
    try:
        m = [modular_lambda(zi / scale) for zi in z]
        if case == NON_ISOTROPIC:
            return NormalizedConfiguration(tuple(m), "triple")
        candidates = []
        for b in solve_isotropic(m):
            try:
                candidates.append(NormalizedConfiguration(b, "pairs"))
            except DegenerateError:
                continue
        if not candidates:
            raise DegenerateError("no admissible configuration")
        return min(candidates, key=lambda n: _key(n.b[0]))
    except (DegenerateError, ZeroDivisionError) as exc:
        raise DegenerateError(f"degenerate boundary point: {exc}") from exc


# -- verification ---------------------------------------------------------


@dataclass
class Check:
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> dict:
        return {k: c.detail for k, c in self.checks.items() if not c.passed}

    def to_dict(self) -> dict:
        return {k: {"pass": c.passed, "detail": c.detail} for k, c in self.checks.items()}


def _sum_zero_kernel_elements() -> frozenset:
    """``{(a, b, c) in (E1 x E2 x E3)[2] : a + b + c = 0}`` in lattice coordinates."""
    halves = [(_O, _O), (_HALF, _O), (_O, _HALF), (_HALF, _HALF)]
    out = set()
    for a in halves:
        for b in halves:
            c = tuple((x + y) % 1 for x, y in zip(a, b))
            out.add((a[0], b[0], c[0], a[1], b[1], c[1]))
    return frozenset(out)


def verify_prym(result: PrymResult, tol: float = MEMBERSHIP_TOL) -> VerificationReport:
    """Re-derive every structural claim about a forward result, exactly where possible."""
    report = VerificationReport()
    checks = report.checks
    case = result.case
    exp = EXPECTED[case]
    A = result.period_matrix
    z = result.z

    def run(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a failing computation is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        checks[name] = Check(bool(ok), detail)

    run("polarization_type", lambda: (A.D == exp["D"], f"D={A.D.d}, expected {exp['D'].d}"))

    def membership():
        r = locus_residual(A.Z, case)
        return r <= tol, f"residual {r:.3e}"

    run("locus_membership", membership)

    def consistency():
        build = build_Z4 if case == NON_ISOTROPIC else build_Z2
        err = float(np.max(np.abs(build(*z).Z - A.Z)))
        return err <= tol * max(1.0, float(np.max(np.abs(A.Z)))), f"max deviation {err:.3e}"

    run("half_period_consistency", consistency)

    def det_identity():
        lhs = float(np.linalg.det(A.Z.imag))
        rhs = exp["det_factor"] * math.prod(x.imag for x in z)
        rel = abs(lhs - rhs) / abs(rhs)
        return rel <= 1e-10, f"det Im Z = {lhs:.12g}, expected {rhs:.12g}"

    run("det_identity", det_identity)

    def embedding_coords():
        got = []
        for h in embeddings(A, z, case):
            M = h.integer_matrix()
            got.append(tuple(tuple(row[j] for row in M) for j in range(2)))
        return tuple(got) == EXPECTED_EMBEDDING_COORDS[case], f"images {got}"

    run("embedding_coordinates", embedding_coords)

    def primitivity():
        bad = []
        for i, h in enumerate(embeddings(A, z, case)):
            M = h.integer_matrix()
            for j in range(2):
                if math.gcd(*(row[j] for row in M)) != 1:
                    bad.append((i + 1, j))
        return not bad, f"non-primitive images: {bad}" if bad else "all primitive"

    run("embedding_primitivity", primitivity)

    def restricted():
        types = tuple(restricted_polarization_type(h) for h in embeddings(A, z, case))
        return types == exp["restricted"] == tuple(result.restricted_types), f"types {types}"

    run("restricted_types", restricted)

    kernel = None

    def kernel_order():
        nonlocal kernel
        kernel = isogeny_kernel(addition_map(A, z, case))
        ok = kernel.order == exp["kernel_order"] and kernel.order == result.kernel_report.order
        return ok, f"order {kernel.order}"

    run("kernel_order", kernel_order)
    run(
        "kernel_divisors",
        lambda: (
            kernel.elementary_divisors == exp["divisors"],
            f"divisors {kernel.elementary_divisors}",
        ),
    )

    def kernel_generators():
        source = addition_map(A, z, case).source_periods
        expected = generated_subgroup(kernel_coordinates_of(expected_kernel_points(z, case), source), 6)
        got = kernel.elements()
        reported = result.kernel_report.elements()
        return got == expected == reported, f"|kernel|={len(got)}, |expected group|={len(expected)}"

    run("kernel_generators", kernel_generators)

    if case == NON_ISOTROPIC:
        run(
            "kernel_sum_zero",
            lambda: (kernel.elements() == _sum_zero_kernel_elements(), "ker = {(a,b,-a-b)}"),
        )
    else:

        def projections():
            nonzero = []
            for g in kernel.generators:
                y = g.coordinates
                nonzero.append(tuple((y[i], y[i + 3]) != (0, 0) for i in range(3)))
            ok = len(nonzero) == 1 and all(nonzero[0])
            return ok, f"projection nonzero flags {nonzero}"

        run("kernel_projections", projections)

    def pullback():
        t = polarization_type_of_pullback(addition_map(A, z, case), A.D)
        return t == exp["pullback"], f"pullback type {t}"

    run("pullback_type", pullback)

    def ker_lambda():
        k = two_torsion_in_kernel_of_lambda(A.D)
        return (
            k.two_torsion_order == exp["two_torsion_in_ker_lambda"],
            f"|ker lambda|={k.order}, 2-torsion of order {k.two_torsion_order}",
        )

    run("kernel_of_polarization", ker_lambda)
    return report

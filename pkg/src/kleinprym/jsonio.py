"""JSON encodings of configurations, period matrices and Prym results.

Complex numbers are ``[re, im]`` pairs, the point at infinity is the string
``"inf"`` and rationals are ``[numerator, denominator]`` pairs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .config_p1 import INF, MarkedConfiguration, NormalizedConfiguration, PairPartition, Triple
from .errors import KleinError
from .polarized_lattice import IsogenyKernelReport, KernelGenerator, PolarizedPeriodMatrix
from .prym_map import PrymResult, VerificationReport
from .torsion_f2 import KleinSubgroup, classify_subgroup


class SchemaError(KleinError):
    """Input JSON does not match the expected shape."""


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise SchemaError(f"complex number must be [re, im], got {v!r}")
    re, im = v
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
        raise SchemaError(f"complex components must be numbers, got {v!r}")
    return complex(re, im)


def point_to_json(p):
    return "inf" if p is INF else complex_to_json(p)


def point_from_json(v):
    if isinstance(v, str):
        if v.lower() != "inf":
            raise SchemaError(f"unknown point {v!r}")
        return INF
    return complex_from_json(v)


def config_to_json(cfg) -> dict:
    if isinstance(cfg, NormalizedConfiguration):
        cfg = cfg.to_marked()
    if isinstance(cfg.marking, Triple):
        marking = {"triple": list(cfg.marking.indices)}
    else:
        marking = {"pairs": [list(p) for p in cfg.marking.pairs]}
    return {"points": [point_to_json(p) for p in cfg.points], "marking": marking}


def config_from_json(data) -> MarkedConfiguration:
    try:
        points = [point_from_json(p) for p in data["points"]]
        marking = data["marking"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"configuration needs 'points' and 'marking': {exc}") from exc
    if not isinstance(marking, dict) or len(marking) != 1:
        raise SchemaError("marking must be {'triple': [...]} or {'pairs': [...]}")
    if "triple" in marking:
        m = Triple(tuple(marking["triple"]))
    elif "pairs" in marking:
        m = PairPartition(tuple(tuple(p) for p in marking["pairs"]))
    else:
        raise SchemaError(f"unknown marking {sorted(marking)}")
    return MarkedConfiguration(tuple(points), m)


def matrix_to_json(A: PolarizedPeriodMatrix) -> dict:
    return {
        "Z": [[complex_to_json(x) for x in row] for row in A.Z],
        "D": list(A.D.d),
    }


def matrix_from_json(data) -> PolarizedPeriodMatrix:
    try:
        Z = np.array([[complex_from_json(x) for x in row] for row in data["Z"]])
        D = tuple(data["D"])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"period matrix needs 'Z' and 'D': {exc}") from exc
    return PolarizedPeriodMatrix(Z, D)


def fraction_to_json(f: Fraction) -> list[int]:
    return [f.numerator, f.denominator]


def fraction_from_json(v) -> Fraction:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v)):
        raise SchemaError(f"rational must be [num, den], got {v!r}")
    return Fraction(v[0], v[1])


def kernel_to_json(k: IsogenyKernelReport) -> dict:
    return {
        "order": k.order,
        "elementary_divisors": list(k.elementary_divisors),
        "generators": [
            {
                "order": g.order,
                "coordinates": [fraction_to_json(c) for c in g.coordinates],
                "point": [complex_to_json(p) for p in g.point],
            }
            for g in k.generators
        ],
    }


def kernel_from_json(data) -> IsogenyKernelReport:
    gens = tuple(
        KernelGenerator(
            int(g["order"]),
            tuple(fraction_from_json(c) for c in g["coordinates"]),
            tuple(complex_from_json(p) for p in g["point"]),
        )
        for g in data["generators"]
    )
    return IsogenyKernelReport(int(data["order"]), tuple(data["elementary_divisors"]), gens)


def prym_to_json(r: PrymResult) -> dict:
    out = {"case": r.case}
    out.update(matrix_to_json(r.period_matrix))
    out["z"] = [complex_to_json(x) for x in r.z]
    out["kernel"] = kernel_to_json(r.kernel_report)
    out["restricted_types"] = list(r.restricted_types)
    return out


def prym_from_json(data) -> PrymResult:
    try:
        return PrymResult(
            matrix_from_json(data),
            data["case"],
            tuple(complex_from_json(x) for x in data["z"]),
            kernel_from_json(data["kernel"]),
            tuple(data["restricted_types"]),
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed Prym result: {exc}") from exc


def report_to_json(report: VerificationReport) -> dict:
    return {"passed": report.passed, "checks": report.to_dict()}


def subgroup_to_json(g: KleinSubgroup) -> dict:
    label = classify_subgroup(g)
    if isinstance(label, Triple):
        lab = {"triple": list(label.indices)}
    else:
        lab = {"pairs": [list(p) for p in label.pairs]}
    return {
        "elements": [list(e.subset) for e in g.elements],
        "isotropic": g.isotropic,
        "label": lab,
    }

"""2-torsion of a genus-2 Jacobian as subsets of Weierstrass points.

Label the Weierstrass points 1..6.  A 2-torsion class is an even subset of
{1..6} modulo complement; addition is symmetric difference and the Weil
pairing is the parity of the intersection.  Every class has a unique
representative of size 0 or 2, which is what we store.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .config_p1 import PairPartition, Triple
from .errors import KleinError

LABELS = (1, 2, 3, 4, 5, 6)
_FULL = frozenset(LABELS)


@dataclass(frozen=True, order=True)
class TwoTorsionClass:
    subset: tuple[int, ...]

    def __post_init__(self):
        s = frozenset(self.subset)
        if not s <= _FULL or len(s) != len(self.subset) or len(s) % 2:
            raise KleinError(f"not an even subset of 1..6: {self.subset}")
        if len(s) > 2:
            s = _FULL - s
        object.__setattr__(self, "subset", tuple(sorted(s)))

    @classmethod
    def of(cls, labels: Iterable[int]) -> "TwoTorsionClass":
        return cls(tuple(labels))

    @property
    def is_zero(self) -> bool:
        return not self.subset

    def __add__(self, other: "TwoTorsionClass") -> "TwoTorsionClass":
        return add(self, other)

    def __repr__(self):
        return "{" + ",".join(map(str, self.subset)) + "}"


ZERO = TwoTorsionClass(())


def add(a: TwoTorsionClass, b: TwoTorsionClass) -> TwoTorsionClass:
    return TwoTorsionClass(tuple(sorted(set(a.subset) ^ set(b.subset))))


def weil_pairing(a: TwoTorsionClass, b: TwoTorsionClass) -> int:
    return len(set(a.subset) & set(b.subset)) % 2


def all_classes() -> list[TwoTorsionClass]:
    """The 16 elements of JH[2], zero first."""
    return [ZERO] + [TwoTorsionClass(p) for p in itertools.combinations(LABELS, 2)]


@dataclass(frozen=True)
class KleinSubgroup:
    elements: tuple[TwoTorsionClass, ...]
    isotropic: bool

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        if len(elems) != 4 or ZERO not in elems:
            raise KleinError(f"not a Klein four-subgroup: {self.elements}")
        for a, b in itertools.product(elems, repeat=2):
            if add(a, b) not in elems:
                raise KleinError(f"not closed under addition: {self.elements}")
        iso = all(weil_pairing(a, b) == 0 for a, b in itertools.combinations(elems, 2))
        if iso != self.isotropic:
            raise KleinError("isotropy flag disagrees with the Weil pairing")
        object.__setattr__(self, "elements", elems)

    @property
    def nonzero(self) -> tuple[TwoTorsionClass, ...]:
        return tuple(e for e in self.elements if not e.is_zero)


def generate(a: TwoTorsionClass, b: TwoTorsionClass) -> KleinSubgroup:
    """Subgroup spanned by two distinct nonzero classes."""
    if a.is_zero or b.is_zero or a == b:
        raise KleinError("generators must be distinct and nonzero")
    return KleinSubgroup((ZERO, a, b, add(a, b)), weil_pairing(a, b) == 0)


def enumerate_klein_subgroups() -> list[KleinSubgroup]:
    seen = {}
    nonzero = all_classes()[1:]
    for a, b in itertools.combinations(nonzero, 2):
        g = generate(a, b)
        seen.setdefault(g.elements, g)
    return [seen[k] for k in sorted(seen)]


def subgroup_from_pairs(partition) -> KleinSubgroup:
    """Isotropic subgroup {0, w_i - w_j, ...} from a partition into 3 pairs."""
    pairs = partition.pairs if isinstance(partition, PairPartition) else partition
    flat = [i for p in pairs for i in p]
    if len(pairs) != 3 or sorted(flat) != list(LABELS):
        raise KleinError(f"not a partition of 1..6 into pairs: {pairs}")
    return KleinSubgroup((ZERO,) + tuple(TwoTorsionClass(tuple(p)) for p in pairs), True)


def subgroup_from_triple(triple) -> KleinSubgroup:
    """Non-isotropic subgroup spanned by differences of three Weierstrass points."""
    idx = tuple(triple.indices if isinstance(triple, Triple) else triple)
    if len(idx) != 3 or len(set(idx)) != 3 or not set(idx) <= _FULL:
        raise KleinError(f"not a triple of distinct labels in 1..6: {idx}")
    i, j, k = idx
    return KleinSubgroup(
        (ZERO, TwoTorsionClass((i, j)), TwoTorsionClass((j, k)), TwoTorsionClass((i, k))),
        False,
    )


def classify_subgroup(group: KleinSubgroup):
    """Inverse of the two constructors: a ``Triple`` or a ``PairPartition``.

    Labels are 1..6 and the returned tuples are sorted.
    """
    reps = [set(e.subset) for e in group.nonzero]
    if group.isotropic:
        if any(a & b for a, b in itertools.combinations(reps, 2)):
            raise KleinError("isotropic subgroup without disjoint representatives")
        return PairPartition(tuple(sorted(tuple(sorted(r)) for r in reps)))
    union = set().union(*reps)
    if len(union) != 3:
        raise KleinError("non-isotropic subgroup not spanned by a triple")
    return Triple(tuple(sorted(union)))

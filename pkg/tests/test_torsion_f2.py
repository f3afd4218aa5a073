import itertools
from math import comb

import pytest

from kleinprym.config_p1 import PairPartition, Triple
from kleinprym.errors import KleinError
from kleinprym.torsion_f2 import (
    ZERO,
    KleinSubgroup,
    TwoTorsionClass,
    add,
    all_classes,
    classify_subgroup,
    enumerate_klein_subgroups,
    generate,
    subgroup_from_pairs,
    subgroup_from_triple,
    weil_pairing,
)

C = TwoTorsionClass


def all_pair_partitions(labels=(1, 2, 3, 4, 5, 6)):
    if not labels:
        yield ()
        return
    first, rest = labels[0], labels[1:]
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in all_pair_partitions(remaining):
            yield ((first, partner),) + tail


def test_canonical_representative():
    assert C((3, 4, 5, 6)) == C((1, 2))
    assert C((1, 2, 3, 4, 5, 6)) == ZERO
    assert C((2, 1)).subset == (1, 2)
    with pytest.raises(KleinError):
        C((1, 2, 3))


def test_add_examples():
    assert add(C((1, 2)), C((1, 2))) == ZERO
    assert add(C((1, 2)), C((3, 4))) == C((5, 6))
    assert add(C((1, 2)), C((2, 3))) == C((1, 3))


def test_weil_examples():
    assert weil_pairing(C((1, 2)), C((1, 2))) == 0
    assert weil_pairing(C((1, 2)), C((2, 3))) == 1
    assert weil_pairing(C((1, 2)), C((3, 4))) == 0


def test_weil_well_defined_on_complements():
    # |A n B| and |A^c n B| have the same parity for even B
    for a, b in itertools.product(itertools.combinations(range(1, 7), 2), repeat=2):
        comp = tuple(sorted(set(range(1, 7)) - set(a)))
        assert len(set(a) & set(b)) % 2 == len(set(comp) & set(b)) % 2


def test_group_axioms():
    cls = all_classes()
    assert len(set(cls)) == 16
    for a, b, c in itertools.product(cls, repeat=3):
        assert add(add(a, b), c) == add(a, add(b, c))
    for a in cls:
        assert add(a, ZERO) == a and add(a, a) == ZERO


def test_weil_pairing_symplectic():
    cls = all_classes()
    for a, b, c in itertools.product(cls, repeat=3):
        assert weil_pairing(add(a, b), c) == (weil_pairing(a, c) + weil_pairing(b, c)) % 2
    assert all(weil_pairing(a, a) == 0 for a in cls)
    for a in cls[1:]:
        assert any(weil_pairing(a, b) for b in cls)


def test_enumeration_counts():
    groups = enumerate_klein_subgroups()
    # Gaussian binomial [4 choose 2]_2 = (2^4-1)(2^4-2)/((2^2-1)(2^2-2)) = 35
    assert len(groups) == (15 * 14) // (3 * 2) == 35
    assert sum(g.isotropic for g in groups) == 15 == len(list(all_pair_partitions()))
    assert sum(not g.isotropic for g in groups) == 20 == comb(6, 3)


def test_brute_force_enumeration():
    nonzero = all_classes()[1:]
    found = set()
    for a, b in itertools.permutations(nonzero, 2):
        found.add(frozenset({ZERO, a, b, add(a, b)}))
    assert found == {frozenset(g.elements) for g in enumerate_klein_subgroups()}


def test_from_pairs_examples():
    g = subgroup_from_pairs(((1, 2), (3, 4), (5, 6)))
    assert g.isotropic and set(g.elements) == {ZERO, C((1, 2)), C((3, 4)), C((5, 6))}
    g = subgroup_from_pairs(((1, 3), (2, 5), (4, 6)))
    assert g.isotropic and set(g.elements) == {ZERO, C((1, 3)), C((2, 5)), C((4, 6))}
    with pytest.raises(KleinError):
        subgroup_from_pairs(((1, 2), (2, 3), (4, 5)))


def test_from_triple_examples():
    g = subgroup_from_triple((1, 2, 3))
    assert not g.isotropic and set(g.elements) == {ZERO, C((1, 2)), C((2, 3)), C((1, 3))}
    g = subgroup_from_triple((4, 5, 6))
    assert set(g.elements) == {ZERO, C((4, 5)), C((5, 6)), C((4, 6))}
    with pytest.raises(KleinError):
        subgroup_from_triple((1, 1, 2))


def test_classify_examples():
    assert classify_subgroup(subgroup_from_triple((1, 2, 3))) == Triple((1, 2, 3))
    assert classify_subgroup(subgroup_from_pairs(((1, 2), (3, 4), (5, 6)))) == PairPartition(
        ((1, 2), (3, 4), (5, 6)))


def test_bijections():
    triples = list(itertools.combinations(range(1, 7), 3))
    partitions = list(all_pair_partitions())
    groups = enumerate_klein_subgroups()
    for t in triples:
        assert classify_subgroup(subgroup_from_triple(t)) == Triple(t)
    for p in partitions:
        assert classify_subgroup(subgroup_from_pairs(p)) == PairPartition(p)
    assert {subgroup_from_triple(t) for t in triples} == {g for g in groups if not g.isotropic}
    assert {subgroup_from_pairs(p) for p in partitions} == {g for g in groups if g.isotropic}
    for g in groups:
        label = classify_subgroup(g)
        back = subgroup_from_triple(label) if isinstance(label, Triple) else subgroup_from_pairs(label)
        assert back == g


def test_structure_of_representatives():
    for g in enumerate_klein_subgroups():
        reps = [set(e.subset) for e in g.nonzero]
        sizes = {len(a & b) for a, b in itertools.combinations(reps, 2)}
        assert sizes == ({0} if g.isotropic else {1})


def test_invalid_subgroups():
    with pytest.raises(KleinError):
        KleinSubgroup((ZERO, C((1, 2)), C((3, 4)), C((1, 3))), True)
    with pytest.raises(KleinError):
        KleinSubgroup((ZERO, C((1, 2)), C((2, 3)), C((1, 3))), True)
    with pytest.raises(KleinError):
        generate(C((1, 2)), C((1, 2)))

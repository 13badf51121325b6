import itertools
import random

import pytest

from lattice_ramsey.errors import ColoringError, InvalidParamsError, NotAdmissibleError, SearchBudgetExceeded
from lattice_ramsey.homothety import HomothetyMap, identity
from lattice_ramsey.lattices import BooleanLattice, ChainLattice, DivisionLattice, sequence_member
from lattice_ramsey.ramsey import (
    AdmissibleTriple,
    Coloring,
    MonoWitness,
    admissible_triples,
    canonical_colorings,
    check_anchored,
    check_L_predicate,
    count_canonical_colorings,
    find_anchored,
    find_mono_homothety,
    pigeonhole_bound,
    ramsey_number,
    validate_witness,
)
from lattice_ramsey.systems import members

from oracles import brute_force_mono

B1, B2, B3 = BooleanLattice(1), BooleanLattice(2), BooleanLattice(3)


def test_coloring_validation():
    Coloring(B1, 2, (1, 2))
    for k, colors in [(2, (1,)), (2, (1, 3)), (2, (0, 1)), (0, (1, 1)), (2, (1, True))]:
        with pytest.raises(ColoringError):
            Coloring(B1, k, colors)
    with pytest.raises(ColoringError):
        Coloring.from_dict({"lattice": B1.descriptor(), "k": 2})
    chi = Coloring(B2, 3, (3, 1, 3, 2))
    assert Coloring.from_dict(chi.to_dict()) == chi
    assert chi.canonical().colors == (1, 2, 1, 3)


@pytest.mark.parametrize("size,k", [(1, 1), (3, 2), (4, 2), (5, 3), (6, 3), (6, 4)])
def test_canonical_colorings_cover_each_class_once(size, k):
    canon = list(canonical_colorings(size, k))
    assert canon == sorted(canon) and len(set(canon)) == len(canon)
    L = ChainLattice(size, 1) if size > 1 else DivisionLattice(1)  # any lattice of that size
    brute = {Coloring(L, k, c).canonical().colors for c in itertools.product(range(1, k + 1), repeat=size)}
    assert set(canon) == brute
    assert count_canonical_colorings(size, k) == len(canon)


def test_canonical_colorings_with_prefix():
    assert list(canonical_colorings(3, 2, (1, 2))) == [(1, 2, 1), (1, 2, 2)]


def test_admissible_triples():
    triples = list(admissible_triples(B2, 2))
    # pairs with a minimum: the 5 comparable pairs, each giving one triple
    assert len(triples) == 5
    assert all(B2.leq(t.p, t.p2) and t.p != t.p2 for t in triples)
    whole = list(admissible_triples(B2, 4))
    assert [(t.p, t.p2) for t in whole] == [(0, 1), (0, 2), (0, 3)]
    with pytest.raises(NotAdmissibleError):
        AdmissibleTriple(frozenset({1, 2}), 1, 2).validate(B2)
    with pytest.raises(NotAdmissibleError):
        AdmissibleTriple(frozenset({0, 1}), 0, 0).validate(B2)


def test_check_anchored_examples():
    f = identity(B2)
    whole = AdmissibleTriple(frozenset(range(4)), 0, 3)
    assert check_anchored(f, whole, 0, 3, Coloring(B2, 1, (1,) * 4))
    # the three non-top elements split colors
    assert not check_anchored(f, whole, 0, 3, Coloring(B2, 2, (1, 2, 1, 1)))
    # the top may differ freely
    assert check_anchored(f, whole, 0, 3, Coloring(B2, 2, (1, 1, 1, 2)))
    pair = AdmissibleTriple(frozenset({0, 3}), 0, 3)
    assert check_anchored(f, pair, 0, 3, Coloring(B2, 2, (1, 2, 2, 2)))
    assert not check_anchored(f, pair, 0, 2, Coloring(B2, 1, (1,) * 4))
    with pytest.raises(InvalidParamsError):
        check_anchored(f, pair, 3, 0, Coloring(B2, 1, (1,) * 4))
    with pytest.raises(NotAdmissibleError):
        check_anchored(f, AdmissibleTriple(frozenset({1, 2}), 1, 2), 0, 3, Coloring(B2, 1, (1,) * 4))


def test_find_mono_examples():
    w = find_mono_homothety(2, Coloring(B2, 2, (1, 1, 1, 1)))
    assert w.map == identity(B2) and w.color == 1
    w = find_mono_homothety(1, Coloring(B2, 2, (1, 2, 2, 1)))
    assert w.map.images == (0, 3) and w.map.scale == 2 and w.color == 1
    C = ChainLattice(3, 1)
    assert find_mono_homothety(1, Coloring(C, 2, (1, 2, 1)), "hj") is None
    # the identity is the only lattice homothety of a 3-chain into itself
    assert find_mono_homothety(1, Coloring(C, 2, (1, 2, 1)), "trivial") is None


def test_find_mono_budget():
    chi = Coloring(ChainLattice(3, 4), 1, (1,) * 81)
    with pytest.raises(SearchBudgetExceeded):
        find_mono_homothety(2, Coloring(ChainLattice(3, 4), 2, tuple(1 + (i % 2) for i in range(81))), budget=3)
    assert find_mono_homothety(2, chi) is not None


CONFIGS = [("boolean", None, "trivial", 1, 2), ("boolean", None, "trivial", 2, 3), ("chain", 3, "hj", 1, 2),
           ("chain", 3, "trivial", 1, 2), ("partition", None, "trivial", 2, 3), ("division", None, "trivial", 2, 12)]


@pytest.mark.parametrize("family,t,system,n,N", CONFIGS)
def test_find_mono_matches_brute_force(family, t, system, n, N):
    rng = random.Random(7)
    P, Q = sequence_member(family, n, t), sequence_member(family, N, t)
    for _ in range(25):
        k = rng.choice((2, 3))
        colors = tuple(rng.randint(1, k) for _ in range(Q.size))
        w = find_mono_homothety(n, Coloring(Q, k, colors), system)
        want = brute_force_mono(P, Q, colors, system)
        assert (w is None) == (want is None)
        if w is not None:
            assert w.map.images == want.images
            assert validate_witness(w, Coloring(Q, k, colors), system)


def test_witness_validation_rejects_wrong_color():
    chi = Coloring(B2, 2, (1, 2, 2, 1))
    good = MonoWitness(HomothetyMap(B1, B2, (0, 3), 2), 1)
    assert validate_witness(good, chi, "trivial")
    assert not validate_witness(MonoWitness(good.map, 2), chi, "trivial")
    assert not validate_witness(MonoWitness(HomothetyMap(B1, B2, (0, 1), 1), 1), chi, "trivial")


def test_canonicalization_soundness_sampled():
    rng = random.Random(3)
    Q = ChainLattice(3, 2)
    for _ in range(40):
        colors = tuple(rng.randint(1, 3) for _ in range(Q.size))
        chi = Coloring(Q, 3, colors)
        perm = rng.sample([1, 2, 3], 3)
        moved = Coloring(Q, 3, tuple(perm[c - 1] for c in colors))
        for system in ("trivial", "hj"):
            a, b = find_mono_homothety(1, chi, system), find_mono_homothety(1, moved, system)
            assert (a is None) == (b is None)
            if a is not None:
                assert a.map == b.map and b.color == perm[a.color - 1]
        assert chi.canonical() == moved.canonical()


def test_L_predicate_examples():
    assert check_L_predicate(2, 2, 1, 2, 2).holds
    res = check_L_predicate(1, 2, 1, 3, 1)
    assert not res.holds and res.failure is not None
    with pytest.raises(InvalidParamsError):
        check_L_predicate(1, 5, 1, 2, 2)
    with pytest.raises(InvalidParamsError):
        check_L_predicate(2, 2, 1, 1, 2)


def test_L_predicate_monotone_spot_check():
    # recorded as expected, not assumed: bool(2) embeds into bool(3)
    for s, k, l in [(2, 1, 2), (2, 2, 2), (2, 1, 3)]:
        a = check_L_predicate(1, s, k, l, 2)
        if a.holds:
            assert check_L_predicate(1, s, k, l, 3).holds


def test_L_predicate_budget():
    with pytest.raises(SearchBudgetExceeded) as exc:
        check_L_predicate(1, 2, 2, 2, 3, coloring_budget=10)
    assert exc.value.covered == 0.0


def test_ramsey_examples():
    r = ramsey_number("boolean", "trivial", n=1, k=2, N_max=3)
    assert (r.value, r.status) == (2, "exact")
    assert [lv["verdict"] for lv in r.levels] == ["fails", "works"]
    assert r.levels[1]["colorings_checked"] == count_canonical_colorings(4, 2)
    r = ramsey_number("partition", "trivial", n=2, k=2, N_max=4)
    assert r.value == 3
    r = ramsey_number("chain", "hj", n=1, k=2, N_max=2, t=3)
    assert r.value is None and r.status == "exceeds-cap" and r.lower_bound == 3
    assert [lv["N"] for lv in r.certificates] == [1, 2]


def test_ramsey_certificates_replay():
    for family, system, n, t, nmax in [("boolean", "trivial", 1, None, 2), ("chain", "hj", 1, 3, 2),
                                       ("partition", "trivial", 2, None, 3)]:
        r = ramsey_number(family, system, n=n, k=2, N_max=nmax, t=t)
        assert r.certificates
        for cert in r.certificates:
            chi = Coloring.from_dict(cert["bad_coloring"])
            assert chi == chi.canonical()
            assert find_mono_homothety(n, chi, system) is None


def test_ramsey_budget_status():
    r = ramsey_number("boolean", "trivial", n=1, k=3, N_max=4, coloring_budget=20)
    assert r.status == "budget-exceeded" and r.value is None
    assert r.levels[-1]["verdict"] == "budget-exceeded"


@pytest.mark.parametrize("family,t,k", [("boolean", None, 2), ("boolean", None, 3), ("chain", 2, 2),
                                        ("partition", None, 2), ("chain", 2, 3)])
def test_pigeonhole_consistency(family, t, k):
    bound = pigeonhole_bound(family, k, t)
    assert bound is not None
    n = 1 if family != "partition" else 2  # A(n) is a two-element chain
    assert sequence_member(family, n, t).size == 2
    r = ramsey_number(family, "trivial", n=n, k=k, N_max=bound, t=t)
    assert r.value is not None and r.value <= bound


def test_anchored_at_min_and_max_gives_full_witness():
    # S = A(n), p = min, p' = max: when q and q' share a color the whole image is one color
    rng = random.Random(11)
    P, Q = B2, B3
    triple = AdmissibleTriple(frozenset(range(P.size)), P.minimum, P.maximum)
    found = 0
    for _ in range(30):
        chi = Coloring(Q, 2, tuple(rng.randint(1, 2) for _ in range(Q.size)))
        for q, q2 in itertools.combinations(range(Q.size), 2):
            if not Q.leq(q, q2) or chi[q] != chi[q2]:
                continue
            f = find_anchored(P, triple, q, q2, chi)
            if f is not None:
                found += 1
                assert check_anchored(f, triple, q, q2, chi)
                assert validate_witness(MonoWitness(f, chi[q]), chi, "trivial")
    assert found > 0


def test_find_anchored_agrees_with_check_anchored():
    P, Q = B1, B2
    chi = Coloring(Q, 2, (1, 2, 1, 2))
    triple = AdmissibleTriple(frozenset({0, 1}), 0, 1)
    for q, q2 in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]:
        f = find_anchored(P, triple, q, q2, chi)
        ok = [g for g in members("trivial", P, Q) if check_anchored(g, triple, q, q2, chi)]
        assert (f is None) == (not ok)
        if f is not None:
            assert f == ok[0]


def test_automorphism_pruning_and_workers_agree():
    base = ramsey_number("chain", "hj", n=1, k=2, N_max=2, t=3)
    pruned = ramsey_number("chain", "hj", n=1, k=2, N_max=2, t=3, automorphisms=True)
    par = ramsey_number("chain", "hj", n=1, k=2, N_max=2, t=3, workers=4)
    assert [lv["verdict"] for lv in base.levels] == [lv["verdict"] for lv in pruned.levels]
    assert base.to_dict() == par.to_dict()
    b = ramsey_number("boolean", "trivial", n=1, k=2, N_max=3)
    assert b.value == ramsey_number("boolean", "trivial", n=1, k=2, N_max=3, automorphisms=True).value
    assert b.to_dict() == ramsey_number("boolean", "trivial", n=1, k=2, N_max=3, workers=3).to_dict()

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coboundary, cocycle_ok, table_funcs
from picardkit.abelian import make_group
from picardkit.cocycle import (
    CocycleSpace,
    Cochain2,
    QuadraticMap,
    SymCocycle3,
    are_cohomologous,
    bilinear_symmetry_rho,
    coboundary_of,
    cochain_from_function,
    cocycle_from_functions,
    enumerate_h3_sym,
    hom_mod_two_count,
    quadratic_of,
    quadratic_two_torsion_violations,
    reduce_cyclic,
    rho_cocycle,
    sphere_cocycle,
    standard_h_mu,
    subtract_coboundary,
    validate_quadratic,
    validate_symmetric_cocycle,
    zero_cocycle,
)
from picardkit.corpus import GROUPS_UP_TO_4, random_cochain, random_cocycle, random_permutative
from picardkit.errors import InvalidCocycle, NotNormalized, SearchTooLarge, TorsionViolation

Z2, Z3, Z4, V4 = (make_group(f) for f in ([2], [3], [4], [2, 2]))


def test_xy_on_z2_is_valid():
    s = rho_cocycle(Z2, Z2(1))
    assert validate_symmetric_cocycle(s).ok
    assert s.c.tolist() == [[0, 0], [0, 1]]


def test_z4_values_fail_antisymmetry():
    s = SymCocycle3(Z2, Z4, None, [[0, 0], [0, 1]])
    rep = validate_symmetric_cocycle(s)
    assert not rep.ok and "antisymmetry" in rep.failed_axioms()
    bad = [v for v in rep.violations if v.axiom == "antisymmetry"]
    assert bad[0].instance == ((1,), (1,))


def test_sphere_and_zero_forms():
    assert validate_symmetric_cocycle(sphere_cocycle()).ok
    Zg = make_group([0])
    zc = zero_cocycle(Zg, Z2)
    assert zc.form == "zero" and validate_symmetric_cocycle(zc).ok
    assert sphere_cocycle().c_at(Zg(3), Zg(5)).coords == (1,)


def test_every_violation_is_reported():
    s = SymCocycle3(Z3, Z3, None, np.ones((3, 3), dtype=int))
    rep = validate_symmetric_cocycle(s)
    anti = [v for v in rep.violations if v.axiom == "antisymmetry"]
    # c = 1 everywhere: c(x, y) = -c(y, x) fails for all nine pairs
    assert len(anti) == 9


def test_h_mu_passes_pentagon_for_all_mu():
    for n in (2, 3, 4, 6):
        for M in (Z2, Z3, Z4, V4):
            for mu in M.elements:
                if not (n * mu).is_zero():
                    with pytest.raises(TorsionViolation):
                        standard_h_mu(n, mu)
                    continue
                s = SymCocycle3(make_group([n]), M, standard_h_mu(n, mu), None)
                failed = validate_symmetric_cocycle(s).failed_axioms()
                assert not failed & {"normalization", "pentagon"}


def test_h_mu_rho_valid_exactly_when_admissible():
    for n in (2, 3, 4):
        G = make_group([n])
        for M in (Z2, Z3, Z4, V4):
            for mu, a in itertools.product(M.elements, repeat=2):
                if not (n * mu).is_zero():
                    continue
                s = SymCocycle3(G, M, standard_h_mu(n, mu), bilinear_symmetry_rho(G, a))
                expected = cocycle_ok(G, M, *table_funcs(s))
                assert validate_symmetric_cocycle(s).ok == expected
                assert expected == ((2 * a).is_zero() and (n * a).is_zero() and mu == n * a)


def test_biadditive_rho():
    with pytest.raises(TorsionViolation):
        bilinear_symmetry_rho(Z2, [Z4(1)])
    c = bilinear_symmetry_rho(V4, [Z2(1), Z2(0)])
    assert validate_symmetric_cocycle(SymCocycle3(V4, Z2, None, c)).ok
    q = quadratic_of(SymCocycle3(V4, Z2, None, c))
    assert q.values() == [(0,), (0,), (1,), (1,)]


def test_coboundary_convention():
    # coboundaries must be symmetric cocycles for odd M as well
    rng = np.random.default_rng(0)
    for G, M in [(Z3, Z3), (Z4, Z4), (V4, Z4), (Z3, Z2)]:
        k = random_cochain(rng, G, M)
        dh, dc = coboundary_of(k)
        assert validate_symmetric_cocycle(SymCocycle3(G, M, dh, dc)).ok
        kf = lambda x, y: M.elements[k.k[x.index, y.index]]
        odh, odc = coboundary(G, M, kf)
        assert cocycle_ok(G, M, odh, odc)
        assert all(M.elements[dc[x.index, y.index]] == odc(x, y) for x in G.elements for y in G.elements)


def test_opposite_coboundary_sign_breaks_the_hexagon():
    k = cochain_from_function(Z3, Z3, lambda x, y: x.coords[0] * x.coords[0] * y.coords[0])
    dh, dc = coboundary_of(k)
    flipped = SymCocycle3(Z3, Z3, dh, Z3.neg_table[dc])
    assert "hexagon" in validate_symmetric_cocycle(flipped).failed_axioms()


def test_not_normalized_cochain():
    with pytest.raises(NotNormalized):
        coboundary_of(Cochain2(Z2, Z2, [[1, 0], [0, 0]]))


def test_are_cohomologous_witness():
    rng = np.random.default_rng(4)
    for G, M in [(Z2, Z2), (Z3, Z3), (Z4, Z2), (V4, Z2)]:
        base = random_permutative(rng, G, M)
        k = random_cochain(rng, G, M)
        moved = subtract_coboundary(base, k)
        w = are_cohomologous(base, moved)
        assert w is not None
        # the witness is lexicographically first, so it need not equal k, but it works
        assert subtract_coboundary(base, w) == moved
    assert are_cohomologous(zero_cocycle(Z2, Z2), rho_cocycle(Z2, Z2(1))) is None


def test_search_budget():
    with pytest.raises(SearchTooLarge):
        are_cohomologous(zero_cocycle(V4, Z4), zero_cocycle(V4, Z4), budget=1000)


def test_quadratic_maps():
    for G in GROUPS_UP_TO_4:
        for M in GROUPS_UP_TO_4:
            for s in itertools.islice(CocycleSpace(G, M), 50):
                q = quadratic_of(s)
                assert validate_quadratic(q).ok
                assert quadratic_two_torsion_violations(q) == []


def test_quadratic_axioms_admit_odd_two_torsion():
    q = QuadraticMap(Z2, Z4, [0, 1])
    assert validate_quadratic(q).ok
    assert quadratic_two_torsion_violations(q) == [(1,)]
    assert not validate_quadratic(QuadraticMap(Z3, Z3, [0, 1, 0])).ok


def test_reduce_cyclic():
    rng = np.random.default_rng(5)
    for n in (2, 3, 4):
        G = make_group([n])
        for M in (Z2, Z4, V4):
            s = random_cocycle(rng, G, M)
            r = reduce_cyclic(s)
            assert validate_symmetric_cocycle(r).ok
            assert are_cohomologous(s, r) is not None
    with pytest.raises(InvalidCocycle):
        reduce_cyclic(SymCocycle3(Z2, Z4, None, [[0, 0], [0, 1]]))


def raw_cocycles_on_z2(M):
    """Every table on G = Z/2 passing the reference validator (raw search)."""
    G = Z2
    out = []
    for hv in itertools.product(M.elements, repeat=4):
        # only h(x, 1, z) can be nonzero
        def h(x, y, z, hv=hv):
            return hv[2 * x.coords[0] + z.coords[0]] if y.coords[0] else M.zero
        for cv in itertools.product(M.elements, repeat=4):
            def c(x, y, cv=cv):
                return cv[2 * x.coords[0] + y.coords[0]]
            if cocycle_ok(G, M, h, c):
                out.append(cocycle_from_functions(G, M, h, c))
    return out


@pytest.mark.parametrize("M", [Z2, Z3, Z4, V4], ids=str)
def test_cocycle_space_matches_raw_search(M):
    raw = raw_cocycles_on_z2(M)
    space = list(CocycleSpace(Z2, M))
    key = lambda s: s.h.tobytes() + s.c.tobytes()
    assert sorted(map(key, raw)) == sorted(map(key, space))


def test_cocycle_space_members_validate():
    for G, M in [(Z3, Z3), (Z4, Z2), (V4, Z2), (Z3, Z4)]:
        space = CocycleSpace(G, M)
        for s in itertools.islice(space, 200):
            assert validate_symmetric_cocycle(s).ok


@pytest.mark.parametrize("G,M,count", [(Z2, Z2, 2), (Z3, Z3, 1), (Z4, Z2, 2), (Z2, Z4, 2), (V4, Z2, 4), (Z3, Z2, 1)],
                         ids=lambda v: str(v))
def test_h3_counts(G, M, count):
    res = enumerate_h3_sym(G, M)
    assert res.class_count == count == hom_mod_two_count(G, M)
    assert all(size == res.coboundary_count for size in res.class_sizes)
    assert res.cocycle_count == count * res.coboundary_count
    # representatives are pairwise inequivalent
    for a, b in itertools.combinations(res.representatives, 2):
        assert are_cohomologous(a, b) is None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(GROUPS_UP_TO_4), st.sampled_from(GROUPS_UP_TO_4), st.integers(0, 2**32 - 1))
def test_random_cocycles_are_valid(G, M, seed):
    s = random_cocycle(np.random.default_rng(seed), G, M)
    assert validate_symmetric_cocycle(s).ok
    assert cocycle_ok(G, M, *table_funcs(s))

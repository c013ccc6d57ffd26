import numpy as np
import pytest

from oracles import abelian_invariants_by_orders
from picardkit.abelian import identity_hom, make_group, zero_hom
from picardkit.cocycle import Cochain2, SymCocycle3, rho_cocycle, subtract_coboundary
from picardkit.cokernel import (
    POSITIONS,
    CokBigroupoid,
    CokOneCell,
    cok_homotopy_groups,
    double_category_check,
    long_exact_sequence,
    postnikov_tower,
)
from picardkit.corpus import GROUPS_UP_TO_4, bilinear_table, functor_corpus, small_functors
from picardkit.errors import BudgetExceeded, InvalidFunctor, Mismatch, NotPermutative
from picardkit.picard import PicFunctor, alpha0, identity_functor, make_picard, validate_functor

Z2, Z3, Z4, V4, T = (make_group(f) for f in ([2], [3], [4], [2, 2], []))


@pytest.fixture(scope="module")
def corpus():
    return functor_corpus(seed=11, count=25, groups=GROUPS_UP_TO_4, min_nonzero_phi=10)


def xy():
    return make_picard(Z2, Z2, rho_cocycle(Z2, Z2(1)))


def all_one_cells(k):
    F = k.functor
    return [k.one_cell(x, n, u) for x in F.target.g.elements for n in F.source.g.elements for u in F.target.m.elements]


def brute_pi1(F):
    """Loops at the unit as raw pairs (n, u), classes under u ~ u + f1 a,
    composed by (n, u)(n', u') = (n + n', u + u' + phi(n', n))."""
    GC, MC, MD = F.source.g, F.source.m, F.target.m
    loops = [(n, u) for n in GC.elements if F.f0(n).is_zero() for u in MD.elements]

    def cls(p):
        return frozenset((p[0], p[1] + F.f1(a)) for a in MC.elements)

    classes = list({cls(p) for p in loops})

    def mul(c, d):
        (n, u), (m, v) = next(iter(c)), next(iter(d))
        return cls((n + m, u + v + F.phi_at(m, n)))

    unit = cls((GC.zero, MD.zero))
    return abelian_invariants_by_orders(classes, mul, unit)


def test_composition_is_associative_and_unital(corpus):
    for F in corpus[:10]:
        k = CokBigroupoid(F)
        cells = all_one_cells(k)
        by_src = {}
        for a in cells:
            by_src.setdefault(a.src, []).append(a)
        for a in cells[:40]:
            assert k.compose(k.identity(a.src), a) == a
            assert k.compose(a, k.identity(a.tgt)) == a
            for b in by_src[a.tgt][:6]:
                for c in by_src[b.tgt][:6]:
                    assert k.compose(k.compose(a, b), c) == k.compose(a, k.compose(b, c))


def test_inverses(corpus):
    for F in corpus:
        k = CokBigroupoid(F)
        for a in all_one_cells(k)[:50]:
            b = k.inverse(a)
            assert k.check_one_cell(b)
            assert k.compose(a, b) == k.identity(a.src)
            assert k.is_two_isomorphic(k.compose(b, a), k.identity(a.tgt))


def test_cells_and_errors():
    k = CokBigroupoid(identity_functor(xy()))
    a = k.one_cell(Z2(1), Z2(1), Z2(0))
    assert a.tgt == Z2(0) and k.check_one_cell(a)
    with pytest.raises(Mismatch):
        k.compose(a, a)
    t = k.two_cell(a, Z2(1))
    assert k.check_two_cell(t) and t.target.label == Z2(1)
    assert k.vertical(t, k.two_cell(t.target, Z2(1))).target == a
    bad = PicFunctor(xy(), make_picard(T, Z2), zero_hom(Z2, T), identity_hom(Z2))
    with pytest.raises(InvalidFunctor):
        CokBigroupoid(bad)
    s = subtract_coboundary(rho_cocycle(V4, [Z2(1), Z2(0)]), Cochain2(V4, Z2, [[0] * 4, [0] * 4, [0] * 4, [0, 0, 0, 1]]))
    skew = make_picard(V4, Z2, s)
    with pytest.raises(NotPermutative):
        CokBigroupoid(identity_functor(skew))


def test_homotopy_examples():
    hg = cok_homotopy_groups(CokBigroupoid(alpha0(xy())))
    assert (hg.pi0.order, hg.pi1.order, hg.pi2) == (1, 1, Z2)
    F = PicFunctor(make_picard(Z2, T), make_picard(T, Z2), zero_hom(Z2, T), zero_hom(T, Z2))
    hg = cok_homotopy_groups(CokBigroupoid(F))
    assert hg.pi1 == V4 and hg.pi2.order == 1 and hg.agree
    hg = cok_homotopy_groups(CokBigroupoid(identity_functor(xy())))
    assert (hg.pi0.order, hg.pi1.order, hg.pi2.order) == (1, 1, 1)


def test_pi1_can_be_a_nonsplit_extension():
    # ker f0 = Z/2 and coker f1 = Z/2, glued by phi(1, 1) = 1 into Z/4
    src = make_picard(Z2, T)
    tgt = make_picard(T, Z2)
    F = PicFunctor(src, tgt, zero_hom(Z2, T), zero_hom(T, Z2), [[0, 0], [0, 1]])
    assert validate_functor(F).ok
    hg = cok_homotopy_groups(CokBigroupoid(F))
    assert hg.pi1 == Z4 and hg.agree


def test_pi1_against_brute_force(corpus):
    for F in corpus:
        hg = cok_homotopy_groups(CokBigroupoid(F))
        Q = hg.pi1
        assert abelian_invariants_by_orders(Q.elements, lambda a, b: a + b, Q.zero) == brute_pi1(F)
        assert hg.agree
        assert hg.enumeration.group == Q


def test_long_exact_sequence(corpus):
    for F in corpus:
        les = long_exact_sequence(F)
        assert les.ok
        assert list(les.exact) == list(POSITIONS)
        orders = [g.order for g in les.groups]
        # alternating product of orders of a finite exact sequence is 1
        num = orders[0] * orders[2] * orders[4] * orders[6]
        assert num == orders[1] * orders[3] * orders[5]


def test_les_on_alpha0():
    les = long_exact_sequence(alpha0(xy()))
    assert les.ok and les.groups[0] == Z2


def test_tensor_examples():
    k = CokBigroupoid(identity_functor(xy()))
    a = k.one_cell(Z2(1), Z2(1), Z2(0))
    # the interchange twist c(1, 0) vanishes here, the twist c(1, 1) does not
    assert k.tensor(a, k.identity(Z2(0))).label == Z2(0)
    assert k.tensor(a, k.identity(Z2(1))).label == Z2(1)
    with pytest.raises(Mismatch):
        k.tensor(a, CokOneCell(Z2(1), Z2(1), Z2(1), Z2(0)))


def test_tensor_is_functorial_up_to_two_cells(corpus):
    for F in corpus[:8]:
        k = CokBigroupoid(F)
        cells = all_one_cells(k)
        by_src = {}
        for a in cells:
            by_src.setdefault(a.src, []).append(a)
        rng = np.random.default_rng(0)
        for _ in range(60):
            a, c = (cells[rng.integers(len(cells))] for _ in range(2))
            b = by_src[a.tgt][rng.integers(len(by_src[a.tgt]))]
            d = by_src[c.tgt][rng.integers(len(by_src[c.tgt]))]
            lhs = k.tensor(k.compose(a, b), k.compose(c, d))
            rhs = k.compose(k.tensor(a, c), k.tensor(b, d))
            assert k.is_two_isomorphic(lhs, rhs)
            i = k.tensor(k.identity(a.src), k.identity(c.src))
            assert k.is_two_isomorphic(i, k.identity(a.src + c.src))


def test_double_category_on_small_functors():
    count = 0
    for F in small_functors(2):
        rep = double_category_check(F)
        assert rep.ok, rep.as_dict()
        count += 1
    assert count == 56


def test_double_category_interchange_with_odd_symmetry():
    # on 2-groups the interchange check is blind to the orientation of alpha;
    # Z/3 x Z/3 with a nonzero antisymmetric form is not
    G = make_group([3, 3])
    c = bilinear_table(G, Z3, [[Z3(0), Z3(1)], [Z3(2), Z3(0)]])
    src = make_picard(G, Z3, SymCocycle3(G, Z3, None, c))
    tgt = make_picard(T, Z3)
    # f1 = id needs phi(x, y) - phi(y, x) = -c(x, y)
    phi = bilinear_table(G, Z3, [[Z3(0), Z3(2)], [Z3(0), Z3(0)]])
    F = PicFunctor(src, tgt, zero_hom(G, T), identity_hom(Z3), phi)
    assert validate_functor(F).ok
    rep = double_category_check(F, budget=10**9)
    assert rep.ok, rep.as_dict()
    assert rep.checked["interchange"] > 0


def test_double_check_budget():
    with pytest.raises(BudgetExceeded):
        double_category_check(identity_functor(xy()), budget=10)


def test_double_check_detects_a_bad_functor():
    bad = PicFunctor(xy(), make_picard(T, Z2), zero_hom(Z2, T), identity_hom(Z2))
    rep = double_category_check(bad)
    assert not rep.ok


def test_postnikov_examples():
    tower = postnikov_tower(xy())
    assert tower.ok and tower.homotopy.pi2 == Z2
    z4 = make_picard(Z4, Z2, rho_cocycle(Z4, Z2(1)))
    tower = postnikov_tower(z4)
    assert tower.ok and tower.pi2_iso.target == Z2
    assert tower.k0_quadratic.values() == [(0,), (1,), (0,), (1,)]
    u = tower.k0(Z4(2), Z2(1))
    assert (u.src, u.tgt, u.label) == (Z4(2), Z4(2), Z2(1))


def test_postnikov_strictifies_first():
    s = subtract_coboundary(rho_cocycle(V4, [Z2(1), Z2(0)]), Cochain2(V4, Z2, [[0] * 4, [0] * 4, [0] * 4, [0, 0, 0, 1]]))
    tower = postnikov_tower(make_picard(V4, Z2, s))
    assert tower.ok and tower.notes
    assert tower.strict.is_permutative()

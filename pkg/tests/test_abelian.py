import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picardkit.abelian import (
    FgAbGroup,
    GroupHom,
    direct_sum,
    elem_reduce,
    enumerate_elements,
    hom_compose,
    hom_from_images,
    hom_subquotients,
    identity_hom,
    in_subgroup,
    is_exact_at,
    is_isomorphism,
    make_group,
    zero_hom,
)
from picardkit.errors import FactorOne, IllDefinedHom, InfiniteGroup, LengthMismatch

SMALL = [make_group(f) for f in ([], [2], [3], [4], [2, 2], [6], [2, 4], [8], [2, 2, 2], [3, 3])]


def test_invariant_form_and_normalization():
    assert make_group([3, 2]).factors == (6,)
    assert make_group([0, 2]).factors == (2, 0)
    assert make_group([4, 6]).factors == (2, 12)
    assert make_group([]).order == 1
    with pytest.raises(FactorOne):
        make_group([1])
    with pytest.raises(ValueError):
        FgAbGroup((4, 2))
    with pytest.raises(ValueError):
        FgAbGroup((0, 2))


def test_elements_and_reduction():
    G = make_group([2, 4])
    assert G.order == 8 and G.exponent == 4
    assert elem_reduce(G, (3, 7)).coords == (1, 3)
    assert [G.index(x) for x in G.elements] == list(range(8))
    with pytest.raises(LengthMismatch):
        G(1, 2, 3)
    with pytest.raises(InfiniteGroup):
        enumerate_elements(make_group([0]))
    Zg = make_group([0])
    assert (Zg(5) + Zg(-7)).coords == (-2,)


def test_tables_match_element_arithmetic():
    for G in SMALL:
        for x, y in itertools.product(G.elements, repeat=2):
            assert G.elements[G.add_table[x.index, y.index]] == x + y
            assert G.elements[G.sub_table[x.index, y.index]] == x - y
        assert all(G.elements[G.neg_table[x.index]] == -x for x in G.elements)


def test_ill_defined_hom():
    with pytest.raises(IllDefinedHom):
        GroupHom(make_group([2]), make_group([3]), [[1]])
    assert GroupHom(make_group([2]), make_group([4]), [[2]])(make_group([2])(1)).coords == (2,)


def brute_kernel_image(h):
    G, H = h.source, h.target
    ker = [x for x in G.elements if h(x).is_zero()]
    img = {h(x) for x in G.elements}
    return len(ker), len(img), H.order // len(img)


def all_homs(G, H):
    pools = [[u for u in H.elements if (d * u).is_zero()] for d in G.factors]
    for imgs in itertools.product(*pools):
        yield hom_from_images(G, H, list(imgs))


def test_subquotients_against_enumeration():
    for G, H in itertools.product(SMALL[:7], repeat=2):
        for h in all_homs(G, H):
            sub = hom_subquotients(h)
            nk, ni, nc = brute_kernel_image(h)
            assert (sub.kernel.order, sub.image.order, sub.cokernel.order) == (nk, ni, nc)
            # witnesses: inclusion is injective into ker h, projection kills im h
            assert all(h(sub.kernel_inclusion(k)).is_zero() for k in sub.kernel.elements)
            assert len({sub.kernel_inclusion(k) for k in sub.kernel.elements}) == nk
            assert all(sub.cokernel_projection(h(x)).is_zero() for x in G.elements)
            assert all(sub.image_inclusion(sub.corestriction(x)) == h(x) for x in G.elements)


def test_subquotients_infinite():
    Zg, Z4 = make_group([0]), make_group([4])
    sub = hom_subquotients(GroupHom(Zg, Z4, [[1]]))
    assert sub.kernel.factors == (0,) and sub.cokernel.order == 1
    assert sub.kernel_inclusion(sub.kernel.generators()[0]).coords in {(4,), (-4,)}
    sub = hom_subquotients(GroupHom(Zg, Zg, [[6]]))
    assert sub.kernel.rank == 0 and sub.cokernel.factors == (6,)


def test_exactness():
    Z2, Z4 = make_group([2]), make_group([4])
    inc = GroupHom(Z2, Z4, [[2]])
    proj = GroupHom(Z4, Z2, [[1]])
    assert is_exact_at(inc, proj)
    assert not is_exact_at(identity_hom(Z2), identity_hom(Z2))
    double = GroupHom(Z4, Z4, [[2]])
    assert is_exact_at(double, double)
    assert is_isomorphism(identity_hom(Z4)) and not is_isomorphism(double)


def test_direct_sum():
    total, incs, projs = direct_sum(make_group([2]), make_group([3]))
    assert total.factors == (6,)
    for i, (inc, proj) in enumerate(zip(incs, projs)):
        assert hom_compose(proj, inc) == identity_hom(inc.source)


def test_in_subgroup():
    G = make_group([2, 4])
    assert in_subgroup(G(0, 2), [G(1, 1)])
    assert not in_subgroup(G(1, 0), [G(0, 1)])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_composition_matches_pointwise(A, B, C, data):
    f = data.draw(st.sampled_from(list(all_homs(A, B))))
    g = data.draw(st.sampled_from(list(all_homs(B, C))))
    gf = hom_compose(g, f)
    assert all(gf(x) == g(f(x)) for x in A.elements)
    assert np.array_equal(gf.index_map, g.index_map[f.index_map])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_exactness_of_kernel_cokernel_sequences(G, data):
    H = data.draw(st.sampled_from(SMALL))
    h = data.draw(st.sampled_from(list(all_homs(G, H))))
    sub = hom_subquotients(h)
    assert is_exact_at(sub.kernel_inclusion, h)
    assert is_exact_at(h, sub.cokernel_projection)


def test_zero_hom():
    z = zero_hom(make_group([2]), make_group([3]))
    assert z.is_zero()

import itertools

import numpy as np
import pytest

from picardkit.abelian import make_group
from picardkit.cocycle import quadratic_of, rho_cocycle
from picardkit.corpus import GROUPS_UP_TO_4, random_permutative
from picardkit.errors import NotPermutative
from picardkit.picard import make_picard, validate_functor
from picardkit.sphere import (
    Permutation,
    block_sum,
    block_swap,
    free_map,
    free_map_candidates,
    identity_permutation,
    product_transpose,
    ring_cells,
    sign_and_xi,
    sphere,
    sphere_action,
    tensor_symmetry_parity,
)

Z2, Z4 = make_group([2]), make_group([4])


def inversions(p):
    return sum(1 for i, j in itertools.combinations(range(p.size), 2) if p.images[i] > p.images[j])


def test_sphere_cells():
    S = sphere()
    q = quadratic_of(S.cocycle)
    assert q(S.g(5)).coords == (1,) and q(S.g(4)).coords == (0,)
    assert S.cocycle.c_at(S.g(1), S.g(1)).coords == (1,)
    assert S.cocycle.c_at(S.g(2), S.g(2)).coords == (0,)


def test_sign_matches_inversions_on_s4():
    for n in range(5):
        for images in itertools.permutations(range(1, n + 1)):
            p = Permutation(images)
            assert p.parity == inversions(p) % 2
            assert sign_and_xi(p).label.coords == (p.parity,)


def test_sign_examples():
    assert sign_and_xi(Permutation((2, 1))).label.coords == (1,)
    assert sign_and_xi(identity_permutation(4)).label.coords == (0,)
    assert sign_and_xi(Permutation((2, 3, 1))).label.coords == (0,)
    with pytest.raises(ValueError):
        Permutation((1, 1))


def test_sign_is_a_monoidal_homomorphism():
    for n in range(5):
        perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
        for p, q in itertools.product(perms, repeat=2):
            assert p.compose(q).parity == (p.parity + q.parity) % 2
    for m in range(4):
        for n in range(4 - m):
            for p in map(Permutation, itertools.permutations(range(1, m + 1))):
                for q in map(Permutation, itertools.permutations(range(1, n + 1))):
                    assert block_sum(p, q).parity == (p.parity + q.parity) % 2


def test_block_swap_is_the_symmetry():
    for m in range(7):
        for n in range(7 - m):
            assert block_swap(m, n).parity == (m * n) % 2


def test_tensor_symmetry_parity():
    assert ring_cells(2, 3).symmetry.label.coords == (1,)
    assert ring_cells(2, 3).symmetry.at.coords == (6,)
    for n in range(-10, 11):
        assert tensor_symmetry_parity(1, n) == 0
    for m, n in itertools.product(range(-10, 11), repeat=2):
        assert tensor_symmetry_parity(m, n) == tensor_symmetry_parity(n, m)
    # for non-negative sizes the rule is the sign of transposing an m x n grid
    for m, n in itertools.product(range(0, 8), repeat=2):
        assert product_transpose(m, n).parity == tensor_symmetry_parity(m, n)


def test_ring_morphisms():
    assert ring_cells(2, 3).on_morphisms(1, 0).label.coords == (1,)
    assert ring_cells(2, 4).on_morphisms(1, 1).label.coords == (0,)


def free_map_cases():
    cases = []
    for g in GROUPS_UP_TO_4:
        for m in GROUPS_UP_TO_4:
            c = make_picard(g, m, random_permutative(np.random.default_rng(g.order * 7 + m.order), g, m))
            cases += [(c, x) for x in g.elements]
    return cases


def test_free_map_examples():
    c = make_picard(Z4, Z2, rho_cocycle(Z4, Z2(1)))
    F = free_map(c, Z4(1))
    assert F.f0.matrix == ((1,),) and F.f1.matrix == ((1,),)
    assert validate_functor(F).ok
    triv = make_picard(make_group([]), make_group([]))
    assert free_map(triv, triv.g.zero).f1.is_zero()


def test_free_map_corpus():
    cases = free_map_cases()
    assert len(cases) >= 10
    for c, x in cases:
        F = free_map(c, x)
        assert validate_functor(F).ok
        assert F.f1(Z2(1)) == c.cocycle.c_at(x, x)
        assert free_map_candidates(c, x) == [F]


def test_free_map_needs_permutative():
    from picardkit.cocycle import Cochain2, subtract_coboundary

    s = subtract_coboundary(rho_cocycle(Z4, Z2(1)), Cochain2(Z4, Z2, [[0] * 4, [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    with pytest.raises(NotPermutative):
        free_map(make_picard(Z4, Z2, s), Z4(1))


def test_action():
    c = make_picard(Z2, Z2, rho_cocycle(Z2, Z2(1)))
    act = sphere_action(c)
    assert act.on_object(3, Z2(1)) == Z2(1)
    assert act.on_object(0, Z2(1)) == Z2(0)
    cell = act.on_morphism(1, 2, Z2(0), Z2(1))
    assert cell.label.coords == (1,) and cell.at == Z2(0)


def test_action_is_additive_and_functorial():
    for g in GROUPS_UP_TO_4:
        for m in GROUPS_UP_TO_4:
            c = make_picard(g, m, random_permutative(np.random.default_rng(1), g, m))
            act = sphere_action(c)
            for x in g.elements:
                for a, b in itertools.product(range(-3, 4), repeat=2):
                    assert act.on_object(a + b, x) == act.on_object(a, x) + act.on_object(b, x)
                for n in range(-3, 4):
                    for (e1, u1), (e2, u2) in itertools.product(itertools.product(range(2), m.elements), repeat=2):
                        lhs = act.on_morphism(e1 + e2, n, u1 + u2, x)
                        rhs = c.compose(act.on_morphism(e1, n, u1, x), act.on_morphism(e2, n, u2, x))
                        assert lhs == rhs

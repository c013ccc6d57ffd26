"""Small test models: groups, random cocycles and random valid functors."""

from __future__ import annotations

import itertools

import numpy as np

from .abelian import FgAbGroup, GroupHom, hom_from_images, make_group
from .cocycle import Cochain2, SymCocycle3, subtract_coboundary, validate_symmetric_cocycle
from .picard import PicFunctor, PicGroupoid, make_picard, validate_functor

GROUPS_UP_TO_4 = [make_group(f) for f in ([], [2], [3], [4], [2, 2])]
GROUPS_UP_TO_8 = GROUPS_UP_TO_4 + [make_group(f) for f in ([5], [6], [7], [8], [2, 4], [2, 2, 2])]


def torsion_elements(m: FgAbGroup, d: int):
    """Elements killed by d."""
    return [u for u in m.elements if (d * u).is_zero()]


def random_hom(rng: np.random.Generator, g: FgAbGroup, h: FgAbGroup) -> GroupHom:
    images = []
    for d in g.factors:
        choices = torsion_elements(h, d)
        images.append(choices[rng.integers(len(choices))])
    return hom_from_images(g, h, images)


def all_homs(g: FgAbGroup, h: FgAbGroup):
    for images in itertools.product(*(torsion_elements(h, d) for d in g.factors)):
        yield hom_from_images(g, h, list(images))


def bilinear_table(g: FgAbGroup, m: FgAbGroup, coeff) -> np.ndarray:
    """Table of ``(x, y) -> sum_ij x_i y_j coeff[i][j]`` (coeff entries are elements of m)."""
    ca = g.coord_array
    out = np.zeros((g.order, g.order, m.rank), dtype=np.int64)
    for i, j in itertools.product(range(g.rank), repeat=2):
        out += (ca[:, None, i] * ca[None, :, j])[..., None] * np.array(coeff[i][j].coords, dtype=np.int64)
    return m.encode(out)


def random_permutative(rng: np.random.Generator, g: FgAbGroup, m: FgAbGroup) -> SymCocycle3:
    """A random (0, c) with c biadditive and c(x, y) = -c(y, x)."""
    r = g.rank
    coeff = [[m.zero] * r for _ in range(r)]
    for i in range(r):
        diag = [u for u in torsion_elements(m, g.factors[i]) if (2 * u).is_zero()]
        coeff[i][i] = diag[rng.integers(len(diag))]
        for j in range(i + 1, r):
            choices = torsion_elements(m, g.factors[i])  # d_i | d_j
            coeff[i][j] = choices[rng.integers(len(choices))]
            coeff[j][i] = -coeff[i][j]
    return SymCocycle3(g, m, None, bilinear_table(g, m, coeff))


def random_cochain(rng: np.random.Generator, g: FgAbGroup, m: FgAbGroup) -> Cochain2:
    n = g.order
    k = np.zeros((n, n), dtype=np.int64)
    k[1:, 1:] = rng.integers(0, m.order, (n - 1, n - 1))
    return Cochain2(g, m, k)


def random_cocycle(rng: np.random.Generator, g: FgAbGroup, m: FgAbGroup, permutative: bool = False) -> SymCocycle3:
    s = random_permutative(rng, g, m)
    if permutative or g.order == 1:
        return s
    return subtract_coboundary(s, random_cochain(rng, g, m))


def groupoid_corpus(seed: int = 0, per_pair: int = 2) -> list[PicGroupoid]:
    """Models with |G|, |M| <= 4: for each pair, the zero cocycle, random
    permutative ones and the same classes disguised by coboundaries."""
    rng = np.random.default_rng(seed)
    out = []
    for g, m in itertools.product(GROUPS_UP_TO_4, repeat=2):
        out.append(make_picard(g, m))
        for _ in range(per_pair):
            out.append(make_picard(g, m, random_permutative(rng, g, m)))
            if g.order > 1 and m.order > 1:
                out.append(make_picard(g, m, random_cocycle(rng, g, m)))
    return out


# -- functors --------------------------------------------------------------------------


def _carry_table(g: FgAbGroup, m: FgAbGroup, i: int, w) -> np.ndarray:
    ca = g.coord_array
    d = g.factors[i]
    carry = (ca[:, None, i] + ca[None, :, i]) >= d
    return m.encode(carry[..., None] * np.array(w.coords, dtype=np.int64))


def random_phi(rng: np.random.Generator, source: PicGroupoid, target: PicGroupoid, f0: GroupHom, f1: GroupHom) -> np.ndarray:
    """A constraint solving both coherence equations between permutative models.

    The antisymmetric part is forced: phi(x, y) - phi(y, x) must equal
    ``c'(f0 x, f0 y) - f1 c(x, y)``, which an upper-triangular bilinear form
    provides.  Carry cocycles and coboundaries add the free symmetric part.
    """
    g, m = source.g, target.m
    A, S = m.add_table, m.sub_table
    f0i, f1i = f0.index_map, f1.index_map
    beta = S[target.cocycle.c[f0i[:, None], f0i[None, :]], f1i[source.cocycle.c]]
    gens = [e.index for e in g.generators()]
    r = g.rank
    coeff = [[m.zero] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            coeff[i][j] = m.elements[beta[gens[i], gens[j]]]
    phi = bilinear_table(g, m, coeff)
    for i in range(r):
        phi = A[phi, _carry_table(g, m, i, m.elements[rng.integers(m.order)])]
    t = np.zeros(g.order, dtype=np.int64)
    t[1:] = rng.integers(0, m.order, g.order - 1)
    dt = S[A[t[:, None], t[None, :]], t[g.add_table]]
    return A[phi, dt]


def intertwining_homs(rng: np.random.Generator, source: PicGroupoid, target: PicGroupoid, tries: int = 50):
    """Random (f0, f1) with f1 q = q' f0, or None."""
    qs = np.diagonal(source.cocycle.c)
    qt = np.diagonal(target.cocycle.c)
    for _ in range(tries):
        f0 = random_hom(rng, source.g, target.g)
        f1 = random_hom(rng, source.m, target.m)
        if np.array_equal(f1.index_map[qs], qt[f0.index_map]):
            return f0, f1
    return None


def random_functor(rng: np.random.Generator, source: PicGroupoid, target: PicGroupoid, zero_phi: bool = False):
    homs = intertwining_homs(rng, source, target)
    if homs is None:
        return None
    f0, f1 = homs
    phi = None if zero_phi else random_phi(rng, source, target, f0, f1)
    F = PicFunctor(source, target, f0, f1, phi)
    assert validate_functor(F), "constructed constraint must be coherent"
    return F


def functor_corpus(seed: int, count: int, groups=GROUPS_UP_TO_8, min_nonzero_phi: int = 0) -> list[PicFunctor]:
    """Random valid functors between random permutative models."""
    rng = np.random.default_rng(seed)
    out = []
    nonzero = 0
    while len(out) < count:
        gc, mc, gd, md = (groups[rng.integers(len(groups))] for _ in range(4))
        src = make_picard(gc, mc, random_permutative(rng, gc, mc))
        tgt = make_picard(gd, md, random_permutative(rng, gd, md))
        F = random_functor(rng, src, tgt)
        if F is None:
            continue
        need_phi = min_nonzero_phi - nonzero >= count - len(out)
        if need_phi and not F.has_nonzero_phi():
            continue
        nonzero += F.has_nonzero_phi()
        out.append(F)
    return out


def small_functors(max_order: int = 2):
    """Every valid functor between permutative models whose groups have order
    at most ``max_order``, by enumerating f0, f1 and every normalized phi."""
    groups = [g for g in GROUPS_UP_TO_4 if g.order <= max_order]
    models = []
    for g, m in itertools.product(groups, repeat=2):
        seen = []
        for c in _permutative_tables(g, m):
            if not any(np.array_equal(c, s) for s in seen):
                seen.append(c)
                models.append(make_picard(g, m, SymCocycle3(g, m, None, c)))
    for src, tgt in itertools.product(models, repeat=2):
        n = src.g.order
        cells = (n - 1) ** 2
        for f0 in all_homs(src.g, tgt.g):
            for f1 in all_homs(src.m, tgt.m):
                for entries in itertools.product(range(tgt.m.order), repeat=cells):
                    phi = np.zeros((n, n), dtype=np.int64)
                    phi[1:, 1:] = np.array(entries, dtype=np.int64).reshape(n - 1, n - 1)
                    F = PicFunctor(src, tgt, f0, f1, phi)
                    if validate_functor(F):
                        yield F


def _permutative_tables(g: FgAbGroup, m: FgAbGroup):
    r = g.rank
    slots = [(i, j) for i in range(r) for j in range(i, r)]
    choices = []
    for i, j in slots:
        pool = torsion_elements(m, g.factors[i])
        if i == j:
            pool = [u for u in pool if (2 * u).is_zero()]
        choices.append(pool)
    for pick in itertools.product(*choices):
        coeff = [[m.zero] * r for _ in range(r)]
        for (i, j), u in zip(slots, pick):
            coeff[i][j] = u
            coeff[j][i] = u if i == j else -u
        c = bilinear_table(g, m, coeff)
        if validate_symmetric_cocycle(SymCocycle3(g, m, None, c)):
            yield c

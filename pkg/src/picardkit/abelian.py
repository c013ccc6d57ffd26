"""Finitely generated abelian groups in invariant-factor form.

A group is ``Z/d1 + ... + Z/dr`` with ``d1 | d2 | ...`` and zero factors
(infinite cyclic summands) last.  Elements are reduced integer tuples and
homomorphisms are integer matrices acting on columns.

>>> G = make_group([2, 4])
>>> G.order
8
>>> elem_reduce(G, (3, 7)).coords
(1, 3)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    CompositionMismatch,
    FactorOne,
    IllDefinedHom,
    InfiniteGroup,
    LengthMismatch,
    Mismatch,
)
from .smith import diagonal, in_lattice, kernel_basis, matmul, snf_full


def _check_factors(factors):
    for d in factors:
        if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
            raise TypeError(f"factor {d!r} is not an integer")
        if d == 1:
            raise FactorOne("factor 1 is forbidden (use an empty factor list for the trivial group)")
        if d < 0:
            raise ValueError(f"negative factor {d}")


@dataclass(frozen=True)
class FgAbGroup:
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", factors)
        _check_factors(factors)
        finite = [d for d in factors if d]
        if factors != tuple(finite) + (0,) * (len(factors) - len(finite)):
            raise ValueError(f"{factors} is not in invariant-factor form (zeros must come last)")
        for a, b in zip(finite, finite[1:]):
            if b % a:
                raise ValueError(f"{factors} is not in invariant-factor form ({a} does not divide {b})")

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.factors)

    def __repr__(self):
        return f"FgAbGroup({list(self.factors)})"

    @property
    def rank(self) -> int:
        """Number of cyclic summands (not the free rank)."""
        return len(self.factors)

    @property
    def is_finite(self) -> bool:
        return all(self.factors)

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        return self.factors[-1] if self.factors else 1

    @property
    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.rank, self)

    def __call__(self, *coords) -> GroupElement:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = coords[0]
        return elem_reduce(self, coords)

    def generators(self) -> list[GroupElement]:
        return [GroupElement(tuple(int(i == j) for j in range(self.rank)), self) for i in range(self.rank)]

    # -- dense encodings used by the exhaustive backends ------------------

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(enumerate_elements(self))

    @cached_property
    def _radix(self) -> tuple[int, ...]:
        radix = []
        acc = 1
        for d in reversed(self.factors):
            radix.append(acc)
            acc *= d
        return tuple(reversed(radix))

    def index(self, a: GroupElement) -> int:
        """Position of ``a`` in the lexicographic enumeration."""
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        return sum(c * r for c, r in zip(a.coords, self._radix))

    @cached_property
    def coord_array(self) -> np.ndarray:
        """(order, rank) array of element coordinates in lexicographic order."""
        return np.array([a.coords for a in self.elements], dtype=np.int64).reshape(self.order, self.rank)

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Reduce an (..., rank) coordinate array and return element indices."""
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, (d, r) in enumerate(zip(self.factors, self._radix)):
            out += (coords[..., i] % d) * r
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        ca = self.coord_array
        return self.encode(ca[:, None, :] + ca[None, :, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.encode(-self.coord_array)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    def mul_table(self, n: int) -> np.ndarray:
        return self.encode(n * self.coord_array)


@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]
    parent: FgAbGroup = field(repr=False)

    def __str__(self):
        return str(self.coords)

    def _same(self, other):
        if not isinstance(other, GroupElement) or other.parent != self.parent:
            raise Mismatch(f"{other!r} is not an element of {self.parent}")

    def __add__(self, other):
        self._same(other)
        return elem_reduce(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._same(other)
        return elem_reduce(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return elem_reduce(self.parent, [-a for a in self.coords])

    def __rmul__(self, n: int):
        return elem_reduce(self.parent, [n * a for a in self.coords])

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def index(self) -> int:
        return self.parent.index(self)


def make_group(factors: Sequence[int]) -> FgAbGroup:
    """Build the group ``Z/d1 + ... + Z/dr`` in invariant-factor form.

    Arbitrary cyclic decompositions are normalized, so ``make_group([3, 2])``
    is ``Z/6``.  A zero factor is an infinite cyclic summand.
    """
    factors = [int(d) for d in factors]
    _check_factors(factors)
    if not factors:
        return FgAbGroup(())
    diag = [[d if i == j else 0 for j in range(len(factors))] for i, d in enumerate(factors)]
    _, D, _, _, _ = snf_full(diag)
    return FgAbGroup(tuple(d for d in diagonal(D) if d != 1))


def elem_reduce(g: FgAbGroup, coords) -> GroupElement:
    coords = tuple(int(c) for c in coords)
    if len(coords) != g.rank:
        raise LengthMismatch(f"expected {g.rank} coordinates for {g}, got {len(coords)}")
    return GroupElement(tuple(c % d if d else c for c, d in zip(coords, g.factors)), g)


def enumerate_elements(g: FgAbGroup) -> list[GroupElement]:
    """All elements of a finite group in lexicographic coordinate order."""
    if not g.is_finite:
        raise InfiniteGroup(f"cannot enumerate the infinite group {g}")
    return [GroupElement(c, g) for c in itertools.product(*(range(d) for d in g.factors))]


def direct_sum(*groups: FgAbGroup) -> tuple[FgAbGroup, list[GroupHom], list[GroupHom]]:
    """Invariant-factor form of a direct sum, with inclusions and projections."""
    factors = [d for g in groups for d in g.factors]
    n = len(factors)
    rels = [[d if i == j else 0 for j in range(n)] for i, d in enumerate(factors)]
    total, to_m, from_m = quotient_presentation(n, rels)
    incs, projs = [], []
    offset = 0
    for g in groups:
        cols = list(range(offset, offset + g.rank))
        incs.append(GroupHom(g, total, [[to_m[i][c] for c in cols] for i in range(total.rank)]))
        projs.append(GroupHom(total, g, [from_m[c] for c in cols]))
        offset += g.rank
    return total, incs, projs


# -- homomorphisms -----------------------------------------------------------


def _reduce_column(target: FgAbGroup, col):
    return [c % d if d else c for c, d in zip(col, target.factors)]


@dataclass(frozen=True)
class GroupHom:
    source: FgAbGroup
    target: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = [list(map(int, row)) for row in self.matrix]
        if self.target.rank == 0:
            rows = []
        elif len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise LengthMismatch(
                f"matrix shape does not match {self.target.rank}x{self.source.rank} for {self.source} -> {self.target}"
            )
        cols = [_reduce_column(self.target, [rows[i][j] for i in range(self.target.rank)]) for j in range(self.source.rank)]
        for j, d in enumerate(self.source.factors):
            if d and any(_reduce_column(self.target, [d * v for v in cols[j]])):
                raise IllDefinedHom(
                    f"generator {j} of {self.source} has order {d} but maps to {tuple(cols[j])} in {self.target}"
                )
        reduced = tuple(tuple(cols[j][i] for j in range(self.source.rank)) for i in range(self.target.rank))
        object.__setattr__(self, "matrix", reduced)

    def __call__(self, a: GroupElement) -> GroupElement:
        return hom_apply(self, a)

    def column(self, j: int) -> list[int]:
        return [self.matrix[i][j] for i in range(self.target.rank)]

    def __matmul__(self, other: GroupHom) -> GroupHom:
        return hom_compose(self, other)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    @cached_property
    def index_map(self) -> np.ndarray:
        """Images of all source elements, as target indices (finite source)."""
        src = self.source.coord_array
        mat = np.array(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        return self.target.encode(src @ mat.T)

    def __str__(self):
        return f"{self.source} -> {self.target} {[list(r) for r in self.matrix]}"


def hom_apply(h: GroupHom, a: GroupElement) -> GroupElement:
    if a.parent != h.source:
        raise Mismatch(f"{a} is not an element of {h.source}")
    return elem_reduce(
        h.target, [sum(h.matrix[i][j] * a.coords[j] for j in range(h.source.rank)) for i in range(h.target.rank)]
    )


def hom_compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g`` after ``f``."""
    if f.target != g.source:
        raise CompositionMismatch(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    if not g.matrix or not f.matrix:
        return zero_hom(f.source, g.target)
    return GroupHom(f.source, g.target, matmul(g.matrix, f.matrix))


def identity_hom(g: FgAbGroup) -> GroupHom:
    return GroupHom(g, g, [[int(i == j) for j in range(g.rank)] for i in range(g.rank)])


def zero_hom(a: FgAbGroup, b: FgAbGroup) -> GroupHom:
    return GroupHom(a, b, [[0] * a.rank for _ in range(b.rank)])


def hom_from_images(source: FgAbGroup, target: FgAbGroup, images: Sequence[GroupElement]) -> GroupHom:
    """The hom sending generator ``i`` of ``source`` to ``images[i]``."""
    if len(images) != source.rank:
        raise LengthMismatch("need one image per generator")
    return GroupHom(source, target, [[im.coords[i] for im in images] for i in range(target.rank)])


# -- presentations, kernels, cokernels ---------------------------------------


def relation_columns(g: FgAbGroup) -> list[list[int]]:
    """Columns d_i * e_i for the finite factors of ``g``."""
    return [[d if i == j else 0 for i in range(g.rank)] for j, d in enumerate(g.factors) if d]


def _columns_to_matrix(nrows: int, cols):
    return [[c[i] for c in cols] for i in range(nrows)]


def quotient_presentation(n: int, relations):
    """Normalize ``Z^n / span(relations)`` into invariant-factor form.

    ``relations`` is an n x k integer matrix whose columns are relators.
    Returns ``(Q, to_coords, from_coords)``: ``to_coords`` (rank(Q) x n)
    sends a vector of Z^n to coordinates in Q; ``from_coords`` (n x rank(Q))
    lifts each generator of Q back to Z^n.
    """
    if n == 0:
        return FgAbGroup(()), [], []
    width = len(relations[0]) if relations else 0
    if width == 0:
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        return FgAbGroup((0,) * n), eye, eye
    U, D, _, Uinv, _ = snf_full(relations)
    diag = diagonal(D)
    factors = [diag[i] if i < len(diag) else 0 for i in range(n)]
    keep = [i for i, d in enumerate(factors) if d != 1]
    Q = FgAbGroup(tuple(factors[i] for i in keep))
    to_coords = [U[i] for i in keep]
    from_coords = [[Uinv[r][i] for i in keep] for r in range(n)]
    return Q, to_coords, from_coords


class Subquotients(NamedTuple):
    kernel: FgAbGroup
    kernel_inclusion: GroupHom
    image: FgAbGroup
    image_inclusion: GroupHom
    corestriction: GroupHom
    cokernel: FgAbGroup
    cokernel_projection: GroupHom


def hom_subquotients(h: GroupHom) -> Subquotients:
    """Kernel, image and cokernel of ``h`` with explicit witness homs."""
    G, H = h.source, h.target
    r, s = G.rank, H.rank
    A = [list(row) for row in h.matrix] if s else []

    # cokernel: H / (im A + relations of H)
    rel_cols = [h.column(j) for j in range(r)] + relation_columns(H)
    coker, to_c, _ = quotient_presentation(s, _columns_to_matrix(s, rel_cols))
    proj = GroupHom(H, coker, to_c if coker.rank else [])

    # L = {x in Z^r : A x in relations(H)}, the preimage lattice of zero
    if s:
        block = [A[i] + [-(H.factors[i]) if i == j else 0 for j in range(s)] for i in range(s)]
        K = kernel_basis(block, r + s)
        L = [row for row in K[:r]]
    else:
        L = [[int(i == j) for j in range(r)] for i in range(r)]

    # image = Z^r / L
    image, to_i, from_i = quotient_presentation(r, L)
    cores = GroupHom(G, image, to_i if image.rank else [])
    inc_img_cols = [[sum(A[i][k] * from_i[k][j] for k in range(r)) for i in range(s)] for j in range(image.rank)]
    img_inc = GroupHom(image, H, _columns_to_matrix(s, inc_img_cols))

    # kernel = L / relations(G), via a basis of L
    width = len(L[0]) if L and L[0] else 0
    if r == 0 or width == 0:
        kernel = FgAbGroup(())
        ker_inc = zero_hom(kernel, G)
    else:
        U, D, _, Uinv, _ = snf_full(L)
        diag = diagonal(D)
        t = sum(1 for d in diag if d)
        basis_cols = [[Uinv[i][j] * diag[j] for i in range(r)] for j in range(t)]
        rel = []
        for col in relation_columns(G):
            y = [sum(U[i][k] * col[k] for k in range(r)) for i in range(r)]
            assert all(y[j] % diag[j] == 0 for j in range(t)) and not any(y[t:])
            rel.append([y[j] // diag[j] for j in range(t)])
        kernel, _, from_k = quotient_presentation(t, _columns_to_matrix(t, rel))
        inc_cols = [[sum(basis_cols[k][i] * from_k[k][j] for k in range(t)) for i in range(r)] for j in range(kernel.rank)]
        ker_inc = GroupHom(kernel, G, _columns_to_matrix(r, inc_cols))
    return Subquotients(kernel, ker_inc, image, img_inc, cores, coker, proj)


def in_subgroup(a: GroupElement, gens: Sequence[GroupElement]) -> bool:
    """Membership of ``a`` in the subgroup generated by ``gens``."""
    g = a.parent
    cols = [list(x.coords) for x in gens] + relation_columns(g)
    if not cols:
        return a.is_zero()
    return in_lattice(list(a.coords), _columns_to_matrix(g.rank, cols))


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """True iff image(f) == kernel(g) inside ``f.target``."""
    if f.target != g.source:
        raise CompositionMismatch(f"{f.target} != {g.source}")
    if not hom_compose(g, f).is_zero():
        return False
    sub = hom_subquotients(g)
    image_gens = [f(x) for x in f.source.generators()]
    return all(in_subgroup(sub.kernel_inclusion(k), image_gens) for k in sub.kernel.generators())


def is_isomorphism(f: GroupHom) -> bool:
    sub = hom_subquotients(f)
    return sub.kernel.rank == 0 and sub.cokernel.rank == 0

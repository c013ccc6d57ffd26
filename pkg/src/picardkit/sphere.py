"""The truncated sphere: the Picard groupoid S on objects Z with End(n) = Z/2.

S is the skeletal permutative model (Z, Z/2, (0, c)) with
``c(m, n) = mn mod 2``; its nontrivial endomorphism of n is written eta_n.
The category of finite sets and bijections maps onto S by the sign of a
permutation, and S is free on one object among Picard groupoids.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .abelian import GroupElement, hom_from_images, make_group
from .cocycle import quadratic_of, sphere_cocycle
from .errors import LengthMismatch, NotPermutative
from .picard import PicFunctor, PicGroupoid, PicMorphism, make_picard, validate_functor

Z = make_group([0])
Z2 = make_group([2])


def sphere() -> PicGroupoid:
    return make_picard(Z, Z2, sphere_cocycle())


def eta(n: int) -> PicMorphism:
    """The nontrivial endomorphism of the object n."""
    return PicMorphism(Z(n), Z2(1))


def binom2(m: int) -> int:
    # C(m, 2) as a polynomial, so negative objects are covered too
    return m * (m - 1) // 2


def tensor_symmetry_parity(m: int, n: int) -> int:
    return (binom2(m) * binom2(n)) % 2


@dataclass(frozen=True)
class RingCells:
    """The multiplicative structure of S evaluated at a pair of objects."""

    m: int
    n: int

    @property
    def product(self) -> int:
        return self.m * self.n

    @property
    def symmetry(self) -> PicMorphism:
        return PicMorphism(Z(self.product), Z2(tensor_symmetry_parity(self.m, self.n)))

    def on_morphisms(self, f: int, g: int) -> PicMorphism:
        """``f`` at m times ``g`` at n is ``n f + m g`` at mn."""
        return PicMorphism(Z(self.product), Z2(self.n * f + self.m * g))


def ring_cells(m: int, n: int) -> RingCells:
    return RingCells(m, n)


# -- permutations ------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: Permutation) -> Permutation:
        """``self`` after ``other``."""
        if self.size != other.size:
            raise LengthMismatch("permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    @cached_property
    def parity(self) -> int:
        """0 for even, 1 for odd (a k-cycle is a product of k - 1 transpositions)."""
        return sum(len(c) - 1 for c in self.cycles()) % 2

    @property
    def sign(self) -> int:
        return -1 if self.parity else 1


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def block_sum(p: Permutation, q: Permutation) -> Permutation:
    return Permutation(p.images + tuple(i + p.size for i in q.images))


def block_swap(m: int, n: int) -> Permutation:
    """The symmetry of the disjoint union: the first m points move past the last n."""
    return Permutation(tuple(i + n for i in range(1, m + 1)) + tuple(range(1, n + 1)))


def product_transpose(m: int, n: int) -> Permutation:
    """The symmetry of the cartesian product {1..m} x {1..n} -> {1..n} x {1..m}
    with both sides ordered lexicographically."""
    return Permutation(tuple(j * m + i + 1 for i in range(m) for j in range(n)))


def sign_and_xi(p: Permutation) -> PicMorphism:
    """The image of ``p`` in S: its parity at the object ``p.size``."""
    return PicMorphism(Z(p.size), Z2(p.parity))


# -- universal property and the action on a Picard groupoid --------------------------------


def _require_permutative(c: PicGroupoid):
    if not c.is_permutative():
        raise NotPermutative("strictify the groupoid first")


def free_map(c: PicGroupoid, x: GroupElement) -> PicFunctor:
    """The functor S -> c sending the object 1 to ``x``.

    On objects it is n -> n x, eta goes to ``c(x, x)``, and the monoidal
    constraint is zero.
    """
    _require_permutative(c)
    f0 = hom_from_images(Z, c.g, [x])
    f1 = hom_from_images(Z2, c.m, [c.cocycle.c_at(x, x)])
    return PicFunctor(sphere(), c, f0, f1)


def free_map_candidates(c: PicGroupoid, x: GroupElement) -> list[PicFunctor]:
    """Every valid functor S -> c with zero constraint and 1 -> x, by enumeration
    of the possible images of eta; the free property says there is exactly one."""
    _require_permutative(c)
    f0 = hom_from_images(Z, c.g, [x])
    out = []
    for u in c.m.elements:
        if not (2 * u).is_zero():
            continue
        F = PicFunctor(sphere(), c, f0, hom_from_images(Z2, c.m, [u]))
        if validate_functor(F):
            out.append(F)
    return out


@dataclass(frozen=True)
class SphereAction:
    """S x c -> c for a permutative skeletal c."""

    target: PicGroupoid

    def on_object(self, n: int, x: GroupElement) -> GroupElement:
        return n * x

    def on_morphism(self, eps: int, n: int, u: GroupElement, x: GroupElement) -> PicMorphism:
        """Image of (eta_n^eps, u at x).

        eta goes to the diagonal symmetry ``c(x, x)``, and ``u`` is copied
        n times (negative n through the inverse object, where it acts by -u).
        """
        q = quadratic_of(self.target.cocycle)(x)
        return PicMorphism(n * x, (eps % 2) * q + n * u)


def sphere_action(c: PicGroupoid) -> SphereAction:
    _require_permutative(c)
    return SphereAction(c)

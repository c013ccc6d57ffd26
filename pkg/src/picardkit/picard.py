"""Skeletal Picard groupoids T(G, M, (h, c)) and symmetric monoidal functors.

Objects are elements of G, every hom-set is empty or a copy of M, and a
morphism is recorded by the object it sits on plus its label in M.  A
functor between two skeletal models is a triple (f0, f1, phi): a hom on
objects, a hom on labels and a normalized constraint table
``phi(x, y): F(x) + F(y) -> F(x + y)``.  Coherence reads

    phi(x+y, z) + phi(x, y) + f1 h(x, y, z) = h'(f0 x, f0 y, f0 z) + phi(x, y+z) + phi(y, z)
    f1 c(x, y) + phi(x, y)                   = phi(y, x) + c'(f0 x, f0 y)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

import numpy as np

from .abelian import FgAbGroup, GroupElement, GroupHom, hom_compose, identity_hom, make_group, zero_hom
from .cocycle import (
    Cochain2,
    QuadraticMap,
    SymCocycle3,
    are_cohomologous,
    bilinear_symmetry_rho,
    cochain_space_size,
    quadratic_of,
    validate_symmetric_cocycle,
    zero_cocycle,
)
from .errors import (
    InfiniteGroup,
    InvalidCocycle,
    Mismatch,
    PresentationMismatch,
)
from .report import ValidationReport, Violation, default_budget


@dataclass(frozen=True)
class PicGroupoid:
    g: FgAbGroup
    m: FgAbGroup
    cocycle: SymCocycle3

    @property
    def unit(self) -> GroupElement:
        return self.g.zero

    def is_permutative(self) -> bool:
        return self.cocycle.is_permutative()

    def hom(self, x: GroupElement, y: GroupElement):
        """Labels of ``x -> y``: all of M when x = y, nothing otherwise."""
        return self.m.elements if x == y else ()

    def morphism(self, at: GroupElement, label: GroupElement) -> PicMorphism:
        if at.parent != self.g or label.parent != self.m:
            raise Mismatch("object or label from the wrong group")
        return PicMorphism(at, label)

    def identity(self, x: GroupElement) -> PicMorphism:
        return PicMorphism(x, self.m.zero)

    def compose(self, f: PicMorphism, g: PicMorphism) -> PicMorphism:
        if f.at != g.at:
            raise Mismatch(f"{f} and {g} are not composable")
        return PicMorphism(f.at, f.label + g.label)

    def tensor(self, f: PicMorphism, g: PicMorphism) -> PicMorphism:
        return PicMorphism(f.at + g.at, f.label + g.label)

    def __str__(self):
        return f"T({self.g}, {self.m}, {self.cocycle.form})"


@dataclass(frozen=True)
class PicMorphism:
    at: GroupElement
    label: GroupElement

    def __str__(self):
        return f"{self.label.coords}@{self.at.coords}"


def make_picard(g: FgAbGroup, m: FgAbGroup, cocycle: SymCocycle3 | None = None) -> PicGroupoid:
    if cocycle is None:
        cocycle = zero_cocycle(g, m)
    if (cocycle.g, cocycle.m) != (g, m):
        raise Mismatch(f"cocycle lives on ({cocycle.g}, {cocycle.m}), not ({g}, {m})")
    report = validate_symmetric_cocycle(cocycle)
    if not report:
        raise InvalidCocycle(f"not a symmetric 3-cocycle: {sorted(report.failed_axioms())} fail", report)
    return PicGroupoid(g, m, cocycle)


def discrete_model(g: FgAbGroup) -> PicGroupoid:
    """T(G, 0, 0): objects G and only identity morphisms."""
    return make_picard(g, make_group([]))


def structural_cells(p: PicGroupoid, x, y, z) -> tuple[PicMorphism, PicMorphism]:
    """Associator on (x, y, z) and symmetry on (x, y)."""
    return (
        PicMorphism(x + y + z, p.cocycle.h_at(x, y, z)),
        PicMorphism(x + y, p.cocycle.c_at(x, y)),
    )


def inverse_of(p: PicGroupoid, x: GroupElement) -> tuple[GroupElement, PicMorphism]:
    """The inverse object -x and the evaluation cell (-x) + x -> I."""
    # any label works for epsilon in a skeletal model; 0 is the canonical one
    return -x, PicMorphism(p.g.zero, p.m.zero)


def homotopy_groups(p: PicGroupoid) -> tuple[FgAbGroup, FgAbGroup]:
    return p.g, p.m


# -- functors ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PicFunctor:
    source: PicGroupoid
    target: PicGroupoid
    f0: GroupHom
    f1: GroupHom
    phi: np.ndarray | None = None  # None means identically zero

    def __post_init__(self):
        if (self.f0.source, self.f0.target) != (self.source.g, self.target.g):
            raise Mismatch("f0 must map source objects to target objects")
        if (self.f1.source, self.f1.target) != (self.source.m, self.target.m):
            raise Mismatch("f1 must map source labels to target labels")
        if self.phi is not None:
            if not self.source.g.is_finite:
                raise InfiniteGroup("phi tables need a finite source; use phi=None for zero")
            phi = np.array(self.phi, dtype=np.int64)
            n = self.source.g.order
            if phi.shape != (n, n):
                raise Mismatch(f"phi has shape {phi.shape}, expected {(n, n)}")
            phi.setflags(write=False)
            object.__setattr__(self, "phi", phi)

    @property
    def phi_table(self) -> np.ndarray:
        n = self.source.g.order
        return np.zeros((n, n), dtype=np.int64) if self.phi is None else self.phi

    def phi_at(self, x: GroupElement, y: GroupElement) -> GroupElement:
        if self.phi is None:
            return self.target.m.zero
        return self.target.m.elements[self.phi[x.index, y.index]]

    def has_nonzero_phi(self) -> bool:
        return self.phi is not None and bool(self.phi.any())

    def on_object(self, x: GroupElement) -> GroupElement:
        return self.f0(x)

    def on_morphism(self, f: PicMorphism) -> PicMorphism:
        return PicMorphism(self.f0(f.at), self.f1(f.label))

    def __eq__(self, other):
        if not isinstance(other, PicFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.f0 == other.f0
            and self.f1 == other.f1
            and self._same_phi(other)
        )

    def _same_phi(self, other) -> bool:
        if not self.source.g.is_finite:
            return True  # infinite sources only carry phi = 0
        return np.array_equal(self.phi_table, other.phi_table)

    def __hash__(self):
        return hash((self.source, self.target, self.f0, self.f1))


def identity_functor(p: PicGroupoid) -> PicFunctor:
    return PicFunctor(p, p, identity_hom(p.g), identity_hom(p.m))


def _periodic_window(F: PicFunctor) -> int:
    """A period P such that the coherence equations on Z only depend on
    arguments mod P (source must be a closed-form model on Z with phi = 0)."""
    src, tgt = F.source, F.target
    if F.phi is not None or src.g != make_group([0]) or src.cocycle.form == "table":
        raise InfiniteGroup("table-mode functor validation needs a finite source")
    if tgt.g.is_finite:
        return lcm(2, tgt.g.exponent)
    if tgt.cocycle.is_closed_form:
        return 2
    raise InfiniteGroup("cannot reduce the coherence check to a finite window")


def validate_functor(F: PicFunctor, source: PicGroupoid | None = None, target: PicGroupoid | None = None) -> ValidationReport:
    """Exhaustively check normalization and both coherence equations."""
    if source is not None and source != F.source or target is not None and target != F.target:
        raise Mismatch("functor does not connect the given groupoids")
    src, tgt = F.source, F.target
    report = ValidationReport(f"functor {src} -> {tgt}")
    if not src.g.is_finite:
        return _validate_functor_window(F, report)
    if not tgt.g.is_finite or tgt.cocycle.is_closed_form and tgt.cocycle.form != "zero":
        raise InfiniteGroup("table-mode functor validation needs finite target tables")
    G, M = src.g, tgt.m
    n = G.order
    A = M.add_table
    phi = F.phi_table
    f0 = F.f0.index_map
    f1 = F.f1.index_map
    gadd = G.add_table
    if src.cocycle.is_closed_form:
        h = np.zeros((n, n, n), dtype=np.int64)
        c = np.zeros((n, n), dtype=np.int64)
    else:
        h, c = src.cocycle.h, src.cocycle.c
    if tgt.cocycle.is_closed_form:
        nt = tgt.g.order
        h2 = np.zeros((nt, nt, nt), dtype=np.int64)
        c2 = np.zeros((nt, nt), dtype=np.int64)
    else:
        h2, c2 = tgt.cocycle.h, tgt.cocycle.c

    def collect(axiom, mask, lhs, rhs):
        report.checked[axiom] = int(mask.size)
        for row in np.argwhere(mask):
            row = tuple(int(i) for i in row)
            report.violations.append(
                Violation(axiom, tuple(G.elements[i].coords for i in row), M.elements[lhs[row]].coords, M.elements[rhs[row]].coords)
            )

    zero = np.zeros(n, dtype=np.int64)
    collect("normalization-left", phi[0, :] != 0, phi[0, :], zero)
    mask = phi[:, 0] != 0
    report.checked["normalization-right"] = n
    for i in np.flatnonzero(mask):
        report.violations.append(Violation("normalization-right", (G.elements[i].coords, G.zero.coords), M.elements[phi[i, 0]].coords, M.zero.coords))

    X, Y, Z = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    lhs = A[A[phi[gadd[X, Y], Z], phi[X, Y]], f1[h[X, Y, Z]]]
    rhs = A[A[h2[f0[X], f0[Y], f0[Z]], phi[X, gadd[Y, Z]]], phi[Y, Z]]
    collect("associativity", lhs != rhs, lhs, rhs)

    X, Y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    lhs = A[f1[c[X, Y]], phi[X, Y]]
    rhs = A[phi[Y, X], c2[f0[X], f0[Y]]]
    collect("symmetry", lhs != rhs, lhs, rhs)
    return report


def _validate_functor_window(F: PicFunctor, report: ValidationReport) -> ValidationReport:
    P = _periodic_window(F)
    report.mode = f"periodic window mod {P}"
    src, tgt = F.source, F.target
    ints = [src.g(i) for i in range(P)]
    count = 0
    for x, y, z in itertools.product(ints, repeat=3):
        count += 1
        lhs = F.f1(src.cocycle.h_at(x, y, z))
        rhs = tgt.cocycle.h_at(F.f0(x), F.f0(y), F.f0(z))
        if lhs != rhs:
            report.violations.append(Violation("associativity", (x.coords, y.coords, z.coords), lhs.coords, rhs.coords))
    report.checked["associativity"] = count
    count = 0
    for x, y in itertools.product(ints, repeat=2):
        count += 1
        lhs = F.f1(src.cocycle.c_at(x, y))
        rhs = tgt.cocycle.c_at(F.f0(x), F.f0(y))
        if lhs != rhs:
            report.violations.append(Violation("symmetry", (x.coords, y.coords), lhs.coords, rhs.coords))
    report.checked["symmetry"] = count
    return report


def compose_functors(F: PicFunctor, G: PicFunctor) -> PicFunctor:
    """``G`` after ``F``, with constraint ``phi_G(f0 x, f0 y) + g1 phi_F(x, y)``."""
    if F.target != G.source:
        raise Mismatch("functors are not composable")
    f0 = hom_compose(G.f0, F.f0)
    f1 = hom_compose(G.f1, F.f1)
    if F.phi is None and G.phi is None:
        phi = None
    else:
        M = G.target.m
        n = F.source.g.order
        fx = F.f0.index_map
        left = G.phi_table[fx[:, None], fx[None, :]]
        right = G.f1.index_map[F.phi_table] if F.phi is not None else np.zeros((n, n), dtype=np.int64)
        phi = M.add_table[left, right]
    return PicFunctor(F.source, G.target, f0, f1, phi)


def intertwines_quadratic_maps(F: PicFunctor) -> bool:
    """``f1(q_source(x)) == q_target(f0(x))`` for every object x."""
    qs = quadratic_of(F.source.cocycle)
    qt = quadratic_of(F.target.cocycle)
    return all(F.f1(qs(x)) == qt(F.f0(x)) for x in F.source.g.elements)


# -- strictification and equivalence ------------------------------------------------------


@dataclass
class StrictificationCertificate:
    quadratic_map: QuadraticMap
    quadratic_maps_agree: bool
    witness: Cochain2 | None = None
    searched: bool = False
    equivalence: PicFunctor | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.quadratic_maps_agree and (not self.searched or self.witness is not None)


def strictify(p: PicGroupoid, budget: int | None = None) -> tuple[PicGroupoid, StrictificationCertificate]:
    """Equivalent skeletal permutative model with biadditive symmetry.

    The new symmetry is the biadditive extension of the generator values
    ``q(g_i) = c(g_i, g_i)``.  The certificate compares quadratic maps on all
    of G and, when the cochain search fits in ``budget``, carries the
    lexicographically first cochain k with (h, c) - (0, c') = coboundary(k)
    plus the induced equivalence (id, id, k).
    """
    g, m = p.g, p.m
    if not g.is_finite or p.cocycle.is_closed_form:
        if p.is_permutative():
            q = quadratic_of(p.cocycle)
            return p, StrictificationCertificate(q, True, note="closed-form model is already permutative")
        raise InfiniteGroup("strictify needs a finite group")
    report = validate_symmetric_cocycle(p.cocycle)
    if not report:
        raise InvalidCocycle("input is not a symmetric 3-cocycle", report)
    values = [p.cocycle.c_at(e, e) for e in g.generators()]
    c2 = bilinear_symmetry_rho(g, values) if g.rank else np.zeros((g.order, g.order), dtype=np.int64)
    strict = make_picard(g, m, SymCocycle3(g, m, None, c2))
    q, q2 = quadratic_of(p.cocycle), quadratic_of(strict.cocycle)
    cert = StrictificationCertificate(q, q == q2)
    budget = default_budget() if budget is None else budget
    if cochain_space_size(g, m) <= budget:
        cert.searched = True
        cert.witness = are_cohomologous(p.cocycle, strict.cocycle, budget)
        if cert.witness is not None:
            cert.equivalence = PicFunctor(p, strict, identity_hom(g), identity_hom(m), cert.witness.k)
    else:
        cert.note = "cochain search skipped: exceeds budget"
    return strict, cert


def are_equivalent(p: PicGroupoid, p2: PicGroupoid, verify: bool = False, budget: int | None = None) -> bool:
    """Equivalence of two presentations on the same (G, M), decided by the
    quadratic maps.  ``verify=True`` cross-checks with the cochain search."""
    if (p.g, p.m) != (p2.g, p2.m):
        raise PresentationMismatch("equivalence is only tested between identical (G, M) presentations")
    answer = quadratic_of(p.cocycle) == quadratic_of(p2.cocycle)
    if verify:
        oracle = are_cohomologous(p.cocycle, p2.cocycle, budget) is not None
        if oracle != answer:
            raise AssertionError(f"quadratic-map test says {answer}, cochain search says {oracle}")
    return answer


def alpha0(p: PicGroupoid) -> PicFunctor:
    """The functor to the discrete model: objects to their class, morphisms to identities.

    A non-permutative input is strictified first, so the source of the
    returned functor is the permutative model.
    """
    if not p.is_permutative():
        p, _ = strictify(p)
    return PicFunctor(p, discrete_model(p.g), identity_hom(p.g), zero_hom(p.m, make_group([])))

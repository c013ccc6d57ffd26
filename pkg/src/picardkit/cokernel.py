"""The cokernel bigroupoid of a functor between permutative skeletal models.

For F: C -> D a 1-cell x -> y is a pair (f, n) with f: x -> y + F(n) in D.
In a skeletal model this forces x = y + f0(n) and f is just a label in M_D.
Composing (f, n): x -> y with (g, m): y -> z gives (f + g + phi(m, n), m + n),
and a 2-cell (f, n) => (f', n) is an alpha in M_C with f' = f + f1(alpha).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .abelian import (
    FgAbGroup,
    GroupElement,
    GroupHom,
    hom_from_images,
    hom_subquotients,
    is_exact_at,
    is_isomorphism,
    make_group,
    quotient_presentation,
)
from .cocycle import QuadraticMap, quadratic_of
from .errors import BudgetExceeded, InfiniteGroup, InvalidFunctor, Mismatch, NotPermutative
from .picard import PicFunctor, PicGroupoid, alpha0, strictify, validate_functor
from .report import default_budget


@dataclass(frozen=True)
class CokOneCell:
    src: GroupElement
    tgt: GroupElement
    n: GroupElement
    label: GroupElement


@dataclass(frozen=True)
class CokTwoCell:
    source: CokOneCell
    target: CokOneCell
    alpha: GroupElement


class CokBigroupoid:
    def __init__(self, functor: PicFunctor, check: bool = True):
        F = functor
        if not (F.source.is_permutative() and F.target.is_permutative()):
            raise NotPermutative("cokernels are built over permutative models; strictify first")
        if check:
            report = validate_functor(F)
            if not report:
                raise InvalidFunctor("functor fails coherence", report)
        self.functor = F
        self.c = F.source
        self.d = F.target

    # -- cells --------------------------------------------------------------

    def one_cell(self, src: GroupElement, n: GroupElement, label: GroupElement) -> CokOneCell:
        return CokOneCell(src, src - self.functor.f0(n), n, label)

    def check_one_cell(self, a: CokOneCell) -> bool:
        return a.src == a.tgt + self.functor.f0(a.n)

    def identity(self, x: GroupElement) -> CokOneCell:
        return CokOneCell(x, x, self.c.g.zero, self.d.m.zero)

    def compose(self, a: CokOneCell, b: CokOneCell) -> CokOneCell:
        """``a`` followed by ``b``."""
        if a.tgt != b.src:
            raise Mismatch("1-cells are not composable")
        return CokOneCell(a.src, b.tgt, b.n + a.n, a.label + b.label + self.functor.phi_at(b.n, a.n))

    def two_cell(self, a: CokOneCell, alpha: GroupElement) -> CokTwoCell:
        return CokTwoCell(a, CokOneCell(a.src, a.tgt, a.n, a.label + self.functor.f1(alpha)), alpha)

    def check_two_cell(self, t: CokTwoCell) -> bool:
        s, u = t.source, t.target
        return (s.src, s.tgt, s.n) == (u.src, u.tgt, u.n) and u.label == s.label + self.functor.f1(t.alpha)

    def vertical(self, s: CokTwoCell, t: CokTwoCell) -> CokTwoCell:
        if s.target != t.source:
            raise Mismatch("2-cells are not composable")
        return CokTwoCell(s.source, t.target, s.alpha + t.alpha)

    def two_cells_between(self, a: CokOneCell, b: CokOneCell) -> list[GroupElement]:
        if (a.src, a.tgt, a.n) != (b.src, b.tgt, b.n):
            return []
        return [al for al in self.c.m.elements if a.label + self.functor.f1(al) == b.label]

    def is_two_isomorphic(self, a: CokOneCell, b: CokOneCell) -> bool:
        return bool(self.two_cells_between(a, b))

    def inverse(self, a: CokOneCell) -> CokOneCell:
        """A weak inverse: composing ``a`` with it gives the identity on the nose."""
        v = -a.label - self.functor.phi_at(-a.n, a.n)
        return CokOneCell(a.tgt, a.src, -a.n, v)

    def embed(self, x: GroupElement, u: GroupElement) -> CokOneCell:
        """The image of the morphism ``u`` at x under D -> Coker(F)."""
        return CokOneCell(x, x, self.c.g.zero, u)

    def tensor(self, a: CokOneCell, b: CokOneCell) -> CokOneCell:
        return tensor_one_cells(self, a, b)


def build_cokernel(F: PicFunctor) -> CokBigroupoid:
    return CokBigroupoid(F)


def c_f_embed(F: PicFunctor):
    """The map D -> Coker(F) on morphisms: u at x goes to (u, I)."""
    k = CokBigroupoid(F)
    return k.embed


def tensor_one_cells(k: CokBigroupoid, a: CokOneCell, b: CokOneCell) -> CokOneCell:
    """Monoidal product of 1-cells.

    The label picks up the interchange ``(y + F n) + (v + F m) -> (y + v) + (F n + F m)``,
    which in a permutative skeletal model is the symmetry ``c_D(f0 n, v)``, and
    then the constraint ``phi(n, m)``.
    """
    for cell in (a, b):
        if not k.check_one_cell(cell):
            raise Mismatch(f"{cell} is not a 1-cell of this cokernel")
    F = k.functor
    twist = k.d.cocycle.c_at(F.f0(a.n), b.tgt)
    return CokOneCell(a.src + b.src, a.tgt + b.tgt, a.n + b.n, a.label + b.label + twist + F.phi_at(a.n, b.n))


# -- homotopy groups ------------------------------------------------------------------


def _require_finite(F: PicFunctor):
    for g in (F.source.g, F.source.m, F.target.g, F.target.m):
        if not g.is_finite:
            raise InfiniteGroup(f"{g} is infinite")


@dataclass
class Pi1:
    """pi_1 of the cokernel at the unit, with its coordinate witness.

    ``coords[(n, u)]`` is the element of ``group`` represented by the
    1-cell (u, n): I -> I, for every n in ker f0 and every label u.
    """

    group: FgAbGroup
    coords: dict[tuple[int, int], GroupElement]
    kernel_f0: list[int]

    def of(self, n: GroupElement, u: GroupElement) -> GroupElement:
        return self.coords[(n.index, u.index)]


def _pi1_formula(F: PicFunctor) -> Pi1:
    """pi_1 as an extension of ker f0 by coker f1, presented and normalized by SNF."""
    GC, MD = F.source.g, F.target.m
    A = MD.add_table
    phi = F.phi_table
    gadd = GC.add_table

    def mul(p, q):
        return gadd[p[0], q[0]], A[A[p[1], q[1]], phi[q[0], p[0]]]

    s0 = hom_subquotients(F.f0)
    s1 = hom_subquotients(F.f1)
    K, kinc = s0.kernel, s0.kernel_inclusion
    N, nproj = s1.cokernel, s1.cokernel_projection
    r, s = K.rank, N.rank
    lifts = [kinc(e).index for e in K.generators()]

    # one relation per cyclic factor: e_i copies of the lift land in coker f1
    cols = []
    for i, (e, k) in enumerate(zip(K.factors, lifts)):
        acc = (0, 0)
        for _ in range(e):
            acc = mul(acc, (k, 0))
        assert acc[0] == 0
        w = nproj(MD.elements[acc[1]]).coords
        cols.append([e if j == i else 0 for j in range(r)] + [-w[j] for j in range(s)])
    for j, d in enumerate(N.factors):
        cols.append([0] * r + [d if t == j else 0 for t in range(s)])
    total = r + s
    rel = [[c[i] for c in cols] for i in range(total)] if cols else []
    Q, to_c, _ = quotient_presentation(total, rel)

    k_coords = {kinc(x).index: x.coords for x in K.elements}
    coords = {}
    for n_idx, a in k_coords.items():
        acc = (0, 0)
        for i, ai in enumerate(a):
            for _ in range(ai):
                acc = mul(acc, (lifts[i], 0))
        assert acc[0] == n_idx
        for u in MD.elements:
            v = nproj(u - MD.elements[acc[1]]).coords
            vec = list(a) + list(v)
            coords[(n_idx, u.index)] = Q([sum(row[t] * vec[t] for t in range(total)) for row in to_c]) if Q.rank else Q.zero
    return Pi1(Q, coords, sorted(k_coords))


def _invariants_from_orders(order: int, killed) -> FgAbGroup:
    """Rebuild an abelian group from the counts ``killed(k) = #{x : k x = 0}``."""
    cyclic = []
    rest = order
    p = 2
    while rest > 1:
        if rest % p:
            p += 1
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        # log_p #{x : p^j x = 0}, then the number of factors of order >= p^j
        logs = [0]
        for j in range(1, e + 1):
            cnt = killed(p**j)
            t = 0
            while cnt > 1:
                cnt //= p
                t += 1
            logs.append(t)
        at_least = [logs[j] - logs[j - 1] for j in range(1, e + 1)] + [0]
        for j in range(1, e + 1):
            cyclic += [p**j] * (at_least[j - 1] - at_least[j])
        p += 1
    return make_group(cyclic)


@dataclass
class Pi1Enumeration:
    group: FgAbGroup
    classes: list[frozenset]
    table: np.ndarray  # class product table
    class_of: dict[tuple[int, int], int]
    abelian: bool


def pi1_by_enumeration(k: CokBigroupoid) -> Pi1Enumeration:
    """pi_1 at the unit from the raw cells: 1-endomorphisms of I modulo 2-cells,
    composed with the bigroupoid composition."""
    F = k.functor
    GC, MC, GD, MD = F.source.g, F.source.m, F.target.g, F.target.m
    zero = GD.zero
    loops = [k.one_cell(zero, n, u) for n in GC.elements if F.f0(n) == zero for u in MD.elements]
    class_of: dict[tuple[int, int], int] = {}
    classes = []
    for a in loops:
        key = (a.n.index, a.label.index)
        if key in class_of:
            continue
        orbit = frozenset((a.n.index, k.two_cell(a, al).target.label.index) for al in MC.elements)
        for o in orbit:
            class_of[o] = len(classes)
        classes.append(orbit)
    reps = [k.one_cell(zero, GC.elements[min(c)[0]], MD.elements[min(c)[1]]) for c in classes]
    size = len(classes)
    table = np.zeros((size, size), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            ab = k.compose(a, b)
            table[i, j] = class_of[(ab.n.index, ab.label.index)]
    unit = class_of[(0, 0)]

    def power(i, e):
        acc = unit
        for _ in range(e):
            acc = table[acc, i]
        return acc

    def killed(e):
        return sum(1 for i in range(size) if power(i, e) == unit)

    group = _invariants_from_orders(size, killed)
    return Pi1Enumeration(group, classes, table, class_of, bool((table == table.T).all()))


def _killed_count(g: FgAbGroup, e: int) -> int:
    out = 1
    for d in g.factors:
        out *= gcd(e, d)
    return out


@dataclass
class HomotopyGroups:
    pi0: FgAbGroup
    pi1: FgAbGroup
    pi2: FgAbGroup
    pi0_projection: GroupHom
    pi2_inclusion: GroupHom
    pi1_witness: Pi1
    enumeration: Pi1Enumeration | None = None
    agree: bool | None = None


def cok_homotopy_groups(k: CokBigroupoid, enumerate_cells: bool = True) -> HomotopyGroups:
    F = k.functor
    _require_finite(F)
    s0 = hom_subquotients(F.f0)
    s1 = hom_subquotients(F.f1)
    pi1 = _pi1_formula(F)
    out = HomotopyGroups(s0.cokernel, pi1.group, s1.kernel, s0.cokernel_projection, s1.kernel_inclusion, pi1)
    if enumerate_cells:
        en = pi1_by_enumeration(k)
        out.enumeration = en
        out.agree = _formula_matches_enumeration(pi1, en)
    return out


def _formula_matches_enumeration(pi1: Pi1, en: Pi1Enumeration) -> bool:
    """The coordinate map must be constant on classes, bijective and multiplicative."""
    Q = pi1.group
    if Q.order != len(en.classes) or not en.abelian:
        return False
    if any(_killed_count(Q, e) != _killed_count(en.group, e) for e in range(1, Q.exponent + 1)):
        return False
    images = []
    for cls in en.classes:
        vals = {pi1.coords[key] for key in cls}
        if len(vals) != 1:
            return False
        images.append(vals.pop())
    if len(set(images)) != len(images):
        return False
    size = len(images)
    return all(images[en.table[i, j]] == images[i] + images[j] for i in range(size) for j in range(size))


# -- long exact sequence ----------------------------------------------------------------

POSITIONS = ("pi2 Coker", "pi1 C", "pi1 D", "pi1 Coker", "pi0 C", "pi0 D", "pi0 Coker")


@dataclass
class LesReport:
    groups: list[FgAbGroup]
    maps: list[GroupHom]
    exact: dict[str, bool]
    homotopy: HomotopyGroups

    @property
    def ok(self) -> bool:
        return all(self.exact.values()) and self.homotopy.agree is not False


def long_exact_sequence(F: PicFunctor, enumerate_cells: bool = True) -> LesReport:
    """0 -> pi2 Coker -> pi1 C -> pi1 D -> pi1 Coker -> pi0 C -> pi0 D -> pi0 Coker -> 0."""
    k = CokBigroupoid(F)
    hg = cok_homotopy_groups(k, enumerate_cells)
    pi1 = hg.pi1_witness
    Q = pi1.group
    GC, MD = F.source.g, F.target.m
    boundary_in = hom_from_images(MD, Q, [pi1.of(GC.zero, e) for e in MD.generators()])
    lift = {}
    for (n_idx, u_idx), q in pi1.coords.items():
        lift.setdefault(q, n_idx)
    boundary_out = hom_from_images(Q, GC, [GC.elements[lift[e]] for e in Q.generators()])
    groups = [hg.pi2, F.source.m, MD, Q, GC, F.target.g, hg.pi0]
    maps = [hg.pi2_inclusion, F.f1, boundary_in, boundary_out, F.f0, hg.pi0_projection]
    exact = {POSITIONS[0]: hom_subquotients(maps[0]).kernel.rank == 0}
    for i in range(1, 6):
        exact[POSITIONS[i]] = is_exact_at(maps[i - 1], maps[i])
    exact[POSITIONS[6]] = hom_subquotients(maps[5]).cokernel.rank == 0
    return LesReport(groups, maps, exact, hg)


# -- the double category ----------------------------------------------------------------


@dataclass
class DoubleCheckReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def record(self, name: str, bad: np.ndarray | int, count: int):
        self.checked[name] = self.checked.get(name, 0) + count
        nbad = int(np.count_nonzero(bad)) if isinstance(bad, np.ndarray) else int(bad)
        self.failures[name] = self.failures.get(name, 0) + nbad

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": {k: {"instances": self.checked[k], "failures": self.failures[k]} for k in sorted(self.checked)},
        }


def _grid(*sizes):
    return np.meshgrid(*(np.arange(s) for s in sizes), indexing="ij")


def double_category_check(F: PicFunctor, budget: int | None = None) -> DoubleCheckReport:
    """Exhaustive cell-level checks of the double category built from F.

    Horizontal objects are quadruples (x, y, f, n) with x = y + f0 n, and a
    square (a, b, alpha): (x, y, f, n) -> (x, y, g, n) is valid when
    ``b + f1 alpha + f = g + a``.  Every check quantifies over all instances;
    a check whose instance count exceeds ``budget`` raises BudgetExceeded.
    """
    _require_finite(F)
    if not (F.source.is_permutative() and F.target.is_permutative()):
        raise NotPermutative("strictify first")
    budget = default_budget() if budget is None else budget
    GC, MC, GD, MD = F.source.g, F.source.m, F.target.g, F.target.m
    nGC, nMC, nGD, nMD = GC.order, MC.order, GD.order, MD.order
    A, S, N = MD.add_table, MD.sub_table, MD.neg_table
    AC = MC.add_table
    gC, gD = GC.add_table, GD.add_table
    f0, f1 = F.f0.index_map, F.f1.index_map
    phi = F.phi_table
    cD, cC = F.target.cocycle.c, F.source.cocycle.c
    report = DoubleCheckReport()

    def need(name, count):
        if count > budget:
            raise BudgetExceeded(f"{name}: {count} instances exceed the budget {budget}")
        return count

    flat_add = A.ravel()

    def add(*xs):
        # 1-d lookups are much faster than 2-d fancy indexing on big grids
        out = xs[0]
        for x in xs[1:]:
            out = flat_add[out * nMD + x]
        return out

    def valid(a, b, alpha, f_src, f_tgt):
        return add(b, f1[alpha], f_src) == add(f_tgt, a)

    def src_of(y, n):
        return gD[y, f0[n]]

    def target_label(a, b, alpha, f):
        # the unique g making (a, b, alpha) a square out of a quadruple with label f
        return S[add(f, b, f1[alpha]), a]

    # unit functor: U(x) = (x, x, 0, 0), U(a) = (a, a, 0)
    cnt = need("unit", nGD * nMD * nMD)
    x, a, a2 = _grid(nGD, nMD, nMD)
    bad = ~valid(a, a, 0, 0, 0) | (A[a, a2] != A[a2, a])  # U(a) is a square, composites stay units
    report.record("unit", bad, cnt)

    # source/target functors and vertical composition: squares compose and S, T add
    cnt = need("source-target", nGD * nGC * nMD * (nMD * nMD * nMC) ** 2)
    y, n, f, a, b, al = _grid(nGD, nGC, nMD, nMD, nMD, nMC)
    g = target_label(a, b, al, f)
    report.record("squares", ~valid(a, b, al, f, g), y.size)
    y, n, f, a, b, al = (v.ravel() for v in _grid(nGD, nGC, nMD, nMD, nMD, nMC))
    bad_total = 0
    for a2v, b2v, al2v in itertools.product(range(nMD), range(nMD), range(nMC)):
        g = target_label(a, b, al, f)
        h = target_label(a2v, b2v, al2v, g)
        comp_ok = valid(A[a, a2v], A[b, b2v], AC[al, al2v], f, h)
        bad_total += int(np.count_nonzero(~comp_ok))
    report.record("source-target", bad_total, cnt)

    # horizontal composition on objects and squares
    cnt = need("composition", nGD * nGC * nMD * nGC * nMD * nMD**3 * nMC**2)
    z, m, gl, n, fl = (v.ravel() for v in _grid(nGD, nGC, nMD, nGC, nMD))
    comp_label = add(fl, gl, phi[m, n])
    bad_total = 0
    for a, b, c, al, be in itertools.product(range(nMD), range(nMD), range(nMD), range(nMC), range(nMC)):
        f_t = target_label(a, b, al, fl)
        g_t = target_label(b, c, be, gl)
        tgt = add(f_t, g_t, phi[m, n])
        bad_total += int(np.count_nonzero(~valid(a, c, AC[be, al], comp_label, tgt)))
    report.record("composition", bad_total, cnt)

    # composition preserves vertical composition; the data of a square in the
    # composite never depends on the objects, so pairs of data cover all cases
    data = nMD**3 * nMC**2
    cnt = need("composition-functoriality", data * data)
    d1 = [v.ravel() for v in _grid(nMD, nMD, nMD, nMC, nMC)]
    bad_total = 0
    for a2, b2, c2, al2, be2 in itertools.product(range(nMD), range(nMD), range(nMD), range(nMC), range(nMC)):
        a, b, c, al, be = d1
        lhs = (A[a, a2], A[c, c2], AC[AC[be, al], AC[be2, al2]])
        rhs = (A[a, a2], A[c, c2], AC[AC[be, be2], AC[al, al2]])
        bad_total += sum(int(np.count_nonzero(l != r)) for l, r in zip(lhs, rhs))
    report.record("composition-functoriality", bad_total, cnt)

    # associator and unitors of the composition are the identity squares
    cnt = need("associativity", nGD * (nGC * nMD) ** 3)
    w, l, hl, m, gl, n, fl = _grid(nGD, nGC, nMD, nGC, nMD, nGC, nMD)
    left = add(add(fl, gl, phi[m, n]), hl, phi[l, gC[m, n]])
    right = add(fl, add(gl, hl, phi[l, m]), phi[gC[l, m], n])
    report.record("associativity", left != right, cnt)
    cnt = need("unitors", nGD * nGC * nMD)
    y, n, fl = _grid(nGD, nGC, nMD)
    report.record("unitors", (add(0, fl, phi[n, 0]) != fl) | (add(fl, 0, phi[0, n]) != fl), cnt)

    # interchange: (X + X') . (Y + Y') => (X . Y) + (X' . Y') along c_C(m', n)
    side = nGD * nGC * nMD * nGC * nMD
    cnt = need("interchange", side * side)
    z, m, gl, n, fl = (v.ravel() for v in _grid(nGD, nGC, nMD, nGC, nMD))
    y = src_of(z, m)
    bad_total = 0
    for zp, mp, gp, np_, fp in itertools.product(range(nGD), range(nGC), range(nMD), range(nGC), range(nMD)):
        yp = src_of(zp, mp)
        xx = add(fl, fp, cD[f0[n], yp], phi[n, np_])  # X + X'
        yy = add(gl, gp, cD[f0[m], zp], phi[m, mp])  # Y + Y'
        lhs = add(xx, yy, phi[gC[m, mp], gC[n, np_]])
        xy = add(fl, gl, phi[m, n])
        xy2 = add(fp, gp, phi[mp, np_])
        rhs = add(xy, xy2, cD[f0[gC[m, n]], zp], phi[gC[m, n], gC[mp, np_]])
        bad_total += int(np.count_nonzero(~valid(0, 0, cC[mp, n], lhs, rhs)))
    report.record("interchange", bad_total, cnt)

    # unit comparison U(x + x') -> U(x) + U(x')
    cnt = need("unit-comparison", nGD * nGD)
    x, xp = _grid(nGD, nGD)
    report.record("unit-comparison", add(0, 0, cD[f0[0], xp], phi[0, 0]) != 0, cnt)

    # monoidal product of squares, and the symmetry squares
    obj = nGD * nGC * nMD
    sq = nMD * nMD * nMC
    cnt = need("tensor", (obj * sq) ** 2)
    y, n, fl, a, b, al = (v.ravel() for v in _grid(nGD, nGC, nMD, nMD, nMD, nMC))
    gl = target_label(a, b, al, fl)
    y, n, fl, a, b, al, gl = (v[:, None] for v in (y, n, fl, a, b, al, gl))
    ap, bp, alp = (v.ravel()[None, :] for v in _grid(nMD, nMD, nMC))
    bad_total = 0
    # the primed square labels are broadcast, the primed objects looped over
    for yp, np_, fp in itertools.product(range(nGD), range(nGC), range(nMD)):
        gp = target_label(ap, bp, alp, fp)
        twist = cD[f0[n], yp]
        src = add(fl, fp, twist, phi[n, np_])
        tgt = add(gl, gp, twist, phi[n, np_])
        bad_total += int(np.count_nonzero(~valid(A[a, ap], A[b, bp], AC[al, alp], src, tgt)))
    report.record("tensor", bad_total, cnt)

    cnt = need("symmetry", obj * obj)
    y, n, fl, yp, np_, fp = _grid(nGD, nGC, nMD, nGD, nGC, nMD)
    x, xp = src_of(y, n), src_of(yp, np_)
    src = add(fl, fp, cD[f0[n], yp], phi[n, np_])
    tgt = add(fp, fl, cD[f0[np_], y], phi[np_, n])
    report.record("symmetry", ~valid(cD[x, xp], cD[y, yp], cC[n, np_], src, tgt), cnt)

    # companions (x, x, a, 0) and conjoints (x, x, -a, 0) of every vertical a
    cnt = need("companion", nGD * nMD)
    x, a = _grid(nGD, nMD)
    # squares (a, 1, 0): companion => U and (1, a, 0): U => companion
    bad = ~valid(a, 0, 0, a, 0) | ~valid(0, a, 0, 0, a)
    # vertical composite is U(a); horizontal composite is the identity square
    bad |= (A[0, a] != a) | (A[a, 0] != a) | (add(0, 0, phi[0, 0]) != 0)
    report.record("companion", bad, cnt)
    cnt = need("conjoint", nGD * nMD)
    bad = ~valid(a, 0, 0, 0, N[a]) | ~valid(0, a, 0, N[a], 0)
    bad |= (A[a, 0] != a) | (A[0, a] != a)
    report.record("conjoint", bad, cnt)
    return report


# -- Postnikov tower ----------------------------------------------------------------------


@dataclass
class PostnikovTower:
    strict: PicGroupoid
    alpha0: PicFunctor
    coker: CokBigroupoid
    k0_quadratic: QuadraticMap
    homotopy: HomotopyGroups
    pi2_iso: GroupHom
    ok: bool
    notes: list[str] = field(default_factory=list)

    def k0(self, x: GroupElement, u: GroupElement) -> CokOneCell:
        """The second stage on morphisms: u at x becomes the 1-cell (u, I)."""
        return self.coker.embed(x, u)


def postnikov_tower(p: PicGroupoid) -> PostnikovTower:
    notes = []
    strict = p
    if not p.is_permutative():
        strict, cert = strictify(p)
        notes.append(f"strictified first (quadratic maps agree: {cert.quadratic_maps_agree})")
    a0 = alpha0(strict)
    k = CokBigroupoid(a0)
    hg = cok_homotopy_groups(k)
    iso = hg.pi2_inclusion
    ok = hg.pi0.rank == 0 and hg.pi1.rank == 0 and iso.target == strict.m and is_isomorphism(iso) and hg.agree is not False
    return PostnikovTower(strict, a0, k, quadratic_of(strict.cocycle), hg, iso, ok, notes)

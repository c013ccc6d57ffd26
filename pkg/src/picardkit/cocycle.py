"""Symmetric 3-cocycles (h, c) on a finite abelian group G with values in M.

Tables are dense numpy arrays of M-element indices, keyed by the
lexicographic element order of G: ``h[x, y, z]`` and ``c[x, y]``.  The only
closed forms are the sphere cocycle on Z (h = 0, c(m, n) = mn mod 2) and
the zero cocycle, which is allowed on infinite groups.

Sign convention: the coboundary of a normalized 2-cochain k is

    dh(x, y, z) = k(y, z) - k(x+y, z) + k(x, y+z) - k(x, y)
    dc(x, y)    = k(y, x) - k(x, y)

and (h, c) ~ (h', c') iff (h - h', c - c') = (dh, dc) for some k.  This
is the orientation under which coboundaries satisfy the hexagon axiom
for every M (the two orientations agree when 2M = 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterator

import numpy as np

from .abelian import FgAbGroup, GroupElement, elem_reduce, make_group
from .errors import InfiniteGroup, InvalidCocycle, Mismatch, NotNormalized, SearchTooLarge, TorsionViolation
from .report import ValidationReport, Violation, default_budget
from .smith import diagonal, snf_full

SPHERE = "sphere"
ZERO = "zero"


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _require_finite(*groups):
    for g in groups:
        if not g.is_finite:
            raise InfiniteGroup(f"{g} is infinite; table mode needs finite groups")


@dataclass(frozen=True, eq=False)
class SymCocycle3:
    g: FgAbGroup
    m: FgAbGroup
    h: np.ndarray | None = None
    c: np.ndarray | None = None
    form: str = "table"

    def __post_init__(self):
        if self.form == SPHERE:
            if self.g != make_group([0]) or self.m != make_group([2]):
                raise Mismatch("the sphere form lives on G = Z, M = Z/2")
            return
        if self.form == ZERO:
            return
        if self.form != "table":
            raise ValueError(f"unknown cocycle form {self.form!r}")
        _require_finite(self.g, self.m)
        n = self.g.order
        h = np.zeros((n, n, n), dtype=np.int64) if self.h is None else np.asarray(self.h)
        c = np.zeros((n, n), dtype=np.int64) if self.c is None else np.asarray(self.c)
        if h.shape != (n, n, n) or c.shape != (n, n):
            raise Mismatch(f"table shapes {h.shape}, {c.shape} do not fit |G| = {n}")
        if h.size and (h.min() < 0 or h.max() >= self.m.order) or c.size and (c.min() < 0 or c.max() >= self.m.order):
            raise Mismatch("table entries must be element indices of M")
        object.__setattr__(self, "h", _frozen(h))
        object.__setattr__(self, "c", _frozen(c))

    @property
    def is_closed_form(self) -> bool:
        return self.form != "table"

    def __eq__(self, other):
        if not isinstance(other, SymCocycle3):
            return NotImplemented
        if (self.g, self.m, self.form) != (other.g, other.m, other.form):
            return False
        return self.is_closed_form or (np.array_equal(self.h, other.h) and np.array_equal(self.c, other.c))

    def __hash__(self):
        return hash((self.g, self.m, self.form))

    def h_at(self, x: GroupElement, y: GroupElement, z: GroupElement) -> GroupElement:
        if self.is_closed_form:
            return self.m.zero
        return self.m.elements[self.h[x.index, y.index, z.index]]

    def c_at(self, x: GroupElement, y: GroupElement) -> GroupElement:
        if self.form == SPHERE:
            return self.m((x.coords[0] * y.coords[0]) % 2)
        if self.form == ZERO:
            return self.m.zero
        return self.m.elements[self.c[x.index, y.index]]

    def is_permutative(self) -> bool:
        return self.is_closed_form or not self.h.any()

    def __repr__(self):
        if self.is_closed_form:
            return f"SymCocycle3({self.form})"
        return f"SymCocycle3(G={self.g}, M={self.m}, h={'0' if not self.h.any() else '...'}, c={self.c.tolist()})"


def zero_cocycle(g: FgAbGroup, m: FgAbGroup) -> SymCocycle3:
    """Zero tables, or the ``zero`` closed form when either group is infinite."""
    if g.is_finite and m.is_finite:
        return SymCocycle3(g, m)
    return SymCocycle3(g, m, form=ZERO)


def sphere_cocycle() -> SymCocycle3:
    return SymCocycle3(make_group([0]), make_group([2]), form=SPHERE)


def cocycle_from_functions(g: FgAbGroup, m: FgAbGroup, h=None, c=None) -> SymCocycle3:
    """Tabulate ``h(x, y, z)`` and ``c(x, y)`` given as callables on elements."""
    _require_finite(g, m)
    els = g.elements
    n = len(els)
    H = np.zeros((n, n, n), dtype=np.int64)
    C = np.zeros((n, n), dtype=np.int64)
    if h is not None:
        for (i, x), (j, y), (k, z) in itertools.product(enumerate(els), repeat=3):
            H[i, j, k] = m.index(_as_elem(m, h(x, y, z)))
    if c is not None:
        for (i, x), (j, y) in itertools.product(enumerate(els), repeat=2):
            C[i, j] = m.index(_as_elem(m, c(x, y)))
    return SymCocycle3(g, m, H, C)


def _as_elem(m: FgAbGroup, value) -> GroupElement:
    if isinstance(value, GroupElement):
        return value
    if isinstance(value, (int, np.integer)):
        value = (int(value),)
    return elem_reduce(m, value)


# -- validation ----------------------------------------------------------------


def _collect(report, axiom, mask, groups, instance_idx, lhs, rhs, m):
    idx = np.argwhere(mask)
    report.checked[axiom] = int(mask.size)
    for row in idx:
        row = tuple(int(i) for i in row)
        inst = tuple(g.elements[i].coords for g, i in zip(groups, instance_idx(row)))
        report.violations.append(Violation(axiom, inst, m.elements[lhs[row]].coords, m.elements[rhs[row]].coords))


def validate_symmetric_cocycle(s: SymCocycle3) -> ValidationReport:
    """Check normalization, the 3-cocycle identity, hexagon and antisymmetry.

    Every violated instance is reported with its full argument tuple.
    """
    if s.form == SPHERE:
        return _validate_sphere_form(s)
    if s.form == ZERO:
        return ValidationReport(f"zero cocycle on G={s.g}, M={s.m}", mode="closed-form")
    g, m = s.g, s.m
    h, c = s.h, s.c
    A, neg = m.add_table, m.neg_table
    gadd = g.add_table
    n = g.order
    report = ValidationReport(f"symmetric 3-cocycle on G={g}, M={m}")
    zero_m = np.zeros_like(h[:, 0, :])

    _collect(report, "normalization", h[:, 0, :] != 0, (g, g, g), lambda r: (r[0], 0, r[1]),
             h[:, 0, :], zero_m, m)

    U, X, Y, Z = np.meshgrid(*(np.arange(n),) * 4, indexing="ij")
    lhs = A[A[h[X, Y, Z], h[U, gadd[X, Y], Z]], h[U, X, Y]]
    rhs = A[h[U, X, gadd[Y, Z]], h[gadd[U, X], Y, Z]]
    _collect(report, "pentagon", lhs != rhs, (g,) * 4, lambda r: r, lhs, rhs, m)

    X, Y, Z = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    lhs = A[A[h[Y, Z, X], c[X, gadd[Y, Z]]], h[X, Y, Z]]
    rhs = A[A[c[X, Z], h[Y, X, Z]], c[X, Y]]
    _collect(report, "hexagon", lhs != rhs, (g,) * 3, lambda r: r, lhs, rhs, m)

    lhs, rhs = c, neg[c.T]
    _collect(report, "antisymmetry", lhs != rhs, (g, g), lambda r: r, lhs, rhs, m)
    return report


def _validate_sphere_form(s: SymCocycle3) -> ValidationReport:
    # h = 0 and c(m, n) = mn mod 2 only depend on arguments mod 2, so the
    # axioms on Z reduce to the same axioms on (Z/2)^k.
    report = ValidationReport("sphere cocycle on G=Z, M=Z/2", mode="closed-form")

    def c(a, b):
        return (a * b) % 2

    parity = range(2)
    report.checked["normalization"] = 4
    report.checked["pentagon"] = 16
    for x, y, z in itertools.product(parity, repeat=3):
        lhs = (c(x, y + z)) % 2
        rhs = (c(x, z) + c(x, y)) % 2
        if lhs != rhs:
            report.violations.append(Violation("hexagon", ((x,), (y,), (z,)), (lhs,), (rhs,)))
    report.checked["hexagon"] = 8
    for x, y in itertools.product(parity, repeat=2):
        if c(x, y) != (-c(y, x)) % 2:
            report.violations.append(Violation("antisymmetry", ((x,), (y,)), (c(x, y),), (-c(y, x) % 2,)))
    report.checked["antisymmetry"] = 4
    return report


# -- cochains and coboundaries ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cochain2:
    g: FgAbGroup
    m: FgAbGroup
    k: np.ndarray

    def __post_init__(self):
        _require_finite(self.g, self.m)
        k = np.asarray(self.k, dtype=np.int64)
        n = self.g.order
        if k.shape != (n, n):
            raise Mismatch(f"cochain shape {k.shape} does not fit |G| = {n}")
        object.__setattr__(self, "k", _frozen(k))

    def is_normalized(self) -> bool:
        return not self.k[0, :].any() and not self.k[:, 0].any()

    def __eq__(self, other):
        return isinstance(other, Cochain2) and (self.g, self.m) == (other.g, other.m) and np.array_equal(self.k, other.k)

    def __hash__(self):
        return hash((self.g, self.m, self.k.tobytes()))

    def value(self, x, y) -> GroupElement:
        return self.m.elements[self.k[x.index, y.index]]


def cochain_from_function(g, m, k) -> Cochain2:
    els = g.elements
    K = np.array([[m.index(_as_elem(m, k(x, y))) for y in els] for x in els], dtype=np.int64).reshape(len(els), len(els))
    return Cochain2(g, m, K)


def _coboundary_arrays(g: FgAbGroup, m: FgAbGroup, k: np.ndarray):
    """Vectorized coboundary of a batch of cochains ``k`` with shape (..., n, n)."""
    n = g.order
    A, S = m.add_table, m.sub_table
    gadd = g.add_table
    X, Y, Z = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    dh = A[S[k[..., Y, Z], k[..., gadd[X, Y], Z]], S[k[..., X, gadd[Y, Z]], k[..., X, Y]]]
    X2, Y2 = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    dc = S[k[..., Y2, X2], k[..., X2, Y2]]
    return dh, dc


def coboundary_of(k: Cochain2) -> tuple[np.ndarray, np.ndarray]:
    """Return the tables ``(dh, dc)`` of the coboundary of a normalized cochain."""
    if not k.is_normalized():
        raise NotNormalized("k(x, 0) and k(0, y) must vanish")
    dh, dc = _coboundary_arrays(k.g, k.m, k.k)
    return _frozen(dh), _frozen(dc)


def subtract_coboundary(s: SymCocycle3, k: Cochain2) -> SymCocycle3:
    """The cohomologous cocycle ``(h - dh, c - dc)``."""
    if (s.g, s.m) != (k.g, k.m):
        raise Mismatch("cocycle and cochain live on different groups")
    dh, dc = coboundary_of(k)
    S = s.m.sub_table
    return SymCocycle3(s.g, s.m, S[s.h, dh], S[s.c, dc])


def _cochain_batch(m_order: int, positions: int, start: int, stop: int) -> np.ndarray:
    """Digits (most significant first) of the integers in [start, stop)."""
    i = np.arange(start, stop, dtype=np.int64)[:, None]
    powers = m_order ** np.arange(positions - 1, -1, -1, dtype=np.int64)
    return (i // powers) % m_order


def cochain_space_size(g: FgAbGroup, m: FgAbGroup) -> int:
    return m.order ** ((g.order - 1) ** 2)


def are_cohomologous(a: SymCocycle3, b: SymCocycle3, budget: int | None = None, chunk: int = 1 << 14):
    """Exhaustively search for a normalized k with ``a - b = coboundary(k)``.

    Candidates are scanned in lexicographic order of their tables, so the
    returned witness is the lexicographically first one.  Returns None when
    no witness exists.
    """
    if a.is_closed_form or b.is_closed_form:
        raise InfiniteGroup("cohomology search needs finite tables")
    if (a.g, a.m) != (b.g, b.m):
        raise Mismatch("cocycles live on different groups")
    g, m = a.g, a.m
    budget = default_budget() if budget is None else budget
    n = g.order
    positions = (n - 1) ** 2
    total = m.order**positions
    if total > budget:
        raise SearchTooLarge(f"{total} candidate cochains exceed the budget {budget}")
    S = m.sub_table
    want_h = S[a.h, b.h]
    want_c = S[a.c, b.c]
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        digits = _cochain_batch(m.order, positions, start, stop)
        k = np.zeros((stop - start, n, n), dtype=np.int64)
        k[:, 1:, 1:] = digits.reshape(stop - start, n - 1, n - 1)
        dh, dc = _coboundary_arrays(g, m, k)
        hit = (dc == want_c).all(axis=(1, 2))
        if hit.any():
            hit &= (dh == want_h).all(axis=(1, 2, 3))
        if hit.any():
            return Cochain2(g, m, k[int(np.argmax(hit))])
    return None


# -- standard representatives ----------------------------------------------------


def standard_h_mu(n: int, mu: GroupElement) -> np.ndarray:
    """Table of h_mu on Z/n: ``x * mu`` when ``y + z >= n`` (integer reps), else 0."""
    m = mu.parent
    if not (n * mu).is_zero():
        raise TorsionViolation(f"{n} * {mu} != 0 in {m}")
    H = np.zeros((n, n, n), dtype=np.int64)
    for x, y, z in itertools.product(range(n), repeat=3):
        if y + z >= n:
            H[x, y, z] = m.index(x * mu)
    return _frozen(H)


def bilinear_symmetry_rho(g: FgAbGroup, a) -> np.ndarray:
    """Symmetry table ``(x, y) -> sum_i x_i y_i a_i``.

    ``a`` is a single element (G must be cyclic; the literal formula on
    representatives is used) or one value per generator of G (biadditive
    mode, each value must satisfy 2a = 0 and d_i a = 0).
    """
    _require_finite(g)
    if isinstance(a, GroupElement):
        if g.rank > 1:
            raise Mismatch(f"{g} is not cyclic; pass one value per generator")
        values = [a] * g.rank
    else:
        values = list(a)
        if len(values) != g.rank:
            raise Mismatch(f"need {g.rank} generator values, got {len(values)}")
        for d, v in zip(g.factors, values):
            if not (2 * v).is_zero():
                raise TorsionViolation(f"2 * {v} != 0")
            if not (d * v).is_zero():
                raise TorsionViolation(f"{d} * {v} != 0, so the biadditive extension is ill-defined")
    if not values:
        return _frozen(np.zeros((g.order, g.order)))
    m = values[0].parent
    coeff = np.array([v.coords for v in values], dtype=np.int64).reshape(g.rank, m.rank)
    ca = g.coord_array
    xy = ca[:, None, :] * ca[None, :, :]
    return _frozen(m.encode(xy @ coeff))


def rho_cocycle(g: FgAbGroup, values) -> SymCocycle3:
    """The permutative cocycle ``(0, rho)`` from generator values."""
    values = [values] if isinstance(values, GroupElement) else list(values)
    m = values[0].parent if values else None
    if m is None:
        raise Mismatch("need at least one generator value to know M")
    return SymCocycle3(g, m, None, bilinear_symmetry_rho(g, values))


# -- quadratic maps ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuadraticMap:
    g: FgAbGroup
    m: FgAbGroup
    q: np.ndarray | None = None
    form: str = "table"

    def __post_init__(self):
        if self.form in (SPHERE, ZERO):
            return
        _require_finite(self.g, self.m)
        q = np.zeros(self.g.order, dtype=np.int64) if self.q is None else np.asarray(self.q, dtype=np.int64)
        object.__setattr__(self, "q", _frozen(q))

    def __call__(self, x: GroupElement) -> GroupElement:
        if self.form == SPHERE:
            return self.m(x.coords[0] % 2)
        if self.form == ZERO:
            return self.m.zero
        return self.m.elements[self.q[x.index]]

    def __eq__(self, other):
        if not isinstance(other, QuadraticMap):
            return NotImplemented
        if (self.g, self.m, self.form) != (other.g, other.m, other.form):
            return False
        return self.form != "table" or np.array_equal(self.q, other.q)

    def __hash__(self):
        return hash((self.g, self.m, self.form))

    def values(self) -> list[tuple[int, ...]]:
        return [self.m.elements[i].coords for i in self.q]


def quadratic_of(s: SymCocycle3) -> QuadraticMap:
    """``q(x) = c(x, x)``."""
    if s.form in (SPHERE, ZERO):
        return QuadraticMap(s.g, s.m, form=s.form)
    return QuadraticMap(s.g, s.m, np.diagonal(s.c).copy())


def validate_quadratic(q: QuadraticMap) -> ValidationReport:
    """Check ``q(x) = q(-x)`` and the six-term identity on all triples."""
    if q.form != "table":
        raise InfiniteGroup("exhaustive quadratic check needs a finite group")
    g, m = q.g, q.m
    A, gadd, gneg = m.add_table, g.add_table, g.neg_table
    Q = q.q
    n = g.order
    report = ValidationReport(f"quadratic map on G={g}, M={m}")
    _collect(report, "even", Q != Q[gneg], (g,), lambda r: r, Q, Q[gneg], m)
    X, Y, Z = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    lhs = A[A[Q[gadd[gadd[X, Y], Z]], Q[X]], A[Q[Y], Q[Z]]]
    rhs = A[A[Q[gadd[Y, Z]], Q[gadd[Z, X]]], Q[gadd[X, Y]]]
    _collect(report, "six-term", lhs != rhs, (g,) * 3, lambda r: r, lhs, rhs, m)
    return report


def quadratic_two_torsion_violations(q: QuadraticMap) -> list[tuple[int, ...]]:
    """Elements x with ``2 q(x) != 0``; symmetric cocycles never produce any.

    Kept apart from :func:`validate_quadratic` because the quadratic-map
    axioms alone admit maps (G = Z/2, M = Z/4, q(1) = 1) with 2q != 0.
    """
    m = q.m
    doubled = m.mul_table(2)[q.q]
    return [q.g.elements[i].coords for i in np.flatnonzero(doubled)]


# -- cyclic reduction ----------------------------------------------------------------


def reduce_cyclic(s: SymCocycle3) -> SymCocycle3:
    """Replace a cocycle on Z/n by the standard form ``(h_{n c(1,1)}, rho_{c(1,1)})``."""
    g = s.g
    if s.is_closed_form or g.rank != 1 or not g.is_finite:
        raise Mismatch("reduce_cyclic needs a finite cyclic group")
    report = validate_symmetric_cocycle(s)
    if not report:
        raise InvalidCocycle("input is not a symmetric 3-cocycle", report)
    n = g.factors[0]
    a = s.c_at(g(1), g(1))
    return SymCocycle3(g, s.m, standard_h_mu(n, n * a), bilinear_symmetry_rho(g, a))


# -- the cocycle group and H^3_sym ---------------------------------------------------------


class CocycleSpace:
    """All symmetric 3-cocycles on (G, M), parametrized as the solution set
    of the (linear) axioms.

    The axioms are integer linear equations in the table entries, so the
    cocycles form the subgroup {v in M^N : E v = 0}.  With the Smith form
    ``E V = U^-1 D`` this is {V w : d_i w_i = 0}, which we enumerate
    completely.
    """

    def __init__(self, g: FgAbGroup, m: FgAbGroup):
        _require_finite(g, m)
        self.g, self.m = g, m
        n = g.order
        gadd = g.add_table
        hvars = [(x, y, z) for x in range(n) for y in range(1, n) for z in range(n)]
        self._hpos = {key: i for i, key in enumerate(hvars)}
        self._cpos = {(x, y): len(hvars) + x * n + y for x in range(n) for y in range(n)}
        self.nvars = len(hvars) + n * n

        def hv(x, y, z):
            return self._hpos.get((int(x), int(y), int(z)))

        def cv(x, y):
            return self._cpos[int(x), int(y)]

        rows = set()

        def emit(terms):
            row = [0] * self.nvars
            for sign, var in terms:
                if var is not None:
                    row[var] += sign
            if any(row):
                # E v = 0 and -E v = 0 are the same constraint
                first = next(v for v in row if v)
                rows.add(tuple(row) if first > 0 else tuple(-v for v in row))

        rng = range(n)
        for u, x, y, z in itertools.product(rng, repeat=4):
            emit([(1, hv(x, y, z)), (1, hv(u, gadd[x, y], z)), (1, hv(u, x, y)),
                  (-1, hv(u, x, gadd[y, z])), (-1, hv(gadd[u, x], y, z))])
        for x, y, z in itertools.product(rng, repeat=3):
            emit([(1, hv(y, z, x)), (1, cv(x, gadd[y, z])), (1, hv(x, y, z)),
                  (-1, cv(x, z)), (-1, hv(y, x, z)), (-1, cv(x, y))])
        for x, y in itertools.product(rng, repeat=2):
            emit([(1, cv(x, y)), (1, cv(y, x))])
        E = [list(r) for r in sorted(rows)]
        if E:
            _, D, V, _, _ = snf_full(E, left=False)
            diag = diagonal(D)
        else:
            V = [[int(i == j) for j in range(self.nvars)] for i in range(self.nvars)]
            diag = []
        d = [diag[i] if i < len(diag) else 0 for i in range(self.nvars)]
        # per factor of M: the free parameters (column of V, step, count)
        self._params = []
        for fi, mod in enumerate(m.factors):
            for i, di in enumerate(d):
                gi = gcd(di, mod)
                if gi > 1:
                    col = np.array([V[r][i] % mod for r in range(self.nvars)], dtype=np.int64)
                    self._params.append((fi, col, mod // gi, gi))

    @property
    def size(self) -> int:
        return prod(p[3] for p in self._params)

    def batches(self, chunk: int = 1 << 14) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(h, c)`` table batches covering every cocycle exactly once."""
        g, m = self.g, self.m
        n = g.order
        counts = np.array([p[3] for p in self._params], dtype=np.int64)
        radix = np.array([prod(counts[i + 1:].tolist()) for i in range(len(counts))], dtype=np.int64)
        total = self.size
        hidx = np.array(list(self._hpos), dtype=np.int64).reshape(-1, 3)
        for start in range(0, total, chunk):
            stop = min(total, start + chunk)
            t = np.arange(start, stop, dtype=np.int64)[:, None]
            digits = (t // radix) % counts if len(counts) else np.zeros((stop - start, 0), dtype=np.int64)
            coords = np.zeros((stop - start, self.nvars, m.rank), dtype=np.int64)
            for j, (fi, col, step, _) in enumerate(self._params):
                coords[:, :, fi] += (digits[:, j:j + 1] * step) * col[None, :]
            vals = m.encode(coords)
            H = np.zeros((stop - start, n, n, n), dtype=np.int64)
            if len(hidx):
                H[:, hidx[:, 0], hidx[:, 1], hidx[:, 2]] = vals[:, : len(hidx)]
            C = vals[:, len(hidx):].reshape(-1, n, n)
            yield H, C

    def __iter__(self) -> Iterator[SymCocycle3]:
        for H, C in self.batches():
            for h, c in zip(H, C):
                yield SymCocycle3(self.g, self.m, h, c)


def coboundary_set(g: FgAbGroup, m: FgAbGroup, budget: int | None = None, chunk: int = 1 << 14) -> set[bytes]:
    """Every coboundary ``(dh, dc)`` as raw bytes of the stacked tables."""
    budget = default_budget() if budget is None else budget
    n = g.order
    positions = (n - 1) ** 2
    total = m.order**positions
    if total > budget:
        raise SearchTooLarge(f"{total} cochains exceed the budget {budget}")
    out = set()
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        k = np.zeros((stop - start, n, n), dtype=np.int64)
        k[:, 1:, 1:] = _cochain_batch(m.order, positions, start, stop).reshape(stop - start, n - 1, n - 1)
        dh, dc = _coboundary_arrays(g, m, k)
        flat = np.concatenate([dh.reshape(len(k), -1), dc.reshape(len(k), -1)], axis=1)
        out.update(row.tobytes() for row in np.ascontiguousarray(flat))
    return out


@dataclass
class H3SymResult:
    g: FgAbGroup
    m: FgAbGroup
    representatives: list[SymCocycle3]
    cocycle_count: int
    coboundary_count: int
    class_sizes: list[int] = field(default_factory=list)

    @property
    def class_count(self) -> int:
        return len(self.representatives)


def enumerate_h3_sym(g: FgAbGroup, m: FgAbGroup, budget: int | None = None) -> H3SymResult:
    """Enumerate every symmetric 3-cocycle and partition them into classes."""
    _require_finite(g, m)
    budget = default_budget() if budget is None else budget
    space = CocycleSpace(g, m)
    if space.size > budget:
        raise SearchTooLarge(f"{space.size} cocycles exceed the budget {budget}")
    bounds = coboundary_set(g, m, budget)
    S = m.sub_table
    reps: list[tuple[np.ndarray, np.ndarray]] = []
    sizes: list[int] = []
    for H, C in space.batches():
        flat = np.concatenate([H.reshape(len(H), -1), C.reshape(len(C), -1)], axis=1)
        assigned = np.zeros(len(flat), dtype=bool)
        for i in range(len(flat)):
            if assigned[i]:
                continue
            row = flat[i]
            for r, rep in enumerate(reps):
                if np.ascontiguousarray(S[row, rep]).tobytes() in bounds:
                    sizes[r] += 1
                    break
            else:
                reps.append(row.copy())
                sizes.append(1)
            assigned[i] = True
    n = g.order
    out = [SymCocycle3(g, m, r[: n**3].reshape(n, n, n), r[n**3:].reshape(n, n)) for r in reps]
    return H3SymResult(g, m, out, space.size, len(bounds), sizes)


def hom_mod_two_count(g: FgAbGroup, m: FgAbGroup) -> int:
    """|Hom(G/2G, M)|, the expected number of classes."""
    # G/2G = (Z/2)^t where t counts the even (or infinite) factors of G
    t = sum(1 for d in g.factors if d % 2 == 0)
    two_torsion = prod(gcd(2, d) if d else 1 for d in m.factors)
    return two_torsion**t

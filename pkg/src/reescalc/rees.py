"""Rees-algebra layer: embeddings M in A^r, graded pieces, colengths.

A module M inside F = A^r is held as a generator matrix; its image ideal
MS in S = A[t1..tr] is generated by t-linear forms.  The fiber-degree-n
piece of (MS)^k is a submodule of a free A-module whose basis is the set
of degree-n t-monomials, which is where all length computations happen.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .context import mon_mul
from .errors import ContextMismatchError, InputError, RankMismatchError
from .groebner import SubmoduleData, contains, groebner_basis, member
from .poly import Polynomial

INFINITE = float("inf")

_FIBER_BASIS_CACHE = {}


def fiber_basis(r, n):
    """Degree-n exponent tuples in r fiber variables, descending order.

    The component order is t1^n > t1^(n-1)*t2 > ... matching the ambient
    degree-reverse-lexicographic comparison, so piece extraction is stable.
    """
    key = (r, n)
    got = _FIBER_BASIS_CACHE.get(key)
    if got is None:
        combos = [c for c in itertools.product(range(n + 1), repeat=r)
                  if sum(c) == n]
        combos.sort(key=lambda e: tuple(-x for x in reversed(e)), reverse=True)
        got = (tuple(combos), {e: i for i, e in enumerate(combos)})
        _FIBER_BASIS_CACHE[key] = got
    return got


def piece_rank(r, n):
    return comb(n + r - 1, r - 1)


@dataclass(frozen=True)
class GradedPiece:
    """A fiber-degree-n component of an ideal power, as an A-submodule."""

    n: int
    submodule: SubmoduleData
    source_power: int

    @property
    def rank(self):
        return self.submodule.rank


class ModuleEmbedding:
    """M inside F = A^r together with its image ideal MS in S.

    columns are the generators of M as vectors over the base ring; the MS
    generators are the corresponding t-linear forms.
    """

    def __init__(self, ctx, columns, rank=None):
        if ctx.fiber_vars or ctx.aux_vars:
            raise InputError("embedding matrix lives over the base ring")
        columns = tuple(tuple(col) for col in columns)
        if rank is None:
            if not columns:
                raise InputError("empty matrix needs an explicit rank")
            rank = len(columns[0])
        if rank < 1:
            raise InputError("free module rank must be positive")
        for col in columns:
            if len(col) != rank:
                raise RankMismatchError("ragged generator matrix")
            for p in col:
                if p.ctx != ctx:
                    raise ContextMismatchError("matrix entry in foreign context")
        self.ctx = ctx
        self.rank = rank
        self.columns = columns
        self.ctx_S = ctx.with_fiber(tuple(f"t{i+1}" for i in range(rank)))
        self._power_cache = {}
        self._colength = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_matrix(cls, ctx, rows):
        """Rows of the generator matrix; columns become the generators."""
        rows = [list(r) for r in rows]
        if not rows:
            raise InputError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise RankMismatchError("ragged generator matrix")
        columns = [tuple(rows[i][j] for i in range(len(rows)))
                   for j in range(width)]
        return cls(ctx, columns, rank=len(rows))

    @classmethod
    def from_ideal(cls, polys, ctx):
        return cls(ctx, [(p,) for p in polys], rank=1)

    @classmethod
    def from_submodule(cls, U):
        return cls(U.ctx, U.gens, rank=U.rank)

    # -- structure -------------------------------------------------------

    def submodule(self):
        """M as a SubmoduleData inside A^r."""
        return SubmoduleData(self.ctx, self.rank, self.columns)

    def ms_generators(self):
        """Generators of the ideal MS: one t-linear form per column."""
        gens = []
        for col in self.columns:
            poly = Polynomial.zero(self.ctx_S)
            for i, entry in enumerate(col):
                t = Polynomial.variable(self.ctx_S, f"t{i+1}")
                poly = poly + entry.map_context(self.ctx_S) * t
            gens.append(poly)
        return tuple(gens)

    def finite_colength(self):
        return self.colength_F_mod_M() is not INFINITE

    def colength_F_mod_M(self):
        if self._colength is None:
            self._colength = colength(self.submodule())
        return self._colength

    # -- graded pieces ---------------------------------------------------

    def power_piece(self, n):
        """M^n as a submodule of the rank-C(n+r-1, r-1) free A-module.

        Stored as its reduced Groebner basis so repeated products stay
        small.
        """
        got = self._power_cache.get(n)
        if got is not None:
            return got
        if n == 0:
            result = groebner_basis(
                SubmoduleData.ideal(self.ctx, [Polynomial.one(self.ctx)]))
        elif n == 1:
            result = groebner_basis(self.submodule())
        else:
            half = self.power_piece(n // 2)
            rest = self.power_piece(n - n // 2)
            result = piece_product(self, half, n // 2, rest, n - n // 2)
        self._power_cache[n] = result
        return result

    def __repr__(self):
        return f"ModuleEmbedding(rank={self.rank}, ngens={len(self.columns)})"


# -- piece arithmetic ----------------------------------------------------

def multiply_piece_vectors(r, u, a, v, b, ctx):
    """Product of a fiber-degree-a vector and a fiber-degree-b vector."""
    basis_a, _ = fiber_basis(r, a)
    basis_b, _ = fiber_basis(r, b)
    _, index_ab = fiber_basis(r, a + b)
    out = [Polynomial.zero(ctx)] * piece_rank(r, a + b)
    for i, p in enumerate(u):
        if p.is_zero():
            continue
        for j, q in enumerate(v):
            if q.is_zero():
                continue
            k = index_ab[mon_mul(basis_a[i], basis_b[j])]
            out[k] = out[k] + p * q
    return tuple(out)


def piece_product(E, A, a, B, b):
    """Groebner basis of the product piece A*B in fiber degree a+b."""
    gens = []
    for u in A.gens:
        for v in B.gens:
            gens.append(multiply_piece_vectors(E.rank, u, a, v, b, E.ctx))
    return groebner_basis(
        SubmoduleData(E.ctx, piece_rank(E.rank, a + b), tuple(gens)))


def scale_piece_by_ideal(P, I):
    """Piece generated by g*u for g in the ideal I, u in P."""
    gens = []
    for g in I.ideal_gens():
        for u in P.gens:
            gens.append(tuple(g * p for p in u))
    return groebner_basis(SubmoduleData(P.ctx, P.rank, tuple(gens)))


def mixed_product(colsA, rA, colsB, rB, ctx):
    """Products of two modules in different fiber blocks of a direct sum.

    Components of the result are indexed by pairs (i, j) -> i*rB + j,
    matching the mixed t-monomials of a rank rA+rB ambient.
    """
    gens = []
    z = Polynomial.zero(ctx)
    for u in colsA:
        for v in colsB:
            w = [z] * (rA * rB)
            for i, p in enumerate(u):
                if p.is_zero():
                    continue
                for j, q in enumerate(v):
                    if q.is_zero():
                        continue
                    w[i * rB + j] = w[i * rB + j] + p * q
            gens.append(tuple(w))
    return groebner_basis(SubmoduleData(ctx, rA * rB, tuple(gens)))


# -- graded-piece operations ---------------------------------------------

def embed(rows, ctx):
    """Build a ModuleEmbedding from the generator matrix (list of rows)."""
    E = ModuleEmbedding.from_matrix(ctx, rows)
    E.colength_F_mod_M()
    return E


def graded_piece(E, ideal_power, n):
    """Fiber-degree-n component of (MS)^k as an A-submodule.

    For k = n this is M^n itself; for n < k the piece is zero.
    """
    if ideal_power < 1:
        raise InputError("ideal power must be positive")
    if n < 0:
        raise InputError("fiber degree must be non-negative")
    r = E.rank
    rank_n = piece_rank(r, n)
    if n < ideal_power:
        return GradedPiece(n, SubmoduleData.zero(E.ctx, rank_n), ideal_power)
    P = E.power_piece(ideal_power)
    basis_k, _ = fiber_basis(r, ideal_power)
    _, index_n = fiber_basis(r, n)
    shifts, _ = fiber_basis(r, n - ideal_power)
    z = Polynomial.zero(E.ctx)
    gens = []
    for u in P.gens:
        for gamma in shifts:
            w = [z] * rank_n
            for i, p in enumerate(u):
                if not p.is_zero():
                    w[index_n[mon_mul(basis_k[i], gamma)]] = p
            gens.append(tuple(w))
    return GradedPiece(n, groebner_basis(SubmoduleData(E.ctx, rank_n, tuple(gens))),
                       ideal_power)


def _staircase_count(exps_list, nvars):
    """Standard monomials below a monomial ideal; INFINITE if unbounded."""
    if not exps_list:
        return INFINITE
    if any(all(e == 0 for e in exps) for exps in exps_list):
        return 0
    if nvars == 2:
        pts = sorted(exps_list)
        if pts[0][0] != 0 or pts[-1][1] != 0:
            return INFINITE
        total = 0
        for (a1, b1), (a2, _) in zip(pts, pts[1:]):
            total += (a2 - a1) * b1
        return total
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in exps_list
                if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for point in itertools.product(*(range(b) for b in bounds)):
        if not any(all(x <= y for x, y in zip(e, point)) for e in exps_list):
            count += 1
    return count


def colength(P):
    """Length of the quotient of the ambient free module by P.

    Counts standard monomials of the leading-term module; INFINITE when
    some component's staircase fails to close off.
    """
    U = P.submodule if isinstance(P, GradedPiece) else P
    if U.ctx.fiber_vars or U.ctx.aux_vars:
        raise InputError("colength is computed over the base ring")
    gb = groebner_basis(U)
    comps = [[] for _ in range(U.rank)]
    for g in gb.gens:
        lead_comp = None
        lead = None
        key = U.ctx.mon_key
        for c, p in enumerate(g):
            if p.is_zero():
                continue
            m = p.leading_monomial()
            if lead is None or (key(m), -c) > (key(lead), -lead_comp):
                lead, lead_comp = m, c
        if lead is not None:
            comps[lead_comp].append(lead)
    total = 0
    for lst in comps:
        cnt = _staircase_count(lst, U.ctx.nvars)
        if cnt is INFINITE:
            return INFINITE
        total += cnt
    return total


def maximal_ideal(ctx):
    return SubmoduleData.ideal(ctx, [Polynomial.variable(ctx, v)
                                     for v in ctx.base_vars])


def min_gens(target):
    """mu = dim_k(M / mM) by greedy selection against mM.

    Accepts a ModuleEmbedding, SubmoduleData, or GradedPiece.
    """
    if isinstance(target, ModuleEmbedding):
        U = target.submodule()
    elif isinstance(target, GradedPiece):
        U = target.submodule
    else:
        U = target
    ctx = U.ctx
    mvars = [Polynomial.variable(ctx, v) for v in ctx.base_vars]
    m_gens = [tuple(x * p for p in g) for g in U.gens for x in mvars]
    selected = []
    for g in U.gens:
        test = SubmoduleData(ctx, U.rank, tuple(m_gens) + tuple(selected))
        if not member(g, test):
            selected.append(g)
    return len(selected)


def is_parameter_module(E):
    """Finite colength, M inside mF, and mu = dim A + r - 1."""
    d = len(E.ctx.base_vars)
    length = E.colength_F_mod_M()
    finite = length is not INFINITE
    mF = SubmoduleData(E.ctx, E.rank, tuple(
        tuple(Polynomial.variable(E.ctx, v) if i == c else Polynomial.zero(E.ctx)
              for i in range(E.rank))
        for c in range(E.rank) for v in E.ctx.base_vars))
    inside = contains(mF, E.submodule())
    mu = min_gens(E)
    expected = d + E.rank - 1
    verdict = finite and inside and mu == expected
    return verdict, {
        "finite_colength": finite,
        "inside_mF": inside,
        "mu": mu,
        "mu_expected": expected,
        "colength": length if finite else "INFINITE",
    }


def _det(matrix):
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    ctx = matrix[0][0].ctx
    total = Polynomial.zero(ctx)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor)
        total = total - term if j % 2 else total + term
    return total


def fitting_ideal(E, i):
    """Ideal of (r - i) x (r - i) minors of the generator matrix."""
    if not 0 <= i < E.rank:
        raise InputError(f"Fitting index {i} out of range for rank {E.rank}")
    size = E.rank - i
    s = len(E.columns)
    if s < size:
        return SubmoduleData.zero(E.ctx, 1)
    rows = [[E.columns[j][k] for j in range(s)] for k in range(E.rank)]
    minors = []
    for rsel in itertools.combinations(range(E.rank), size):
        for csel in itertools.combinations(range(s), size):
            sub = [[rows[a][b] for b in csel] for a in rsel]
            m = _det(sub)
            if not m.is_zero():
                minors.append(m)
    return groebner_basis(SubmoduleData.ideal(E.ctx, minors))


def ord_ideal(I):
    """Largest n with I contained in m^n (minimum term degree on a basis)."""
    if I.rank != 1:
        raise RankMismatchError("ord is defined for ideals")
    gb = groebner_basis(I)
    degs = []
    for g in gb.gens:
        p = g[0]
        if p.is_zero():
            continue
        degs.append(min(I.ctx.base_degree(e) for e in p.terms))
    if not degs:
        raise InputError("ord of the zero ideal is undefined")
    return min(degs)


def fiber_cone_hilbert(E, n):
    """Hilbert function of the fiber cone: mu of the n-th power piece."""
    if n < 0:
        raise InputError("fiber cone degree must be non-negative")
    if n == 0:
        return 1
    return min_gens(E.power_piece(n))


# -- embedding constructions ---------------------------------------------

def direct_sum(E1, E2):
    if E1.ctx != E2.ctx:
        raise ContextMismatchError("direct sum across contexts")
    z = Polynomial.zero(E1.ctx)
    cols = [tuple(col) + (z,) * E2.rank for col in E1.columns]
    cols += [(z,) * E1.rank + tuple(col) for col in E2.columns]
    return ModuleEmbedding(E1.ctx, cols, rank=E1.rank + E2.rank)


def scale_by_ideal(E, I):
    """The embedding of I*M for an ideal I of the base ring."""
    cols = []
    for g in I.ideal_gens():
        for col in E.columns:
            cols.append(tuple(g * p for p in col))
    return ModuleEmbedding(E.ctx, cols, rank=E.rank)


def add_columns(E, extra_columns):
    return ModuleEmbedding(E.ctx, E.columns + tuple(tuple(c) for c in extra_columns),
                           rank=E.rank)


def pad_with_zero_row(E):
    """Embed the same module into a free module of one higher rank."""
    z = Polynomial.zero(E.ctx)
    cols = [tuple(col) + (z,) for col in E.columns]
    return ModuleEmbedding(E.ctx, cols, rank=E.rank + 1)

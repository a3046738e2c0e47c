"""Buchberger's algorithm for ideals and submodules of free modules.

Everything downstream (closures, graded pieces, theorem deciders) reduces
to the operations here: reduced Groebner bases, normal forms, membership,
colon, saturation, intersection, and elimination.

Internally a module element is a dict mapping (component, exponent tuple)
to a nonzero coefficient.  Generators that are all single terms take a
fast combinatorial path: the S-vector of two terms vanishes, so a reduced
basis is just the set of minimal terms per component.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .context import (mon_coprime, mon_div, mon_divides, mon_lcm, mon_mul,
                      mon_one)
from .errors import ContextMismatchError, RankMismatchError
from .poly import Polynomial


# -- orders on module monomials ------------------------------------------

@dataclass(frozen=True)
class ModuleOrder:
    """Monomial order on a free module over the context's order.

    position 'TOP' compares the monomial first (term over position), 'POT'
    the component first.  The first elim_components components dominate
    everything else, which is what syzygy-style eliminations need.  An
    optional priority sequence reorders components; by default lower
    component index is larger.
    """

    position: str = "TOP"
    elim_components: int = 0
    priority: tuple = None

    def key_function(self, ctx):
        monkey = ctx.mon_key
        if self.priority is not None:
            lut = {c: -i for i, c in enumerate(self.priority)}
            comp_rank = lut.__getitem__
        else:
            comp_rank = lambda c: -c
        elim = self.elim_components
        if self.position == "TOP":
            def key(term):
                c, e = term
                return (1 if c < elim else 0, monkey(e), comp_rank(c))
        elif self.position == "POT":
            def key(term):
                c, e = term
                return (1 if c < elim else 0, comp_rank(c), monkey(e))
        else:
            raise ValueError(f"unknown position policy {self.position!r}")
        return key


DEFAULT_ORDER = ModuleOrder()


# -- submodule container -------------------------------------------------

@dataclass(frozen=True)
class SubmoduleData:
    """A finitely generated submodule of a free module A^rank.

    rank == 1 means an ideal.  Generators are tuples of Polynomials.  The
    reduced Groebner basis for the default order is cached after the first
    computation; it is canonical, so concurrent fillers agree.
    """

    ctx: object
    rank: int
    gens: tuple
    flags: tuple = ()
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.rank:
                raise RankMismatchError(
                    f"generator of length {len(g)} in rank-{self.rank} module")
            for p in g:
                if p.ctx != self.ctx:
                    raise ContextMismatchError("generator entry in foreign context")

    # -- constructors ----------------------------------------------------

    @classmethod
    def ideal(cls, ctx, polys):
        return cls(ctx, 1, tuple((p,) for p in polys))

    @classmethod
    def from_vectors(cls, ctx, rank, vectors):
        return cls(ctx, rank, tuple(tuple(v) for v in vectors))

    @classmethod
    def zero(cls, ctx, rank=1):
        return cls(ctx, rank, ())

    @classmethod
    def free(cls, ctx, rank):
        one = Polynomial.one(ctx)
        z = Polynomial.zero(ctx)
        gens = tuple(tuple(one if i == c else z for i in range(rank))
                     for c in range(rank))
        return cls(ctx, rank, gens)

    # -- inspection ------------------------------------------------------

    def ideal_gens(self):
        if self.rank != 1:
            raise RankMismatchError("not an ideal")
        return tuple(g[0] for g in self.gens)

    def is_zero(self):
        return all(p.is_zero() for g in self.gens for p in g)

    def is_monomial(self):
        """True when every generator is a single term in one component."""
        for g in self.gens:
            nonzero = [p for p in g if not p.is_zero()]
            if len(nonzero) > 1 or (nonzero and not nonzero[0].is_term()):
                return False
        return True

    def with_flags(self, *flags):
        return SubmoduleData(self.ctx, self.rank, self.gens,
                             self.flags + tuple(flags))

    def __hash__(self):
        return hash((self.ctx, self.rank, self.gens))


# -- raw vector-polynomial helpers ---------------------------------------

def _to_vp(vec):
    vp = {}
    for c, p in enumerate(vec):
        for exps, coeff in p.terms.items():
            vp[(c, exps)] = coeff
    return vp


def _from_vp(ctx, rank, vp):
    cols = [{} for _ in range(rank)]
    for (c, exps), coeff in vp.items():
        cols[c][exps] = coeff
    return tuple(Polynomial(ctx, terms) for terms in cols)


def _vp_monic(vp, key, field):
    lt = max(vp, key=key)
    lc = vp[lt]
    if lc == field.one:
        return vp
    inv = field.invert(lc)
    return {t: field.mul(c, inv) for t, c in vp.items()}


def _vp_normal_form(vp, basis, key, field):
    """Full normal form of vp against monic basis entries.

    basis: list of (lead_term, terms_dict).
    """
    work = dict(vp)
    rem = {}
    while work:
        t = max(work, key=key)
        c = work.pop(t)
        tc, te = t
        hit = None
        for lt, terms in basis:
            if lt[0] == tc and mon_divides(lt[1], te):
                hit = (lt, terms)
                break
        if hit is None:
            rem[t] = c
            continue
        lt, terms = hit
        q = mon_div(te, lt[1])
        for (gc, ge), gcoeff in terms.items():
            if (gc, ge) == lt:
                continue
            tt = (gc, mon_mul(ge, q))
            nc = field.sub(work.get(tt, field.zero), field.mul(c, gcoeff))
            if nc == field.zero:
                work.pop(tt, None)
            else:
                work[tt] = nc
    return rem


def _spair(f, g, lt_f, lt_g, key, field):
    comp = lt_f[0]
    L = mon_lcm(lt_f[1], lt_g[1])
    qf = mon_div(L, lt_f[1])
    qg = mon_div(L, lt_g[1])
    vp = {}
    for (c, e), coeff in f.items():
        vp[(c, mon_mul(e, qf))] = coeff
    for (c, e), coeff in g.items():
        t = (c, mon_mul(e, qg))
        nc = field.sub(vp.get(t, field.zero), coeff)
        if nc == field.zero:
            vp.pop(t, None)
        else:
            vp[t] = nc
    return vp


def _buchberger(gens, key, field, rank):
    """Reduced Groebner basis of the module generated by gens (list of vps).

    Normal selection strategy (smallest lcm first), coprime criterion for
    ideals, chain criterion for everything.
    """
    basis = []
    leads = []
    for vp in gens:
        if vp:
            vp = _vp_monic(vp, key, field)
            basis.append(vp)
            leads.append(max(vp, key=key))

    pending = set()
    heap = []

    def add_pairs(j):
        for i in range(j):
            if leads[i][0] == leads[j][0]:
                L = mon_lcm(leads[i][1], leads[j][1])
                heapq.heappush(heap, (key((leads[i][0], L)), i, j))
                pending.add((i, j))

    for j in range(len(basis)):
        add_pairs(j)

    prepared = list(zip(leads, basis))

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lt_i, lt_j = leads[i], leads[j]
        if rank == 1 and mon_coprime(lt_i[1], lt_j[1]):
            continue
        L = mon_lcm(lt_i[1], lt_j[1])
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if leads[k][0] != lt_i[0] or not mon_divides(leads[k][1], L):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        s = _spair(basis[i], basis[j], lt_i, lt_j, key, field)
        r = _vp_normal_form(s, prepared, key, field)
        if r:
            r = _vp_monic(r, key, field)
            basis.append(r)
            leads.append(max(r, key=key))
            prepared.append((leads[-1], r))
            add_pairs(len(basis) - 1)

    return _autoreduce(basis, key, field)


def _autoreduce(basis, key, field):
    """Minimalize and tail-reduce a basis into the reduced Groebner basis."""
    entries = [(max(vp, key=key), vp) for vp in basis if vp]
    # drop entries whose lead is divisible by another lead
    entries.sort(key=lambda e: key(e[0]))
    kept = []
    for lt, vp in entries:
        if any(k[0][0] == lt[0] and mon_divides(k[0][1], lt[1]) for k in kept):
            continue
        kept.append((lt, vp))
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            lt, vp = kept[idx]
            others = kept[:idx] + kept[idx + 1:]
            r = _vp_normal_form(vp, others, key, field)
            if r != vp:
                changed = True
                if r:
                    kept[idx] = (max(r, key=key), _vp_monic(r, key, field))
                else:
                    kept.pop(idx)
                break
    kept.sort(key=lambda e: key(e[0]))
    return [vp for _, vp in kept]


# -- monomial fast paths -------------------------------------------------

def _mono_minimalize(exps_list):
    out = []
    for e in sorted(set(exps_list)):
        if not any(mon_divides(o, e) for o in out if o != e):
            out.append(e)
    # second pass: a later element may divide an earlier one
    final = [e for e in out
             if not any(o != e and mon_divides(o, e) for o in out)]
    return sorted(final)


def _mono_components(U):
    """Minimal monomial generators per component; None if not monomial."""
    comps = [[] for _ in range(U.rank)]
    for g in U.gens:
        nonzero = [(c, p) for c, p in enumerate(g) if not p.is_zero()]
        if len(nonzero) > 1:
            return None
        if nonzero:
            c, p = nonzero[0]
            if not p.is_term():
                return None
            comps[c].append(p.leading_monomial())
    return [_mono_minimalize(lst) for lst in comps]


def _mono_ideal_colon_single(exps_list, g):
    return _mono_minimalize([mon_div(mon_lcm(e, g), g) for e in exps_list])


def _mono_ideal_intersect(a_list, b_list):
    return _mono_minimalize([mon_lcm(a, b) for a in a_list for b in b_list])


def _from_mono_components(ctx, rank, comps, flags=()):
    z = Polynomial.zero(ctx)
    key = DEFAULT_ORDER.key_function(ctx)
    leads = [(c, e) for c, lst in enumerate(comps) for e in lst]
    leads.sort(key=key)
    gens = []
    for c, e in leads:
        gens.append(tuple(Polynomial.monomial(ctx, e) if i == c else z
                          for i in range(rank)))
    return SubmoduleData(ctx, rank, tuple(gens), tuple(flags))


# -- public operations ---------------------------------------------------

def groebner_basis(U, order=None):
    """Reduced Groebner basis of U as a new SubmoduleData (gens = basis).

    Deterministic: monic elements sorted by leading term.  The result for
    the default order is cached on U.
    """
    cache_key = order or DEFAULT_ORDER
    cached = U._cache.get(cache_key)
    if cached is not None:
        return cached
    comps = _mono_components(U)
    if comps is not None:
        gb = _from_mono_components(U.ctx, U.rank, comps)
    else:
        key = (order or DEFAULT_ORDER).key_function(U.ctx)
        field = U.ctx.field
        vps = [_to_vp(g) for g in U.gens]
        basis = _buchberger(vps, key, field, U.rank)
        gb = SubmoduleData(U.ctx, U.rank,
                           tuple(_from_vp(U.ctx, U.rank, vp) for vp in basis))
    gb._cache[cache_key] = gb
    U._cache[cache_key] = gb
    return gb


def normal_form(vec, U, order=None):
    """Remainder of vec on division by the (Groebner basis of) U."""
    if len(vec) != U.rank:
        raise RankMismatchError(f"vector length {len(vec)} vs rank {U.rank}")
    gb = groebner_basis(U, order)
    key = (order or DEFAULT_ORDER).key_function(U.ctx)
    field = U.ctx.field
    prepared = [(max(vp, key=key), vp) for vp in (_to_vp(g) for g in gb.gens) if vp]
    r = _vp_normal_form(_to_vp(vec), prepared, key, field)
    return _from_vp(U.ctx, U.rank, r)


def contains(U, V):
    """True iff V is a submodule of U."""
    if U.rank != V.rank:
        raise RankMismatchError("ambient ranks differ")
    if U.ctx != V.ctx:
        raise ContextMismatchError("containment across contexts")
    cu = _mono_components(U)
    if cu is not None:
        cv = _mono_components(V)
        if cv is not None:
            return all(all(any(mon_divides(u, v) for u in cu[c]) for v in lst)
                       for c, lst in enumerate(cv))
    return all(all(p.is_zero() for p in normal_form(g, U)) for g in V.gens)


def member(vec, U):
    return all(p.is_zero() for p in normal_form(vec, U))


def equal(U, V):
    """Submodule equality via canonical reduced bases."""
    if U.rank != V.rank or U.ctx != V.ctx:
        return False
    return groebner_basis(U).gens == groebner_basis(V).gens


def sum_modules(U, V):
    if U.rank != V.rank or U.ctx != V.ctx:
        raise RankMismatchError("sum of modules in different ambients")
    return SubmoduleData(U.ctx, U.rank, U.gens + V.gens)


def preimage(columns, W):
    """Generators of {v in A^p : sum v_j * columns[j] in W}.

    columns: list of vectors in A^q (q = W.rank).  Computed by the syzygy
    method: tag each column with a unit vector, run a Groebner basis with
    the ambient components dominating, and read off the elements whose
    ambient part vanished.
    """
    ctx = W.ctx
    q = W.rank
    p = len(columns)
    field = ctx.field
    order = ModuleOrder(position="POT", elim_components=q)
    key = order.key_function(ctx)
    vps = []
    one = field.one
    for j, col in enumerate(columns):
        vp = {}
        for c, poly in enumerate(col):
            for exps, coeff in poly.terms.items():
                vp[(c, exps)] = coeff
        vp[(q + j, mon_one(ctx.nvars))] = one
        vps.append(vp)
    for g in W.gens:
        vp = {}
        for c, poly in enumerate(g):
            for exps, coeff in poly.terms.items():
                vp[(c, exps)] = coeff
        if vp:
            vps.append(vp)
    basis = _buchberger(vps, key, field, q + p)
    gens = []
    for vp in basis:
        if any(t[0] < q for t in vp):
            continue
        shifted = {(t[0] - q, t[1]): c for t, c in vp.items()}
        gens.append(_from_vp(ctx, p, shifted))
    return SubmoduleData(ctx, p, tuple(gens))


def _colon_single(U, g):
    """U : g = {v : g*v in U} for a single ring element g."""
    ctx = U.ctx
    q = U.rank
    z = Polynomial.zero(ctx)
    columns = [tuple(g if i == c else z for i in range(q)) for c in range(q)]
    return preimage(columns, U)


def colon(U, J):
    """U :_{A^q} J = {v : vJ contained in U} for an ideal J.

    Colon by the zero ideal legally returns the ambient free module with a
    flag instead of raising.
    """
    if J.rank != 1:
        raise RankMismatchError("colon denominator must be an ideal")
    if U.ctx != J.ctx:
        raise ContextMismatchError("colon across contexts")
    jg = [p for p in J.ideal_gens() if not p.is_zero()]
    if not jg:
        return SubmoduleData.free(U.ctx, U.rank).with_flags("colon-by-zero-ideal")
    cu = _mono_components(U)
    if cu is not None and all(p.is_term() for p in jg):
        result = None
        for g in jg:
            ge = g.leading_monomial()
            comps = [_mono_ideal_colon_single(lst, ge) for lst in cu]
            result = comps if result is None else [
                _mono_ideal_intersect(a, b) for a, b in zip(result, comps)]
        return _from_mono_components(U.ctx, U.rank, result)
    result = None
    for g in jg:
        part = _colon_single(U, g)
        result = part if result is None else intersect(result, part)
    return groebner_basis(result)


def saturate(U, J):
    """Stable value of the chain U : J, U : J^2, ... (full colon chain)."""
    current = groebner_basis(U)
    while True:
        nxt = groebner_basis(colon(current, J))
        if nxt.gens == current.gens:
            return current.with_flags(*(f for f in J.flags))
        current = nxt


def intersect(U, V):
    """U intersect V via one auxiliary homogenizing variable."""
    if U.rank != V.rank:
        raise RankMismatchError("intersection of modules of different rank")
    if U.ctx != V.ctx:
        raise ContextMismatchError("intersection across contexts")
    cu = _mono_components(U)
    if cu is not None:
        cv = _mono_components(V)
        if cv is not None:
            comps = [_mono_ideal_intersect(a, b) for a, b in zip(cu, cv)]
            return _from_mono_components(U.ctx, U.rank, comps)
    ctx = U.ctx
    aux = ctx.with_aux_var("_h")
    h = Polynomial.variable(aux, "_h")
    one_minus_h = Polynomial.one(aux) - h
    gens = []
    for g in U.gens:
        gens.append(tuple(p.map_context(aux) * h for p in g))
    for g in V.gens:
        gens.append(tuple(p.map_context(aux) * one_minus_h for p in g))
    mixed = SubmoduleData(aux, U.rank, tuple(gens))
    gb = groebner_basis(mixed)
    keep = []
    for g in gb.gens:
        if any(p.uses_vars(("_h",)) for p in g):
            continue
        keep.append(tuple(p.map_context(ctx) for p in g))
    return SubmoduleData(ctx, U.rank, tuple(keep))


def eliminate(U, var_names):
    """Generators of U not involving the named variables.

    Computed with a block order in which the eliminated variables dominate.
    """
    var_names = tuple(var_names)
    ctx = U.ctx
    ectx = ctx.with_elimination(var_names)
    lifted = SubmoduleData(ectx, U.rank,
                           tuple(tuple(p.map_context(ectx) for p in g)
                                 for g in U.gens))
    gb = groebner_basis(lifted)
    keep = []
    for g in gb.gens:
        if any(p.uses_vars(var_names) for p in g):
            continue
        keep.append(tuple(p.map_context(ctx) for p in g))
    return SubmoduleData(ctx, U.rank, tuple(keep))


def minimal_generators(U):
    """Generators of U pruned so none is in the span of the others."""
    gens = [g for g in U.gens if any(not p.is_zero() for p in g)]
    changed = True
    while changed:
        changed = False
        for i in range(len(gens)):
            rest = SubmoduleData(U.ctx, U.rank, tuple(gens[:i] + gens[i + 1:]))
            if member(gens[i], rest):
                gens.pop(i)
                changed = True
                break
    return SubmoduleData(U.ctx, U.rank, tuple(gens))

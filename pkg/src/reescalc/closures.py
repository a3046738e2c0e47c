"""Ratliff-Rush and integral closures, reduction and integrality tests.

The colon-chain closures are heuristically stabilized: one consecutive
equality does not certify the ascending union, so a confirmation window
of further equal steps is required and every colon-chain result is
reported with certified = False.  What IS certified is the lower bound:
the result contains the input, multiplying it back lands in the right
power, and when some power of the result equals the same power of the
input the containment in the true closure follows.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .context import mon_mul
from .errors import InputError, SoundnessAlert, UnstableChainError, DeadlineExceeded
from .groebner import (SubmoduleData, colon, contains, groebner_basis, member,
                       preimage, intersect, sum_modules, _from_mono_components,
                       _mono_components, _mono_ideal_colon_single,
                       _mono_ideal_intersect)
from .poly import Polynomial
from .rees import (ModuleEmbedding, add_columns, fiber_basis,
                   multiply_piece_vectors, piece_product, piece_rank)


@dataclass
class ClosureOptions:
    l_max: int = 10
    window: int = 2
    s_max: int = 5
    deadline_seconds: float = None

    def deadline(self):
        return _Deadline(self.deadline_seconds)


class _Deadline:
    def __init__(self, seconds):
        self.expiry = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.expiry is not None and time.monotonic() > self.expiry:
            raise DeadlineExceeded("closure computation hit its deadline")


@dataclass
class ClosureResult:
    submodule: SubmoduleData
    method: str
    stabilization_index: int = 0
    window: int = 0
    certified: bool = False
    extra: dict = dc_field(default_factory=dict)


def ideal_product(A, B):
    """Ideal generated by pairwise products, returned as a reduced basis."""
    gens = [(p * q,) for (p,) in A.gens for (q,) in B.gens]
    return groebner_basis(SubmoduleData(A.ctx, 1, tuple(gens)))


def ideal_power(J, n, cache=None):
    if cache is not None and n in cache:
        return cache[n]
    if n == 0:
        result = groebner_basis(
            SubmoduleData.ideal(J.ctx, [Polynomial.one(J.ctx)]))
    elif n == 1:
        result = groebner_basis(J)
    else:
        result = ideal_product(ideal_power(J, n // 2, cache),
                               ideal_power(J, n - n // 2, cache))
    if cache is not None:
        cache[n] = result
    return result


# -- Ratliff-Rush closure of ideals --------------------------------------

def ratliff_rush_ideal(J, opts=None):
    """Stable value of the colon chain J^(l+1) : J^l with a confirmation
    window; certified = False because the union itself is only bounded
    below, never proved maximal."""
    opts = opts or ClosureOptions()
    deadline = opts.deadline()
    J = groebner_basis(J)
    if J.is_zero():
        return ClosureResult(J, "colon-chain", 0, opts.window, certified=True,
                             extra={"note": "zero ideal is closed"})
    powers = {1: J}
    chain = [J]  # chain[l] = J^(l+1) : J^l, with chain[0] = J
    l = 0
    run_start = 0
    while True:
        deadline.check()
        l += 1
        if l + 1 > opts.l_max + opts.window + 1:
            raise UnstableChainError(
                f"colon chain did not stabilize within l_max={opts.l_max}",
                last_value=chain[-1])
        num = ideal_power(J, l + 1, powers)
        den = ideal_power(J, l, powers)
        w = groebner_basis(colon(num, den))
        if w.gens == chain[-1].gens:
            if l - run_start >= opts.window:
                break
        else:
            run_start = l
            if l > opts.l_max:
                raise UnstableChainError(
                    f"colon chain did not stabilize within l_max={opts.l_max}",
                    last_value=w)
        chain.append(w)

    result = chain[-1]
    l_star = run_start
    # necessary conditions: the closure contains J and multiplies back in
    if not contains(result, J):
        raise SoundnessAlert("colon chain result does not contain the input")
    den = ideal_power(J, max(l_star, 1), powers)
    num = ideal_power(J, max(l_star, 1) + 1, powers)
    if not contains(num, ideal_product(result, den)):
        raise SoundnessAlert("colon chain result fails the defining colon")
    extra = {"confirmed_steps": opts.window}
    m = _power_equality_index(result, J, powers, opts, deadline)
    if m is not None:
        extra["power_equality_degree"] = m
    return ClosureResult(result, "colon-chain", l_star, opts.window,
                         certified=False, extra=extra)


def _power_equality_index(W, J, powers, opts, deadline):
    """Smallest m with W^m = J^m, if one shows up early.

    Such an m proves W lies inside the Ratliff-Rush closure of J.
    """
    wcache = {}
    for m in range(1, opts.l_max + 2):
        deadline.check()
        if ideal_power(W, m, wcache).gens == ideal_power(J, m, powers).gens:
            return m
    return None


# -- Ratliff-Rush closure of modules -------------------------------------

def _unit_piece_vector(ctx, rank, comp):
    z = Polynomial.zero(ctx)
    return tuple(Polynomial.one(ctx) if i == comp else z for i in range(rank))


def _mono_piece_colon(E, W, gens_low, low, ambient):
    """Monomial fast path: the colon splits into one ideal colon per
    ambient component, since each generator shifts components by a fixed
    t-monomial."""
    r = E.rank
    rank_amb = piece_rank(r, ambient)
    basis_amb, _ = fiber_basis(r, ambient)
    basis_low, _ = fiber_basis(r, low)
    _, index_high = fiber_basis(r, low + ambient)
    comps_W = _mono_components(groebner_basis(W))
    shifts = []
    for g in gens_low:
        beta, p = next((c, p) for c, p in enumerate(g) if not p.is_zero())
        shifts.append((basis_low[beta], p.leading_monomial()))
    comps_out = []
    for alpha in range(rank_amb):
        acc = None
        for fib, exps in shifts:
            target = index_high[mon_mul(basis_amb[alpha], fib)]
            part = _mono_ideal_colon_single(comps_W[target], exps)
            acc = part if acc is None else _mono_ideal_intersect(acc, part)
        comps_out.append(acc)
    return groebner_basis(_from_mono_components(E.ctx, rank_amb, comps_out))


def _is_mono_vector(g):
    nonzero = [p for p in g if not p.is_zero()]
    return len(nonzero) == 1 and nonzero[0].is_term()


def _piece_colon(E, W, gens_low, low, ambient):
    """{v in the fiber-degree-ambient free piece : v*g in W for every g}.

    Multiplication maps each basis vector of the ambient piece against g;
    the preimage is a syzygy computation over the base ring.
    """
    r = E.rank
    rank_amb = piece_rank(r, ambient)
    if not gens_low:
        return SubmoduleData.free(E.ctx, rank_amb)
    if W.is_monomial() and all(_is_mono_vector(g) for g in gens_low):
        return _mono_piece_colon(E, W, gens_low, low, ambient)
    result = None
    for g in gens_low:
        columns = []
        for comp in range(rank_amb):
            e = _unit_piece_vector(E.ctx, rank_amb, comp)
            columns.append(multiply_piece_vectors(r, e, ambient, g, low, E.ctx))
        part = preimage(columns, W)
        result = part if result is None else intersect(result, part)
        result = groebner_basis(result)
    return result


def ratliff_rush_module(E, n=1, opts=None):
    """Ratliff-Rush closure of M^n inside F^n.

    The ideal chain for (MS)^n inside S is run degreewise: its degree-n
    step is the colon of graded pieces computed here over the base ring,
    so the two formulations agree step by step.
    """
    opts = opts or ClosureOptions()
    if n < 0:
        raise InputError("fiber degree must be non-negative")
    M = E.submodule()
    if M.is_zero():
        return ClosureResult(groebner_basis(M), "colon-chain", 0, opts.window,
                             certified=True, extra={"note": "zero module"})
    if n == 0:
        one = groebner_basis(
            SubmoduleData.ideal(E.ctx, [Polynomial.one(E.ctx)]))
        return ClosureResult(one, "colon-chain", 0, opts.window, certified=True)
    return _rr_module_degreewise(E, n, opts)


def _rr_module_degreewise(E, n, opts):
    deadline = opts.deadline()
    base = E.power_piece(n)
    chain = [base]
    l = 0
    run_start = 0
    while True:
        deadline.check()
        l += 1
        if l + 1 > opts.l_max + opts.window + 1:
            raise UnstableChainError(
                f"module colon chain did not stabilize within l_max={opts.l_max}",
                last_value=chain[-1])
        low = E.power_piece(n * l)
        high = E.power_piece(n * (l + 1))
        w = _piece_colon(E, high, low.gens, n * l, n)
        if w.gens == chain[-1].gens:
            if l - run_start >= opts.window:
                break
        else:
            run_start = l
            if l > opts.l_max:
                raise UnstableChainError(
                    f"module colon chain did not stabilize within l_max={opts.l_max}",
                    last_value=w)
        chain.append(w)
    result = chain[-1]
    if not contains(result, base):
        raise SoundnessAlert("module colon chain result lost the input")
    return ClosureResult(result, "colon-chain", run_start, opts.window,
                         certified=False, extra={"degreewise": True})


def rr_via_reduction(E, reduction_columns, opts=None):
    """Ratliff-Rush closure through colons against powers of a reduction."""
    opts = opts or ClosureOptions()
    deadline = opts.deadline()
    L = SubmoduleData(E.ctx, E.rank, tuple(tuple(c) for c in reduction_columns))
    M = E.submodule()
    if not contains(M, L):
        raise InputError("reduction columns do not lie in the module")
    ok, s = is_reduction(L, M, opts.s_max)
    if not ok:
        raise InputError(
            f"columns not verified to span a reduction within s_max={opts.s_max}")
    acc = groebner_basis(M)
    current = [tuple(col) for col in L.gens]  # x_i^n as piece-n vectors
    n = 0
    run_start = 0
    while True:
        deadline.check()
        n += 1
        if n > opts.l_max + opts.window + 1:
            raise UnstableChainError(
                f"reduction chain did not stabilize within l_max={opts.l_max}",
                last_value=acc)
        if n > 1:
            current = [multiply_piece_vectors(E.rank, xv, n - 1,
                                              tuple(col), 1, E.ctx)
                       for xv, col in zip(current, L.gens)]
        high = E.power_piece(n + 1)
        piece = _piece_colon(E, high, current, n, 1)
        merged = groebner_basis(sum_modules(acc, piece))
        if merged.gens == acc.gens:
            if n - run_start >= opts.window:
                break
        else:
            run_start = n
            acc = merged
            if n > opts.l_max:
                raise UnstableChainError(
                    f"reduction chain did not stabilize within l_max={opts.l_max}",
                    last_value=acc)
    rr = ratliff_rush_module(E, 1, opts)
    if rr.submodule.gens != acc.gens:
        raise SoundnessAlert(
            "reduction-based closure disagrees with the colon-chain closure")
    return ClosureResult(acc, "reduction-based", run_start, opts.window,
                         certified=False,
                         extra={"reduction_exponent": s,
                                "cross_checked": True})


# -- integral closure ----------------------------------------------------

def newton_closure_exps(exps_list):
    """Minimal generators of the integral closure of a 2-variable monomial
    ideal: lattice points of the Newton polyhedron, minimalized."""
    pts = sorted(set(exps_list))
    pts = [p for p in pts
           if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts)]
    pts.sort()  # ascending a, so descending b among Pareto-minimal points
    hull = []
    for p in pts:
        while len(hull) >= 2:
            a0, b0 = hull[-2]
            a1, b1 = hull[-1]
            if (a1 - a0) * (p[1] - b0) - (b1 - b0) * (p[0] - a0) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    a_min = hull[0][0]
    b_min = hull[-1][1]
    edges = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        edges.append((b1 - b2, a2 - a1, (b1 - b2) * a1 + (a2 - a1) * b1))

    def inside(a, b):
        if a < a_min or b < b_min:
            return False
        return all(p * a + q * b >= c for p, q, c in edges)

    max_a = max(p[0] for p in pts)
    max_b = max(p[1] for p in pts)
    points = [(a, b) for a in range(max_a + 1) for b in range(max_b + 1)
              if inside(a, b)]
    minimal = [p for p in points
               if not any(q != p and q[0] <= p[0] and q[1] <= p[1]
                          for q in points)]
    return sorted(minimal)


def integral_closure_monomial(I):
    """Exact integral closure of a nonzero monomial ideal in two variables."""
    if I.rank != 1:
        raise InputError("expected an ideal")
    if len(I.ctx.base_vars) != 2 or I.ctx.fiber_vars:
        raise InputError("Newton closure works in two base variables")
    exps = []
    for (p,) in I.gens:
        if p.is_zero():
            continue
        if not p.is_term():
            raise InputError("non-monomial generator")
        exps.append(p.leading_monomial())
    if not exps:
        raise InputError("integral closure of the zero ideal")
    closed = newton_closure_exps(exps)
    result = groebner_basis(SubmoduleData.ideal(
        I.ctx, [Polynomial.monomial(I.ctx, e) for e in closed]))
    return ClosureResult(result, "newton", certified=True)


def _monomial_row_decomposition(E):
    """Per-row monomial ideals when the matrix is a block direct sum of
    monomial ideals; None otherwise."""
    rows = [[] for _ in range(E.rank)]
    for col in E.columns:
        nonzero = [(i, p) for i, p in enumerate(col) if not p.is_zero()]
        if len(nonzero) > 1:
            return None
        if nonzero:
            i, p = nonzero[0]
            if not p.is_term():
                return None
            rows[i].append(p.leading_monomial())
    return rows


def integral_closure_module(E, candidates=None, opts=None):
    """Integral closure of M inside F.

    Certified (Newton) for block direct sums of monomial ideals; otherwise
    candidate-driven: each supplied column is verified integral and the
    result M + candidates is reported with heuristic maximality checks,
    never silently completed.
    """
    opts = opts or ClosureOptions()
    M = E.submodule()
    if M.is_zero():
        return ClosureResult(groebner_basis(M), "newton", certified=True,
                             extra={"note": "zero module"})
    rows = _monomial_row_decomposition(E)
    if rows is not None:
        z = Polynomial.zero(E.ctx)
        gens = []
        for i, exps in enumerate(rows):
            if not exps:
                continue
            for e in newton_closure_exps(exps):
                gens.append(tuple(Polynomial.monomial(E.ctx, e) if j == i else z
                                  for j in range(E.rank)))
        result = groebner_basis(SubmoduleData(E.ctx, E.rank, tuple(gens)))
        return ClosureResult(result, "newton", certified=True)
    if not candidates:
        raise InputError(
            "integral closure needs candidate columns for non-monomial input")
    witnesses = []
    for col in candidates:
        ok, s = is_integral_element(E, col, opts.s_max)
        if not ok:
            raise InputError("candidate column failed the integrality test")
        witnesses.append(s)
    N_embed = add_columns(E, candidates)
    result = groebner_basis(N_embed.submodule())
    extra = {"candidate_witnesses": witnesses}
    rr = ratliff_rush_module(N_embed, 1, opts)
    extra["result_rr_closed"] = rr.submodule.gens == result.gens
    red_ok, red_s = is_reduction(M, result, opts.s_max)
    extra["input_is_reduction"] = red_ok
    if red_ok:
        extra["reduction_exponent"] = red_s
    return ClosureResult(result, "candidate-verified", certified=False,
                         extra=extra)


def is_integral_element(E, column, s_max=5):
    """Semi-decision: YES iff M is verified a reduction of M + A*column.

    Returns (True, s) with the witness exponent, or (False, None) when
    unproven within the budget; never a false YES.
    """
    column = tuple(column)
    if len(column) != E.rank:
        raise InputError("candidate column has the wrong length")
    M = E.submodule()
    if member(column, M):
        return True, 0
    N = add_columns(E, [column])
    M_piece = E.power_piece(1)
    for s in range(s_max + 1):
        lhs = N.power_piece(s + 1)
        rhs = piece_product(N, M_piece, 1, N.power_piece(s), s)
        if lhs.gens == rhs.gens:
            return True, s
    return False, None


def check_integral_equation(x, coeffs):
    """Verify x^n + c1*x^(n-1) + ... + cn = 0 exactly in S.

    Each ci must be fiber-homogeneous of degree i * deg(x)."""
    if x.is_zero():
        raise InputError("integral equation for the zero element")
    if not x.is_fiber_homogeneous():
        raise InputError("element is not fiber-homogeneous")
    d = x.fiber_degree()
    n = len(coeffs)
    if n == 0:
        raise InputError("empty coefficient list")
    total = x ** n
    for i, c in enumerate(coeffs, start=1):
        if not c.is_zero():
            if not c.is_fiber_homogeneous() or c.fiber_degree() != i * d:
                raise InputError(
                    f"coefficient {i} has fiber degree "
                    f"{c.fiber_degree()}, expected {i * d}")
            total = total + c * x ** (n - i)
    return total.is_zero()


def is_reduction(L, M, s_max=5):
    """Semi-decision of M^(s+1) = L * M^s for some s <= s_max."""
    if isinstance(L, ModuleEmbedding):
        L = L.submodule()
    if isinstance(M, ModuleEmbedding):
        E = M
        M = M.submodule()
    else:
        E = ModuleEmbedding.from_submodule(M)
    if not contains(M, L):
        raise InputError("reduction candidate is not inside the module")
    L_piece = groebner_basis(L)
    for s in range(s_max + 1):
        lhs = E.power_piece(s + 1)
        rhs = piece_product(E, L_piece, 1, E.power_piece(s), s)
        if lhs.gens == rhs.gens:
            return True, s
    return False, None

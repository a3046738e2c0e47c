"""Theorem-level deciders built on the closure and graded-piece layers.

Everything here compares exact lengths and exact submodule identities.
Implications that are guaranteed once the closures are right are
re-verified at runtime; a failure raises SoundnessAlert instead of being
reported as a mathematical result, since it can only mean a bug or an
uncertified closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .closures import (ClosureOptions, ideal_product, integral_closure_module,
                       integral_closure_monomial, ratliff_rush_module)
from .errors import InputError, SoundnessAlert
from .groebner import contains, equal, groebner_basis, member
from .poly import Polynomial
from .rees import (INFINITE, ModuleEmbedding, colength, direct_sum,
                   fitting_ideal, maximal_ideal, mixed_product,
                   ord_ideal, piece_product, scale_by_ideal,
                   scale_piece_by_ideal)


@dataclass
class BRPolynomial:
    """Coefficients of the eventual length polynomial of F^(n+1)/M^(n+1).

    length(n) = sum over i of (-1)^i * coefficients[i] * C(n+d+r-i-1, d+r-1-i)
    with d = 2 base variables.  The fit window is the block of degrees the
    coefficients were solved on; validated_from is the smallest n from
    which the polynomial reproduces every measured length.
    """

    rank: int
    coefficients: tuple
    fit_window: tuple
    validated_from: int
    lengths: tuple

    d = 2

    def length_at(self, n):
        dr = self.d + self.rank
        total = 0
        for i, c in enumerate(self.coefficients):
            term = c * comb(n + dr - i - 1, dr - 1 - i)
            total = total - term if i % 2 else total + term
        return total

    def as_dict(self):
        return {
            "coefficients": list(self.coefficients),
            "fit_window": list(self.fit_window),
            "validated_from": self.validated_from,
            "lengths": list(self.lengths),
        }


def _solve_exact(rows, rhs):
    """Gaussian elimination over the rationals; rows must be square."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(b)]
           for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise InputError("degenerate interpolation system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def br_coefficients(E, n_max=None):
    """Buchsbaum-Rim coefficients br_0 .. br_(d+r-1) by exact interpolation.

    Lengths are measured for n = 0..n_max, the top d+r points are solved
    exactly, and the polynomial is validated backward until the first
    mismatch.
    """
    d = len(E.ctx.base_vars)
    if d != 2:
        raise InputError("length analysis requires exactly two base variables")
    r = E.rank
    ncoef = d + r
    if n_max is None:
        n_max = ncoef + 4
    if n_max < ncoef + 2:
        raise InputError(f"n_max must be at least {ncoef + 2}")
    lengths = []
    for n in range(n_max + 1):
        ln = colength(E.power_piece(n + 1))
        if ln is INFINITE:
            raise InputError("infinite colength; no length polynomial exists")
        lengths.append(ln)
    fit_lo = n_max - ncoef + 1
    rows = []
    for n in range(fit_lo, n_max + 1):
        rows.append([(-1) ** i * comb(n + ncoef - i - 1, ncoef - 1 - i)
                     for i in range(ncoef)])
    coeffs = _solve_exact(rows, lengths[fit_lo:])
    if any(c.denominator != 1 for c in coeffs):
        raise InputError(
            "lengths are not yet polynomial on the fit window; raise n_max")
    coeffs = tuple(int(c) for c in coeffs)
    B = BRPolynomial(r, coeffs, (fit_lo, n_max), fit_lo, tuple(lengths))
    validated_from = fit_lo
    for n in range(fit_lo - 1, -1, -1):
        if B.length_at(n) != lengths[n]:
            break
        validated_from = n
    B.validated_from = validated_from
    if fit_lo - validated_from < 2:
        raise InputError(
            "fewer than 2 validated points below the fit window; raise n_max")
    for n in range(fit_lo, n_max + 1):
        if B.length_at(n) != lengths[n]:
            raise SoundnessAlert("fitted polynomial fails on its own window")
    if 0 < lengths[0] and coeffs[0] <= 0:
        raise SoundnessAlert("leading Buchsbaum-Rim coefficient not positive")
    return B


def br_corollary_check(E, B=None, opts=None):
    """Identities tying the coefficients to the integral closure, valid when
    the Ratliff-Rush and integral closures of M agree."""
    opts = opts or ClosureOptions()
    if B is None:
        B = br_coefficients(E)
    rr = ratliff_rush_module(E, 1, opts)
    mbar = integral_closure_module(E, opts=opts)
    if rr.submodule.gens != mbar.submodule.gens:
        raise InputError(
            "corollary precondition (Ratliff-Rush = integral closure) not certified")
    r = E.rank
    len_mbar = colength(mbar.submodule)
    clause_br1 = B.coefficients[1] == B.coefficients[0] - len_mbar
    clause_vanish = all(B.coefficients[i] == 0 for i in range(2, r + 2))
    Ebar = ModuleEmbedding.from_submodule(mbar.submodule)
    samples = []
    hi = B.fit_window[1]
    for n in range(hi - 2, hi + 1):
        measured = colength(Ebar.power_piece(n + 1))
        predicted = (B.coefficients[0] * comb(n + r + 1, r + 1)
                     - B.coefficients[1] * comb(n + r, r))
        samples.append({"n": n, "measured": measured, "predicted": predicted})
    clause_formula = all(s["measured"] == s["predicted"] for s in samples)
    return {
        "verdict": clause_br1 and clause_vanish and clause_formula,
        "br1_identity": clause_br1,
        "higher_coefficients_vanish": clause_vanish,
        "closed_form_lengths": clause_formula,
        "length_F_mod_closure": len_mbar,
        "samples": samples,
        "certified": mbar.certified,
    }


@dataclass
class AnalysisReport:
    table: list
    verdicts: dict
    certification: dict
    warnings: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def as_dict(self):
        return {
            "table": self.table,
            "verdicts": self.verdicts,
            "certification": self.certification,
            "warnings": self.warnings,
            "notes": self.notes,
        }


def _gap(sub_piece, closure_piece):
    """Length of closure/sub, as a difference of ambient colengths."""
    a = colength(sub_piece)
    b = colength(closure_piece)
    if a is INFINITE or b is INFINITE:
        return INFINITE
    return a - b


def theorem12_check(E, n_max=4, candidates=None, opts=None):
    """The four finite equivalent conditions on closure agreement.

    (1) the Ratliff-Rush and integral closures of M agree; (2) they agree
    for every power up to n_max; (3) some power is integrally closed; (4)
    from that power on, all are.  The four verdicts must be consistent;
    a definite contradiction raises SoundnessAlert.
    """
    opts = opts or ClosureOptions()
    if len(E.ctx.base_vars) != 2:
        raise InputError("analysis requires exactly two base variables")
    if not E.finite_colength():
        raise InputError("analysis requires finite colength")
    mbar = integral_closure_module(E, candidates=candidates, opts=opts)
    Ebar = ModuleEmbedding.from_submodule(mbar.submodule)
    table = []
    rr_equal_ic = []
    ic_closed = []
    warnings = []
    notes = []
    for n in range(1, n_max + 1):
        Mn = E.power_piece(n)
        rr_n = ratliff_rush_module(E, n, opts)
        bar_n = Ebar.power_piece(n)
        rr_gap = _gap(Mn, rr_n.submodule)
        ic_gap = _gap(Mn, bar_n)
        table.append({"n": n, "colength": colength(Mn),
                      "rr_gap": rr_gap, "ic_gap": ic_gap})
        if rr_gap is not INFINITE and ic_gap is not INFINITE and rr_gap > ic_gap:
            raise SoundnessAlert(
                f"Ratliff-Rush gap exceeds integral-closure gap at n={n}")
        rr_equal_ic.append(rr_n.submodule.gens == bar_n.gens)
        ic_closed.append(ic_gap == 0)
    cond1 = rr_equal_ic[0]
    cond2 = all(rr_equal_ic)
    first_closed = next((n for n, ok in zip(range(1, n_max + 1), ic_closed)
                         if ok), None)
    cond3 = first_closed is not None
    cond4 = cond3 and all(ic_closed[first_closed - 1:])
    if cond1 and not cond2:
        raise SoundnessAlert(
            "closures agree at n=1 but diverge at a higher power")
    if cond3 and not cond1:
        raise SoundnessAlert(
            "a power is integrally closed yet the closures of M differ")
    if cond3 and not cond4:
        raise SoundnessAlert(
            "integral closedness of powers failed to persist")
    if cond1 and not cond3:
        warnings.append(
            f"no integrally closed power found up to n_max={n_max}; "
            "conditions (3), (4) inconclusive at this window")
    if first_closed == 1:
        notes.append("M is integrally closed: the Cohen-Macaulay case")
    verdicts = {
        "closures_agree": cond1,
        "closures_agree_all_powers": cond2,
        "some_power_integrally_closed": cond3,
        "equality_persists": cond4,
        "first_integrally_closed_power": first_closed,
        "consistent": cond1 == cond2 == cond3 == cond4,
    }
    certification = {
        "integral_closure_method": mbar.method,
        "integral_closure_certified": mbar.certified,
        "ratliff_rush_certified": False,
        "inconclusive": bool(warnings),
    }
    return AnalysisReport(table, verdicts, certification, warnings, notes)


def _vector_str(vec):
    return "(" + ", ".join(str(p) for p in vec) + ")"


def buchsbaum_check(E, mbar=None, opts=None):
    """The finite criterion: m * closure(M) inside M, and M * closure(M)
    equal to M^2 in the fiber-degree-2 piece.

    When both clauses hold, the guaranteed tail facts are re-verified:
    every power from 2 to 4 is integrally closed, and the closure gap is
    reported in degree 1.
    """
    opts = opts or ClosureOptions()
    if mbar is None:
        mbar = integral_closure_module(E, opts=opts)
    Mbar = mbar.submodule
    M = E.submodule()
    m_mbar = scale_piece_by_ideal(Mbar, maximal_ideal(E.ctx))
    clause_m = contains(groebner_basis(M), m_mbar)
    witness = None
    if not clause_m:
        for g in m_mbar.gens:
            if not member(g, M):
                witness = _vector_str(g)
                break
    prod = piece_product(E, groebner_basis(M), 1, groebner_basis(Mbar), 1)
    clause_prod = prod.gens == E.power_piece(2).gens
    verdict = clause_m and clause_prod
    result = {
        "verdict": verdict,
        "m_closure_inside": clause_m,
        "product_equality": clause_prod,
        "witness": witness,
        "certified": mbar.certified,
        "closure_method": mbar.method,
    }
    if verdict:
        Ebar = ModuleEmbedding.from_submodule(Mbar)
        tail = {}
        for n in range(2, 5):
            tail[n] = Ebar.power_piece(n).gens == E.power_piece(n).gens
        if not all(tail.values()):
            raise SoundnessAlert(
                "criterion passed but a power in degrees 2..4 is not closed")
        result["tail_closed"] = {str(n): v for n, v in tail.items()}
        result["closure_gap"] = _gap(M, Mbar)
    return result


def direct_sum_buchsbaum(E1, E2, opts=None):
    """Summandwise criterion plus the mixed-product equalities, checked for
    consistency against the criterion on the direct sum itself."""
    opts = opts or ClosureOptions()
    if E1.ctx != E2.ctx:
        raise InputError("summands live over different rings")
    for E in (E1, E2):
        if not E.submodule().is_monomial():
            raise InputError(
                "direct-sum criterion needs monomial summands (exact closures)")
    check1 = buchsbaum_check(E1, opts=opts)
    check2 = buchsbaum_check(E2, opts=opts)
    bar1 = integral_closure_module(E1, opts=opts).submodule
    bar2 = integral_closure_module(E2, opts=opts).submodule
    ctx = E1.ctx
    p_plain = mixed_product(E1.columns, E1.rank, E2.columns, E2.rank, ctx)
    p_left = mixed_product(groebner_basis(bar1).gens, E1.rank,
                           E2.columns, E2.rank, ctx)
    p_right = mixed_product(E1.columns, E1.rank,
                            groebner_basis(bar2).gens, E2.rank, ctx)
    mixed_ok = (p_left.gens == p_plain.gens and p_right.gens == p_plain.gens)
    verdict = check1["verdict"] and check2["verdict"] and mixed_ok
    whole = buchsbaum_check(direct_sum(E1, E2), opts=opts)
    if whole["verdict"] != verdict:
        raise SoundnessAlert(
            "summandwise criterion disagrees with the direct-sum criterion")
    return {
        "verdict": verdict,
        "summand_1": check1,
        "summand_2": check2,
        "mixed_products_equal": mixed_ok,
        "direct_sum_agrees": True,
    }


def scaled_buchsbaum_check(E, I, opts=None):
    """Rescaling by an integrally closed m-primary monomial ideal must
    preserve a passing criterion; a failure is a soundness alarm."""
    opts = opts or ClosureOptions()
    base = buchsbaum_check(E, opts=opts)
    if not base["verdict"]:
        raise InputError("base module does not pass the criterion")
    I = groebner_basis(I)
    unit = any(p.is_constant() and not p.is_zero() for p in I.ideal_gens())
    if not unit:
        if not I.is_monomial():
            raise InputError("scaling ideal must be monomial")
        closed = integral_closure_monomial(I)
        if closed.submodule.gens != I.gens:
            raise InputError("scaling ideal is not integrally closed")
        if colength(I) is INFINITE:
            raise InputError("scaling ideal must have finite colength")
        scaled = scale_by_ideal(E, I)
    else:
        scaled = E
    check = buchsbaum_check(scaled, opts=opts)
    if not check["verdict"]:
        raise SoundnessAlert(
            "rescaled module failed a criterion the theory guarantees")
    return {
        "verdict": True,
        "base": base,
        "scaled": check,
        "unit_ideal": unit,
    }


def indecomposability_check(E, factors, opts=None):
    """Order-of-Fitting-ideal criterion for indecomposability at rank 2.

    A passing check certifies indecomposability; a failing check is only
    inconclusive, never a decomposability claim.
    """
    opts = opts or ClosureOptions()
    if E.rank != 2:
        raise InputError("the criterion applies to rank-2 embeddings only")
    if not factors:
        raise InputError("a factorization of the 0th Fitting ideal is needed")
    product = None
    for I in factors:
        I = groebner_basis(I)
        if not I.is_monomial():
            raise InputError("factors must be monomial ideals")
        closed = integral_closure_monomial(I)
        if closed.submodule.gens != I.gens:
            raise InputError("factor is not integrally closed")
        product = I if product is None else ideal_product(product, I)
    fitt0 = fitting_ideal(E, 0)
    if groebner_basis(product).gens != fitt0.gens:
        raise InputError("factor product differs from the 0th Fitting ideal")
    warnings = []
    if fitt0.is_monomial():
        if integral_closure_monomial(fitt0).submodule.gens != fitt0.gens:
            raise InputError("the 0th Fitting ideal is not integrally closed")
    else:
        warnings.append("0th Fitting ideal not monomial; "
                        "integral closedness taken on faith")
    ord_fitt1 = ord_ideal(fitting_ideal(E, 1))
    ord_factors = [ord_ideal(groebner_basis(I)) for I in factors]
    passed = ord_fitt1 > min(ord_factors)
    return {
        "verdict": passed,
        "conclusion": ("indecomposable (certified)" if passed
                       else "criterion inconclusive"),
        "ord_fitt1": ord_fitt1,
        "ord_factors": ord_factors,
        "warnings": warnings,
    }

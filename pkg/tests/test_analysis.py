"""Length polynomials and the theorem-level deciders."""

from math import comb

import pytest

from reescalc import (InputError, ModuleEmbedding, RingContext, SubmoduleData,
                      br_coefficients, br_corollary_check, buchsbaum_check,
                      direct_sum_buchsbaum, indecomposability_check,
                      parse_poly, ratliff_rush_module,
                      scaled_buchsbaum_check, theorem12_check)
from reescalc.fixtures import (indecomposable_presentation, mixed_direct_sum,
                               parameter_module, rr_ideal_pair,
                               square_direct_sum)

CTX = RingContext(characteristic=0, base_vars=("X", "Y"))


def _p(s):
    return parse_poly(s, CTX)


def _ideal_embedding(*gens):
    return ModuleEmbedding.from_ideal([_p(g) for g in gens], CTX)


def _diag_embedding(gens1, gens2):
    z = _p("0")
    cols = [(_p(g), z) for g in gens1] + [(z, _p(g)) for g in gens2]
    return ModuleEmbedding(CTX, cols, rank=2)


# -- length polynomial ----------------------------------------------------

def test_br_of_maximal_ideal():
    B = br_coefficients(_ideal_embedding("X", "Y"))
    assert B.coefficients == (1, 0, 0)
    assert B.validated_from == 0
    # lengths of A/m^(n+1) are the triangular numbers
    for n, ln in enumerate(B.lengths):
        assert ln == comb(n + 2, 2)
    assert B.length_at(10) == comb(12, 2)


def test_br_of_parameter_module():
    B = br_coefficients(parameter_module(CTX))
    assert B.coefficients == (3, 0, 0, 0)
    assert B.validated_from == 0


def test_br_matches_measured_lengths():
    E = _ideal_embedding("X^2", "X*Y", "Y^3")
    B = br_coefficients(E)
    from reescalc import colength
    for n in range(B.validated_from, len(B.lengths)):
        assert B.length_at(n) == B.lengths[n]
    # one degree past the measured window, polynomial and measurement agree
    n = len(B.lengths)
    assert B.length_at(n) == colength(E.power_piece(n + 1))


def test_br_input_validation():
    with pytest.raises(InputError):
        br_coefficients(_ideal_embedding("X", "Y"), n_max=3)
    with pytest.raises(InputError):
        br_coefficients(_ideal_embedding("X"))  # infinite colength


def test_br_equals_br_of_rr_closure():
    # the length polynomial only sees the module up to Ratliff-Rush closure
    pair = rr_ideal_pair(CTX)
    E = ModuleEmbedding.from_submodule(pair["I"])
    Ert = ModuleEmbedding.from_submodule(
        ratliff_rush_module(E, 1).submodule)
    assert br_coefficients(E).coefficients == \
        br_coefficients(Ert).coefficients


def test_br_corollary_on_mixed_direct_sum():
    E = mixed_direct_sum(CTX)["E"]
    B = br_coefficients(E)
    assert B.coefficients == (123, 70, 0, 0)
    out = br_corollary_check(E, B)
    assert out["verdict"]
    assert out["br1_identity"] and out["higher_coefficients_vanish"]
    assert out["closed_form_lengths"]
    assert out["length_F_mod_closure"] == B.coefficients[0] - B.coefficients[1]


def test_br_corollary_precondition_rejected():
    # (X^5, X^2*Y^2, Y^5) is Ratliff-Rush closed but not integrally closed,
    # so the corollary identities are not certified for it
    E = _ideal_embedding("X^5", "X^2*Y^2", "Y^5")
    with pytest.raises(InputError):
        br_corollary_check(E)


# -- closure agreement across powers --------------------------------------

def test_theorem12_on_square_direct_sum():
    E = square_direct_sum(CTX)["E"]
    rep = theorem12_check(E, n_max=4)
    v = rep.verdicts
    assert v["closures_agree"] and v["closures_agree_all_powers"]
    assert v["some_power_integrally_closed"] and v["equality_persists"]
    assert v["first_integrally_closed_power"] == 2
    assert v["consistent"]
    assert [row["colength"] for row in rep.table] == [44, 216, 624, 1360]
    assert rep.table[0]["rr_gap"] == rep.table[0]["ic_gap"] > 0
    assert rep.table[1]["ic_gap"] == 0
    assert not rep.certification["inconclusive"]


def test_theorem12_integrally_closed_module_notes_cm_case():
    rep = theorem12_check(_ideal_embedding("X", "Y"), n_max=3)
    assert rep.verdicts["first_integrally_closed_power"] == 1
    assert any("Cohen-Macaulay" in note for note in rep.notes)


def test_theorem12_short_window_is_inconclusive_not_wrong():
    E = square_direct_sum(CTX)["E"]
    rep = theorem12_check(E, n_max=1)
    assert rep.verdicts["closures_agree"]
    assert rep.verdicts["first_integrally_closed_power"] is None
    assert rep.certification["inconclusive"]
    assert rep.warnings


def test_theorem12_rejects_infinite_colength():
    with pytest.raises(InputError):
        theorem12_check(_ideal_embedding("X"))


# -- the finite criterion -------------------------------------------------

def test_buchsbaum_fails_on_square_direct_sum_with_witness():
    E = square_direct_sum(CTX)["E"]
    out = buchsbaum_check(E)
    assert not out["verdict"]
    assert not out["m_closure_inside"]
    # X^2*Y^5 lies in m * closure(I) but not in I, in either summand
    assert out["witness"] in ("(X^2*Y^5, 0)", "(0, X^2*Y^5)")


def test_buchsbaum_passes_on_mixed_direct_sum():
    E = mixed_direct_sum(CTX)["E"]
    out = buchsbaum_check(E)
    assert out["verdict"]
    assert out["m_closure_inside"] and out["product_equality"]
    assert out["certified"]
    assert out["tail_closed"] == {"2": True, "3": True, "4": True}
    assert out["closure_gap"] == 2


def test_buchsbaum_on_integrally_closed_module():
    # diag(m, m^2) is integrally closed, so the criterion holds with gap 0
    E = _diag_embedding(["X", "Y"], ["X^2", "X*Y", "Y^2"])
    out = buchsbaum_check(E)
    assert out["verdict"]
    assert out["closure_gap"] == 0


def test_direct_sum_buchsbaum_mixed():
    fix = mixed_direct_sum(CTX)
    out = direct_sum_buchsbaum(fix["E1"], fix["E2"])
    assert out["verdict"]
    assert out["mixed_products_equal"]
    assert out["direct_sum_agrees"]


def test_direct_sum_buchsbaum_square_fails_consistently():
    EI = square_direct_sum(CTX)["EI"]
    out = direct_sum_buchsbaum(EI, EI)
    assert not out["verdict"]
    # the whole-sum check ran and agreed, so no alarm was raised
    assert out["direct_sum_agrees"]


def test_direct_sum_buchsbaum_rejects_non_monomial():
    E = indecomposable_presentation(CTX)["E"]
    with pytest.raises(InputError):
        direct_sum_buchsbaum(E, E)


def test_scaled_buchsbaum_check():
    E = mixed_direct_sum(CTX)["E"]
    m = SubmoduleData.ideal(CTX, [_p("X"), _p("Y")])
    out = scaled_buchsbaum_check(E, m)
    assert out["verdict"] and not out["unit_ideal"]
    unit = SubmoduleData.ideal(CTX, [_p("1")])
    out = scaled_buchsbaum_check(E, unit)
    assert out["verdict"] and out["unit_ideal"]


def test_scaled_buchsbaum_rejects_bad_ideals():
    E = mixed_direct_sum(CTX)["E"]
    with pytest.raises(InputError):  # not integrally closed
        scaled_buchsbaum_check(E, SubmoduleData.ideal(CTX, [_p("X^2"),
                                                            _p("Y^2")]))
    with pytest.raises(InputError):  # infinite colength
        scaled_buchsbaum_check(E, SubmoduleData.ideal(CTX, [_p("X")]))


# -- indecomposability ----------------------------------------------------

def test_indecomposability_certified_for_presentation():
    fix = indecomposable_presentation(CTX)
    out = indecomposability_check(fix["E"], fix["factors"])
    assert out["verdict"]
    assert out["conclusion"] == "indecomposable (certified)"
    assert out["ord_fitt1"] == 3
    assert sorted(out["ord_factors"]) == [1, 5]


def test_indecomposability_inconclusive_for_block_diagonal():
    E = _diag_embedding(["X", "Y"], ["X^2", "X*Y", "Y^2"])
    factors = [SubmoduleData.ideal(CTX, [_p("X"), _p("Y")]),
               SubmoduleData.ideal(CTX, [_p("X^2"), _p("X*Y"), _p("Y^2")])]
    out = indecomposability_check(E, factors)
    assert not out["verdict"]
    assert out["conclusion"] == "criterion inconclusive"


def test_indecomposability_rejects_wrong_factorization():
    fix = indecomposable_presentation(CTX)
    wrong = [SubmoduleData.ideal(CTX, [_p("X"), _p("Y")])]
    with pytest.raises(InputError):
        indecomposability_check(fix["E"], wrong)

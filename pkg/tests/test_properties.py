"""Randomized property suites over monomial inputs.

Each suite runs at least 100 seeded random instances with generator
degrees up to 8.  The suite bodies are plain functions returning a list
of failure descriptions so the acceptance harness can run them too.
"""

import random

from reescalc import (ModuleEmbedding, Polynomial, RingContext, SubmoduleData,
                      colon, contains, equal, groebner_basis,
                      integral_closure_monomial, member, ratliff_rush_ideal,
                      ratliff_rush_module)
from reescalc.closures import ideal_power, newton_closure_exps

from oracles import ideal_from_exps, random_monomial_ideal

CTX = RingContext(characteristic=0, base_vars=("X", "Y"))


def _instances(seed, count, max_degree=8):
    rng = random.Random(seed)
    return [random_monomial_ideal(rng, max_degree=max_degree)
            for _ in range(count)]


def sandwich_suite(count=100, seed=1001):
    """M inside its Ratliff-Rush closure inside its integral closure."""
    failures = []
    for exps in _instances(seed, count):
        I = ideal_from_exps(CTX, exps)
        rr = ratliff_rush_ideal(I).submodule
        ic = integral_closure_monomial(I).submodule
        if not (contains(rr, I) and contains(ic, rr)):
            failures.append(f"sandwich violated for {exps}")
    # module version: block-diagonal pairs, fiber degrees up to 3
    rng = random.Random(seed + 1)
    for _ in range(10):
        e1 = random_monomial_ideal(rng, max_degree=5)
        e2 = random_monomial_ideal(rng, max_degree=5)
        z = Polynomial.zero(CTX)
        cols = [(Polynomial.monomial(CTX, e), z) for e in e1] + \
               [(z, Polynomial.monomial(CTX, e)) for e in e2]
        E = ModuleEmbedding(CTX, cols, rank=2)
        from reescalc import integral_closure_module
        ic = integral_closure_module(E).submodule
        rr = ratliff_rush_module(E, 1).submodule
        if not (contains(rr, E.submodule()) and contains(ic, rr)):
            failures.append(f"module sandwich violated for {e1}, {e2}")
    return failures


def idempotence_suite(count=100, seed=2002):
    """Both closures are idempotent."""
    failures = []
    for exps in _instances(seed, count):
        I = ideal_from_exps(CTX, exps)
        rr = ratliff_rush_ideal(I).submodule
        if not equal(ratliff_rush_ideal(rr).submodule, rr):
            failures.append(f"rr not idempotent for {exps}")
        ic = integral_closure_monomial(I).submodule
        if not equal(integral_closure_monomial(ic).submodule, ic):
            failures.append(f"closure not idempotent for {exps}")
    return failures


def eventual_equality_suite(count=100, seed=3003, n_cap=6):
    """Some power at most n_cap is Ratliff-Rush closed, and closedness
    holds again for the next two powers."""
    failures = []
    for exps in _instances(seed, count):
        I = ideal_from_exps(CTX, exps)
        cache = {}
        first = None
        for n in range(1, n_cap + 1):
            In = ideal_power(I, n, cache)
            if equal(ratliff_rush_ideal(In).submodule, In):
                first = n
                break
        if first is None:
            failures.append(f"no closed power at or below {n_cap} for {exps}")
            continue
        for n in (first + 1, first + 2):
            In = ideal_power(I, n, cache)
            if not equal(ratliff_rush_ideal(In).submodule, In):
                failures.append(
                    f"closedness at {first} did not persist to {n} for {exps}")
    return failures


def persistence_suite(count=100, seed=4004, l_cap=8):
    """For the pair I inside its Ratliff-Rush closure N: once I^l = N^l at
    some l, the equality holds at the next three exponents too."""
    failures = []
    for exps in _instances(seed, count):
        I = ideal_from_exps(CTX, exps)
        N = ratliff_rush_ideal(I).submodule
        cache_i, cache_n = {}, {}
        first = None
        for l in range(1, l_cap + 1):
            if ideal_power(I, l, cache_i).gens == \
                    ideal_power(N, l, cache_n).gens:
                first = l
                break
        if first is None:
            failures.append(f"no power equality at or below {l_cap} for {exps}")
            continue
        for l in range(first + 1, first + 4):
            if ideal_power(I, l, cache_i).gens != \
                    ideal_power(N, l, cache_n).gens:
                failures.append(
                    f"power equality at {first} broke at {l} for {exps}")
    return failures


def closure_of_powers_suite(count=100, seed=5005, n_cap=4):
    """Newton closure commutes with powers: closure(I^n) = closure(I)^n."""
    failures = []
    for exps in _instances(seed, count, max_degree=6):
        I = ideal_from_exps(CTX, exps)
        Ibar = ideal_from_exps(CTX, newton_closure_exps(exps))
        cache_i, cache_b = {}, {}
        for n in range(1, n_cap + 1):
            In = ideal_power(I, n, cache_i)
            lhs = newton_closure_exps(
                [g[0].leading_monomial() for g in In.gens])
            rhs_ideal = ideal_power(Ibar, n, cache_b)
            rhs = newton_closure_exps(
                [g[0].leading_monomial() for g in rhs_ideal.gens])
            # closure(I)^n is already integrally closed, so taking the
            # closure again must not change it
            if [g[0].leading_monomial() for g in groebner_basis(
                    ideal_from_exps(CTX, rhs)).gens] != \
                    [g[0].leading_monomial() for g in rhs_ideal.gens]:
                failures.append(f"closure(I)^{n} not closed for {exps}")
            if lhs != rhs:
                failures.append(f"closure of power {n} mismatch for {exps}")
    return failures


def colon_adjunction_suite(count=100, seed=6006):
    """v in (U : J) exactly when v*J lies in U."""
    failures = []
    rng = random.Random(seed)
    for _ in range(count):
        U = ideal_from_exps(CTX, random_monomial_ideal(rng, max_degree=8))
        J = ideal_from_exps(CTX, random_monomial_ideal(rng, max_degree=5))
        v = Polynomial.monomial(CTX, (rng.randint(0, 8), rng.randint(0, 8)))
        lhs = member((v,), colon(U, J))
        rhs = all(member((v * g,), U) for g in J.ideal_gens())
        if lhs != rhs:
            failures.append(f"colon adjunction failed for {U.gens}, {J.gens}")
    return failures


def canonicity_suite(count=100, seed=7007):
    """The reduced basis does not depend on generator order, including for
    redundant generating sets."""
    failures = []
    rng = random.Random(seed)
    for _ in range(count):
        exps = random_monomial_ideal(rng, max_degree=8)
        gens = [Polynomial.monomial(CTX, e) for e in exps]
        # toss in a redundant product generator
        gens.append(gens[0] * Polynomial.monomial(
            CTX, (rng.randint(0, 2), rng.randint(0, 2))))
        shuffled = gens[:]
        rng.shuffle(shuffled)
        a = groebner_basis(SubmoduleData.ideal(CTX, gens))
        b = groebner_basis(SubmoduleData.ideal(CTX, shuffled))
        if a.gens != b.gens:
            failures.append(f"basis not canonical for {exps}")
    return failures


def reduction_monotonicity_suite(count=30, seed=8008):
    """For I and its Ratliff-Rush closure N (a verified reduction pair),
    the closure of I contains the closure of every subideal of I that is
    still a reduction of I; here checked on the pair (I, N) itself:
    closures of reduction-related ideals are nested."""
    failures = []
    rng = random.Random(seed)
    from reescalc import is_reduction
    for _ in range(count):
        exps = random_monomial_ideal(rng, max_degree=6)
        I = ideal_from_exps(CTX, exps)
        N = ratliff_rush_ideal(I).submodule
        ok, _s = is_reduction(I, N, s_max=8)
        if not ok:
            failures.append(f"input not a reduction of its closure: {exps}")
            continue
        rrN = ratliff_rush_ideal(N).submodule
        if not contains(rrN, ratliff_rush_ideal(I).submodule):
            failures.append(f"reduction monotonicity failed for {exps}")
    return failures


ALL_SUITES = (
    ("sandwich", sandwich_suite),
    ("idempotence", idempotence_suite),
    ("eventual-equality", eventual_equality_suite),
    ("power-equality-persistence", persistence_suite),
    ("closure-of-powers", closure_of_powers_suite),
    ("colon-adjunction", colon_adjunction_suite),
    ("basis-canonicity", canonicity_suite),
    ("reduction-monotonicity", reduction_monotonicity_suite),
)


def test_sandwich():
    assert sandwich_suite() == []


def test_idempotence():
    assert idempotence_suite() == []


def test_eventual_equality():
    assert eventual_equality_suite() == []


def test_persistence():
    assert persistence_suite() == []


def test_closure_of_powers():
    assert closure_of_powers_suite() == []


def test_colon_adjunction():
    assert colon_adjunction_suite() == []


def test_canonicity():
    assert canonicity_suite() == []


def test_reduction_monotonicity():
    assert reduction_monotonicity_suite() == []

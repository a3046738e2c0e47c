"""Coefficient fields, ring contexts, and monomial orders.

A context fixes the coefficient field (exact rationals or a prime field),
the base variables (the coordinate ring A), the fiber variables (the
polynomial extension S = A[t1..tr]), and a total monomial order.  The
default order compares total fiber degree first, so graded pieces of
fiber-graded ideals can be read off degree by degree, then falls back to
degree-reverse-lexicographic comparison inside each block.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

Exponents = tuple  # one non-negative int per context variable


class RationalField:
    """Exact rationals; values are Fraction in lowest terms."""

    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """Prime field F_p; values are reduced representatives in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, min(p, 1 << 16)) if q * q <= p):
            raise InputError(f"characteristic must be 0 or prime, got {p}")
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.characteristic == 0:
                raise ZeroDivisionError("denominator vanishes in F_p")
            return (value.numerator * self.invert(value.denominator)) % self.characteristic
        return int(value) % self.characteristic

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def mul(self, a, b):
        return (a * b) % self.characteristic

    def neg(self, a):
        return (-a) % self.characteristic

    def invert(self, a):
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.characteristic - 2, self.characteristic)

    def __repr__(self):
        return f"GF({self.characteristic})"

    def __eq__(self, other):
        return (isinstance(other, PrimeField)
                and other.characteristic == self.characteristic)

    def __hash__(self):
        return hash(("GF", self.characteristic))


def _negrev(exps):
    return tuple(-e for e in reversed(exps))


class RingContext:
    """Immutable description of the ambient polynomial ring.

    Variables are stored as base block followed by fiber block, with any
    auxiliary elimination variables appended last.  Elimination variables
    always dominate the order; fiber degree is compared before base degree.
    """

    __slots__ = ("characteristic", "base_vars", "fiber_vars", "aux_vars",
                 "field", "vars", "nvars", "_nbase", "_nfiber", "var_index",
                 "_elim_indices", "_hash", "_key_cache")

    def __init__(self, characteristic=0, base_vars=("X", "Y"), fiber_vars=(),
                 aux_vars=(), elim_indices=None):
        base_vars = tuple(base_vars)
        fiber_vars = tuple(fiber_vars)
        aux_vars = tuple(aux_vars)
        allvars = base_vars + fiber_vars + aux_vars
        if len(set(allvars)) != len(allvars) or any(not v for v in allvars):
            raise InputError("variable names must be distinct and non-empty")
        self.characteristic = characteristic
        self.base_vars = base_vars
        self.fiber_vars = fiber_vars
        self.aux_vars = aux_vars
        self.field = RationalField() if characteristic == 0 else PrimeField(characteristic)
        self.vars = allvars
        self.nvars = len(allvars)
        self._nbase = len(base_vars)
        self._nfiber = len(fiber_vars)
        self.var_index = {v: i for i, v in enumerate(allvars)}
        if elim_indices is None:
            elim_indices = tuple(range(self._nbase + self._nfiber, self.nvars))
        self._elim_indices = tuple(elim_indices)
        self._hash = hash((characteristic, base_vars, fiber_vars, aux_vars,
                           self._elim_indices))
        self._key_cache = {}

    # -- degrees ---------------------------------------------------------

    def base_degree(self, exps):
        nb = self._nbase
        return sum(exps[:nb])

    def fiber_degree(self, exps):
        nb = self._nbase
        return sum(exps[nb:nb + self._nfiber])

    def fiber_part(self, exps):
        nb = self._nbase
        return exps[nb:nb + self._nfiber]

    def base_part(self, exps):
        return exps[:self._nbase]

    # -- order -----------------------------------------------------------

    def mon_key(self, exps):
        """Sort key; larger key means larger monomial."""
        got = self._key_cache.get(exps)
        if got is not None:
            return got
        nb = self._nbase
        nf = self._nfiber
        fiber = exps[nb:nb + nf]
        base = exps[:nb]
        key = (sum(fiber), _negrev(fiber), sum(base), _negrev(base))
        if self._elim_indices:
            elim = tuple(exps[i] for i in self._elim_indices)
            key = (sum(elim), _negrev(elim)) + key
        self._key_cache[exps] = key
        return key

    # -- derived contexts ------------------------------------------------

    def with_fiber(self, fiber_vars):
        return RingContext(self.characteristic, self.base_vars, tuple(fiber_vars))

    def base_context(self):
        if not self.fiber_vars and not self.aux_vars:
            return self
        return RingContext(self.characteristic, self.base_vars)

    def with_aux_var(self, name="_h"):
        """Extend by one auxiliary variable that dominates the order."""
        return RingContext(self.characteristic, self.base_vars,
                           self.fiber_vars, self.aux_vars + (name,))

    def with_elimination(self, names):
        """Same variables, but the named ones dominate the order."""
        idx = tuple(sorted(self.var_index[n] for n in names))
        return RingContext(self.characteristic, self.base_vars,
                           self.fiber_vars, self.aux_vars, elim_indices=idx)

    # -- equality --------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, RingContext)
                and self.characteristic == other.characteristic
                and self.vars == other.vars
                and self.base_vars == other.base_vars
                and self.fiber_vars == other.fiber_vars
                and self._elim_indices == other._elim_indices)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        bits = [f"char={self.characteristic}", f"base={'%s' % (self.base_vars,)}"]
        if self.fiber_vars:
            bits.append(f"fiber={'%s' % (self.fiber_vars,)}")
        if self.aux_vars:
            bits.append(f"aux={'%s' % (self.aux_vars,)}")
        return f"RingContext({', '.join(bits)})"


# -- exponent-tuple helpers ----------------------------------------------

def mon_one(nvars):
    return (0,) * nvars


def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_divides(a, b):
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mon_div(a, b):
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mon_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mon_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))

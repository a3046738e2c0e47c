"""Exact multivariate polynomials plus the text front end.

Polynomials are dictionaries from exponent tuples to nonzero field
elements.  The canonical term list (descending in the context order) is
produced on demand, so arithmetic stays dict-based and cheap.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .context import mon_mul, mon_one
from .errors import ContextMismatchError, ParseError


class Polynomial:
    __slots__ = ("ctx", "terms", "_lead")

    def __init__(self, ctx, terms):
        """Take ownership of a clean term dict (no zero coefficients)."""
        self.ctx = ctx
        self.terms = terms
        self._lead = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {mon_one(ctx.nvars): ctx.field.one})

    @classmethod
    def constant(cls, ctx, value):
        c = ctx.field.coerce(value)
        if c == ctx.field.zero:
            return cls.zero(ctx)
        return cls(ctx, {mon_one(ctx.nvars): c})

    @classmethod
    def variable(cls, ctx, name):
        exps = [0] * ctx.nvars
        exps[ctx.var_index[name]] = 1
        return cls(ctx, {tuple(exps): ctx.field.one})

    @classmethod
    def monomial(cls, ctx, exps, coeff=1):
        c = ctx.field.coerce(coeff)
        if c == ctx.field.zero:
            return cls.zero(ctx)
        return cls(ctx, {tuple(exps): c})

    @classmethod
    def from_terms(cls, ctx, pairs):
        field = ctx.field
        terms = {}
        for exps, coeff in pairs:
            exps = tuple(exps)
            c = terms.get(exps, field.zero)
            c = field.add(c, field.coerce(coeff))
            if c == field.zero:
                terms.pop(exps, None)
            else:
                terms[exps] = c
        return cls(ctx, terms)

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_term(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1
                                  and not any(next(iter(self.terms))))

    # -- structure -------------------------------------------------------

    def sorted_terms(self):
        """Terms in strictly decreasing monomial order."""
        key = self.ctx.mon_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lead is None or self._lead not in self.terms:
            self._lead = max(self.terms, key=self.ctx.mon_key)
        return self._lead

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def base_degree(self):
        if not self.terms:
            return -1
        return max(self.ctx.base_degree(e) for e in self.terms)

    def fiber_degree(self):
        if not self.terms:
            return -1
        return max(self.ctx.fiber_degree(e) for e in self.terms)

    def is_fiber_homogeneous(self):
        degs = {self.ctx.fiber_degree(e) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                f"operands in different contexts: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        field = self.ctx.field
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = field.add(terms.get(exps, field.zero), coeff)
            if c == field.zero:
                terms.pop(exps, None)
            else:
                terms[exps] = c
        return Polynomial(self.ctx, terms)

    def __sub__(self, other):
        self._check(other)
        field = self.ctx.field
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = field.sub(terms.get(exps, field.zero), coeff)
            if c == field.zero:
                terms.pop(exps, None)
            else:
                terms[exps] = c
        return Polynomial(self.ctx, terms)

    def __neg__(self):
        field = self.ctx.field
        return Polynomial(self.ctx, {e: field.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        field = self.ctx.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mon_mul(e1, e2)
                c = field.add(terms.get(e, field.zero), field.mul(c1, c2))
                if c == field.zero:
                    terms.pop(e, None)
                else:
                    terms[e] = c
        return Polynomial(self.ctx, terms)

    def scale(self, coeff):
        field = self.ctx.field
        c0 = field.coerce(coeff)
        if c0 == field.zero:
            return Polynomial.zero(self.ctx)
        return Polynomial(self.ctx, {e: field.mul(c, c0) for e, c in self.terms.items()})

    def mul_term(self, exps, coeff):
        field = self.ctx.field
        c0 = field.coerce(coeff)
        if c0 == field.zero:
            return Polynomial.zero(self.ctx)
        exps = tuple(exps)
        return Polynomial(self.ctx, {mon_mul(e, exps): field.mul(c, c0)
                                     for e, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.ctx)
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ctx.field.invert(self.leading_coefficient()))

    def primitive(self):
        """Clear denominators, divide by integer content, leading coeff > 0.

        Over a prime field this is the monic normalization.
        """
        if not self.terms:
            return self
        if self.ctx.characteristic != 0:
            return self.monic()
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        factor = Fraction(den, num)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self.scale(factor)

    # -- mapping between contexts ----------------------------------------

    def map_context(self, new_ctx):
        """Reinterpret over new_ctx, matching variables by name.

        Every variable actually appearing must exist in the target.
        """
        old = self.ctx
        if new_ctx.vars == old.vars and new_ctx.characteristic == old.characteristic:
            return Polynomial(new_ctx, dict(self.terms))
        lut = []
        for name in old.vars:
            lut.append(new_ctx.var_index.get(name))
        terms = {}
        for exps, coeff in self.terms.items():
            out = [0] * new_ctx.nvars
            for i, e in enumerate(exps):
                if e:
                    j = lut[i]
                    if j is None:
                        raise ContextMismatchError(
                            f"variable {old.vars[i]!r} absent from target context")
                    out[j] = e
            terms[tuple(out)] = coeff
        return Polynomial(new_ctx, terms)

    def uses_vars(self, names):
        idx = [self.ctx.var_index[n] for n in names]
        return any(any(e[i] for i in idx) for e in self.terms)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # -- printing --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.ctx.vars, exps) if e)
            neg = isinstance(coeff, Fraction) and coeff < 0
            mag = -coeff if neg else coeff
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


# -- parser --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()^*+-]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append((m.group(3), m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.tokens = _tokenize(text)
        self.ctx = ctx
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            result = result - rhs if op == "-" else result + rhs
        return result

    def term(self):
        result = self.factor()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"exponent must be an integer, found {tok[1]!r}",
                                 tok[2])
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return Polynomial.constant(self.ctx, tok[1])
        if tok[0] == "name":
            if tok[1] not in self.ctx.var_index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            return Polynomial.variable(self.ctx, tok[1])
        if tok[0] == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_poly(text, ctx):
    """Parse a polynomial expression over the given context.

    Grammar: integers, variable names, `^` integer powers, `*`, `+`, `-`,
    parentheses.  Juxtaposition is not multiplication.
    """
    return _Parser(text, ctx).parse()


def poly_arith(f, g, op):
    """Named dispatcher for exact polynomial arithmetic."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")

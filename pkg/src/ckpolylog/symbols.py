"""Formal motivic periods: polylogarithm, logarithm and zeta symbols.

A symbol is Li_n(z) for n >= 2, log(l) for a prime l, or zeta(n) for odd
n >= 3; everything else reduces eagerly:

  * log of a rational z factors through the primes of z (log of -1 is 0),
  * Li_1(z) rewrites to -log(1-z),
  * zeta(even) is 0.

Expressions are polynomials in symbols with exact rational coefficients,
graded by half-weight.  The reduced coproduct of Li_n(z) is the Goncharov
formula sum_i Li_{n-i}(z) (x) log(z)^i / i!; log and zeta symbols are
primitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _factor(n):
    n = int(n)
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True, order=True)
class Symbol:
    kind: str        # "log" | "li" | "zeta"
    n: int           # weight index (1 for log)
    z: Fraction      # argument (0 for zeta)

    @property
    def weight(self):
        return 1 if self.kind == "log" else self.n

    def __repr__(self):
        if self.kind == "log":
            return "log(%s)" % self.z
        if self.kind == "zeta":
            return "zeta(%d)" % self.n
        return "Li%d(%s)" % (self.n, self.z)


class Expression:
    """Polynomial in symbols; terms map sorted symbol tuples to Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[tuple(sorted(m))] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)}) if c else cls()

    @classmethod
    def sym(cls, s):
        return cls({(s,): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Expression) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = Expression()
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Expression()
        out = Expression()
        out.terms = {m: c * x for m, x in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        out = Expression()
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Expression.const(1)
        for _ in range(k):
            out = out * self
        return out

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def symbols(self):
        return {s for m in self.terms for s in m}

    def weights(self):
        return sorted({sum(s.weight for s in m) for m in self.terms})

    def graded_part(self, n):
        out = Expression()
        out.terms = {m: c for m, c in self.terms.items()
                     if sum(s.weight for s in m) == n}
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), repr(mc[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.sorted_terms():
            mono = "*".join(repr(s) for s in m) if m else "1"
            bits.append("%s*%s" % (c, mono))
        return " + ".join(bits)


def log_u(z):
    """Motivic logarithm of a nonzero rational, expanded into prime symbols."""
    z = Fraction(z)
    if z == 0:
        raise ValueError("log of zero")
    out = Expression()
    num = _factor(abs(z.numerator)) if abs(z.numerator) != 1 else {}
    den = _factor(z.denominator) if z.denominator != 1 else {}
    for p, e in num.items():
        out = out + Expression.sym(Symbol("log", 1, Fraction(p))).scale(e)
    for p, e in den.items():
        out = out - Expression.sym(Symbol("log", 1, Fraction(p))).scale(e)
    return out


def li_u(n, z):
    """Motivic polylogarithm Li_n(z); Li_1 rewrites to -log(1-z)."""
    z = Fraction(z)
    if n < 1:
        raise ValueError("Li index must be positive")
    if z in (0, 1):
        raise ValueError("Li_n(z) needs z outside {0, 1}")
    if n == 1:
        return -log_u(1 - z)
    return Expression.sym(Symbol("li", n, z))


def zeta_u(n):
    """Motivic zeta value; zero in even weight."""
    if n < 2:
        raise ValueError("zeta index must be >= 2")
    if n % 2 == 0:
        return Expression.zero()
    return Expression.sym(Symbol("zeta", n, Fraction(0)))


class TensorExpr:
    """Element of Expression (x) Expression, keyed by monomial pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = c

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorExpr) and self.terms == other.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        out = TensorExpr()
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        out = TensorExpr()
        if c:
            out.terms = {k: c * x for k, x in self.terms.items()}
        return out

    def __mul__(self, other):
        terms = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                k = (tuple(sorted(l1 + l2)), tuple(sorted(r1 + r2)))
                s = terms.get(k, 0) + c1 * c2
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        out = TensorExpr()
        out.terms = terms
        return out

    def bidegree_part(self, i, j):
        out = TensorExpr()
        out.terms = {
            (l, r): c for (l, r), c in self.terms.items()
            if sum(s.weight for s in l) == i and sum(s.weight for s in r) == j}
        return out

    @classmethod
    def of(cls, left, right):
        terms = {}
        for ml, cl in left.terms.items():
            for mr, cr in right.terms.items():
                k = (ml, mr)
                s = terms.get(k, 0) + cl * cr
                if s:
                    terms[k] = s
        out = cls()
        out.terms = terms
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (l, r), c in sorted(self.terms.items(), key=repr):
            sl = "*".join(map(repr, l)) if l else "1"
            sr = "*".join(map(repr, r)) if r else "1"
            bits.append("%s*(%s (x) %s)" % (c, sl, sr))
        return " + ".join(bits)


def _symbol_coproduct(s):
    """Full coproduct of a single symbol as a TensorExpr."""
    e = Expression.sym(s)
    out = TensorExpr({((), tuple(e.terms)[0]): Fraction(1),
                      (tuple(e.terms)[0], ()): Fraction(1)})
    if s.kind == "li":
        z = s.z
        logz = log_u(z)
        for i in range(1, s.n):
            left = li_u(s.n - i, z)
            right = (logz ** i).scale(Fraction(1, math.factorial(i)))
            out = out + TensorExpr.of(left, right)
    return out


def coproduct(expr):
    """Multiplicative extension of the Goncharov coproduct to expressions."""
    out = TensorExpr()
    for m, c in expr.terms.items():
        t = TensorExpr({((), ()): Fraction(1)})
        for s in m:
            t = t * _symbol_coproduct(s)
        out = out + t.scale(c)
    return out


def reduced_coproduct(expr):
    """Delta'(x) = Delta(x) - x (x) 1 - 1 (x) x."""
    t = coproduct(expr)
    for m, c in expr.terms.items():
        for k in ((m, ()), ((), m)):
            s = t.terms.get(k, 0) - c
            if s:
                t.terms[k] = s
            else:
                t.terms.pop(k, None)
    return t


def goncharov_reduced_coproduct(sym_or_expr):
    if isinstance(sym_or_expr, Symbol):
        sym_or_expr = Expression.sym(sym_or_expr)
    return reduced_coproduct(sym_or_expr)


class ExprFraction:
    """num/den pair of Expressions; no gcd cancellation, exact equality tests."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Expression.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(Expression.zero())

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = _as_fraction(other)
        return ExprFraction(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def __sub__(self, other):
        other = _as_fraction(other)
        return ExprFraction(self.num * other.den - other.num * self.den,
                            self.den * other.den)

    def __mul__(self, other):
        other = _as_fraction(other)
        return ExprFraction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _as_fraction(other)
        return ExprFraction(self.num * other.den, self.den * other.num)

    def equals(self, other):
        other = _as_fraction(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def equals_expression(self, expr):
        return (self.num - expr * self.den).is_zero()

    def __repr__(self):
        if self.den == Expression.const(1):
            return repr(self.num)
        return "(%r) / (%r)" % (self.num, self.den)


def _as_fraction(x):
    if isinstance(x, ExprFraction):
        return x
    if isinstance(x, Expression):
        return ExprFraction(x)
    return ExprFraction(Expression.const(Fraction(x)))

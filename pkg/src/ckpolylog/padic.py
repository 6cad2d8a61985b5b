"""Fixed-precision p-adic arithmetic.

A PadicNumber is p^val * unit with the unit known modulo p^rel; absolute
precision is val + rel.  Addition floors the result at the joint absolute
precision, multiplication and division work at the joint relative
precision, so precision loss is tracked per value.  The logarithm is the
Iwasawa branch (log p = 0), which kills Teichmueller roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

_EXACT_ZERO_VAL = None


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working precision M (digits), guard g; x = y iff val(x-y) >= M - g."""

    M: int = 12
    g: int = 3

    def __post_init__(self):
        if not (self.M > self.g >= 0):
            raise ValueError("need M > g >= 0")

    @property
    def equality_threshold(self):
        return self.M - self.g

    def workprec(self):
        # internal headroom over the reporting precision
        return self.M + self.g + 8


class PadicNumber:
    """p-adic scalar: p, valuation, unit part mod p^rel, relative precision.

    Zero comes in two flavours: exact zero (infinite precision) and a
    tracked zero O(p^A) whose valuation is only known to be >= A.
    """

    __slots__ = ("p", "val", "unit", "rel")

    def __init__(self, p, val, unit, rel):
        self.p = p
        if rel < 0:
            rel = 0
        if val is _EXACT_ZERO_VAL:
            self.val, self.unit, self.rel = None, 0, 0
            return
        unit %= p ** rel if rel else 1
        if unit == 0:
            # all known digits vanished: tracked zero O(p^{val+rel})
            self.val, self.unit, self.rel = val + rel, 0, 0
            return
        # normalize so the unit is coprime to p
        shift = 0
        while unit % p == 0:
            unit //= p
            shift += 1
        self.val = val + shift
        self.rel = rel - shift
        self.unit = unit % (p ** self.rel)

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact_zero(cls, p):
        return cls(p, _EXACT_ZERO_VAL, 0, 0)

    @classmethod
    def zero_to(cls, p, abs_prec):
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_rational(cls, p, q, rel):
        q = Fraction(q)
        if q == 0:
            return cls.exact_zero(p)
        num, den = q.numerator, q.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        unit = num * pow(den, -1, p ** rel) % p ** rel
        return cls(p, v, unit, rel)

    @classmethod
    def from_int_mod(cls, p, residue, abs_prec):
        """Value known modulo p^abs_prec (valuation read off the residue)."""
        residue %= p ** abs_prec
        if residue == 0:
            return cls.zero_to(p, abs_prec)
        return cls(p, 0, residue, abs_prec)

    # -- queries -----------------------------------------------------------

    def is_exact_zero(self):
        return self.val is None

    def is_zeroish(self):
        return self.unit == 0

    def valuation(self):
        """Exact valuation; raises on (tracked or exact) zero."""
        if self.unit == 0:
            raise PrecisionError("valuation of a zero value is not finite")
        return self.val

    def val_lower_bound(self):
        if self.val is None:
            return 10 ** 9
        return self.val

    def abs_precision(self):
        if self.val is None:
            return 10 ** 9
        return self.val + self.rel

    def lift(self):
        """Integer lift p^val * unit (val >= 0 required)."""
        if self.unit == 0:
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no integer lift")
        return self.p ** self.val * self.unit

    def digits(self, count=None):
        """Base-p digits of the unit part starting at p^val."""
        if count is None:
            count = self.rel
        out = []
        u = self.unit
        for _ in range(count):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    # -- arithmetic ----------------------------------------------------------

    _EXACT_COERCE_REL = 96  # rationals are exact; never let them cap precision

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("mixed primes %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNumber.from_rational(
                self.p, other, max(self.rel, self._EXACT_COERCE_REL))
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a.is_exact_zero():
            return b
        if b.is_exact_zero():
            return a
        abs_prec = min(a.abs_precision(), b.abs_precision())
        v = min(a.val, b.val)
        m = abs_prec - v
        if m <= 0:
            return PadicNumber.zero_to(a.p, abs_prec)
        total = (a.unit * a.p ** (a.val - v) + b.unit * b.p ** (b.val - v)) % a.p ** m
        return PadicNumber(a.p, v, total, m)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNumber(self.p, self.val, (-self.unit) % self.p ** self.rel, self.rel)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and other == 1:
            return self
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a.is_exact_zero() or b.is_exact_zero():
            return PadicNumber.exact_zero(a.p)
        if a.unit == 0 or b.unit == 0:
            # O(p^A) * (p^v unit) = O(p^{A+v}); O * O = O(sum of bounds)
            bound = a.val_lower_bound() + b.val_lower_bound()
            return PadicNumber.zero_to(a.p, bound)
        rel = min(a.rel, b.rel)
        return PadicNumber(a.p, a.val + b.val, a.unit * b.unit % a.p ** rel, rel)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        if b.unit == 0:
            raise ZeroDivisionError("division by (possible) p-adic zero")
        inv_rel = b.rel
        inv = PadicNumber(b.p, -b.val, pow(b.unit, -1, b.p ** inv_rel), inv_rel)
        return self * inv

    def __rtruediv__(self, other):
        a = self._coerce(other)
        return a / self

    def __pow__(self, k):
        if k < 0:
            return 1 / (self ** (-k))
        out = PadicNumber.from_rational(
            self.p, 1, self.rel if self.rel else self._EXACT_COERCE_REL)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return self.unit != 0

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (self.p, self.val, self.unit, self.rel) == (other.p, other.val, other.unit, other.rel)

    def shift(self, k):
        """Multiply by p^k exactly (no precision loss)."""
        if self.is_exact_zero():
            return self
        if self.unit == 0:
            return PadicNumber.zero_to(self.p, self.val + k)
        return PadicNumber(self.p, self.val + k, self.unit, self.rel)

    def truncate_abs(self, abs_prec):
        if self.unit == 0:
            if self.val is None or self.val >= abs_prec:
                return PadicNumber.zero_to(self.p, abs_prec)
            return self
        rel = abs_prec - self.val
        if rel >= self.rel:
            return self
        return PadicNumber(self.p, self.val, self.unit % self.p ** max(rel, 0), max(rel, 0))

    def __repr__(self):
        if self.is_exact_zero():
            return "0 (exact, p=%d)" % self.p
        if self.unit == 0:
            return "O(%d^%d)" % (self.p, self.val)
        ds = self.digits(min(self.rel, 12))
        s = " + ".join("%d*%d^%d" % (d, self.p, self.val + i)
                       for i, d in enumerate(ds) if d)
        return "%s + O(%d^%d)" % (s or "0", self.p, self.abs_precision())

    def to_json(self):
        if self.unit == 0:
            return {"p": self.p, "zero": True,
                    "prec": None if self.val is None else self.val}
        return {"p": self.p, "val": self.val, "digits": self.digits(),
                "prec": self.abs_precision()}


def padic_agree(x, y, policy):
    """Equality at working precision: val(x - y) >= M - g."""
    d = x - y
    return d.val_lower_bound() >= policy.equality_threshold


def residual_valuation(x):
    """Lower bound for val(x); large when x vanished to working precision."""
    return x.val_lower_bound()


def teichmuller(a, p, abs_prec):
    """The (p-1)-st root of unity congruent to a mod p, to abs_prec digits."""
    a %= p
    if a == 0:
        raise ValueError("no Teichmueller lift of 0")
    t = a
    mod = p ** abs_prec
    for _ in range(abs_prec + 1):
        nt = pow(t, p, mod)
        if nt == t:
            break
        t = nt
    return t


def iwasawa_log(z):
    """Iwasawa-branch logarithm: log p = 0, log of Teichmueller units = 0.

    Works for any nonzero PadicNumber; the valuation is discarded (branch)
    and the unit u is handled through u^(p-1) = 1 + t with val(t) >= 1.
    """
    if z.unit == 0:
        raise ValueError("log of zero")
    p = z.p
    rel = z.rel
    mod = p ** rel
    u = pow(z.unit, p - 1, mod)
    t = (u - 1) % mod
    if t == 0:
        return PadicNumber.zero_to(p, rel)
    # log(1+t) = sum (-1)^(m+1) t^m / m; val(t^m/m) >= m - log_p(m)
    acc = PadicNumber.zero_to(p, rel + 2)
    m = 1
    tp = PadicNumber(p, 0, t, rel)
    power = tp
    while m <= rel + _log_floor(max(m, 1), p) + 1:
        contrib = power / m
        if m % 2 == 0:
            contrib = -contrib
        acc = acc + contrib
        m += 1
        power = power * tp
    res = acc / (p - 1)
    return res.truncate_abs(rel)


def _log_floor(m, p):
    k = 0
    while m >= p:
        m //= p
        k += 1
    return k


def rational_reconstruct(x, num_bound, den_bound):
    """The unique a/b = x mod p^N with |a| <= num_bound, 0 < b <= den_bound.

    Returns None when no such rational exists.  Requires
    2 * num_bound * den_bound < p^N for uniqueness; raises otherwise.
    Negative-valuation inputs are scaled through p^val first.
    """
    if x.is_exact_zero():
        return Fraction(0)
    if x.unit == 0:
        # consistent with 0 if the bound window contains it
        return Fraction(0)
    p = x.p
    scale = 0
    if x.val < 0:
        scale = -x.val
    N = x.abs_precision() + scale
    modulus = p ** N
    r = (x.unit * p ** (x.val + scale)) % modulus
    if 2 * num_bound * den_bound >= modulus:
        raise ValueError("precision too low for the requested bounds")
    # half-extended Euclid on (modulus, r)
    r0, r1 = modulus, r
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    a, b = r1, s1
    if b == 0:
        return None
    if b < 0:
        a, b = -a, -b
    if abs(a) > num_bound or b > den_bound or b % p == 0:
        return None
    g = gcd(abs(a), b) if a else b
    if g > 1:
        a, b = a // g, b // g
    if (a - b * r) % modulus != 0:
        return None
    out = Fraction(a, b)
    if scale:
        out = out / p ** scale
    return out

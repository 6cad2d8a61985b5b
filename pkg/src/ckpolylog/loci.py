"""Chabauty-Kim loci: Coleman functions, disk-by-disk zeros, symmetrization.

A Coleman function here is a polynomial in log, Li_1..Li_n with p-adic
coefficients.  Zero finding composes the residue-disk power series of the
polylogarithms, bounds roots per disk by the Newton polygon of the
truncated series, isolates them by exhaustive digit refinement and
certifies simple roots by Hensel's criterion; anything uncertifiable is
reported loudly as a candidate, never dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import cocycles, galois
from . import symbols as sy
from .padic import PadicNumber, PrecisionPolicy, padic_agree, rational_reconstruct
from .polylog import get_engine, _series_eval, _series_multiply


class ColemanFunction:
    """Polynomial in {log, li1..lin} with PadicNumber coefficients."""

    def __init__(self, p, policy, coeffs, weight=None, label=""):
        self.p = p
        self.policy = policy
        self.coeffs = dict(coeffs)
        self.weight = weight
        self.label = label

    @property
    def engine(self):
        return get_engine(self.p, self.policy)

    def evaluate(self, z):
        """Value at a point of X(Z_p) (z and 1-z units)."""
        eng = self.engine
        vals = {}
        acc = PadicNumber.exact_zero(self.p)
        for mono, c in self.coeffs.items():
            term = c
            for name, k in mono:
                if name not in vals:
                    if name == "log":
                        vals[name] = eng.log(z)
                    else:
                        vals[name] = eng.polylog(int(name[2:]), z)
                term = term * vals[name] ** k
            acc = acc + term
        return acc

    def local_series(self, a):
        """Power series on the disk of a in t, z = a + p t."""
        eng = self.engine
        table = eng.disk_table(a)
        N = eng.local_degree
        zero = PadicNumber.exact_zero(self.p)
        out = [zero] * N
        for mono, c in self.coeffs.items():
            term = [c] + [zero] * (N - 1)
            for name, k in mono:
                for _ in range(k):
                    term = _series_multiply(term, table[name], N, self.p)
            out = [x + y for x, y in zip(out, term)]
        return out

    def to_json(self):
        rows = []
        for mono, c in sorted(self.coeffs.items()):
            rows.append({"monomial": ["%s^%d" % (n, k) if k > 1 else n
                                      for n, k in mono],
                         "value": c.to_json()})
        return {"p": self.p, "label": self.label, "weight": self.weight,
                "terms": rows}


def assemble_coleman(specialized, p, policy=None, label="", weight=None):
    """Evaluate the period coefficients of a specialized ideal element.

    specialized maps Li-monomials to motivic Expressions (the output of
    specialize_coefficients); bad-disk coefficients propagate as errors.
    """
    policy = policy or PrecisionPolicy()
    eng = get_engine(p, policy)
    coeffs = {}
    for mono, expr in specialized.items():
        coeffs[tuple(mono)] = eng.period(expr)
    return ColemanFunction(p, policy, coeffs, weight=weight, label=label)


def weight2_function(p, policy=None):
    """Li_2 - (1/2) log Li_1, the half-weight 2 locus cutter for any Z[1/ell]."""
    policy = policy or PrecisionPolicy()
    half = PadicNumber.from_rational(p, Fraction(-1, 2), policy.workprec())
    one = PadicNumber.from_rational(p, 1, policy.workprec())
    coeffs = {(("li2", 1),): one, (("li1", 1), ("log", 1)): half}
    return ColemanFunction(p, policy, coeffs, weight=2, label="wt2")


def weight4_function(p, S=(3,), policy=None, table=None):
    """The half-weight 4 function for Z = Spec Z[1/ell] with period coefficients."""
    from .elimination import specialize_coefficients, structured_shortcut_generators
    policy = policy or PrecisionPolicy()
    prob, gens = structured_shortcut_generators(set(S))
    assignment = galois.specialization_assignment(S, table=table, policy=policy)
    spec = specialize_coefficients(gens[1], assignment)
    return assemble_coleman(spec, p, policy, label="wt4[S=%s]" % ",".join(map(str, S)),
                            weight=4)


@dataclass
class Zero:
    disk: int
    t: PadicNumber          # local coordinate, z = disk + p t
    z: PadicNumber
    certified: bool
    multiplicity_bound: int
    rational_guess: Fraction | None = None

    def to_json(self, digit_count=None):
        return {
            "disk": self.disk,
            "valuation": self.z.val if not self.z.is_zeroish() else None,
            "digits": self.z.digits(digit_count) if digit_count else self.z.digits(),
            "rationalGuess": None if self.rational_guess is None
            else "%d/%d" % (self.rational_guess.numerator, self.rational_guess.denominator),
            "certified": self.certified,
            "multiplicityBound": self.multiplicity_bound,
        }


@dataclass
class Locus:
    p: int
    policy: PrecisionPolicy
    zeros: list
    functions: list
    newton_bounds: dict = field(default_factory=dict)

    def points(self):
        return [z.z for z in self.zeros]

    def all_certified(self):
        return all(z.certified for z in self.zeros)

    def to_json(self):
        return {
            "p": self.p,
            "functions": list(self.functions),
            "policy": {"M": self.policy.M, "g": self.policy.g},
            "newtonBounds": {str(k): v for k, v in sorted(self.newton_bounds.items())},
            "zeros": [z.to_json(self.policy.M) for z in sorted(
                self.zeros, key=lambda w: (w.disk, w.z.digits()))],
        }


def newton_root_bound(series, threshold):
    """Number of roots in the closed unit disk (with multiplicity) from the
    Newton polygon of the known part of a truncated series."""
    pts = []
    for j, c in enumerate(series):
        if c.unit != 0 and c.valuation() < threshold:
            pts.append((j, c.valuation()))
    if not pts:
        return None  # series content below precision
    lead = pts[0][0]  # roots at t = 0 up to this order
    hull = _lower_hull(pts)
    count = lead
    for (j1, v1), (j2, v2) in zip(hull, hull[1:]):
        if v2 <= v1:
            count += j2 - j1
    return count


def _lower_hull(pts):
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _series_shift(series, r, p, workprec):
    """Coefficients of S(r + p s) as a series in s."""
    n = len(series)
    pfac = PadicNumber.from_rational(p, p, workprec)
    out = []
    for l in range(n):
        acc = PadicNumber.exact_zero(p)
        for j in range(l, n):
            c = series[j]
            if c.is_exact_zero() or c.unit == 0 and c.val_lower_bound() > workprec:
                continue
            acc = acc + c * math.comb(j, l) * r ** (j - l)
        out.append(acc * pfac ** l)
    return out


def _newton_refine(series, deriv, t0, p, workprec, rounds=None):
    t = t0
    if rounds is None:
        rounds = max(6, workprec.bit_length() + 2)
    for _ in range(rounds):
        ft = _series_eval(series, t)
        dt = _series_eval(deriv, t)
        if not ft:
            break
        t = t - ft / dt
    return t


def _strip_content(series):
    """Divide out the p-power content; None when flat to working precision."""
    known = [c.valuation() for c in series if c.unit != 0]
    if not known:
        return None, 0
    mu = min(known)
    return [c.shift(-mu) for c in series], mu


def _roots_in_unit_disk(series, p, policy, depth):
    """Exhaustive digit search for roots t in Z_p; returns (t, certified) pairs.

    Each level strips the p-power content so that the residue test
    branches on the nonzero reduction mod p (at most deg-many residues),
    then certifies simple roots by Hensel and refines by recentering.
    """
    workprec = policy.workprec()
    stripped, _ = _strip_content(series)
    if stripped is None:
        return [(PadicNumber.from_rational(p, r, workprec), False) for r in range(p)]
    window = min(c.abs_precision() for c in stripped)
    if window <= policy.g + 2:
        # not enough honest digits left to separate roots
        return [(PadicNumber.from_rational(p, 0, workprec), False)]
    deriv = [stripped[i + 1] * (i + 1) for i in range(len(stripped) - 1)]
    found = []
    for r in range(p):
        rv = PadicNumber.from_rational(p, r, workprec)
        v = _series_eval(stripped, rv)
        if v.val_lower_bound() < 1:
            continue
        d = _series_eval(deriv, rv)
        if d.unit != 0 and v.val_lower_bound() > 2 * d.valuation():
            t = _newton_refine(stripped, deriv, rv, p, workprec)
            found.append((t, True))
            continue
        if depth <= 0:
            found.append((rv, False))
            continue
        shifted = _series_shift(stripped, r, p, workprec)
        for (s, ok) in _roots_in_unit_disk(shifted, p, policy, depth - 1):
            found.append((rv + p * s, ok))
    return found


def evaluate(F, z):
    """Value of a Coleman function at a point of X(Z_p)."""
    return F.evaluate(z)


def find_zeros(F, policy=None):
    """All zeros of F on X(Z_p), disk by disk, with certificates."""
    policy = policy or F.policy
    p = F.p
    eng = F.engine
    threshold = policy.workprec() - policy.g
    zeros = []
    bounds = {}
    for a in range(2, p):
        series = F.local_series(a)
        bound = newton_root_bound(series, threshold)
        if bound is None:
            raise ArithmeticError(
                "function %s is zero to working precision on disk %d"
                % (F.label or "<anon>", a))
        bounds[a] = bound
        if bound == 0:
            continue
        roots = _roots_in_unit_disk(series, p, policy, depth=policy.M)
        for t, certified in roots:
            z = a + p * t
            guess = None
            try:
                guess = rational_reconstruct(
                    z.truncate_abs(min(z.abs_precision(), policy.workprec())),
                    1000, 1000)
            except ValueError:
                pass
            zeros.append(Zero(a, t, z, certified,
                              1 if certified else bound, guess))
    return Locus(p, policy, zeros, [F.label] if F.label else [], bounds)


def intersect_loci(l1, l2, policy=None):
    """Common points, merged by the p-adic equality rule."""
    if l1.p != l2.p:
        raise ValueError("loci at different primes")
    policy = policy or l1.policy
    zeros = []
    for z1 in l1.zeros:
        for z2 in l2.zeros:
            if padic_agree(z1.z, z2.z, policy):
                zeros.append(Zero(z1.disk, z1.t, z1.z,
                                  z1.certified and z2.certified,
                                  min(z1.multiplicity_bound, z2.multiplicity_bound),
                                  z1.rational_guess or z2.rational_guess))
                break
    merged = {}
    for z in zeros:
        merged.setdefault((z.disk, tuple(z.z.digits(policy.M))), z)
    out = Locus(l1.p, policy, list(merged.values()),
                sorted(set(l1.functions) | set(l2.functions)))
    out.newton_bounds = dict(l1.newton_bounds)
    return out


def locus_for(p, S, n, policy=None, symmetrize=False, table=None):
    """The full pipeline: functions for the weight bound, zeros, intersection."""
    policy = policy or PrecisionPolicy()
    fns = []
    if n >= 2:
        fns.append(weight2_function(p, policy))
    if n >= 4:
        fns.append(weight4_function(p, S=tuple(sorted(S)), policy=policy, table=table))
    if not fns:
        raise ValueError("no Chabauty-Kim functions below weight 2")
    locus = find_zeros(fns[0], policy)
    for f in fns[1:]:
        locus = intersect_loci(locus, find_zeros(f, policy), policy)
    if symmetrize:
        locus = s3_symmetrize(locus, policy)
    return locus


S3_MAP_NAMES = ("z", "1-z", "1/z", "1/(1-z)", "z/(z-1)", "(z-1)/z")


def s3_images(z):
    one = 1
    return (z, one - z, one / z, one / (one - z), z / (z - one), (z - one) / z)


def s3_symmetrize(locus, policy=None):
    """Intersection of the locus with its six Moebius translates.

    A point survives iff its entire orbit stays inside the locus; orbit
    images that leave the good disks are compared against every locus
    point before being discarded (they can never match, since locus
    points are units with unit 1-z).
    """
    policy = policy or locus.policy
    pts = [z.z for z in locus.zeros]
    keep = []
    for zr in locus.zeros:
        ok = True
        for img in s3_images(zr.z):
            if not any(padic_agree(img, q, policy) for q in pts):
                ok = False
                break
        if ok:
            keep.append(zr)
    out = Locus(locus.p, policy, keep, list(locus.functions) + ["s3"])
    out.newton_bounds = dict(locus.newton_bounds)
    return out


# -- the counterexample cocycle ------------------------------------------------


@dataclass
class CounterexampleReport:
    ell: int
    n: int
    p: int
    symbolic: dict
    numeric: dict
    zeta_guard: bool

    def passed(self, policy):
        return (all(self.symbolic.values())
                and all(v >= policy.M - policy.g for v in self.numeric.values()))

    def to_json(self, policy):
        return {
            "ell": self.ell, "n": self.n, "p": self.p,
            "symbolic": self.symbolic,
            "numericValuations": self.numeric,
            "zetaNonzeroGuard": self.zeta_guard,
            "passed": self.passed(policy),
        }


def counterexample_cocycle(ell, n, p, policy=None):
    """Verify that -1 lies in the weight-n polylogarithmic locus over Z[1/ell].

    Builds the field-valued cocycle with w_0 = 0, w_1 = Li_1(-1)/log(ell),
    w_i = Li_{2i-1}(-1)/zeta(2i-1); checks symbolically that its evaluation
    has zero log and even Li components and Li_k(-1) odd components, then
    numerically that the p-adic realization agrees with the image of -1.
    """
    policy = policy or PrecisionPolicy()
    if p == ell or p <= 3:
        raise ValueError("need p > 3 different from ell")
    genset = galois.standard_genset({ell}, n)
    zero = sy.ExprFraction.zero()
    coords = cocycles.CocycleCoordinates(genset, zero=zero)
    tau = galois.tau_id(ell)
    minus_one = Fraction(-1)
    li1 = sy.ExprFraction(sy.li_u(1, minus_one), sy.log_u(ell))
    coords.set(tau, cocycles.LOG, zero)
    coords.set(tau, cocycles.PolylogWord.li(1), li1)
    for i in range(2, n // 2 + 2):
        k = 2 * i - 1
        if k > n:
            break
        coords.set(galois.sigma_id(k), cocycles.PolylogWord.li(k),
                   sy.ExprFraction(sy.li_u(k, minus_one), sy.zeta_u(k)))
    applied = cocycles.cocycle_apply(coords, n)

    symbolic = {}
    symbolic["log(alpha) = 0"] = applied["log"].is_zero()
    for k in range(2, n + 1, 2):
        symbolic["Li%d(alpha) = 0" % k] = applied["li%d" % k].is_zero()
    for k in range(1, n + 1, 2):
        el = applied["li%d" % k]
        target = sy.li_u(k, minus_one)
        dual = sy.log_u(ell) if k == 1 else sy.zeta_u(k)
        word = (tau,) if k == 1 else (galois.sigma_id(k),)
        ok = set(el.terms) == {word}
        if ok:
            val = el.terms[word]
            ok = (val * sy.ExprFraction(dual)).equals_expression(target)
        symbolic["Li%d(alpha) = Li%d(-1)" % (k, k)] = ok

    eng = get_engine(p, policy, max_weight=max(4, n))
    numeric = {"log_p(-1)": eng.log(minus_one).val_lower_bound()}
    for k in range(2, n + 1, 2):
        numeric["Li_%d(-1)" % k] = eng.polylog(k, minus_one).val_lower_bound()
    guard = True
    try:
        for i in range(2, n // 2 + 2):
            k = 2 * i - 1
            if k <= n:
                eng.zeta_nonzero(k)
    except Exception:
        guard = False
    return CounterexampleReport(ell, n, p, symbolic, numeric, guard)

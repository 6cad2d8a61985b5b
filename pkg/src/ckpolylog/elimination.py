"""Chabauty-Kim ideal generators by eliminating cocycle coordinates.

The universal evaluation image expresses log and Li_1..Li_n as polynomials
in the cocycle coordinates with coefficients in the Galois coordinate
ring.  The ideal of relations among the targets is the kernel of that
substitution; we compute it three ways:

  * lexicographic Groebner elimination of the graph ideal with the
    cocycle coordinates ordered first (the certified route),
  * the structured shortcut that solves the Li_3 image for w_2 and
    substitutes into the Li_4 image (cross-check),
  * brute-force graded linear algebra on coefficient vectors (used by
    the test suite to certify completeness degree by degree).

Polynomials are dense-exponent dicts over Fraction with lex order.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from . import cocycles, words


class EliminationGuard(RuntimeError):
    """Degree or step budget exceeded during Buchberger's algorithm."""


class Poly:
    """Multivariate polynomial over Q: {exponent tuple: Fraction}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def const(cls, ring, c):
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def var(cls, ring, name, power=1):
        e = [0] * len(ring)
        e[ring.index(name)] = power
        return cls(ring, {tuple(e): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly(self.ring)
        return Poly(self.ring, {e: c * x for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def leading(self):
        e = max(self.terms)  # lex on exponent tuples
        return e, self.terms[e]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def uses_vars(self, indices):
        return any(any(e[i] for i in indices) for e in self.terms)

    def content_normalize(self):
        """Integer coefficients, content one, positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        out = self.scale(scale)
        if out.leading()[1] < 0:
            out = out.scale(-1)
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join("%s^%d" % (v, k) if k > 1 else v
                            for v, k in zip(self.ring, e) if k)
            bits.append("%s*%s" % (c, mono) if mono else str(c))
        return " + ".join(bits)


def _divides(ea, eb):
    return all(a <= b for a, b in zip(ea, eb))


def _exp_sub(ea, eb):
    return tuple(a - b for a, b in zip(ea, eb))


def _exp_lcm(ea, eb):
    return tuple(max(a, b) for a, b in zip(ea, eb))


def reduce_poly(f, basis, guard=None):
    """Full multivariate division of f by the basis (lex order)."""
    rem = Poly(f.ring)
    work = f
    steps = 0
    while work.terms:
        e, c = work.leading()
        hit = None
        for g in basis:
            ge, gc = g.leading()
            if _divides(ge, e):
                hit = (g, ge, gc)
                break
        if hit is None:
            rem = rem + Poly(f.ring, {e: c})
            work = work - Poly(f.ring, {e: c})
            continue
        g, ge, gc = hit
        factor = Poly(f.ring, {_exp_sub(e, ge): c / gc})
        work = work - factor * g
        steps += 1
        if guard is not None:
            guard.count(steps_inc=1)
    return rem


class _Guard:
    def __init__(self, max_degree=12, max_steps=10 ** 6):
        self.max_degree = max_degree
        self.max_steps = max_steps
        self.steps = 0

    def count(self, steps_inc=0):
        self.steps += steps_inc
        if self.steps > self.max_steps:
            raise EliminationGuard("reduction step budget %d exceeded" % self.max_steps)

    def check_degree(self, poly):
        if poly.total_degree() > self.max_degree:
            raise EliminationGuard(
                "degree %d exceeds guard %d" % (poly.total_degree(), self.max_degree))


def groebner(gens, max_degree=12, max_steps=10 ** 6):
    """Buchberger with the lcm criterion; returns the reduced lex basis."""
    guard = _Guard(max_degree, max_steps)
    basis = [g for g in gens if g.terms]
    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        fi, fj = basis[i], basis[j]
        ei, ci = fi.leading()
        ej, cj = fj.leading()
        l = _exp_lcm(ei, ej)
        if l == tuple(a + b for a, b in zip(ei, ej)):
            continue  # coprime leading monomials
        si = Poly(fi.ring, {_exp_sub(l, ei): Fraction(1) / ci})
        sj = Poly(fj.ring, {_exp_sub(l, ej): Fraction(1) / cj})
        s = si * fi - sj * fj
        s = reduce_poly(s, basis, guard)
        if s.terms:
            guard.check_degree(s)
            basis.append(s)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    # inter-reduce to the unique reduced basis
    reduced = []
    for i, g in enumerate(basis):
        others = [h for j, h in enumerate(basis) if j != i and h.terms]
        r = reduce_poly(g, others, guard)
        if r.terms:
            reduced.append(r.scale(Fraction(1) / r.leading()[1]))
    # drop duplicates, sort for determinism
    uniq = {}
    for g in reduced:
        uniq[tuple(sorted(g.terms.items()))] = g
    return sorted(uniq.values(), key=lambda g: sorted(g.terms.items(), reverse=True))


def ideal_member(f, basis_gens, max_degree=14, max_steps=10 ** 6):
    gb = groebner(basis_gens, max_degree, max_steps)
    return not reduce_poly(f, gb, _Guard(max_degree, max_steps)).terms


# -- the substitution ring ---------------------------------------------------

LI_NAMES = ["log", "li1", "li2", "li3", "li4", "li5", "li6", "li7", "li8"]


def li_weight(name):
    return 1 if name == "log" else int(name[2:])


def f_var_name(lyndon_word):
    return "f[%s]" % ".".join(lyndon_word)


class SubstitutionProblem:
    """The graph ideal of the universal evaluation image, ready to eliminate."""

    def __init__(self, n, S, genset=None):
        from .galois import standard_genset
        self.n = n
        self.S = tuple(sorted(S))
        self.genset = genset or standard_genset(self.S, n)
        image = cocycles.eval_universal(n, self.genset)
        try:
            wnames = cocycles.w_coordinate_names(self.genset, n)
        except ValueError:
            wnames = None
        self.phi_names = []
        self._phi_map = {}
        for tgt, poly in image.images.items():
            for mono in poly:
                for key in mono:
                    if key not in self._phi_map:
                        name = wnames[key] if wnames else cocycles.coordinate_name(*key)
                        self._phi_map[key] = name
        self.phi_names = sorted(set(self._phi_map.values()))
        self.lyndon = self.genset.lyndon_words(n)
        self.f_names = [f_var_name(w) for w in self.lyndon]
        self.li_names = [LI_NAMES[k] for k in range(0, n + 1)]
        # lex order: cocycle coordinates > targets > Galois coordinates
        self.ring = tuple(self.phi_names + list(reversed(self.li_names)) + self.f_names)
        self.image_polys = {
            tgt: self._image_to_poly(poly) for tgt, poly in image.images.items()}

    def _image_to_poly(self, poly):
        out = Poly.zero(self.ring)
        for mono, fel in poly.items():
            phi = Poly.const(self.ring, 1)
            for key in mono:
                phi = phi * Poly.var(self.ring, self._phi_map[key])
            out = out + phi * self.shuffle_to_poly(fel)
        return out

    def shuffle_to_poly(self, fel):
        """A ShuffleElement as a polynomial in the Lyndon coordinate variables."""
        out = Poly.zero(self.ring)
        for mono, c in words.element_as_lyndon_poly(fel).items():
            term = Poly.const(self.ring, c)
            for lw in mono:
                term = term * Poly.var(self.ring, f_var_name(lw))
            out = out + term
        return out

    def graph_ideal(self):
        gens = []
        for tgt in self.li_names:
            gens.append(Poly.var(self.ring, tgt) - self.image_polys[tgt])
        return gens

    def substitute(self, poly):
        """Replace each target variable by its image (verify_vanishing core)."""
        li_idx = {name: self.ring.index(name) for name in self.li_names}
        out = Poly.zero(self.ring)
        for e, c in poly.terms.items():
            term = Poly.const(self.ring, c)
            for name, i in li_idx.items():
                if e[i]:
                    term = term * self.image_polys[name] ** e[i]
            rest = list(e)
            for i in li_idx.values():
                rest[i] = 0
            out = out + term * Poly(self.ring, {tuple(rest): Fraction(1)})
        return out

    def weight(self, poly):
        """Total half-weight when homogeneous, else None."""
        wts = set()
        fw = {f_var_name(w): self.genset.word_weight(w) for w in self.lyndon}
        for e in poly.terms:
            w = 0
            for name, k in zip(self.ring, e):
                if not k:
                    continue
                if name in fw:
                    w += k * fw[name]
                elif name in self.li_names:
                    w += k * li_weight(name)
            wts.add(w)
        if len(wts) == 1:
            return wts.pop()
        return None


class IdealElement:
    """Polynomial in log, Li_1..Li_n with Galois-coordinate coefficients."""

    def __init__(self, problem, poly):
        self.problem = problem
        self.poly = poly
        self.weight = problem.weight(poly)

    def normalized(self):
        return IdealElement(self.problem, self.poly.content_normalize())

    def __eq__(self, other):
        return isinstance(other, IdealElement) and self.poly == other.poly

    def __repr__(self):
        return repr(self.poly)

    def li_coefficients(self):
        """Split into {Li-monomial (name, power) tuple: coefficient Poly in f}."""
        ring = self.problem.ring
        li_idx = [ring.index(n) for n in self.problem.li_names]
        out = {}
        for e, c in self.poly.terms.items():
            key = tuple((self.problem.li_names[j], e[i])
                        for j, i in enumerate(li_idx) if e[i])
            rest = list(e)
            for i in li_idx:
                rest[i] = 0
            cur = out.setdefault(key, Poly.zero(ring))
            out[key] = cur + Poly(ring, {tuple(rest): c})
        return out

    def canonical_form(self):
        """Ring-independent representation for cross-problem comparisons."""
        out = {}
        for key, coeff in self.li_coefficients().items():
            fterms = []
            for e, c in coeff.terms.items():
                mono = tuple((v, k) for v, k in zip(self.problem.ring, e) if k)
                fterms.append((mono, c))
            out[key] = tuple(sorted(fterms))
        return out

    def to_json(self):
        rows = []
        for key, coeff in sorted(self.li_coefficients().items()):
            mono = []
            for name, k in key:
                label = "log" if name == "log" else "Li%s" % name[2:]
                mono.extend([label] * k)
            rows.append({"liMonomial": mono, "coeff": repr(coeff)})
        return {"weight": self.weight, "terms": rows}


def ck_ideal_generators(n, S, max_degree=12, max_steps=10 ** 6):
    """Minimal graded generators of the elimination kernel, normalized.

    Certified for n <= 4 and |S| = 1 by the cross-checks in the test
    suite; larger inputs run the same machinery best-effort.
    """
    prob = SubstitutionProblem(n, S)
    gb = groebner(prob.graph_ideal(), max_degree, max_steps)
    phi_idx = [prob.ring.index(v) for v in prob.phi_names]
    eliminated = [g for g in gb if not g.uses_vars(phi_idx)]
    eliminated.sort(key=lambda g: (prob.weight(g) or 10 ** 9, sorted(g.terms)))
    kept = []
    for g in eliminated:
        if kept and ideal_member(g, kept, max_degree, max_steps):
            continue
        kept.append(g)
    out = [IdealElement(prob, g).normalized() for g in kept]
    out.sort(key=lambda el: (el.weight or 10 ** 9, sorted(el.poly.terms.items())))
    for el in out:
        if not verify_vanishing(el, n, S, problem=prob):
            raise AssertionError("elimination produced a non-vanishing element")
    return out


def verify_vanishing(element, n=None, S=None, problem=None):
    """Substitute the evaluation image and expand; True iff identically zero."""
    prob = problem or element.problem
    return prob.substitute(element.poly).is_zero()


def structured_shortcut_generators(S):
    """The half-weight 2 and 4 elements built the way the displayed
    computation does it: eliminate w_2 between the Li_3 and Li_4 images,
    then clear the remaining coordinates by hand.  |S| = 1 only."""
    if len(S) != 1:
        raise ValueError("shortcut requires |S| = 1")
    prob = SubstitutionProblem(4, S)
    ring = prob.ring
    v = lambda name: Poly.var(ring, name)
    tau = next(g.id for g in prob.genset.generators if g.weight == 1)
    sig = next(g.id for g in prob.genset.generators if g.weight == 3)
    f_t = v(f_var_name((tau,)))
    f_s = v(f_var_name((sig,)))
    f_st = v(f_var_name((sig, tau)))
    g2 = v("li2") - Fraction(1, 2) * v("log") * v("li1")
    g4 = (f_s * f_t * v("li4") - f_st * v("log") * v("li3")
          - Fraction(1, 24) * v("log") ** 3 * v("li1") * (f_s * f_t - 4 * f_st))
    return prob, [IdealElement(prob, g2).normalized(), IdealElement(prob, g4).normalized()]


def graded_kernel_dimension(prob, weight, max_li_degree=6):
    """Brute-force kernel of the substitution map in one total weight.

    Returns (dimension, basis polys).  Candidates are all products of an
    Li-monomial and an f-monomial of complementary weight.
    """
    ring = prob.ring
    li_monos = _li_monomials(prob, weight, max_li_degree)
    cands = []
    for lm, lw in li_monos:
        for fm in _f_monomials(prob, weight - lw):
            e = [0] * len(ring)
            for name, k in lm:
                e[ring.index(name)] += k
            for name, k in fm:
                e[ring.index(name)] += k
            cands.append(tuple(e))
    images = [prob.substitute(Poly(ring, {e: Fraction(1)})) for e in cands]
    keys = sorted({k for im in images for k in im.terms})
    kidx = {k: i for i, k in enumerate(keys)}
    rows = len(keys)
    mat = [[Fraction(0)] * len(cands) for _ in range(rows)]
    for j, im in enumerate(images):
        for k, c in im.terms.items():
            mat[kidx[k]][j] = c
    null = _nullspace(mat, len(cands))
    basis = [Poly(ring, {cands[j]: vec[j] for j in range(len(cands)) if vec[j]})
             for vec in null]
    return len(null), basis


def _li_monomials(prob, max_weight, max_degree):
    """Nonempty Li-monomials of weight <= max_weight, with their weights."""
    names = prob.li_names
    wts = [li_weight(n) for n in names]
    results = []

    def rec(i, budget, deg, acc):
        if i == len(names):
            if acc:
                results.append((tuple(acc), max_weight - budget))
            return
        rec(i + 1, budget, deg, acc)
        k = 1
        while deg + k <= max_degree and budget - k * wts[i] >= 0:
            rec(i + 1, budget - k * wts[i], deg + k, acc + [(names[i], k)])
            k += 1

    rec(0, max_weight, 0, [])
    return results


def _f_monomials(prob, weight):
    if weight < 0:
        return []
    lw = prob.lyndon
    wts = [prob.genset.word_weight(w) for w in lw]
    results = []

    def rec(i, budget, acc):
        if budget == 0:
            results.append(tuple(acc))
            return
        if i == len(lw):
            return
        rec(i + 1, budget, acc)
        k = 1
        while budget - k * wts[i] >= 0:
            rec(i + 1, budget - k * wts[i], acc + [(f_var_name(lw[i]), k)])
            k += 1

    rec(0, weight, [])
    return results


def _nullspace(mat, ncols):
    rows = len(mat)
    aug = [row[:] for row in mat]
    pivots = {}
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, rows):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for c, row in pivots.items():
            vec[c] = -aug[row][fc]
        basis.append(vec)
    return basis


def specialize_coefficients(element, assignment):
    """Replace the Galois coordinates of an IdealElement by period expressions.

    assignment maps f-variable names (or Lyndon-word tuples) to motivic
    Expressions; raises naming any missing coordinate.  Returns
    {Li-monomial: Expression}.
    """
    from .symbols import Expression
    named = {}
    for k, v in assignment.items():
        named[f_var_name(k) if isinstance(k, tuple) else k] = v
    out = {}
    for key, coeff in element.li_coefficients().items():
        acc = Expression.zero()
        ring = element.problem.ring
        for e, c in coeff.terms.items():
            term = Expression.const(c)
            for name, k in zip(ring, e):
                if not k:
                    continue
                if name not in named:
                    raise KeyError("no period assignment for coordinate %s" % name)
                term = term * named[name] ** k
            acc = acc + term
        out[key] = acc
    return out

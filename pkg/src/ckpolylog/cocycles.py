"""Coordinates on the space of equivariant cocycles.

Matrix-entry coordinates Phi^rho_lambda make the cocycle space an affine
space: against the polylogarithmic word e1 e0^{n-1}, only source words of
the shape (generator)(tau_1 ... tau_r) with weight-one tail letters pair
nontrivially, and the entry is the product of the single-letter entries.
All words here use the lexical composition convention: deconcatenation
splits read left to right, and f_{sigma tau} means sigma followed by tau.

Coordinate values may live in any commutative coefficient object with
+, *, and truthiness (exact rationals, p-adics, expression fractions,
polynomials), so the same code serves the geometric step and the
field-valued counterexample cocycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .words import ShuffleElement


@dataclass(frozen=True, order=True)
class PolylogWord:
    """Either e0^i (kind "e0") or the word e1 e0^{k-1} (kind "li")."""

    kind: str
    k: int

    @classmethod
    def e0_power(cls, i):
        if i < 1:
            raise ValueError("e0 power must be >= 1")
        return cls("e0", i)

    @classmethod
    def li(cls, k):
        if k < 1:
            raise ValueError("li word index must be >= 1")
        return cls("li", k)

    @property
    def weight(self):
        return self.k

    def __repr__(self):
        if self.kind == "e0":
            return "e0^%d" % self.k
        return "e1e0^%d" % (self.k - 1)


LOG = PolylogWord.e0_power(1)


def coordinate_name(gen_id, lam):
    if lam.kind == "e0" and lam.k == 1:
        return "Phi[%s;e0]" % gen_id
    return "Phi[%s;li%d]" % (gen_id, lam.k)


class CocycleCoordinates:
    """Assignment of values to the coordinates Phi^rho_lambda.

    Only pairs with wt(rho) = wt(lambda) exist.  For a weight-one
    generator tau the coordinates are Phi^tau_{e0} and Phi^tau_{e1};
    a generator of odd weight 2i-1 >= 3 carries the single coordinate
    Phi^sigma_{e1 e0^{2i-2}}.
    """

    def __init__(self, genset, values=None, zero=Fraction(0)):
        self.genset = genset
        self.zero = zero
        self.values = {}
        if values:
            for (gen_id, lam), v in values.items():
                self.set(gen_id, lam, v)

    def set(self, gen_id, lam, value):
        wt = self.genset.weight_of(gen_id)
        if lam.weight != wt:
            raise ValueError("coordinate (%s, %r) mixes weights %d and %d"
                             % (gen_id, lam, wt, lam.weight))
        if not (lam == LOG or (lam.kind == "li" and lam.k == wt)):
            raise ValueError("no coordinate at (%s, %r)" % (gen_id, lam))
        self.values[(gen_id, lam)] = value

    def get(self, gen_id, lam):
        try:
            return self.values[(gen_id, lam)]
        except KeyError:
            raise KeyError("missing cocycle coordinate (%s, %r)" % (gen_id, lam))

    # Named views for |S| = 1 (and w_i for any S).
    def w0(self, tau_id):
        return self.get(tau_id, LOG)

    def w1(self, tau_id):
        return self.get(tau_id, PolylogWord.li(1))

    def wi(self, i, sigma_id=None):
        k = 2 * i - 1
        if sigma_id is None:
            sigma_id = "sigma_%d" % k
        return self.get(sigma_id, PolylogWord.li(k))


def brown_entry(word, lam, c):
    """Matrix entry phi^word_lambda(c) via the structure theorem.

    Nonzero cases: word = g tau_1...tau_r against e1 e0^{n-1} with all tail
    letters of weight one, and pure weight-one words against e0^i (the
    bookkeeping dual of log-powers).  Everything else vanishes.
    """
    gs = c.genset
    wt = gs.word_weight(word)
    if wt != lam.weight:
        raise ValueError("word/lambda weight mismatch: %d vs %d" % (wt, lam.weight))
    if lam.kind == "e0":
        val = None
        for g in word:
            if gs.weight_of(g) != 1:
                return c.zero
            x = c.get(g, LOG)
            val = x if val is None else val * x
        return val if val is not None else c.zero
    # lam = e1 e0^{k-1}
    if not word:
        return c.zero
    head, tail = word[0], word[1:]
    if any(gs.weight_of(g) != 1 for g in tail):
        return c.zero
    s = gs.weight_of(head)
    val = c.get(head, PolylogWord.li(s))
    for g in tail:
        val = val * c.get(g, LOG)
    return val


class EvaluationImage:
    """Images of log and Li_1..Li_n as polynomials in Phi with f-word coefficients.

    images: target name -> {Phi-monomial (sorted tuple of coordinate keys)
    -> ShuffleElement}.
    """

    def __init__(self, genset, n, images):
        self.genset = genset
        self.n = n
        self.images = images

    def targets(self):
        return ["log"] + ["li%d" % k for k in range(1, self.n + 1)]

    def substitute(self, coords):
        """Plug a CocycleCoordinates into each image; returns target -> ShuffleElement."""
        out = {}
        for tgt, poly in self.images.items():
            acc = ShuffleElement.zero(self.genset)
            for mono, fel in poly.items():
                val = None
                for (gen_id, lam) in mono:
                    x = coords.get(gen_id, lam)
                    val = x if val is None else val * x
                if val is None:
                    acc = acc + fel
                elif val:
                    acc = acc + ShuffleElement(self.genset,
                                               {w: cf * val for w, cf in fel.terms.items()})
            out[tgt] = acc
        return out

    def to_json(self):
        out = {}
        for tgt in self.targets():
            rows = []
            for mono, fel in sorted(self.images[tgt].items()):
                rows.append({
                    "phi": [coordinate_name(g, lam) for (g, lam) in mono],
                    "coeff": fel.to_json(),
                })
            out[tgt] = rows
        return out


def theta_sharp(n, genset):
    """The displayed algebra map: log and Li_k images in Phi-coordinates.

    log     |-> sum_tau f_tau Phi^tau_{e0}
    Li_k    |-> sum_{r+s=k} f_{g tau_1..tau_r} Phi^{tau_1}_{e0} ... Phi^{g}_{e1e0^{s-1}}
    """
    if n < 1:
        raise ValueError("weight bound must be >= 1")
    taus = [g.id for g in genset.generators if g.weight == 1]
    images = {}
    log_img = {}
    for t in taus:
        log_img[((t, LOG),)] = ShuffleElement.word(genset, (t,))
    images["log"] = log_img
    for k in range(1, n + 1):
        poly = {}
        for s in range(1, k + 1):
            r = k - s
            heads = [g.id for g in genset.generators if g.weight == s]
            for head in heads:
                for tail in itertools.product(taus, repeat=r):
                    word = (head,) + tail
                    mono = tuple(sorted(
                        [(head, PolylogWord.li(s))] + [(t, LOG) for t in tail]))
                    fel = ShuffleElement.word(genset, word)
                    if mono in poly:
                        poly[mono] = poly[mono] + fel
                    else:
                        poly[mono] = fel
        images["li%d" % k] = poly
    return EvaluationImage(genset, n, images)


def eval_universal(n, genset):
    """The displayed images in the coordinates the elimination step consumes.

    For |S| = 1 the coordinates specialize to w_0 = Phi^tau_{e0},
    w_1 = Phi^tau_{e1}, w_i = Phi^{sigma_{2i-1}}_{e1 e0^{2i-2}} and the
    Li_k image collapses to w_1 w_0^{k-1} f_tau^k / k! plus the
    sigma-headed corrections.
    """
    return theta_sharp(n, genset)


def w_coordinate_names(genset, n):
    """Map Phi-coordinate keys to the short w-names used when |S| = 1."""
    taus = [g.id for g in genset.generators if g.weight == 1]
    if len(taus) != 1:
        raise ValueError("w-naming needs exactly one weight-one generator")
    tau = taus[0]
    names = {(tau, LOG): "w0", (tau, PolylogWord.li(1)): "w1"}
    for g in genset.generators:
        if g.weight >= 3 and g.weight <= n and g.weight % 2 == 1:
            names[(g.id, PolylogWord.li(g.weight))] = "w%d" % ((g.weight + 1) // 2)
    return names


def kappa_coordinates(z, ell):
    """Kummer map in coordinates: (ord_ell z, -ord_ell(1-z))."""
    z = Fraction(z)
    if z in (0, 1):
        raise ValueError("kappa undefined at z in {0, 1}")
    return (_ord(z, ell), -_ord(1 - z, ell))


def _ord(q, ell):
    q = Fraction(q)
    v = 0
    n = q.numerator
    while n % ell == 0:
        n //= ell
        v += 1
    d = q.denominator
    while d % ell == 0:
        d //= ell
        v -= 1
    return v


def cocycle_apply(c, n):
    """log(c) and Li_k(c) for k <= n as ShuffleElements with coefficients from c.

    Implements Li_lambda(c) = sum_w phi^w_lambda(c) f_w over words of the
    matching weight, using the structure theorem to skip vanishing entries.
    """
    gs = c.genset
    out = {}
    taus = [g.id for g in gs.generators if g.weight == 1]
    log_terms = {}
    for t in taus:
        v = c.get(t, LOG)
        if v:
            log_terms[(t,)] = v
    out["log"] = ShuffleElement(gs, log_terms)
    for k in range(1, n + 1):
        terms = {}
        for s in range(1, k + 1):
            r = k - s
            heads = [g.id for g in gs.generators if g.weight == s]
            for head in heads:
                hv = c.get(head, PolylogWord.li(s))
                if not hv:
                    continue
                for tail in itertools.product(taus, repeat=r):
                    val = hv
                    dead = False
                    for t in tail:
                        tv = c.get(t, LOG)
                        if not tv:
                            dead = True
                            break
                        val = val * tv
                    if dead or not val:
                        continue
                    # each word decomposes uniquely as head + weight-one tail
                    terms[(head,) + tail] = val
        out["li%d" % k] = ShuffleElement(gs, terms)
    return out


def extract_coordinates(applied, genset):
    """Invert cocycle_apply on its image: read coordinates off the f-word data.

    Recovers Phi^tau_{e0} from the log component and Phi^g_{e1e0^{s-1}}
    from the pure single-generator words of each Li_k component; the
    round trip is the data-level expression of the isomorphism Psi.
    """
    coords = {}
    log_el = applied["log"]
    for g in genset.generators:
        if g.weight == 1:
            coords[(g.id, LOG)] = log_el.coefficient((g.id,))
    maxk = max(int(t[2:]) for t in applied if t.startswith("li"))
    for k in range(1, maxk + 1):
        el = applied["li%d" % k]
        for g in genset.generators:
            if g.weight == k:
                coords[(g.id, PolylogWord.li(k))] = el.coefficient((g.id,))
    return coords

"""Free graded shuffle Hopf algebras over exact rationals.

Words in a graded alphabet, the shuffle product, the deconcatenation
coproduct and its reduced/bidegree variants, plus the Lyndon-word
polynomial decomposition used to present the algebra as a free
commutative polynomial ring.

All coefficients are exact (fractions.Fraction or any ring element
supporting +, -, *, and truthiness for zero-testing); no floats.
Grading is by positive "half-weights"; the empty word has weight 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple


class Generator(NamedTuple):
    id: str
    weight: int  # half-weight, >= 1


class GeneratorSet:
    """Ordered graded alphabet with unique ids.

    The serialization order on words is degree-then-lexicographic on
    generator ids.  Lyndon comparisons use a separate letter order that
    puts heavier letters first so that sigma-leading words are Lyndon.
    """

    def __init__(self, generators):
        gens = tuple(Generator(g[0], int(g[1])) if not isinstance(g, Generator) else g
                     for g in generators)
        ids = [g.id for g in gens]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate generator ids: %r" % (ids,))
        for g in gens:
            if g.weight < 1:
                raise ValueError("generator %s has weight %d < 1" % (g.id, g.weight))
        self.generators = tuple(sorted(gens, key=lambda g: (g.weight, g.id)))
        self._weight = {g.id: g.weight for g in self.generators}
        # Lyndon letter order: heavier first, then id.
        self._lyndon_rank = {g.id: i for i, g in enumerate(
            sorted(self.generators, key=lambda g: (-g.weight, g.id)))}

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "GeneratorSet(%s)" % ", ".join("%s:%d" % (g.id, g.weight) for g in self.generators)

    def weight_of(self, gen_id):
        return self._weight[gen_id]

    def word_weight(self, word):
        return sum(self._weight[g] for g in word)

    def words_of_weight(self, n):
        """All words of half-weight n, in serialization order."""
        return _words_of_weight(self.generators, n)

    def word_sort_key(self, word):
        return (self.word_weight(word), word)

    # -- Lyndon machinery -------------------------------------------------

    def lyndon_key(self, word):
        return tuple(self._lyndon_rank[g] for g in word)

    def is_lyndon(self, word):
        if len(word) == 0:
            return False
        k = self.lyndon_key(word)
        return all(k < k[i:] + k[:i] for i in range(1, len(word)))

    def lyndon_words(self, max_weight):
        out = []
        for n in range(1, max_weight + 1):
            out.extend(w for w in self.words_of_weight(n) if self.is_lyndon(w))
        return out

    def lyndon_monomials(self, n):
        """Multisets of Lyndon words of total weight n (sorted tuples)."""
        lw = [w for w in self.lyndon_words(n)]
        results = []

        def rec(start, remaining, acc):
            if remaining == 0:
                results.append(tuple(sorted(acc)))
                return
            for i in range(start, len(lw)):
                w = lw[i]
                wt = self.word_weight(w)
                if wt <= remaining:
                    acc.append(w)
                    rec(i, remaining - wt, acc)
                    acc.pop()

        rec(0, n, [])
        results.sort()
        return results


@lru_cache(maxsize=None)
def _words_of_weight(generators, n):
    if n == 0:
        return ((),)
    out = []
    for g in generators:
        if g.weight <= n:
            out.extend((g.id,) + w for w in _words_of_weight(generators, n - g.weight))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _shuffle_words(u, v):
    """Multiset of shuffles of two words, as a tuple of (word, multiplicity)."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    counts = {}
    for w, m in _shuffle_words(u[1:], v):
        key = (u[0],) + w
        counts[key] = counts.get(key, 0) + m
    for w, m in _shuffle_words(u, v[1:]):
        key = (v[0],) + w
        counts[key] = counts.get(key, 0) + m
    return tuple(sorted(counts.items()))


class ShuffleElement:
    """Finite linear combination of basis words f_w with exact coefficients."""

    __slots__ = ("genset", "terms")

    def __init__(self, genset, terms=None):
        self.genset = genset
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def word(cls, genset, word, coeff=Fraction(1)):
        return cls(genset, {tuple(word): coeff})

    @classmethod
    def zero(cls, genset):
        return cls(genset, {})

    @classmethod
    def one(cls, genset):
        return cls(genset, {(): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, ShuffleElement)
                and self.genset == other.genset and self.terms == other.terms)

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return ShuffleElement(self.genset, terms)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, c):
        if not c:
            return ShuffleElement.zero(self.genset)
        return ShuffleElement(self.genset, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        """Shuffle product."""
        return shuffle_product(self, other)

    def shuffle_pow(self, n):
        out = ShuffleElement.one(self.genset)
        for _ in range(n):
            out = shuffle_product(out, self)
        return out

    def coefficient(self, word):
        return self.terms.get(tuple(word), Fraction(0))

    def graded_part(self, n):
        return ShuffleElement(self.genset, {
            w: c for w, c in self.terms.items() if self.genset.word_weight(w) == n})

    def weights(self):
        return sorted({self.genset.word_weight(w) for w in self.terms})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: self.genset.word_sort_key(wc[0]))

    def _check(self, other):
        if self.genset != other.genset:
            raise ValueError("mismatched generator sets")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.sorted_terms():
            name = "f[%s]" % ".".join(w) if w else "1"
            bits.append("%s*%s" % (c, name))
        return " + ".join(bits)

    def to_json(self):
        return [{"word": list(w), "coeff": _frac_str(c)} for w, c in self.sorted_terms()]


def _frac_str(c):
    f = Fraction(c)
    return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else "%d" % f.numerator


class TensorElement:
    """Element of the tensor square, keyed by pairs of words."""

    __slots__ = ("genset", "terms")

    def __init__(self, genset, terms=None):
        self.genset = genset
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[(tuple(k[0]), tuple(k[1]))] = c

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorElement)
                and self.genset == other.genset and self.terms == other.terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return TensorElement(self.genset, terms)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, c):
        if not c:
            return TensorElement(self.genset, {})
        return TensorElement(self.genset, {k: c * x for k, x in self.terms.items()})

    def bidegree_part(self, i, j):
        gs = self.genset
        return TensorElement(gs, {
            (l, r): c for (l, r), c in self.terms.items()
            if gs.word_weight(l) == i and gs.word_weight(r) == j})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (l, r), c in sorted(self.terms.items()):
            bits.append("%s*f[%s](x)f[%s]" % (c, ".".join(l) or "1", ".".join(r) or "1"))
        return " + ".join(bits)


def shuffle_product(a, b):
    """Bilinear extension of the shuffle of basis words.

    Commutative; half-weights add term by term.  Raises on mismatched
    generator sets.
    """
    a._check(b)
    terms = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            c = cu * cv
            for w, m in _shuffle_words(u, v):
                s = terms.get(w, 0) + c * m
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)
    return ShuffleElement(a.genset, terms)


def deconcat_coproduct(a):
    """Deconcatenation: every way of cutting each word in two."""
    terms = {}
    for w, c in a.terms.items():
        for i in range(len(w) + 1):
            k = (w[:i], w[i:])
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
    return TensorElement(a.genset, terms)


def reduced_coproduct(a):
    """Delta'(x) = Delta(x) - x (x) 1 - 1 (x) x."""
    t = deconcat_coproduct(a)
    for w, c in a.terms.items():
        for k in ((w, ()), ((), w)):
            s = t.terms.get(k, 0) - c
            if s:
                t.terms[k] = s
            else:
                t.terms.pop(k, None)
    return t


def project_bidegree(t, i, j):
    """Keep the terms with left weight i and right weight j."""
    if i < 0 or j < 0:
        raise ValueError("bidegrees must be nonnegative")
    return t.bidegree_part(i, j)


def graded_dimension(genset, n):
    """Number of words of half-weight n."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    return len(genset.words_of_weight(n))


def cobar_square(a):
    """(Delta' (x) id - id (x) Delta') composed with Delta'; zero by coassociativity."""
    t = reduced_coproduct(a)
    out = {}
    for (l, r), c in t.terms.items():
        tl = reduced_coproduct(ShuffleElement.word(a.genset, l))
        for (x, y), d in tl.terms.items():
            k = (x, y, r)
            s = out.get(k, 0) + c * d
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        tr = reduced_coproduct(ShuffleElement.word(a.genset, r))
        for (x, y), d in tr.terms.items():
            k = (l, x, y)
            s = out.get(k, 0) - c * d
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


# -- Lyndon polynomial decomposition --------------------------------------
#
# The shuffle algebra is a free commutative polynomial ring on the duals of
# Lyndon words (Radford).  decompose_word expresses any f_w as an exact
# polynomial in those generators; with heavier letters ordered first, the
# words sigma tau^r used by the cocycle evaluation images are themselves
# Lyndon, so e.g. f_{sigma tau} is a polynomial coordinate.

@lru_cache(maxsize=None)
def _lyndon_decomposition_table(genset, n):
    words = list(genset.words_of_weight(n))
    monos = genset.lyndon_monomials(n)
    if len(words) != len(monos):
        raise AssertionError("Lyndon monomial count mismatch at weight %d" % n)
    index = {w: i for i, w in enumerate(words)}
    # Column j = expansion of the shuffle product of mono j in the word basis.
    cols = []
    for mono in monos:
        el = ShuffleElement.one(genset)
        for lw in mono:
            el = shuffle_product(el, ShuffleElement.word(genset, lw))
        col = [Fraction(0)] * len(words)
        for w, c in el.terms.items():
            col[index[w]] = c
        cols.append(col)
    # Solve M x = e_w for each word w: invert M once.
    m = len(words)
    aug = [[cols[j][i] for j in range(m)] + [Fraction(1) if k == i else Fraction(0) for k in range(m)]
           for i in range(m)]
    _row_reduce(aug, m)
    inv = [row[m:] for row in aug]
    table = {}
    for i, w in enumerate(words):
        poly = {}
        for j in range(m):
            if inv[j][i]:
                poly[monos[j]] = inv[j][i]
        table[w] = poly
    return table


def _row_reduce(aug, ncols):
    rows = len(aug)
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
        r += 1
        if r == rows:
            break
    return r


def word_as_lyndon_poly(genset, word):
    """f_word as {multiset of Lyndon words: coefficient}."""
    word = tuple(word)
    if not word:
        return {(): Fraction(1)}
    n = genset.word_weight(word)
    return dict(_lyndon_decomposition_table(genset, n)[word])


def element_as_lyndon_poly(el):
    out = {}
    for w, c in el.terms.items():
        for mono, d in word_as_lyndon_poly(el.genset, w).items():
            s = out.get(mono, 0) + c * d
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def solve_delta_prime(genset, n, target, fix_primitives_to_zero=True):
    """Find x of pure weight n with Delta'(x) = target.

    Returns (x, primitive_dims) where primitive directions (single-letter
    words of weight n) are set to zero; raises ValueError when the system
    is inconsistent.  Delta' restricted to weight n is injective modulo
    primitives, so the non-primitive part of x is unique.
    """
    words = list(genset.words_of_weight(n))
    prim = [w for w in words if len(w) == 1]
    cols = []
    keys = set(target.terms)
    images = []
    for w in words:
        img = reduced_coproduct(ShuffleElement.word(genset, w))
        images.append(img)
        keys.update(img.terms)
    keys = sorted(keys)
    kidx = {k: i for i, k in enumerate(keys)}
    nrows = len(keys)
    aug = [[Fraction(0)] * (len(words) + 1) for _ in range(nrows)]
    for j, img in enumerate(images):
        for k, c in img.terms.items():
            aug[kidx[k]][j] = c
    for k, c in target.terms.items():
        aug[kidx[k]][len(words)] = c
    # Gaussian elimination with free variables (the primitives) pinned to 0.
    ncols = len(words)
    pivots = {}
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots[c] = r
        r += 1
    for i in range(r, nrows):
        if aug[i][ncols]:
            raise ValueError("inconsistent Delta' system at weight %d" % n)
    sol = {}
    for c, row in pivots.items():
        val = aug[row][ncols]
        if val:
            sol[words[c]] = val
    for w in prim:
        sol.pop(w, None)  # free directions stay 0
    x = ShuffleElement(genset, sol)
    if reduced_coproduct(x) != target:
        raise ValueError("Delta' solve failed consistency re-check at weight %d" % n)
    return x, len(prim)

"""Symbolic coordinates on the Galois side: period tables in low weight.

Writes motivic polylogarithm symbols as exact combinations of the f-word
basis attached to the generators tau_ell (weight one, dual to log(ell))
and sigma_{2n+1} (dual to zeta(2n+1)).  Reduced coproducts reduce weight-n
symbols to lower weight; the kernel of the reduced coproduct is spanned by
zeta(n) in odd weight and vanishes in even weight, so each expansion
leaves at most one rational coefficient undetermined.  That coefficient is
recognized numerically through the p-adic period map at two primes and
cached with provenance, the same way the half-weight-3 tables here were
first produced.
"""

from __future__ import annotations

from fractions import Fraction

from . import symbols as sy
from . import words as wd
from .words import ShuffleElement, TensorElement


def standard_genset(S, max_weight):
    """tau_ell for ell in S (weight 1) and sigma_3, sigma_5, ... up to the bound."""
    gens = [("tau_%d" % ell, 1) for ell in sorted(S)]
    k = 3
    while k <= max_weight:
        gens.append(("sigma_%d" % k, k))
        k += 2
    return wd.GeneratorSet(gens)


def tau_id(ell):
    return "tau_%d" % ell


def sigma_id(k):
    return "sigma_%d" % k


def kummer_degree_one(z, S, genset=None):
    """log(z) in the f-basis: sum over ell in S of ord_ell(z) f_{tau_ell}.

    Torsion dies (log(-1) = 0); a prime outside S in the support of z is
    an error naming the offender.
    """
    z = Fraction(z)
    if z == 0:
        raise ValueError("log of zero")
    genset = genset or standard_genset(S, 1)
    el = ShuffleElement.zero(genset)
    rest = abs(z)
    for ell in sorted(S):
        v = 0
        num, den = rest.numerator, rest.denominator
        while num % ell == 0:
            num //= ell
            v += 1
        while den % ell == 0:
            den //= ell
            v -= 1
        rest = Fraction(num, den)
        if v:
            el = el + ShuffleElement.word(genset, (tau_id(ell),), Fraction(v))
    if rest != 1:
        bad = sy._factor(rest.numerator * rest.denominator)
        raise ValueError("%s is not an S-unit for S=%s: prime %d interferes"
                         % (z, sorted(S), min(bad)))
    return el


def goncharov_reduced_coproduct(sym):
    """Reduced coproduct of a symbol or expression, by the polylog formula."""
    return sy.goncharov_reduced_coproduct(sym)


def _is_s_unit(q, S):
    q = Fraction(q)
    n = abs(q.numerator) * q.denominator
    for ell in S:
        while n % ell == 0:
            n //= ell
    return n == 1


class TableEntry:
    __slots__ = ("word_form", "prim", "provenance")

    def __init__(self, word_form, prim, provenance):
        self.word_form = word_form
        self.prim = prim
        self.provenance = provenance


class UnresolvedPrimitive(RuntimeError):
    pass


class PeriodTable:
    """Expansion table for one open integer scheme Spec Z[1/S].

    Entries map symbols to their f-basis forms; odd-weight entries may
    carry an unresolved zeta-coefficient until supplied or resolved
    numerically through `resolver(symbol, decomposable_expression)`.
    """

    def __init__(self, S, max_weight=4, resolver=None):
        self.S = tuple(sorted(S))
        self.max_weight = max_weight
        self.genset = standard_genset(self.S, max_weight)
        self.resolver = resolver
        self.entries = {}

    # -- bookkeeping ---------------------------------------------------------

    def _sigma_word(self, n):
        return (sigma_id(n),)

    def has_sigma(self, n):
        return n % 2 == 1 and n >= 3 and n <= self.max_weight

    def entry(self, symbol):
        self.ensure(symbol)
        return self.entries[symbol]

    def full_form(self, symbol):
        """Complete f-basis form; raises while the zeta-coefficient is unknown."""
        e = self.entry(symbol)
        if e.prim is None:
            raise UnresolvedPrimitive(
                "primitive coefficient of %r is unresolved" % (symbol,))
        out = e.word_form
        if e.prim:
            out = out + ShuffleElement.word(self.genset, self._sigma_word(symbol.weight), e.prim)
        return out

    def supply_primitive(self, symbol, value, provenance):
        e = self.entry(symbol)
        e.prim = Fraction(value)
        e.provenance = provenance

    def ensure_choice(self, symbol, value, provenance):
        """Expand with the zeta-coefficient fixed by fiat (basis choices)."""
        saved, self.resolver = self.resolver, None
        try:
            self.ensure(symbol)
        finally:
            self.resolver = saved
        self.supply_primitive(symbol, value, provenance)

    # -- expansion -------------------------------------------------------------

    def ensure(self, symbol):
        if symbol in self.entries:
            return self.entries[symbol]
        if symbol.kind == "log":
            ell = int(symbol.z)
            if ell not in self.S:
                raise ValueError("log(%d) is ramified outside S=%s" % (ell, list(self.S)))
            entry = TableEntry(ShuffleElement.word(self.genset, (tau_id(ell),)),
                               Fraction(0), "Kummer")
        elif symbol.kind == "zeta":
            if not self.has_sigma(symbol.n):
                raise ValueError("zeta(%d) has no generator under weight bound %d"
                                 % (symbol.n, self.max_weight))
            entry = TableEntry(ShuffleElement.zero(self.genset), Fraction(1),
                               "dual generator")
        else:
            entry = self._expand_li(symbol)
        self.entries[symbol] = entry
        return entry

    def _expand_li(self, symbol):
        n, z = symbol.n, symbol.z
        if n > self.max_weight:
            raise ValueError("weight %d beyond table bound %d" % (n, self.max_weight))
        if not (_is_s_unit(z, self.S) and _is_s_unit(1 - z, self.S)):
            raise ValueError("Li_%d(%s) is not an S-point symbol for S=%s"
                             % (n, z, list(self.S)))
        tens = sy.goncharov_reduced_coproduct(sy.Symbol("li", n, z))
        target = self.tensor_to_words(tens)
        dec, _ = wd.solve_delta_prime(self.genset, n, target)
        if n % 2 == 0 or n == 1:
            return TableEntry(dec, Fraction(0), "coproduct (no primitives)")
        if not self.has_sigma(n):
            return TableEntry(dec, Fraction(0), "coproduct (no sigma under bound)")
        prim = None
        provenance = "coproduct; zeta coefficient pending"
        if self.resolver is not None:
            prim, provenance = self.resolver(symbol, self.period_expression_of(dec))
        return TableEntry(dec, prim, provenance)

    def expand_in_basis(self, symbol):
        """Spec-facing wrapper: (word form, primitive coefficient or None)."""
        if isinstance(symbol, sy.Expression):
            mono = list(symbol.terms)
            if len(mono) != 1 or len(mono[0]) != 1 or symbol.terms[mono[0]] != 1:
                raise ValueError("expand_in_basis wants a single symbol")
            symbol = mono[0][0]
        e = self.entry(symbol)
        return e.word_form, e.prim

    # -- expressions <-> words ---------------------------------------------------

    def expression_to_words(self, expr):
        out = ShuffleElement.zero(self.genset)
        for mono, c in expr.terms.items():
            el = ShuffleElement.one(self.genset).scale(c)
            for s in mono:
                el = wd.shuffle_product(el, self.full_form(s))
            out = out + el
        return out

    def tensor_to_words(self, tens):
        out = TensorElement(self.genset, {})
        for (ml, mr), c in tens.terms.items():
            le = self.expression_to_words(sy.Expression({ml: Fraction(1)}))
            re = self.expression_to_words(sy.Expression({mr: Fraction(1)}))
            for wl, cl in le.terms.items():
                for wr, cr in re.terms.items():
                    k = (wl, wr)
                    s = out.terms.get(k, 0) + c * cl * cr
                    if s:
                        out.terms[k] = s
                    else:
                        out.terms.pop(k, None)
        return out

    def period_expression_of(self, el):
        """Rewrite an f-word element as a polynomial in tabled period symbols.

        Solves, weight by weight, for a combination of products of complete
        table entries (and zeta in odd weight) with the same word form.
        """
        out = sy.Expression.zero()
        for m in el.weights():
            if m == 0:
                out = out + sy.Expression.const(el.coefficient(()))
                continue
            piece = el.graded_part(m)
            span = self._spanning_products(m)
            vec, basis_words = _solve_span(self.genset, span, piece, m)
            for c, (expr, _) in zip(vec, span):
                if c:
                    out = out + expr.scale(c)
        return out

    def _spanning_products(self, m):
        atoms = []
        for s, e in self.entries.items():
            if e.prim is not None and s.weight <= m:
                atoms.append(s)
        # zeta atoms come for free from the generator duals
        for k in range(3, m + 1, 2):
            if self.has_sigma(k):
                z = sy.Symbol("zeta", k, Fraction(0))
                if z not in self.entries:
                    self.ensure(z)
                if z not in atoms:
                    atoms.append(z)
        atoms = sorted(set(atoms))
        monos = []

        def rec(i, budget, acc):
            if budget == 0:
                monos.append(tuple(acc))
                return
            if i == len(atoms):
                return
            rec(i + 1, budget, acc)
            if atoms[i].weight <= budget:
                rec(i, budget - atoms[i].weight, acc + [atoms[i]])

        rec(0, m, [])
        span = []
        for mono in monos:
            expr = sy.Expression({tuple(sorted(mono)): Fraction(1)})
            span.append((expr, self.expression_to_words(expr)))
        return span

    # -- reporting ----------------------------------------------------------------

    def to_json(self):
        rows = []
        for s, e in sorted(self.entries.items(), key=lambda kv: (kv[0].weight, repr(kv[0]))):
            rows.append({
                "symbol": repr(s),
                "Z": "Z[1/%s]" % ",".join(str(x) for x in self.S),
                "basisForm": e.word_form.to_json(),
                "primitiveCoefficient":
                    "unknown" if e.prim is None else wd._frac_str(e.prim),
                "provenance": e.provenance,
            })
        return rows


def _solve_span(genset, span, target, weight):
    basis_words = sorted({w for _, el in span for w in el.terms}
                         | set(target.terms), key=genset.word_sort_key)
    widx = {w: i for i, w in enumerate(basis_words)}
    rows = len(basis_words)
    ncols = len(span)
    aug = [[Fraction(0)] * (ncols + 1) for _ in range(rows)]
    for j, (_, el) in enumerate(span):
        for w, c in el.terms.items():
            aug[widx[w]][j] = c
    for w, c in target.terms.items():
        aug[widx[w]][ncols] = c
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
    for i in range(r, rows):
        if aug[i][ncols]:
            raise ValueError("element of weight %d is outside the period span" % weight)
    vec = [Fraction(0)] * ncols
    for c, row in pivots.items():
        vec[c] = aug[row][ncols]
    return vec, basis_words


# -- numeric resolution of zeta coefficients -----------------------------------


def expand_in_basis(symbol, table):
    """Free-function view of PeriodTable.expand_in_basis: (word form, zeta coefficient)."""
    return table.expand_in_basis(symbol)


def numeric_primitive_resolver(primes=(5, 7), policy=None,
                               num_bound=10 ** 4, den_bound=10 ** 3):
    """Recognize the zeta-coefficient of a symbol at two primes and compare."""

    def resolve(symbol, dec_expression):
        from .padic import rational_reconstruct
        from .polylog import get_engine
        found = {}
        for p in primes:
            eng = get_engine(p, policy)
            zeta = eng.zeta_nonzero(symbol.weight)
            num = eng.period(sy.Expression.sym(symbol)) - eng.period(dec_expression)
            ratio = (num / zeta).truncate_abs(eng.policy.M - eng.policy.g + 4)
            q = rational_reconstruct(ratio, num_bound, den_bound)
            if q is None:
                raise ArithmeticError(
                    "could not recognize the zeta coefficient of %r at p=%d" % (symbol, p))
            found[p] = q
        vals = set(found.values())
        if len(vals) != 1:
            raise ArithmeticError(
                "inconsistent recognition for %r: %r" % (symbol, found))
        q = vals.pop()
        return q, ("numerically recognized, cross-checked at p=%s"
                   % ",".join(str(p) for p in primes))

    return resolve


# -- assembled tables ------------------------------------------------------------


def build_table_z_half(resolver=None, max_weight=4):
    """Period table over Z[1/2]: the Li_k(1/2) column up to weight 4."""
    t = PeriodTable({2}, max_weight=max_weight,
                    resolver=resolver if resolver is not None else numeric_primitive_resolver())
    half = Fraction(1, 2)
    t.ensure(sy.Symbol("log", 1, Fraction(2)))
    t.ensure(sy.Symbol("zeta", 3, Fraction(0)))
    for k in range(2, max_weight + 1):
        t.ensure(sy.Symbol("li", k, half))
    return t


P3_CHOICE = (Fraction(-2), Fraction(3))  # arguments whose Li_3 spans P_3(Z[1/6])


def build_table_z_sixth(resolver=None, max_weight=4):
    """Period table over Z' = Z[1/6] feeding the Z[1/3] pipeline.

    P_3(Z') is pinned to span{Li_3(-2), Li_3(3)} (their zeta-coefficients
    vanish by this basis choice, which is what defines sigma_3 here);
    Li_3(9) then carries the one genuinely unknown coefficient.
    """
    t = PeriodTable({2, 3}, max_weight=max_weight,
                    resolver=resolver if resolver is not None else numeric_primitive_resolver())
    t.ensure(sy.Symbol("log", 1, Fraction(2)))
    t.ensure(sy.Symbol("log", 1, Fraction(3)))
    t.ensure(sy.Symbol("zeta", 3, Fraction(0)))
    for z in (Fraction(-2), Fraction(3), Fraction(9), Fraction(-3)):
        t.ensure(sy.Symbol("li", 2, z))
    for z in P3_CHOICE:
        t.ensure_choice(sy.Symbol("li", 3, z), 0,
                        "P_3 basis choice (defines sigma_3)")
    t.ensure(sy.Symbol("li", 3, Fraction(9)))
    if max_weight >= 4:
        t.ensure(sy.Symbol("li", 4, Fraction(3)))
        t.ensure(sy.Symbol("li", 4, Fraction(9)))
    return t


def basis_certificate_deg3(table=None):
    """The 8x8 matrix of Delta'_{1,2} coordinates certifying the weight-3 basis
    over Z[1/6], together with its determinant (which must be 9).

    Rows: log(2) (x) {log2^2, log2 log3, log3^2, Li2(-2)} then log(3) (x) same.
    Columns: log2^3, log3^3, log2^2 log3, log2 log3^2, log2 Li2(-2),
             log3 Li2(-2), Li3(-2), Li3(3).
    """
    l2 = sy.log_u(2)
    l3 = sy.log_u(3)
    li2m2 = sy.li_u(2, Fraction(-2))
    cols = [l2 ** 3, l3 ** 3, l2 * l2 * l3, l2 * l3 * l3,
            l2 * li2m2, l3 * li2m2,
            sy.li_u(3, Fraction(-2)), sy.li_u(3, Fraction(3))]
    right_basis = [l2 * l2, l2 * l3, l3 * l3, li2m2]
    left_basis = [l2, l3]
    rows = [(i, j) for i in range(2) for j in range(4)]
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for cj, col in enumerate(cols):
        t12 = sy.reduced_coproduct(col).bidegree_part(1, 2)
        coords = _tensor_coords(t12, left_basis, right_basis)
        for (i, j), val in coords.items():
            mat[rows.index((i, j))][cj] = val
    det = _determinant([row[:] for row in mat])
    return mat, det


def _tensor_coords(t12, left_basis, right_basis):
    lkeys = {}
    for i, b in enumerate(left_basis):
        (mono,) = b.terms
        lkeys[mono] = (i, b.terms[mono])
    rkeys = {}
    for j, b in enumerate(right_basis):
        (mono,) = b.terms
        rkeys[mono] = (j, b.terms[mono])
    out = {}
    for (ml, mr), c in t12.terms.items():
        if ml not in lkeys or mr not in rkeys:
            raise ValueError("tensor term (%r, %r) misses the stated bases" % (ml, mr))
        i, cl = lkeys[ml]
        j, cr = rkeys[mr]
        out[(i, j)] = out.get((i, j), Fraction(0)) + c / (cl * cr)
    return {k: v for k, v in out.items() if v}


def _determinant(mat):
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c]:
                f = mat[i][c] * inv
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return det


def f_sigma_tau_expression(S, table):
    """The period expression of the coordinate f_{sigma tau} over Z[1/ell].

    Solves the linear system expressing Li_4 at the tabled points through
    the unknown pure-period coordinates (the sigma-headed word sigma*tau and the
    weight-one-tail word), exactly as in half-weight 4.
    """
    S = tuple(sorted(S))
    if S == (2,):
        pts = [Fraction(1, 2)]
        tau, other_tau = 2, 2
    elif S == (3,):
        pts = [Fraction(3), Fraction(9)]
        tau, other_tau = 3, 2
    else:
        raise ValueError("f_sigma_tau is tabled for S={2} and S={3} only")
    gs = table.genset
    target_word = (sigma_id(3), tau_id(tau))
    tail_word = (tau_id(other_tau),) + (tau_id(tau),) * 3
    unknowns = [target_word] if S == (2,) else [target_word, tail_word]
    rows = []
    rhs = []
    for z in pts:
        form = table.full_form(sy.Symbol("li", 4, z))
        known = sy.li_u(4, z)
        coeffs = []
        for w in unknowns:
            coeffs.append(form.coefficient(w))
        leftover = form - ShuffleElement(gs, {w: form.coefficient(w) for w in unknowns})
        if leftover:
            known = known - table.period_expression_of(leftover)
        rows.append(coeffs)
        rhs.append(known)
    sol = _solve_expression_system(rows, rhs)
    return sol[0]


def _solve_expression_system(rows, rhs):
    n = len(rows)
    mat = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    m = len(rows[0])
    piv_rows = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            raise ValueError("singular period system (bad w_2 table?)")
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv if isinstance(x, Fraction) else x.scale(Fraction(1) / pv)
                  for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y if isinstance(x, Fraction) else x - y.scale(f)
                          for x, y in zip(mat[i], mat[r])]
        piv_rows.append(r)
        r += 1
    return [mat[i][m] for i in range(m)]


def specialization_assignment(S, table=None, policy=None):
    """Period expressions for the Galois coordinates of the |S|=1 ideal.

    Returns {Lyndon word tuple: Expression} covering f_tau, f_sigma and
    f_{sigma tau} for Z = Spec Z[1/ell], ell in {2, 3}.
    """
    (ell,) = tuple(S)
    if table is None:
        table = build_table_z_half() if ell == 2 else build_table_z_sixth()
    fst = f_sigma_tau_expression((ell,), table)
    return {
        (tau_id(ell),): sy.log_u(ell),
        (sigma_id(3),): sy.zeta_u(3),
        (sigma_id(3), tau_id(ell)): fst,
    }

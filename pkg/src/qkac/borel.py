"""Graded components of the positive (equivalently negative) half of the
quantized enveloping algebra, presented as quotients of the free algebra on
the generators by the q-Serre ideal.

A free word is a tuple of generator indices; a linear combination of words is
a dict {word: coefficient} with LaurentInt or RatQ values and no zeros.  For
each gamma in Q+ the component carries a chosen word basis together with a
normal-form map sending any word of content gamma to coordinates over the
basis.  The basis is the lexicographically smallest independent set of words,
obtained from a fraction-free row echelon of the Serre-ideal component with
pivots preferred on lexicographically larger words.

The e-side and f-side have identical combinatorics (same Serre coefficients,
same reduction), so the f-side reuses these bases verbatim.

Torus bookkeeping below uses the weight-space convention
k_gamma e_j = q^{(gamma, alpha_j)} e_j k_gamma.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import field_kernel, laurent_echelon
from .qarith import LaurentInt, RatQ, q_binomial, q_factorial
from .rootdata import CartanDatum, box, ht, vec_sub


class HeightExceeded(ValueError):
    """A component beyond the configured height bound was requested."""


# ---------------------------------------------------------------------------
# words and combinations
# ---------------------------------------------------------------------------

def word_content(word, rank: int):
    c = [0] * rank
    for i in word:
        c[i] += 1
    return tuple(c)


def words_of_content(gamma):
    """All words with the given content, in lexicographic order."""
    rank = len(gamma)
    total = sum(gamma)
    out = []

    def rec(remaining, prefix):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for i in range(rank):
            if remaining[i]:
                remaining[i] -= 1
                prefix.append(i)
                rec(remaining, prefix)
                prefix.pop()
                remaining[i] += 1

    rec(list(gamma), [])
    return out


def comb_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w)
        s = c if s is None else s + c
        if s:
            out[w] = s
        elif w in out:
            del out[w]
    return out


def comb_scale(c, a: dict) -> dict:
    if not c:
        return {}
    return {w: c * v for w, v in a.items()}


def comb_mul(a: dict, b: dict) -> dict:
    """Concatenation product of word combinations."""
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            s = out.get(w)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return out


def apply_linear(fn, comb: dict) -> dict:
    """Extend a word-level map returning combinations to combinations."""
    out = {}
    for w, c in comb.items():
        for w2, c2 in fn(w).items():
            s = out.get(w2)
            s = c * c2 if s is None else s + c * c2
            if s:
                out[w2] = s
            elif w2 in out:
                del out[w2]
    return out


# ---------------------------------------------------------------------------
# word bases of graded components
# ---------------------------------------------------------------------------

@dataclass
class WordBasis:
    """Chosen basis of one graded component and its normal-form data.

    ``expansions`` rewrites every non-basis word as a combination of strictly
    lexicographically smaller basis words, modulo the Serre ideal.
    """

    gamma: tuple
    basis_words: list
    expansions: dict = field(repr=False)   # word -> {basis word: RatQ}
    index: dict = field(repr=False)        # basis word -> position

    @property
    def dim(self) -> int:
        return len(self.basis_words)

    def reduce(self, comb: dict) -> dict:
        """Normal form of a combination of words of content gamma, as a
        {basis word: RatQ} dict."""
        out = {}
        for w, c in comb.items():
            if isinstance(c, LaurentInt):
                c = RatQ(c)
            if w in self.index:
                s = out.get(w, _R0) + c
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
            else:
                for b, e in self.expansions[w].items():
                    s = out.get(b, _R0) + c * e
                    if s:
                        out[b] = s
                    elif b in out:
                        del out[b]
        return out

    def coords(self, comb: dict):
        """Coordinate list over basis_words."""
        red = self.reduce(comb)
        return [red.get(w, _R0) for w in self.basis_words]


_R0 = RatQ.zero()
_L1 = LaurentInt.one()


class BorelAlgebra:
    """Graded pieces of U^+ (or U^-) for one Cartan datum, with caching.

    Components are computed lazily per gamma and cached; the cache is
    append-only and entries are immutable once published, so instances can be
    shared across worker threads.
    """

    def __init__(self, datum: CartanDatum, max_height: int | None = None):
        self.datum = datum
        self.max_height = max_height
        self._bases = {}
        self._dims = {}
        self._r_memo = {}
        self._rp_memo = {}

    # -- Serre relations -----------------------------------------------------
    def serre_element(self, i: int, j: int) -> dict:
        """The q-Serre relation sum_{r+s=1-A[i][j]} (-1)^r e_i^(r) e_j e_i^(s)
        expanded in plain words with RatQ coefficients."""
        if i == j:
            raise ValueError("Serre relations need i != j")
        n = 1 - self.datum.cartan[i][j]
        d = self.datum.q_exp(i)
        out = {}
        for r in range(n + 1):
            s = n - r
            word = (i,) * r + (j,) + (i,) * s
            denom = q_factorial(r, d) * q_factorial(s, d)
            coeff = RatQ(LaurentInt.const(-1 if r % 2 else 1), denom)
            out[word] = coeff
        return out

    def serre_element_integral(self, i: int, j: int) -> dict:
        """Same relation scaled by [n]!_{q_i}: coefficients are q-binomials,
        staying inside Z[q, q^-1]."""
        if i == j:
            raise ValueError("Serre relations need i != j")
        n = 1 - self.datum.cartan[i][j]
        d = self.datum.q_exp(i)
        out = {}
        for r in range(n + 1):
            word = (i,) * r + (j,) + (i,) * (n - r)
            coeff = q_binomial(n, r, d)
            out[word] = coeff if r % 2 == 0 else -coeff
        return out

    def serre_content(self, i: int, j: int):
        n = 1 - self.datum.cartan[i][j]
        gamma = [0] * self.datum.rank
        gamma[i] += n
        gamma[j] += 1
        return tuple(gamma)

    def _serre_rows(self, gamma, word_pos):
        """Spanning set of the Serre-ideal component at gamma as sparse rows
        (column index -> LaurentInt), from all bracketings u * S_ij * v."""
        rank = self.datum.rank
        rows = []
        for i in range(rank):
            for j in range(rank):
                if i == j:
                    continue
                sc = self.serre_content(i, j)
                rem = vec_sub(gamma, sc)
                if any(x < 0 for x in rem):
                    continue
                serre = self.serre_element_integral(i, j)
                for left in _subvectors(rem):
                    right = vec_sub(rem, left)
                    for u in words_of_content(left):
                        for v in words_of_content(right):
                            row = {word_pos[u + w + v]: c
                                   for w, c in serre.items()}
                            rows.append(row)
        return rows

    # -- bases ----------------------------------------------------------------
    def _check_height(self, gamma):
        if any(x < 0 for x in gamma):
            raise ValueError(f"{gamma} is not in Q+")
        if self.max_height is not None and ht(gamma) > self.max_height:
            raise HeightExceeded(
                f"ht{gamma} = {ht(gamma)} exceeds configured bound {self.max_height}")

    def dim(self, gamma) -> int:
        """dim of the graded component, without building the reduction map."""
        gamma = tuple(gamma)
        got = self._dims.get(gamma)
        if got is not None:
            return got
        basis = self._bases.get(gamma)
        if basis is not None:
            return basis.dim
        self._check_height(gamma)
        words = words_of_content(gamma)
        word_pos = {w: k for k, w in enumerate(words)}
        pivots = laurent_echelon(self._serre_rows(gamma, word_pos), len(words))
        d = len(words) - len(pivots)
        self._dims[gamma] = d
        return d

    def component_basis(self, gamma) -> WordBasis:
        gamma = tuple(gamma)
        got = self._bases.get(gamma)
        if got is not None:
            return got
        self._check_height(gamma)
        words = words_of_content(gamma)
        word_pos = {w: k for k, w in enumerate(words)}
        pivots = laurent_echelon(self._serre_rows(gamma, word_pos), len(words))
        basis_idx = [k for k in range(len(words)) if k not in pivots]
        basis_words = [words[k] for k in basis_idx]
        expansions = _pivot_expansions(pivots, words)
        wb = WordBasis(
            gamma=gamma,
            basis_words=basis_words,
            expansions=expansions,
            index={w: k for k, w in enumerate(basis_words)},
        )
        self._bases[gamma] = wb
        self._dims[gamma] = wb.dim
        return wb

    def dims_up_to(self, height: int) -> dict:
        """{gamma: dim} over the height box, constant term included."""
        return {g: self.dim(g) for g in box(self.datum.rank, height)}

    # -- skew derivations -----------------------------------------------------
    def r_plus(self, i: int, word) -> dict:
        """Right-slot skew derivation: r(1) = 0, r(e_j) = delta_ij, and
        r(x x') = q^{(alpha_i, wt x')} r(x) x' + x r(x'), peeled letter by
        letter from the right.  Coefficients are q-power monomials."""
        key = (i, word)
        got = self._r_memo.get(key)
        if got is not None:
            return got
        if not word:
            out = {}
        else:
            head, last = word[:-1], word[-1]
            out = {}
            factor = LaurentInt.q_power(
                self.datum.form(self.datum.simple_root(i),
                                self.datum.simple_root(last)))
            for w, c in self.r_plus(i, head).items():
                out[w + (last,)] = c * factor
            if last == i:
                out[head] = out.get(head, LaurentInt.zero()) + _L1
                if not out[head]:
                    del out[head]
        self._r_memo[key] = out
        return out

    def r_prime_plus(self, i: int, word) -> dict:
        """Left-slot skew derivation: r'(e_j) = delta_ij and
        r'(x x') = r'(x) x' + q^{(alpha_i, wt x)} x r'(x'), peeled from the
        left.  Validated against the free-coproduct expansion in the tests."""
        key = (i, word)
        got = self._rp_memo.get(key)
        if got is not None:
            return got
        if not word:
            out = {}
        else:
            first, rest = word[0], word[1:]
            out = {}
            factor = LaurentInt.q_power(
                self.datum.form(self.datum.simple_root(i),
                                self.datum.simple_root(first)))
            for w, c in self.r_prime_plus(i, rest).items():
                out[(first,) + w] = c * factor
            if first == i:
                out[rest] = out.get(rest, LaurentInt.zero()) + _L1
                if not out[rest]:
                    del out[rest]
        self._rp_memo[key] = out
        return out

    def kernel_basis(self, skew, i: int, gamma):
        """Basis of the kernel of a skew derivation on the quotient
        component, as a list of {basis word: RatQ} combinations."""
        gamma = tuple(gamma)
        wb = self.component_basis(gamma)
        down = vec_sub(gamma, self.datum.simple_root(i))
        if any(x < 0 for x in down):
            # the derivation maps the whole component to zero
            return [{w: RatQ.one()} for w in wb.basis_words]
        target = self.component_basis(down)
        images = [target.coords(skew(i, w)) for w in wb.basis_words]
        if target.dim == 0:
            return [{w: RatQ.one()} for w in wb.basis_words]
        # combinations sum_b v_b * b with sum_b v_b * images[b] = 0
        mat = [[images[b][t] for b in range(wb.dim)] for t in range(target.dim)]
        vecs = field_kernel(mat, RatQ.zero(), RatQ.one())
        return [{wb.basis_words[k]: v[k] for k in range(wb.dim) if v[k]}
                for v in vecs]

    # -- formal characters ------------------------------------------------
    def dim_series(self, height: int):
        """Graded dimensions as a character series anchored at 0 (the
        inverse denominator); imported lazily to keep layering one-way."""
        from .charring import CharSeries
        from .rootdata import zero_weight
        return CharSeries(zero_weight(self.datum), self.dims_up_to(height),
                          height)


# ---------------------------------------------------------------------------
# free-bialgebra coproduct: the independent oracle for the skew derivations
# ---------------------------------------------------------------------------

def free_coproduct(datum: CartanDatum, word) -> dict:
    """Coproduct of a word in the free bialgebra on the generators, fully
    expanded.

    With Delta(e_j) = e_j ox 1 + k_j ox e_j and torus factors normalized to
    the right of the first slot, every term has the shape
    coeff * (x k_{wt y} ox y); only (x, y) is stored.  Returns
    {(x_word, y_word): LaurentInt}.
    """
    terms = {((), ()): _L1}
    for j in word:
        alpha_j = datum.simple_root(j)
        nxt = {}
        for (x, y), c in terms.items():
            # x-slot: k_{wt y} moves past the new letter
            f = LaurentInt.q_power(
                datum.form(word_content(y, datum.rank), alpha_j))
            k1 = (x + (j,), y)
            s = nxt.get(k1, LaurentInt.zero()) + c * f
            if s:
                nxt[k1] = s
            # y-slot: the new k_j joins the torus factor silently
            k2 = (x, y + (j,))
            s = nxt.get(k2, LaurentInt.zero()) + c
            if s:
                nxt[k2] = s
        terms = nxt
    return terms


def oracle_r_plus(datum: CartanDatum, i: int, word) -> dict:
    """The (x k_i ox e_i) component of the full coproduct."""
    return {x: c for (x, y), c in free_coproduct(datum, word).items()
            if y == (i,)}


def oracle_r_prime_plus(datum: CartanDatum, i: int, word) -> dict:
    """The (e_i k_{wt-alpha_i} ox y) component of the full coproduct."""
    return {y: c for (x, y), c in free_coproduct(datum, word).items()
            if x == (i,)}


def _subvectors(bound):
    """All gamma with 0 <= gamma <= bound componentwise."""
    ranges = [range(b + 1) for b in bound]
    out = [()]
    for r in ranges:
        out = [p + (x,) for p in out for x in r]
    return out


def _pivot_expansions(pivots: dict, words: list) -> dict:
    """Turn echelon pivot rows into rewrite rules pivot word -> combination
    of basis words, by a Gauss-Jordan pass over the pivot rows.

    Echelon rows carry LaurentInt entries; the pass divides by pivots, so the
    result lives in RatQ.  Pivot columns are processed in ascending order;
    each finished row is supported on the pivot column and strictly smaller
    basis columns only.
    """
    ratq_rows = {}
    for col, row in pivots.items():
        ratq_rows[col] = {c: RatQ(v) for c, v in row.items()}
    finished = {}
    for col in sorted(ratq_rows):
        row = ratq_rows[col]
        # eliminate smaller pivot columns, already finished
        for pcol in sorted(c for c in row if c in finished and c != col):
            f = row.pop(pcol)
            for c2, v2 in finished[pcol].items():
                s = row.get(c2, _R0) - f * v2
                if s:
                    row[c2] = s
                elif c2 in row:
                    del row[c2]
        pv = row.pop(col)
        finished[col] = {c: v / pv for c, v in row.items()}
    out = {}
    for col, row in finished.items():
        out[words[col]] = {words[c]: -v for c, v in row.items()}
    return out

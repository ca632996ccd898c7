"""Tiny normal-form arithmetic for the algebra generated by e_i, f_i and the
root-lattice torus k_gamma, used only by spot-check tests.

Elements are {(f_word, gamma, e_word): RatQ}, the normal order being
f-part * k_gamma * e-part.  Products are normalized by a naive rewriting
loop on mixed letter strings with the relations
    e_i f_j = f_j e_i + delta_ij (k_i - k_i^-1)/(q_i - q_i^-1),
    e_i k_g = q^{-(g, alpha_i)} k_g e_i,
    k_g f_j = q^{-(g, alpha_j)} f_j k_g.
Deliberately slow and obvious: it referees identities the fast code paths
rely on, so it shares no machinery with them beyond scalar arithmetic.
"""

from qkac.qarith import LaurentInt, RatQ
from qkac.rootdata import vec_add


def _zero_vec(datum):
    return (0,) * datum.rank


def unit(datum):
    return {((), _zero_vec(datum), ()): RatQ.one()}


def from_e_word(datum, word):
    return {((), _zero_vec(datum), tuple(word)): RatQ.one()}


def from_f_word(datum, word):
    return {(tuple(word), _zero_vec(datum), ()): RatQ.one()}


def from_k(datum, gamma):
    return {((), tuple(gamma), ()): RatQ.one()}


def add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, RatQ.zero()) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def scale(c, elem):
    c = RatQ(c)
    return {k: c * v for k, v in elem.items()} if c else {}


def _letters(monomial):
    fword, gamma, eword = monomial
    out = [("f", j) for j in fword]
    if any(gamma):
        out.append(("k", gamma))
    out.extend(("e", i) for i in eword)
    return tuple(out)


def _normalize(datum, word, coeff, out):
    """Rewrite one mixed letter string to normal form, accumulating into out."""
    stack = [(word, coeff)]
    while stack:
        w, c = stack.pop()
        if not c:
            continue
        for idx in range(len(w) - 1):
            (ta, va), (tb, vb) = w[idx], w[idx + 1]
            if ta == "e" and tb == "f":
                i, j = va, vb
                stack.append((w[:idx] + (w[idx + 1], w[idx]) + w[idx + 2:], c))
                if i == j:
                    d = datum.q_exp(i)
                    denom = LaurentInt({d: 1, -d: -1})
                    alpha = datum.simple_root(i)
                    neg = tuple(-x for x in alpha)
                    stack.append((w[:idx] + (("k", alpha),) + w[idx + 2:],
                                  c * RatQ(1, denom)))
                    stack.append((w[:idx] + (("k", neg),) + w[idx + 2:],
                                  c * RatQ(-1, denom)))
                break
            if ta == "e" and tb == "k":
                f = LaurentInt.q_power(-datum.form(vb, datum.simple_root(va)))
                stack.append((w[:idx] + (w[idx + 1], w[idx]) + w[idx + 2:],
                              c * RatQ(f)))
                break
            if ta == "k" and tb == "f":
                f = LaurentInt.q_power(-datum.form(va, datum.simple_root(vb)))
                stack.append((w[:idx] + (w[idx + 1], w[idx]) + w[idx + 2:],
                              c * RatQ(f)))
                break
            if ta == "k" and tb == "k":
                merged = ("k", vec_add(va, vb))
                stack.append((w[:idx] + (merged,) + w[idx + 2:], c))
                break
        else:
            fword = tuple(v for t, v in w if t == "f")
            eword = tuple(v for t, v in w if t == "e")
            gamma = _zero_vec(datum)
            for t, v in w:
                if t == "k":
                    gamma = vec_add(gamma, v)
            key = (fword, gamma, eword)
            s = out.get(key, RatQ.zero()) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]


def mul(datum, a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            _normalize(datum, _letters(ka) + _letters(kb), va * vb, out)
    return out


def antipode(datum, elem):
    """S(e_i) = -k_i^-1 e_i, S(f_i) = -f_i k_i, S(k) = k^-1, antihomomorphism."""
    out = {}
    for mono, c in elem.items():
        word = []
        sign = 1
        for t, v in reversed(_letters(mono)):
            if t == "e":
                neg = tuple(-x for x in datum.simple_root(v))
                word.extend([("k", neg), ("e", v)])
                sign = -sign
            elif t == "f":
                word.extend([("f", v), ("k", datum.simple_root(v))])
                sign = -sign
            else:
                word.append(("k", tuple(-x for x in v)))
        _normalize(datum, tuple(word), c * RatQ(sign), out)
    return out


def coproduct(datum, elem):
    """Delta on the sharp Borel parts, as {(monomial, monomial): RatQ}."""
    out = {}
    for mono, c in elem.items():
        terms = {(((), _zero_vec(datum), ()),) * 2: c}
        for t, v in _letters(mono):
            if t == "e":
                legs = [(from_e_word(datum, (v,)), unit(datum)),
                        (from_k(datum, datum.simple_root(v)),
                         from_e_word(datum, (v,)))]
            elif t == "f":
                neg = tuple(-x for x in datum.simple_root(v))
                legs = [(from_f_word(datum, (v,)), from_k(datum, neg)),
                        (unit(datum), from_f_word(datum, (v,)))]
            else:
                legs = [(from_k(datum, v), from_k(datum, v))]
            nxt = {}
            for (m1, m2), cc in terms.items():
                for left, right in legs:
                    p1 = mul(datum, {m1: cc}, left)
                    p2 = mul(datum, {m2: RatQ.one()}, right)
                    for k1, v1 in p1.items():
                        for k2, v2 in p2.items():
                            key = (k1, k2)
                            s = nxt.get(key, RatQ.zero()) + v1 * v2
                            if s:
                                nxt[key] = s
                            elif key in nxt:
                                del nxt[key]
            terms = nxt
        for key, v in terms.items():
            s = out.get(key, RatQ.zero()) + v
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def coproduct2(datum, elem):
    """(Delta x 1) Delta, as {(m1, m2, m3): RatQ}; coassociativity makes the
    slot choice immaterial."""
    out = {}
    for (m1, m23), c in coproduct(datum, elem).items():
        for (m2, m3), c2 in coproduct(datum, {m23: RatQ.one()}).items():
            key = (m1, m2, m3)
            s = out.get(key, RatQ.zero()) + c * c2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def sharp_pairing(pairing, xmono, ymono) -> RatQ:
    """tau on normalized monomials: x in the non-negative part (no f's),
    y in the non-positive part (no e's)."""
    fx, gx, ex = xmono
    fy, gy, ey = ymono
    assert not fx and not ey, "pairing slots landed outside the sharp Borels"
    datum = pairing.datum
    # k_g e = q^{(g, wt e)} e k_g; then tau(x k_g, y k_h) = tau(x, y) q^{-(g,h)}
    shift = datum.form(gx, _content_vec(datum, ex))
    base = pairing.pairing_value(ex, fy)
    return RatQ(LaurentInt.q_power(shift - _form(datum, gx, gy))) * base


def _content_vec(datum, word):
    c = [0] * datum.rank
    for i in word:
        c[i] += 1
    return tuple(c)


def _form(datum, a, b):
    return datum.form(a, b)

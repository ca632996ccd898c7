"""Cartan data, the invariant bilinear form, weights and the twisted Weyl
group action, plus two enumeration engines: the shifted-orbit walk that feeds
the Weyl-Kac numerator and the Peterson recurrence for root multiplicities.

Conventions.  The generalized Cartan matrix is stored as A[i][j] = <alpha_j,
h_i>, with positive-integer symmetrizers d_i = (alpha_i, alpha_i)/2 so that
d_i * A[i][j] = d_j * A[j][i].  Root-lattice elements are plain integer
tuples in simple-root coordinates.  A weight is known only through its
pairing vector (<lambda, h_i>)_i, optionally together with a root-lattice
offset from a named anchor; every quantity computed here (the form, the
twisted reflections, characters) depends on nothing else, so no explicit
realization of the Cartan subalgebra is ever chosen.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd


class NonDominant(ValueError):
    """A dominant weight was required (all pairings >= 0)."""


# ---------------------------------------------------------------------------
# root-lattice tuples
# ---------------------------------------------------------------------------

def ht(gamma) -> int:
    """Height of a root-lattice element: the sum of its coordinates."""
    return sum(gamma)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def is_nonneg(gamma) -> bool:
    return all(x >= 0 for x in gamma)


def box(rank: int, height: int):
    """All gamma in Q+ with ht(gamma) <= height, ordered by height then
    lexicographically (the emission order used everywhere)."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == rank - 1:
            for last in range(remaining + 1):
                out.append(prefix + (last,))
            return
        for x in range(remaining + 1):
            rec(prefix + (x,), remaining - x)

    rec((), height)
    out.sort(key=lambda g: (ht(g), g))
    return out


# ---------------------------------------------------------------------------
# Cartan datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanDatum:
    """Symmetrizable generalized Cartan matrix with its symmetrizer."""

    rank: int
    cartan: tuple       # tuple of tuples, A[i][j] = <alpha_j, h_i>
    sym: tuple          # d_i = (alpha_i, alpha_i)/2, positive integers
    name: str = "custom"

    def __post_init__(self):
        n, A, d = self.rank, self.cartan, self.sym
        if n < 1:
            raise ValueError("rank must be >= 1")
        if len(A) != n or any(len(row) != n for row in A):
            raise ValueError(f"cartan matrix must be {n}x{n}")
        if len(d) != n:
            raise ValueError(f"symmetrizer must have {n} entries")
        for i in range(n):
            if d[i] < 1:
                raise ValueError(f"symmetrizer[{i}] must be a positive integer")
        for i in range(n):
            if A[i][i] != 2:
                raise ValueError(f"cartan[{i}][{i}] must be 2")
            for j in range(n):
                if i == j:
                    continue
                if A[i][j] > 0:
                    raise ValueError(f"cartan[{i}][{j}] must be <= 0")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    raise ValueError(
                        f"cartan[{i}][{j}] and cartan[{j}][{i}] must vanish together")
                if d[i] * A[i][j] != d[j] * A[j][i]:
                    raise ValueError(
                        f"symmetrizability fails at ({i},{j}): "
                        f"d[{i}]*A[{i}][{j}] != d[{j}]*A[{j}][{i}]")

    # -- the invariant form -------------------------------------------------
    def form(self, gamma, delta) -> int:
        """(gamma, delta) = sum n_i m_j d_i A[i][j]; symmetric."""
        total = 0
        for i, ni in enumerate(gamma):
            if ni:
                di = self.sym[i]
                row = self.cartan[i]
                for j, mj in enumerate(delta):
                    if mj:
                        total += ni * mj * di * row[j]
        return total

    def form_weight_root(self, pairings, i: int) -> int:
        """(lambda, alpha_i) = d_i * <lambda, h_i>."""
        return self.sym[i] * pairings[i]

    def root_pairings(self, gamma):
        """gamma regarded as a weight: (<gamma, h_i>)_i = A @ gamma."""
        return tuple(sum(self.cartan[i][j] * gamma[j] for j in range(self.rank))
                     for i in range(self.rank))

    def simple_root(self, i: int):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def q_exp(self, i: int) -> int:
        """Exponent d_i with q_i = q^{d_i}."""
        return self.sym[i]

    @staticmethod
    def from_dict(data: dict, name: str = "custom") -> "CartanDatum":
        for key in ("rank", "cartan", "symmetrizer"):
            if key not in data:
                raise ValueError(f"missing field {key!r} in Cartan datum")
        return CartanDatum(
            rank=int(data["rank"]),
            cartan=tuple(tuple(int(x) for x in row) for row in data["cartan"]),
            sym=tuple(int(x) for x in data["symmetrizer"]),
            name=name,
        )

    @staticmethod
    def from_json(path) -> "CartanDatum":
        with open(path) as fh:
            data = json.load(fh)
        return CartanDatum.from_dict(data, name=str(path))

    def to_dict(self) -> dict:
        return {"rank": self.rank,
                "cartan": [list(r) for r in self.cartan],
                "symmetrizer": list(self.sym)}


def _preset(name, cartan, sym):
    return CartanDatum(rank=len(sym), cartan=cartan, sym=sym, name=name)


#: Finite and affine test data with minimal symmetrizers.  "A1~" is untwisted
#: affine sl2; "A2~2" is the twisted affine rank-2 datum.
PRESETS = {
    "A1": _preset("A1", ((2,),), (1,)),
    "A2": _preset("A2", ((2, -1), (-1, 2)), (1, 1)),
    "A3": _preset("A3", ((2, -1, 0), (-1, 2, -1), (0, -1, 2)), (1, 1, 1)),
    "B2": _preset("B2", ((2, -1), (-2, 2)), (2, 1)),
    "G2": _preset("G2", ((2, -1), (-3, 2)), (3, 1)),
    "A1~": _preset("A1~", ((2, -2), (-2, 2)), (1, 1)),
    "A2~2": _preset("A2~2", ((2, -1), (-4, 2)), (4, 1)),
}


def preset(name: str) -> CartanDatum:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


# ---------------------------------------------------------------------------
# weights and the twisted (dot) action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """A weight seen through its pairing vector (<lambda, h_i>)_i."""

    pairings: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairings", tuple(int(p) for p in self.pairings))

    def is_dominant(self) -> bool:
        return all(p >= 0 for p in self.pairings)

    def sub_root(self, datum: CartanDatum, gamma) -> "Weight":
        """lambda - gamma, gamma in the root lattice."""
        ap = datum.root_pairings(gamma)
        return Weight(tuple(p - a for p, a in zip(self.pairings, ap)))

    def add(self, other: "Weight") -> "Weight":
        return Weight(vec_add(self.pairings, other.pairings))


def zero_weight(datum: CartanDatum) -> Weight:
    return Weight((0,) * datum.rank)


@dataclass(frozen=True)
class DotWeight:
    """anchor - offset, tracked as the anchor's pairings plus the offset."""

    anchor: Weight
    offset: tuple

    def pairings(self, datum: CartanDatum):
        ap = datum.root_pairings(self.offset)
        return tuple(p - a for p, a in zip(self.anchor.pairings, ap))


def dot_reflect(datum: CartanDatum, i: int, w: DotWeight) -> DotWeight:
    """Twisted reflection s_i . mu = mu - (<mu, h_i> + 1) alpha_i."""
    p = w.pairings(datum)[i]
    step = p + 1
    offset = tuple(o + (step if j == i else 0) for j, o in enumerate(w.offset))
    return DotWeight(w.anchor, offset)


def orbit_numerator(datum: CartanDatum, lam: Weight, height: int):
    """Signed support of the Weyl-Kac numerator at a dominant weight.

    Breadth-first walk applying twisted reflections from lambda; a node is
    expanded only while the offset lambda - (w . lambda) has height <= the
    bound.  For dominant lambda the shifted weight lambda + rho is regular,
    so w |-> w . lambda is injective and offsets identify orbit points;
    revisits must agree in sign and are checked.  Returns [(offset, sign)]
    sorted by height then lexicographically.
    """
    if not lam.is_dominant():
        raise NonDominant(f"pairings {lam.pairings} contain a negative entry")
    start = DotWeight(lam, (0,) * datum.rank)
    seen = {start.offset: 1}
    queue = [(start, 1)]
    while queue:
        node, sign = queue.pop(0)
        for i in range(datum.rank):
            child = dot_reflect(datum, i, node)
            if child.offset == node.offset:
                continue
            if ht(child.offset) > height:
                continue
            if child.offset in seen:
                if seen[child.offset] != -sign:
                    raise AssertionError(
                        f"inconsistent signs reaching offset {child.offset}")
                continue
            seen[child.offset] = -sign
            queue.append((child, -sign))
    return sorted(seen.items(), key=lambda kv: (ht(kv[0]), kv[0]))


# ---------------------------------------------------------------------------
# Peterson recurrence
# ---------------------------------------------------------------------------

def peterson_multiplicities(datum: CartanDatum, height: int):
    """Root multiplicities up to the height bound via Peterson's recurrence.

    Works with the co-multiplicities c_beta = sum_{k|beta} m_{beta/k}/k:
    (beta, beta - 2 rho) c_beta = sum_{beta'+beta''=beta} (beta', beta'')
    c_beta' c_beta'' with c_{alpha_i} = 1; peeling off the known lower terms
    of c_beta leaves m_beta.  When the left factor vanishes, beta is neither
    simple nor a root, so m_beta = 0 and the identity degenerates to rhs = 0
    (asserted).  Runs in exact rational arithmetic, independently of the
    quotient construction it cross-checks.
    """
    if height < 1:
        raise ValueError("height bound must be >= 1")
    n = datum.rank
    simples = {datum.simple_root(i) for i in range(n)}
    c = {}
    mult = {}
    for beta in box(n, height):
        if ht(beta) < 1:
            continue
        if beta in simples:
            c[beta] = Fraction(1)
            mult[beta] = 1
            continue
        # part of c_beta already determined at lower heights: k >= 2 divisors
        tail = Fraction(0)
        g = reduce(gcd, beta)
        for k in range(2, g + 1):
            if g % k == 0:
                m_low = mult.get(tuple(b // k for b in beta))
                if m_low:
                    tail += Fraction(m_low, k)
        rhs = Fraction(0)
        for b1 in _proper_subvectors(beta):
            c1 = c.get(b1)
            if not c1:
                continue
            c2 = c.get(vec_sub(beta, b1))
            if c2:
                rhs += datum.form(b1, vec_sub(beta, b1)) * c1 * c2
        # (rho, beta) = sum_i b_i d_i  since <rho, h_i> = 1
        rho_form = sum(b * d for b, d in zip(beta, datum.sym))
        factor = datum.form(beta, beta) - 2 * rho_form
        if factor == 0:
            assert rhs == 0, f"Peterson recurrence degenerate at {beta}"
            cb = tail
            m = 0
        else:
            cb = rhs / factor
            m_frac = cb - tail
            assert m_frac.denominator == 1, f"non-integer multiplicity at {beta}"
            m = int(m_frac)
            assert m >= 0, f"negative multiplicity at {beta}"
        if cb:
            c[beta] = cb
        if m:
            mult[beta] = m
    return mult


def _proper_subvectors(beta):
    """Nonzero gamma < beta componentwise with gamma != beta."""
    ranges = [range(b + 1) for b in beta]

    def rec(idx, prefix):
        if idx == len(beta):
            yield tuple(prefix)
            return
        for x in ranges[idx]:
            prefix.append(x)
            yield from rec(idx + 1, prefix)
            prefix.pop()

    for g in rec(0, []):
        if any(g) and g != beta:
            yield g

"""Exact arithmetic in Z[q,q^-1] and Q(q), q-combinatorics, specialization,
and cyclotomic-unit certificates.

A Laurent polynomial is a dict {exponent: coefficient} with int values and no
stored zeros, so equality is structural and the zero element has empty
support.  A rational function is a reduced fraction of Laurent polynomials
with a canonical denominator: a primitive ordinary polynomial in q (lowest
exponent 0) with positive leading coefficient.  All coefficients are
arbitrary-precision integers; nothing here touches floating point.

Certificates decompose elements of Z[q, q^-1, (q^n - 1)^-1 | n > 0] into
sign * q^a * prod_n Phi_n^{e_n} with Phi_n the n-th cyclotomic polynomial.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction


class NotAUnit(ArithmeticError):
    """A rational function is not of the form +-q^a * prod Phi_n^{e_n}.

    Carries the offending residual so verification runs can report exactly
    what survived cyclotomic stripping.
    """

    def __init__(self, residual, message="not a unit"):
        super().__init__(f"{message}: residual {residual!r}")
        self.residual = residual


class PoleAtZ(ZeroDivisionError):
    """Specialization q -> z hit a vanishing denominator."""


class RootOfUnityWarning(UserWarning):
    """The evaluation point is a root of unity; non-degeneracy results
    need q specialized away from roots of unity."""


def _warn_if_root_of_unity(z) -> None:
    if z == 1 or z == -1:
        warnings.warn(
            f"z = {z} is a root of unity; non-degeneracy is not guaranteed there",
            RootOfUnityWarning,
            stacklevel=3,
        )


# ---------------------------------------------------------------------------
# ordinary-polynomial helpers (dense ascending coefficient lists, ints)
# ---------------------------------------------------------------------------

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c) -> int:
    g = 0
    for a in c:
        g = math.gcd(g, a)
        if g == 1:
            return 1
    return g


def _prim(c):
    """Primitive part with positive leading coefficient."""
    c = _trim(list(c))
    if not c:
        return c
    g = _content(c)
    if c[-1] < 0:
        g = -g
    return [a // g for a in c]


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    """Division in Q[q] restricted to exact integer steps; raises if a
    quotient coefficient is not an integer."""
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = len(b) - 1, b[-1]
    q = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        if a[i] % lb:
            raise ArithmeticError("inexact polynomial division")
        c = a[i] // lb
        q[i - db] = c
        for j, y in enumerate(b):
            a[i - db + j] -= c * y
    return _trim(q), _trim(a)


def _prem(a, b):
    """Pseudo-remainder: a power of lc(b) times a, reduced mod b."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        lead = r[-1]
        dr = len(r) - 1
        r = [lb * c for c in r]
        for j in range(db + 1):
            r[dr - db + j] -= lead * b[j]
        _trim(r)
    return r


def _poly_gcd(a, b):
    """GCD in Z[q] via the primitive pseudo-remainder sequence.

    Result is primitive with positive leading coefficient (content of the
    inputs is intentionally dropped; callers handle integer content)."""
    a, b = _prim(a), _prim(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prim(_prem(a, b))
        a, b = b, r
    return a


# ---------------------------------------------------------------------------
# Laurent polynomials over Z
# ---------------------------------------------------------------------------

class LaurentInt:
    """Exact Laurent polynomial in q with integer coefficients.

    Invariant: ``self.c`` maps exponent -> nonzero int; the zero element has
    empty support.  Instances are immutable; all operations return new
    values.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = int(a)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentInt is immutable")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero():
        return _L_ZERO

    @staticmethod
    def one():
        return _L_ONE

    @staticmethod
    def const(n: int) -> "LaurentInt":
        return LaurentInt({0: n})

    @staticmethod
    def q_power(k: int) -> "LaurentInt":
        return LaurentInt({k: 1})

    @staticmethod
    def monomial(coeff: int, k: int) -> "LaurentInt":
        return LaurentInt({k: coeff})

    @staticmethod
    def from_coeffs(coeffs, shift: int = 0) -> "LaurentInt":
        """Build from an ascending coefficient list, optionally shifted."""
        return LaurentInt({i + shift: a for i, a in enumerate(coeffs)})

    # -- basic protocol ----------------------------------------------------
    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentInt.const(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            a = self.c[e]
            if e == 0:
                parts.append(f"{a:+d}")
            else:
                head = "+" if a > 0 else "-"
                mag = "" if abs(a) == 1 else str(abs(a)) + "*"
                parts.append(f"{head}{mag}q^{e}" if e != 1 else f"{head}{mag}q")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentInt.const(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        out = dict(self.c)
        for e, a in other.c.items():
            s = out.get(e, 0) + a
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return _wrap({e: -a for e, a in self.c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentInt.const(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        out = dict(self.c)
        for e, a in other.c.items():
            s = out.get(e, 0) - a
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return _wrap(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _L_ZERO
            return _wrap({e: a * other for e, a in self.c.items()})
        if not isinstance(other, LaurentInt):
            return NotImplemented
        a, b = self.c, other.c
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = _L_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ---------------------------------------------------------
    @property
    def valuation(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no valuation")
        return min(self.c)

    @property
    def degree(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return max(self.c)

    def shifted(self, k: int) -> "LaurentInt":
        if k == 0 or not self.c:
            return self
        return _wrap({e + k: a for e, a in self.c.items()})

    def coeffs_ascending(self):
        """(list of coefficients from the valuation up, valuation)."""
        if not self.c:
            return [], 0
        v, d = self.valuation, self.degree
        out = [0] * (d - v + 1)
        for e, a in self.c.items():
            out[e - v] = a
        return out, v

    def content(self) -> int:
        g = 0
        for a in self.c.values():
            g = math.gcd(g, a)
            if g == 1:
                return 1
        return g

    def exact_div(self, other: "LaurentInt") -> "LaurentInt":
        """Exact division; raises ArithmeticError when it does not divide."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return _L_ZERO
        a, va = self.coeffs_ascending()
        b, vb = other.coeffs_ascending()
        quo, rem = _poly_divmod(a, b)
        if rem:
            raise ArithmeticError(f"inexact Laurent division: {self!r} / {other!r}")
        return LaurentInt.from_coeffs(quo, va - vb)

    def divides(self, other: "LaurentInt") -> bool:
        try:
            other.exact_div(self)
            return True
        except ArithmeticError:
            return False

    def evaluate(self, z) -> Fraction:
        """Exact evaluation at a nonzero rational point."""
        z = Fraction(z)
        if z == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
        total = Fraction(0)
        for e, a in self.c.items():
            total += a * z ** e
        return total

    def fp_coeffs(self, p: int):
        """(ascending coefficients mod p, valuation); used for the
        function-field specialization q -> t over GF(p)."""
        coeffs, v = self.coeffs_ascending()
        return [a % p for a in coeffs], v


def _wrap(c: dict) -> LaurentInt:
    out = LaurentInt.__new__(LaurentInt)
    object.__setattr__(out, "c", c)
    return out


_L_ZERO = LaurentInt()
_L_ONE = LaurentInt({0: 1})


# ---------------------------------------------------------------------------
# rational functions of q
# ---------------------------------------------------------------------------

class RatQ:
    """Reduced fraction of Laurent polynomials.

    Canonical form: the denominator is an ordinary polynomial (valuation 0)
    with positive leading coefficient, sharing no polynomial factor and no
    integer content with the numerator; any q-power lives in the numerator.
    The form is unique, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatQ):
            if den is not None:
                raise TypeError("RatQ numerator with explicit denominator")
            object.__setattr__(self, "num", num.num)
            object.__setattr__(self, "den", num.den)
            return
        if isinstance(num, int):
            num = LaurentInt.const(num)
        if den is None:
            den = _L_ONE
        elif isinstance(den, int):
            den = LaurentInt.const(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = _ratq_normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatQ is immutable")

    @staticmethod
    def zero():
        return _R_ZERO

    @staticmethod
    def one():
        return _R_ONE

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == _L_ONE:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other):
        other = _coerce_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatQ.__new__(RatQ)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __sub__(self, other):
        other = _coerce_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return RatQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_ratq(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RatQ.one() / self) ** (-n)
        return RatQ(self.num ** n, self.den ** n)

    def inv(self):
        return RatQ.one() / self

    def as_laurent(self) -> LaurentInt:
        if self.den != _L_ONE:
            raise ArithmeticError(f"{self!r} is not a Laurent polynomial")
        return self.num

    def evaluate(self, z) -> Fraction:
        z = Fraction(z)
        if z == 0:
            raise ZeroDivisionError("cannot specialize at 0")
        d = self.den.evaluate(z)
        if d == 0:
            raise PoleAtZ(f"denominator {self.den!r} vanishes at z = {z}")
        return self.num.evaluate(z) / d


def _coerce_ratq(x):
    if isinstance(x, RatQ):
        return x
    if isinstance(x, (int, LaurentInt)):
        return RatQ(x)
    return NotImplemented


def _ratq_normalize(num: LaurentInt, den: LaurentInt):
    if not num:
        return _L_ZERO, _L_ONE
    nc, nv = num.coeffs_ascending()
    dc, dv = den.coeffs_ascending()
    g = _poly_gcd(nc, dc)
    if len(g) > 1:
        nc, _ = _poly_divmod(nc, g)  # exact: g divides both (Gauss)
        dc, _ = _poly_divmod(dc, g)
    cg = math.gcd(_content(nc), _content(dc))
    if dc[-1] < 0:
        cg = -cg
    nc = [a // cg for a in nc]
    dc = [a // cg for a in dc]
    return LaurentInt.from_coeffs(nc, nv - dv), LaurentInt.from_coeffs(dc)


_R_ZERO = RatQ(0)
_R_ONE = RatQ(1)


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

def q_integer(n: int, d: int = 1) -> LaurentInt:
    """[n] at q^d: (q^{dn} - q^{-dn}) / (q^d - q^{-d}) expanded exactly."""
    if n < 0:
        raise ValueError("q_integer requires n >= 0")
    if d < 1:
        raise ValueError("q_integer requires d >= 1")
    return LaurentInt({d * (n - 1 - 2 * k): 1 for k in range(n)})


def q_int_signed(n: int, d: int = 1) -> LaurentInt:
    """[n] at q^d for any integer n; [-n] = -[n]."""
    if n >= 0:
        return q_integer(n, d)
    return -q_integer(-n, d)


def q_factorial(n: int, d: int = 1) -> LaurentInt:
    if n < 0:
        raise ValueError("q_factorial requires n >= 0")
    out = _L_ONE
    for k in range(2, n + 1):
        out = out * q_integer(k, d)
    return out


def q_binomial(n: int, k: int, d: int = 1) -> LaurentInt:
    """Gaussian binomial at q^d; always a Laurent polynomial."""
    if k < 0 or k > n:
        return _L_ZERO
    num = q_factorial(n, d)
    den = q_factorial(k, d) * q_factorial(n - k, d)
    return num.exact_div(den)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and unit certificates
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentInt:
    """n-th cyclotomic polynomial Phi_n, as a polynomial in q.

    Computed by dividing q^n - 1 by the product of Phi_d over proper
    divisors d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic requires n >= 1")
    if n == 1:
        return LaurentInt({1: 1, 0: -1})
    rest = _L_ONE
    for d in range(1, n):
        if n % d == 0:
            rest = rest * cyclotomic(d)
    return (LaurentInt({n: 1, 0: -1})).exact_div(rest)


@functools.lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class UnitCertificate:
    """Exact factorization sign * q^q_power * prod Phi_n^{e_n}."""

    sign: int
    q_power: int
    factors: tuple  # ((n, exponent), ...) sorted by n, exponents nonzero

    def reconstruct(self) -> RatQ:
        out = RatQ(LaurentInt.monomial(self.sign, self.q_power))
        for n, e in self.factors:
            phi = RatQ(cyclotomic(n))
            out = out * phi ** e
        return out

    def factor_exponent(self, n: int) -> int:
        for m, e in self.factors:
            if m == n:
                return e
        return 0

    def __str__(self):
        facs = " ".join(f"Phi_{n}^{e}" for n, e in self.factors) or "1"
        return f"{'+' if self.sign > 0 else '-'}q^{self.q_power} * {facs}"


def _strip_cyclotomics(poly: LaurentInt):
    """Divide out every cyclotomic factor of an ordinary polynomial.

    A factor Phi_n of a degree-d polynomial needs phi(n) <= d, which forces
    n <= 2*d^2 + 1; both bounds shrink as factors strip off, so the scan is
    short whenever the input really is a product of cyclotomics.
    Returns (residual, {n: multiplicity}).
    """
    counts = {}
    n = 0
    while True:
        d = poly.degree
        if d == 0:
            break
        n += 1
        if n > 2 * d * d + 1:
            break
        if totient(n) > d:
            continue
        phi = cyclotomic(n)
        while True:
            try:
                poly = poly.exact_div(phi)
            except ArithmeticError:
                break
            counts[n] = counts.get(n, 0) + 1
    return poly, counts


def certify_unit(f) -> UnitCertificate:
    """Certificate for a unit of Z[q, q^-1, (q^n - 1)^-1 | n > 0].

    The q-power is stripped first, then the numerator and denominator are
    trial-divided by Phi_n for every n whose degree phi(n) can fit; anything
    other than +-1 left over raises NotAUnit.
    """
    if isinstance(f, (int, LaurentInt)):
        f = RatQ(f)
    if not f:
        raise ValueError("cannot certify 0")
    num, den = f.num, f.den
    q_power = num.valuation  # den has valuation 0 by canonical form
    num = num.shifted(-q_power)
    num_res, num_counts = _strip_cyclotomics(num)
    den_res, den_counts = _strip_cyclotomics(den)
    if num_res.degree != 0 or den_res.degree != 0:
        raise NotAUnit(num_res if num_res.degree else den_res,
                       "non-cyclotomic polynomial factor")
    a, b = num_res.c[0], den_res.c[0]
    if abs(a) != 1 or abs(b) != 1:
        raise NotAUnit(RatQ(num_res, den_res), "nontrivial integer content")
    exps = {}
    for n, e in num_counts.items():
        exps[n] = exps.get(n, 0) + e
    for n, e in den_counts.items():
        exps[n] = exps.get(n, 0) - e
    factors = tuple(sorted((n, e) for n, e in exps.items() if e))
    return UnitCertificate(sign=a * b, q_power=q_power, factors=factors)


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------

def specialize(f, z) -> Fraction:
    """Exact evaluation at q = z for nonzero rational z.

    Warns (does not fail) when z is +-1, the only rational roots of unity.
    Raises PoleAtZ when a denominator vanishes at z.
    """
    z = Fraction(z)
    if z == 0:
        raise ValueError("specialization point must be nonzero")
    _warn_if_root_of_unity(z)
    if isinstance(f, LaurentInt):
        return f.evaluate(z)
    if isinstance(f, RatQ):
        return f.evaluate(z)
    raise TypeError(f"cannot specialize {type(f).__name__}")


# ---------------------------------------------------------------------------
# polynomials over GF(p): support for specializing q to the indeterminate
# of a rational-function field in positive characteristic
# ---------------------------------------------------------------------------

class FpPoly:
    """Polynomial over GF(p), coefficients ascending, no trailing zeros."""

    __slots__ = ("p", "c")

    def __init__(self, coeffs, p: int):
        if p < 2:
            raise ValueError("characteristic must be a prime >= 2")
        c = [a % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return (isinstance(other, FpPoly) and self.p == other.p
                and self.c == other.c)

    def __hash__(self):
        return hash((self.p, self.c))

    def __repr__(self):
        return f"FpPoly({list(self.c)}, p={self.p})"

    def __add__(self, other):
        assert self.p == other.p
        n = max(len(self.c), len(other.c))
        a = list(self.c) + [0] * (n - len(self.c))
        for i, b in enumerate(other.c):
            a[i] = (a[i] + b) % self.p
        return FpPoly(a, self.p)

    def __sub__(self, other):
        assert self.p == other.p
        n = max(len(self.c), len(other.c))
        a = list(self.c) + [0] * (n - len(self.c))
        for i, b in enumerate(other.c):
            a[i] = (a[i] - b) % self.p
        return FpPoly(a, self.p)

    def __neg__(self):
        return FpPoly([-a for a in self.c], self.p)

    def __mul__(self, other):
        assert self.p == other.p
        if not self.c or not other.c:
            return FpPoly([], self.p)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return FpPoly(out, self.p)

    def divmod(self, other: "FpPoly"):
        assert self.p == other.p
        if not other.c:
            raise ZeroDivisionError("FpPoly division by zero")
        p = self.p
        a = list(self.c)
        db = len(other.c) - 1
        inv_lb = pow(other.c[-1], -1, p)
        q = [0] * max(0, len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            if a[i] % p == 0:
                continue
            f = (a[i] * inv_lb) % p
            q[i - db] = f
            for j, y in enumerate(other.c):
                a[i - db + j] = (a[i - db + j] - f * y) % p
        return FpPoly(q, p), FpPoly(a, p)

    def exact_div(self, other: "FpPoly") -> "FpPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact FpPoly division")
        return q


def specialize_function_field(f, p: int):
    """Specialize q to the indeterminate t of GF(p)(t).

    Returns a reduced pair (numerator, denominator) of FpPoly in t; the
    t-power part of the numerator is kept as an honest polynomial factor
    (t is a unit of GF(p)[t, t^-1], so reduction only clears common powers).
    Raises PoleAtZ when the denominator vanishes identically mod p.
    """
    if isinstance(f, (int, LaurentInt)):
        f = RatQ(f)
    nc, nv = (f.num.coeffs_ascending() if f.num else ([], 0))
    dc, dv = f.den.coeffs_ascending()
    den = FpPoly(dc, p)
    if not den:
        raise PoleAtZ(f"denominator {f.den!r} vanishes identically mod {p}")
    num = FpPoly(nc, p)
    shift = nv - dv
    if shift > 0:
        num = num * FpPoly([0] * shift + [1], p)
    elif shift < 0:
        den = den * FpPoly([0] * (-shift) + [1], p)
    # clear any common power of t
    while num.c and den.c and num.c[0] == 0 and den.c[0] == 0:
        num = FpPoly(num.c[1:], p)
        den = FpPoly(den.c[1:], p)
    return num, den

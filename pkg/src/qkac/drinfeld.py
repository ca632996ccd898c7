"""The Drinfeld pairing between the positive and negative halves, its
determinants on graded components with cyclotomic-unit certificates, and
radical computations at specializations.

The pairing is computed on free words by stripping letters off the f-side:
    tau(x, f_i y') = -(q_i - q_i^-1)^-1 * tau(r'_{i,+}(x), y'),
anchored at tau(1,1) = 1, with tau vanishing across different contents.
Internally the recursion tracks the *normalized* pairing
    tau^(x, y) = tau(x, y) * prod_{letters i of y} (-(q_i - q_i^-1)),
which stays inside Z[q,q^-1]; the trailing unit is divided back in only when
a rational value is requested.  The same normalization makes specialization
at any nonzero z exact, which is what the radical reports use.

Values are computed on free words and rely on the pairing vanishing on the
Serre ideal (the quotient well-definedness checked in the test suite) rather
than on reducing arguments first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .borel import BorelAlgebra, word_content
from .linalg import bareiss_det, bareiss_rank, field_kernel
from .qarith import (
    FpPoly,
    LaurentInt,
    RatQ,
    UnitCertificate,
    certify_unit,
    specialize,
)
from .rootdata import box, ht, is_nonneg


@dataclass
class PairingData:
    """Pairing matrix of one graded component in the chosen word bases."""

    gamma: tuple
    x_words: list                 # e-side basis words (rows)
    y_words: list                 # f-side basis words (columns)
    normalized_matrix: list       # LaurentInt entries: tau * clearing unit
    clearing_unit: LaurentInt     # prod over letters of -(q_i - q_i^-1)
    det: RatQ
    certificate: UnitCertificate

    @property
    def dim(self) -> int:
        return len(self.x_words)

    @property
    def matrix(self):
        """Rational pairing values tau(x_r, y_s)."""
        inv = RatQ(1, self.clearing_unit)
        return [[RatQ(v) * inv for v in row] for row in self.normalized_matrix]


@dataclass
class RadicalReport:
    """Exact rank/kernel of one specialized pairing component.

    kernel vectors are coordinates over the e-side basis words: the left
    kernel of the matrix, i.e. the positive-side radical slice.
    """

    gamma: tuple
    z: object
    dim: int
    rank: int
    kernel_dim: int
    kernel_basis: list


class DrinfeldPairing:
    """Pairing engine bound to one BorelAlgebra (and its caches)."""

    def __init__(self, borel: BorelAlgebra):
        self.borel = borel
        self.datum = borel.datum
        self._memo_left = {}
        self._memo_right = {}
        self._matrices = {}

    # -- units ---------------------------------------------------------------
    def letter_unit(self, i: int) -> LaurentInt:
        """-(q_i - q_i^-1): the inverse factor each f-letter contributes."""
        d = self.datum.q_exp(i)
        return LaurentInt({d: -1, -d: 1})

    def content_unit(self, gamma) -> LaurentInt:
        out = LaurentInt.one()
        for i, n in enumerate(gamma):
            for _ in range(n):
                out = out * self.letter_unit(i)
        return out

    # -- normalized pairing on words ------------------------------------------
    def tau_normalized(self, x, y) -> LaurentInt:
        """tau(x, y) * content_unit, via the left-strip recursion."""
        if word_content(x, self.datum.rank) != word_content(y, self.datum.rank):
            return LaurentInt.zero()
        return self._tau_left(x, y)

    def _tau_left(self, x, y):
        if not y:
            return LaurentInt.one()
        key = (x, y)
        got = self._memo_left.get(key)
        if got is not None:
            return got
        i, rest = y[0], y[1:]
        total = LaurentInt.zero()
        for w, c in self.borel.r_prime_plus(i, x).items():
            total = total + c * self._tau_left(w, rest)
        self._memo_left[key] = total
        return total

    def tau_normalized_right(self, x, y) -> LaurentInt:
        """Same value computed by stripping from the right via r_{i,+};
        agreement with the left strip is the product/coproduct compatibility
        check."""
        if word_content(x, self.datum.rank) != word_content(y, self.datum.rank):
            return LaurentInt.zero()
        return self._tau_right(x, y)

    def _tau_right(self, x, y):
        if not y:
            return LaurentInt.one()
        key = (x, y)
        got = self._memo_right.get(key)
        if got is not None:
            return got
        i, rest = y[-1], y[:-1]
        total = LaurentInt.zero()
        for w, c in self.borel.r_plus(i, x).items():
            total = total + c * self._tau_right(w, rest)
        self._memo_right[key] = total
        return total

    # -- rational values -------------------------------------------------------
    def pairing_value(self, xcomb, ycomb) -> RatQ:
        """tau on arbitrary combinations of e-words and f-words.

        Cross-content terms vanish; a plain word may be passed as {word: 1}.
        """
        if isinstance(xcomb, tuple):
            xcomb = {xcomb: RatQ.one()}
        if isinstance(ycomb, tuple):
            ycomb = {ycomb: RatQ.one()}
        rank = self.datum.rank
        total = RatQ.zero()
        by_content = {}
        for y, cy in ycomb.items():
            by_content.setdefault(word_content(y, rank), []).append((y, cy))
        for x, cx in xcomb.items():
            cont = word_content(x, rank)
            block = by_content.get(cont)
            if not block:
                continue
            inv_unit = RatQ(1, self.content_unit(cont))
            for y, cy in block:
                t = self.tau_normalized(x, y)
                if t:
                    total = total + RatQ(cx) * RatQ(cy) * RatQ(t) * inv_unit
        return total

    # -- graded matrices ---------------------------------------------------------
    def pairing_matrix(self, gamma) -> PairingData:
        gamma = tuple(gamma)
        got = self._matrices.get(gamma)
        if got is not None:
            return got
        if not is_nonneg(gamma):
            data = PairingData(gamma, [], [], [], LaurentInt.one(),
                               RatQ.one(), certify_unit(RatQ.one()))
            self._matrices[gamma] = data
            return data
        basis = self.borel.component_basis(gamma)
        words = basis.basis_words
        n = basis.dim
        matrix = [[self.tau_normalized(x, y) for y in words] for x in words]
        det_norm = bareiss_det(matrix, LaurentInt.one())
        unit = self.content_unit(gamma)
        det = RatQ(det_norm, unit ** n)
        certificate = certify_unit(det)  # raises NotAUnit on violation
        data = PairingData(
            gamma=gamma,
            x_words=list(words),
            y_words=list(words),
            normalized_matrix=matrix,
            clearing_unit=unit,
            det=det,
            certificate=certificate,
        )
        self._matrices[gamma] = data
        return data

    def pairing_matrix_right_strip(self, gamma):
        """Matrix from the right-strip recursion (consistency oracle)."""
        words = self.borel.component_basis(tuple(gamma)).basis_words
        return [[self.tau_normalized_right(x, y) for y in words] for x in words]

    # -- radicals -----------------------------------------------------------------
    def radical_at(self, gamma, z) -> RadicalReport:
        """Exact rank and kernel of the normalized matrix at q = z.

        Normalization is by units of the base ring extended by (q^n - 1)^-1,
        so away from roots of unity the kernel dimension equals the dimension
        of the positive-side radical slice.
        """
        data = self.pairing_matrix(gamma)
        z = Fraction(z)
        if z == 0:
            raise ValueError("specialization point must be nonzero")
        from .qarith import _warn_if_root_of_unity
        _warn_if_root_of_unity(z)
        spec = [[v.evaluate(z) for v in row] for row in data.normalized_matrix]
        n = data.dim
        # left kernel: vectors v with sum_r v_r * spec[r][s] = 0 for all s
        transpose = [[spec[r][s] for r in range(n)] for s in range(n)]
        kernel = field_kernel(transpose, Fraction(0), Fraction(1))
        for v in kernel:
            for s in range(n):
                assert sum(v[r] * spec[r][s] for r in range(n)) == 0
        return RadicalReport(
            gamma=tuple(gamma), z=z, dim=n,
            rank=n - len(kernel), kernel_dim=len(kernel), kernel_basis=kernel,
        )

    def radical_function_field(self, gamma, p: int) -> RadicalReport:
        """Radical over the rational-function field GF(p)(t) at q = t.

        Rows are scaled by powers of t (units) to land in GF(p)[t]; the rank
        is then fraction-free."""
        data = self.pairing_matrix(gamma)
        n = data.dim
        one = FpPoly([1], p)
        rows = []
        for row in data.normalized_matrix:
            vals = [v.fp_coeffs(p) if v else ([], 0) for v in row]
            shift = min((s for c, s in vals if c), default=0)
            fr = []
            for c, s in vals:
                fr.append(FpPoly([0] * (s - shift) + c, p) if c else FpPoly([], p))
            rows.append(fr)
        rank = bareiss_rank(rows, one)
        return RadicalReport(
            gamma=tuple(gamma), z=f"GF({p})(t), q=t", dim=n,
            rank=rank, kernel_dim=n - rank, kernel_basis=[],
        )

    # -- aggregated verification -----------------------------------------------------
    def verify_nondegenerate(self, height: int, zs=(Fraction(2), Fraction(1, 3))):
        """Certificate + radical check for every gamma in the height box.

        Returns a list of per-gamma records; failures are collected, never
        raised, so one report covers the whole sweep.
        """
        records = []
        for gamma in box(self.datum.rank, height):
            rec = {"gamma": gamma, "ok": True, "detail": ""}
            try:
                data = self.pairing_matrix(gamma)
            except Exception as exc:  # NotAUnit or elimination failure
                rec["ok"] = False
                rec["detail"] = f"certificate failed: {exc}"
                records.append(rec)
                continue
            rec["dim"] = data.dim
            rec["certificate"] = str(data.certificate)
            if not data.det:
                rec["ok"] = False
                rec["detail"] = "determinant vanishes generically"
                records.append(rec)
                continue
            notes = []
            for z in zs:
                z = Fraction(z)
                if z in (1, -1):
                    notes.append(f"z={z} skipped (root of unity)")
                    continue
                rep = self.radical_at(gamma, z)
                if rep.kernel_dim != 0:
                    rec["ok"] = False
                    notes.append(f"kernel_dim={rep.kernel_dim} at z={z}")
                else:
                    notes.append(f"z={z} ok")
            rec["detail"] = "; ".join(notes)
            records.append(rec)
        return records

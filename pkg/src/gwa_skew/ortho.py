"""Orthogonality certificates for systems of skew derivations.

A family (d_1, ..., d_r) is orthogonal when finite sets {a_it}, {b_it}
exist with

    sum_t a_it d_k(b_it) = delta_ik        for all i, k.

`OrthoCertificate` stores those witness pairs; `verify_certificate`
re-evaluates every sum with exact arithmetic.  The constructor
`certificate_from_ideal` builds a certificate row by row from a designated
generator b_i in {x, y} per derivation:

  * when every other derivation kills b_i, the row value v = d_i(b_i) is a
    single term p(h) * x^e (or the y-side mirror); multiplying by y^e on
    the left and on the right lands two polynomials in K[h], and a Bezout
    identity between them (they must be coprime) produces the witnesses;
  * otherwise (for pairs sharing the same coarseness) the row combines
    flanked values of d_i on BOTH generators, with the flank coefficients
    chosen so that the combination annihilates the companion derivation;
    the two landed polynomials again feed the extended Euclidean algorithm.

Intermediate witnesses with a right-hand flank c are turned into plain
pairs via the twisted Leibniz rule:

    a * d_k(b) * sigma_k(sigma_i^{-1}(c))
        = a * d_k(b sigma_i^{-1}(c)) - a b * d_k(sigma_i^{-1}(c)),

so each triple (a, b, c) contributes the pairs (a, b sigma_i^{-1}(c)) and
(-a b, sigma_i^{-1}(c)).  Every constructed certificate is re-verified
before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .derivations import SkewDerivation, TwistedPolyDerivation, elementary_derivation
from .disc_plane import q_int
from .gwa import GwaAlgebra, GwaElement, sigma_mu
from .poly import Poly, extended_gcd


class CertificateError(ValueError):
    """Certificate construction failed; `gcd` is set when coprimality broke."""

    def __init__(self, message: str, gcd: Poly | None = None):
        super().__init__(message)
        self.gcd = gcd


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class OrthoCertificate:
    """Witness pairs per derivation: rows[i] = ((a_t, b_t), ...)."""

    rows: tuple[tuple[tuple[GwaElement, GwaElement], ...], ...]


@dataclass
class CertificateCheck:
    ok: bool
    failures: list[tuple[int, int, GwaElement]] = field(default_factory=list)


def verify_certificate(
    cert: OrthoCertificate, system: list[SkewDerivation], A: GwaAlgebra
) -> CertificateCheck:
    """Exactly evaluate sum_t a_it d_k(b_it) against delta_ik.

    Failures are reported as (i, k, residual) with 1-based indices.
    """
    if len(cert.rows) != len(system):
        raise CertificateError("certificate and system sizes differ")
    check = CertificateCheck(True)
    for i, row in enumerate(cert.rows):
        for k, d in enumerate(system):
            total = A.zero()
            for a, b in row:
                total = total + a * d.evaluate(b)
            expected = A.one() if i == k else A.zero()
            if total != expected:
                check.ok = False
                check.failures.append((i + 1, k + 1, total - expected))
    return check


def _scalar_of(e: GwaElement) -> Fraction | None:
    """The scalar c when e = c * 1, else None."""
    if e.is_zero():
        return Fraction(0)
    if set(e.terms) == {0} and e.coeff(0).is_constant():
        return e.coeff(0).coeffs[0]
    return None


def triples_to_pairs(
    triples: list[tuple[GwaElement, GwaElement, GwaElement]], mu: Fraction
) -> list[tuple[GwaElement, GwaElement]]:
    """Convert flanked witnesses (a, b, c) to plain pairs via the Leibniz rule.

    A scalar flank folds into the left witness; the pair (-a b, scalar) it
    would produce pairs every derivation with a constant and contributes 0.
    """
    pairs = []
    for a, b, c in triples:
        if a.is_zero():
            continue
        c_back = sigma_mu(c, mu, exponent=-1)
        scalar = _scalar_of(c_back)
        if scalar is not None:
            if scalar != 0:
                pairs.append((scalar * a, b))
        else:
            pairs.append((a, b * c_back))
            pairs.append((-(a * b), c_back))
    return pairs


# -- row construction ---------------------------------------------------------


def _single_term_or_zero(e: GwaElement) -> tuple[int, Poly] | None:
    if e.is_zero():
        return None
    return e.single_term()


def _row_triples(
    row_d: SkewDerivation,
    companions: list[SkewDerivation],
    gen_deg: int,
    A: GwaAlgebra,
) -> list[tuple[GwaElement, GwaElement, GwaElement]]:
    """Flanked witnesses expressing 1 through row_d while killing companions.

    gen_deg is +1 when the designated generator is x (row values then live
    on the y side) and -1 for y (row values on the x side); `side` is the
    sign of the degrees carried by the row values, and flanks are powers of
    the designated generator (signed degree -side * power).
    """
    side = -gen_deg
    gen_x, gen_y = A.x(), A.y()
    designated = gen_y if gen_deg < 0 else gen_x
    other = gen_x if gen_deg < 0 else gen_y

    def row_value(g: GwaElement) -> GwaElement:
        return row_d.on_x if g == gen_x else row_d.on_y

    def landing_power(g: GwaElement) -> int | None:
        """Power of the row value on g, measured on the landing side."""
        term = _single_term_or_zero(row_value(g))
        if term is None:
            return None
        deg, _ = term
        if deg * side < 0:
            raise CertificateError("row value lies on the wrong side")
        return abs(deg)

    def flank_elem(power: int, coeff: Poly = Poly.one()) -> GwaElement:
        return A.monomial(-side * power, coeff)

    pure = all(
        (c.on_y if gen_deg < 0 else c.on_x).is_zero() for c in companions
    )
    if pure:
        # Every companion kills the designated generator: a single flanked
        # value of row_d on it suffices.
        e = landing_power(designated)
        if e is None:
            raise CertificateError("row derivation kills its own designated generator")
        value = row_value(designated)
        left = (flank_elem(e) * value).poly_part()
        right = (value * flank_elem(e)).poly_part()
        witness = extended_gcd(left, right)
        if not witness.coprime:
            raise CertificateError(
                f"landed polynomials are not coprime (gcd = {witness.g})",
                gcd=witness.g,
            )
        return [
            (flank_elem(e, witness.s), designated, A.one()),
            (A.from_poly(witness.t), designated, flank_elem(e)),
        ]

    # Paired route: some companion keeps the designated generator alive, so
    # the row combination must mix both generator values, with the flank
    # coefficients tuned to cancel on the companion.
    if len(companions) != 1:
        raise CertificateError("combined cancellation only supports pairs")
    comp = companions[0]
    if comp.mu != row_d.mu:
        raise CertificateError(
            "combined cancellation requires matching coarseness in the pair"
        )

    def companion_data(g: GwaElement) -> tuple[Poly, int]:
        """Coefficient and flank-side power of the companion value on g."""
        value = comp.on_x if g == gen_x else comp.on_y
        term = _single_term_or_zero(value)
        if term is None:
            return Poly.zero(), 0
        deg, p = term
        if deg * side > 0:
            raise CertificateError("companion value lies on the wrong side")
        return p, abs(deg)

    e1 = landing_power(other)
    e2 = landing_power(designated)
    if e1 is not None and e2 is not None and e1 != e2 + 2:
        raise CertificateError("row powers are not aligned for cancellation")
    q1, m1 = companion_data(other)
    q2, m2 = companion_data(designated)
    if not q1.is_zero() and not q2.is_zero() and m2 != m1 + 2:
        raise CertificateError("companion powers are not aligned for cancellation")
    if e1 is None and e2 is None:
        raise CertificateError("row derivation vanishes on both generators")
    if e1 is None:
        e1 = e2 + 2
    if e2 is None:
        e2 = e1 - 2
    if e2 < 0:
        raise CertificateError("designated-generator value has too small a degree")
    # q2 != 0 here: a vanishing companion value on the designated generator
    # would have taken the pure route.
    if q1.is_zero():
        left_coeffs = (Poly.one(), Poly.zero())
        right_data = ((Poly.one(), Poly.one()), (Poly.zero(), Poly.one()))
    else:
        left_coeffs = (
            A.phi.apply(q2, -side * e2),
            -A.phi.apply(q1, -side * e1),
        )
        common = extended_gcd(q1, q2).g
        q1_red, q2_red = q1.exact_div(common), q2.exact_div(common)
        right_data = (
            (q2_red, Poly.one()),
            (-Poly.one(), A.phi.apply(q1_red, side * m2)),
        )
    left_triples = [
        (flank_elem(e1, left_coeffs[0]), other, A.one()),
        (flank_elem(e2, left_coeffs[1]), designated, A.one()),
    ]
    right_triples = [
        (A.from_poly(right_data[0][0]), other, flank_elem(e1, right_data[0][1])),
        (A.from_poly(right_data[1][0]), designated, flank_elem(e2, right_data[1][1])),
    ]

    def landed(triples) -> Poly:
        total = A.zero()
        for a, g, c in triples:
            total = total + a * row_value(g) * c
        return total.poly_part()

    left_poly = landed(left_triples)
    right_poly = landed(right_triples)
    if left_poly.is_zero() or right_poly.is_zero():
        raise CertificateError("row combination degenerates to zero")
    bez = extended_gcd(left_poly, right_poly)
    if not bez.coprime:
        raise CertificateError(
            f"landed polynomials are not coprime (gcd = {bez.g})", gcd=bez.g
        )
    scale = lambda s, triples: [
        (A.from_poly(s) * a, g, c) for a, g, c in triples if not (A.from_poly(s) * a).is_zero()
    ]
    return scale(bez.s, left_triples) + scale(bez.t, right_triples)


def certificate_from_ideal(
    b_list: list[GwaElement], system: list[SkewDerivation], A: GwaAlgebra
) -> OrthoCertificate:
    """Build a certificate from one designated generator per derivation.

    b_list[i] must be the generator x or y.  Raises CertificateError when a
    landing pair of polynomials fails to be coprime (the gcd is attached)
    or when the system shape is outside the supported constructions.  The
    returned certificate has been re-verified.
    """
    if len(b_list) != len(system):
        raise CertificateError("b_list and system sizes differ")
    rows = []
    for i, (b, d) in enumerate(zip(b_list, system)):
        if b == A.x():
            gen_deg = 1
        elif b == A.y():
            gen_deg = -1
        else:
            raise CertificateError("designated elements must be the generators x or y")
        companions = [dk for k, dk in enumerate(system) if k != i]
        triples = _row_triples(d, companions, gen_deg, A)
        rows.append(tuple(triples_to_pairs(triples, d.mu)))
    cert = OrthoCertificate(tuple(rows))
    check = verify_certificate(cert, system, A)
    if not check.ok:
        raise CertificateError(f"constructed certificate failed verification: {check.failures}")
    return cert


# -- elementary orthogonal pairs ----------------------------------------------


@dataclass(frozen=True)
class HypothesisCheck:
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class PairHypothesisReport:
    checks: tuple[HypothesisCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[HypothesisCheck]:
        return [c for c in self.checks if not c.ok]


def _coprime_check(label: str, p: Poly, r: Poly) -> HypothesisCheck:
    if p.is_zero() or r.is_zero():
        return HypothesisCheck(label, False, "zero polynomial generates a proper ideal")
    witness = extended_gcd(p, r)
    assert witness.check()
    if witness.coprime:
        return HypothesisCheck(label, True)
    return HypothesisCheck(label, False, f"gcd = {witness.g}")


def elementary_pair(
    m: int,
    n: int,
    alpha_on_h: Poly,
    abar_on_h: Poly,
    A: GwaAlgebra,
    mu: Fraction,
    mubar: Fraction,
) -> tuple[SkewDerivation, SkewDerivation, PairHypothesisReport]:
    """The weight m+1 and weight -(n+1) elementary derivations, plus the
    coprimality/commutation hypotheses guaranteeing their orthogonality.

    Construction never fails on a hypothesis violation -- the derivations
    exist regardless -- the report only flags that orthogonality is not
    guaranteed.  Certificates are then attempted via certificate_from_ideal
    with b_list = (y, x).
    """
    if m < 0 or n < 0:
        raise ValueError("weights need m, n >= 0")
    d = elementary_derivation(m + 1, alpha_on_h, A, mu)
    dbar = elementary_derivation(-(n + 1), abar_on_h, A, mubar)
    alpha = TwistedPolyDerivation(m + 1, alpha_on_h)
    abar = TwistedPolyDerivation(-(n + 1), abar_on_h)
    alpha_a = alpha.apply(A.a, A)
    abar_a = abar.apply(A.a, A)
    checks: list[HypothesisCheck] = []
    N = max(m, n)
    for i in range(1, 2 * N):
        checks.append(_coprime_check(f"a-coprime-phi^{i}(a)", A.a, A.phi.apply(A.a, i)))
    # hypotheses on the positive-weight derivation
    js = list(range(-m - 1, 1)) + list(range(m + 1, 2 * m + 1))
    for j in js:
        checks.append(
            _coprime_check(f"alpha(a)-coprime-phi^{j}(a)", alpha_a, A.phi.apply(A.a, j))
        )
    checks.append(
        _coprime_check(
            "alpha(a)-coprime-shift", alpha_a, A.phi.apply(alpha_a, -m)
        )
    )
    checks.append(
        HypothesisCheck(
            "alpha-twist",
            alpha.twist_condition_ok(A, mu),
            "" if alpha.twist_condition_ok(A, mu) else "commutation with phi fails",
        )
    )
    # hypotheses on the negative-weight derivation
    shifted = A.phi.apply(abar_a, n + 1)
    js = list(range(-n - 1, 1)) + list(range(n + 1, 2 * n + 1))
    for j in js:
        checks.append(
            _coprime_check(
                f"abar(a)-coprime-phi^{j}(a)", shifted, A.phi.apply(A.a, j)
            )
        )
    checks.append(
        _coprime_check("abar(a)-coprime-shift", shifted, A.phi.apply(abar_a, 1))
    )
    checks.append(
        HypothesisCheck(
            "abar-twist",
            abar.twist_condition_ok(A, mubar),
            "" if abar.twist_condition_ok(A, mubar) else "commutation with phi fails",
        )
    )
    return d, dbar, PairHypothesisReport(tuple(checks))


# -- coarseness-q pairs on the disc -------------------------------------------


def q_kl(k: int, l: int, q: Fraction) -> Fraction:
    """The ratio (1 - [k]_q [l]_q q^{-k+1}) / (1 - [k]_q [l]_q)."""
    kl = q_int(k, q) * q_int(l, q)
    den = 1 - kl
    if den == 0:
        raise ValueError(f"q_kl undefined: [k]_q [l]_q = 1 at (k, l) = ({k}, {l})")
    value = (1 - kl * q ** (-k + 1)) / den
    if k == l:
        # cross-check against the reduced closed form
        assert value == q ** (-k) * q_int(k + 1, q) / (q_int(k, q) + 1)
    return value


@dataclass(frozen=True)
class PairConditionReport:
    """Exceptional exponents for a disc pair with powers (m, n).

    violated_exponents collects all i with q_kl = q^i over both orderings
    (k, l) = (m, n) and (n, m); condition2_ok records
    q_kl != q^{2l-2} q_lk for both orderings.
    """

    q_kl: Fraction
    q_lk: Fraction
    violated_exponents: tuple[int, ...]
    condition2_ok: bool

    @property
    def ok(self) -> bool:
        return not self.violated_exponents and self.condition2_ok


def pair_conditions(m: int, n: int, q: Fraction) -> PairConditionReport:
    """Check the exceptional-exponent conditions for the disc pair (m, n)."""
    if m <= 1 or n <= 1:
        raise ValueError("pair conditions require m, n > 1")
    if q == 0 or q == 1 or q == -1:
        raise ValueError("q must avoid {0, 1, -1}")
    violated: set[int] = set()
    cond2 = True
    for k, l in ((m, n), (n, m)):
        value = q_kl(k, l, q)
        exponents = list(range(-2 * k + 3, -k + 2)) + list(range(l, 2 * l - 2)) + [2 * l - 1]
        for i in exponents:
            if value == q**i:
                violated.add(i)
        if value == q ** (2 * l - 2) * q_kl(l, k, q):
            cond2 = False
    return PairConditionReport(
        q_kl(m, n, q), q_kl(n, m, q), tuple(sorted(violated)), cond2
    )


def disc_pair(
    m: int, n: int, c: Fraction, cbar: Fraction, q: Fraction
) -> tuple[SkewDerivation, SkewDerivation]:
    """The coarseness-q pair on the disc

        d(x) = c x^n,               d(y) = -q [n]_q c (1-h) x^{n-2},
        dbar(x) = -q^{-1} [m]_q cbar (1 - q^{-m+2} h) y^{m-2},
        dbar(y) = cbar y^m.

    When pair_conditions(m, n, q) reports no violations, the certificate
    construction with b_list = (y, x) succeeds and verifies.
    """
    if m <= 1 or n <= 1:
        raise ValueError("disc pairs require m, n > 1")
    if c == 0 or cbar == 0:
        raise ValueError("the scalars c and cbar must be nonzero")
    from .derivations import derivation_from_xy

    A = GwaAlgebra.disc(q)
    one_minus_h = Poly([1, -1])
    d = derivation_from_xy(
        A,
        q,
        A.monomial(n, Poly.const(c)),
        A.monomial(n - 2, -q * q_int(n, q) * c * one_minus_h),
    )
    dbar = derivation_from_xy(
        A,
        q,
        A.monomial(-(m - 2), (-q_int(m, q) * cbar / q) * Poly([1, -(q ** (2 - m))])),
        A.monomial(-m, Poly.const(cbar)),
    )
    return d, dbar

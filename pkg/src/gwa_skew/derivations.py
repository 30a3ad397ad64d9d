"""Skew derivations on generalized Weyl algebras, twisted by sigma_mu.

A skew derivation here is a pair (d, sigma_mu) with sigma_mu the
degree-counting automorphism of scalar coarseness mu (identity on K[h],
x -> mu^{-1} x, y -> mu y) and d additive with the twisted Leibniz rule

    d(u v) = d(u) sigma_mu(v) + u d(v).

Such a map is determined by its values on the generators h, x, y; it is
well defined on the algebra exactly when it kills the defining relations,
which `check_relations` verifies with exact arithmetic.  Because both sides
of each r-indexed relation are twisted derivations in r, checking them at
r = h suffices (the tests additionally spot-check r = h^2).

The central constructor `build_derivation` assembles a derivation from a
family of twisted derivations alpha_i of K[h] indexed by integer weights,
plus two polynomials b, c.  The weight-i piece sends K[h] into K[h]*x^i
(resp. K[h]*y^{-i}); the pieces are:

    weight 0:   d(h) = alpha_0(h),      d(x) = c*x,
                d(y) = (alpha_0(a)/a - phi^{-1}(c)) * mu * y
    weight m>0: d(h) = alpha_m(h) x^m,  d(x) = 0,
                d(y) = alpha_m(a) * mu * x^{m-1}
    weight -n:  d(h) = alpha_{-n}(h) y^n,  d(x) = phi(alpha_{-n}(a)) y^{n-1},
                d(y) = 0
    inner by b: d = b*sigma_mu(.) - (.)*b   (vanishes on K[h]).

Admissibility of alpha_i demands alpha_i(phi(h)) = mu * phi(alpha_i(h)),
and at weight 0 the exact divisibility a | alpha_0(a).

Note: for the quantum plane a weight-0 piece with alpha_0(h) = h^d, d >= 1,
is admissible (it divides exactly and passes all relation checks) even
though it sends h to h^d rather than 0; this library admits any candidate
that passes `check_relations` and makes no exhaustiveness claims about
parametrized families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .gwa import GwaAlgebra, GwaElement, Grading, graded_degree, sigma_mu, symmetric_algebra
from .poly import Poly


class DerivationError(ValueError):
    """A candidate derivation violates a structural condition."""


class ClassificationError(ValueError):
    """A derivation is not of the requested parametric form."""


@dataclass(frozen=True)
class TwistedPolyDerivation:
    """The tau-twisted derivation of K[h] with a prescribed value on h.

    For tau = phi^twist_exp, the map alpha(f g) = alpha(f) tau(g) + f alpha(g)
    is determined by p = alpha(h):

        alpha(f) = p * (tau(f) - f) / (tau(h) - h)     if tau != id,
        alpha(f) = p * f'                              if tau = id.

    The quotient is exact because tau(h)^n - h^n is divisible by tau(h) - h.
    For the scaling automorphism phi: h -> q h this is a multiple of the
    q^i-difference quotient (a Jackson derivative).
    """

    twist_exp: int
    on_h: Poly

    def apply(self, p: Poly, A: GwaAlgebra) -> Poly:
        tau_h = A.phi.power(self.twist_exp).h_image()
        if tau_h == Poly.h():
            return self.on_h * p.derivative()
        num = A.phi.apply(p, self.twist_exp) - p
        return self.on_h * num.exact_div(tau_h - Poly.h())

    def twist_condition_ok(self, A: GwaAlgebra, mu: Fraction) -> bool:
        """alpha(phi(h)) = mu * phi(alpha(h)) -- checking at h suffices."""
        lhs = self.apply(A.phi.h_image(), A)
        rhs = mu * A.phi.apply(self.on_h)
        return lhs == rhs


@dataclass(frozen=True)
class SkewDerivation:
    """A sigma_mu-twisted derivation, stored by its values on h, x, y."""

    algebra: GwaAlgebra
    mu: Fraction
    on_h: GwaElement
    on_x: GwaElement
    on_y: GwaElement
    verified: bool = False

    @staticmethod
    def zero(A: GwaAlgebra, mu: Fraction) -> "SkewDerivation":
        z = A.zero()
        return SkewDerivation(A, mu, z, z, z, verified=True)

    def is_zero(self) -> bool:
        return self.on_h.is_zero() and self.on_x.is_zero() and self.on_y.is_zero()

    def __add__(self, other: "SkewDerivation") -> "SkewDerivation":
        if self.algebra != other.algebra or self.mu != other.mu:
            raise DerivationError("can only add derivations with the same twist")
        return SkewDerivation(
            self.algebra,
            self.mu,
            self.on_h + other.on_h,
            self.on_x + other.on_x,
            self.on_y + other.on_y,
            verified=self.verified and other.verified,
        )

    def __neg__(self) -> "SkewDerivation":
        return SkewDerivation(
            self.algebra, self.mu, -self.on_h, -self.on_x, -self.on_y, self.verified
        )

    def __sub__(self, other: "SkewDerivation") -> "SkewDerivation":
        return self + (-other)

    # -- evaluation -----------------------------------------------------

    def _on_poly(self, p: Poly) -> GwaElement:
        """Value on an element of K[h], folded from d(h) by the Leibniz rule."""
        A = self.algebra
        out = A.zero()
        power_val = A.zero()  # d(h^i), starting at i = 0
        h = A.h()
        for i, c in enumerate(p.coeffs):
            if i > 0:
                # d(h^i) = d(h) h^{i-1} + h d(h^{i-1}); sigma fixes K[h]
                power_val = self.on_h * h_pow(A, i - 1) + h * power_val
            if c != 0:
                out = out + c * power_val
        return out

    def _on_gen_power(self, k: int) -> GwaElement:
        """Value on x^k (k > 0) or y^{-k} (k < 0)."""
        A = self.algebra
        if k == 0:
            return A.zero()
        gen, on_gen, step = (A.x(), self.on_x, 1) if k > 0 else (A.y(), self.on_y, -1)
        val = on_gen
        deg = step
        while deg != k:
            # d(g^{j+1}) = d(g) sigma(g^j) + g d(g^j)
            val = on_gen * sigma_mu(A.monomial(deg, Poly.one()), self.mu) + gen * val
            deg += step
        return val

    def evaluate(self, e: GwaElement) -> GwaElement:
        """Apply the derivation to any normal-form element."""
        if e.algebra != self.algebra:
            raise DerivationError("element belongs to a different algebra")
        A = self.algebra
        out = A.zero()
        for k, r in e.terms.items():
            mono = A.monomial(k, Poly.one())
            out = out + self._on_poly(r) * sigma_mu(mono, self.mu) + r * self._on_gen_power(k)
        return out

    __call__ = evaluate


def h_pow(A: GwaAlgebra, i: int) -> GwaElement:
    return A.from_poly(Poly.monomial(1, i))


# -- relation checking --------------------------------------------------


@dataclass
class RelationReport:
    """Outcome of checking a candidate against the defining relations."""

    ok: bool
    violations: list[tuple[str, GwaElement]] = field(default_factory=list)
    derivation: SkewDerivation | None = None


def check_relations(
    A: GwaAlgebra,
    mu: Fraction,
    on_h: GwaElement,
    on_x: GwaElement,
    on_y: GwaElement,
) -> RelationReport:
    """Verify that prescribed generator values define a sigma_mu-derivation.

    Checks d(xy - phi(a)), d(yx - a), d(xh - phi(h)x) and d(yh - phi^{-1}(h)y)
    for exact vanishing and reports the first nonzero residual of each failed
    relation.
    """
    if mu == 0:
        raise DerivationError("coarseness mu must be nonzero")
    cand = SkewDerivation(A, mu, on_h, on_x, on_y, verified=False)
    x, y, h = A.x(), A.y(), A.h()
    sig = lambda e: sigma_mu(e, mu)
    phi_h = A.phi.h_image()
    phi_inv_h = A.phi.inverse().h_image()

    residuals = {
        "xy": on_x * sig(y) + x * on_y - cand._on_poly(A.phi.apply(A.a)),
        "yx": on_y * sig(x) + y * on_x - cand._on_poly(A.a),
        "xh": on_x * sig(h) + x * on_h - cand._on_poly(phi_h) * sig(x) - phi_h * on_x,
        "yh": on_y * sig(h) + y * on_h - cand._on_poly(phi_inv_h) * sig(y) - phi_inv_h * on_y,
    }
    violations = [(name, r) for name, r in residuals.items() if not r.is_zero()]
    if violations:
        return RelationReport(False, violations)
    return RelationReport(
        True, [], SkewDerivation(A, mu, on_h, on_x, on_y, verified=True)
    )


def verified_derivation(
    A: GwaAlgebra,
    mu: Fraction,
    on_h: GwaElement,
    on_x: GwaElement,
    on_y: GwaElement,
) -> SkewDerivation:
    """check_relations, raising on failure; used by constructors."""
    report = check_relations(A, mu, on_h, on_x, on_y)
    if not report.ok:
        name, res = report.violations[0]
        raise DerivationError(f"relation {name} violated, residual {res}")
    return report.derivation


def derivation_from_xy(
    A: GwaAlgebra, mu: Fraction, on_x: GwaElement, on_y: GwaElement
) -> SkewDerivation:
    """Derivation from its values on x and y when a is linear in h.

    d(h) is forced by d(a(h)) = d(y) sigma(x) + y d(x) since a = a0 + a1*h.
    """
    if A.a.degree() != 1:
        raise DerivationError("central element must be linear to infer d(h)")
    d_a = on_y * sigma_mu(A.x(), mu) + A.y() * on_x
    on_h = (1 / A.a.coeffs[1]) * d_a
    return verified_derivation(A, mu, on_h, on_x, on_y)


# -- the weighted-family constructor -----------------------------------


@dataclass(frozen=True)
class WeightData:
    """Input datum for `build_derivation`.

    alphas maps a weight i to alpha_i(h) (zero entries are pruned);
    b and c are the polynomials entering the weight-0 and inner pieces.
    """

    mu: Fraction
    alphas: dict[int, Poly]
    b: Poly = Poly.zero()
    c: Poly = Poly.zero()

    def __post_init__(self):
        pruned = {i: p for i, p in self.alphas.items() if not p.is_zero()}
        object.__setattr__(self, "alphas", pruned)

    def __add__(self, other: "WeightData") -> "WeightData":
        if self.mu != other.mu:
            raise DerivationError("can only add data with the same coarseness")
        alphas = dict(self.alphas)
        for i, p in other.alphas.items():
            alphas[i] = alphas.get(i, Poly.zero()) + p
        return WeightData(self.mu, alphas, self.b + other.b, self.c + other.c)

    def validate(self, A: GwaAlgebra) -> None:
        if self.mu == 0:
            raise DerivationError("coarseness mu must be nonzero")
        for i, p in sorted(self.alphas.items()):
            alpha = TwistedPolyDerivation(i, p)
            if not alpha.twist_condition_ok(A, self.mu):
                raise DerivationError(
                    f"alpha_{i} fails alpha o phi = mu * phi o alpha (on_h = {p})"
                )
        if 0 in self.alphas:
            alpha0_a = TwistedPolyDerivation(0, self.alphas[0]).apply(A.a, A)
            if not A.a.divides(alpha0_a):
                raise DerivationError(
                    f"a does not divide alpha_0(a) = {alpha0_a} (a = {A.a})"
                )


def build_derivation(data: WeightData, A: GwaAlgebra) -> SkewDerivation:
    """Assemble the sigma_mu-derivation attached to weighted data.

        d(h) = sum_m alpha_m(h) x^m + sum_n alpha_{-n}(h) y^n
        d(x) = (c - phi(b) + mu^{-1} b) x + sum_n phi(alpha_{-n}(a)) y^{n-1}
        d(y) = (alpha_0(a)/a - phi^{-1}(c + mu^{-1} b) + b) mu y
               + sum_m alpha_m(a) mu x^{m-1}

    (sums over m >= 1, n >= 1; the inner part b contributes nothing on K[h]
    because the base ring is commutative and sigma acts as the identity).
    The result is re-checked against the defining relations.
    """
    data.validate(A)
    mu, phi = data.mu, A.phi
    on_h = A.zero()
    on_x_terms = A.zero()
    on_y_terms = A.zero()
    quot0 = Poly.zero()
    for i, p in data.alphas.items():
        alpha = TwistedPolyDerivation(i, p)
        on_h = on_h + A.monomial(i, p)
        if i > 0:
            on_y_terms = on_y_terms + A.monomial(i - 1, alpha.apply(A.a, A) * mu)
        elif i < 0:
            on_x_terms = on_x_terms + A.monomial(i + 1, phi.apply(alpha.apply(A.a, A)))
        else:
            quot0 = alpha.apply(A.a, A).exact_div(A.a)
    x_coeff = data.c - phi.apply(data.b) + data.b * (1 / mu)
    y_coeff = quot0 - phi.apply(data.c + data.b * (1 / mu), -1) + data.b
    on_x = A.monomial(1, x_coeff) + on_x_terms
    on_y = A.monomial(-1, y_coeff * mu) + on_y_terms
    deriv = verified_derivation(A, mu, on_h, on_x, on_y)
    return deriv


def elementary_derivation(
    weight: int,
    alpha_on_h: Poly,
    A: GwaAlgebra,
    mu: Fraction,
    c: Poly = Poly.zero(),
) -> SkewDerivation:
    """One weighted piece on its own; c only enters at weight 0."""
    if weight != 0 and not c.is_zero():
        raise DerivationError("the polynomial c only applies at weight 0")
    return build_derivation(WeightData(mu, {weight: alpha_on_h}, Poly.zero(), c), A)


def inner_derivation(b, A: GwaAlgebra, mu: Fraction) -> SkewDerivation:
    """The twisted commutator d_b = b sigma_mu(.) - (.) b, restricted to generators."""
    if isinstance(b, Poly):
        b = A.from_poly(b)
    if b.algebra != A:
        raise DerivationError("witness element belongs to a different algebra")
    def comm(g: GwaElement) -> GwaElement:
        return b * sigma_mu(g, mu) - g * b
    return verified_derivation(A, mu, comm(A.h()), comm(A.x()), comm(A.y()))


# -- Q-twisting of a derivation -----------------------------------------


@dataclass(frozen=True)
class QCheckResult:
    is_q_derivation: bool
    Q: Fraction | None = None


def _scalar_ratio(num: GwaElement, den: GwaElement) -> Fraction | None:
    """Q with num = Q * den, if a single such scalar exists (den nonzero)."""
    if set(num.terms) != set(den.terms):
        return None
    ratio = None
    for k, p in den.terms.items():
        q = num.terms[k]
        if len(q.coeffs) != len(p.coeffs):
            return None
        for cn, cd in zip(q.coeffs, p.coeffs):
            if cd == 0:
                if cn != 0:
                    return None
                continue
            r = cn / cd
            if ratio is None:
                ratio = r
            elif ratio != r:
                return None
    return ratio


def q_check(d: SkewDerivation) -> QCheckResult:
    """Decide whether sigma_mu o d o sigma_mu^{-1} = Q d for a scalar Q.

    Values d(g) = 0 leave Q unconstrained; the zero derivation reports Q = 1
    by convention.  For a single weight-i piece the answer is Q = mu^{-i}.
    """
    mu = d.mu
    conjugated = {
        "h": sigma_mu(d.on_h, mu),
        "x": mu * sigma_mu(d.on_x, mu),
        "y": (1 / mu) * sigma_mu(d.on_y, mu),
    }
    values = {"h": d.on_h, "x": d.on_x, "y": d.on_y}
    Q = None
    for g, val in values.items():
        if val.is_zero():
            if not conjugated[g].is_zero():
                return QCheckResult(False)
            continue
        r = _scalar_ratio(conjugated[g], val)
        if r is None:
            return QCheckResult(False)
        if Q is None:
            Q = r
        elif Q != r:
            return QCheckResult(False)
    return QCheckResult(True, Q if Q is not None else Fraction(1))


# -- classification of one-sided derivations ------------------------------


def classify_positive(d: SkewDerivation, A: GwaAlgebra) -> WeightData:
    """Recover weighted data from a derivation with d(x) = 0 and d(K[h])
    supported in nonnegative degrees.

    The reconstruction re-runs `build_derivation` and demands exact equality,
    so a successful return is a certified round trip.  The mirrored case
    (d(y) = 0, negative support) is reached through the x-y symmetry.
    """
    if not d.on_x.is_zero():
        raise ClassificationError(f"d(x) = {d.on_x} is nonzero")
    negative = [k for k in d.on_h.terms if k < 0]
    if negative:
        raise ClassificationError(
            f"d(h) has negative-degree terms at {sorted(negative)}"
        )
    data = WeightData(d.mu, dict(d.on_h.terms))
    try:
        rebuilt = build_derivation(data, A)
    except DerivationError as exc:
        raise ClassificationError(f"extracted data is inadmissible: {exc}") from exc
    if rebuilt.on_y != d.on_y:
        raise ClassificationError(
            f"d(y) = {d.on_y} differs from reconstruction {rebuilt.on_y}"
        )
    return data


# -- behaviour under gradings ---------------------------------------------


def degree_profile(d: SkewDerivation, G: Grading) -> int | None:
    """The common degree shift of d on h, x, y, or None if inhomogeneous.

    Zero values leave the shift unconstrained; the zero derivation reports 0.
    """
    gen_degrees = {"h": G.w, "x": G.k, "y": G.d - G.k}
    values = {"h": d.on_h, "x": d.on_x, "y": d.on_y}
    shift = None
    for g, val in values.items():
        if val.is_zero():
            continue
        deg = graded_degree(G, val)
        if deg is None:
            return None
        s = deg - gen_degrees[g]
        if shift is None:
            shift = s
        elif shift != s:
            return None
    return shift if shift is not None else 0


# -- finite-order automorphisms -------------------------------------------


@dataclass(frozen=True)
class FiniteOrderData:
    """Data for the constructor available when phi has finite order D.

    pos[m-1] = (alpha_m(h), b_m) feeds degrees m*D (m = 1..M), and
    neg[n-1] = (alphabar_n(h), c_n) degrees -n*D; the alphas are untwisted
    derivations of K[h] (twist exponent 0) subject to
    alpha(phi(h)) = mu * phi(alpha(h)).
    """

    D: int
    mu: Fraction
    pos: tuple[tuple[Poly, Poly], ...] = ()
    neg: tuple[tuple[Poly, Poly], ...] = ()

    def validate(self, A: GwaAlgebra) -> None:
        if self.D < 1:
            raise DerivationError("order D must be a positive integer")
        if not A.phi.power(self.D).is_identity():
            raise DerivationError(f"phi does not have order dividing {self.D}")
        if self.mu == 0:
            raise DerivationError("coarseness mu must be nonzero")
        for p, _ in (*self.pos, *self.neg):
            if not TwistedPolyDerivation(0, p).twist_condition_ok(A, self.mu):
                raise DerivationError(
                    f"alpha with on_h = {p} fails alpha o phi = mu * phi o alpha"
                )


def build_finite_order(data: FiniteOrderData, A: GwaAlgebra) -> SkewDerivation:
    """Derivation supported in degrees that are multiples of the order of phi.

        d(h) = sum_m alpha_m(h) x^{mD} + sum_n alphabar_n(h) y^{nD}
        d(x) = sum_m b_m x^{mD+1}
               + mu^{-1} sum_n (alphabar_n(phi(a)) - phi(c_n) a) y^{nD-1}
        d(y) = mu sum_m (alpha_m(a) - phi^{-1}(b_m) a) x^{mD-1}
               + sum_n c_n y^{nD+1}
    """
    data.validate(A)
    mu, phi, D = data.mu, A.phi, data.D
    on_h, on_x, on_y = A.zero(), A.zero(), A.zero()
    for m, (p, b_m) in enumerate(data.pos, start=1):
        alpha = TwistedPolyDerivation(0, p)
        on_h = on_h + A.monomial(m * D, p)
        on_x = on_x + A.monomial(m * D + 1, b_m)
        coeff = (alpha.apply(A.a, A) - phi.apply(b_m, -1) * A.a) * mu
        on_y = on_y + A.monomial(m * D - 1, coeff)
    for n, (p, c_n) in enumerate(data.neg, start=1):
        alpha = TwistedPolyDerivation(0, p)
        on_h = on_h + A.monomial(-n * D, p)
        coeff = (alpha.apply(phi.apply(A.a), A) - phi.apply(c_n) * A.a) * (1 / mu)
        on_x = on_x + A.monomial(-(n * D - 1), coeff)
        on_y = on_y + A.monomial(-(n * D + 1), c_n)
    return verified_derivation(A, mu, on_h, on_x, on_y)


# -- inner witnesses --------------------------------------------------------


def inner_witness(
    d: SkewDerivation, A: GwaAlgebra, degree_bound: int, poly_bound: int
) -> GwaElement | None:
    """Search for b with d = b sigma_mu(.) - (.) b inside the given bounds.

    The candidate b ranges over sum_{|k| <= degree_bound} p_k(h) X_k with
    deg p_k <= poly_bound; the generator equations become an exact linear
    system in the coefficients of the p_k.  Witnesses are not unique (the
    twisted commutator map has a kernel), so any solution is accepted after
    re-verification; None means no witness exists within the bounds.
    """
    if d.algebra != A:
        raise DerivationError("derivation is over a different algebra")
    mu = d.mu
    generators = {"h": A.h(), "x": A.x(), "y": A.y()}
    columns = []  # (basis element, {gen: commutator value})
    for k in range(-degree_bound, degree_bound + 1):
        for j in range(poly_bound + 1):
            basis = A.monomial(k, Poly.monomial(1, j))
            images = {
                g: basis * sigma_mu(e, mu) - e * basis for g, e in generators.items()
            }
            columns.append((basis, images))

    # Row space: one row per (generator, term degree, h power) that occurs.
    targets = {"h": d.on_h, "x": d.on_x, "y": d.on_y}
    row_keys: list[tuple[str, int, int]] = []
    seen = set()
    def note_rows(g: str, e: GwaElement) -> None:
        for deg, p in e.terms.items():
            for i, c in enumerate(p.coeffs):
                if c != 0 and (g, deg, i) not in seen:
                    seen.add((g, deg, i))
                    row_keys.append((g, deg, i))
    for g in generators:
        note_rows(g, targets[g])
        for _, images in columns:
            note_rows(g, images[g])

    matrix = []
    rhs = []
    for g, deg, i in row_keys:
        matrix.append([images[g].coeff(deg).coeff(i) for _, images in columns])
        rhs.append(targets[g].coeff(deg).coeff(i))
    solution = linalg.solve(matrix, rhs)
    if solution is None:
        return None
    witness = A.zero()
    for coeff, (basis, _) in zip(solution, columns):
        witness = witness + coeff * basis
    rebuilt = inner_derivation(witness, A, mu)
    assert (rebuilt.on_h, rebuilt.on_x, rebuilt.on_y) == (d.on_h, d.on_x, d.on_y)
    return witness


# -- transport through the x-y symmetry ------------------------------------


def derivation_through_symmetry(d: SkewDerivation) -> SkewDerivation:
    """Push a derivation to the symmetric algebra (phi(a), phi^{-1}).

    The conjugated twist is degree-counting of coarseness mu^{-1}, and the
    generator values swap and transport coefficientwise.
    """
    A = d.algebra
    image = symmetric_algebra(A)
    move = lambda e: GwaElement(image, {-k: p for k, p in e.terms.items()})
    return verified_derivation(
        image, 1 / d.mu, move(d.on_h), move(d.on_y), move(d.on_x)
    )

"""Degree-one generalized Weyl algebras over K[h], in normal form.

An algebra is determined by a central polynomial `a` and an automorphism
`phi` of K[h]; two extra generators x, y are adjoined subject to

    x*y = phi(a),   y*x = a,   x*r = phi(r)*x,   y*r = phi^{-1}(r)*y.

Every element then has a unique normal form

    sum_{k>0} r_k x^k  +  r_0  +  sum_{l>0} s_l y^l

with K[h]-coefficients written on the left.  `GwaElement` stores the map
signed degree -> coefficient: positive degrees are powers of x, negative
degrees powers of y.  Products are computed with the closed reductions

    x^m y^n = phi^m(a) phi^{m-1}(a) ... phi^{m-t+1}(a) x^{m-t} y^{n-t},
    y^n x^m = phi^{-n+1}(a) ... phi^{-n+t}(a) y^{n-t} x^{m-t},   t = min(m, n),

together with coefficient pull-through x^k * r = phi^k(r) * x^k (valid for
signed k).  The quantum disc (a = 1 - h) and quantum plane (a = h), both
with phi: h -> q*h, are available as presets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import AffineAuto, Poly, Scalar, is_root_of_unity


class AlgebraMismatch(ValueError):
    """Operands belong to different algebras."""


class GwaAlgebra:
    """The data (a, phi) of a generalized Weyl algebra over K[h]."""

    __slots__ = ("label", "a", "phi")

    def __init__(self, a: Poly, phi: AffineAuto, label: str = "custom"):
        if a.is_zero():
            raise ValueError("central element a must be nonzero")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "phi", phi)

    @staticmethod
    def disc(q: Scalar) -> "GwaAlgebra":
        """Quantum disc: xy - q yx = 1 - q, realized as K[h](1-h, h -> qh)."""
        q = Fraction(q)
        if q == 0 or is_root_of_unity(q):
            raise ValueError("disc requires q not in {0, 1, -1}")
        return GwaAlgebra(Poly([1, -1]), AffineAuto.scaling(q), "disc")

    @staticmethod
    def plane(q: Scalar) -> "GwaAlgebra":
        """Quantum plane: xy = q yx, realized as K[h](h, h -> qh)."""
        q = Fraction(q)
        if q == 0 or is_root_of_unity(q):
            raise ValueError("plane requires q not in {0, 1, -1}")
        return GwaAlgebra(Poly([0, 1]), AffineAuto.scaling(q), "plane")

    @property
    def q(self) -> Fraction | None:
        """Scaling factor of phi when phi is h -> q*h, else None."""
        return self.phi.u if self.phi.v == 0 else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GwaAlgebra)
            and self.a == other.a
            and self.phi == other.phi
            and self.label == other.label
        )

    def __hash__(self) -> int:
        return hash((self.label, self.a, self.phi))

    def __repr__(self) -> str:
        return f"GwaAlgebra({self.label}: a={self.a}, phi(h)={self.phi.h_image()})"

    # -- element factories ---------------------------------------------

    def zero(self) -> "GwaElement":
        return GwaElement(self, {})

    def one(self) -> "GwaElement":
        return GwaElement(self, {0: Poly.one()})

    def from_poly(self, p: Poly) -> "GwaElement":
        return GwaElement(self, {0: p})

    def from_scalar(self, c: Scalar) -> "GwaElement":
        return GwaElement(self, {0: Poly.const(c)})

    def h(self) -> "GwaElement":
        return self.from_poly(Poly.h())

    def x(self, k: int = 1) -> "GwaElement":
        return self.monomial(k, Poly.one())

    def y(self, k: int = 1) -> "GwaElement":
        return self.monomial(-k, Poly.one())

    def monomial(self, deg: int, coeff: Poly) -> "GwaElement":
        """The element coeff * x^deg (deg > 0) or coeff * y^(-deg) (deg < 0)."""
        return GwaElement(self, {deg: coeff})

    def element(self, terms: dict[int, Poly]) -> "GwaElement":
        return GwaElement(self, dict(terms))

    # -- product of basis monomials --------------------------------------

    def _cross(self, j: int, k: int) -> Poly:
        """Coefficient of X_j * X_k = c * X_{j+k} from the defining relations."""
        if j >= 0 and k >= 0 or j <= 0 and k <= 0:
            return Poly.one()
        if j > 0:  # x^m * y^n
            m, n = j, -k
            t = min(m, n)
            out = Poly.one()
            for i in range(m - t + 1, m + 1):
                out = out * self.phi.apply(self.a, i)
            return out
        # y^n * x^m
        n, m = -j, k
        t = min(m, n)
        out = Poly.one()
        for i in range(-n + 1, -n + t + 1):
            out = out * self.phi.apply(self.a, i)
        return out


class GwaElement:
    """Normal-form element of a generalized Weyl algebra.

    `terms` maps the signed degree k to the left coefficient r_k in K[h];
    zero coefficients are pruned eagerly, so equality is structural.
    Instances are immutable after construction.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GwaAlgebra, terms: dict[int, Poly]):
        object.__setattr__(self, "algebra", algebra)
        pruned = {k: p for k, p in terms.items() if not p.is_zero()}
        object.__setattr__(self, "terms", pruned)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, k: int) -> Poly:
        return self.terms.get(k, Poly.zero())

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def single_term(self) -> tuple[int, Poly]:
        """The (degree, coefficient) pair of a one-term element."""
        if len(self.terms) != 1:
            raise ValueError(f"not a single-term element: {self}")
        [(k, p)] = self.terms.items()
        return k, p

    def poly_part(self) -> Poly:
        """The degree-0 coefficient; element must live in K[h]."""
        if any(k != 0 for k in self.terms):
            raise ValueError(f"element is not in the base ring: {self}")
        return self.coeff(0)

    def _coerce(self, other) -> "GwaElement":
        if isinstance(other, GwaElement):
            if other.algebra != self.algebra:
                raise AlgebraMismatch("elements of different algebras")
            return other
        if isinstance(other, Poly):
            return GwaElement(self.algebra, {0: other})
        if isinstance(other, (int, Fraction)):
            return GwaElement(self.algebra, {0: Poly.const(other)})
        return NotImplemented

    def __add__(self, other) -> "GwaElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, p in o.terms.items():
            out[k] = out.get(k, Poly.zero()) + p
        return GwaElement(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other) -> "GwaElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "GwaElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> "GwaElement":
        return GwaElement(self.algebra, {k: -p for k, p in self.terms.items()})

    def __mul__(self, other) -> "GwaElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        A = self.algebra
        out: dict[int, Poly] = {}
        for j, r in self.terms.items():
            for k, s in o.terms.items():
                c = r * A.phi.apply(s, j) * A._cross(j, k)
                d = j + k
                out[d] = out.get(d, Poly.zero()) + c
        return GwaElement(A, out)

    def __rmul__(self, other) -> "GwaElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, GwaElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in self.degrees():
            p = self.terms[k]
            if k == 0:
                parts.append(f"({p})")
            else:
                gen = f"x^{k}" if k > 0 else f"y^{-k}"
                gen = gen.replace("x^1", "x").replace("y^1", "y")
                parts.append(f"({p})*{gen}")
        return " + ".join(parts)


def gwa_mul(A: GwaAlgebra, e1: GwaElement, e2: GwaElement) -> GwaElement:
    """Exact normal-form product in A."""
    if e1.algebra != A or e2.algebra != A:
        raise AlgebraMismatch("elements do not belong to the given algebra")
    return e1 * e2


def sigma_mu(e: GwaElement, mu: Fraction, exponent: int = 1) -> GwaElement:
    """Degree-counting automorphism of coarseness mu (identity on K[h]).

    Acts as x -> mu^{-1} x and y -> mu y; `exponent` selects a power of it,
    -1 giving the inverse.
    """
    if mu == 0:
        raise ValueError("coarseness must be a unit")
    return GwaElement(
        e.algebra, {k: p * mu ** (-k * exponent) for k, p in e.terms.items()}
    )


@dataclass(frozen=True)
class DegreeCountingAuto:
    """The automorphism sigma_mu: identity on K[h], x -> mu^{-1} x, y -> mu y."""

    mu: Fraction

    def __call__(self, e: GwaElement) -> GwaElement:
        return sigma_mu(e, self.mu)

    def inverse(self, e: GwaElement) -> GwaElement:
        return sigma_mu(e, self.mu, exponent=-1)


# -- gradings ------------------------------------------------------------


@dataclass(frozen=True)
class Grading:
    """(d, k)-type grading: deg h = w, deg x = k, deg y = d - k.

    Homogeneity of the central element forces d = w * deg(a); the disc only
    carries the trivial grading w = 0 while the plane supports w != 0.
    """

    d: int
    k: int
    w: int


def make_grading(A: GwaAlgebra, w: int, k: int) -> Grading:
    """Validate that deg h = w grades A and return the induced grading."""
    if w == 0:
        return Grading(0, k, 0)
    nonzero = [i for i, c in enumerate(A.a.coeffs) if c != 0]
    if len(nonzero) != 1:
        raise ValueError("central element is not homogeneous for w != 0")
    if A.phi.v != 0:
        raise ValueError("automorphism does not preserve the grading")
    return Grading(w * nonzero[0], k, w)


def graded_degree(G: Grading, e: GwaElement) -> int | None:
    """Common total degree of all monomials of e, or None if inhomogeneous."""
    degree = None
    for k, p in e.terms.items():
        gen_deg = k * G.k if k >= 0 else (-k) * (G.d - G.k)
        for i, c in enumerate(p.coeffs):
            if c == 0:
                continue
            d = i * G.w + gen_deg
            if degree is None:
                degree = d
            elif degree != d:
                return None
    return degree


# -- x-y symmetry ----------------------------------------------------------


def symmetric_algebra(A: GwaAlgebra) -> GwaAlgebra:
    """The target algebra of the x-y symmetry: (phi(a), phi^{-1})."""
    return GwaAlgebra(A.phi.apply(A.a), A.phi.inverse(), "custom")


def xy_symmetry(A: GwaAlgebra, e: GwaElement) -> tuple[GwaAlgebra, GwaElement]:
    """Algebra isomorphism swapping x and y, identity on K[h].

    Maps A = K[h](a, phi) onto K[h](phi(a), phi^{-1}); on normal forms it
    negates the degree map and keeps the left coefficients.
    """
    if e.algebra != A:
        raise AlgebraMismatch("element does not belong to the given algebra")
    image = symmetric_algebra(A)
    return image, GwaElement(image, {-k: p for k, p in e.terms.items()})

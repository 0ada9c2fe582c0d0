"""Univariate polynomials and rational functions over a FieldCtx.

Polynomials are stored as coefficient tuples in ascending degree with the
leading coefficient nonzero (the zero polynomial has an empty tuple, degree
-1 by convention).  Rational functions are kept reduced with a monic
denominator, which pins the constant in proportionality tests.

Also provides the Sylvester resultant of two homogeneous forms of a common
formal degree, the single invariant behind "this pair of forms defines a
degree-d map".
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from .errors import (
    ConstantMap,
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    ZeroFunction,
    ZeroPolynomial,
)
from .ff import FieldCtx, FieldElem

if TYPE_CHECKING:  # pragma: no cover
    from .p1 import RatMap


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = [ctx.elem(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (0, 1))

    @classmethod
    def from_roots(cls, ctx, roots):
        """Monic product of (x - r) over the given roots (with multiplicity)."""
        out = cls.one(ctx)
        for r in roots:
            out = out * cls(ctx, (-ctx.elem(r), ctx.one()))
        return out

    # -- basic queries ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FieldElem:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero()

    def _check(self, other: "Poly"):
        if self.ctx.key() != other.ctx.key():
            raise FieldMismatch("polynomials over different fields")

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, FieldElem)):
            c = self.ctx.elem(other)
            return Poly(self.ctx, [a * c for a in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q = [self.ctx.zero()] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        inv_lead = other.leading().inverse()
        while len(r) >= len(other.coeffs):
            c = r[-1] * inv_lead
            shift = len(r) - len(other.coeffs)
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                r[shift + i] = r[shift + i] - c * b
            while r and r[-1].is_zero():
                r.pop()
        return Poly(self.ctx, q), Poly(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        acc, base = Poly.one(self.ctx), self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def pow_mod(self, e: int, m: "Poly") -> "Poly":
        """self^e mod m by square-and-multiply; exponent may be huge."""
        acc, base = Poly.one(self.ctx) % m, self % m
        while e:
            if e & 1:
                acc = (acc * base) % m
            base = (base * base) % m
            e >>= 1
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Poly(self.ctx, [c * inv for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        self._check(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        return Poly(self.ctx, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def eval(self, x) -> FieldElem:
        x = self.ctx.elem(x)
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def roots(self) -> list[FieldElem]:
        """All roots in the coefficient field, with multiplicity.

        A gcd with x^q - x first strips the irrational part, so the
        exhaustive scan only ever evaluates a polynomial whose degree is the
        number of distinct rational roots.  Desk scale assumes q <= ~10^4.
        """
        if self.is_zero():
            raise ZeroPolynomial("roots of the zero polynomial")
        if self.degree == 0:
            return []
        if self.degree == 1:
            return [-self.coeffs[0] / self.coeffs[1]]
        if self.degree == 2 and self.ctx.p != 2:
            a, b, c = self.coeffs[2], self.coeffs[1], self.coeffs[0]
            disc = b * b - 4 * a * c
            root = self.ctx.sqrt(disc)
            if root is None:
                return []
            inv2a = (2 * a).inverse()
            if root.is_zero():
                return [(-b) * inv2a] * 2
            return sorted(((-b + root) * inv2a, (-b - root) * inv2a),
                          key=self.ctx.element_index)
        q = self.ctx.order
        xq = Poly.x(self.ctx).pow_mod(q, self)
        radical = self.gcd(xq - Poly.x(self.ctx))
        found = []
        if radical.degree >= 1:
            for x in self.ctx.elements():
                if radical.eval(x).is_zero():
                    rem = self
                    lin = Poly(self.ctx, (-x, self.ctx.one()))
                    while True:
                        qq, rr = divmod(rem, lin)
                        if not rr.is_zero():
                            break
                        found.append(x)
                        rem = qq
                    if len(found) == self.degree:
                        break
        return found

    # -- identity and display -----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poly)
                and self.ctx.key() == other.ctx.key()
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.key(), self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            if self.ctx.r == 1:
                cs = str(c)
                lead = cs != "1" or i == 0
            else:
                cs = f"({c})"
                lead = True
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*x" if lead else "x")
            else:
                parts.append(f"{cs}*x^{i}" if lead else f"x^{i}")
        return "+".join(parts)

    def __repr__(self):
        return str(self)


def resultant(ctx: FieldCtx, n_form, d_form) -> FieldElem:
    """Sylvester resultant of two forms of the same formal degree d.

    The inputs are coefficient vectors of length d+1 (ints or field
    elements); zero leading coefficients are meaningful, they encode roots
    at infinity.  The resultant vanishes iff the forms share a projective
    root, iff the induced self-map of the line drops below degree d.
    """
    if len(n_form) != len(d_form):
        raise DegreeMismatch("forms must share a formal degree")
    d = len(n_form) - 1
    if d <= 0:
        return ctx.one()
    n = [ctx.elem(c) for c in n_form]
    m = [ctx.elem(c) for c in d_form]
    size = 2 * d
    rows = []
    for i in range(d):
        row = [ctx.zero()] * size
        for j, c in enumerate(reversed(n)):
            row[i + j] = c
        rows.append(row)
    for i in range(d):
        row = [ctx.zero()] * size
        for j, c in enumerate(reversed(m)):
            row[i + j] = c
        rows.append(row)
    # Gaussian elimination; determinant is the product of pivots (sign-tracked)
    det = ctx.one()
    for col in range(size):
        pivot = None
        for rr in range(col, size):
            if not rows[rr][col].is_zero():
                pivot = rr
                break
        if pivot is None:
            return ctx.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det = det * pv
        inv = pv.inverse()
        for rr in range(col + 1, size):
            factor = rows[rr][col] * inv
            if factor.is_zero():
                continue
            for cc in range(col, size):
                rows[rr][cc] = rows[rr][cc] - factor * rows[col][cc]
    return det


class RatFun:
    """A reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        num._check(den)
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        inv = den.leading().inverse()
        self.num = num * inv
        self.den = den * inv

    @classmethod
    def from_poly(cls, f: Poly) -> "RatFun":
        return cls(f, Poly.one(f.ctx))

    @classmethod
    def constant(cls, ctx, c) -> "RatFun":
        return cls(Poly(ctx, (c,)), Poly.one(ctx))

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if other.is_zero():
            raise DivisionByZero("division by the zero function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            return RatFun(self.den, self.num) ** (-e)
        return RatFun(self.num ** e, self.den ** e)

    def __eq__(self, other):
        return (isinstance(other, RatFun)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return str(self)


def ratfun_proportional(phi: RatFun, psi: RatFun) -> Optional[FieldElem]:
    """The constant c with phi = c*psi, or None if the functions differ by
    more than a constant.  Tested by exact cross-multiplied polynomial
    proportionality, so no denominator ever needs to be invertible."""
    if phi.is_zero() or psi.is_zero():
        raise ZeroFunction("proportionality of the zero function")
    a = phi.num * psi.den
    b = psi.num * phi.den
    if a.degree != b.degree:
        return None
    c = a.leading() / b.leading()
    return c if a == b * c else None


def compose_rational(phi: RatFun, m: "RatMap") -> RatFun:
    """The composite phi(m(x)) as a reduced rational function.

    m is a rational self-map of the line given by integer-coefficient
    numerator/denominator over the same prime field; denominators are
    cleared with a common power so the result is exact.
    """
    ctx = phi.ctx
    if m.p != ctx.p:
        raise FieldMismatch("map and function over different characteristics")
    if m.d < 1:
        raise ConstantMap("composition requires a nonconstant map")
    n = Poly(ctx, m.num_coeffs)
    d = Poly(ctx, m.den_coeffs)
    top = max(phi.num.degree, phi.den.degree)
    n_pows = [Poly.one(ctx)]
    d_pows = [Poly.one(ctx)]
    for _ in range(top):
        n_pows.append(n_pows[-1] * n)
        d_pows.append(d_pows[-1] * d)

    def substituted(f: Poly) -> Poly:
        out = Poly.zero(ctx)
        for i in range(f.degree + 1):
            c = f.coeff(i)
            if not c.is_zero():
                out = out + n_pows[i] * d_pows[top - i] * c
        return out

    return RatFun(substituted(phi.num), substituted(phi.den))

"""Points of the projective line, rational self-maps, fibers and ramification.

A rational map of degree d is stored as a pair (N, D) of homogeneous forms
of the *same formal degree* d, as integer coefficient vectors over the
prime field (entry i is the coefficient of X^i Y^{d-i}).  The single
invariant ``resultant(N, D) != 0`` guarantees at once that the map has
degree exactly d and that it is defined everywhere, covering both ways a
written fraction can degenerate (proportional rows and common roots).

Points carry their field context; maps carry only the characteristic, so
one map can be evaluated over every extension of its prime field.
"""

from __future__ import annotations

from typing import Optional

from .errors import (
    DegreeMismatch,
    DegreeZero,
    FieldMismatch,
    InsufficientField,
    MapSyntaxError,
)
from .ff import FieldCtx, FieldElem
from .upoly import Poly, resultant


class ProjPoint:
    """A point of P^1 over a field context: affine (x : 1) or infinity (1 : 0)."""

    __slots__ = ("ctx", "x")

    def __init__(self, ctx: FieldCtx, x: Optional[FieldElem]):
        self.ctx = ctx
        self.x = x

    @classmethod
    def affine(cls, x: FieldElem) -> "ProjPoint":
        return cls(x.ctx, x)

    @classmethod
    def infinity(cls, ctx: FieldCtx) -> "ProjPoint":
        return cls(ctx, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self):
        """Affine points in field element order, infinity last."""
        if self.is_infinity:
            return (1, 0)
        return (0, self.ctx.element_index(self.x))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.ctx.key() != other.ctx.key():
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x

    def __hash__(self):
        if self.is_infinity:
            return hash((self.ctx.key(), "inf"))
        return hash((self.ctx.key(), self.x.coeffs))

    def __str__(self):
        return "inf" if self.is_infinity else str(self.x)

    def __repr__(self):
        return str(self)

    def label(self) -> str:
        """Generator-power label where available, else the plain form."""
        if self.is_infinity:
            return "inf"
        lbl = self.x.gen_label()
        return lbl if lbl is not None else str(self.x)


def _strip(v):
    v = [c for c in v]
    while v and v[-1] == 0:
        v.pop()
    return v


def _int_poly_str(coeffs, var="x") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            xs = var if i == 1 else f"{var}^{i}"
            parts.append(xs if c == 1 else f"{c}*{xs}")
    return "+".join(parts) if parts else "0"


class RatMap:
    """A degree-d rational self-map of P^1 over F_p."""

    __slots__ = ("p", "d", "N", "D")

    def __init__(self, p: int, n_form, d_form):
        if len(n_form) != len(d_form) or len(n_form) < 2:
            raise DegreeMismatch("forms must share a formal degree >= 1")
        self.p = p
        self.d = len(n_form) - 1
        self.N = tuple(c % p for c in n_form)
        self.D = tuple(c % p for c in d_form)
        ctx = FieldCtx(p)
        if resultant(ctx, self.N, self.D).is_zero():
            raise DegreeZero(
                f"({_int_poly_str(self.N)}):({_int_poly_str(self.D)}) does not "
                f"define a degree-{self.d} map (vanishing resultant)")

    @classmethod
    def from_affine(cls, p: int, num, den) -> "RatMap":
        """Map from affine numerator/denominator integer coefficients."""
        num = _strip([c % p for c in num])
        den = _strip([c % p for c in den])
        d = max(len(num), len(den)) - 1
        if d < 1:
            raise DegreeZero("constant fraction does not define a map")
        return cls(p, num + [0] * (d + 1 - len(num)), den + [0] * (d + 1 - len(den)))

    # -- affine views -----------------------------------------------------------

    @property
    def num_coeffs(self):
        return tuple(_strip(self.N))

    @property
    def den_coeffs(self):
        return tuple(_strip(self.D))

    def wronskian_coeffs(self):
        """num'*den - num*den' as integer coefficients mod p.

        Its affine roots are exactly the affine ramification points (tame
        case, which holds throughout since d < p here).
        """
        p = self.p
        num, den = self.num_coeffs, self.den_coeffs
        dnum = [(i * c) % p for i, c in enumerate(num)][1:]
        dden = [(i * c) % p for i, c in enumerate(den)][1:]

        def mul(a, b):
            out = [0] * (len(a) + len(b) - 1) if a and b else []
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] = (out[i + j] + x * y) % p
            return out

        a, b = mul(dnum, list(den)), mul(list(num), dden)
        n = max(len(a), len(b))
        w = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
             for i in range(n)]
        return tuple(_strip(w))

    # -- evaluation ---------------------------------------------------------------

    def eval(self, point: ProjPoint) -> ProjPoint:
        """Evaluate at a point over any extension of F_p.  Total by the
        resultant invariant: (N(P), D(P)) never both vanish."""
        ctx = point.ctx
        if ctx.p != self.p:
            raise FieldMismatch("point has the wrong characteristic")
        if point.is_infinity:
            n_val = ctx.lift(self.N[-1])
            d_val = ctx.lift(self.D[-1])
        else:
            x = point.x
            n_val = ctx.zero()
            for c in reversed(self.N):
                n_val = n_val * x + c
            d_val = ctx.zero()
            for c in reversed(self.D):
                d_val = d_val * x + c
        if d_val.is_zero():
            return ProjPoint.infinity(ctx)
        return ProjPoint.affine(n_val / d_val)

    __call__ = eval

    # -- identity and display -------------------------------------------------------

    def _canonical(self):
        joined = self.N + self.D
        lead = next(c for c in joined if c)
        inv = pow(lead, self.p - 2, self.p)
        return tuple((c * inv) % self.p for c in joined)

    def __eq__(self, other):
        return (isinstance(other, RatMap)
                and self.p == other.p and self.d == other.d
                and self._canonical() == other._canonical())

    def __hash__(self):
        return hash((self.p, self.d, self._canonical()))

    def __str__(self):
        num, den = _int_poly_str(self.num_coeffs), _int_poly_str(self.den_coeffs)
        if den == "1":
            return num
        return f"({num})/({den})"

    def __repr__(self):
        return str(self)


class Mobius(RatMap):
    """An invertible degree-1 map (an automorphism of the line)."""

    def __init__(self, p, n_form, d_form):
        super().__init__(p, n_form, d_form)
        if self.d != 1:
            raise DegreeMismatch("a Moebius map has degree 1")

    @classmethod
    def parse(cls, expr: str, ctx_or_p) -> "Mobius":
        m = map_parse(expr, ctx_or_p)
        return cls(m.p, m.N, m.D)

    @classmethod
    def identity(cls, p: int) -> "Mobius":
        return cls(p, (0, 1), (1, 0))

    def inverse(self) -> "Mobius":
        b, a = self.N
        d, c = self.D
        return Mobius(self.p, (-b, d), (a, -c))


# ---------------------------------------------------------------------------
# expression parsing

_GRAMMAR_VARS = ("x", "y")


def _tokenize(expr: str):
    tokens = []
    i = 0
    while i < len(expr):
        ch = expr[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(expr) and expr[j].isdigit():
                j += 1
            tokens.append(("int", int(expr[i:j])))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
        elif ch.isalpha():
            tokens.append(("var", ch))
            i += 1
        else:
            raise MapSyntaxError(f"unexpected character {ch!r} in {expr!r}")
    tokens.append(("end", None))
    return tokens


class _RatParser:
    """Recursive-descent parser for integer-coefficient rational expressions.

    Works on (num, den) pairs of ascending coefficient lists mod p, so
    fractional constants like 1/9 and products like (x-1)*(x+1) come out
    exactly.  One variable per expression, from {x, y}.
    """

    def __init__(self, expr: str, p: int):
        self.tokens = _tokenize(expr)
        self.pos = 0
        self.p = p
        self.var_seen = None
        self.expr = expr

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise MapSyntaxError(f"expected {kind} at token {self.pos} in {self.expr!r}")
        self.pos += 1
        return tok

    # -- (num, den) arithmetic over F_p ----------------------------------------

    def _mul(self, a, b):
        p = self.p
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
        return _strip(out)

    def _add(self, u, v):
        an, ad = u
        bn, bd = v
        t1, t2 = self._mul(an, bd), self._mul(bn, ad)
        n = max(len(t1), len(t2))
        s = [((t1[i] if i < len(t1) else 0) + (t2[i] if i < len(t2) else 0)) % self.p
             for i in range(n)]
        return (_strip(s), self._mul(ad, bd))

    def _neg(self, u):
        return ([(-c) % self.p for c in u[0]], u[1])

    def parse(self):
        value = self.expr_rule()
        self.take("end")
        num, den = value
        if not den:
            raise MapSyntaxError(f"zero denominator in {self.expr!r}")
        return num, den

    def expr_rule(self):
        value = self.term_rule()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term_rule()
            value = self._add(value, rhs if op == "+" else self._neg(rhs))
        return value

    def term_rule(self):
        value = self.unary_rule()
        while self.peek()[0] in "*/":
            op = self.take()[0]
            rhs = self.unary_rule()
            if op == "*":
                value = (self._mul(value[0], rhs[0]), self._mul(value[1], rhs[1]))
            else:
                if not rhs[0]:
                    raise MapSyntaxError(f"division by zero in {self.expr!r}")
                value = (self._mul(value[0], rhs[1]), self._mul(value[1], rhs[0]))
        return value

    def unary_rule(self):
        if self.peek()[0] == "-":
            self.take()
            return self._neg(self.unary_rule())
        if self.peek()[0] == "+":
            self.take()
            return self.unary_rule()
        return self.power_rule()

    def power_rule(self):
        base = self.atom_rule()
        if self.peek()[0] == "^":
            self.take()
            e = self.take("int")[1]
            num, den = [1], [1]
            for _ in range(e):
                num = self._mul(num, base[0])
                den = self._mul(den, base[1])
            if not den:
                raise MapSyntaxError(f"zero denominator in {self.expr!r}")
            return (num, den)
        return base

    def atom_rule(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            # implicit product: 3x, 3x^2
            if self.peek()[0] == "var":
                var = self.var_atom()
                return (self._mul([val % self.p], var[0]), [1])
            return ([val % self.p], [1])
        if kind == "var":
            return self.var_atom()
        if kind == "(":
            self.take()
            inner = self.expr_rule()
            self.take(")")
            return inner
        raise MapSyntaxError(f"unexpected token in {self.expr!r}")

    def var_atom(self):
        _, name = self.take("var")
        if name not in _GRAMMAR_VARS:
            raise MapSyntaxError(f"unknown variable {name!r} (use one of x, y)")
        if self.var_seen is None:
            self.var_seen = name
        elif self.var_seen != name:
            raise MapSyntaxError("expressions are univariate: mixed variables")
        coeffs = [0, 1]
        if self.peek()[0] == "^":
            self.take()
            e = self.take("int")[1]
            coeffs = [0] * e + [1]
        return (coeffs, [1])


def _ctx_p(ctx_or_p) -> int:
    return ctx_or_p.p if isinstance(ctx_or_p, FieldCtx) else int(ctx_or_p)


def map_parse(expr: str, ctx_or_p) -> RatMap:
    """Parse a map expression such as "(x^2+x)/(3*x-1)" or "y^2"."""
    num, den = _RatParser(expr, _ctx_p(ctx_or_p)).parse()
    return RatMap.from_affine(_ctx_p(ctx_or_p), num, den)


def ratfun_parse(expr: str, ctx: FieldCtx):
    """Parse an expression into a reduced RatFun over the given context."""
    from .upoly import RatFun
    num, den = _RatParser(expr, ctx.p).parse()
    return RatFun(Poly(ctx, num), Poly(ctx, den))


def point_parse(expr: str, ctx: FieldCtx) -> ProjPoint:
    """Parse a point literal: an integer, a fraction like "1/9", "inf",
    or "i" for a square root of -1 (smallest in element order)."""
    s = expr.strip()
    if s in ("inf", "oo", "infinity"):
        return ProjPoint.infinity(ctx)
    if s in ("i", "-i", "+i"):
        for e in ctx.elements():
            if (e * e + 1).is_zero():
                return ProjPoint.affine(-e if s == "-i" else e)
        raise InsufficientField(f"no square root of -1 in {ctx!r}")
    num, den = _RatParser(s, ctx.p).parse()
    if len(num) > 1 or len(den) > 1:
        raise MapSyntaxError(f"{expr!r} is not a point literal")
    n = ctx.lift(num[0] if num else 0)
    d = ctx.lift(den[0])
    return ProjPoint.affine(n / d)


# ---------------------------------------------------------------------------
# fibers and ramification

def fiber_counts(m: RatMap, t: ProjPoint, ctx: FieldCtx):
    """Rational part of the fiber m^{-1}(t) over ctx.

    Returns (counts, missing) where counts maps points to multiplicities in
    the degree-d fiber form t1*N - t0*D and missing is the multiplicity not
    rational over ctx.
    """
    if ctx.p != m.p or t.ctx.key() != ctx.key():
        raise FieldMismatch("fiber target must live over the working field")
    num = Poly(ctx, m.num_coeffs)
    den = Poly(ctx, m.den_coeffs)
    if t.is_infinity:
        f = den
    else:
        f = num - den * t.x
    counts = {}
    inf_mult = m.d - f.degree
    if inf_mult > 0:
        counts[ProjPoint.infinity(ctx)] = inf_mult
    found = inf_mult
    for root in f.roots():
        pt = ProjPoint.affine(root)
        counts[pt] = counts.get(pt, 0) + 1
        found += 1
    return counts, m.d - found


def fiber(m: RatMap, t: ProjPoint, ctx: FieldCtx):
    """The full fiber divisor m*[t]; raises InsufficientField when part of
    the fiber is not rational over ctx (never drops mass silently)."""
    from .divisor import Divisor
    counts, missing = fiber_counts(m, t, ctx)
    if missing:
        raise InsufficientField(
            f"fiber of {t} under {m} has multiplicity {missing} outside {ctx!r}",
            missing=missing)
    return Divisor(ctx, counts)


def point_multiplicity_in_fiber(m: RatMap, point: ProjPoint) -> int:
    """Ramification index e_m(point): multiplicity of the point inside the
    fiber over its own image."""
    ctx = point.ctx
    t = m.eval(point)
    num = Poly(ctx, m.num_coeffs)
    den = Poly(ctx, m.den_coeffs)
    f = den if t.is_infinity else num - den * t.x
    if point.is_infinity:
        return m.d - f.degree
    lin = Poly(ctx, (-point.x, ctx.one()))
    e = 0
    while True:
        q, r = divmod(f, lin)
        if not r.is_zero():
            return e
        e += 1
        f = q


def ramification(m: RatMap, ctx: FieldCtx, strict: bool = True):
    """All points with ramification index e >= 2, as {point: e}.

    Affine candidates are the roots of the Wronskian num'*den - num*den';
    if that polynomial does not split over ctx, some ramification point is
    missing and InsufficientField is raised (with strict=False the rational
    part is returned instead, which is enough to test disjointness from a
    set of rational points).
    """
    w = Poly(ctx, m.wronskian_coeffs())
    out = {}
    if not w.is_zero() and w.degree >= 1:
        roots = w.roots()
        if strict and len(roots) < w.degree:
            raise InsufficientField(
                f"ramification locus of {m} is not rational over {ctx!r}",
                missing=w.degree - len(roots))
        for x in set(roots):
            pt = ProjPoint.affine(x)
            e = point_multiplicity_in_fiber(m, pt)
            if e >= 2:
                out[pt] = e
    inf = ProjPoint.infinity(ctx)
    e = point_multiplicity_in_fiber(m, inf)
    if e >= 2:
        out[inf] = e
    return out


# ---------------------------------------------------------------------------
# Moebius conjugation

def _form_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _form_substitute(form, a_lin, b_lin, p):
    """F(A, B) for a degree-k form F and linear forms A, B."""
    k = len(form) - 1
    a_pows = [[1]]
    b_pows = [[1]]
    for _ in range(k):
        a_pows.append(_form_mul(a_pows[-1], a_lin, p))
        b_pows.append(_form_mul(b_pows[-1], b_lin, p))
    out = [0] * (k + 1)
    for i, c in enumerate(form):
        if c:
            term = _form_mul(a_pows[i], b_pows[k - i], p)
            for j, v in enumerate(term):
                out[j] = (out[j] + c * v) % p
    return out


def mobius_conjugate(m: RatMap, sigma: Mobius, tau: Mobius) -> RatMap:
    """The composite sigma o m o tau, reduced to canonical degree-d forms."""
    p = m.p
    if sigma.p != p or tau.p != p:
        raise FieldMismatch("conjugating maps over a different characteristic")
    inner_n = _form_substitute(m.N, tau.N, tau.D, p)
    inner_d = _form_substitute(m.D, tau.N, tau.D, p)
    s0, s1 = sigma.N
    u0, u1 = sigma.D
    n_out = [(s1 * a + s0 * b) % p for a, b in zip(inner_n, inner_d)]
    d_out = [(u1 * a + u0 * b) % p for a, b in zip(inner_n, inner_d)]
    return RatMap(p, n_out, d_out)

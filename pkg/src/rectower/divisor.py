"""Divisor calculus on the projective line.

A divisor is a finite integer combination of points over an explicit field
context chosen by the caller; operations that would need points outside
that field raise InsufficientField instead of silently dropping mass.
Because the line has trivial divisor class group, every degree-zero
divisor is principal and can be turned back into a rational function,
which is what makes the functional splitting criterion effective here.
"""

from __future__ import annotations

from .errors import InsufficientField, NonzeroDegree, ZeroFunction
from .ff import FieldCtx
from .p1 import ProjPoint, RatMap, fiber_counts
from .upoly import Poly, RatFun


class Divisor:
    __slots__ = ("ctx", "mults")

    def __init__(self, ctx: FieldCtx, mults=None):
        self.ctx = ctx
        self.mults = {p: m for p, m in (mults or {}).items() if m != 0}

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Divisor":
        return cls(ctx, {})

    @classmethod
    def of_set(cls, points, ctx: FieldCtx = None) -> "Divisor":
        """div(S): each point of the (finite) set with multiplicity one."""
        points = list(points)
        if ctx is None:
            if not points:
                raise ValueError("empty set needs an explicit field context")
            ctx = points[0].ctx
        return cls(ctx, {p: 1 for p in points})

    @classmethod
    def single(cls, point: ProjPoint, mult: int = 1) -> "Divisor":
        return cls(point.ctx, {point: mult})

    # -- queries ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return sum(self.mults.values())

    def mult(self, point: ProjPoint) -> int:
        return self.mults.get(point, 0)

    def support(self):
        return sorted(self.mults, key=lambda p: p.sort_key())

    def items(self):
        return [(p, self.mults[p]) for p in self.support()]

    def is_effective(self) -> bool:
        return all(m > 0 for m in self.mults.values())

    def is_zero(self) -> bool:
        return not self.mults

    # -- group operations ------------------------------------------------------

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.mults)
        for p, m in other.mults.items():
            out[p] = out.get(p, 0) + m
        return Divisor(self.ctx, out)

    def __sub__(self, other: "Divisor") -> "Divisor":
        out = dict(self.mults)
        for p, m in other.mults.items():
            out[p] = out.get(p, 0) - m
        return Divisor(self.ctx, out)

    def __neg__(self) -> "Divisor":
        return Divisor(self.ctx, {p: -m for p, m in self.mults.items()})

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.ctx, {p: k * m for p, m in self.mults.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Divisor)
                and self.ctx.key() == other.ctx.key()
                and self.mults == other.mults)

    def __hash__(self):
        return hash((self.ctx.key(), frozenset(self.mults.items())))

    def __str__(self):
        if not self.mults:
            return "0"
        parts = []
        for p, m in self.items():
            if m == 1:
                parts.append(f"[{p}]")
            else:
                parts.append(f"{m}[{p}]")
        return " + ".join(parts)

    def __repr__(self):
        return str(self)

    def to_json_obj(self):
        return [{"point": str(p), "mult": m} for p, m in self.items()]


# ---------------------------------------------------------------------------
# pullback, restricted different, principal divisors

def div_of_set(points, ctx: FieldCtx = None) -> Divisor:
    return Divisor.of_set(points, ctx)


def pullback(m: RatMap, d: Divisor) -> Divisor:
    """m* D, extended linearly over fibers (with multiplicity)."""
    out = Divisor.zero(d.ctx)
    for t, k in d.items():
        counts, missing = fiber_counts(m, t, d.ctx)
        if missing:
            raise InsufficientField(
                f"pullback through {m}: fiber of {t} not rational over {d.ctx!r}",
                missing=missing)
        out = out + Divisor(d.ctx, {p: k * e for p, e in counts.items()})
    return out


def restricted_different(m: RatMap, s0, ctx: FieldCtx = None) -> Divisor:
    """Sum of (e_m(P) - 1) P over the preimage of the point set s0."""
    s0 = sorted(set(s0), key=lambda q: q.sort_key())
    if ctx is None:
        if not s0:
            raise ValueError("empty set needs an explicit field context")
        ctx = s0[0].ctx
    out = Divisor.zero(ctx)
    for t in s0:
        counts, missing = fiber_counts(m, t, ctx)
        if missing:
            raise InsufficientField(
                f"different of {m}: fiber of {t} not rational over {ctx!r}",
                missing=missing)
        out = out + Divisor(ctx, {p: e - 1 for p, e in counts.items() if e >= 2})
    return out


def principal_divisor(phi: RatFun, ctx: FieldCtx = None) -> Divisor:
    """div(phi): zeros minus poles, including the contribution at infinity
    (degree of the denominator minus degree of the numerator)."""
    if phi.is_zero():
        raise ZeroFunction("the zero function has no divisor")
    if ctx is None:
        ctx = phi.ctx
    if ctx.key() != phi.ctx.key():
        raise ValueError("function must be given over the working field")
    out = {}
    for f, sign in ((phi.num, 1), (phi.den, -1)):
        if f.degree == 0:
            continue
        roots = f.roots()
        if len(roots) < f.degree:
            raise InsufficientField(
                f"zeros/poles of {phi} not rational over {ctx!r}",
                missing=f.degree - len(roots))
        for x in roots:
            p = ProjPoint.affine(x)
            out[p] = out.get(p, 0) + sign
    inf_ord = phi.den.degree - phi.num.degree
    if inf_ord:
        p = ProjPoint.infinity(ctx)
        out[p] = out.get(p, 0) + inf_ord
    return Divisor(ctx, out)


def divisor_to_function(d: Divisor) -> RatFun:
    """A function with divisor d (requires deg d = 0; the class group of the
    line is trivial so one always exists).  Normalized with monic numerator
    and denominator, making the result reproducible."""
    if d.degree != 0:
        raise NonzeroDegree(f"divisor has degree {d.degree}, expected 0")
    num = Poly.one(d.ctx)
    den = Poly.one(d.ctx)
    for p, m in d.items():
        if p.is_infinity:
            continue  # accounted for by the degree gap
        lin = Poly(d.ctx, (-p.x, d.ctx.one()))
        if m > 0:
            num = num * lin ** m
        else:
            den = den * lin ** (-m)
    return RatFun(num, den)

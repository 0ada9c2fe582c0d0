"""Exact arithmetic in prime fields F_p and extensions F_{p^r}.

A :class:`FieldCtx` fixes the characteristic p, the extension degree r and,
for r > 1, a monic irreducible modulus of degree r over F_p.  Elements are
residue classes stored as fully reduced coefficient vectors
(c0, ..., c_{r-1}) with every entry in [0, p), so equality of elements is
equality of canonical vectors and elements hash safely.

Everything here is immutable after construction and all operations are
pure; contexts and elements can be shared freely between callers.
"""

from __future__ import annotations

from .errors import (
    CompositeP,
    DegreeMismatch,
    DivisionByZero,
    EvenOrCompositeP,
    FieldMismatch,
    ReducibleModulus,
)


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for machine-word moduli."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {+1, 0, -1}, computed as a^((p-1)/2) mod p."""
    if p == 2 or not is_prime(p):
        raise EvenOrCompositeP(f"{p} is not an odd prime")
    v = pow(a % p, (p - 1) // 2, p)
    return -1 if v == p - 1 else v


# ---------------------------------------------------------------------------
# bare integer-coefficient polynomial helpers mod p (used to validate moduli
# before any FieldCtx exists; coefficients ascending, trailing zeros stripped)

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, m, p):
    f = list(f)
    inv_lead = pow(m[-1], p - 2, p)
    while len(f) >= len(m):
        c = (f[-1] * inv_lead) % p
        shift = len(f) - len(m)
        if c:
            for i, a in enumerate(m):
                f[shift + i] = (f[shift + i] - c * a) % p
        f.pop()
        _ptrim(f)
        if not f:
            break
    return f


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _ppow_xq(k: int, m, p):
    """x^(p^k) reduced mod m, by k rounds of p-th powering."""
    acc = [0, 1]
    for _ in range(k):
        out = [0]
        for i, a in enumerate(acc):
            if a:
                term = [0] * (i * p) + [a]
                L = max(len(out), len(term))
                out = [((out[j] if j < len(out) else 0) + (term[j] if j < len(term) else 0)) % p
                       for j in range(L)]
        acc = _pmod(_ptrim(out), m, p)
    return acc


def _is_irreducible(m, p: int) -> bool:
    """Irreducibility of a monic polynomial m over F_p.

    Degree <= 3 reduces to having no root; otherwise the standard test:
    x^(p^r) = x mod m and gcd(x^(p^(r/l)) - x, m) = 1 for every prime l | r.
    """
    r = len(m) - 1
    if r <= 3:
        return all(sum(c * pow(x, i, p) for i, c in enumerate(m)) % p for x in range(p))
    xq = _ppow_xq(r, m, p)
    minus_x = list(xq)
    while len(minus_x) < 2:
        minus_x.append(0)
    minus_x[1] = (minus_x[1] - 1) % p
    if _ptrim(minus_x):
        return False
    l = 2
    rr = r
    while rr > 1:
        while rr % l:
            l += 1
        g = _ppow_xq(r // l, m, p)
        g = list(g)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if len(_pgcd(m, _ptrim(g), p)) > 1:
            return False
        while rr % l == 0:
            rr //= l
    return True


class FieldCtx:
    """A finite field F_{p^r} as residues modulo a monic irreducible.

    If no modulus is given and r > 1, the lexicographically smallest monic
    irreducible of degree r is chosen (smallest coefficient vector
    (c0, ..., c_{r-1}) of x^r + c_{r-1}x^{r-1} + ... + c0), which makes the
    default deterministic for fixed (p, r) without any polynomial tables.
    """

    __slots__ = ("p", "r", "modulus", "_dlog", "_gen_checked", "_sqrt")

    def __init__(self, p: int, r: int = 1, modulus=None):
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        if r < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {r}")
        self.p = p
        self.r = r
        if r == 1:
            if modulus is not None:
                raise DegreeMismatch("prime field takes no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = self._default_modulus(p, r)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise DegreeMismatch(
                    f"modulus must be monic of degree {r}, got {list(modulus)}")
            if not _is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
            self.modulus = modulus
        self._dlog = None
        self._gen_checked = False
        self._sqrt = None

    @staticmethod
    def _default_modulus(p, r):
        import itertools
        for low in itertools.product(range(p), repeat=r):
            cand = list(low) + [1]
            if _is_irreducible(cand, p):
                return cand
        raise ReducibleModulus(f"no irreducible of degree {r} over F_{p}")  # unreachable

    @property
    def order(self) -> int:
        return self.p ** self.r

    def key(self):
        return (self.p, self.r, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.r == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.r}(mod {self.modulus_str()})"

    def modulus_str(self) -> str:
        if self.modulus is None:
            return ""
        return _coeff_string(self.modulus, "a")

    # -- element construction ------------------------------------------------

    def elem(self, value) -> "FieldElem":
        """Element from an int (constant), a coefficient sequence, or a FieldElem."""
        if isinstance(value, FieldElem):
            if value.ctx.key() != self.key():
                if value.ctx.r == 1 and value.ctx.p == self.p:
                    return self.lift(value.coeffs[0])
                raise FieldMismatch(f"cannot coerce {value!r} into {self!r}")
            return value
        if isinstance(value, int):
            return self.lift(value)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.r:
            raise DegreeMismatch(f"coefficient vector longer than degree {self.r}")
        coeffs += [0] * (self.r - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def lift(self, c: int) -> "FieldElem":
        """The prime-subfield constant c, embedded."""
        return FieldElem(self, (c % self.p,) + (0,) * (self.r - 1))

    def zero(self) -> "FieldElem":
        return self.lift(0)

    def one(self) -> "FieldElem":
        return self.lift(1)

    def gen(self) -> "FieldElem":
        """The residue class of x (only meaningful for r > 1)."""
        if self.r == 1:
            raise DegreeMismatch("prime field has no extension generator")
        return FieldElem(self, (0, 1) + (0,) * (self.r - 2))

    def elements(self):
        """All p^r elements, in the deterministic index order n -> digits of n base p."""
        for n in range(self.order):
            coeffs = []
            m = n
            for _ in range(self.r):
                coeffs.append(m % self.p)
                m //= self.p
            yield FieldElem(self, tuple(coeffs))

    def element_index(self, x: "FieldElem") -> int:
        """Position of x in the elements() order."""
        n = 0
        for c in reversed(x.coeffs):
            n = n * self.p + c
        return n

    # -- internal coefficient arithmetic ------------------------------------

    def _mul(self, a, b):
        p = self.p
        if self.r == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * self.r - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        # reduce x^k for k >= r using x^r = -(m_{r-1}x^{r-1} + ... + m_0)
        for k in range(2 * self.r - 2, self.r - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(self.r):
                    prod[k - self.r + i] = (prod[k - self.r + i] - c * m[i]) % p
            prod[k] = 0
        return tuple(c % p for c in prod[:self.r])

    def sqrt(self, x: "FieldElem"):
        """A square root of x in this field, or None.  The returned root is
        the first one in element order, so results are reproducible.
        Table-based: building the table costs one pass over the field."""
        if self._sqrt is None:
            table = {}
            for e in self.elements():
                sq = (e * e).coeffs
                if sq not in table:
                    table[sq] = e
            self._sqrt = table
        return self._sqrt.get(self.elem(x).coeffs)

    def _dlog_table(self):
        """Discrete logs base the generator x, or None if x does not generate."""
        if self._gen_checked:
            return self._dlog
        self._gen_checked = True
        if self.r == 1:
            return None
        q1 = self.order - 1
        g = self.gen()
        acc = self.one()
        table = {}
        for k in range(q1):
            if acc.coeffs in table:
                break
            table[acc.coeffs] = k
            acc = acc * g
        self._dlog = table if len(table) == q1 else None
        return self._dlog


def _coeff_string(coeffs, var: str) -> str:
    """Canonical serialized form c0+c1*a+...+c_{r-1}*a^{r-1} (all terms explicit)."""
    parts = []
    for i, c in enumerate(coeffs):
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{i}")
    return "+".join(parts)


class FieldElem:
    """An element of a :class:`FieldCtx`, in canonical coefficient form."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- helpers -------------------------------------------------------------

    def _pair(self, other):
        """Both operands over a common field: integers and prime-subfield
        elements are promoted; anything else is a mismatch."""
        if isinstance(other, int):
            return self, self.ctx.lift(other)
        if not isinstance(other, FieldElem):
            return None
        if other.ctx.key() == self.ctx.key():
            return self, other
        if other.ctx.p != self.ctx.p:
            raise FieldMismatch("elements of different characteristics")
        if self.ctx.r == 1 and other.ctx.r > 1:
            return other.ctx.lift(self.coeffs[0]), other
        if other.ctx.r == 1 and self.ctx.r > 1:
            return self, self.ctx.lift(other.coeffs[0])
        raise FieldMismatch("elements of different extensions")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        p = a.ctx.p
        return FieldElem(a.ctx, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        p = a.ctx.p
        return FieldElem(a.ctx, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b - a

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return FieldElem(a.ctx, a.ctx._mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        if self.ctx.r == 1:
            return FieldElem(self.ctx, (pow(self.coeffs[0], self.ctx.p - 2, self.ctx.p),))
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, e: int) -> "FieldElem":
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.ctx.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def frobenius(self) -> "FieldElem":
        """The p-power Frobenius x -> x^p."""
        return self ** self.ctx.p

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.lift(other)
        return (isinstance(other, FieldElem)
                and self.ctx.key() == other.ctx.key()
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p, self.ctx.r, self.ctx.modulus))

    # -- display -------------------------------------------------------------

    def serialize(self) -> str:
        """The canonical coefficient form, e.g. "3+1*a" in F_25."""
        return _coeff_string(self.coeffs, "a")

    def gen_label(self):
        """Power-of-generator label "a^k" when x generates the unit group, else None."""
        table = self.ctx._dlog_table()
        if table is None or self.is_zero():
            return None
        return f"a^{table[self.coeffs]}"

    def __str__(self):
        if self.ctx.r == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                v = "a" if i == 1 else f"a^{i}"
                terms.append(v if c == 1 else f"{c}*{v}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return str(self)

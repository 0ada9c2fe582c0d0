"""The integer coefficient series behind the splitting polynomials.

The central object is the sequence a_n = sum_k C(n,k)^2 C(2k,k), whose
generating series H(x) satisfies

    (1 - 3x)^{-1} H((x^2+x)/(3x-1)) = H(x^2)

and whose degree-(p-1) truncation H_p mod p both inherits a polynomial
form of that equation and is multiplicative over base-p digits
(a_n = prod a_{n_i} mod p).  The truncations are exactly the splitting
polynomials recovered from the correspondence graphs, up to the sign
(-3/p).

Everything is exact: big integers for the series, fractions for the
hypergeometric factor, and residues for the mod-p identities.  The bulk
a_n mod p tables are built from Pascal rows and valuation-tracked central
binomials, independent of the digit identity they are used to test.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np

from .errors import BadPrime
from .ff import FieldCtx, is_prime, legendre
from .upoly import Poly


def coeff_a(n: int) -> int:
    """a_n = sum_{k=0}^{n} C(n,k)^2 C(2k,k), exactly."""
    if n < 0:
        raise ValueError("index must be >= 0")
    return sum(comb(n, k) ** 2 * comb(2 * k, k) for k in range(n + 1))


def _check_prime(p: int) -> int:
    if p < 5 or not is_prime(p):
        raise BadPrime(f"need a prime >= 5, got {p}")
    return p


# ---------------------------------------------------------------------------
# a_n mod p in bulk

_A_MOD_CACHE: dict = {}


def _a_mod_table(p: int, n_max: int) -> np.ndarray:
    """a_n mod p for all n <= n_max.

    C(n,k) mod p comes from the additive Pascal recurrence (numpy rows);
    C(2k,k) mod p from a multiplicative recurrence tracking the exact
    p-adic valuation, so no Lucas-type shortcut is involved anywhere.
    """
    _check_prime(p)
    cached = _A_MOD_CACHE.get(p)
    if cached is not None and len(cached) > n_max:
        return cached
    size = max(n_max + 1, 2 * len(cached) if cached is not None else 0)

    central = np.zeros(size, dtype=np.int64)
    val, unit = 0, 1  # C(2k,k) = unit * p^val with unit known mod p
    for k in range(size):
        central[k] = unit if val == 0 else 0
        num, den = 2 * (2 * k + 1), k + 1
        while num % p == 0:
            num //= p
            val += 1
        while den % p == 0:
            den //= p
            val -= 1
        unit = (unit * num * pow(den, p - 2, p)) % p

    out = np.zeros(size, dtype=np.int64)
    row = np.zeros(size, dtype=np.int64)
    row[0] = 1
    for n in range(size):
        t = row[: n + 1]
        out[n] = int((t * t % p * central[: n + 1]).sum() % p)
        if n + 1 < size:
            row[1: n + 2] = (row[1: n + 2] + row[: n + 1]) % p
    _A_MOD_CACHE[p] = out
    return out


def truncate_H_mod_p(p: int) -> Poly:
    """H_p(x): the mod-p truncation of the series at degree p-1."""
    _check_prime(p)
    table = _a_mod_table(p, p - 1)
    return Poly(FieldCtx(p), [int(c) for c in table[:p]])


def lucas_check(n: int, p: int) -> bool:
    """Whether a_n = prod a_{n_i} mod p over the base-p digits n_i of n.
    Both sides come from the definition-level mod-p table."""
    table = _a_mod_table(p, n)
    prod = 1
    m = n
    while True:
        prod = (prod * int(table[m % p])) % p
        m //= p
        if m == 0:
            break
    return int(table[n]) == prod


# ---------------------------------------------------------------------------
# exact series helpers (lists of coefficients, index = degree, truncated)

def _ser_mul(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if i > order or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] += x * y
    return out


def _ser_inv_one_minus_3x(order):
    """(1 - 3x)^{-1} = sum 3^n x^n."""
    out = [1] * (order + 1)
    for i in range(1, order + 1):
        out[i] = out[i - 1] * 3
    return out


def gauss_hypergeom_coeffs(n_terms: int) -> list:
    """Coefficients of the (1/3, 2/3; 1) hypergeometric series as exact
    fractions: c_0 = 1, c_{k+1} = c_k (k+1/3)(k+2/3)/(k+1)^2."""
    out = [Fraction(1)]
    for k in range(n_terms):
        out.append(out[-1] * (Fraction(1, 3) + k) * (Fraction(2, 3) + k)
                   / ((k + 1) * (k + 1)))
    return out


def ode_residual(coeffs, through: int) -> list:
    """Residual coefficients of x(1-x)F'' + (1-2x)F' - (2/9)F for the series
    with the given coefficients (zero beyond the list), through the given
    order: r_k = (k+1)^2 c_{k+1} - (k^2 + k + 2/9) c_k."""
    c = [Fraction(x) for x in coeffs]

    def at(k):
        return c[k] if 0 <= k < len(c) else Fraction(0)

    return [(k + 1) ** 2 * at(k + 1) - (Fraction(2, 9) + k * k + k) * at(k)
            for k in range(through + 1)]


def ode_check(n: int) -> bool:
    """The hypergeometric factor satisfies its second-order equation through
    order n-2 (exact rational arithmetic)."""
    if n < 3:
        raise ValueError("need order >= 3")
    coeffs = gauss_hypergeom_coeffs(n)
    return all(r == 0 for r in ode_residual(coeffs, n - 2))


def hypergeom_identity_check(n: int) -> bool:
    """Whether the closed form (1-3x)^{-1} F(27x^2(1-x)/(1-3x)^3) expands to
    the series with coefficients a_n, through order n."""
    if n < 1:
        raise ValueError("need order >= 1")
    inv13 = [Fraction(c) for c in _ser_inv_one_minus_3x(n)]
    inv13_cubed = _ser_mul(_ser_mul(inv13, inv13, n), inv13, n)
    arg = _ser_mul([Fraction(0), Fraction(0), Fraction(27), Fraction(-27)],
                   inv13_cubed, n)  # 27x^2(1-x)/(1-3x)^3, valuation 2
    c = gauss_hypergeom_coeffs(n // 2)
    total = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for k, ck in enumerate(c):
        if k:
            power = _ser_mul(power, arg, n)
        for i, v in enumerate(power):
            if v:
                total[i] += ck * v
    rhs = _ser_mul(inv13, total, n)
    return all(rhs[i] == coeff_a(i) for i in range(n + 1))


def series_feq_check(n: int) -> bool:
    """The series functional equation (1-3x)^{-1} H((x^2+x)/(3x-1)) = H(x^2)
    through order n, over exact integers.

    (x^2+x)/(3x-1) = -(x+x^2) sum 3^k x^k has valuation 1, so the
    composition truncates cleanly."""
    if n < 2:
        raise ValueError("need order >= 2")
    geom = _ser_inv_one_minus_3x(n)
    inner = _ser_mul([0, -1, -1], geom, n)
    a = [coeff_a(k) for k in range(n + 1)]
    comp = [a[n]] + [0] * n
    for k in range(n - 1, -1, -1):
        comp = _ser_mul(comp, inner, n)
        comp[0] += a[k]
    lhs = _ser_mul(geom, comp, n)
    return all(lhs[k] == (a[k // 2] if k % 2 == 0 else 0) for k in range(n + 1))


def li_trick_check(p: int, n: int) -> bool:
    """H(x) = H_p(x) H_p(x^p) H_p(x^{p^2}) ... mod p through order n (the
    product form of the truncation congruence; factors stop once p^k > n)."""
    _check_prime(p)
    table = _a_mod_table(p, max(n, p - 1))
    hp = [int(c) for c in table[:p]]
    prod = [1] + [0] * n
    step = 1
    while step <= n:
        spread = [0] * (n + 1)
        for i, c in enumerate(hp):
            if i * step > n:
                break
            spread[i * step] = c
        prod = [c % p for c in _ser_mul(prod, spread, n)]
        step *= p
    return all(prod[k] == int(table[k]) for k in range(n + 1))


# ---------------------------------------------------------------------------
# polynomial functional equations mod p

def _int_poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _strip(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return v


def compose_cleared(h, num, den, p):
    """sum_k h_k num^k den^(deg h - k) mod p: the polynomial obtained from
    h(num/den) after clearing the denominator with den^(deg h)."""
    h = [c % p for c in h]
    d = len(h) - 1
    den_pows = [[1]]
    for _ in range(d):
        den_pows.append(_int_poly_mul(den_pows[-1], den, p))
    out = [h[d] % p] if h else [0]
    for k in range(d - 1, -1, -1):
        out = _int_poly_mul(out, num, p)
        term = [(h[k] * c) % p for c in den_pows[d - k]]
        size = max(len(out), len(term))
        out = [((out[i] if i < len(out) else 0) + (term[i] if i < len(term) else 0)) % p
               for i in range(size)]
    return _strip(out)


def proportional_mod(a, b, p):
    """The constant c with a = c*b in F_p[x], or None."""
    a, b = _strip([x % p for x in a]), _strip([x % p for x in b])
    if not a or not b or len(a) != len(b):
        return None
    c = (a[-1] * pow(b[-1], p - 2, p)) % p
    if all((x - c * y) % p == 0 for x, y in zip(a, b)):
        return c
    return None


def functional_equation_holds(h, num, den, p):
    """Whether den^(deg h) * h(num/den) is proportional to h(x^2) over F_p;
    returns (holds, constant)."""
    lhs = compose_cleared(h, num, den, p)
    rhs = [0] * (2 * len(h) - 1)
    for i, c in enumerate(h):
        rhs[2 * i] = c % p
    c = proportional_mod(lhs, _strip(rhs), p)
    return c is not None, c


def poly_feq_check(p: int):
    """The polynomial functional equation for H_p over F_p:
    (3x-1)^{p-1} H_p((x^2+x)/(3x-1)) ~ H_p(x^2).  Returns (holds, constant
    as a field element)."""
    _check_prime(p)
    table = _a_mod_table(p, p - 1)
    hp = [int(c) for c in table[:p]]
    holds, c = functional_equation_holds(hp, [0, 1, 1], [-1, 3], p)
    ctx = FieldCtx(p)
    return holds, (ctx.lift(c) if c is not None else None)


def h_leading_is_legendre(p: int) -> bool:
    """Leading coefficient of H_p equals the Legendre symbol (-3/p)."""
    table = _a_mod_table(p, p - 1)
    return int(table[p - 1]) == legendre(-3, p) % p

"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients may be ints, Fractions or CycNum values; the helpers only use
ring operations (plus division by the leading coefficient in ``poly_divmod``).
"""

from __future__ import annotations

from fractions import Fraction


def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return poly_trim(out)


def poly_sub(p, q):
    return poly_add(p, [-c for c in q])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_scale(c, p):
    return poly_trim([c * a for a in p])


def poly_divmod(p, q):
    """Quotient and remainder of ``p`` by nonzero ``q``.

    Integer inputs with a monic divisor stay integral; otherwise the division
    by the leading coefficient is done with Fractions.
    """
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_trim(p)
    lead = q[-1]
    if isinstance(lead, int) and lead not in (1, -1):
        lead = Fraction(lead)
    dq = len(q) - 1
    quot = [0] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead if lead not in (1, -1) else r[-1] * lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - c * b
        r = poly_trim(r)
    return poly_trim(quot), r


def poly_eval_scalar(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_inverse_mod(a, m):
    """Inverse of ``a`` modulo ``m`` over the rationals (extended Euclid).

    Raises ZeroDivisionError when ``a`` and ``m`` are not coprime (which for an
    irreducible modulus means ``a`` is zero mod ``m``).
    """
    r0 = [Fraction(c) for c in poly_trim(m)]
    r1 = [Fraction(c) for c in poly_divmod(a, m)[1]]
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("polynomial is not invertible modulo the given modulus")
    inv_c = 1 / r0[0]
    return poly_divmod(poly_scale(inv_c, s0), m)[1]

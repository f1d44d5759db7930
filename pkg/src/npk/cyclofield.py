"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored on the power basis 1, z, ..., z^(phi(m)-1) of the field
generated by the principal root z = exp(2*pi*i/m), reduced modulo the m-th
cyclotomic polynomial.  Internally the coefficients are kept as an integer
vector over one positive common denominator, which is much cheaper than a
vector of Fractions and gives the same unique normal form.

Field labels are canonical conductors (m not congruent to 2 mod 4), so that
Q(zeta_a) is contained in Q(zeta_b) exactly when a divides b.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

import mpmath

from .errors import FieldError
from .poly import poly_divmod, poly_inverse_mod

DEFAULT_PRECISION_BITS = 64


def conductor_normalize(m: int) -> int:
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    return m // 2 if m % 4 == 2 else m


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def euler_phi(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def mobius(m: int) -> int:
    sign, k, p = 1, m, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            sign = -sign
        p += 1
    if k > 1:
        sign = -sign
    return sign


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed by exact division of x^m - 1 by Phi_d for the proper divisors d.
    """
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    p = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        p, r = poly_divmod(p, list(cyclotomic_poly(d)))
        assert not r, "cyclotomic division left a remainder"
    return tuple(int(c) for c in p)


class _Field:
    """Cached per-conductor data: degree, modulus, zero vector, trace weights."""

    def __init__(self, m: int):
        self.m = m
        self.modulus = cyclotomic_poly(m)
        self.degree = len(self.modulus) - 1
        self.zero = (0,) * self.degree
        # Normalized trace of z^j is mu(d)/phi(d) where z^j has exact order d;
        # it does not depend on the ambient field, which makes it a valid hash.
        weights = []
        for j in range(self.degree):
            d = m // math.gcd(j, m)
            weights.append(Fraction(mobius(d), euler_phi(d)))
        self.trace_weights = tuple(weights)

    def reduce(self, arr: list[int]) -> tuple[int, ...]:
        d = self.degree
        mod = self.modulus
        for i in range(len(arr) - 1, d - 1, -1):
            c = arr[i]
            if c:
                base = i - d
                for j in range(d):
                    if mod[j]:
                        arr[base + j] -= c * mod[j]
        if len(arr) < d:
            arr = arr + [0] * (d - len(arr))
        return tuple(arr[:d])


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


def _coerce_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class CycNum:
    """An element of Q(zeta_m).

    ``CycNum(m, coeffs)`` reads ``coeffs[j]`` as the coefficient of zeta_m^j
    for any positive ``m`` and any number of coefficients; the result is
    reduced to the canonical conductor and the unique residue mod Phi_m.
    """

    __slots__ = ("order", "num", "den")

    def __init__(self, m: int = 1, coeffs=()):
        fracs = [_coerce_fraction(c) for c in coeffs]
        den = lcm(*[f.denominator for f in fracs]) if fracs else 1
        ints = [f.numerator * (den // f.denominator) for f in fracs]
        order, num = _fold_powers(m, ints)
        self.order, self.num, self.den = _normalize(order, num, den)

    @classmethod
    def _make(cls, order: int, num, den: int) -> "CycNum":
        obj = object.__new__(cls)
        obj.order, obj.num, obj.den = _normalize(order, num, den)
        return obj

    @classmethod
    def rational(cls, value, m: int = 1) -> "CycNum":
        f = _coerce_fraction(value)
        obj = cls._make(1, (f.numerator,), f.denominator)
        return obj if m == 1 else lift(obj, m)

    @classmethod
    def zero(cls, m: int = 1) -> "CycNum":
        m = conductor_normalize(m)
        return cls._make(m, _field(m).zero, 1)

    @classmethod
    def one(cls, m: int = 1) -> "CycNum":
        return cls.rational(1, m)

    @property
    def degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def normalized_trace(self) -> Fraction:
        """Average of the Galois conjugates; independent of the ambient field."""
        w = _field(self.order).trace_weights
        return sum((c * t for c, t in zip(self.num, w) if c), Fraction(0)) / self.den

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        a, b = _common(self, other)
        if a.den == b.den:
            return CycNum._make(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNum._make(
            a.order,
            [x * b.den + y * a.den for x, y in zip(a.num, b.num)],
            a.den * b.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNum._make(self.order, [-x for x in self.num], self.den)

    def __sub__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        a, b = _common(self, other)
        if a.order == 1:
            return CycNum._make(1, (a.num[0] * b.num[0],), a.den * b.den)
        return CycNum._make(a.order, _mul_reduce(a.order, a.num, b.num), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.order == 1:
            return CycNum._make(1, (self.den,), self.num[0])
        inv = poly_inverse_mod(list(self.num), list(_field(self.order).modulus))
        return CycNum(self.order, [c * self.den for c in inv])

    def __truediv__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycNum.one(self.order)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def galois(self, t: int) -> "CycNum":
        """Image under the automorphism zeta_m -> zeta_m^t."""
        m = self.order
        if math.gcd(t, m) != 1:
            raise ValueError(f"{t} is not a unit modulo {m}")
        powers = [0] * m
        for j, c in enumerate(self.num):
            powers[(j * t) % m] += c
        order, num = _fold_powers(m, powers)
        return CycNum._make(order, num, self.den)

    def conjugate(self) -> "CycNum":
        return self.galois(-1)

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _as_cyc(other)
        if other is NotImplemented:
            return other
        if self.order != other.order:
            a, b = _common(self, other)
            return a.num == b.num and a.den == b.den
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.normalized_trace())

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_rational():
            return f"CycNum({self.to_fraction()})"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z{self.order}^{j}")
        return "CycNum(" + " + ".join(terms) + ")"


def _normalize(order, num, den):
    if den <= 0:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        den = -den
        num = [-x for x in num]
    g = math.gcd(den, *num)
    if g != 1:
        num = [x // g for x in num]
        den //= g
    if not any(num):
        den = 1
    return order, tuple(num), den


def _fold_powers(m: int, ints) -> tuple[int, tuple[int, ...]]:
    """Rewrite sum ints[j]*zeta_m^j in the canonical field, reduced mod Phi."""
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    if m % 4 == 2:
        half = m // 2
        step = (half + 1) // 2  # zeta_m = -zeta_half^step
        arr = [0] * half
        for j, c in enumerate(ints):
            if c:
                sign = -1 if j % 2 else 1
                arr[(j * step) % half] += sign * c
        m = half
    else:
        arr = [0] * m
        for j, c in enumerate(ints):
            if c:
                arr[j % m] += c
    return m, _field(m).reduce(arr)


def _mul_reduce(order: int, x, y) -> tuple[int, ...]:
    d = len(x)
    acc = [0] * (2 * d - 1)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    acc[i + j] += a * b
    return _field(order).reduce(acc)


def _as_cyc(value):
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        f = Fraction(value)
        return CycNum._make(1, (f.numerator,), f.denominator)
    return NotImplemented


def as_cyc(value, m: int | None = None) -> CycNum:
    """Coerce ints, Fractions, rational strings or CycNum into a CycNum."""
    if isinstance(value, CycNum):
        x = value
    else:
        x = CycNum.rational(value)
    return x if m is None else lift(x, m)


def _common(a: CycNum, b: CycNum):
    if a.order == b.order:
        return a, b
    m = lcm(a.order, b.order)
    return lift(a, m), lift(b, m)


def zeta(m: int) -> CycNum:
    """The principal primitive m-th root of unity exp(2*pi*i/m)."""
    return CycNum(m, [0, 1])


@lru_cache(maxsize=None)
def _lift_images(m: int, big: int) -> tuple[tuple[int, ...], ...]:
    step = big // m
    images = []
    for j in range(_field(m).degree):
        arr = [0] * big
        arr[(j * step) % big] = 1
        images.append(_field(big).reduce(arr))
    return tuple(images)


def lift(x: CycNum, m: int) -> CycNum:
    """Coerce ``x`` into Q(zeta_m) via zeta_k -> zeta_m^(m/k)."""
    x = as_cyc(x)
    big = conductor_normalize(m)
    if x.order == big:
        return x
    if big % x.order:
        raise FieldError(f"Q(zeta_{x.order}) is not contained in Q(zeta_{big})")
    if x.order == 1:
        arr = [0] * _field(big).degree
        arr[0] = x.num[0]
        return CycNum._make(big, arr, x.den)
    acc = [0] * _field(big).degree
    for c, img in zip(x.num, _lift_images(x.order, big)):
        if c:
            for i, v in enumerate(img):
                if v:
                    acc[i] += c * v
    return CycNum._make(big, acc, x.den)


def _fraction_inverse(rows):
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def _descent_data(small: int, big: int):
    """Pivot coordinates and inverse block for solving lift(c) = x."""
    images = _lift_images(small, big)  # one row per small-basis element
    k = len(images)
    # choose k big-basis coordinates on which the images are independent
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for col in range(len(images[0])):
        vec = [Fraction(images[i][col]) for i in range(k)]
        for piv, b in zip(chosen, basis):
            lead = next(i for i, v in enumerate(b) if v != 0)
            if vec[lead] != 0:
                f = vec[lead] / b[lead]
                vec = [v - f * w for v, w in zip(vec, b)]
        if any(vec):
            chosen.append(col)
            basis.append(vec)
            if len(chosen) == k:
                break
    square = [[images[i][col] for i in range(k)] for col in chosen]
    return tuple(chosen), _fraction_inverse(square)


def descend(x: CycNum, m: int) -> CycNum:
    """Rewrite ``x`` as an element of Q(zeta_m); FieldError if it is not one."""
    x = as_cyc(x)
    target = conductor_normalize(m)
    if target % x.order == 0:
        return lift(x, target)
    g = math.gcd(target, x.order)
    if g == 1:
        if not x.is_rational():
            raise FieldError(f"{x!r} does not lie in Q(zeta_{target})")
        return CycNum._make(target, (x.num[0],) + _field(target).zero[1:], x.den)
    chosen, inv = _descent_data(g, x.order)
    rhs = [x.num[c] for c in chosen]
    coeffs = [sum(row[j] * rhs[j] for j in range(len(rhs))) for row in inv]
    small = CycNum(g, [c / x.den for c in coeffs])
    if lift(small, x.order) != x:
        raise FieldError(f"{x!r} does not lie in Q(zeta_{target})")
    return lift(small, target)


def in_field(x: CycNum, m: int) -> bool:
    try:
        descend(x, m)
    except FieldError:
        return False
    return True


def omega(n: int, k: int) -> CycNum:
    """The k-th root of x^n = x in the fixed ordering: 0, then zeta_(n-1)^(k-1)."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 0 <= k <= n - 1:
        raise IndexError(f"omega index {k} out of range for n={n}")
    if k == 0:
        return CycNum.zero(n - 1)
    powers = [0] * (k - 1) + [1]
    return CycNum(n - 1, powers)


def precision_bits() -> int:
    return int(os.environ.get("NPK_PRECISION_BITS", DEFAULT_PRECISION_BITS))


def embed_complex(x: CycNum, precision: int | None = None) -> tuple[complex, float]:
    """Numerical value of ``x`` at the principal root, with an absolute error bound.

    The sum is evaluated in ``precision`` bits (default from
    NPK_PRECISION_BITS, else 64); the bound covers the working-precision
    Horner evaluation plus the final rounding to a Python complex.
    """
    x = as_cyc(x)
    bits = precision or precision_bits()
    if x.is_zero():
        return 0j, 0.0
    with mpmath.workprec(bits):
        z = mpmath.expjpi(mpmath.mpf(2) / x.order)
        acc = mpmath.mpc(0)
        for c in reversed(x.num):
            acc = acc * z + c
        value = acc / x.den
        mag = sum(abs(c) for c in x.num) / x.den
        value_c = complex(value)
    err = (2 * len(x.num) + 4) * 2.0 ** (1 - bits) * mag + abs(value_c) * 2.0**-52
    return value_c, err


@dataclass(frozen=True)
class GaloisOrbitSet:
    n: int
    base_order: int
    orbits: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def is_split(self) -> bool:
        return all(len(o) == 1 for o in self.orbits)

    def orbit_of(self, k: int) -> tuple[int, ...]:
        for o in self.orbits:
            if k in o:
                return o
        raise IndexError(f"index {k} is not in 1..{self.n - 1}")

    def to_list(self) -> list[list[int]]:
        return [list(o) for o in self.orbits]


def galois_orbits(n: int, base_order: int) -> GaloisOrbitSet:
    """Orbits of the indices k of omega_k under Gal(Q(zeta_L)/Q(zeta_base)).

    Works on exponents only: omega_k = zeta^(k-1) with zeta of order n-1, and
    the automorphism selected by t sends exponent e to t*e mod n-1.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    d = n - 1
    base = conductor_normalize(base_order)
    big = lcm(d, base)
    units = [t for t in range(1, big + 1) if math.gcd(t, big) == 1 and t % base == 1 % base]
    seen: set[int] = set()
    orbits = []
    for k in range(1, n):
        if k in seen:
            continue
        orbit = sorted({(t * (k - 1)) % d + 1 for t in units})
        seen.update(orbit)
        orbits.append(tuple(orbit))
    return GaloisOrbitSet(n, base, tuple(orbits))

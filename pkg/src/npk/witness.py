"""Machine-checked equivalence certificates between n-potents.

Every constructor verifies the identities of the certificate it returns and
raises VerificationError otherwise, so a returned witness is always valid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, VerificationError
from .exactmat import (
    CycMatrix,
    block,
    det,
    frobenius_norm,
    inverse,
    mat_mul,
    mat_pow,
    mat_scale,
)
from .npotent import require_npotent


def _eye(A: CycMatrix) -> CycMatrix:
    return CycMatrix.identity(A.rows, A.order)


def _zero(A: CycMatrix) -> CycMatrix:
    return CycMatrix.zeros(A.rows, A.cols, A.order)


def _mul(*ms: CycMatrix) -> CycMatrix:
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(out, m)
    return out


@dataclass(frozen=True)
class EquivWitness:
    """Algebraic equivalence e ~a f certified by e = ab and f = ba."""

    e: CycMatrix
    f: CycMatrix
    a: CycMatrix
    b: CycMatrix
    n: int

    def failures(self) -> list[str]:
        bad = []
        if mat_mul(self.a, self.b) != self.e:
            bad.append("ab = e")
        if mat_mul(self.b, self.a) != self.f:
            bad.append("ba = f")
        return bad

    def normalization_failures(self) -> list[str]:
        en = mat_pow(self.e, self.n - 1)
        fn = mat_pow(self.f, self.n - 1)
        bad = []
        if mat_mul(en, self.a) != self.a:
            bad.append("a = e^(n-1) a")
        if mat_mul(self.a, fn) != self.a:
            bad.append("a = a f^(n-1)")
        if mat_mul(fn, self.b) != self.b:
            bad.append("b = f^(n-1) b")
        if mat_mul(self.b, en) != self.b:
            bad.append("b = b e^(n-1)")
        return bad

    def is_normalized(self) -> bool:
        return not self.normalization_failures()

    def verify(self) -> "EquivWitness":
        bad = self.failures()
        if bad:
            raise VerificationError(bad[0])
        return self


@dataclass(frozen=True)
class SimWitness:
    """Similarity z e z^-1 = f with both z and its inverse recorded."""

    e: CycMatrix
    f: CycMatrix
    z: CycMatrix
    z_inv: CycMatrix
    n: int

    def failures(self) -> list[str]:
        bad = []
        ident = _eye(self.z)
        if mat_mul(self.z, self.z_inv) != ident:
            bad.append("z z_inv = 1")
        if mat_mul(self.z_inv, self.z) != ident:
            bad.append("z_inv z = 1")
        if _mul(self.z, self.e, self.z_inv) != self.f:
            bad.append("z e z_inv = f")
        return bad

    def verify(self) -> "SimWitness":
        bad = self.failures()
        if bad:
            raise VerificationError(bad[0])
        return self


def identity_witness(e: CycMatrix, n: int) -> EquivWitness:
    """e ~a e via a = e, b = e^(n-1) (already normalized)."""
    return EquivWitness(e, e, e, mat_pow(e, n - 1), n).verify()


def normalize_algebraic(e, f, a0, b0, n: int) -> EquivWitness:
    """Replace (a0, b0) by (e^(n-1) a0 f^(n-1), f^(n-1) b0 e^(n-1))."""
    raw = EquivWitness(e, f, a0, b0, n)
    bad = raw.failures()
    if bad:
        raise VerificationError(bad[0], f"input witness is invalid: {bad[0]}")
    en = mat_pow(e, n - 1)
    fn = mat_pow(f, n - 1)
    w = EquivWitness(e, f, _mul(en, a0, fn), _mul(fn, b0, en), n).verify()
    bad = w.normalization_failures()
    if bad:
        raise VerificationError(bad[0])
    return w


def compose_transitive(w1: EquivWitness, w2: EquivWitness) -> EquivWitness:
    """From e = ab, f = ba = cd, g = dc build s = a f^(n-2) c, t = d b."""
    if w1.n != w2.n:
        raise ValueError("witnesses use different exponents")
    if w1.f != w2.e:
        raise ValueError("middle terms differ: w1.f != w2.e")
    n = w1.n
    s = _mul(w1.a, mat_pow(w1.f, n - 2), w2.a)
    t = mat_mul(w2.b, w1.b)
    return EquivWitness(w1.e, w2.f, s, t, n).verify()


def from_similarity(e: CycMatrix, z: CycMatrix, n: int) -> EquivWitness:
    """For f = z e z^-1: a = e z^-1 and b = z e^(n-1)."""
    require_npotent(e, n, "e")
    z_inv = inverse(z)
    f = _mul(z, e, z_inv)
    return EquivWitness(e, f, mat_mul(e, z_inv), mat_mul(z, mat_pow(e, n - 1)), n).verify()


def stable_similarity_factors(w: EquivWitness) -> tuple[CycMatrix, CycMatrix]:
    """The involutions u and v whose product conjugates e (+) 0 to f (+) 0."""
    n = w.n
    one_e = _eye(w.e)
    one_f = _eye(w.f)
    en = mat_pow(w.e, n - 1)
    fn = mat_pow(w.f, n - 1)
    u = block([
        [one_f - fn, w.b],
        [mat_mul(w.a, mat_pow(w.f, n - 2)), one_e - en],
    ])
    v = block([
        [one_e - en, en],
        [en, one_e - en],
    ])
    return u, v


def stable_similarity(w: EquivWitness) -> SimWitness:
    """Similarity of e (+) 0 and f (+) 0 in M_2 from a normalized witness."""
    if w.e.shape != w.f.shape:
        raise DimensionError("stable similarity needs e and f of the same size")
    bad = w.failures() + w.normalization_failures()
    if bad:
        raise VerificationError(bad[0], f"witness must be valid and normalized: {bad[0]}")
    u, v = stable_similarity_factors(w)
    ident = _eye(u)
    if mat_mul(u, u) != ident:
        raise VerificationError("u^2 = 1")
    if mat_mul(v, v) != ident:
        raise VerificationError("v^2 = 1")
    zero = _zero(w.e)
    e0 = block([[w.e, zero], [zero, zero]])
    f0 = block([[w.f, zero], [zero, zero]])
    return SimWitness(e0, f0, mat_mul(u, v), mat_mul(v, u), w.n).verify()


def swap_witness(e: CycMatrix, f: CycMatrix, n: int) -> EquivWitness:
    """diag(e, f) ~a diag(f, e) via a = [[0, e], [f, 0]], b = [[0, f^(n-1)], [e^(n-1), 0]]."""
    if e.shape != f.shape:
        raise DimensionError("swap witness needs blocks of equal size")
    require_npotent(e, n, "e")
    require_npotent(f, n, "f")
    z = _zero(e)
    a = block([[z, e], [f, z]])
    b = block([[z, mat_pow(f, n - 1)], [mat_pow(e, n - 1), z]])
    return EquivWitness(block([[e, z], [z, f]]), block([[f, z], [z, e]]), a, b, n).verify()


def absorb_witness(e: CycMatrix, f: CycMatrix, n: int) -> EquivWitness:
    """diag(e, f) ~a diag(e + f, 0) for orthogonal e, f."""
    if e.shape != f.shape:
        raise DimensionError("absorb witness needs blocks of equal size")
    require_npotent(e, n, "e")
    require_npotent(f, n, "f")
    if not (mat_mul(e, f).is_zero() and mat_mul(f, e).is_zero()):
        raise ValueError("e and f are not orthogonal")
    z = _zero(e)
    a = block([[e, z], [f, z]])
    b = block([[mat_pow(e, n - 1), mat_pow(f, n - 1)], [z, z]])
    return EquivWitness(block([[e, z], [z, f]]), block([[e + f, z], [z, z]]), a, b, n).verify()


def sum_witness(w1: EquivWitness, w2: EquivWitness) -> EquivWitness:
    """(a1 + a2, b1 + b2) certifies e1 + e2 ~a f1 + f2 for orthogonal pairs."""
    if w1.n != w2.n:
        raise ValueError("witnesses use different exponents")
    for name, x, y in (("e", w1.e, w2.e), ("f", w1.f, w2.f)):
        if not (mat_mul(x, y).is_zero() and mat_mul(y, x).is_zero()):
            raise ValueError(f"{name}1 and {name}2 are not orthogonal")
    for w in (w1, w2):
        bad = w.normalization_failures()
        if bad:
            raise ValueError(f"witness is not normalized: {bad[0]}")
    return EquivWitness(w1.e + w2.e, w1.f + w2.f, w1.a + w2.a, w1.b + w2.b, w1.n).verify()


def power_difference(e: CycMatrix, f: CycMatrix, j: int) -> CycMatrix:
    """sum_(k=1..j) f^(j-k) (f - e) e^(k-1), which telescopes to f^j - e^j."""
    diff = f - e
    total = CycMatrix.zeros(e.rows, e.cols, e.order)
    for k in range(1, j + 1):
        total = total + _mul(mat_pow(f, j - k), diff, mat_pow(e, k - 1))
    return total


def intertwiner_matrix(e: CycMatrix, f: CycMatrix, n: int) -> CycMatrix:
    """v = e^(n-1) f^(n-1) + (n-1)(1 - e^(n-1))(1 - f^(n-1)) + sum_(k=1..n-2) e^k f^(n-1-k).

    e v = v f holds for any pair of n-potents; the sum is empty when n = 2.
    """
    ident = _eye(e)
    en = mat_pow(e, n - 1)
    fn = mat_pow(f, n - 1)
    v = mat_mul(en, fn) + mat_scale(n - 1, mat_mul(ident - en, ident - fn))
    for k in range(1, n - 1):
        v = v + mat_mul(mat_pow(e, k), mat_pow(f, n - 1 - k))
    return v


def intertwiner(e: CycMatrix, f: CycMatrix, n: int):
    """(v, invertible, sim); when v is invertible, sim conjugates e to f via z = v^-1."""
    if e.shape != f.shape:
        raise DimensionError("intertwiner needs e and f of the same size")
    require_npotent(e, n, "e")
    require_npotent(f, n, "f")
    v = intertwiner_matrix(e, f, n)
    if mat_mul(e, v) != mat_mul(v, f):
        raise VerificationError("e v = v f")
    if det(v).is_zero():
        return v, False, None
    sim = SimWitness(e, f, inverse(v), v, n).verify()
    return v, True, sim


def closeness_bound(e: CycMatrix, n: int) -> float:
    """2(n-1) / ((n^2 + n + 2) (1 + ||e||)^(2n)) in the Frobenius norm."""
    big_m = (1.0 + frobenius_norm(e)) ** (2 * n)
    return 2.0 * (n - 1) / ((n * n + n + 2) * big_m)


def closeness_bound_check(e: CycMatrix, f: CycMatrix, n: int) -> tuple[float, float, bool]:
    bound = closeness_bound(e, n)
    distance = frobenius_norm(e - f)
    return bound, distance, distance < bound

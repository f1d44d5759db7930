"""n-homomorphisms between cyclotomic fields and their action on n-potents.

An additive map between Q-vector spaces is Q-linear, so a map
Q(zeta_s) -> Q(zeta_t) is stored as a rational matrix whose row j is the image
of zeta_s^j on the target power basis.  Both sides of
phi(a_1 ... a_n) = phi(a_1) ... phi(a_n) are Q-multilinear, so checking every
n-tuple of basis elements decides the identity on the whole field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclofield import CycNum, _field, conductor_normalize, descend, lift
from .errors import FieldError, VerificationError
from .exactmat import CycMatrix, mat_mul, mat_pow
from .kgroup import KClass, class_of, representative
from .witness import EquivWitness


@dataclass(frozen=True)
class NHomSpec:
    n: int
    source_order: int
    target_order: int
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = _field(self.source_order).degree
        cols = _field(self.target_order).degree
        if len(self.matrix) != rows or any(len(r) != cols for r in self.matrix):
            raise ValueError(f"map matrix must be {rows}x{cols} for Q(zeta_{self.source_order}) -> Q(zeta_{self.target_order})")

    @classmethod
    def from_rows(cls, n: int, source_order: int, target_order: int, rows: Sequence[Sequence]) -> "NHomSpec":
        return cls(
            n,
            conductor_normalize(source_order),
            conductor_normalize(target_order),
            tuple(tuple(Fraction(v) for v in r) for r in rows),
        )

    @classmethod
    def from_images(cls, n: int, source_order: int, images: Sequence[CycNum], target_order: int) -> "NHomSpec":
        """Map given by the images of 1, zeta_s, ..., zeta_s^(d-1)."""
        t = conductor_normalize(target_order)
        return cls.from_rows(n, source_order, t, [lift(x, t).coeffs for x in images])

    def __call__(self, x) -> CycNum:
        x = descend(CycNum.rational(x) if not isinstance(x, CycNum) else x, self.source_order)
        cols = _field(self.target_order).degree
        out = [Fraction(0)] * cols
        for c, row in zip(x.coeffs, self.matrix):
            if c:
                for j, v in enumerate(row):
                    if v:
                        out[j] += c * v
        return CycNum(self.target_order, out)

    def basis_images(self) -> list[CycNum]:
        return [CycNum(self.target_order, row) for row in self.matrix]


def check_nhom(spec: NHomSpec) -> bool:
    """Exact n-multiplicativity on every n-tuple of power-basis elements."""
    return first_nhom_failure(spec) is None


def first_nhom_failure(spec: NHomSpec):
    d = _field(spec.source_order).degree
    basis = [CycNum(spec.source_order, [0] * j + [1]) for j in range(d)]
    images = spec.basis_images()
    for idx in itertools.product(range(d), repeat=spec.n):
        prod_src = CycNum.one(spec.source_order)
        prod_img = CycNum.one(spec.target_order)
        for j in idx:
            prod_src = prod_src * basis[j]
            prod_img = prod_img * images[j]
        if spec(prod_src) != prod_img:
            return idx
    return None


def is_ring_hom(spec: NHomSpec) -> bool:
    """Unital and multiplicative on basis pairs."""
    if spec(CycNum.one(spec.source_order)) != 1:
        return False
    d = _field(spec.source_order).degree
    basis = [CycNum(spec.source_order, [0] * j + [1]) for j in range(d)]
    for a, b in itertools.product(basis, repeat=2):
        if spec(a * b) != spec(a) * spec(b):
            return False
    return True


def scalar_nhom(c: CycNum, n: int, order: int | None = None) -> NHomSpec:
    """x -> c x on Q(zeta_order) (default: the field of c); an n-hom iff c^n = c."""
    c = c if isinstance(c, CycNum) else CycNum.rational(c)
    m = conductor_normalize(order) if order is not None else c.order
    c = lift(c, m)
    d = _field(m).degree
    images = [c * CycNum(m, [0] * j + [1]) for j in range(d)]
    return NHomSpec.from_images(n, m, images, m)


def identity_nhom(order: int, n: int) -> NHomSpec:
    return scalar_nhom(CycNum.one(order), n, order)


def galois_nhom(t: int, order: int, n: int) -> NHomSpec:
    """The field automorphism zeta -> zeta^t (a ring homomorphism)."""
    m = conductor_normalize(order)
    d = _field(m).degree
    return NHomSpec.from_images(n, m, [CycNum(m, [0] * j + [1]).galois(t) for j in range(d)], m)


def embedding_nhom(source_order: int, target_order: int, n: int) -> NHomSpec:
    """The inclusion Q(zeta_s) -> Q(zeta_t) for s dividing t."""
    s, t = conductor_normalize(source_order), conductor_normalize(target_order)
    if t % s:
        raise FieldError(f"Q(zeta_{s}) is not contained in Q(zeta_{t})")
    d = _field(s).degree
    return NHomSpec.from_images(n, s, [CycNum(s, [0] * j + [1]) for j in range(d)], t)


def compose(outer: NHomSpec, inner: NHomSpec) -> NHomSpec:
    """outer o inner."""
    if inner.target_order != outer.source_order:
        raise FieldError("specs are not composable")
    if inner.n != outer.n:
        raise ValueError("specs use different exponents")
    return NHomSpec.from_images(inner.n, inner.source_order, [outer(x) for x in inner.basis_images()], outer.target_order)


def apply_entrywise(spec: NHomSpec, A: CycMatrix) -> CycMatrix:
    try:
        A = A.descend(spec.source_order)
    except FieldError:
        raise FieldError(f"matrix entries do not lie in the source field Q(zeta_{spec.source_order})")
    return CycMatrix([[spec(x) for x in A.row(i)] for i in range(A.rows)], spec.target_order)


def transport_witness(spec: NHomSpec, w: EquivWitness) -> EquivWitness:
    """phi(e) ~a phi(f) via a' = phi(e a) phi(f)^(n-2) and b' = phi(b)."""
    if spec.n != w.n:
        raise ValueError("spec and witness use different exponents")
    if not check_nhom(spec):
        raise VerificationError("phi(a_1...a_n) = phi(a_1)...phi(a_n)", "spec is not an n-homomorphism")
    w.verify()
    fe = apply_entrywise(spec, w.e)
    ff = apply_entrywise(spec, w.f)
    a_new = mat_mul(apply_entrywise(spec, mat_mul(w.e, w.a)), mat_pow(ff, w.n - 2))
    b_new = apply_entrywise(spec, w.b)
    return EquivWitness(fe, ff, a_new, b_new, w.n).verify()


def induced_kmap(spec: NHomSpec, x: KClass) -> KClass:
    """phi_* on K_0^n, computed through representatives of x+ and x-."""
    if not check_nhom(spec):
        raise VerificationError("phi(a_1...a_n) = phi(a_1)...phi(a_n)", "spec is not an n-homomorphism")
    if x.n != spec.n or x.base_order != spec.source_order:
        raise ValueError("class does not live on the source of the spec")
    pos = apply_entrywise(spec, representative(x.positive_part()))
    neg = apply_entrywise(spec, representative(x.negative_part()))
    return class_of(pos, spec.n, spec.target_order) - class_of(neg, spec.n, spec.target_order)

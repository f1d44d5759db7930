"""K_0^n invariants of n-potent matrices over a cyclotomic base field.

The class of an n-potent e over Q(zeta_base) is recorded by the component
ranks rank(e_k), k >= 1, summed over each Galois orbit of the exponents
(conjugate eigenvalues always occur with equal multiplicity over the base
field).  The zero-eigenvalue component carries no stable information and is
dropped.

Completeness of this invariant on stable similarity classes follows for every
(n, base) from diagonalizability over the splitting field: two n-potents over
a field are similar iff their component ranks agree, and padding by zero
blocks absorbs any difference in rank(e_0).  The group is then the image of
the rank map, one factor |O|Z per orbit O.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cyclofield import GaloisOrbitSet, conductor_normalize, descend, galois_orbits, omega
from .errors import FieldError, UnrealizableError
from .exactmat import CycMatrix, block_diag, mat_scale
from .npotent import (
    are_similar,
    complementary,
    component_ranks,
    is_in_field,
    orbit_block,
    require_npotent,
)


@dataclass(frozen=True)
class KClass:
    n: int
    base_order: int
    orbits: GaloisOrbitSet
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.orbits.orbits):
            raise ValueError("one value per Galois orbit is required")
        for v, o in zip(self.values, self.orbits.orbits):
            if v % len(o):
                raise ValueError(f"value {v} on orbit {list(o)} is not divisible by {len(o)}")

    @classmethod
    def of(cls, n: int, base_order: int, values: Sequence[int]) -> "KClass":
        return cls(n, conductor_normalize(base_order), galois_orbits(n, base_order), tuple(int(v) for v in values))

    @classmethod
    def zero(cls, n: int, base_order: int) -> "KClass":
        orbits = galois_orbits(n, base_order)
        return cls(n, orbits.base_order, orbits, (0,) * len(orbits.orbits))

    def _check(self, other: "KClass"):
        if (self.n, self.base_order) != (other.n, other.base_order):
            raise ValueError(
                f"K-classes of different groups: (n={self.n}, base={self.base_order}) vs "
                f"(n={other.n}, base={other.base_order})"
            )

    def __add__(self, other: "KClass") -> "KClass":
        return kclass_add(self, other)

    def __sub__(self, other: "KClass") -> "KClass":
        return kclass_sub(self, other)

    def __neg__(self) -> "KClass":
        return kclass_neg(self)

    def positive_part(self) -> "KClass":
        return KClass(self.n, self.base_order, self.orbits, tuple(max(v, 0) for v in self.values))

    def negative_part(self) -> "KClass":
        return KClass(self.n, self.base_order, self.orbits, tuple(max(-v, 0) for v in self.values))

    def is_effective(self) -> bool:
        return all(v >= 0 for v in self.values)


def kclass_add(x: KClass, y: KClass) -> KClass:
    x._check(y)
    return KClass(x.n, x.base_order, x.orbits, tuple(a + b for a, b in zip(x.values, y.values)))


def kclass_neg(x: KClass) -> KClass:
    return KClass(x.n, x.base_order, x.orbits, tuple(-a for a in x.values))


def kclass_sub(x: KClass, y: KClass) -> KClass:
    return kclass_add(x, kclass_neg(y))


def _require_base(e: CycMatrix, base_order: int) -> None:
    if not is_in_field(e, base_order):
        raise FieldError(f"matrix entries do not lie in Q(zeta_{conductor_normalize(base_order)})")


def class_of(e: CycMatrix, n: int, base_order: int) -> KClass:
    _require_base(e, base_order)
    require_npotent(e, n, "e")
    orbits = galois_orbits(n, base_order)
    ranks = component_ranks(e, n)
    values = []
    for o in orbits.orbits:
        rs = [ranks[k] for k in o]
        # conjugate idempotents over the base field have equal rank
        if len(set(rs)) != 1:
            raise FieldError(f"component ranks {rs} differ on orbit {list(o)}")
        values.append(sum(rs))
    return KClass(n, orbits.base_order, orbits, tuple(values))


@dataclass(frozen=True)
class GroupStructure:
    n: int
    base_order: int
    factors: tuple[tuple[tuple[int, ...], int], ...]  # (orbit, index of the subgroup of Z)

    def indices(self) -> tuple[int, ...]:
        return tuple(idx for _, idx in self.factors)

    def render(self, unicode: bool = False) -> str:
        """Reduced form, e.g. 'Z (+) 2Z' or 'Z^4'; factors grouped by index."""
        z, plus = ("ℤ", " ⊕ ") if unicode else ("Z", " (+) ")
        counts: dict[int, int] = {}
        for idx in self.indices():
            counts[idx] = counts.get(idx, 0) + 1
        parts = []
        for idx in sorted(counts):
            name = z if idx == 1 else f"{idx}{z}"
            c = counts[idx]
            if c == 1:
                parts.append(name)
            else:
                parts.append(f"{name}^{c}" if idx == 1 else f"({name})^{c}")
        return plus.join(parts)

    def __str__(self):
        return self.render()


def group_structure(n: int, base_order: int) -> GroupStructure:
    orbits = galois_orbits(n, base_order)
    return GroupStructure(n, orbits.base_order, tuple((o, len(o)) for o in orbits.orbits))


def representative(target: KClass) -> CycMatrix:
    """A block-diagonal n-potent over the base field whose class is ``target``."""
    if not target.is_effective():
        raise UnrealizableError(f"class {list(target.values)} has negative entries")
    n, base = target.n, target.base_order
    blocks = []
    for o, v in zip(target.orbits.orbits, target.values):
        if v == 0:
            continue
        if len(o) == 1:
            w = descend(omega(n, o[0]), base)
            blocks.append(mat_scale(w, CycMatrix.identity(v, base)))
        else:
            blk = orbit_block(n, o, base)
            blocks.extend([blk] * (v // len(o)))
    if not blocks:
        return CycMatrix.zeros(1, 1, base)
    return block_diag(blocks).lift(base)


def _require_split(n: int, base_order: int) -> GaloisOrbitSet:
    orbits = galois_orbits(n, base_order)
    if not orbits.is_split():
        raise FieldError(
            f"Q(zeta_{orbits.base_order}) does not contain the {n - 1}-th roots of unity; "
            f"orbits {orbits.to_list()} are folded"
        )
    return orbits


def psi(e: CycMatrix, n: int, base_order: int) -> tuple[int, ...]:
    """(rank e_1, ..., rank e_(n-1)) for a base field containing every omega_k."""
    _require_split(n, base_order)
    _require_base(e, base_order)
    return component_ranks(e, n)[1:]


def phi(ranks: Sequence[int], n: int, base_order: int) -> CycMatrix:
    """diag(omega_1 I_(r_1), ..., omega_(n-1) I_(r_(n-1))) over the base field."""
    _require_split(n, base_order)
    if len(ranks) != n - 1:
        raise ValueError(f"need {n - 1} ranks, got {len(ranks)}")
    if any(r < 0 for r in ranks):
        raise UnrealizableError("ranks must be non-negative")
    return representative(KClass.of(n, base_order, ranks))


def same_kclass(e: CycMatrix, f: CycMatrix, n: int, base_order: int) -> bool:
    return class_of(e, n, base_order) == class_of(f, n, base_order)


def stable_padding(e: CycMatrix, f: CycMatrix, n: int, base_order: int):
    """Exhibit an n-potent omega with e (+) 0 (+) omega similar to f (+) 0 (+) omega.

    omega realizes, over the base field, the class of the complementary
    n-potent of the larger matrix; it is scalar diagonal when every omega_k
    lies in the base field and uses orbit blocks otherwise.  The zero blocks
    bring e and f to a common size.  Returns (omega, e_padded, f_padded,
    similar), where ``similar`` agrees with same_kclass(e, f).
    """
    _require_base(e, base_order)
    _require_base(f, base_order)
    big = e if e.rows >= f.rows else f
    comp_ranks = component_ranks(complementary(big, n), n)
    orbits = galois_orbits(n, base_order)
    w = representative(KClass(n, orbits.base_order, orbits, tuple(sum(comp_ranks[k] for k in o) for o in orbits.orbits)))
    size = max(e.rows, f.rows)
    padded = []
    for x in (e, f):
        blocks = [x] + ([CycMatrix.zeros(size - x.rows, order=x.order)] if size > x.rows else []) + [w]
        padded.append(block_diag(blocks).lift(orbits.base_order))
    return w, padded[0], padded[1], are_similar(padded[0], padded[1], n)


def standard_picture(x: KClass) -> tuple[CycMatrix, CycMatrix]:
    """(e, w) with class_of(e) - class_of(w) = x; w realizes the negative part."""
    return representative(x.positive_part()), representative(x.negative_part())

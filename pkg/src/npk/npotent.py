"""Structure of a single n-potent matrix (e^n = e) over a cyclotomic field.

Over a field containing the (n-1)-th roots of unity an n-potent is
diagonalizable with spectrum in {0, omega_1, ..., omega_(n-1)}; the spectral
projectors p_k(e) given by the Lagrange polynomials on those points form the
unique n-partition of unity with e = sum_k omega_k e_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cyclofield import CycNum, conductor_normalize, descend, galois_orbits, lcm, lift, omega
from .errors import DimensionError, FieldError, NotNPotentError, UnrealizableError
from .exactmat import (
    CycMatrix,
    block_diag,
    column_basis,
    companion,
    inverse,
    is_idempotent,
    is_npotent,
    mat_add,
    mat_mul,
    mat_scale,
    powers,
    rank,
)
from .poly import poly_mul, poly_scale


def splitting_order(n: int) -> int:
    """Conductor of Q(n-1), the field generated by all omega_k."""
    return conductor_normalize(n - 1)


def require_npotent(e: CycMatrix, n: int, name: str = "matrix") -> None:
    if not e.is_square:
        raise DimensionError(f"{name} must be square, got {e.rows}x{e.cols}")
    if not is_npotent(e, n):
        raise NotNPotentError(f"{name} is not a {n}-potent")


@lru_cache(maxsize=None)
def lagrange_basis(n: int) -> tuple[tuple[CycNum, ...], ...]:
    """p_0, ..., p_(n-1) with p_k(omega_j) = [j == k], as coefficient tuples."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    m = splitting_order(n)
    nodes = [lift(omega(n, k), m) for k in range(n)]
    basis = []
    for k in range(n):
        num: list = [CycNum.one(m)]
        denom = CycNum.one(m)
        for j in range(n):
            if j != k:
                num = poly_mul(num, [-nodes[j], CycNum.one(m)])
                denom = denom * (nodes[k] - nodes[j])
        coeffs = poly_scale(denom.inverse(), num)
        coeffs = [lift(c, m) for c in coeffs] + [CycNum.zero(m)] * (n - len(coeffs))
        basis.append(tuple(coeffs))
    return tuple(basis)


@dataclass(frozen=True)
class NPartition:
    n: int
    size: int
    order: int
    components: tuple[CycMatrix, ...]

    def failures(self) -> list[str]:
        """Names of the partition identities that do not hold (empty when valid)."""
        bad = []
        if len(self.components) != self.n:
            return [f"expected {self.n} components, got {len(self.components)}"]
        for k, c in enumerate(self.components):
            if c.shape != (self.size, self.size):
                return [f"component {k} has shape {c.shape}"]
        for k, c in enumerate(self.components):
            if not is_idempotent(c):
                bad.append(f"e_{k}^2 = e_{k}")
        for j, cj in enumerate(self.components):
            for k, ck in enumerate(self.components):
                if j != k and not mat_mul(cj, ck).is_zero():
                    bad.append(f"e_{j} e_{k} = 0")
        total = self.components[0]
        for c in self.components[1:]:
            total = mat_add(total, c)
        if total != CycMatrix.identity(self.size, self.order):
            bad.append("sum e_k = 1")
        return bad

    def is_valid(self) -> bool:
        return not self.failures()

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(c) for c in self.components)


def decompose(e: CycMatrix, n: int) -> NPartition:
    """The n-partition of unity of ``e``, computed over lcm(order(e), cond(n-1))."""
    require_npotent(e, n, "e")
    m = lcm(e.order, splitting_order(n))
    e = e.lift(m)
    pw = powers(e, n - 1)
    comps = []
    for coeffs in lagrange_basis(n):
        acc = CycMatrix.zeros(e.rows, e.rows, m)
        for c, p in zip(coeffs, pw):
            if not c.is_zero():
                acc = mat_add(acc, mat_scale(c, p))
        comps.append(acc)
    return NPartition(n, e.rows, m, tuple(comps))


def recompose(p: NPartition) -> CycMatrix:
    """sum_(k>=1) omega_k e_k."""
    bad = p.failures()
    if bad:
        raise ValueError(f"invalid n-partition: {bad[0]}")
    acc = CycMatrix.zeros(p.size, p.size, p.order)
    for k in range(1, p.n):
        acc = mat_add(acc, mat_scale(omega(p.n, k), p.components[k]))
    return acc


def component_ranks(e: CycMatrix, n: int) -> tuple[int, ...]:
    """Ranks of e_0, ..., e_(n-1); these classify e up to similarity."""
    return decompose(e, n).ranks()


def complementary(e: CycMatrix, n: int) -> CycMatrix:
    """diag(omega_1 (1 - e_1), ..., omega_(n-1) (1 - e_(n-1))), of size (n-1)*size(e).

    Every component of e (+) e^perp then has rank size(e).
    """
    part = decompose(e, n)
    ident = CycMatrix.identity(part.size, part.order)
    blocks = [mat_scale(omega(n, k), ident - part.components[k]) for k in range(1, n)]
    return block_diag(blocks)


def tripotent_split(e: CycMatrix) -> tuple[CycMatrix, CycMatrix]:
    """The unique orthogonal idempotents with e = e1 - e2: (e^2 + e)/2, (e^2 - e)/2."""
    require_npotent(e, 3, "e")
    sq = mat_mul(e, e)
    half = Fraction(1, 2)
    return mat_scale(half, sq + e), mat_scale(half, sq - e)


def quadripotent_split_q4(e: CycMatrix) -> tuple[CycMatrix, CycMatrix]:
    """(e_1, e_2 + e_3) for a quadripotent over Q(i), both with entries in Q(i).

    e_1 = (e + e^2 + e^3)/3 and e_2 + e_3 = e^3 - e_1.
    """
    if 4 % e.order:
        e = e.descend(4)
    require_npotent(e, 4, "e")
    e2 = mat_mul(e, e)
    e3 = mat_mul(e2, e)
    e1 = mat_scale(Fraction(1, 3), e + e2 + e3)
    return e1, e3 - e1


def are_similar(e: CycMatrix, f: CycMatrix, n: int) -> bool:
    """Similarity of two n-potents, decided by comparing component ranks.

    Both are diagonalizable over the splitting field with eigenvalue
    multiplicities equal to the component ranks, and similarity over an
    extension field descends to the base field.
    """
    if e.shape != f.shape:
        raise DimensionError(f"sizes differ: {e.shape} vs {f.shape}")
    return component_ranks(e, n) == component_ranks(f, n)


def _eigenbasis(p: NPartition) -> CycMatrix:
    """Columns: a basis of each component's image, in order k = 0, 1, ..."""
    cols = [column_basis(c) for c in p.components if not c.is_zero()]
    rows = []
    for i in range(p.size):
        r = []
        for b in cols:
            r.extend(b.row(i))
        rows.append(r)
    return CycMatrix(rows, p.order)


def similarity_conjugator(e: CycMatrix, f: CycMatrix, n: int):
    """An invertible z over the splitting field with z e z^-1 = f, or None."""
    if not are_similar(e, f, n):
        return None
    pe, pf = _eigenbasis(decompose(e, n)), _eigenbasis(decompose(f, n))
    return mat_mul(pf, inverse(pe)), mat_mul(pe, inverse(pf))


def orbit_polynomial(n: int, orbit: Sequence[int], base_order: int) -> list[CycNum]:
    """prod_(k in orbit) (x - omega_k), with coefficients rewritten in the base field."""
    m = lcm(splitting_order(n), conductor_normalize(base_order))
    poly: list = [CycNum.one(m)]
    for k in orbit:
        poly = poly_mul(poly, [-lift(omega(n, k), m), CycNum.one(m)])
    return [descend(c, base_order) for c in poly]


def orbit_block(n: int, orbit: Sequence[int], base_order: int) -> CycMatrix:
    """Smallest n-potent over the base field whose spectrum is exactly ``orbit``."""
    base = conductor_normalize(base_order)
    if len(orbit) == 1:
        return CycMatrix([[descend(omega(n, orbit[0]), base)]], base)
    return companion(orbit_polynomial(n, orbit, base)).lift(base)


def random_unipotent_conjugator(size: int, rng: random.Random) -> tuple[CycMatrix, CycMatrix]:
    """z = U L for random integer unit-triangular U, L; returns (z, z^-1)."""
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(size)] for i in range(size)]
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(size)] for i in range(size)]
    z = mat_mul(CycMatrix(upper), CycMatrix(lower))
    return z, inverse(z)


def random_npotent(
    n: int,
    order: int,
    size: int,
    component_ranks: Sequence[int],
    seed: int = 0,
) -> CycMatrix:
    """z D z^-1 with D block diagonal of prescribed component ranks r_0..r_(n-1).

    In-field eigenvalues contribute omega_k I blocks; a non-singleton Galois
    orbit O with common rank r contributes r companion blocks of prod_(k in O)(x - omega_k).
    """
    base = conductor_normalize(order)
    ranks = list(component_ranks)
    if len(ranks) != n:
        raise ValueError(f"need {n} component ranks, got {len(ranks)}")
    if any(r < 0 for r in ranks) or sum(ranks) != size:
        raise UnrealizableError(f"component ranks {ranks} do not sum to size {size}")
    orbits = galois_orbits(n, base)
    blocks = []
    if ranks[0]:
        blocks.append(CycMatrix.zeros(ranks[0], ranks[0], base))
    for orbit in orbits.orbits:
        rs = {ranks[k] for k in orbit}
        if len(rs) != 1:
            raise UnrealizableError(
                f"ranks {[ranks[k] for k in orbit]} differ on the Galois orbit {list(orbit)} over Q(zeta_{base})"
            )
        r = rs.pop()
        if len(orbit) == 1:
            if r:
                w = descend(omega(n, orbit[0]), base)
                blocks.append(mat_scale(w, CycMatrix.identity(r, base)))
        else:
            blk = orbit_block(n, orbit, base)
            blocks.extend([blk] * r)
    if not blocks:
        return CycMatrix.zeros(size, size, base)
    d = block_diag(blocks).lift(base)
    z, z_inv = random_unipotent_conjugator(size, random.Random(seed))
    return mat_mul(mat_mul(z, d), z_inv).lift(base)


def random_rank_pattern(n: int, order: int, size: int, rng: random.Random) -> list[int]:
    """A random realizable rank vector r_0..r_(n-1) summing to ``size``."""
    orbits = galois_orbits(n, order).orbits
    ranks = [0] * n
    left = size
    choices = [None] + list(orbits)
    while left:
        pick = rng.choice(choices)
        if pick is None:
            ranks[0] += 1
            left -= 1
        elif len(pick) <= left:
            for k in pick:
                ranks[k] += 1
            left -= len(pick)
    return ranks


def is_in_field(e: CycMatrix, base_order: int) -> bool:
    try:
        e.descend(base_order)
    except FieldError:
        return False
    return True

"""Regression harness for the published computations, run by ``npk check-paper``.

Each check is a small self-contained computation returning (ok, detail).  The
pytest acceptance module runs the same facts at full scale; this harness keeps
sample sizes small so the command finishes in a few seconds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .cyclofield import zeta
from .exactmat import CycMatrix, block_diag, integer_trace, is_idempotent, is_npotent, mat_pow
from .kgroup import class_of, group_structure, phi, psi
from .nhom import apply_entrywise, check_nhom, scalar_nhom
from .npotent import (
    decompose,
    lagrange_basis,
    quadripotent_split_q4,
    random_npotent,
    random_rank_pattern,
    random_unipotent_conjugator,
    recompose,
    tripotent_split,
)
from .witness import compose_transitive, from_similarity, intertwiner, normalize_algebraic, stable_similarity


def q4_generator_matrix() -> CycMatrix:
    """diag(1, [[0, i], [i, -1]]): a quadripotent over Q(i) of class 1 (+) 2."""
    i = zeta(4)
    return block_diag([CycMatrix([[1]]), CycMatrix([[0, i], [i, -1]])])


GROUP_TABLE = [
    (2, 4, "Z"),
    (3, 4, "Z^2"),
    (4, 4, "Z (+) 2Z"),
    (5, 4, "Z^4"),
    (4, 3, "Z^3"),
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _group_table():
    got = [(n, b, str(group_structure(n, b))) for n, b, _ in GROUP_TABLE]
    ok = all(g[2] == want for g, (_, _, want) in zip(got, GROUP_TABLE))
    return ok, "; ".join(f"K0^{n}(Q({b})) = {s}" for n, b, s in got)


def _q4_matrix():
    e = q4_generator_matrix()
    e1, e23 = quadripotent_split_q4(e)
    traces = (integer_trace(e1), integer_trace(e23))
    values = class_of(e, 4, 4).values
    ok = is_npotent(e, 4) and traces == (1, 2) and values == (1, 2)
    return ok, f"quadripotent={is_npotent(e, 4)} traces={traces} class={values}"


def _fields_distinguished():
    a, b = str(group_structure(4, 4)), str(group_structure(4, 3))
    same3 = str(group_structure(3, 4)) == str(group_structure(3, 3))
    return a != b and same3, f"K0^4: {a} vs {b}; K0^3 agrees on both fields: {same3}"


def _lagrange_p0():
    bad = []
    for n in range(2, 9):
        p0 = lagrange_basis(n)[0]
        want = [1] + [0] * (n - 2) + [-1]
        if list(p0) != want:
            bad.append(n)
    return not bad, "p_0 = 1 - x^(n-1) for n = 2..8" if not bad else f"failed for n in {bad}"


def _tripotent(seed: int):
    rng = random.Random(seed)
    for t in range(10):
        size = rng.randint(1, 4)
        e = random_npotent(3, 1, size, random_rank_pattern(3, 1, size, rng), seed=rng.randrange(10**9))
        e1, e2 = tripotent_split(e)
        if not (is_idempotent(e1) and is_idempotent(e2) and (e1 @ e2).is_zero() and e1 - e2 == e):
            return False, f"sample {t} failed"
    return True, "10 random tripotents split as e1 - e2"


def _partitions(seed: int):
    rng = random.Random(seed)
    for t in range(10):
        n = rng.randint(2, 5)
        m = rng.choice([1, 3, 4, 5, 12])
        size = rng.randint(1, 4)
        e = random_npotent(n, m, size, random_rank_pattern(n, m, size, rng), seed=rng.randrange(10**9))
        p = decompose(e, n)
        if p.failures() or recompose(p) != e or not is_idempotent(mat_pow(e, n - 1)):
            return False, f"sample {t} (n={n}, m={m}) failed"
    return True, "10 random n-potents decompose and recompose"


def _witnesses(seed: int):
    rng = random.Random(seed)
    for t in range(6):
        n = rng.randint(2, 5)
        size = rng.randint(1, 3)
        e = random_npotent(n, 4, size, random_rank_pattern(n, 4, size, rng), seed=rng.randrange(10**9))
        z1, _ = random_unipotent_conjugator(size, rng)
        z2, _ = random_unipotent_conjugator(size, rng)
        w1 = normalize_algebraic(*_raw(from_similarity(e, z1, n)), n)
        w2 = normalize_algebraic(*_raw(from_similarity(w1.f, z2, n)), n)
        stable_similarity(w1)
        compose_transitive(w1, w2)
        v, _, _ = intertwiner(e, w2.f, n)
        if e @ v != v @ w2.f:
            return False, f"intertwiner failed on sample {t}"
    return True, "stable similarity, transitivity and intertwiner verified on 6 samples"


def _raw(w):
    return w.e, w.f, w.a, w.b


def _iso(seed: int):
    rng = random.Random(seed)
    for n, base in ((3, 1), (4, 3), (5, 4)):
        for _ in range(5):
            ranks = [rng.randint(0, 2) for _ in range(n - 1)]
            if list(psi(phi(ranks, n, base), n, base)) != ranks:
                return False, f"psi(phi) failed for (n={n}, base={base})"
    return True, "psi o phi = id for (3,1), (4,3), (5,4)"


def _parity():
    from .kgroup import KClass, representative

    e = representative(KClass.of(4, 12, [0, 1, 0]))
    outside = not_in_q4(e)
    q = q4_generator_matrix()
    _, e23 = quadripotent_split_q4(q)
    even = integer_trace(e23) % 2 == 0
    return outside and even, f"rank(e2) != rank(e3) forces entries outside Q(i): {outside}; trace(e2+e3) even: {even}"


def not_in_q4(e: CycMatrix) -> bool:
    from .npotent import is_in_field

    return not is_in_field(e, 4)


def _nhom():
    spec = scalar_nhom(zeta(3), 4, 12)
    image = apply_entrywise(spec, q4_generator_matrix().lift(12))
    ok = check_nhom(spec) and is_npotent(image, 4)
    return ok, f"x -> zeta_3 x is a 4-homomorphism of Q(zeta_12); image quadripotent: {is_npotent(image, 4)}"


def checks(seed: int = 0) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    return [
        ("group table over Q(4) and Q(3)", _group_table),
        ("3x3 quadripotent over Q(4)", _q4_matrix),
        ("K0^4 separates Q(3) and Q(4)", _fields_distinguished),
        ("Lagrange p_0", _lagrange_p0),
        ("tripotent split", lambda: _tripotent(seed)),
        ("n-partitions of unity", lambda: _partitions(seed)),
        ("equivalence witnesses", lambda: _witnesses(seed)),
        ("K0^n = K0^(n-1) isomorphism", lambda: _iso(seed)),
        ("parity obstruction over Q(4)", _parity),
        ("n-homomorphism functoriality", _nhom),
    ]


def run_checks(seed: int = 0) -> list[CheckResult]:
    results = []
    for name, fn in checks(seed):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported in the table
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return results

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import npotent_sample
from npk.cyclofield import zeta
from npk.errors import FieldError, NotNPotentError, UnrealizableError
from npk.cyclofield import omega
from npk.exactmat import CycMatrix, block, block_diag, is_npotent
from npk.kgroup import (
    KClass,
    class_of,
    group_structure,
    phi,
    psi,
    representative,
    same_kclass,
    stable_padding,
    standard_picture,
)
from npk.npotent import is_in_field, random_unipotent_conjugator


def q4_matrix():
    i = zeta(4)
    return block_diag([CycMatrix([[1]]), CycMatrix([[0, i], [i, -1]])])


@pytest.mark.parametrize(
    "n,base,want",
    [(2, 4, "Z"), (3, 4, "Z^2"), (4, 4, "Z (+) 2Z"), (5, 4, "Z^4"), (4, 3, "Z^3"), (7, 1, "Z^2 (+) (2Z)^2")],
)
def test_group_table(n, base, want):
    assert str(group_structure(n, base)) == want


def test_unicode_render():
    assert group_structure(4, 4).render(unicode=True) == "ℤ ⊕ 2ℤ"


def test_q4_matrix_class():
    x = class_of(q4_matrix(), 4, 4)
    assert x.values == (1, 2)
    assert x.orbits.to_list() == [[1], [2, 3]]


def test_class_errors():
    with pytest.raises(FieldError):
        class_of(q4_matrix(), 4, 1)
    with pytest.raises(NotNPotentError):
        class_of(q4_matrix(), 3, 4)
    with pytest.raises(ValueError):
        KClass.of(4, 4, [1, 1])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(3, 1), (4, 4), (5, 4), (4, 3), (7, 1), (5, 1)]))
def test_representative_realizes_class(seed, nb):
    n, base = nb
    rng = random.Random(seed)
    x = KClass.of(n, base, [len(o) * rng.randint(0, 2) for o in KClass.zero(n, base).orbits.orbits])
    e = representative(x)
    assert is_npotent(e, n)
    assert is_in_field(e, base)
    assert class_of(e, n, base) == x


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(3, 1), (4, 3), (5, 4), (4, 12)]))
def test_psi_phi_inverse(seed, nb):
    n, base = nb
    rng = random.Random(seed)
    ranks = [rng.randint(0, 3) for _ in range(n - 1)]
    assert list(psi(phi(ranks, n, base), n, base)) == ranks
    e = npotent_sample(rng, n, base, rng.randint(1, 4))
    assert psi(phi(psi(e, n, base), n, base), n, base) == psi(e, n, base)


def test_psi_requires_split_field():
    with pytest.raises(FieldError):
        psi(q4_matrix(), 4, 4)
    with pytest.raises(UnrealizableError):
        representative(KClass.of(4, 4, [-1, 0]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4, 5]))
def test_classes_are_additive(seed, n):
    rng = random.Random(seed)
    e = npotent_sample(rng, n, 4, rng.randint(1, 3))
    f = npotent_sample(rng, n, 4, rng.randint(1, 3))
    assert class_of(block_diag([e, f]), n, 4) == class_of(e, n, 4) + class_of(f, n, 4)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
def test_stable_padding_agrees_with_class(seed, n):
    rng = random.Random(seed)
    e = npotent_sample(rng, n, 4, rng.randint(1, 3))
    f = npotent_sample(rng, n, 4, rng.randint(1, 3))
    w, ep, fp, similar = stable_padding(e, f, n, 4)
    assert ep.shape == fp.shape
    assert similar == same_kclass(e, f, n, 4)
    # zero padding never changes the class
    assert class_of(ep, n, 4) == class_of(e, n, 4) + class_of(w, n, 4)


def test_standard_picture():
    x = KClass.of(4, 4, [2, -2])
    e, w = standard_picture(x)
    assert class_of(e, 4, 4) - class_of(w, 4, 4) == x
    assert representative(KClass.zero(4, 4)) == CycMatrix.zeros(1, 1, 4)


def test_representative_uses_companion_blocks():
    e = representative(KClass.of(4, 4, [1, 2]))
    assert e == CycMatrix([[1, 0, 0], [0, 0, -1], [0, 1, -1]])
    assert same_kclass(e, q4_matrix(), 4, 4)


def test_same_kclass_examples():
    e = q4_matrix()
    assert same_kclass(e, block_diag([e, CycMatrix.zeros(2, 2, 4)]), 4, 4)
    assert not same_kclass(CycMatrix.identity(1, 3), CycMatrix([[omega(4, 2)]]), 4, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
def test_absorb_orthogonal_sum(seed, n):
    rng = random.Random(seed)
    e = npotent_sample(rng, n, 4, rng.randint(1, 3))
    f = npotent_sample(rng, n, 4, rng.randint(1, 3))
    z_ef = CycMatrix.zeros(e.rows, f.rows, 4)
    a = block([[e, z_ef], [z_ef.transpose(), CycMatrix.zeros(f.rows, f.rows, 4)]])
    b = block([[CycMatrix.zeros(e.rows, e.rows, 4), z_ef], [z_ef.transpose(), f]])
    assert (a @ b).is_zero() and (b @ a).is_zero()
    assert class_of(a + b, n, 4) == class_of(a, n, 4) + class_of(b, n, 4)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_class_invariant_under_conjugation_and_swap(seed):
    rng = random.Random(seed)
    e = npotent_sample(rng, 4, 4, rng.randint(1, 3))
    f = npotent_sample(rng, 4, 4, e.rows)
    z, z_inv = random_unipotent_conjugator(e.rows, rng)
    assert class_of(z @ e @ z_inv, 4, 4) == class_of(e, 4, 4)
    assert class_of(block_diag([e, f]), 4, 4) == class_of(block_diag([f, e]), 4, 4)
    assert class_of(e, 4, 4).values[1] % 2 == 0

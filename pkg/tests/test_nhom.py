import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cyc, npotent_sample
from npk.cyclofield import CycNum, omega, zeta
from npk.errors import FieldError, VerificationError
from npk.exactmat import CycMatrix, is_npotent
from npk.kgroup import KClass, group_structure
from npk.nhom import (
    NHomSpec,
    apply_entrywise,
    check_nhom,
    compose,
    embedding_nhom,
    first_nhom_failure,
    galois_nhom,
    identity_nhom,
    induced_kmap,
    is_ring_hom,
    scalar_nhom,
    transport_witness,
)
from npk.npotent import random_unipotent_conjugator
from npk.witness import from_similarity, normalize_algebraic


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_scalar_root_is_nhom(n):
    spec = scalar_nhom(omega(n, 2) if n > 2 else CycNum.one(), n)
    assert check_nhom(spec)


def test_scalar_zeta3_on_q12():
    spec = scalar_nhom(zeta(3), 4, 12)
    assert check_nhom(spec)
    assert not is_ring_hom(spec)
    assert spec(1) == zeta(3)


def test_non_npotent_scalar_fails():
    spec = scalar_nhom(CycNum.rational(2), 3, 4)
    assert first_nhom_failure(spec) is not None
    assert not check_nhom(scalar_nhom(zeta(3), 2, 3))


@settings(max_examples=30, deadline=None)
@given(cyc(order=12))
def test_spec_is_linear(x):
    spec = scalar_nhom(zeta(3), 4, 12)
    assert spec(x) == zeta(3) * x
    assert spec(x + x) == spec(x) + spec(x)


def test_galois_and_embedding_are_ring_homs():
    for t in (1, 5, 7, 11):
        assert is_ring_hom(galois_nhom(t, 12, 3))
        assert check_nhom(galois_nhom(t, 12, 3))
    emb = embedding_nhom(4, 12, 4)
    assert is_ring_hom(emb) and emb(zeta(4)) == zeta(4)
    with pytest.raises(FieldError):
        embedding_nhom(5, 12, 4)


def test_compose():
    s = scalar_nhom(zeta(3), 4, 12)
    g = galois_nhom(5, 12, 4)
    c = compose(g, s)
    assert c(zeta(12)) == g(s(zeta(12)))
    assert check_nhom(c)
    assert compose(identity_nhom(12, 4), s) == s


def test_from_json_rows_validates_shape():
    with pytest.raises(ValueError):
        NHomSpec.from_rows(3, 4, 4, [[Fraction(1)]])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([3, 4]))
def test_entrywise_images_and_transport(seed, n):
    rng = random.Random(seed)
    spec = scalar_nhom(omega(n, n - 1), n, 12)
    e = npotent_sample(rng, n, 12, rng.randint(1, 3))
    img = apply_entrywise(spec, e)
    assert is_npotent(img, n)
    z, _ = random_unipotent_conjugator(e.rows, rng)
    w = from_similarity(e, z, n)
    w = normalize_algebraic(w.e, w.f, w.a, w.b, n)
    t = transport_witness(spec, w)
    assert t.e == img and t.failures() == []


def test_transport_rejects_non_nhom():
    spec = scalar_nhom(CycNum.rational(2), 3, 1)
    e = CycMatrix.diag([1, -1])
    w = normalize_algebraic(e, e, e, e @ e, 3)
    with pytest.raises(VerificationError):
        transport_witness(spec, w)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_induced_kmap_additive(seed):
    rng = random.Random(seed)
    n, base = 4, 12
    spec = scalar_nhom(zeta(3), n, base)
    orbits = KClass.zero(n, base).orbits.orbits
    x = KClass.of(n, base, [rng.randint(-3, 3) for _ in orbits])
    y = KClass.of(n, base, [rng.randint(-3, 3) for _ in orbits])
    assert induced_kmap(spec, x + y) == induced_kmap(spec, x) + induced_kmap(spec, y)
    # multiplying by zeta_3 rotates the eigenvalues omega_k by one step
    assert induced_kmap(spec, KClass.of(4, 12, [1, 0, 0])) == KClass.of(4, 12, [0, 1, 0])
    assert str(group_structure(n, base)) == "Z^3"


def test_induced_on_q4():
    # Galois conjugation permutes the folded orbit as a whole
    spec = galois_nhom(3, 4, 4)
    x = KClass.of(4, 4, [1, 2])
    assert induced_kmap(spec, x) == x


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ring_homs_are_nhoms_for_every_n(n):
    for t in (1, 5, 7, 11):
        assert check_nhom(galois_nhom(t, 12, n))
    assert check_nhom(embedding_nhom(3, 12, n))


def test_minus_one_on_tripotents():
    spec = scalar_nhom(CycNum.rational(-1), 3, 1)
    assert check_nhom(spec) and not is_ring_hom(spec)
    e = CycMatrix.diag([1, -1])
    assert apply_entrywise(spec, e) == CycMatrix.diag([-1, 1])
    w = normalize_algebraic(e, e, e, e @ e, 3)
    t = transport_witness(spec, w)
    assert t.e == CycMatrix.diag([-1, 1])
    assert transport_witness(identity_nhom(1, 3), w).failures() == []


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_composition_functoriality(seed):
    rng = random.Random(seed)
    s = scalar_nhom(zeta(3), 4, 12)
    g = galois_nhom(5, 12, 4)
    orbits = KClass.zero(4, 12).orbits.orbits
    x = KClass.of(4, 12, [rng.randint(-2, 2) for _ in orbits])
    assert induced_kmap(compose(g, s), x) == induced_kmap(g, induced_kmap(s, x))
    assert induced_kmap(s, KClass.zero(4, 12)) == KClass.zero(4, 12)
    assert induced_kmap(identity_nhom(12, 4), x) == x

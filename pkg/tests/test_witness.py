import random
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import npotent_sample
from npk.errors import DimensionError, SingularMatrixError, VerificationError
from npk.exactmat import CycMatrix, block, frobenius_norm, inverse, mat_pow
from npk.npotent import component_ranks, random_unipotent_conjugator
from npk.witness import (
    EquivWitness,
    SimWitness,
    absorb_witness,
    closeness_bound,
    closeness_bound_check,
    compose_transitive,
    from_similarity,
    identity_witness,
    intertwiner,
    intertwiner_matrix,
    normalize_algebraic,
    power_difference,
    stable_similarity,
    stable_similarity_factors,
    sum_witness,
    swap_witness,
)

seeds = st.integers(0, 2**32)
ns = st.sampled_from([2, 3, 4, 5])


def similar_pair(seed, n, order=4, max_size=3):
    rng = random.Random(seed)
    size = rng.randint(1, max_size)
    e = npotent_sample(rng, n, order, size)
    z, _ = random_unipotent_conjugator(size, rng)
    return e, z, rng


def normalized(e, z, n):
    w = from_similarity(e, z, n)
    return normalize_algebraic(w.e, w.f, w.a, w.b, n)


@settings(max_examples=30, deadline=None)
@given(seeds, ns)
def test_normalized_witness(seed, n):
    e, z, _ = similar_pair(seed, n)
    w = normalized(e, z, n)
    assert w.failures() == [] and w.is_normalized()


@settings(max_examples=30, deadline=None)
@given(seeds, ns)
def test_stable_similarity(seed, n):
    e, z, _ = similar_pair(seed, n)
    w = normalized(e, z, n)
    u, v = stable_similarity_factors(w)
    eye = CycMatrix.identity(u.rows, u.order)
    assert u @ u == eye and v @ v == eye
    sim = stable_similarity(w)
    zero = CycMatrix.zeros(e.rows)
    assert sim.e == block([[e, zero], [zero, zero]])
    assert sim.z @ sim.e @ sim.z_inv == block([[w.f, zero], [zero, zero]])


@settings(max_examples=30, deadline=None)
@given(seeds, ns)
def test_transitivity(seed, n):
    e, z1, rng = similar_pair(seed, n)
    w1 = normalized(e, z1, n)
    z2, _ = random_unipotent_conjugator(e.rows, rng)
    w2 = normalized(w1.f, z2, n)
    w = compose_transitive(w1, w2)
    n_ = w.n
    assert w.a == w1.a @ mat_pow(w1.f, n_ - 2) @ w2.a
    assert w.b == w2.b @ w1.b
    assert w.a @ w.b == e and w.b @ w.a == w2.f


def test_unnormalized_witness_is_rejected_by_stable_similarity():
    e = CycMatrix.diag([1, 0])
    bad = EquivWitness(e, e, CycMatrix.identity(2), e, 3)
    assert bad.failures() == []
    assert not bad.is_normalized()
    with pytest.raises(VerificationError):
        stable_similarity(bad)


def test_invalid_witness_reports_first_identity():
    e = CycMatrix.diag([1, 0])
    w = EquivWitness(e, e, e, CycMatrix.identity(2), 2)
    assert w.failures() == []
    w2 = EquivWitness(e, e, CycMatrix.identity(2), CycMatrix.identity(2), 2)
    assert w2.failures()[0] == "ab = e"
    with pytest.raises(VerificationError) as info:
        w2.verify()
    assert info.value.identity == "ab = e"
    s = SimWitness(e, CycMatrix.diag([0, 1]), CycMatrix.identity(2), CycMatrix.identity(2), 2)
    assert s.failures() == ["z e z_inv = f"]


def test_from_similarity_singular():
    with pytest.raises(SingularMatrixError):
        from_similarity(CycMatrix.diag([1, 0]), CycMatrix([[1, 1], [1, 1]]), 2)


@settings(max_examples=25, deadline=None)
@given(seeds, ns)
def test_swap_absorb_sum(seed, n):
    rng = random.Random(seed)
    size = rng.randint(1, 2)
    e = npotent_sample(rng, n, 4, size)
    f = npotent_sample(rng, n, 4, size)
    swap_witness(e, f, n)
    zero = CycMatrix.zeros(size, size, 4)
    absorb_witness(e, zero, n)
    w1 = identity_witness(block([[e, zero], [zero, zero]]), n)
    w2 = identity_witness(block([[zero, zero], [zero, f]]), n)
    s = sum_witness(w1, w2)
    assert s.e == block([[e, zero], [zero, f]])


@settings(max_examples=30, deadline=None)
@given(seeds, ns)
def test_intertwiner_identity_for_any_pair(seed, n):
    rng = random.Random(seed)
    size = rng.randint(1, 3)
    e = npotent_sample(rng, n, 12, size)
    f = npotent_sample(rng, n, 12, size)
    v, invertible, sim = intertwiner(e, f, n)
    assert e @ v == v @ f
    if invertible:
        assert inverse(v) @ e @ v == f
        assert component_ranks(e, n) == component_ranks(f, n)


def test_intertwiner_n2_orthogonal_pair_is_zero():
    assert intertwiner_matrix(CycMatrix.diag([1, 0]), CycMatrix.diag([0, 1]), 2).is_zero()


def test_intertwiner_of_equal_npotents_is_invertible():
    e = CycMatrix.diag([1, 0, -1])
    v, invertible, sim = intertwiner(e, e, 3)
    assert invertible and sim.failures() == []


def test_intertwiner_dimension_check():
    with pytest.raises(DimensionError):
        intertwiner(CycMatrix.diag([1]), CycMatrix.diag([1, 0]), 2)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4]), st.integers(1, 6))
def test_power_difference_telescopes(seed, n, j):
    rng = random.Random(seed)
    size = rng.randint(1, 3)
    e = npotent_sample(rng, n, 4, size)
    f = npotent_sample(rng, n, 4, size)
    assert power_difference(e, f, j) == mat_pow(f, j) - mat_pow(e, j)


def test_closeness_bound_formula():
    e = CycMatrix.diag([1, 0])
    # ||e||_F = 1, so the bound is 2(n-1) / ((n^2+n+2) 2^(2n))
    for n in (2, 3, 4):
        assert closeness_bound(e, n) == pytest.approx(2 * (n - 1) / ((n * n + n + 2) * 4**n))
    bound, dist, within = closeness_bound_check(e, e, 2)
    assert dist == 0 and within


@settings(max_examples=30, deadline=None)
@given(seeds, ns)
def test_nonzero_npotents_have_norm_at_least_one(seed, n):
    rng = random.Random(seed)
    e = npotent_sample(rng, n, 12, rng.randint(1, 4))
    if not e.is_zero():
        assert frobenius_norm(e) >= 1 - 1e-9

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from conftest import ket, naive_embed, naive_matmul
from qutrit_toffoli.gates import cz, gell_mann, iswap, rotation
from qutrit_toffoli.linalg import (
    ContractError,
    dagger,
    embed,
    expm_hermitian,
    identity,
    is_unitary,
    matmul,
    num_qutrits,
    unitarity_error,
)


def test_matmul_identity():
    assert np.array_equal(matmul(identity(), identity()), np.eye(3))


def test_matmul_gell_mann_square():
    l1 = gell_mann(1)
    assert np.array_equal(matmul(l1, l1), np.diag([1, 1, 0]).astype(complex))
    assert np.allclose(naive_matmul(l1.tolist(), l1.tolist()), np.diag([1, 1, 0]))


def test_matmul_iswap_squared():
    sq = matmul(iswap("02", 0.0), iswap("02", 0.0))
    oracle = np.array(naive_matmul(iswap("02", 0.0).tolist(), iswap("02", 0.0).tolist()))
    expected = np.eye(9, dtype=complex)
    expected[4, 4] = expected[2, 2] = -1  # |11> and |02>
    assert np.allclose(oracle, expected, atol=1e-15)
    assert np.allclose(sq, expected, atol=1e-15)


def test_matmul_dimension_mismatch():
    with pytest.raises(ContractError):
        matmul(identity(1), identity(2))


def test_dagger_examples():
    assert np.array_equal(dagger(identity()), np.eye(3))
    out = dagger(iswap("02", 0.0)) @ ket(0, 2)
    assert np.allclose(out, 1j * ket(1, 1))
    phi = 0.731
    assert np.allclose(dagger(rotation("r01x", phi)), rotation("r01x", -phi), atol=1e-15)


def test_dagger_involution_exact(rng):
    a = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    assert np.array_equal(dagger(dagger(a)), a)


def test_expm_examples():
    assert np.allclose(expm_hermitian(gell_mann(1), 0.0), np.eye(3))
    half = expm_hermitian(gell_mann(1), np.pi / 2)
    assert np.allclose(half, [[0, -1j, 0], [-1j, 0, 0], [0, 0, 1]], atol=1e-15)
    full6 = expm_hermitian(gell_mann(6), np.pi)
    assert np.allclose(full6, np.diag([1, -1, -1]), atol=1e-15)


def test_expm_general_hermitian_matches_scipy(rng):
    from scipy.linalg import expm

    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = a + a.conj().T
    assert np.allclose(expm_hermitian(h, 0.4), expm(-0.4j * h), atol=1e-12)


def test_expm_rejects_non_hermitian():
    with pytest.raises(ContractError):
        expm_hermitian(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), 1.0)


@pytest.mark.parametrize("idx", [1, 2, 6, 7])
@pytest.mark.parametrize("t", [0.0, 0.3, np.pi / 2, 2.5, -1.1])
def test_expm_generators_unitary(idx, t):
    assert unitarity_error(expm_hermitian(gell_mann(idx), t)) < 1e-12


def test_embed_examples():
    assert np.array_equal(embed(identity(), [0], 2), np.eye(9))
    assert np.allclose(embed(cz(), [0, 1], 2) @ ket(1, 1), -ket(1, 1))
    out = embed(iswap("02", 0.0), [1, 0], 2) @ ket(1, 1)
    assert np.allclose(out, -1j * ket(2, 0))


@pytest.mark.parametrize("targets,n", [([0], 1), ([2], 3), ([0, 2], 3), ([2, 0], 3), ([1, 3], 4)])
def test_embed_matches_naive_oracle(targets, n, rng):
    k = len(targets)
    g = unitary_group.rvs(3**k, random_state=rng)
    assert np.allclose(embed(g, targets, n), naive_embed(g, targets, n), atol=1e-13)


@pytest.mark.parametrize("bad", [[0, 0], [0, 3], [-1, 1]])
def test_embed_rejects_bad_targets(bad):
    with pytest.raises(ContractError):
        embed(cz(), bad, 3)


def test_num_qutrits():
    assert num_qutrits(27) == 3
    with pytest.raises(ContractError):
        num_qutrits(8)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), t=st.permutations([0, 1, 2]))
def test_embed_is_homomorphism(seed, t):
    gen = np.random.default_rng(seed)
    a = unitary_group.rvs(9, random_state=gen)
    b = unitary_group.rvs(9, random_state=gen)
    targets = list(t[:2])
    lhs = embed(a @ b, targets, 3)
    rhs = embed(a, targets, 3) @ embed(b, targets, 3)
    assert np.max(np.abs(lhs - rhs)) < 1e-11
    assert is_unitary(lhs, 1e-11)

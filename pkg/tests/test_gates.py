import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ket
from qutrit_toffoli.gates import (
    GATE_TABLE,
    GateSpec,
    convert_iswap_variant,
    cz,
    gell_mann,
    iswap,
    level_swap,
    matrix_of,
    rotation,
    u_gate,
)
from qutrit_toffoli.linalg import ContractError, dagger, unitarity_error

angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)


def test_gell_mann_printed_entries():
    assert np.array_equal(gell_mann(1), [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    assert np.array_equal(gell_mann(7), [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]])


@pytest.mark.parametrize("idx", [1, 2, 6, 7])
def test_gell_mann_traceless_hermitian(idx):
    lam = gell_mann(idx)
    assert np.trace(lam) == 0
    assert np.array_equal(lam, lam.conj().T)


@pytest.mark.parametrize("idx", [0, 3, 8])
def test_gell_mann_rejects_other_indices(idx):
    with pytest.raises(ContractError):
        gell_mann(idx)


def test_rotation_zero_angle():
    assert np.allclose(rotation("r01x", 0.0), np.eye(3))


def test_rotation_r01x_pi():
    # full-angle exponent: cos(pi) on the 01 block, level 2 untouched
    assert np.allclose(rotation("r01x", np.pi), np.diag([-1, -1, 1]), atol=1e-15)


def test_rotation_r02x_pi_moves_zero_to_two():
    # hand product of the three printed factors on |0>: |0> -> -i|1> -> -|2>
    out = rotation("r02x", np.pi) @ ket(0)
    assert np.allclose(out, -ket(2), atol=1e-15)
    assert abs(abs(out[2]) - 1) < 1e-15


def test_rotation_r02_half_angle_period():
    # the inner factor uses phi/2, so r02x(2 pi) is the first full -1 on the 02 block
    assert np.allclose(rotation("r02x", 2 * np.pi), np.diag([-1, 1, -1]), atol=1e-14)


def test_iswap_printed_actions():
    assert np.allclose(iswap("02", 0.0) @ ket(1, 1), -1j * ket(0, 2))
    assert np.allclose(iswap("20", 0.0) @ ket(2, 0), -1j * ket(1, 1))
    theta = 0.83
    assert np.allclose(iswap("02", theta) @ ket(0, 2), -1j * np.exp(-1j * theta) * ket(1, 1))


@given(theta=angles)
def test_iswap_identity_elsewhere(theta):
    m = iswap("02", theta)
    for x, y in itertools.product(range(3), repeat=2):
        if (x, y) not in ((1, 1), (0, 2)):
            assert np.array_equal(m @ ket(x, y), ket(x, y))


@given(theta=angles, variant=st.sampled_from(["02", "20"]))
def test_iswap_unitary(theta, variant):
    m = iswap(variant, theta)
    assert np.linalg.norm(m @ dagger(m) - np.eye(9)) < 1e-12


def test_cz_examples():
    assert np.allclose(cz() @ ket(1, 1), -ket(1, 1))
    assert np.array_equal(cz() @ ket(1, 0), ket(1, 0))


def test_cz_is_two_iswaps_on_qubit_subspace():
    q = [3 * x + y for x in (0, 1) for y in (0, 1)]
    sq = iswap("02", 0.0) @ iswap("02", 0.0)
    assert np.allclose(sq[np.ix_(q, q)], cz()[np.ix_(q, q)], atol=1e-12)
    # the |02> sign differs, so the full matrices are not equal
    assert not np.allclose(sq, cz())


def test_u02_truth_table():
    u = u_gate("02")
    assert np.allclose(u @ ket(0, 0), ket(0, 1))
    assert np.allclose(u @ ket(0, 1), ket(0, 0))
    assert np.allclose(u @ ket(1, 0), -1j * ket(0, 2))
    assert np.allclose(u @ ket(1, 1), ket(1, 0))


def test_u20_core_is_same_logical_gate():
    assert np.allclose(u_gate("20"), u_gate("02"), atol=1e-15)


def test_u20_core_uses_iswap20():
    x02 = np.kron(level_swap(0, 2), level_swap(0, 2))
    x01_j = np.kron(np.eye(3), level_swap(0, 1))
    core = x02 @ u_gate("20") @ np.linalg.inv(x01_j) @ x02
    assert np.allclose(core, iswap("20", 0.0))


@pytest.mark.parametrize("core", ["02", "20"])
def test_u_unitary(core):
    u = u_gate(core)
    assert np.linalg.norm(u @ dagger(u) - np.eye(9)) < 1e-12


@pytest.mark.parametrize("core", ["02", "20"])
@pytest.mark.parametrize("x,y", list(itertools.product((0, 1), repeat=2)))
def test_u_control_contract(core, x, y):
    out = u_gate(core) @ ket(x, y)
    idx = int(np.argmax(np.abs(out)))
    assert abs(abs(out[idx]) - 1) < 1e-12
    assert (idx // 3 == 1) == (x == 1 and y == 1)


def test_parent_hosted_core_breaks_folding():
    """Parking |2> on the parent cannot be composed: a |2> control re-arms it.

    With U' = iSWAP^20 (I x X01), a parent left in |2> by its first child is
    turned back into |1> by the second child's gate.
    """
    naive = iswap("20", 0.0) @ np.kron(np.eye(3), level_swap(0, 1))
    # parent 1, first child 0 -> parent parked in |2>
    assert np.allclose(naive @ ket(1, 0), -1j * ket(2, 0))
    # second child 1: |2,1> -> X01 -> |2,0> -> iSWAP^20 -> |1,1>: parent reads as |1>
    assert np.allclose(naive @ ket(2, 1), -1j * ket(1, 1))


def test_convert_examples():
    assert np.allclose(convert_iswap_variant(iswap("02", 0.0)), iswap("20", 0.0), atol=1e-12)
    m = iswap("02", 0.4)
    assert np.allclose(convert_iswap_variant(convert_iswap_variant(m)), m, atol=1e-15)
    out = convert_iswap_variant(iswap("02", np.pi / 3)) @ ket(1, 1)
    assert np.allclose(out, -1j * np.exp(-1j * np.pi / 3) * ket(2, 0), atol=1e-12)


def test_convert_rejects_other_matrices():
    with pytest.raises(ContractError):
        convert_iswap_variant(cz())


@settings(max_examples=16)
@given(theta=angles)
def test_convert_preserves_theta(theta):
    assert np.max(np.abs(convert_iswap_variant(iswap("02", theta)) - iswap("20", theta))) < 1e-12


def test_matrix_of_examples():
    assert np.array_equal(matrix_of(GateSpec("x01")), [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert np.allclose(matrix_of(GateSpec("u02dg")), dagger(u_gate("02")))
    assert np.allclose(matrix_of(GateSpec("ph", (0, 0, 0))), np.eye(3))
    assert np.allclose(matrix_of(GateSpec("ph", (0.1, 0.2, 0.3))), np.diag(np.exp([0.1j, 0.2j, 0.3j])))


@pytest.mark.parametrize("kind,params", [("cz", (1.0,)), ("r01x", ()), ("nope", ())])
def test_malformed_spec(kind, params):
    with pytest.raises(ContractError):
        GateSpec(kind, params)


@settings(max_examples=60)
@given(kind=st.sampled_from(sorted(GATE_TABLE)), data=st.data())
def test_every_gate_unitary(kind, data):
    params = tuple(data.draw(angles) for _ in range(GATE_TABLE[kind][1]))
    assert unitarity_error(matrix_of(GateSpec(kind, params))) < 1e-12


@settings(max_examples=40)
@given(kind=st.sampled_from([k for k in GATE_TABLE if not k.startswith("iswap")]), data=st.data())
def test_spec_inverse(kind, data):
    spec = GateSpec(kind, tuple(data.draw(angles) for _ in range(GATE_TABLE[kind][1])))
    prod = matrix_of(spec.inverse()) @ matrix_of(spec)
    assert np.allclose(prod, np.eye(prod.shape[0]), atol=1e-12)

"""Qutrit gate zoo: Gell-Mann rotations, iSWAP variants, CZ, and the U gate.

Two-qutrit matrices use the ordering ``|xy>`` with ``x`` the first qutrit,
so the basis index is ``3 * x + y``.
"""
from dataclasses import dataclass, field

import numpy as np

from .linalg import ContractError, dagger, expm_hermitian

# name -> (arity, number of params)
GATE_TABLE = {
    "r01x": (1, 1),
    "r01y": (1, 1),
    "r12x": (1, 1),
    "r12y": (1, 1),
    "r02x": (1, 1),
    "r02y": (1, 1),
    "x01": (1, 0),
    "x12": (1, 0),
    "x02": (1, 0),
    "ph": (1, 3),
    "iswap02": (2, 1),
    "iswap20": (2, 1),
    "cz": (2, 0),
    "u02": (2, 0),
    "u20": (2, 0),
    "u02dg": (2, 0),
    "u20dg": (2, 0),
}

ROTATIONS = ("r01x", "r01y", "r12x", "r12y", "r02x", "r02y")
U_GATES = ("u02", "u20", "u02dg", "u20dg")
ISWAP_CORED = U_GATES + ("iswap02", "iswap20")


@dataclass(frozen=True)
class GateSpec:
    kind: str
    params: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in GATE_TABLE:
            raise ContractError(f"unknown gate {self.kind!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        nparams = GATE_TABLE[self.kind][1]
        if len(params) != nparams:
            raise ContractError(
                f"gate {self.kind!r} takes {nparams} params, got {len(params)}"
            )

    @property
    def arity(self):
        return GATE_TABLE[self.kind][0]

    @property
    def is_two_qutrit(self):
        return self.arity == 2

    def inverse(self):
        """GateSpec whose matrix is the dagger of this one (where expressible)."""
        if self.kind in ("u02", "u20"):
            return GateSpec(self.kind + "dg")
        if self.kind in ("u02dg", "u20dg"):
            return GateSpec(self.kind[:-2])
        if self.kind in ("x01", "x12", "x02", "cz"):
            return self
        if self.kind == "ph":
            return GateSpec("ph", tuple(-p for p in self.params))
        if self.kind in ROTATIONS:
            return GateSpec(self.kind, (-self.params[0],))
        raise ContractError(f"{self.kind!r} has no GateSpec inverse")


_LAMBDA = {
    1: [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    2: [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
    6: [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    7: [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
}


def gell_mann(index):
    if index not in _LAMBDA:
        raise ContractError(f"Gell-Mann index must be one of 1, 2, 6, 7; got {index}")
    return np.array(_LAMBDA[index], dtype=np.complex128)


def rotation(kind, phi):
    """Single-qutrit rotation ``exp(-i lambda phi)`` on the 01 or 12 transition.

    The 02 rotations are the conjugated sequence
    ``exp(-i pi/2 l6) exp(-i phi/2 l1|2) exp(+i pi/2 l6)`` with a half-angle
    inner factor.
    """
    gen = {"r01x": 1, "r01y": 2, "r12x": 6, "r12y": 7, "r02x": 1, "r02y": 2}
    if kind not in gen:
        raise ContractError(f"{kind!r} is not a rotation")
    lam = gell_mann(gen[kind])
    if kind in ("r02x", "r02y"):
        l6 = gell_mann(6)
        return (
            expm_hermitian(l6, np.pi / 2)
            @ expm_hermitian(lam, phi / 2)
            @ expm_hermitian(l6, -np.pi / 2)
        )
    return expm_hermitian(lam, phi)


def level_swap(a, b):
    """Phase-free permutation exchanging levels ``a`` and ``b``."""
    m = np.eye(3, dtype=np.complex128)
    m[[a, b]] = m[[b, a]]
    return m


def phase(t0, t1, t2):
    return np.diag(np.exp(1j * np.array([t0, t1, t2], dtype=float)))


def iswap(variant, theta=0.0):
    """Native two-qutrit iSWAP in the |11>-|02> (``"02"``) or |11>-|20> subspace."""
    if variant not in ("02", "20"):
        raise ContractError(f"iSWAP variant must be '02' or '20', got {variant!r}")
    partner = 2 if variant == "02" else 6  # |02> or |20>
    m = np.eye(9, dtype=np.complex128)
    amp = -1j * np.exp(-1j * theta)
    m[4, 4] = m[partner, partner] = 0.0
    m[partner, 4] = m[4, partner] = amp
    return m


def cz():
    m = np.eye(9, dtype=np.complex128)
    m[4, 4] = -1.0
    return m


_X02_PAIR = np.kron(level_swap(0, 2), level_swap(0, 2))


def convert_iswap_variant(m, atol=1e-12):
    """Turn ``iswap("02", theta)`` into ``iswap("20", theta)`` (and back).

    Conjugation by the 0<->2 level swap on both qutrits is an involution, so
    the same call also maps the 20 variant onto the 02 one.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (9, 9):
        raise ContractError(f"expected a 9x9 iSWAP matrix, got shape {m.shape}")
    amp = m[2, 4] if abs(m[2, 4]) > 0.5 else m[6, 4]
    theta = float(np.angle(amp * 1j) * -1.0)
    if not any(np.allclose(m, iswap(v, theta), atol=atol) for v in ("02", "20")):
        raise ContractError("matrix is not an iSWAP^02 / iSWAP^20 gate")
    return _X02_PAIR @ m @ _X02_PAIR


def u_gate(core="02"):
    """The folding gate ``U_{i->j}`` on ``(i, j)``.

    Truth table on the qubit levels::

        |00> -> |01>   |01> -> |00>   |10> -> -i|02>   |11> -> |10>

    so qutrit ``i`` ends in |1> iff both inputs were |1>.  ``core`` picks the
    native interaction: ``"02"`` uses iSWAP^02 directly, ``"20"`` uses
    iSWAP^20 wrapped in 0<->2 level swaps on both qutrits.  Both cores give
    the same logical gate; the excitation is always parked on ``j``.
    """
    x01_on_j = np.kron(np.eye(3), level_swap(0, 1))
    if core == "02":
        return iswap("02", 0.0) @ x01_on_j
    if core == "20":
        return _X02_PAIR @ iswap("20", 0.0) @ _X02_PAIR @ x01_on_j
    raise ContractError(f"U core must be '02' or '20', got {core!r}")


def matrix_of(spec):
    """Dense matrix of a ``GateSpec``."""
    k, p = spec.kind, spec.params
    if k in ROTATIONS:
        return rotation(k, p[0])
    if k == "x01":
        return level_swap(0, 1)
    if k == "x12":
        return level_swap(1, 2)
    if k == "x02":
        return level_swap(0, 2)
    if k == "ph":
        return phase(*p)
    if k == "iswap02":
        return iswap("02", p[0])
    if k == "iswap20":
        return iswap("20", p[0])
    if k == "cz":
        return cz()
    if k in ("u02", "u20"):
        return u_gate(k[1:])
    if k in ("u02dg", "u20dg"):
        return dagger(u_gate(k[1:3]))
    raise ContractError(f"no matrix for {spec!r}")

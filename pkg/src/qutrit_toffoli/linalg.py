"""Dense complex linear algebra for qutrit gate matrices.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128`` whose
dimension is a power of three.  Basis index of ``|x_1 ... x_N>`` is
``sum(x_i * 3**(N - i))``, i.e. qutrit 0 is the most significant digit.
"""
import numpy as np

UNITARY_ATOL = 1e-12
HERMITIAN_ATOL = 1e-12


class ContractError(ValueError):
    """Raised when an operation is called outside its documented domain."""


def _as_square(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {a.shape}")
    return a


def is_power_of_three(d):
    if d < 1:
        return False
    while d % 3 == 0:
        d //= 3
    return d == 1


def num_qutrits(dim):
    """Number of qutrits ``k`` with ``3**k == dim``."""
    if not is_power_of_three(dim):
        raise ContractError(f"dimension {dim} is not a power of 3")
    k = 0
    while dim > 1:
        dim //= 3
        k += 1
    return k


def identity(k=1):
    return np.eye(3**k, dtype=np.complex128)


def matmul(a, b):
    a = _as_square(a)
    b = _as_square(b)
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def dagger(a):
    return _as_square(a).conj().T


def unitarity_error(u):
    """Frobenius norm of ``U U^dagger - I``."""
    u = _as_square(u)
    return float(np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])))


def is_unitary(u, atol=UNITARY_ATOL):
    return unitarity_error(u) < atol


def is_hermitian(h, atol=HERMITIAN_ATOL):
    h = _as_square(h)
    return bool(np.max(np.abs(h - h.conj().T), initial=0.0) < atol)


def expm_hermitian(h, t):
    """Return ``exp(-i t h)`` for Hermitian ``h``.

    Generators with ``h**3 == h`` (all the Gell-Mann matrices used here)
    get the closed form ``I + (cos t - 1) h**2 - i sin t h``; anything else
    goes through an eigendecomposition.
    """
    h = _as_square(h)
    if not is_hermitian(h):
        raise ContractError("expm_hermitian requires a Hermitian matrix")
    eye = np.eye(h.shape[0], dtype=np.complex128)
    h2 = h @ h
    if np.allclose(h2 @ h, h, rtol=0.0, atol=1e-14):
        return eye + (np.cos(t) - 1.0) * h2 - 1j * np.sin(t) * h
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def embed(gate, targets, n):
    """Lift a 1- or 2-qutrit ``gate`` acting on ``targets`` to an ``n``-qutrit matrix.

    ``targets`` is ordered: ``gate``'s first (most significant) qutrit goes to
    ``targets[0]``.  Passing ``[1, 0]`` therefore applies the gate with its
    qutrit roles swapped.
    """
    gate = _as_square(gate)
    k = num_qutrits(gate.shape[0])
    targets = [int(t) for t in targets]
    if k not in (1, 2) or len(targets) != k:
        raise ContractError(f"gate on {k} qutrits cannot take targets {targets}")
    if len(set(targets)) != k:
        raise ContractError(f"duplicate targets {targets}")
    if any(t < 0 or t >= n for t in targets):
        raise ContractError(f"targets {targets} out of range for n={n}")
    dim = 3**n
    # Row j of the identity, viewed as an n-index tensor, is the basis ket |j>;
    # applying the gate to every column builds the full matrix.
    full = np.eye(dim, dtype=np.complex128).reshape((3,) * n + (dim,))
    g = gate.reshape((3,) * (2 * k))
    out = np.tensordot(g, full, axes=(list(range(k, 2 * k)), targets))
    out = np.moveaxis(out, list(range(k)), targets)
    return out.reshape(dim, dim)

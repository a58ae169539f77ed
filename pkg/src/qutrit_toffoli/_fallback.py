"""NumPy implementations of the compiled kernels, same signatures."""
import numpy as np


def apply_gate(psi, gate, t0, t1, n):
    batch = psi.shape[1]
    targets = [t0] if t1 < 0 else [t0, t1]
    k = len(targets)
    t = psi.reshape((3,) * n + (batch,))
    g = np.asarray(gate).reshape((3,) * (2 * k))
    out = np.tensordot(g, t, axes=(list(range(k, 2 * k)), targets))
    out = np.moveaxis(out, list(range(k)), targets)
    psi[...] = out.reshape(psi.shape)
    return psi


def basis_sweep(inputs, t0, t1, perm, phase, n):
    idx = np.array(inputs, dtype=np.int64)
    ph = np.ones(idx.shape[0], dtype=np.complex128)
    for k in range(len(t0)):
        s0 = 3 ** (n - 1 - int(t0[k]))
        d0 = (idx // s0) % 3
        if t1[k] >= 0:
            s1 = 3 ** (n - 1 - int(t1[k]))
            d1 = (idx // s1) % 3
            loc = 3 * d0 + d1
            new = perm[k][loc]
            idx = idx + (new // 3 - d0) * s0 + (new % 3 - d1) * s1
        else:
            loc = d0
            new = perm[k][loc]
            idx = idx + (new - d0) * s0
        ph = ph * phase[k][loc]
    return idx, ph

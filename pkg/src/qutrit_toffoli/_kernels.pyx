# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for statevector gate application and basis-path sweeps."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long long ipow3(int k) nogil:
    cdef long long r = 1
    cdef int i
    for i in range(k):
        r *= 3
    return r


def apply_gate(double complex[:, ::1] psi, double complex[:, ::1] gate,
               int t0, int t1, int n):
    """Apply a 3x3 (``t1 < 0``) or 9x9 gate in place to a ``(3**n, batch)`` block.

    Exact-zero gate entries are skipped, so permutation-with-phase gates
    cost one multiply per amplitude.
    """
    cdef long long dim = ipow3(n)
    cdef Py_ssize_t batch = psi.shape[1]
    cdef long long s0 = ipow3(n - 1 - t0)
    cdef long long s1 = ipow3(n - 1 - t1) if t1 >= 0 else 0
    cdef int d = 9 if t1 >= 0 else 3
    cdef long long offs[9]
    cdef int nnz[9]
    cdef int cols[9][9]
    cdef double complex vals[9][9]
    cdef double complex a[9]
    cdef double complex acc
    cdef long long idx
    cdef Py_ssize_t b
    cdef int r, c, k, x, y
    for x in range(3):
        if t1 >= 0:
            for y in range(3):
                offs[3 * x + y] = x * s0 + y * s1
        else:
            offs[x] = x * s0
    for r in range(d):
        nnz[r] = 0
        for c in range(d):
            if gate[r, c] != 0:
                cols[r][nnz[r]] = c
                vals[r][nnz[r]] = gate[r, c]
                nnz[r] += 1
    with nogil:
        for idx in range(dim):
            if (idx // s0) % 3 != 0:
                continue
            if t1 >= 0 and (idx // s1) % 3 != 0:
                continue
            for b in range(batch):
                for c in range(d):
                    a[c] = psi[idx + offs[c], b]
                for r in range(d):
                    acc = 0
                    for k in range(nnz[r]):
                        acc = acc + vals[r][k] * a[cols[r][k]]
                    psi[idx + offs[r], b] = acc
    return np.asarray(psi)


def basis_sweep(long long[::1] inputs, int[::1] t0, int[::1] t1,
                int[:, ::1] perm, double complex[:, ::1] phase, int n):
    """Push basis states through permutation-with-phase gates.

    Op ``k`` maps the local index ``l`` of its targets to ``perm[k, l]`` with
    factor ``phase[k, l]``; single-qutrit ops have ``t1[k] < 0`` and use
    ``l`` in 0..2.
    """
    cdef Py_ssize_t m = inputs.shape[0]
    cdef Py_ssize_t nops = t0.shape[0]
    out_idx_arr = np.empty(m, dtype=np.int64)
    out_ph_arr = np.empty(m, dtype=np.complex128)
    cdef long long[::1] out_idx = out_idx_arr
    cdef double complex[::1] out_ph = out_ph_arr
    cdef long long[::1] s0 = np.empty(max(nops, 1), dtype=np.int64)
    cdef long long[::1] s1 = np.empty(max(nops, 1), dtype=np.int64)
    cdef Py_ssize_t i, k
    cdef long long idx, d0, d1
    cdef int loc, new
    cdef double complex ph
    for k in range(nops):
        s0[k] = ipow3(n - 1 - t0[k])
        s1[k] = ipow3(n - 1 - t1[k]) if t1[k] >= 0 else 0
    with nogil:
        for i in range(m):
            idx = inputs[i]
            ph = 1
            for k in range(nops):
                d0 = (idx // s0[k]) % 3
                if t1[k] >= 0:
                    d1 = (idx // s1[k]) % 3
                    loc = <int>(3 * d0 + d1)
                    new = perm[k, loc]
                    idx = idx + (new // 3 - d0) * s0[k] + (new % 3 - d1) * s1[k]
                else:
                    loc = <int>d0
                    new = perm[k, loc]
                    idx = idx + (new - d0) * s0[k]
                ph = ph * phase[k, loc]
            out_idx[i] = idx
            out_ph[i] = ph
    return out_idx_arr, out_ph_arr

"""Exact N-qutrit simulation.

Two backends:

* dense: a ``(3**n, batch)`` block of statevectors, updated gate by gate;
* basis path: every logical gate here maps a basis state to one basis state
  times a phase, so a circuit can be pushed through index arithmetic only.

Both run on the kernels chosen in :mod:`._backend`.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .gates import GateSpec, matrix_of
from .linalg import ContractError, embed

PERMUTATION_TOL = 1e-9
NORM_TOL = 1e-10
DENSE_UNITARY_MAX_QUTRITS = 7


class BackendMismatch(RuntimeError):
    """A gate creates superpositions and cannot run on the basis-path backend."""


def basis_index(digits):
    idx = 0
    for d in digits:
        idx = 3 * idx + int(d)
    return idx


def digits_of(index, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        index, out[i] = divmod(index, 3)
    return tuple(out)


def qubit_inputs(n):
    """Basis indices of all ``2**n`` states with digits in {0, 1}, in binary order."""
    idx = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        idx = np.stack([3 * idx, 3 * idx + 1], axis=1).ravel()
    return idx


def has_level2(index, n):
    return 2 in digits_of(int(index), n)


@dataclass
class QutritState:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        if self.amps.shape != (3**self.n,):
            raise ContractError(f"expected {3**self.n} amplitudes, got {self.amps.shape}")
        norm = np.linalg.norm(self.amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ContractError(f"state norm {norm} differs from 1")

    @classmethod
    def basis(cls, digits):
        digits = tuple(digits)
        amps = np.zeros(3 ** len(digits), dtype=np.complex128)
        amps[basis_index(digits)] = 1.0
        return cls(len(digits), amps)

    def norm(self):
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class BasisPath:
    index: int
    phase: complex


@dataclass(frozen=True)
class TraceEvent:
    op: int
    gate: str
    targets: tuple
    in_digits: tuple
    out_digits: tuple

    def line(self):
        fmt = lambda xs: "".join(str(x) for x in xs)  # noqa: E731
        tg = "-".join(str(t) for t in self.targets)
        return f"{self.op}, {self.gate}, {tg}, {fmt(self.in_digits)}, {fmt(self.out_digits)}"


def _check_targets(spec, targets, n):
    targets = tuple(int(t) for t in targets)
    if len(targets) != spec.arity:
        raise ContractError(f"{spec.kind} needs {spec.arity} targets, got {targets}")
    if len(set(targets)) != len(targets) or any(t < 0 or t >= n for t in targets):
        raise ContractError(f"invalid targets {targets} for n={n}")
    return targets


def _apply_block(block, spec, targets, n):
    """Apply ``spec`` in place to a ``(3**n, batch)`` block."""
    g = np.ascontiguousarray(matrix_of(spec))
    t1 = targets[1] if len(targets) == 2 else -1
    return _backend.kernels.apply_gate(block, g, targets[0], t1, n)


def apply(state, spec, targets):
    targets = _check_targets(spec, targets, state.n)
    block = np.ascontiguousarray(state.amps.reshape(-1, 1).copy())
    _apply_block(block, spec, targets, state.n)
    return QutritState(state.n, block[:, 0])


def run_dense(circuit, inputs):
    """Columns = output states for the given basis ``inputs`` (dense backend)."""
    n = circuit.n
    inputs = np.asarray(inputs, dtype=np.int64)
    block = np.zeros((3**n, len(inputs)), dtype=np.complex128)
    block[inputs, np.arange(len(inputs))] = 1.0
    for op in circuit.ops:
        targets = _check_targets(op.spec, op.targets, n)
        _apply_block(block, op.spec, targets, n)
    return block


def full_unitary(circuit, max_qutrits=DENSE_UNITARY_MAX_QUTRITS):
    n = circuit.n
    if n > max_qutrits:
        raise ContractError(f"dense unitary for n={n} exceeds budget n<={max_qutrits}")
    u = np.eye(3**n, dtype=np.complex128)
    for op in circuit.ops:
        u = embed(matrix_of(op.spec), op.targets, n) @ u
    return u


def permutation_table(spec):
    """``(perm, phase)`` for a permutation-with-phase gate, else BackendMismatch."""
    m = matrix_of(spec)
    d = m.shape[0]
    perm = np.zeros(9, dtype=np.int32)
    ph = np.ones(9, dtype=np.complex128)
    for col in range(d):
        big = np.flatnonzero(np.abs(m[:, col]) > 1 - PERMUTATION_TOL)
        if len(big) != 1:
            raise BackendMismatch(f"{spec.kind}{spec.params} is not permutation-like")
        perm[col] = big[0]
        ph[col] = m[big[0], col]
    return perm, ph


def _compile(ops, n):
    k = len(ops)
    t0 = np.zeros(k, dtype=np.int32)
    t1 = np.full(k, -1, dtype=np.int32)
    perm = np.zeros((k, 9), dtype=np.int32)
    ph = np.ones((k, 9), dtype=np.complex128)
    cache = {}
    for i, op in enumerate(ops):
        targets = _check_targets(op.spec, op.targets, n)
        t0[i] = targets[0]
        if len(targets) == 2:
            t1[i] = targets[1]
        if op.spec not in cache:
            cache[op.spec] = permutation_table(op.spec)
        perm[i], ph[i] = cache[op.spec]
    return t0, t1, perm, ph


def sweep_basis(circuit, inputs, jobs=1):
    """Output indices and phases for each basis input (basis-path backend)."""
    inputs = np.ascontiguousarray(inputs, dtype=np.int64)
    tables = _compile(circuit.ops, circuit.n)
    kern = _backend.kernels.basis_sweep
    if jobs <= 1 or len(inputs) < 2 * jobs:
        return kern(inputs, *tables, circuit.n)
    chunks = np.array_split(inputs, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(lambda c: kern(np.ascontiguousarray(c), *tables, circuit.n), chunks))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def run_basis(circuit, index):
    """Trace one basis input through the circuit; returns ``(BasisPath, events)``."""
    n = circuit.n
    digits = list(digits_of(int(index), n))
    phase = 1.0 + 0.0j
    events = []
    cache = {}
    for k, op in enumerate(circuit.ops):
        targets = _check_targets(op.spec, op.targets, n)
        if op.spec not in cache:
            cache[op.spec] = permutation_table(op.spec)
        perm, ph = cache[op.spec]
        before = tuple(digits[t] for t in targets)
        loc = before[0] if len(targets) == 1 else 3 * before[0] + before[1]
        new = int(perm[loc])
        after = (new,) if len(targets) == 1 else (new // 3, new % 3)
        for t, d in zip(targets, after):
            digits[t] = d
        phase *= ph[loc]
        events.append(TraceEvent(k, op.spec.kind, targets, before, after))
    return BasisPath(basis_index(digits), complex(phase)), events


def replay(events, digits):
    """Re-apply the digit transitions recorded in ``events`` to ``digits``."""
    digits = list(digits)
    for ev in events:
        if tuple(digits[t] for t in ev.targets) != ev.in_digits:
            raise ContractError(f"trace event {ev.op} does not match register state")
        for t, d in zip(ev.targets, ev.out_digits):
            digits[t] = d
    return tuple(digits)


__all__ = [
    "BackendMismatch",
    "BasisPath",
    "GateSpec",
    "QutritState",
    "TraceEvent",
    "apply",
    "basis_index",
    "digits_of",
    "full_unitary",
    "qubit_inputs",
    "replay",
    "run_basis",
    "run_dense",
    "sweep_basis",
]

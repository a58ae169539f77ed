"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

import numpy as np

from qutrit_toffoli import _backend, _fallback
from qutrit_toffoli.gates import GateSpec, matrix_of
from qutrit_toffoli.sim import _compile, qubit_inputs
from qutrit_toffoli.synth import synth_cnz
from qutrit_toffoli.topology import min_height_tree, random_coupling_map


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_apply(impls, n, batch, kind, repeat):
    spec = GateSpec(kind) if kind != "r01y" else GateSpec("r01y", (0.3,))
    g = np.ascontiguousarray(matrix_of(spec))
    rng = np.random.default_rng(0)
    base = rng.normal(size=(3**n, batch)) + 1j * rng.normal(size=(3**n, batch))
    row = {}
    for name, mod in impls.items():
        if g.shape[0] == 9:
            row[name] = best_of(lambda: mod.apply_gate(base.copy(), g, 1, n - 1, n), repeat)
        else:
            row[name] = best_of(lambda: mod.apply_gate(base.copy(), g, 1, -1, n), repeat)
    return row


def bench_sweep(impls, n, repeat):
    cmap = random_coupling_map(n, random.Random(n))
    circ = synth_cnz(min_height_tree(cmap), cmap)
    tables = _compile(circ.ops, n)
    inputs = np.ascontiguousarray(qubit_inputs(n))
    return {name: best_of(lambda: mod.basis_sweep(inputs, *tables, n), repeat)
            for name, mod in impls.items()}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = {"numpy": _fallback}
    if _backend.NAME == "cython":
        impls["cython"] = _backend.kernels
    else:
        print("compiled extension not built; showing the numpy fallback only")
    names = list(impls)
    print(f"{'kernel':<34}" + "".join(f"{n:>12}" for n in names))
    for n, batch, kind in [(8, 64, "u02"), (10, 64, "u02"), (10, 64, "cz"), (10, 64, "r01y")]:
        row = bench_apply(impls, n, batch, kind, args.repeat)
        print(f"{f'apply_gate n={n} batch={batch} {kind}':<34}" + "".join(f"{row[k]:>11.4f}s" for k in names))
    for n in (10, 14, 16):
        row = bench_sweep(impls, n, args.repeat)
        print(f"{f'basis_sweep n={n} inputs={2**n}':<34}" + "".join(f"{row[k]:>11.4f}s" for k in names))


if __name__ == "__main__":
    main()

"""Generalized Toffoli synthesis with qutrits over arbitrary coupling maps."""
from ._backend import NAME as KERNEL_BACKEND
from .gates import GateSpec, cz, gell_mann, iswap, matrix_of, rotation, u_gate
from .sim import QutritState, full_unitary, run_basis
from .synth import Circuit, CircuitOp, SynthStats, lower_to_native, synth_cnx, synth_cnz
from .topology import CouplingMap, RootedTree, aspen_like, load_coupling, min_height_tree, parse_coupling
from .verify import VerifyReport, verify_circuit

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Circuit",
    "CircuitOp",
    "CouplingMap",
    "GateSpec",
    "QutritState",
    "RootedTree",
    "SynthStats",
    "VerifyReport",
    "aspen_like",
    "cz",
    "full_unitary",
    "gell_mann",
    "iswap",
    "load_coupling",
    "lower_to_native",
    "matrix_of",
    "min_height_tree",
    "parse_coupling",
    "rotation",
    "run_basis",
    "synth_cnx",
    "synth_cnz",
    "u_gate",
    "verify_circuit",
]

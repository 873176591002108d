"""Compilation to device gate sets and coupling maps."""

from qlbench.compiler.coupling import CouplingMap, DeviceSpec, NativeSet
from qlbench.compiler.passes import (
    CompiledCircuit,
    compile_circuit,
    decompose,
    is_coupling_compliant,
    is_native,
    relabel_bitstring,
    relabel_distribution,
    relabel_outcomes,
    route,
)

__all__ = [
    "CouplingMap",
    "DeviceSpec",
    "NativeSet",
    "CompiledCircuit",
    "compile_circuit",
    "decompose",
    "route",
    "relabel_bitstring",
    "relabel_distribution",
    "relabel_outcomes",
    "is_coupling_compliant",
    "is_native",
]

"""
qlbench: QAOA landscape benchmarking for simulated quantum cloud offerings

Samples depth-1 and depth-2 QAOA MaxCut energy landscapes on an equidistant
(gamma, beta) grid through a uniform backend layer, and compares them with the
noise-free simulation and the maximally mixed state.
"""

__version__ = "1.0.0"
__license__ = "MIT"

from qlbench.backends.registry import BackendRegistry
from qlbench.circuit.qaoa import QaoaParams, build_qaoa_circuit
from qlbench.core.models import Counts, NoiseProfile, WeightedGraph
from qlbench.landscape.models import GridSpec, Landscape, find_minimum
from qlbench.landscape.sampler import sample_landscape, warm_start_chain
from qlbench.metrics.mad import mad, mad_mms, mad_sim
from qlbench.problem.graph import paper_instance

__all__ = [
    "WeightedGraph",
    "Counts",
    "NoiseProfile",
    "QaoaParams",
    "build_qaoa_circuit",
    "BackendRegistry",
    "GridSpec",
    "Landscape",
    "find_minimum",
    "sample_landscape",
    "warm_start_chain",
    "mad",
    "mad_sim",
    "mad_mms",
    "paper_instance",
]

"""Geometric entanglement of single qubits in layered RY / controlled-phase circuits."""

from .circuits import (
    Circuit,
    EntanglingEdge,
    Layer,
    Topology,
    build_qgan_circuit,
    build_variational_circuit,
    run,
)
from .entanglement import (
    SpinMean,
    entanglement,
    entanglement_from_spin,
    entanglement_grid_oracle,
    entanglement_schmidt_oracle,
    fubini_study_distance,
    mean_spin,
)
from .errors import ConfigurationError, ConsistencyError, QubitIndexError, SizeError
from .statevector import (
    StateVector,
    apply_cp,
    apply_rx,
    apply_ry,
    init_zero_state,
    inner_product,
    reduced_density_1q,
)

__version__ = "0.1.0"

"""gbsim: photon-counting statistics of linear-optical networks with
Gaussian input states.

The package provides four exact probability engines (coherent closed form,
general pairing sum, thermal permanent, squeezed-vacuum pairing sum), an
exact classical sampler for classical Gaussian inputs, a sampling-based
estimator for permanents of positive-semidefinite Hermitian matrices, and a
truncated-Fock-space oracle used to validate all of the above.
"""

__version__ = "0.1.0"

from .engines import (
    enumerate_patterns,
    pairing_matrix,
    pattern_weight,
    prob_coherent,
    prob_general,
    prob_squeezed,
    prob_thermal,
)
from .errors import (
    ContractError,
    CostLimitError,
    CutoffError,
    GbsimError,
    NumericalIntegrityError,
    ValidationError,
)
from .interferometer import (
    Interferometer,
    NetworkDecomposition,
    TwoModeLayer,
    decompose,
    haar_random,
    propagate_coherent,
    tmsv_network,
    validate_unitary,
)
from .matrix_functions import (
    HAFNIAN_LIMIT,
    PERMANENT_LIMIT,
    hafnian,
    permanent,
    permanent_naive,
    submatrix_by_pattern,
)
from .psd_permanent import (
    PermanentEstimate,
    ThermalEmbedding,
    embed,
    estimate_permanent,
    exact_permanent_psd,
)
from .qform import OutputQForm, build_qform
from .sampler import (
    SampleReport,
    draw_coherent_inputs,
    estimate_pattern_probability,
    sample_patterns,
)
from .states import (
    GaussianModeState,
    QFunctionParams,
    derive_q_params,
    is_classical,
    mean_photon_number,
    squeezed,
    squeezed_thermal,
    state_from_descriptor,
    thermal,
    vacuum,
)

__all__ = [
    "__version__",
    "GaussianModeState", "QFunctionParams", "vacuum", "thermal", "squeezed",
    "squeezed_thermal", "derive_q_params", "is_classical", "mean_photon_number",
    "state_from_descriptor",
    "Interferometer", "TwoModeLayer", "NetworkDecomposition", "validate_unitary",
    "haar_random", "propagate_coherent", "decompose", "tmsv_network",
    "OutputQForm", "build_qform",
    "permanent", "permanent_naive", "hafnian", "submatrix_by_pattern",
    "PERMANENT_LIMIT", "HAFNIAN_LIMIT",
    "pattern_weight", "enumerate_patterns", "pairing_matrix",
    "prob_coherent", "prob_general", "prob_thermal", "prob_squeezed",
    "SampleReport", "draw_coherent_inputs", "sample_patterns",
    "estimate_pattern_probability",
    "ThermalEmbedding", "PermanentEstimate", "embed", "estimate_permanent",
    "exact_permanent_psd",
    "GbsimError", "ValidationError", "ContractError", "CutoffError",
    "CostLimitError", "NumericalIntegrityError",
]

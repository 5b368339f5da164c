"""Bipartite entanglement of harmonic-oscillator networks defined by graphs."""

from .closed_forms import (
    chebyshev_q,
    closed_form_d,
    closed_form_entropy,
    large_coupling_entropy,
    large_coupling_report,
    lollipop_d,
    path_d,
    path_d_polynomial,
    star_partition_d,
)
from .conductance import conductance, entropy_conductance_table
from .exceptions import NotPositiveDefiniteError, NumericalError, SchmidtClampWarning
from .graphs import (
    Bipartition,
    FourBlockPartition,
    Graph,
    PotentialMatrix,
    four_block_of,
    laplacian,
    make_family,
    potential_matrix,
)
from .reduction import (
    EntropyResult,
    SchmidtSpectrum,
    entropy,
    entropy_from_d,
    entropy_oracle,
    schmidt_probabilities,
    schmidt_spectrum_direct,
    single_node_entropy,
)
from .schur import corollary1_d, entropy_via_schur, schur_reduce, theorem1_d

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "chebyshev_q",
    "closed_form_d",
    "closed_form_entropy",
    "conductance",
    "corollary1_d",
    "entropy",
    "entropy_conductance_table",
    "entropy_from_d",
    "entropy_oracle",
    "entropy_via_schur",
    "EntropyResult",
    "four_block_of",
    "FourBlockPartition",
    "Graph",
    "laplacian",
    "large_coupling_entropy",
    "large_coupling_report",
    "lollipop_d",
    "make_family",
    "NotPositiveDefiniteError",
    "NumericalError",
    "path_d",
    "path_d_polynomial",
    "potential_matrix",
    "PotentialMatrix",
    "schmidt_probabilities",
    "schmidt_spectrum_direct",
    "SchmidtClampWarning",
    "SchmidtSpectrum",
    "schur_reduce",
    "single_node_entropy",
    "star_partition_d",
    "theorem1_d",
]

"""Spin-channel simulator.

Separable qubit-qudit twins of noisy two-qubit singlet channels, the four
communication protocols they support, and the measures that verify them.
"""

from .errors import (
    CapacityError,
    ContractViolationError,
    DimensionMismatchError,
    ExceptionalStateError,
    InvalidBlochError,
    InvalidInputError,
    InvalidParameterError,
    NotPositiveError,
    SeparabilityRangeError,
    SpinChanError,
)
from .linalg import (
    embed_operator,
    hermitian_eig,
    partial_trace,
    permute_subsystems,
    psd_sqrt,
    tensor_product,
    unitary_from_generator,
)
from .measurement import (
    MeasurementRecord,
    ProjectorSet,
    bell_projectors,
    dichotomic_projectors,
    direction_projectors,
    four_party_contract,
    measure,
    sample_outcome,
)
from .metrics import (
    AsymptoticsReport,
    MetricReport,
    asymptotics_check,
    disturbance_witness,
    fidelity,
    hs_distance,
    relative_distance,
)
from .protocols import (
    Correction,
    ProtocolTranscript,
    protocol_discord_swap,
    protocol_known_qubit,
    protocol_unknown_qubit,
    protocol_unknown_qudit,
)
from .sphere import SphereGrid
from .spin import (
    HalfInteger,
    SpinCoherentState,
    SpinTriple,
    spin_coherent_state,
    spin_operators,
    wigner_rotation,
)
from .states import (
    BlochVector,
    DensityMatrix,
    ProductEnsemble,
    QFunctionSamples,
    equivalent_qudit,
    equivalent_werner,
    maximally_mixed,
    q_function,
    qubit_state,
    retrieval_observable,
    s_min,
    separable_decomposition,
    werner_2x2,
)

__version__ = "0.1.0"

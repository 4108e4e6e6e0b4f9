"""Projector sets for reconstructing density matrices of finite-dimensional systems.

Constructions (standard representative/complete sets, prime-dimension
mutually unbiased bases from the Weyl pair, tensor composition), their
classification, linear tomography and separable decompositions.
"""

from .classify import (
    ClassificationReport,
    MeasurementMap,
    check_symmetry,
    classify,
    measurement_map,
    symmetric_witnesses,
)
from .errors import NumericalError, ProjsetsError, ValidationError
from .linalg import (
    Spectrum,
    ket,
    matrix_power,
    projector_of,
    tensor_product,
    trace_inner,
    unit_cell_basis,
    unitary_eigensystem,
)
from .separability import (
    SeparableForm,
    minimize_beta_lp,
    positive_shift,
    real_decomposition,
    separable_form,
)
from .sets import (
    ProjectorSet,
    compose,
    fourier_matrix,
    mub_prime,
    standard_complete,
    standard_representative,
    weyl_complete,
)
from .tomography import (
    CountsRecord,
    estimate,
    probabilities,
    probabilities_raw,
    project_to_density,
    reconstruct,
    sample_counts,
)
from .weyl import (
    WeylMonomial,
    commutation_exponent,
    monomial_as_power,
    von_neumann_transform,
    weyl_pair,
)

__version__ = "0.1.0"

"""Optical and symplectic tomograms, tomographic entropies and entropic
uncertainty relations for continuous-variable quantum states."""

from ._accel import backend, set_backend, using_backend
from .entropy import (
    entropy_scaling_offset,
    position_momentum_entropies,
    renyi_entropy,
    renyi_integral,
    shannon_entropy,
    von_neumann_entropy,
)
from .errors import (
    DegenerateFrameError,
    InvalidInputError,
    InvalidParameterError,
    InvalidStateError,
    NonphysicalMatrixError,
    NonphysicalStateError,
    TomolabError,
    TruncationError,
    UnsupportedSourceError,
    WrongArityError,
)
from .gaussian import (
    ProjectedGaussian,
    gaussian_renyi_integral,
    gaussian_shannon_entropy,
    projected_covariance,
)
from .inequalities import (
    InequalityReport,
    QParameter,
    check_multimode_renyi,
    check_optical_renyi,
    check_optical_shannon,
    check_renyi_position_momentum,
    check_shannon_position_momentum,
    check_symplectic_renyi,
    renyi_rhs,
    sweep_reports,
)
from .states import (
    DEFAULT_GRID,
    DensityMatrix,
    FockSuperposition,
    GaussianStateSpec,
    GridWavefunction,
    ModeGrid,
    MultimodeProductState,
    fock_state,
    gaussian_vacuum,
    gaussian_wavefunction,
    make_fock_superposition,
    make_gaussian_state,
    mixed_density_matrix,
    pure_density_matrix,
    sample_wavefunction,
    squeezed_vacuum,
    two_mode_squeezed_vacuum,
    vacuum,
)
from .tomography import (
    MultimodeTomogram,
    OpticalTomogramTable,
    SampledDensity,
    SymplecticFrame,
    multimode_tomogram,
    optical_tomogram,
    reconstruct_density,
    symplectic_tomogram,
)
from .transforms import (
    hermite_function,
    hermite_functions,
    momentum_representation,
    quadrature_rotate,
    reduce_angle,
)

__version__ = "0.1.0"

"""SU(2) coherent states of the two-mode Raman coupling model.

Core subpackages: ``fock`` (truncated two-mode Fock space and block
algebra), ``states`` (coherent-state construction and identities),
``raman`` (the coupled-oscillator Hamiltonian, its closed-form spectrum
and a Jacobi oracle), ``quadrature`` (resolution-of-identity checks on
the sphere), ``thermo`` (partition functions and internal energy), plus a
FastAPI ``service`` and a thin-client ``cli``.
"""

__version__ = "0.1.0"

from .errors import (
    AcsRamanError,
    BadBeta,
    CombinatoricsOverflow,
    CutoffOverflow,
    DomainError,
    ExponentialNoConvergence,
    GridTooCoarse,
    NoConvergence,
    NumericalError,
    PoleAtSouthPole,
    TailTooFat,
    UnstableBranch,
    UnstableSystem,
    ZeroCoupling,
)
from .fock import (
    BlockMatrix,
    BlockVector,
    ModeOccupation,
    TwoModeState,
    basis_state,
    block_embed,
    block_extract,
    inner_product,
    ladder,
    schwinger,
    zero_state,
)
from .raman import (
    Branch,
    NormalModes,
    RamanParams,
    block_spectrum_oracle,
    eigen_residual,
    energy,
    hamiltonian_block,
    normal_modes,
    spectrum_closed,
    tau_pm,
)
from .states import (
    ACSAngles,
    ACSLabel,
    DickeLabel,
    acs_overlap_closed,
    build_acs,
    build_acs_exponential_oracle,
    build_dicke,
    eigenrelation_residuals,
    tau_from_angles,
)
from .quadrature import (
    ResolutionReport,
    SphereGrid,
    build_grid,
    identity_resolution_full,
    identity_resolution_j,
)
from .thermo import (
    ThermoParams,
    ThermoResult,
    branch_partition,
    internal_energy,
    spectral_sum_oracle,
    stability,
    total_partition,
)

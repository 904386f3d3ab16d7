"""Language-competition dynamics for two monolingual groups and a
bilingual bridge group.

The package splits into layers: ``competency`` computes pairwise
communication capacity and the derived bilingual status, ``model``
holds the parameterization and the ODE vector field, ``equilibria``
gives the closed-form stationary points with Jacobian-based stability,
``dynamics`` integrates trajectories on the simplex, ``analysis`` runs
parameter sweeps, threshold estimation, basins and scenario
classification, and ``baselines`` provides mean-field forms of three
classic comparison models.  The ``langcomp`` CLI wires everything into
reproducible CSV/JSON experiments.
"""

from .competency import (
    CompetencyProfile,
    MutualityPair,
    NoCommunicationError,
    bilingual_status,
    mutuality,
)
from .model import (
    Group,
    ModelParams,
    PopulationState,
    StateDerivative,
    UnsupportedTransitionError,
    read_params,
    rhs_full,
    rhs_reduced,
    transition_rate,
    validate_params,
    write_params,
)
from .equilibria import (
    DegenerateExponentError,
    DeltaExponent,
    EquilibriumKind,
    EquilibriumPoint,
    Stability,
    boundary_conditions,
    classify_stability,
    delta_exponent,
    e3_limit,
    e4_point,
    e7_trace_condition,
    equilibria_all,
    jacobian_full,
    jacobian_reduced,
)
from .dynamics import (
    ConvergenceResult,
    IntegrationError,
    IntegratorOptions,
    Trajectory,
    converge,
    integrate,
    match_equilibrium,
    project_simplex,
)

__version__ = "0.1.0"

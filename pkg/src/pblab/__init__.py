"""Multiphoton blockade in the driven-dissipative two-photon Jaynes-Cummings model.

Submodules: hilbert (truncated space and operators), model (Hamiltonians and
closed-form spectrum), lindblad (Liouvillian and steady states), analytic
(weak-driving perturbation theory), criteria (blockade / tunneling
classification), circuit (superconducting-circuit parameter map), sweep
(parameter sweeps, CSV and plots), cli (command-line front end).
"""

__version__ = "0.1.0"

from .analytic import (
    AmplitudeSet,
    DegenerateDenominator,
    InterferenceSplit,
    analytic_distribution,
    analytic_g2,
    analytic_g3,
    interference_split,
    perfect_blockade_check,
    steady_amplitudes,
)
from .circuit import (
    CircuitParams,
    EffectiveModel,
    GeometryParams,
    RwaCheck,
    effective_model,
    flux_coupling,
    rwa_validity,
)
from .criteria import (
    StatisticsReport,
    build_report,
    classify,
    pn_criterion,
    poisson_reference,
    relative_deviation,
)
from .hilbert import (
    Operator,
    SpaceConfig,
    annihilation,
    atom_operator,
    creation,
    fock_projector,
    identity,
    number,
    weighted_excitation,
)
from .lindblad import (
    DensityMatrix,
    Liouvillian,
    SingularSystem,
    SteadyStateSolution,
    VacuumState,
    build_liouvillian,
    correlation_g,
    full_distribution,
    mean_photon,
    photon_distribution,
    solve_steady_state,
    steady_state,
)
from .model import (
    DriveSpec,
    EigBlock,
    ModelParams,
    hamiltonian_lab,
    hamiltonian_rotating,
    resonance_locations,
    spectrum_block,
)
from .sweep import (
    SweepConfig,
    SweepRow,
    emit_csv,
    emit_plot,
    parse_config,
    run_and_emit,
    run_sweep,
)

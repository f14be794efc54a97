"""Numerical toolkit for cloning the statistics of a single quantum measurement.

Fidelities, measurements and channels on dense complex matrices, the
no-cloning criterion comparing quantum and classical fidelities, and the
explicit constructions around it (B92 states, saturating states, a perfect
cloner for a two-outcome measurement).
"""

from . import tolerances
from .cloning import (
    INCONCLUSIVE,
    INTOLERANT,
    CloneSearchResult,
    CloningReport,
    CloningScenario,
    InputRecord,
    NoCloningVerdict,
    check_broadcasting,
    check_no_cloning_condition,
    check_no_cloning_partial,
    run_scenario,
    search_perfect_cloner,
    two_qubit_unitary,
)
from .constructions import (
    b92_povm,
    b92_states,
    build_cloning_unitary,
    clone_demo,
    construct_saturating_mixed_state,
    construct_saturating_pure_state,
    intolerance_survey,
    published_cloning_unitary,
    saturation_range,
    solve_clone_angles,
    solve_clone_angles_general,
    verify_perfect_cloning,
)
from .errors import NumericalFailure, PovmCloneError
from .measures import (
    check_equality_condition,
    check_transitivity,
    classical_fidelity,
    classical_partial_fidelity,
    fidelity,
    optimal_fidelity_povm,
    partial_fidelity,
    relative_entropy,
)
from .qtypes import (
    DensityOperator,
    JointDist,
    KrausChannel,
    Povm,
    ProbDist,
    PureState,
    Pvm,
    apply_channel,
    joint_distribution,
    measure,
    purify,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

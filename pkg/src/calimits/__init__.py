"""Limit sets, attractors and decision procedures for 1D cellular automata.

The package makes the objects of one-dimensional symbolic dynamics
computable at desk scale: local rules and their iterates, sofic shifts
and SFTs with exact equality, clopen sets, exact forward images, limit
set approximation with stabilization detection, attractors of spreading
clopen sets, the decidable checks (surjectivity, injectivity, closing,
periodic points) with machine-checkable certificates, budgeted
semi-decisions for the undecidable ones, and certificate-emitting rule
constructions.
"""

from .alphabet import Alphabet, AlphabetError, BINARY
from .attractors import (
    AttractorError,
    AttractorReport,
    InnerSFTReport,
    inner_invariant_sft,
    is_invariant_clopen,
    is_spreading_clopen,
    omega_of_clopen,
    reach_clopen,
    spreading_target,
    verify_invariant_certificate,
    verify_spreading_certificate,
)
from .ca import CellularAutomaton, image, spreading_states
from .clopen import ClopenError, ClopenSet
from .configurations import EventuallyPeriodicConfiguration, PeriodicConfiguration
from .constructions import (
    ConstructionError,
    ProductAlphabet,
    augment_spreading,
    find_state_avoiding_orbit,
    product_alphabet,
    product_collapse,
    surjective_counterexample,
)
from .decisions import (
    PairShift,
    brute_injective_on_periodic,
    check_closing,
    check_injective,
    check_surjective,
    closing_window_holds,
    limit_property_semitest,
    pair_shift,
    periodic_point_exists,
    preimage_counts,
    temporally_periodic_sft,
    verify_closing_certificate,
    verify_injective_certificate,
    verify_periodic_point_certificate,
    verify_surjective_certificate,
)
from .limits import (
    LimitApproximation,
    LimitLanguageStatus,
    check_nilpotent,
    check_stable,
    find_f_periodic_points,
    limit_approximation,
    limit_language,
    verify_nilpotent_certificate,
    verify_stable_certificate,
)
from .params import (
    DEFAULT_EXPONENT_BUDGET,
    DEFAULT_SPATIAL_PERIOD,
    DEFAULT_STEP_BUDGET,
    DEFAULT_TEMPORAL_PERIOD,
    DEFAULT_WINDOW,
)
from .rules import LocalRule, RuleDescriptor, RuleError, eca_rule, identity_rule
from .shifts import (
    SFT,
    ShiftError,
    SoficShift,
    is_mixing,
    separating_word,
    subshift_equal,
    subshift_subset,
)
from .verdicts import Verdict

__version__ = "0.1.0"

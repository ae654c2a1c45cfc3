"""Default budgets for the semi-decision procedures.

Every budgeted search takes these as explicit keyword parameters; the
defaults keep all bundled analyses terminating in seconds on elementary
rules while staying meaningful on 3-symbol radius-2 rules.
"""

DEFAULT_STEP_BUDGET = 8        # forward-image stages
DEFAULT_WINDOW = 6             # word length k for language probes
DEFAULT_SPATIAL_PERIOD = 6     # periodic-configuration search bound
DEFAULT_TEMPORAL_PERIOD = 4    # orbit-length search bound
DEFAULT_EXPONENT_BUDGET = 3    # spreading-exponent search bound (cost grows as m^(2kr))

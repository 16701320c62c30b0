"""Application constants."""

# Application
APP_NAME = "nonlocal-cubes"

# Environment variable prefix for settings
ENV_PREFIX = "NONLOCAL_CUBES_"

# Largest integer that survives a round trip through an IEEE double
JSON_SAFE_INT = 2**53 - 1

# Default cover-search node budget before a verdict becomes inconclusive
DEFAULT_NODE_BUDGET = 10**8

# Largest root-of-unity order accepted in an input amplitude
DEFAULT_MAX_AMPLITUDE_ORDER = 2520

# Default tolerance of the float cross-check backend
DEFAULT_FLOAT_TOLERANCE = 1e-9

# Label names of states not attached to a block
STOPPER_NAME = "stopper"
WITNESS_NAME = "witness"

# Exit codes
EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 3
EXIT_MALFORMED_INPUT = 4
EXIT_INTERNAL_ERROR = 5

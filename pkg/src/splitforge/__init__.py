"""splitforge: rainbow-complete hypergraph splittings.

Algebraic constructions over finite fields, design-based splits, a
spectral greedy partitioner, exact forbidden-subgraph certification,
lower-bound calculators, and a brute-force oracle for tiny instances.
"""

__version__ = "0.1.0"

from .structures import (  # noqa: F401
    BudgetExceededError,
    LabeledHypergraph,
    SplitPartition,
    VerificationReport,
    verify_rk,
)
from .forbidden import ForbiddenPattern, check_pattern, parse_pattern  # noqa: F401

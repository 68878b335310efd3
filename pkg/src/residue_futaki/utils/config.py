"""Runtime configuration from the environment (.env supported)."""

import os
from dotenv import load_dotenv

load_dotenv()

# Worker threads for chart sums (0 = one per CPU)
RESIDUE_FUTAKI_THREADS = os.getenv('RESIDUE_FUTAKI_THREADS', '0')

# Monomial-representation solver caps
DEFAULT_MAX_EXPONENT = 8
DEFAULT_MAX_COFACTOR_DEGREE = 10

# Witness search coefficient ranges: [-r, r]^3, tried in order
WITNESS_RANGES = (9, 99)
WITNESS_DRAWS_PER_RANGE = 200


def worker_count() -> int:
    """Resolved number of worker threads. Never raises; bad values fall back to 1."""
    try:
        threads = int(RESIDUE_FUTAKI_THREADS)
    except ValueError:
        return 1
    if threads <= 0:
        return os.cpu_count() or 1
    return threads

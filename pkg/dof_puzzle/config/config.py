import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Solver settings
BRUTE_FORCE_MAX_CELLS = int(os.getenv("BRUTE_FORCE_MAX_CELLS", "12"))
HEURISTIC_RESTARTS = int(os.getenv("HEURISTIC_RESTARTS", "16"))
HEURISTIC_MAX_ITERATIONS = int(os.getenv("HEURISTIC_MAX_ITERATIONS", "10000"))
TIME_CHECK_INTERVAL = int(os.getenv("TIME_CHECK_INTERVAL", "2048"))  # nodes between wall-clock checks

# Alignment settings
DEFAULT_ETA = int(os.getenv("DEFAULT_ETA", "1"))
DEFAULT_TRIALS = int(os.getenv("DEFAULT_TRIALS", "3"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))
VERIFY_COLUMN_CAP = int(os.getenv("VERIFY_COLUMN_CAP", "4096"))

# Coefficients are k * 2**-COEFFICIENT_SCALE_BITS with 1 <= |k| <= 2**COEFFICIENT_BITS
COEFFICIENT_BITS = int(os.getenv("COEFFICIENT_BITS", "20"))
COEFFICIENT_SCALE_BITS = int(os.getenv("COEFFICIENT_SCALE_BITS", "10"))

# Modulus for the fast full-rank certificate (Mersenne prime 2**61 - 1)
RANK_PRIME = int(os.getenv("RANK_PRIME", str((1 << 61) - 1)))

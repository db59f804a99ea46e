import os
from fractions import Fraction

from dotenv import load_dotenv

load_dotenv()

# Grid defaults (overridable from .env or the environment)
DEFAULT_N_MAX = int(os.getenv("GHM_N_MAX", "24"))
DEFAULT_MU_GRID = tuple(
    Fraction(item.strip())
    for item in os.getenv("GHM_MU_GRID", "-1/4,0,1/3,1/2,1,7/2").split(",")
    if item.strip()
)
DEFAULT_SERIES_ORDER = int(os.getenv("GHM_SERIES_ORDER", "12"))
DEFAULT_ROOT_DIGITS = int(os.getenv("GHM_ROOT_DIGITS", "12"))

# Oracle precision and worker pool
DEFAULT_QUAD_PRECISION = int(os.getenv("GHM_QUAD_PRECISION", "192"))
DEFAULT_PARALLELISM = int(os.getenv("GHM_PARALLELISM", "1"))

LOG_LEVEL = os.getenv("GHM_LOG_LEVEL", "INFO").upper()

# Interlacing refinement: maximum number of interval halvings
INTERLACE_REFINEMENT_BUDGET = 64

# Sample parameters for the polynomial identities
BETA_SAMPLES = (Fraction(1, 2), Fraction(1), Fraction(5, 2))
TAU_SAMPLES = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2))
CONVOLUTION_K_SAMPLES = (1, 2)

# Index caps used by the verification suites
IDENTITY_INDEX_CAP = 10
ORTHOGONALITY_INDEX_CAP = 10
RECIPROCITY_DEGREE_CAP = 12
PFAFF_DEGREE_CAP = 12
TRANSFORM_SERIES_ORDER_CAP = 10
MEIXNER_POLLACZEK_DEGREE_CAP = 10

# Quadrature
QUAD_MAX_LEVEL = 12
QUAD_S_SAMPLES = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(3))
QUAD_INDEX_CAP = 8

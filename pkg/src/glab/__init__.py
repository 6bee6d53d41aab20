"""glab: a numerical laboratory for weighted Goldbach representation sums.

Core objects: sieved von Mangoldt tables, FFT-built representation-count
tables, zeta-zero ordinate tables, the truncated oscillation term H, the
circle-method grid identities, and the assembled error-term records.
"""

from .circle import (
    DecompositionTerms,
    ExpSumGrid,
    WindowSum,
    decomposition_terms,
    dyadic_shell_report,
    exp_sum_grid,
    gallagher_check,
    grid_mean,
    local_l2,
    selberg_integral,
    t_closed_form,
    total_integral_check,
)
from .config import RunConfig, load_config
from .error_analysis import (
    ErrorRecord,
    OmegaCheck,
    ap_chebyshev,
    error_ratio_table,
    error_term,
    half_integer_logspace,
    omega_lower_check,
    singular_series,
)
from .errors import (
    CapacityError,
    DegreeError,
    DomainError,
    EmptyTableError,
    FetchError,
    GlabError,
    IntegrityError,
    OrderError,
    ParseError,
    RangeError,
)
from .explicit import HTermResult, h_term, psi_explicit
from .goldbach import GTable, g_direct, g_partial_sum, g_table_fft, max_g_scan
from .sieve import (
    LambdaTable,
    PsiTable,
    build_lambda,
    build_psi,
    euler_phi,
    load_lambda,
    primorial,
    psi,
    save_lambda,
)
from .zeros import (
    ValidationReport,
    ZeroTable,
    builtin_zeros,
    fetch_zeros,
    load_zeros,
    parse_zeros,
    serialize_zeros,
    tail_bound,
    validate_zeros,
    zero_count_estimate,
)

__version__ = "0.1.0"

"""Exact root counting, isolation, and separation bounds for integer trinomials.

The package splits into:

- ``dyadic`` / ``bigmath``: dyadic interval arithmetic, adaptive-precision
  logarithms and the refinement loop behind every exactness claim;
- ``succinct``: exact comparison of succinct integers (signed products of
  integer powers) and exact signs of linear forms in logarithms, with
  Baker-Wustholz floors certifying termination;
- ``constants``: the exact rational constant ledger for the bounds;
- ``trinomial``: counting, critical points, magnitude bounds, certified
  separation bounds, and exact sign evaluation at rational points;
- ``isolate``: certified real-root isolation into disjoint dyadic intervals;
- ``oracle``: brute-force referees (Sturm chains, high-precision complex
  roots, the degree-based baseline bound);
- ``cli``: the ``trisep`` command-line tool.
"""

from .bigmath import (
    PRECISION_CAP_DEFAULT,
    SIGN_DETERMINED,
    WidthBelow,
    ln_interval,
    pow_rat,
    refine,
    refine_sign,
)
from .constants import LEDGER, ConstantLedger, baker_constant
from .dyadic import Dyadic, DyadicInterval
from .errors import (
    BudgetExceededError,
    DomainError,
    ParseError,
    TrisepError,
    ZeroPolynomialError,
)
from .isolate import IsolatedRoot, IsolationReport, bracket_critical_point, isolate_real_roots
from .oracle import (
    DensePoly,
    SturmOracle,
    complex_roots,
    mahler_bound,
    mahler_log_bound,
    min_pairwise_distance,
    sturm_distinct_real_roots,
)
from .succinct import (
    BakerFloor,
    LinearFormInLogs,
    Ordering,
    SuccinctInt,
    baker_floor,
    compare_succinct,
    coprime_basis,
    sign_linear_form,
)
from .trinomial import (
    Binomial,
    BinomialFloor,
    CriticalPoint,
    Monomial,
    RootCountReport,
    SeparationBound,
    Trinomial,
    binomial_min_lower_bound,
    cauchy_bounds,
    count_real_roots,
    critical_point,
    derivative_sup_bound,
    normalize,
    parse_terms,
    reciprocal,
    separation_bound_binomial,
    separation_bound_complex,
    separation_bound_real,
    sign_at_rational,
)

__version__ = "0.1.0"

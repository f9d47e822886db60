"""toggledyn: exact combinatorial dynamics of toggle-based promotion
operators on graph labelings.

Core surface: graphs and labelings (core), the operator-word family
(operators), orbit censuses and homomesy (dynamics), q-analogue sieving
checks (sieving), the stones/coins simulation (stones_coins), and the named
verification suites (verify).  The ``toggledyn`` CLI wraps all of it.
"""

from .core import (
    CyclicInterval,
    Graph,
    cyc,
    cyc_pow,
    cyclic_interval_intersect_count,
    jdt_interval,
    jdt_pair,
    toggle,
)
from .operators import (
    AcyclicOrientation,
    OperatorWord,
    apply_word,
    broken_word,
    canonical_S,
    cyc_bro_word,
    glob_three_step,
    glob_two_step,
    orientation_from_pi,
    permutoric_word,
    permutoric_word_from_orientation,
    phi_word,
    promotion_word,
    rounded_nearest,
    toric_word,
    verify_suffix_lemma,
)
from .dynamics import (
    OrbitCensus,
    divisibility_check,
    full_census,
    homomesy_check,
    indicator_statistic,
    orbit_of,
    order_of,
)
from .sieving import (
    QPolynomial,
    csp_compose,
    csp_verify,
    eval_at_root,
    q_binomial,
    q_factorial,
    q_int,
    rot,
    rot_census,
)
from .stones_coins import (
    Simulation,
    Timeline,
    build_fence,
    omega,
    small_steps,
    stand,
    standbar,
    step_timeline,
)

__version__ = "0.1.0"

"""Digit sums in two multiplicatively independent bases.

Library + CLI for studying integers whose digit sums in two bases a, b
track a prescribed ratio: a recentered two-digit construction that
realizes the ratio, the entropy/Chernoff exponents bracketing how many
such integers exist, exponential-sum and continued-fraction diagnostics
with exact oracles, and exhaustive scan machinery measuring the true
counting functions.
"""

from .construction import (
    ConstructionLaw,
    RatioExperiment,
    StrategyChoice,
    chebyshev_tail,
    choose_strategy,
    enumerate_members,
    make_law,
    mass,
    ratio_experiment,
    sample,
)
from .digits import DigitString, convert_base, digit_sum, from_digits, to_digits
from .diophantine import (
    CertifiedReal,
    ConvergentTable,
    continued_fraction,
    continued_fraction_theta,
    dirichlet_approx,
    discrepancy_bound_cf,
    effective_irrationality,
    multiplicatively_independent,
    star_discrepancy,
    theta_interval,
    theta_multiples,
)
from .errors import ResourceLimitError
from .exponents import (
    ExponentReport,
    UpperBoundReport,
    closed_forms_23,
    g_exponent,
    h_exponent,
    independence_heuristic,
    lower_exponents,
    printed_forms_23,
    rhos,
    solve_v,
    solve_w,
    tau0,
    tau_base,
    upper_exponent,
)
from .scan import (
    JointHistogram,
    RadixCounter,
    ScanSeries,
    digit_sum_counts,
    exponent_fit,
    extend_histogram,
    joint_histogram,
    load_checkpoint,
    predicate_counts,
    save_checkpoint,
    scan_series,
)
from .weyl import (
    binomial_tail_bound,
    delta_n,
    digit_frequency_deviation,
    expected_weyl_sq,
    s_quadratic,
    tail_parameter_choice,
    v_product,
    weyl_sum,
)

__version__ = "0.1.0"

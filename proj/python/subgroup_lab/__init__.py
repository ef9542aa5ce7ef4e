"""Multiplicative subgroups of Z_p: sumsets, energies, exponential sums and bound checks."""

from ._core import (
    BoundCheck,
    CatalogError,
    DependencyError,
    EnergyReport,
    FitResult,
    HeavyOperationDisabled,
    InsufficientData,
    InvalidArgument,
    InvalidOrder,
    InvarianceViolation,
    OverflowRisk,
    Subgroup,
    ZpSet,
    additive_energy,
    bound_catalog,
    check_bound,
    check_six_fold,
    convolve_counts,
    coset_profile,
    coset_reps,
    count_solutions_N,
    covering_index,
    cyclic_convolution_exact,
    dft_magnitudes,
    dilate,
    divisors,
    energy_moment,
    energy_report,
    envelope_fit,
    exponent_fit,
    factorize,
    fold_sumset,
    invariant_convolution_sum,
    is_prime,
    phi_subgroup,
    positivity_condition,
    primitive_root,
    shift_intersect,
    ssc_ratio_sum,
    subgroup,
    sumset,
    sumset_ratio_sum,
    sweep,
    verify_all,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Normal forms of vector fields with nilpotent linear part."""

from ._core import (
    ContractViolation,
    DomainError,
    NotNilpotent,
    StructuralError,
    build_frame,
    eta_sequence,
    gevrey_fit,
    jordan_normalize,
    normal_form,
    nu_constant,
    opt_order,
    remainder_bound,
    small_denominators,
    solve_alpha_system,
    spectrum,
    spectrum_oracle,
    verify_sl2,
)

__all__ = [
    "ContractViolation",
    "DomainError",
    "NotNilpotent",
    "StructuralError",
    "build_frame",
    "eta_sequence",
    "gevrey_fit",
    "jordan_normalize",
    "normal_form",
    "nu_constant",
    "opt_order",
    "remainder_bound",
    "small_denominators",
    "solve_alpha_system",
    "spectrum",
    "spectrum_oracle",
    "verify_sl2",
]

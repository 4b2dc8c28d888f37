"""Python access to the pwlbif C++ core."""

from ._core import (
    ConfigError,
    DomainError,
    NoConvergence,
    NoFixedPoint,
    NormalFormParams,
    PreconditionError,
    ReducedParams,
    ValidityError,
    __version__,
    apply,
    boxcount_bands,
    branch_count,
    branch_index,
    classify_1d,
    classify_2d,
    delta,
    fixed_point,
    h,
    in_triangle,
    locate_codim2,
    orbit,
    period3_frame,
    psi_stats,
    reduce,
    rotation_number,
    saddle,
    scan_1d_csv,
    solve_cycle,
    triangle,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

"""Exact Hom computations in the formal punctured neighborhood of
infinity of Perf K[t,1/t], with a brute-force degree-window oracle.

The compiled core lives in ``puncture._puncture`` (wheel layout) or in a
top-level ``_puncture`` (build-tree layout); this package re-exports its
operations either way.
"""

try:
    from ._puncture import (
        CalculusError,
        StructuralError,
        compose,
        localize,
        rab,
        remark,
        rhom,
        selftest,
        verify_adjunction,
        verify_appendix_b,
        verify_extension,
    )
except ImportError:  # running against the build tree
    from _puncture import (
        CalculusError,
        StructuralError,
        compose,
        localize,
        rab,
        remark,
        rhom,
        selftest,
        verify_adjunction,
        verify_appendix_b,
        verify_extension,
    )

__all__ = [
    "CalculusError",
    "StructuralError",
    "compose",
    "localize",
    "rab",
    "remark",
    "rhom",
    "selftest",
    "verify_adjunction",
    "verify_appendix_b",
    "verify_extension",
]

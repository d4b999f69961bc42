"""Exact cyclotomic substitution tilings.

Thin wrapper over the C++ core; every function returns plain Python data.
"""

from ._cast import (  # noqa: F401
    basis_matrix,
    builtin_json,
    builtin_matrix,
    builtin_names,
    compose_matrix,
    edge_multiplier,
    edge_table,
    gaps,
    ksk_boundary,
    ksk_rhomb,
    min_lambda,
    mu,
    render_builtin,
    tile_counts,
    verify_builtin,
    verify_min,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Graphlet concentration estimation on two-layer multiplex graphs.

Thin python surface over the C++ core: graph generation/ingest, exhaustive
3-node graphlet counting, and the restricted-random-walk estimators
(rwnbn, rwebe, rwomrn, rwmix, plus the unrestricted rwnr baseline).
"""

from ._mlgs import (
    Graph,
    MlxParseError,
    catalog,
    compute_m,
    count_exact,
    generate,
    ingest,
    iso_coefficients,
    load_mlx,
    run_estimator,
    run_experiment,
)

ALGORITHMS = ("rwnbn", "rwebe", "rwomrn", "rwmix", "rwnr")

__all__ = [
    "ALGORITHMS",
    "Graph",
    "MlxParseError",
    "catalog",
    "compute_m",
    "count_exact",
    "generate",
    "ingest",
    "iso_coefficients",
    "load_mlx",
    "run_estimator",
    "run_experiment",
]

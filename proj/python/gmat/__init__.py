"""Google-matrix analysis of directed networks."""

from ._core import (
    ConvergenceError,
    Error,
    Graph,
    ParseError,
    PreconditionError,
    Ranking,
    Reduced,
    cheirank,
    density_grid,
    hidden_links,
    kendall_distance,
    pagerank,
    reduced_google,
    set_thread_count,
    theta_scores,
    thread_count,
)

__all__ = [
    "ConvergenceError",
    "Error",
    "Graph",
    "ParseError",
    "PreconditionError",
    "Ranking",
    "Reduced",
    "cheirank",
    "density_grid",
    "hidden_links",
    "kendall_distance",
    "pagerank",
    "reduced_google",
    "set_thread_count",
    "theta_scores",
    "thread_count",
]

"""Sandpile group arithmetic and discrete logarithms via the monodromy pairing."""

from sandpile_dlp.graphs import (
    Graph,
    banana_subdivided,
    fibonacci,
    laplacian,
    lucas,
    reduced_laplacian,
    square_cycle,
    tree_count,
    wheel,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "banana_subdivided",
    "fibonacci",
    "laplacian",
    "lucas",
    "reduced_laplacian",
    "square_cycle",
    "tree_count",
    "wheel",
]

"""Smart kinetic self-avoiding walk (SKSAW) Monte Carlo laboratory.

Generates full-plane SKSAW samples on square and hexagonal lattices and
tests their scaling limit against full-plane SLE6 predictions: harmonic
measure exit distributions, restriction-measure hull statistics and the
percolation-interface equivalence on the hexagonal lattice.
"""

__version__ = "0.1.0"

from .lattice import LatticeKind  # noqa: E402
from .geometry import DomainKind, DomainSpec, ExitRecord, HullStats  # noqa: E402

__all__ = ["LatticeKind", "DomainKind", "DomainSpec", "ExitRecord",
           "HullStats", "__version__"]

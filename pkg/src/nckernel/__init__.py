"""Exact algebra of semi-multiplicative functions on non-crossing partitions.

Submodules:

* :mod:`nckernel.nc_lattice` partitions, orders, Kreweras complements, chains
* :mod:`nckernel.coeff_rings` rationals, sparse polynomials, dual numbers
* :mod:`nckernel.incidence_group` the convolution group and its named elements
* :mod:`nckernel.cumulant_engine` the action on sequences and cumulant transforms
* :mod:`nckernel.hopf_algebra` the Hopf algebra of generators X_p and its antipode
* :mod:`nckernel.cli` the ``nckernel`` command
"""

from .coeff_rings import QQ, Dual, DualRing, MPoly, PolyRing, parse_scalar
from .cumulant_engine import MomentSeq, act, free_multiply, monotone_discrepancy, transition
from .errors import DomainError, InvariantError, NCKernelError, ParseError
from .hopf_algebra import TPoly, X, antipode_bogoliubov, antipode_chains, count_efficient_chains_0n
from .incidence_group import SemiMultFn, convolve, inverse
from .nc_lattice import Partition, enumerate_nc, kreweras, parse_partition

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "Dual",
    "DualRing",
    "DomainError",
    "InvariantError",
    "MPoly",
    "MomentSeq",
    "NCKernelError",
    "ParseError",
    "Partition",
    "PolyRing",
    "SemiMultFn",
    "TPoly",
    "X",
    "act",
    "antipode_bogoliubov",
    "antipode_chains",
    "convolve",
    "count_efficient_chains_0n",
    "enumerate_nc",
    "free_multiply",
    "inverse",
    "kreweras",
    "monotone_discrepancy",
    "parse_partition",
    "parse_scalar",
    "transition",
]

"""fitkernel: exact-arithmetic Fitting invariants over group rings.

Computes classical Fitting ideals, Fitting invariants over matrix rings
and group rings via reduced norms, generalized adjoint matrices, central
conductors of orders, and the annihilator bounds they produce.
"""

__version__ = "0.1.0"

from .cyclo import CycNum, cyc_mul, galois_apply
from .errors import CatalogError, FitkernelError, SchemaError, UnsupportedFieldError
from .intlinalg import IntLattice, hnf, lattice_index, lattice_member, snf

__all__ = [
    "CycNum",
    "cyc_mul",
    "galois_apply",
    "IntLattice",
    "hnf",
    "snf",
    "lattice_index",
    "lattice_member",
    "FitkernelError",
    "UnsupportedFieldError",
    "CatalogError",
    "SchemaError",
    "__version__",
]

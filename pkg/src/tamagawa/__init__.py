"""Exact-arithmetic engine for relative Tamagawa numbers of quasi-split
semisimple groups over rational function fields."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    ConsistencyError,
    InputError,
    TamagawaError,
    UnsupportedRegimeError,
)
from .intlat import FinAbGroup, IntMatrix, cokernel_structure, kernel_basis, snf, sublattice_index

__all__ = [
    "__version__",
    "TamagawaError",
    "InputError",
    "BudgetExceededError",
    "UnsupportedRegimeError",
    "ConsistencyError",
    "IntMatrix",
    "FinAbGroup",
    "snf",
    "cokernel_structure",
    "kernel_basis",
    "sublattice_index",
]

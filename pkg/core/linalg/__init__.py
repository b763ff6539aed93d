"""Small dense eigenvalue kernels."""

from .eigen import (
    EigenvalueList,
    SymEig,
    all_eigenvalues,
    largest_real,
    largest_real_eigenvalue,
    shifted_diag_rank,
    sym_eig,
)

__all__ = [
    'EigenvalueList',
    'SymEig',
    'all_eigenvalues',
    'largest_real',
    'largest_real_eigenvalue',
    'shifted_diag_rank',
    'sym_eig',
]

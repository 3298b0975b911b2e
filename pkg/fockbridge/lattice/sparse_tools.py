from typing import Optional

import numpy as np
import scipy.sparse as sps


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def restrict(matrix, mask: np.ndarray):
    """Block of `matrix` with rows and columns in `mask`."""
    rows = np.flatnonzero(mask)
    matrix = sps.csr_matrix(matrix)
    return matrix[rows][:, rows]


def max_abs(matrix, mask: Optional[np.ndarray] = None) -> float:
    if mask is not None:
        if not mask.any():
            return 0.0
        matrix = restrict(matrix, mask)
    if sps.issparse(matrix):
        data = sps.csr_matrix(matrix).data
        return float(np.abs(data).max()) if data.size else 0.0
    array = np.asarray(matrix)
    return float(np.abs(array).max()) if array.size else 0.0


def identity(dimension: int):
    return sps.identity(dimension, dtype=complex, format="csr")


def linear_combination(coefficients, operators, dimension: int):
    total = sps.csr_matrix((dimension, dimension), dtype=complex)
    for coefficient, operator in zip(coefficients, operators):
        if coefficient != 0:
            total = total + coefficient * operator
    return total

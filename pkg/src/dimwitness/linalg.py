"""Dense Hermitian linear algebra: eigendecomposition, trace norm, projectors.

All functions take square complex arrays (anything ``np.asarray`` coerces).
Eigensolves are delegated to LAPACK through ``numpy.linalg.eigh``; the
wrappers here add the symmetry validation, the descending eigenvalue order,
and the zero-eigenvalue cutoff that downstream modules rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotHermitian


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by validators and decompositions.

    Passing a custom instance to the functions that accept one tightens or
    loosens every check uniformly.
    """

    hermitian: float = 1e-10        # max |A - A^dag| entry allowed
    zero_eigenvalue: float = 1e-10  # eigenvalues with |l| <= this count as zero
    residual: float = 1e-8          # eigenpair residual / orthonormality slack
    trace_one: float = 1e-9         # density-matrix trace deviation
    positivity: float = 1e-9        # allowed negative-eigenvalue excursion
    effect_ceiling: float = 1e-9    # allowed effect eigenvalue excess above 1
    unit_norm: float = 1e-10        # state-vector norm deviation
    povm_sum: float = 1e-8          # max |sum(effects) - identity| entry
    probability: float = 1e-9       # table entry out-of-range allowance
    row_sum: float = 1e-8           # table normalization deviation


DEFAULT_TOLS = Tolerances()


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order; column ``vectors[:, i]`` pairs with ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_deviation(a) -> float:
    """Largest entrywise deviation of ``a`` from its conjugate transpose."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().swapaxes(-2, -1))))


def require_hermitian(a, tols: Tolerances = DEFAULT_TOLS, what: str = "matrix") -> np.ndarray:
    """Validate ``a`` as Hermitian and return it as a symmetrized complex array.

    Raises ``NotHermitian`` reporting the offending deviation when the
    entrywise asymmetry exceeds ``tols.hermitian``.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise NotHermitian(f"{what} must be square, got shape {a.shape}")
    dev = hermitian_deviation(a)
    if dev > tols.hermitian:
        raise NotHermitian(f"{what} is not Hermitian: max |A - A^dag| = {dev:.3e}")
    return (a + a.conj().swapaxes(-2, -1)) / 2.0


def eig_hermitian(a, tols: Tolerances = DEFAULT_TOLS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    The input is validated against ``tols.hermitian`` first; ``NotHermitian``
    propagates otherwise. Eigenvectors are orthonormal columns.
    """
    h = require_hermitian(a, tols)
    values, vectors = np.linalg.eigh(h)
    return EigenDecomposition(values[::-1].copy(), vectors[:, ::-1].copy())


def trace_norm(a, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix (Schatten 1-norm)."""
    h = require_hermitian(a, tols)
    return float(np.sum(np.abs(np.linalg.eigvalsh(h))))


def positive_part_projector(a, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Projector onto the strictly positive eigenspace of a Hermitian matrix.

    Eigenvalues with magnitude at or below ``tols.zero_eigenvalue`` are
    treated as zero and excluded, so a (numerically) vanishing input maps to
    the zero matrix rather than to noise.
    """
    h = require_hermitian(a, tols)
    values, vectors = np.linalg.eigh(h)
    return projector_from_eigh(values, vectors, tols.zero_eigenvalue)


def projector_from_eigh(values: np.ndarray, vectors: np.ndarray, cutoff: float) -> np.ndarray:
    """Sum of v v^dag over eigenpairs with eigenvalue > cutoff.

    Works on stacked decompositions: ``values`` of shape (..., n) with
    ``vectors`` of shape (..., n, n), columns matching ``numpy.linalg.eigh``.
    """
    keep = (values > cutoff).astype(float)
    return np.einsum("...ik,...k,...jk->...ij", vectors, keep, vectors.conj())

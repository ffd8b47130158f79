"""Pauli matrices and generalized Gell-Mann generators of SU(3) and SU(4).

A single fixed indexing convention is used everywhere:

SU(3) (standard Gell-Mann):
    l1 = E12+E21        l2 = -i(E12-E21)    l3 = diag(1,-1,0)
    l4 = E13+E31        l5 = -i(E13-E31)    l6 = E23+E32
    l7 = -i(E23-E32)    l8 = diag(1,1,-2)/sqrt(3)

SU(4): l1..l8 are the SU(3) generators embedded in the upper-left 3x3
block, then
    l9  = E14+E41       l10 = -i(E14-E41)   l11 = E24+E42
    l12 = -i(E24-E42)   l13 = E34+E43       l14 = -i(E34-E43)
    l15 = diag(1,1,1,-3)/sqrt(6)

Every generator is Hermitian, traceless and normalized so that
trace(l_a l_b) = 2 delta_ab.  Bases are cached as read-only arrays.
"""

from functools import lru_cache

import numpy as np


def _sym(n, i, j):
    m = np.zeros((n, n), dtype=complex)
    m[i - 1, j - 1] = 1.0
    m[j - 1, i - 1] = 1.0
    return m


def _asym(n, i, j):
    m = np.zeros((n, n), dtype=complex)
    m[i - 1, j - 1] = -1.0j
    m[j - 1, i - 1] = 1.0j
    return m


def _freeze(m):
    m.flags.writeable = False
    return m


@lru_cache(maxsize=None)
def _pauli_basis():
    return (
        _freeze(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)),
        _freeze(np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)),
        _freeze(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)),
    )


@lru_cache(maxsize=None)
def _gell_mann_basis(n):
    if n == 3:
        mats = [
            _sym(3, 1, 2),
            _asym(3, 1, 2),
            np.diag([1.0, -1.0, 0.0]).astype(complex),
            _sym(3, 1, 3),
            _asym(3, 1, 3),
            _sym(3, 2, 3),
            _asym(3, 2, 3),
            np.diag([1.0, 1.0, -2.0]).astype(complex) / np.sqrt(3.0),
        ]
    elif n == 4:
        mats = []
        for g3 in _gell_mann_basis(3):
            m = np.zeros((4, 4), dtype=complex)
            m[:3, :3] = g3
            mats.append(m)
        mats += [
            _sym(4, 1, 4),
            _asym(4, 1, 4),
            _sym(4, 2, 4),
            _asym(4, 2, 4),
            _sym(4, 3, 4),
            _asym(4, 3, 4),
            np.diag([1.0, 1.0, 1.0, -3.0]).astype(complex) / np.sqrt(6.0),
        ]
    else:
        raise ValueError(f"Gell-Mann generators are provided for n in {{3, 4}}, not n={n}")
    return tuple(_freeze(m) for m in mats)


def pauli(i: int) -> np.ndarray:
    """Pauli matrix sigma_i for i in 1..3."""
    if i not in (1, 2, 3):
        raise IndexError(f"Pauli index must be 1, 2 or 3, got {i}")
    return _pauli_basis()[i - 1]


def gell_mann(n: int, k: int) -> np.ndarray:
    """Generalized Gell-Mann generator l_k of SU(n), n in {3, 4}, k in 1..n^2-1."""
    basis = _gell_mann_basis(n)
    if not 1 <= k <= n * n - 1:
        raise IndexError(f"generator index must be in 1..{n * n - 1}, got {k}")
    return basis[k - 1]


def generator_basis(n: int):
    """The full generator tuple for SU(n), n in {2, 3, 4}, indexed 1..n^2-1."""
    if n == 2:
        return _pauli_basis()
    return _gell_mann_basis(n)

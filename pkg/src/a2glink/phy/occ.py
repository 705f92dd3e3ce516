"""Orthogonal cover codes used to spread one control symbol across the
data symbol positions of a PUCCH slot.

Indices are 1-based. Length-4 rows are Walsh sequences; length-3 rows are
cube roots of unity. Rows of equal length are mutually orthogonal under
the conjugate inner product.
"""

from __future__ import annotations

import numpy as np

_W3 = np.exp(2j * np.pi / 3.0)

OCC_LENGTH4 = {
    1: np.array([1.0, 1.0, 1.0, 1.0], dtype=np.complex128),
    2: np.array([1.0, -1.0, 1.0, -1.0], dtype=np.complex128),
    3: np.array([1.0, 1.0, -1.0, -1.0], dtype=np.complex128),
    4: np.array([1.0, -1.0, -1.0, 1.0], dtype=np.complex128),
}

OCC_LENGTH3 = {
    1: np.array([1.0, 1.0, 1.0], dtype=np.complex128),
    2: np.array([1.0, _W3, _W3**2], dtype=np.complex128),
    3: np.array([1.0, _W3**2, _W3], dtype=np.complex128),
}


def occ_sequence(length: int, index: int) -> np.ndarray:
    """Return the cover-code row for (``length``, 1-based ``index``)."""
    if length == 4:
        table = OCC_LENGTH4
    elif length == 3:
        table = OCC_LENGTH3
    else:
        raise ValueError(f"no OCC table for length {length}")
    if index not in table:
        raise ValueError(f"OCC index {index} out of range for length {length}")
    return table[index].copy()

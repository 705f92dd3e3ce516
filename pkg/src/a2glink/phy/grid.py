"""Resource-grid container for one resource-block-pair.

A grid is 12 subcarriers by 14 OFDM symbols (two slots of 7). Each cell
carries exactly one kind: control data, DMRS pilot, or empty. The two
shipped layouts are the LTE format 1a pattern (per slot: data on symbols
0,1,5,6 and DMRS on the three centre symbols) and the 5G format 1
pattern (DMRS and data on alternating symbols, 50 % DMRS overhead).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

N_SUBCARRIERS = 12
N_SYMBOLS = 14
SLOT_SYMBOLS = 7


class CellKind(IntEnum):
    EMPTY = 0
    DATA = 1
    DMRS = 2


@dataclass(frozen=True)
class PucchLayout:
    """Cell-kind map plus the per-slot data symbol groups the cover code
    spreads over."""

    name: str
    data_symbols: tuple[int, ...]
    dmrs_symbols: tuple[int, ...]
    slot_data_symbols: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def kind(self) -> np.ndarray:
        k = np.zeros((N_SUBCARRIERS, N_SYMBOLS), dtype=np.int8)
        k[:, list(self.data_symbols)] = CellKind.DATA
        k[:, list(self.dmrs_symbols)] = CellKind.DMRS
        return k

    @property
    def n_data_cells(self) -> int:
        return N_SUBCARRIERS * len(self.data_symbols)

    @property
    def n_dmrs_cells(self) -> int:
        return N_SUBCARRIERS * len(self.dmrs_symbols)


def lte_format1a_layout() -> PucchLayout:
    """LTE PUCCH format 1a: 8 data symbols (96 cells) and 6 DMRS symbols
    (72 cells) over the two slots."""
    return PucchLayout(
        name="lte-format1a",
        data_symbols=(0, 1, 5, 6, 7, 8, 12, 13),
        dmrs_symbols=(2, 3, 4, 9, 10, 11),
        slot_data_symbols=((0, 1, 5, 6), (7, 8, 12, 13)),
    )


def nr_format1_layout() -> PucchLayout:
    """5G PUCCH format 1 over 14 symbols: alternating DMRS starting on the
    first symbol, 7 data symbols (84 cells) and 7 DMRS symbols (84 cells).
    The first slot holds 3 data symbols, the second 4."""
    return PucchLayout(
        name="nr-format1",
        data_symbols=(1, 3, 5, 7, 9, 11, 13),
        dmrs_symbols=(0, 2, 4, 6, 8, 10, 12),
        slot_data_symbols=((1, 3, 5), (7, 9, 11, 13)),
    )


@dataclass
class ResourceGrid:
    """Complex cells of shape (..., 12, 14) tagged by a layout.

    Leading dimensions, when present, batch independent grids through the
    same layout (used by the Monte-Carlo drivers).
    """

    cells: np.ndarray
    layout: PucchLayout = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.cells, dtype=np.complex128)
        if c.shape[-2:] != (N_SUBCARRIERS, N_SYMBOLS):
            raise ValueError(
                f"grid trailing shape must be ({N_SUBCARRIERS}, {N_SYMBOLS}), got {c.shape}"
            )
        self.cells = c

    @property
    def data_cells(self) -> np.ndarray:
        return self.cells[..., :, list(self.layout.data_symbols)]

    @property
    def dmrs_cells(self) -> np.ndarray:
        return self.cells[..., :, list(self.layout.dmrs_symbols)]

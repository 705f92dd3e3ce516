"""Three-valued ACK/NACK detector output."""

from __future__ import annotations

from enum import Enum


class AckNackDecision(Enum):
    """Detector verdict: ACK (bit 1), NACK (bit 0), or DTX ("nothing was
    transmitted"; carries no bit)."""

    ACK = 1
    NACK = 0
    DTX = -1

    @classmethod
    def from_bit(cls, bit: int) -> "AckNackDecision":
        return cls.ACK if bit == 1 else cls.NACK

    @property
    def bit(self) -> int | None:
        return None if self is AckNackDecision.DTX else self.value


#: integer codes used by the batched detectors
ACK_CODE, NACK_CODE, DTX_CODE = 1, 0, -1

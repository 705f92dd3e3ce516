"""802.11-style MAC frames at the granularity this study needs.

Only the ACK control frame (14 octets: frame control 2, duration 2,
receiver address 6, FCS 4) and a generic data frame (24-octet header +
MSDU + FCS) are modelled. Frame-control bit indices follow the air
order: B0-B1 protocol version, B2-B3 type, B4-B7 subtype; the ACK
subtype reads 1, 0, 1, 1 from B4 to B7 (type control). The FCS is the
standard 32-bit CRC transmitted least-significant-octet first.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

TYPE_CONTROL = 0b01
TYPE_DATA = 0b10
SUBTYPE_ACK = 0b1101  # B7..B4 = 1101, i.e. B4..B7 reads 1,0,1,1

DEFAULT_RECEIVER = bytes((0x02, 0x00, 0x00, 0x00, 0x00, 0x01))


@dataclass(frozen=True)
class MacFrameControl:
    protocol_version: int = 0
    type: int = TYPE_CONTROL
    subtype: int = SUBTYPE_ACK
    flags: int = 0  # B8..B15

    def to_octets(self) -> bytes:
        first = (self.protocol_version & 0x3) | ((self.type & 0x3) << 2) | ((self.subtype & 0xF) << 4)
        return bytes((first, self.flags & 0xFF))

    def bit(self, index: int) -> int:
        """Air-order bit B<index> of the frame-control field."""
        octets = self.to_octets()
        return (octets[index // 8] >> (index % 8)) & 1


@dataclass(frozen=True)
class WifiFrame:
    """Complete frame octets, FCS included in the last four."""

    octets: bytes

    @property
    def body(self) -> bytes:
        return self.octets[:-4]

    @property
    def fcs(self) -> bytes:
        return self.octets[-4:]


def _fcs(body: bytes) -> bytes:
    return (zlib.crc32(body) & 0xFFFFFFFF).to_bytes(4, "little")


def fcs_check(frame: WifiFrame) -> bool:
    if len(frame.octets) < 5:
        raise ValueError("frame too short to carry an FCS")
    return _fcs(frame.body) == frame.fcs


def build_ack_frame(receiver_addr: bytes = DEFAULT_RECEIVER, duration_us: int = 0) -> WifiFrame:
    """14-octet ACK control frame with a valid FCS."""
    if len(receiver_addr) != 6:
        raise ValueError("receiver address must be 6 octets")
    fc = MacFrameControl(type=TYPE_CONTROL, subtype=SUBTYPE_ACK)
    body = fc.to_octets() + int(duration_us).to_bytes(2, "little") + bytes(receiver_addr)
    return WifiFrame(body + _fcs(body))


def build_data_frame(payload: bytes | int = 1500, seq: int = 0) -> WifiFrame:
    """Data frame: 24-octet header + MSDU + FCS. ``payload`` may be the
    octet string itself or a length (filled with a fixed byte)."""
    msdu = bytes(payload) if not isinstance(payload, int) else bytes([0xA5]) * payload
    fc = MacFrameControl(type=TYPE_DATA, subtype=0)
    header = (
        fc.to_octets()
        + (0).to_bytes(2, "little")
        + DEFAULT_RECEIVER
        + bytes((0x02, 0, 0, 0, 0, 2))
        + bytes((0x02, 0, 0, 0, 0, 3))
        + ((seq & 0xFFF) << 4).to_bytes(2, "little")
    )
    body = header + msdu
    return WifiFrame(body + _fcs(body))


def frame_to_bits(frame: WifiFrame) -> np.ndarray:
    """Air-order bits: octets in order, LSB of each octet first."""
    return np.unpackbits(np.frombuffer(frame.octets, dtype=np.uint8), bitorder="little")


def bits_to_frame(bits: np.ndarray) -> WifiFrame:
    b = np.asarray(bits, dtype=np.uint8)
    if b.size % 8:
        raise ValueError("bit count is not a whole number of octets")
    return WifiFrame(np.packbits(b, bitorder="little").tobytes())

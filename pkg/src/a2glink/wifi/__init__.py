"""Wi-Fi ACK and data frame PHY for the feedback-reliability comparison."""

from .frames import MacFrameControl, WifiFrame, build_ack_frame, build_data_frame, fcs_check
from .phy import WifiPhyConfig, wifi_encode, wifi_decode, frame_bits, coded_length

__all__ = [
    "MacFrameControl",
    "WifiFrame",
    "build_ack_frame",
    "build_data_frame",
    "fcs_check",
    "WifiPhyConfig",
    "wifi_encode",
    "wifi_decode",
    "frame_bits",
    "coded_length",
]

"""Link-level simulator for UAV remote-control links.

Models the downlink data channel (turbo-coded QPSK transport blocks), the
uplink ACK/NACK feedback channels of LTE (PUCCH format 1a), 5G (PUCCH
format 1) and Wi-Fi (ACK control frames), four retransmission schemes
(HARQ Type-I with and without chase combining, HARQ Type-III with
incremental redundancy, and fixed four-shot burst transmission), and the
throughput/latency degradation caused by UL/DL SINR asymmetry.

The package is organized as a core library (``phy``, ``codec``,
``channel``, ``pucch``, ``wifi``, ``harq``, ``sim``), a FastAPI service
wrapping the experiment drivers (``service``), and a thin CLI client
(``cli``).
"""

__version__ = "0.1.0"

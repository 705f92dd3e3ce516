"""Per-subframe retransmission state machines.

Four schemes over one pluggable PHY/channel pair:

* Type-I, no combining: identical retransmissions, every attempt decoded
  from its own reception only (no soft buffer);
* Type-I with chase combining: identical retransmissions accumulated in
  the soft buffer before each decode;
* Type-III with incremental redundancy: 8 parallel processes selected by
  subframe index, self-decodable redundancy versions cycling 0,2,3,1,
  soft accumulation per process;
* burst: four back-to-back transmissions of every block, decoded once
  from the fully accumulated buffer, new data each burst (four subframes
  of elapsed time per block).

A process is reset (data buffer, soft buffer and counter emptied) after
a success or once the transmission limit is reached. Feedback here is
ideal; lossy feedback is applied by the experiment drivers. A pool is
single-owner mutable state: one simulation run steps it sequentially.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..codec.rate_match import CircularSoftBuffer, HarqScheme
from ..pucch.decision import AckNackDecision


@dataclass
class HarqProcess:
    """Pending block, accumulated soft values and the attempt counter."""

    data_buffer: np.ndarray | None = None  # transport block, CRC attached
    soft_buffer: CircularSoftBuffer | None = None
    tx_count: int = 0

    def reset(self) -> None:
        self.data_buffer = None
        self.soft_buffer = None
        self.tx_count = 0

    @property
    def pending(self) -> bool:
        return self.data_buffer is not None


@dataclass
class HarqPool:
    processes: list[HarqProcess] = field(default_factory=list)

    @classmethod
    def create(cls, n_processes: int) -> "HarqPool":
        if n_processes < 1:
            raise ValueError("a pool needs at least one process")
        return cls([HarqProcess() for _ in range(n_processes)])

    def __len__(self) -> int:
        return len(self.processes)


@dataclass(frozen=True)
class SubframeOutcome:
    """What one subframe (or one burst) produced."""

    delivered_bits: int
    attempts_used: int
    crc_ok: bool
    acknack_sent: AckNackDecision
    new_block: bool
    completed: bool  # block concluded: delivered or dropped
    dropped: bool
    subframes_elapsed: int = 1

    def __post_init__(self):
        if self.delivered_bits > 0 and not self.crc_ok:
            raise ValueError("delivered bits imply a passing CRC")


def harq_index(subframe: int, n_harq: int) -> int:
    """1-based process index: mod(subframe, n_harq) + 1."""
    if n_harq < 1:
        raise ValueError("n_harq must be >= 1")
    return subframe % n_harq + 1


def _attempt(proc: HarqProcess, phy, channel, subframe: int, rv: int, combining: bool, n_tr_max: int) -> SubframeOutcome:
    """One transmission attempt of the process's block (Algorithm 1/2/3
    body lines: load or generate, transmit, decode, account, reset)."""
    new_block = not proc.pending
    if new_block:
        proc.data_buffer = phy.new_transport_block(subframe)
    tb = proc.data_buffer

    symbols = phy.transmit(tb, rv)
    rx, h, noise_var = channel.propagate(symbols)
    llrs = phy.demodulate(rx, h, noise_var)

    if combining:
        if proc.soft_buffer is None:
            proc.soft_buffer = phy.make_buffer()
        buffer = proc.soft_buffer
    else:
        buffer = phy.make_buffer()
    phy.deposit(buffer, llrs, rv)
    _, crc_ok = phy.decode(buffer)

    attempts = proc.tx_count + 1
    delivered = phy.payload_bits if crc_ok else 0
    if crc_ok:
        proc.reset()
        completed, dropped = True, False
    else:
        proc.tx_count += 1
        dropped = proc.tx_count >= n_tr_max
        completed = dropped
        if dropped:
            proc.reset()
    return SubframeOutcome(
        delivered_bits=delivered,
        attempts_used=attempts,
        crc_ok=crc_ok,
        acknack_sent=AckNackDecision.ACK if crc_ok else AckNackDecision.NACK,
        new_block=new_block,
        completed=completed,
        dropped=dropped,
    )


def step_type1_nocomb(pool: HarqPool, phy, channel, subframe: int, n_tr_max: int = 4) -> SubframeOutcome:
    """Type-I without combining: erroneous receptions are discarded."""
    if len(pool) != 1:
        raise ValueError("Type-I runs a single-process pool")
    return _attempt(pool.processes[0], phy, channel, subframe, rv=0, combining=False, n_tr_max=n_tr_max)


def step_type1_cc(pool: HarqPool, phy, channel, subframe: int, n_tr_max: int = 4) -> SubframeOutcome:
    """Type-I with chase combining: identical rv-0 retransmissions
    accumulated in the soft buffer before every decode."""
    if len(pool) != 1:
        raise ValueError("Type-I runs a single-process pool")
    return _attempt(pool.processes[0], phy, channel, subframe, rv=0, combining=True, n_tr_max=n_tr_max)


def step_type3_ir(pool: HarqPool, phy, channel, subframe: int, n_tr_max: int = 4) -> SubframeOutcome:
    """Type-III with incremental redundancy over the process selected by
    the subframe index; redundancy version follows the attempt number."""
    from ..codec.rate_match import rv_schedule

    proc = pool.processes[harq_index(subframe, len(pool)) - 1]
    rv = rv_schedule(HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY, proc.tx_count + 1)
    return _attempt(proc, phy, channel, subframe, rv=rv, combining=True, n_tr_max=n_tr_max)


def step_burst_cc(phy, channel, subframe: int, burst_len: int = 4) -> SubframeOutcome:
    """Fixed-length burst: transmit the same block ``burst_len`` times
    back-to-back, decode once with the fully accumulated buffer. Elapsed
    time is ``burst_len`` subframes; new data every burst."""
    tb = phy.new_transport_block(subframe)
    buffer = phy.make_buffer()
    for _ in range(burst_len):
        symbols = phy.transmit(tb, 0)
        rx, h, noise_var = channel.propagate(symbols)
        buffer = phy.deposit(buffer, phy.demodulate(rx, h, noise_var), 0)
    _, crc_ok = phy.decode(buffer)
    delivered = phy.payload_bits if crc_ok else 0
    return SubframeOutcome(
        delivered_bits=delivered,
        attempts_used=burst_len,
        crc_ok=crc_ok,
        acknack_sent=AckNackDecision.ACK if crc_ok else AckNackDecision.NACK,
        new_block=True,
        completed=True,
        dropped=not crc_ok,
        subframes_elapsed=burst_len,
    )


def step_scheme(scheme: HarqScheme, pool: HarqPool, phy, channel, subframe: int, n_tr_max: int = 4) -> SubframeOutcome:
    if scheme is HarqScheme.TYPE1_NO_COMBINING:
        return step_type1_nocomb(pool, phy, channel, subframe, n_tr_max)
    if scheme is HarqScheme.TYPE1_CHASE_COMBINING:
        return step_type1_cc(pool, phy, channel, subframe, n_tr_max)
    if scheme is HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY:
        return step_type3_ir(pool, phy, channel, subframe, n_tr_max)
    if scheme is HarqScheme.BURST_CHASE_COMBINING:
        return step_burst_cc(phy, channel, subframe)
    raise ValueError(f"unknown scheme {scheme}")

"""Rate-1/3 parallel-concatenated convolutional (turbo) code.

Two identical 8-state recursive systematic constituent encoders
(feedback 1 + D^2 + D^3, feedforward 1 + D + D^3), a quadratic
permutation polynomial interleaver, trellis termination with 12 tail
bits, and iterative max-log-MAP decoding with an extrinsic scale factor
and CRC-gated early exit.

Mother codeword layout for block size K:

    [ systematic (K) | parity1 (K) | parity2 (K) | tail (12) ]

with tail = s/p pairs of encoder 1 then encoder 2. LLR convention:
positive favours bit 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numba import njit

N_STATES = 8
N_TAIL = 12
_EXTRINSIC_SCALE = 0.75  # standard max-log-MAP correction
_NEG_INF = -1.0e300


@dataclass(frozen=True)
class TurboConfig:
    """Decoder knobs; the trellis itself is fixed."""

    n_iterations: int = 8
    early_exit: bool = True


def _build_trellis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Tables indexed [state, input_bit]: next state, parity bit, plus the
    per-state termination input and its parity."""
    nxt = np.zeros((N_STATES, 2), dtype=np.int64)
    par = np.zeros((N_STATES, 2), dtype=np.int64)
    term_in = np.zeros(N_STATES, dtype=np.int64)
    term_par = np.zeros(N_STATES, dtype=np.int64)
    for s in range(N_STATES):
        s1, s2, s3 = (s >> 2) & 1, (s >> 1) & 1, s & 1
        for u in (0, 1):
            d = u ^ s2 ^ s3
            nxt[s, u] = (d << 2) | (s1 << 1) | s2
            par[s, u] = d ^ s1 ^ s3
        term_in[s] = s2 ^ s3  # drives the feedback to zero
        term_par[s] = 0 ^ s1 ^ s3
    return nxt, par, term_in, term_par

_NEXT_STATE, _PARITY, _TERM_IN, _TERM_PAR = _build_trellis()


@njit(cache=True, nogil=True)
def _rsc_encode(bits, nxt, par, term_in, term_par):
    k = bits.shape[0]
    parity = np.empty(k, dtype=np.uint8)
    tail_sys = np.empty(3, dtype=np.uint8)
    tail_par = np.empty(3, dtype=np.uint8)
    s = 0
    for i in range(k):
        u = bits[i]
        parity[i] = par[s, u]
        s = nxt[s, u]
    for t in range(3):
        u = term_in[s]
        tail_sys[t] = u
        tail_par[t] = par[s, u]
        s = nxt[s, u]
    return parity, tail_sys, tail_par, s


@njit(cache=True, nogil=True, fastmath=True)
def _siso_maxlog(ls, la, lp, lt_sys, lt_par, nxt, par):
    """One max-log-MAP pass of a terminated constituent code.

    ls, la, lp: systematic, a-priori and parity LLRs (length K);
    lt_sys, lt_par: the 3 tail LLR pairs. Returns APP LLRs (length K).
    """
    k = ls.shape[0]
    alpha = np.empty((k + 1, N_STATES), dtype=np.float64)
    for s in range(N_STATES):
        alpha[0, s] = 0.0 if s == 0 else _NEG_INF

    # forward over the information steps
    for i in range(k):
        li = ls[i] + la[i]
        for s in range(N_STATES):
            alpha[i + 1, s] = _NEG_INF
        for s in range(N_STATES):
            a = alpha[i, s]
            if a <= _NEG_INF:
                continue
            for u in range(2):
                g = (li if u == 0 else -li) * 0.5 + (lp[i] if par[s, u] == 0 else -lp[i]) * 0.5
                ns = nxt[s, u]
                m = a + g
                if m > alpha[i + 1, ns]:
                    alpha[i + 1, ns] = m
        # normalize to keep metrics bounded
        amax = alpha[i + 1, 0]
        for s in range(1, N_STATES):
            if alpha[i + 1, s] > amax:
                amax = alpha[i + 1, s]
        for s in range(N_STATES):
            alpha[i + 1, s] -= amax

    # backward through the tail: beta at step k
    beta = np.empty(N_STATES, dtype=np.float64)
    beta_next = np.empty(N_STATES, dtype=np.float64)
    for s in range(N_STATES):
        beta[s] = 0.0 if s == 0 else _NEG_INF
    for t in range(2, -1, -1):
        for s in range(N_STATES):
            beta_next[s] = beta[s]
        for s in range(N_STATES):
            s2 = (s >> 1) & 1
            s3 = s & 1
            u = s2 ^ s3
            g = (lt_sys[t] if u == 0 else -lt_sys[t]) * 0.5
            g += (lt_par[t] if par[s, u] == 0 else -lt_par[t]) * 0.5
            beta[s] = g + beta_next[nxt[s, u]]

    # backward over information steps, emitting APP LLRs
    app = np.empty(k, dtype=np.float64)
    for i in range(k - 1, -1, -1):
        li = ls[i] + la[i]
        m0 = _NEG_INF
        m1 = _NEG_INF
        for s in range(N_STATES):
            beta_next[s] = _NEG_INF
        for s in range(N_STATES):
            a = alpha[i, s]
            for u in range(2):
                g = (li if u == 0 else -li) * 0.5 + (lp[i] if par[s, u] == 0 else -lp[i]) * 0.5
                ns = nxt[s, u]
                m = g + beta[ns]
                if a + m > (m0 if u == 0 else m1):
                    if u == 0:
                        m0 = a + m
                    else:
                        m1 = a + m
                if m > beta_next[s]:
                    beta_next[s] = m
        bmax = beta_next[0]
        for s in range(1, N_STATES):
            if beta_next[s] > bmax:
                bmax = beta_next[s]
        for s in range(N_STATES):
            beta[s] = beta_next[s] - bmax
        app[i] = m0 - m1
    return app


def _radical(n: int) -> int:
    r, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            r *= p
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        r *= m
    return r


@lru_cache(maxsize=64)
def qpp_interleaver(k: int) -> np.ndarray:
    """Quadratic permutation polynomial pi(i) = (f1*i + f2*i^2) mod K.

    Coefficients are searched deterministically: f1 odd and coprime to K
    near 0.15*K, f2 a multiple of the radical of K (doubled when 4 | K).
    Among the first valid candidates the pair with the largest minimum
    cyclic spread between consecutive outputs is kept. The result is
    verified to be a permutation.
    """
    if k < 8:
        raise ValueError(f"interleaver block size too small: {k}")
    rad = _radical(k)
    f2_base = rad if (k % 4 != 0 or rad % 2 == 0) else 2 * rad
    idx = np.arange(k, dtype=np.int64)
    best: tuple[int, np.ndarray] | None = None
    f1 = max(3, int(0.15 * k) | 1)
    tried = 0
    while tried < 48:
        if math.gcd(f1, k) == 1:
            tried += 1
            for mult in (1, 2, 3):
                f2 = (f2_base * mult) % k
                if f2 == 0:
                    continue
                pi = (f1 * idx + f2 * idx * idx) % k
                counts = np.bincount(pi, minlength=k)
                if counts.max() != 1:
                    continue
                d = np.abs(np.diff(pi))
                spread = int(np.minimum(d, k - d).min())
                if best is None or spread > best[0]:
                    best = (spread, pi)
        f1 += 2
    if best is None:
        raise RuntimeError(f"no valid QPP coefficients found for K={k}")
    return best[1]


def turbo_encode_mother(bits: np.ndarray) -> np.ndarray:
    """Encode a K-bit block (CRC already attached) into the 3K+12 mother
    codeword."""
    u = np.ascontiguousarray(np.asarray(bits, dtype=np.uint8).ravel())
    k = u.size
    pi = qpp_interleaver(k)
    p1, t1s, t1p, s1 = _rsc_encode(u, _NEXT_STATE, _PARITY, _TERM_IN, _TERM_PAR)
    p2, t2s, t2p, s2 = _rsc_encode(np.ascontiguousarray(u[pi]), _NEXT_STATE, _PARITY, _TERM_IN, _TERM_PAR)
    if s1 != 0 or s2 != 0:
        raise AssertionError("trellis termination failed")
    tail = np.empty(N_TAIL, dtype=np.uint8)
    tail[0:6:2] = t1s
    tail[1:6:2] = t1p
    tail[6:12:2] = t2s
    tail[7:12:2] = t2p
    return np.concatenate([u, p1, p2, tail])


def turbo_decode_mother(
    mother_llrs: np.ndarray,
    k: int,
    cfg: TurboConfig = TurboConfig(),
    crc_ok: Callable[[np.ndarray], bool] | None = None,
) -> tuple[np.ndarray, bool]:
    """Iteratively decode accumulated mother-codeword LLRs.

    Parameters
    ----------
    mother_llrs : array of length 3K+12
    k : information block size (CRC included)
    cfg : iteration configuration
    crc_ok : optional checker used for early exit and the returned flag

    Returns
    -------
    (bits, crc_ok) — decoded K bits and the CRC verdict (False when no
    checker is supplied).
    """
    llr = np.asarray(mother_llrs, dtype=np.float64).ravel()
    if llr.size != 3 * k + N_TAIL:
        raise ValueError(f"expected {3 * k + N_TAIL} mother LLRs, got {llr.size}")
    pi = qpp_interleaver(k)
    inv_pi = np.argsort(pi)
    ls = np.ascontiguousarray(llr[:k])
    lp1 = np.ascontiguousarray(llr[k : 2 * k])
    lp2 = np.ascontiguousarray(llr[2 * k : 3 * k])
    tail = llr[3 * k :]
    t1s, t1p = np.ascontiguousarray(tail[0:6:2]), np.ascontiguousarray(tail[1:6:2])
    t2s, t2p = np.ascontiguousarray(tail[6:12:2]), np.ascontiguousarray(tail[7:12:2])
    ls_int = np.ascontiguousarray(ls[pi])

    le12 = np.zeros(k)  # extrinsic from decoder 1 to 2 (natural order)
    le21 = np.zeros(k)  # extrinsic from decoder 2 to 1 (natural order)
    bits = np.zeros(k, dtype=np.uint8)
    ok = False
    for _ in range(max(1, cfg.n_iterations)):
        app1 = _siso_maxlog(ls, le21, lp1, t1s, t1p, _NEXT_STATE, _PARITY)
        le12 = _EXTRINSIC_SCALE * (app1 - ls - le21)
        app2 = _siso_maxlog(ls_int, np.ascontiguousarray(le12[pi]), lp2, t2s, t2p, _NEXT_STATE, _PARITY)
        le21 = _EXTRINSIC_SCALE * (app2[inv_pi] - ls - le12)
        bits = (app2[inv_pi] < 0).astype(np.uint8)
        if crc_ok is not None:
            ok = crc_ok(bits)
            if ok and cfg.early_exit:
                break
    return bits, ok

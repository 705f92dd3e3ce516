"""BPSK/QPSK mapping and per-axis soft demodulation.

Conventions used throughout the package:

* bit 0 maps to the positive constellation point, bit 1 to the negative
  one, so a positive LLR means "bit 0 is more likely";
* constellations are normalized to unit average symbol power;
* QPSK is Gray mapped with the first bit of each pair on the in-phase
  axis and the second on the quadrature axis.
"""

from __future__ import annotations

import numpy as np

_SQRT2_INV = 1.0 / np.sqrt(2.0)


def _as_bits(bits) -> np.ndarray:
    b = np.asarray(bits)
    if b.size and not np.isin(b, (0, 1)).all():
        raise ValueError("bit vector must contain only 0 and 1")
    return b.astype(np.int8)


def bpsk_modulate(bits) -> np.ndarray:
    """Map bits to BPSK symbols on the real axis: 0 -> +1, 1 -> -1.

    Parameters
    ----------
    bits : array_like of {0, 1}
        Must be nonempty.

    Returns
    -------
    np.ndarray of complex128, same shape as ``bits``.
    """
    b = _as_bits(bits)
    if b.size == 0:
        raise ValueError("bpsk_modulate requires a nonempty bit vector")
    return (1.0 - 2.0 * b).astype(np.complex128)


def qpsk_modulate(bits) -> np.ndarray:
    """Gray-map bit pairs to unit-power QPSK symbols.

    ``(b0, b1) = (0, 0)`` maps to ``(1 + 1j) / sqrt(2)``; b0 selects the
    sign of the in-phase axis, b1 the quadrature axis.

    Parameters
    ----------
    bits : array_like of {0, 1}
        Length must be even.

    Returns
    -------
    np.ndarray of complex128 with ``len(bits) // 2`` symbols.
    """
    b = _as_bits(bits).ravel()
    if b.size % 2 != 0:
        raise ValueError(f"qpsk_modulate requires an even number of bits, got {b.size}")
    i = 1.0 - 2.0 * b[0::2]
    q = 1.0 - 2.0 * b[1::2]
    return (i + 1j * q) * _SQRT2_INV


def bpsk_hard_bits(symbols) -> np.ndarray:
    """Hard decision on the real axis: Re >= 0 -> 0, else 1."""
    s = np.asarray(symbols)
    return (s.real < 0).astype(np.int8)


def qpsk_hard_bits(symbols) -> np.ndarray:
    """Hard decision per axis, inverse of :func:`qpsk_modulate`."""
    s = np.asarray(symbols).ravel()
    bits = np.empty(2 * s.size, dtype=np.int8)
    bits[0::2] = s.real < 0
    bits[1::2] = s.imag < 0
    return bits


def llr_awgn(symbols, noise_var: float) -> np.ndarray:
    """Per-axis LLR of received symbols over AWGN, ``L = 2 y / sigma^2``.

    The BPSK LLR form is applied independently to the in-phase and
    quadrature axes (a QPSK symbol is two independent BPSK signals).
    Positive LLR favours bit 0.

    Parameters
    ----------
    symbols : array_like of complex
    noise_var : float
        Complex noise variance sigma^2, must be > 0.

    Returns
    -------
    np.ndarray of shape ``symbols.shape + (2,)``: ``[..., 0]`` is the
    in-phase LLR, ``[..., 1]`` the quadrature LLR.
    """
    if not noise_var > 0:
        raise ValueError(f"noise_var must be > 0, got {noise_var}")
    s = np.asarray(symbols, dtype=np.complex128)
    out = np.empty(s.shape + (2,), dtype=np.float64)
    scale = 2.0 / noise_var
    out[..., 0] = scale * s.real
    out[..., 1] = scale * s.imag
    return out


def qpsk_soft_bits(symbols, noise_var: float) -> np.ndarray:
    """LLRs of the coded-bit sequence behind a QPSK symbol block.

    Flattens :func:`llr_awgn` back into transmission bit order (I bit of
    symbol 0, Q bit of symbol 0, I bit of symbol 1, ...).
    """
    return llr_awgn(np.asarray(symbols).ravel(), noise_var).reshape(-1)

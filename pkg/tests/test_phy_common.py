"""Modulation, LLR, CRC, cover codes and grid layouts."""

import numpy as np
import pytest

from a2glink.phy import (
    bpsk_modulate,
    qpsk_modulate,
    bpsk_hard_bits,
    qpsk_hard_bits,
    llr_awgn,
    qpsk_soft_bits,
    crc_attach,
    crc_check,
    occ_sequence,
    OCC_LENGTH3,
    OCC_LENGTH4,
    lte_format1a_layout,
    nr_format1_layout,
)


def test_bpsk_mapping():
    assert bpsk_modulate([0])[0] == 1 + 0j
    assert bpsk_modulate([1])[0] == -1 + 0j
    assert np.array_equal(bpsk_modulate([0, 1, 0]), np.array([1, -1, 1], dtype=complex))
    with pytest.raises(ValueError):
        bpsk_modulate([])


def test_qpsk_mapping():
    s = qpsk_modulate([0, 0])
    assert np.allclose(s, (1 + 1j) / np.sqrt(2))
    assert np.allclose(qpsk_modulate([1, 1]), (-1 - 1j) / np.sqrt(2))
    with pytest.raises(ValueError):
        qpsk_modulate([0, 1, 0])


def test_unit_power_after_modulation(rng):
    bits = rng.integers(0, 2, 10000)
    for sym in (bpsk_modulate(bits), qpsk_modulate(bits)):
        assert abs(np.mean(np.abs(sym) ** 2) - 1.0) < 1e-9


def test_modulate_hard_decide_roundtrip_exhaustive():
    # exhaustive over all patterns up to length 16, sampled beyond
    for n in range(1, 17):
        patterns = ((np.arange(2**n)[:, None] >> np.arange(n)) & 1).astype(np.int8)
        for bits in patterns if n <= 10 else patterns[:: max(1, 2 ** (n - 10))]:
            assert np.array_equal(bpsk_hard_bits(bpsk_modulate(bits)), bits)
            if n % 2 == 0:
                assert np.array_equal(qpsk_hard_bits(qpsk_modulate(bits)), bits)
    r = np.random.default_rng(1)
    for n in (18, 24, 32):
        for _ in range(200):
            bits = r.integers(0, 2, n, dtype=np.int8)
            assert np.array_equal(bpsk_hard_bits(bpsk_modulate(bits)), bits)
            assert np.array_equal(qpsk_hard_bits(qpsk_modulate(bits)), bits)


def test_llr_awgn_values():
    assert llr_awgn(np.array([0.0 + 0j]), 1.0)[0, 0] == 0.0
    assert llr_awgn(np.array([1.0 + 0j]), 0.5)[0, 0] == 4.0
    assert llr_awgn(np.array([-0.5 + 0j]), 1.0)[0, 0] == -1.0
    with pytest.raises(ValueError):
        llr_awgn(np.array([1.0 + 0j]), 0.0)
    with pytest.raises(ValueError):
        llr_awgn(np.array([1.0 + 0j]), -1.0)


def test_llr_sign_matches_transmitted_bit(rng):
    bits = rng.integers(0, 2, 2000)
    llrs = qpsk_soft_bits(qpsk_modulate(bits), 0.7)
    assert np.array_equal((llrs < 0).astype(int), bits)


def test_occ_table_values():
    assert np.array_equal(occ_sequence(4, 2), np.array([1, -1, 1, -1], dtype=complex))
    assert np.array_equal(occ_sequence(4, 1), np.array([1, 1, 1, 1], dtype=complex))
    row = occ_sequence(3, 2)
    assert np.allclose(row, [1, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)])
    with pytest.raises(ValueError):
        occ_sequence(4, 5)
    with pytest.raises(ValueError):
        occ_sequence(5, 1)


def test_occ_rows_orthogonal():
    for table in (OCC_LENGTH3, OCC_LENGTH4):
        keys = sorted(table)
        for i in keys:
            for j in keys:
                ip = np.vdot(table[i], table[j])
                if i == j:
                    assert abs(ip - len(table[i])) < 1e-12
                else:
                    assert abs(ip) < 1e-12


def test_crc_roundtrip_and_errors(rng):
    payload = rng.integers(0, 2, 200, dtype=np.uint8)
    block = crc_attach(payload)
    assert block.size == payload.size + 24
    assert crc_check(block)
    flipped = block.copy()
    flipped[57] ^= 1
    assert not crc_check(flipped)
    with pytest.raises(ValueError):
        crc_attach([])
    with pytest.raises(ValueError):
        crc_check(np.zeros(23, dtype=np.uint8))


def test_crc_detects_single_and_double_bit_errors(rng):
    # randomized positions on blocks up to 4096 bits
    for size in (64, 1024, 4072):
        block = crc_attach(rng.integers(0, 2, size, dtype=np.uint8))
        n = block.size
        for _ in range(300):
            i = int(rng.integers(0, n))
            b = block.copy()
            b[i] ^= 1
            assert not crc_check(b)
            j = int(rng.integers(0, n))
            if j == i:
                continue
            b[j] ^= 1
            assert not crc_check(b)


def test_grid_layouts():
    lte = lte_format1a_layout()
    assert lte.n_data_cells == 96
    assert lte.n_dmrs_cells == 72
    assert lte.slot_data_symbols == ((0, 1, 5, 6), (7, 8, 12, 13))
    nr = nr_format1_layout()
    assert nr.n_data_cells == 84
    assert nr.n_dmrs_cells == 84
    assert len(nr.slot_data_symbols[0]) == 3
    assert len(nr.slot_data_symbols[1]) == 4
    kinds = nr.kind
    assert kinds.shape == (12, 14)
    assert set(np.unique(kinds)) == {1, 2}

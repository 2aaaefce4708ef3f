import numpy as np
import pytest

from pacsim import bernoulli_block, bpsk_awgn_llr, polar_transform
from pacsim.channel import pac_encode, pac_scl_decode, separate_decode
from pacsim.construction import (ChannelCodeSpec, JsccSpec, SourceCodeSpec,
                                 build_channel_info_set,
                                 build_source_high_entropy_set)
from pacsim.conv import ConvSpec
from pacsim.crc import CrcSpec
from pacsim.jscc import jscc_encode

import reference as ref


def toy_channel(n=8, k=4, g=(1, 1, 1), crc=None):
    iset = build_channel_info_set(2.0, n, k, trials=20000, seed=3)
    return ChannelCodeSpec(n=n, info_set=tuple(int(i) for i in iset),
                           g=ConvSpec(g), crc=crc)


def toy_jspec():
    h = build_source_high_entropy_set(0.11, 8, 4, method="exact")
    src = SourceCodeSpec(n=8, p=0.11, high_set=tuple(int(i) for i in h),
                         g=ConvSpec((1, 1, 0, 1)),
                         crc=CrcSpec(width=2, polynomial=0x3))
    ch = toy_channel(k=6, g=(1, 1))
    return JsccSpec(source=src, channel=ch)


def test_zero_payload():
    spec = toy_channel()
    assert not pac_encode(np.zeros(4, dtype=np.int8), spec).any()


def test_identity_taps_is_polar():
    spec = toy_channel(g=(1,))
    rng = np.random.default_rng(0)
    for _ in range(20):
        d = rng.integers(0, 2, 4).astype(np.int8)
        v = np.zeros(8, dtype=np.int8)
        v[np.array(spec.info_set)] = d
        assert np.array_equal(pac_encode(d, spec), polar_transform(v))


def test_encode_matches_matrices():
    spec = toy_channel(n=4, k=3, g=(1, 1))
    G = ref.polar_matrix(4)
    T = ref.toeplitz_matrix((1, 1), 4)
    rng = np.random.default_rng(1)
    for _ in range(8):
        d = rng.integers(0, 2, 3).astype(np.int8)
        v = np.zeros(4, dtype=np.int8)
        v[np.array(spec.info_set)] = d
        expected = ref.mat_apply(ref.mat_apply(v, T), G)
        assert np.array_equal(pac_encode(d, spec), expected)


def test_noiseless_round_trip():
    spec = toy_channel()
    rng = np.random.default_rng(2)
    for list_size in (1, 2, 8, 16):
        for _ in range(50):
            d = rng.integers(0, 2, 4).astype(np.int8)
            x = pac_encode(d, spec)
            llr = np.where(x == 0, 1e9, -1e9).astype(np.float64)
            cands = pac_scl_decode(llr, spec, list_size)
            assert np.array_equal(cands[0].d_hat, d)
            assert cands[0].pm == pytest.approx(0.0, abs=1e-6)
            assert cands[0].crc_ok


def test_map_equivalence_full_list():
    # the full-list top candidate is the exhaustive max-posterior codeword
    spec = toy_channel()
    seqs = ref.bit_sequences(4)
    codewords = np.array([pac_encode(seqs[i], spec) for i in range(16)])
    rng = np.random.default_rng(3)
    for trial in range(200):
        d = seqs[rng.integers(0, 16)]
        x = pac_encode(d, spec)
        llr = bpsk_awgn_llr(x, 0.0, 1000 + trial)
        best = int(np.argmax(ref.channel_path_probs(llr, codewords)))
        cands = pac_scl_decode(llr, spec, 16)
        assert np.array_equal(cands[0].d_hat, seqs[best])


def test_list_one_is_sc_and_metric_improves_with_list():
    spec = toy_channel()
    rng = np.random.default_rng(4)
    for trial in range(30):
        d = rng.integers(0, 2, 4).astype(np.int8)
        x = pac_encode(d, spec)
        llr = bpsk_awgn_llr(x, 1.0, 2000 + trial)
        pm_prev = None
        for L in (1, 2, 4, 8, 16):
            cands = pac_scl_decode(llr, spec, L)
            assert len(cands) == min(L, 16)
            if pm_prev is not None:
                assert cands[0].pm <= pm_prev + 1e-12
            pm_prev = cands[0].pm


def test_crc_candidates():
    spec = toy_channel(n=16, k=10, crc=CrcSpec(width=4, polynomial=0x7))
    rng = np.random.default_rng(5)
    d = rng.integers(0, 2, 6).astype(np.int8)
    x = pac_encode(d, spec)
    llr = np.where(x == 0, 1e9, -1e9).astype(np.float64)
    cands = pac_scl_decode(llr, spec, 8)
    assert cands[0].crc_ok and np.array_equal(cands[0].d_hat, d)
    assert cands[0].d_hat.shape == (6,)


def test_separate_decode_noiseless():
    jspec = toy_jspec()
    for seed in range(20):
        s = bernoulli_block(8, 0.11, seed)
        x = jscc_encode(s, jspec)
        llr = np.where(x == 0, 1e9, -1e9).astype(np.float64)
        assert np.array_equal(separate_decode(llr, jspec, 16, 16), s)


def test_input_validation():
    spec = toy_channel()
    with pytest.raises(ValueError):
        pac_encode(np.zeros(3, dtype=np.int8), spec)
    with pytest.raises(ValueError):
        pac_scl_decode(np.zeros(4), spec, 4)
    with pytest.raises(ValueError):
        pac_scl_decode(np.zeros(8), spec, 0)

"""Polar transform, bit reversal, LLR primitives and the constrained SCL
list-decoding front end shared by the source, channel and joint decoders."""

from functools import lru_cache

import numpy as np

from . import kernels
from .kernels import TAG_FORCED_U, TAG_FORCED_V, TAG_FREE


@lru_cache(maxsize=None)
def _bitrev(n):
    N = 1 << n
    perm = np.zeros(N, dtype=np.int64)
    for i in range(N):
        r = 0
        x = i
        for _ in range(n):
            r = (r << 1) | (x & 1)
            x >>= 1
        perm[i] = r
    perm.setflags(write=False)
    return perm


def bit_reversal_permutation(n):
    """Permutation of {0..2^n-1} mapping each index to its bit-reversal."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _bitrev(int(n)).copy()


def _check_block(u):
    u = np.asarray(u, dtype=np.int8)
    if u.ndim != 1:
        raise ValueError("expected a 1-D bit vector")
    N = u.shape[0]
    if N < 1 or (N & (N - 1)) != 0:
        raise ValueError(f"length must be a power of two, got {N}")
    return u, N


def polar_transform(u):
    """Multiply by B_N F^{x n} over GF(2).  Involution; O(N log N)."""
    u, N = _check_block(u)
    n = N.bit_length() - 1
    x = u[_bitrev(n)].copy()
    m = 1
    while m < N:
        blocks = x.reshape(-1, 2 * m)
        blocks[:, :m] ^= blocks[:, m:]
        m *= 2
    return x


def polar_transform_rows(rows):
    """polar_transform applied to every row of a 2-D bit array."""
    rows = np.asarray(rows, dtype=np.int8)
    N = rows.shape[1]
    if N < 1 or (N & (N - 1)) != 0:
        raise ValueError(f"row length must be a power of two, got {N}")
    n = N.bit_length() - 1
    x = rows[:, _bitrev(n)].copy()
    m = 1
    while m < N:
        blocks = x.reshape(rows.shape[0], -1, 2 * m)
        blocks[:, :, :m] ^= blocks[:, :, m:]
        m *= 2
    return x


def llr_check(a, b):
    """Exact box-plus of two LLRs (check-node combination)."""
    return kernels.boxplus(float(a), float(b))


def llr_bit(a, b, u):
    """Variable-node combination: b + a when u = 0, b - a when u = 1."""
    return kernels.bitnode(float(a), float(b), int(u))


class BitConstraints:
    """Per-index decoding constraints: free, forced pre-conv (v) bit, or
    forced post-conv (u) bit."""

    def __init__(self, N):
        self.tags = np.full(N, TAG_FREE, dtype=np.int8)
        self.bits = np.zeros(N, dtype=np.int8)

    @classmethod
    def all_free(cls, N):
        return cls(N)

    def force_v(self, idx, bit):
        self.tags[idx] = TAG_FORCED_V
        self.bits[idx] = bit
        return self

    def force_u(self, idx, bit):
        self.tags[idx] = TAG_FORCED_U
        self.bits[idx] = bit
        return self

    def __len__(self):
        return self.tags.shape[0]


def pac_list_decode(llr_in, constraints, g, L, tree_conv=True):
    """Constrained SCL decode; returns [(v, pm), ...] sorted by metric.

    With ``tree_conv`` (default) the polar tree runs over conv_forward(v) and
    metric penalties fall on the post-conv bits, which is the PAC channel
    orientation.  With ``tree_conv=False`` the tree runs over v itself and
    forced-u constraints apply to conv_forward(v); this is the orientation
    used for PAC source codes, where exp(-pm) must equal the exact prior
    probability of the reconstructed block.

    Ties in survivor pruning go to the lexicographically smaller v prefix.
    """
    llr = np.asarray(llr_in, dtype=np.float64)
    N = llr.shape[0]
    if N < 1 or (N & (N - 1)) != 0:
        raise ValueError(f"LLR length must be a power of two, got {N}")
    if len(constraints) != N:
        raise ValueError("constraint length does not match LLR length")
    if L < 1:
        raise ValueError("list size must be >= 1")
    taps = np.asarray(g, dtype=np.int8)
    if taps.ndim != 1 or taps.shape[0] < 1 or taps[0] != 1:
        raise ValueError("convolution taps must start with c_0 = 1")
    v_out = np.zeros((L, N), dtype=np.int8)
    pm_out = np.zeros(L, dtype=np.float64)
    m = kernels.scl_run(llr, constraints.tags, constraints.bits, taps,
                        int(L), bool(tree_conv), v_out, pm_out)
    return [(v_out[i].copy(), float(pm_out[i])) for i in range(m)]

"""CRC-aided PAC source compression and list decompression.

Compression: v = polar_transform(s), u = conv_forward(v); keep u at the
high-entropy indices and append the CRC of v.  With g = [1] this degenerates
to the CRC-aided polar source code (output {v^H, crc(v)}), which serves as
the baseline scheme.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .construction import SourceCodeSpec, source_prior_llr
from .conv import conv_forward
from .crc import crc_compute
from .polar import BitConstraints, polar_transform


@dataclass(frozen=True)
class CompressedBlock:
    """Fixed-length compressor output: post-conv bits at H, then the CRC."""

    u_h: np.ndarray
    crc: np.ndarray

    @property
    def bits(self):
        return np.concatenate([self.u_h, self.crc])

    def __len__(self):
        return self.u_h.shape[0] + self.crc.shape[0]


def ca_pac_compress(s, spec: SourceCodeSpec) -> CompressedBlock:
    s = np.asarray(s, dtype=np.int8)
    if s.shape[0] != spec.n:
        raise ValueError(f"source block length {s.shape[0]} != N = {spec.n}")
    v = polar_transform(s)
    u = conv_forward(v, spec.g)
    h = np.asarray(spec.high_set, dtype=np.int64)
    return CompressedBlock(u_h=u[h].copy(), crc=crc_compute(v, spec.crc))


def split_compressed(bits, spec: SourceCodeSpec) -> CompressedBlock:
    """Reassemble a CompressedBlock from its flat bit vector."""
    bits = np.asarray(bits, dtype=np.int8)
    if bits.shape[0] != spec.compressed_len:
        raise ValueError(
            f"compressed length {bits.shape[0]} != {spec.compressed_len}")
    k = len(spec.high_set)
    return CompressedBlock(u_h=bits[:k].copy(), crc=bits[k:].copy())


def ca_pac_decompress(block: CompressedBlock, spec: SourceCodeSpec, list_size):
    """List-decode the source block; returns (s_hat, crc_ok).

    The decoder runs the SCL engine over the v-domain polar tree with the
    prior LLR ln((1-p)/p) at every position and the known post-conv bits
    forced at H.  The reconstruction is the inverse polar transform of the
    best-metric candidate whose CRC passes; if none passes, the best-metric
    candidate is returned flagged False (counted as a block error upstream).
    """
    if len(block) != spec.compressed_len:
        raise ValueError("compressed block does not match the code spec")
    if list_size < 1:
        raise ValueError("list size must be >= 1")
    N = spec.n
    llr = np.full(N, source_prior_llr(spec.p), dtype=np.float64)
    cons = BitConstraints(N)
    for m, j in enumerate(spec.high_set):
        cons.force_u(j, int(block.u_h[m]))
    v_out = np.zeros((list_size, N), dtype=np.int8)
    pm_out = np.zeros(list_size, dtype=np.float64)
    m = kernels.scl_run(llr, cons.tags, cons.bits, spec.g.taps,
                        int(list_size), False, v_out, pm_out)
    for i in range(m):
        if np.array_equal(crc_compute(v_out[i], spec.crc), block.crc):
            return polar_transform(v_out[i]), True
    return polar_transform(v_out[0]), False

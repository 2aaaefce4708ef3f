"""PAC channel encoding x = polar(conv(v)) with the payload scattered over
the information set, CRC-aided SCL decoding, and the separate (two-stage)
source-channel decoder used as the baseline against joint decoding."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .construction import ChannelCodeSpec, JsccSpec
from .conv import conv_forward
from .crc import crc_check, crc_compute
from .polar import BitConstraints, polar_transform
from .source import ca_pac_decompress, split_compressed


@dataclass(frozen=True)
class ChannelCandidate:
    d_hat: np.ndarray
    pm: float
    crc_ok: bool


def pac_encode(d, spec: ChannelCodeSpec):
    """Scatter d (plus CRC when configured) into v at the information set,
    zeros elsewhere, and return polar_transform(conv_forward(v))."""
    d = np.asarray(d, dtype=np.int8)
    if d.shape[0] != spec.payload_len:
        raise ValueError(f"payload length {d.shape[0]} != {spec.payload_len}")
    if spec.crc is not None:
        d = np.concatenate([d, crc_compute(d, spec.crc)])
    v = np.zeros(spec.n, dtype=np.int8)
    v[np.asarray(spec.info_set, dtype=np.int64)] = d
    return polar_transform(conv_forward(v, spec.g))


def pac_scl_decode(llr, spec: ChannelCodeSpec, list_size):
    """CRC-aided SCL decode; candidates sorted by path metric ascending.

    Frozen positions are forced to v = 0; crc_ok is True for every candidate
    when the code carries no CRC.
    """
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape[0] != spec.n:
        raise ValueError(f"LLR length {llr.shape[0]} != N = {spec.n}")
    if list_size < 1:
        raise ValueError("list size must be >= 1")
    cons = BitConstraints(spec.n)
    info = set(spec.info_set)
    for j in range(spec.n):
        if j not in info:
            cons.force_v(j, 0)
    v_out = np.zeros((list_size, spec.n), dtype=np.int8)
    pm_out = np.zeros(list_size, dtype=np.float64)
    m = kernels.scl_run(llr, cons.tags, cons.bits, spec.g.taps,
                        int(list_size), True, v_out, pm_out)
    iset = np.asarray(spec.info_set, dtype=np.int64)
    out = []
    for i in range(m):
        data = v_out[i][iset]
        if spec.crc is None:
            d_hat, ok = data, True
        else:
            d_hat = data[: -spec.crc.width]
            ok = crc_check(data, spec.crc)
        out.append(ChannelCandidate(d_hat=d_hat.copy(), pm=float(pm_out[i]),
                                    crc_ok=bool(ok)))
    return out


def separate_decode(llr, jspec: JsccSpec, list_c, list_s):
    """Two-stage baseline: channel SCL with the channel metric only, pick the
    first candidate passing the channel CRC (best metric if none or no CRC),
    then CA-PAC source decompression of its payload."""
    cands = pac_scl_decode(llr, jspec.channel, list_c)
    selected = cands[0]
    for cand in cands:
        if cand.crc_ok:
            selected = cand
            break
    block = split_compressed(selected.d_hat, jspec.source)
    s_hat, _ = ca_pac_decompress(block, jspec.source, list_s)
    return s_hat

"""Joint source-channel PAC coding: the concatenated encoder and the joint
decoder in which every channel SCL path carries a small source decoding list
whose combined metric steers channel path selection.

At a channel information position carrying a source high-entropy bit, each
channel path advances its source list to the constrained source index (free
source positions expand and prune to the inner list size) and both bit
hypotheses are scored with pm_c + pm_sc, where pm_sc is the log-sum-exp
combination of the source list metrics.  CRC-carrying positions and frozen
positions update the channel metric only and carry pm_sc unchanged.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .construction import JsccSpec, source_prior_llr
from .crc import crc_check
from .source import ca_pac_compress, ca_pac_decompress, split_compressed
from .channel import pac_encode


def jscc_encode(s, jspec: JsccSpec):
    """Compress s, then PAC-encode the compressed payload."""
    block = ca_pac_compress(s, jspec.source)
    return pac_encode(block.bits, jspec.channel)


def pm_source_combine(pm_list):
    """-ln sum_i exp(-pm_i), evaluated in shifted form."""
    pm = np.asarray(pm_list, dtype=np.float64)
    if pm.size == 0:
        raise ValueError("pm_source_combine needs at least one metric")
    mn = float(np.min(pm))
    return mn - math.log(float(np.sum(np.exp(mn - pm))))


@dataclass(frozen=True)
class JointTrace:
    """Scored source-metric evaluations: one row per (channel path,
    hypothesis) at each constrained index, recorded before pruning."""

    prefixes: list  # tuple of forced u_s^H bits, oldest first
    pm_sc: np.ndarray


def _layout(jspec: JsccSpec):
    """Per-channel-position kind (-1 frozen, 0 H-carrying, 1 CRC) plus the
    forced source index per H-carrying position."""
    nc = jspec.channel.n
    iset = list(jspec.channel.info_set)
    h = list(jspec.source.high_set)
    kind = np.full(nc, -1, dtype=np.int64)
    srcj = np.full(nc, -1, dtype=np.int64)
    hpos = np.zeros(len(h), dtype=np.int64)
    for m, pos in enumerate(iset):
        if m < len(h):
            kind[pos] = 0
            srcj[pos] = h[m]
            hpos[m] = pos
        else:
            kind[pos] = 1
    return kind, srcj, hpos


def _joint_candidates(llr, jspec, list_c, list_sc, trace):
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape[0] != jspec.channel.n:
        raise ValueError(f"LLR length {llr.shape[0]} != N_c = {jspec.channel.n}")
    if min(list_c, list_sc) < 1:
        raise ValueError("list sizes must be >= 1")
    kind, srcj, hpos = _layout(jspec)
    nc = jspec.channel.n
    ns = jspec.source.n
    ctbits = np.zeros(nc, dtype=np.int8)  # frozen bits fixed to 0
    nh = len(jspec.source.high_set)
    cap_tr = max(1, nh * 2 * list_c)
    tr_bits = np.full((cap_tr if trace else 1, max(nh, 1)), -1, dtype=np.int8)
    tr_pm = np.zeros(cap_tr if trace else 1, dtype=np.float64)
    v_out = np.zeros((list_c, nc), dtype=np.int8)
    pmt = np.zeros(list_c, dtype=np.float64)
    pmc = np.zeros(list_c, dtype=np.float64)
    psc = np.zeros(list_c, dtype=np.float64)
    m, tr_n = kernels.joint_run(
        llr, ctbits, jspec.channel.g.taps, int(list_c), kind, srcj, hpos,
        source_prior_llr(jspec.source.p), ns, jspec.source.g.taps,
        int(list_sc), v_out, pmt, pmc, psc, bool(trace), tr_bits, tr_pm)
    trace_obj = None
    if trace:
        prefixes = []
        for r in range(tr_n):
            row = tr_bits[r]
            prefixes.append(tuple(int(b) for b in row[row >= 0]))
        trace_obj = JointTrace(prefixes=prefixes, pm_sc=tr_pm[:tr_n].copy())
    return m, v_out, pmt, trace_obj


def joint_decode(llr, jspec: JsccSpec, list_c, list_sc, list_s):
    """Joint decode; returns (s_hat, status) with status "ok" or "crc_fail".

    Final selection walks the joint candidate list in metric order, checks
    the channel CRC (vacuous when the channel code has none), decompresses
    the payload with the outer source list size, and returns the first
    reconstruction that passes the source CRC.  If every candidate fails,
    the best-metric candidate's reconstruction is returned as "crc_fail".
    """
    m, v_out, _, _ = _joint_candidates(llr, jspec, list_c, list_sc, trace=False)
    iset = np.asarray(jspec.channel.info_set, dtype=np.int64)
    ch_crc = jspec.channel.crc

    def reconstruct(i):
        data = v_out[i][iset]
        if ch_crc is not None:
            data = data[: -ch_crc.width]
        return ca_pac_decompress(split_compressed(data, jspec.source),
                                 jspec.source, list_s)

    best = None  # reconstruction of the best-metric candidate, for fallback
    for i in range(m):
        if ch_crc is not None and not crc_check(v_out[i][iset], ch_crc):
            continue
        s_hat, ok = reconstruct(i)
        if i == 0:
            best = s_hat
        if ok:
            return s_hat, "ok"
    if best is None:
        best, _ = reconstruct(0)
    return best, "crc_fail"


def joint_decode_traced(llr, jspec: JsccSpec, list_c, list_sc, list_s):
    """joint_decode plus the pm_sc evaluation trace (for verification)."""
    m, v_out, pmt, trace_obj = _joint_candidates(llr, jspec, list_c, list_sc,
                                                 trace=True)
    s_hat, status = joint_decode(llr, jspec, list_c, list_sc, list_s)
    cands = [(v_out[i].copy(), float(pmt[i])) for i in range(m)]
    return s_hat, status, trace_obj, cands

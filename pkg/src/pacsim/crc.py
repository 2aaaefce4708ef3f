"""Bit-serial CRC over GF(2) used for list-candidate selection.

Default is CRC-8 with polynomial x^8 + x^2 + x + 1 (0x07), zero init, no
reflection, no output XOR; the polynomial is configurable per code spec.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CrcSpec:
    width: int = 8
    polynomial: int = 0x07  # low ``width`` bits, implicit leading x^width term
    init: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("CRC width must be >= 1")
        if not 0 <= self.polynomial < (1 << self.width):
            raise ValueError("polynomial mask wider than CRC width")
        if not 0 <= self.init < (1 << self.width):
            raise ValueError("init value wider than CRC width")


def crc_compute(msg, spec):
    """Remainder of msg * x^width divided by the CRC polynomial, MSB-first."""
    msg = np.asarray(msg, dtype=np.int8)
    w = spec.width
    top = 1 << (w - 1)
    mask = (1 << w) - 1
    reg = spec.init
    for b in msg:
        fb = ((reg >> (w - 1)) & 1) ^ int(b)
        reg = (reg << 1) & mask
        if fb:
            reg ^= spec.polynomial
    out = np.zeros(w, dtype=np.int8)
    for i in range(w):
        out[i] = (reg >> (w - 1 - i)) & 1
    return out


def crc_check(msg_with_crc, spec):
    """True iff the trailing ``width`` bits are the CRC of the rest."""
    msg_with_crc = np.asarray(msg_with_crc, dtype=np.int8)
    if msg_with_crc.shape[0] < spec.width:
        raise ValueError("message shorter than the CRC width")
    msg = msg_with_crc[: -spec.width]
    tail = msg_with_crc[-spec.width:]
    return bool(np.array_equal(crc_compute(msg, spec), tail))

"""Convolutional pre-transform: the unit-diagonal upper-triangular Toeplitz
map u = vT, its back-substitution inverse, and single-bit stepping."""

from dataclasses import dataclass, field

import numpy as np

from . import kernels

# The single documented polynomial; used for both the source and the channel
# code unless overridden in configuration.
DEFAULT_G = "110101101011"


@dataclass(frozen=True)
class ConvSpec:
    """Coefficients g = [c_0 .. c_nu] with c_0 = 1."""

    g: tuple = field(default_factory=lambda: (1,))

    def __post_init__(self):
        g = tuple(int(b) for b in self.g)
        if len(g) < 1 or g[0] != 1 or any(b not in (0, 1) for b in g):
            raise ValueError(f"invalid taps {self.g!r}: need bits with c_0 = 1")
        object.__setattr__(self, "g", g)

    @property
    def nu(self):
        return len(self.g) - 1

    @property
    def taps(self):
        return np.asarray(self.g, dtype=np.int8)

    @classmethod
    def from_bitstring(cls, s):
        """Parse "110101..." (c_0 first) as written in config files."""
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"invalid tap bit string {s!r}")
        return cls(tuple(int(ch) for ch in s))

    def to_bitstring(self):
        return "".join(str(b) for b in self.g)


def conv_forward(v, spec):
    """u_j = XOR_k c_k v_{j-k}: multiplication by the Toeplitz matrix T."""
    v = np.asarray(v, dtype=np.int8)
    u = np.zeros_like(v)
    g = spec.g
    for k in range(min(len(g), v.shape[0])):
        if g[k]:
            if k == 0:
                u ^= v
            else:
                u[k:] ^= v[:-k]
    return u


def conv_invert(u, spec):
    """Back-substitution inverse of conv_forward (c_0 = 1 makes T invertible)."""
    u = np.asarray(u, dtype=np.int8)
    v = np.zeros_like(u)
    kernels.conv_invert_bits(u, spec.taps, v)
    return v


def conv_step(state, v_bit, spec):
    """One convolution step: returns (u_bit, new_state).

    ``state`` holds the previous nu v-bits, most recent first; streaming all
    bits through conv_step reproduces conv_forward.
    """
    state = np.asarray(state, dtype=np.int8)
    if state.shape[0] != spec.nu:
        raise ValueError(f"state length {state.shape[0]} != nu {spec.nu}")
    u_bit = int(v_bit) & 1
    for k in range(1, len(spec.g)):
        if spec.g[k]:
            u_bit ^= int(state[k - 1])
    if spec.nu == 0:
        return u_bit, state.copy()
    new_state = np.empty_like(state)
    new_state[0] = int(v_bit) & 1
    new_state[1:] = state[:-1]
    return u_bit, new_state

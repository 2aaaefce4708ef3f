"""Code construction: the source high-entropy set H, the channel information
set I, an exact-entropy oracle for small N, code spec containers and the text
file format produced by the ``construct`` CLI subcommand.

Both constructions rank indices by genie-aided successive-cancellation Monte
Carlo: previous decisions are corrected to the truth and per-index guessing
errors are counted.  For N <= 16 the source ranking can instead use exact
conditional entropies computed by full enumeration.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .conv import DEFAULT_G, ConvSpec
from .crc import CrcSpec
from .polar import polar_transform_rows

DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 0x5EED
_CHUNK = 1024


def binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def source_prior_llr(p):
    """ln((1-p)/p): the per-position prior LLR of a Bern(p) source."""
    return math.log((1.0 - p) / p)


def exact_conditional_entropies(p, N):
    """H(U_j | U^{0:j}) in bits for U = S G_N, S ~ Bern(p)^N, by enumerating
    all 2^N source sequences.  Exponential; restricted to N <= 16."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    if N < 1 or (N & (N - 1)) != 0 or N > 16:
        raise ValueError("N must be a power of two <= 16 for the exact oracle")
    count = 1 << N
    s = ((np.arange(count, dtype=np.uint32)[:, None] >> np.arange(N)[::-1]) & 1)
    s = s.astype(np.int8)
    u = polar_transform_rows(s)
    wt = s.sum(axis=1)
    prob = (p ** wt) * ((1.0 - p) ** (N - wt))
    # pack u rows as integers, MSB = u_0, so prefixes are right shifts
    keys = np.zeros(count, dtype=np.uint64)
    for j in range(N):
        keys = (keys << np.uint64(1)) | u[:, j].astype(np.uint64)
    ent = np.zeros(N + 1, dtype=np.float64)  # H(U^{0:j}) joint entropies
    for j in range(1, N + 1):
        pref = (keys >> np.uint64(N - j)).astype(np.int64)
        agg = np.bincount(pref, weights=prob, minlength=1 << j)
        nz = agg[agg > 0.0]
        ent[j] = -np.sum(nz * np.log2(nz))
    return np.diff(ent)


def genie_source_stats(p, N, trials, seed):
    """Genie-aided per-index statistics of the polarized Bern(p) source:
    (guessing-error probabilities, conditional-entropy estimates in bits)."""
    rng = np.random.default_rng(seed)
    llr0 = source_prior_llr(p)
    counts = np.zeros(N, dtype=np.int64)
    ent = np.zeros(N, dtype=np.float64)
    llr_rows = np.full((_CHUNK, N), llr0, dtype=np.float64)
    done = 0
    while done < trials:
        t = min(_CHUNK, trials - done)
        s = (rng.random((t, N)) < p).astype(np.int8)
        u = polar_transform_rows(s)
        kernels.genie_stats(llr_rows[:t], u, counts, ent)
        done += t
    return counts / trials, ent / (trials * math.log(2.0))


def _genie_channel_counts(design_snr_db, N, trials, seed):
    rng = np.random.default_rng(seed)
    sigma = math.sqrt(1.0 / (2.0 * 10.0 ** (design_snr_db / 10.0)))
    counts = np.zeros(N, dtype=np.int64)
    ent = np.zeros(N, dtype=np.float64)
    u0 = np.zeros((_CHUNK, N), dtype=np.int8)
    done = 0
    while done < trials:
        t = min(_CHUNK, trials - done)
        # all-zero codeword, BPSK 0 -> +1, LLR = 2y/sigma^2
        y = 1.0 + sigma * rng.standard_normal((t, N))
        llr_rows = 2.0 * y / (sigma * sigma)
        kernels.genie_stats(llr_rows, u0[:t], counts, ent)
        done += t
    return counts


def build_source_high_entropy_set(p, N, k, trials=DEFAULT_TRIALS,
                                  seed=DEFAULT_SEED, method="mc"):
    """The k highest-entropy polarized indices of a Bern(p) source.

    method "mc" ranks by genie-aided Monte Carlo estimates of the conditional
    entropies (the exact leaf conditionals averaged over sampled blocks),
    "exact" (N <= 16) by exact conditional entropies from enumeration.
    Deterministic given the seed; ties go to the smaller index.  Indices are
    0-based, ascending.
    """
    if not 1 <= k <= N:
        raise ValueError(f"k must be in [1, {N}]")
    if method == "exact":
        score = exact_conditional_entropies(p, N)
    elif method == "mc":
        score = genie_source_stats(p, N, trials, seed)[1]
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.lexsort((np.arange(N), -score))  # descending score, then index
    return np.sort(order[:k])


def build_channel_info_set(design_snr_db, N, k, trials=DEFAULT_TRIALS,
                           seed=DEFAULT_SEED):
    """The k most reliable polar indices over BI-AWGN at the design SNR,
    by genie-aided Monte Carlo bit-error counts.  Ties go to the index with
    larger binary weight (structurally more reliable), then the larger index.
    0-based, ascending."""
    if not 1 <= k <= N:
        raise ValueError(f"k must be in [1, {N}]")
    counts = _genie_channel_counts(design_snr_db, N, trials, seed)
    idx = np.arange(N)
    popcount = np.array([bin(i).count("1") for i in range(N)])
    order = np.lexsort((-idx, -popcount, counts))
    return np.sort(order[:k])


@dataclass(frozen=True)
class SourceCodeSpec:
    """Fixed-to-fixed PAC source code: N bits in, |H| + crc.width bits out."""

    n: int
    p: float
    high_set: tuple
    g: ConvSpec = field(default_factory=lambda: ConvSpec.from_bitstring(DEFAULT_G))
    crc: CrcSpec = field(default_factory=CrcSpec)

    def __post_init__(self):
        h = tuple(sorted(int(i) for i in self.high_set))
        if len(set(h)) != len(h) or (h and not 0 <= h[0] <= h[-1] < self.n):
            raise ValueError("high-entropy set must be unique indices in [0, N)")
        if len(h) + self.crc.width > self.n:
            raise ValueError("compressed length exceeds the block length")
        object.__setattr__(self, "high_set", h)

    @property
    def compressed_len(self):
        return len(self.high_set) + self.crc.width


@dataclass(frozen=True)
class ChannelCodeSpec:
    n: int
    info_set: tuple
    g: ConvSpec = field(default_factory=lambda: ConvSpec.from_bitstring(DEFAULT_G))
    crc: CrcSpec | None = None  # None = no channel CRC
    design_snr_db: float = 3.0

    def __post_init__(self):
        i = tuple(sorted(int(x) for x in self.info_set))
        if len(set(i)) != len(i) or (i and not 0 <= i[0] <= i[-1] < self.n):
            raise ValueError("information set must be unique indices in [0, N)")
        object.__setattr__(self, "info_set", i)

    @property
    def crc_width(self):
        return self.crc.width if self.crc is not None else 0

    @property
    def payload_len(self):
        return len(self.info_set) - self.crc_width


@dataclass(frozen=True)
class JsccSpec:
    """Concatenated source + channel PAC codes with the payload mapping
    {source high-entropy bits (ascending), source CRC, channel CRC} laid onto
    the channel information set in ascending index order."""

    source: SourceCodeSpec
    channel: ChannelCodeSpec

    def __post_init__(self):
        need = len(self.source.high_set) + self.source.crc.width + self.channel.crc_width
        if len(self.channel.info_set) != need:
            raise ValueError(
                f"|I| = {len(self.channel.info_set)} but |H| + source CRC + "
                f"channel CRC = {need}")


def default_jscc_spec(trials=DEFAULT_TRIALS, seed=DEFAULT_SEED):
    """The experiment configuration used throughout: N_s = N_c = 128, a
    128->100 bit source code (92 high-entropy + 8 CRC), no channel CRC."""
    h = build_source_high_entropy_set(0.11, 128, 92, trials=trials, seed=seed)
    i = build_channel_info_set(3.0, 128, 100, trials=trials, seed=seed)
    src = SourceCodeSpec(n=128, p=0.11, high_set=tuple(h))
    ch = ChannelCodeSpec(n=128, info_set=tuple(i), crc=None)
    return JsccSpec(source=src, channel=ch)


def write_construction(path, kind, N, param, indices, method, seed, trials):
    """Text format: a header then the 0-based index set in ascending order."""
    lines = ["# pacsim construction", f"kind = {kind}", f"N = {N}"]
    if kind == "source":
        lines.append(f"p = {param:.12g}")
    elif kind == "channel":
        lines.append(f"design_snr_db = {param:.12g}")
    else:
        raise ValueError(f"kind must be 'source' or 'channel', got {kind!r}")
    lines += [f"method = {method}", f"seed = {seed}", f"trials = {trials}",
              f"size = {len(indices)}",
              "indices = " + " ".join(str(int(i)) for i in sorted(indices))]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_construction(path):
    """Parse a construction file; returns a dict with typed fields."""
    fields = {}
    with open(path, encoding="ascii") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}: malformed line {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            fields[key] = val
    try:
        out = {
            "kind": fields["kind"],
            "N": int(fields["N"]),
            "method": fields.get("method", "mc"),
            "seed": int(fields.get("seed", "0")),
            "trials": int(fields.get("trials", "0")),
            "indices": np.array([int(t) for t in fields["indices"].split()],
                                dtype=np.int64),
        }
    except KeyError as exc:
        raise ValueError(f"{path}: missing construction field {exc}") from exc
    if out["kind"] == "source":
        out["p"] = float(fields["p"])
    elif out["kind"] == "channel":
        out["design_snr_db"] = float(fields["design_snr_db"])
    else:
        raise ValueError(f"{path}: unknown kind {out['kind']!r}")
    size = int(fields.get("size", str(out["indices"].size)))
    if size != out["indices"].size or np.any(np.diff(out["indices"]) <= 0):
        raise ValueError(f"{path}: index set must be ascending with {size} entries")
    if out["indices"].size and not (0 <= out["indices"][0] <= out["indices"][-1] < out["N"]):
        raise ValueError(f"{path}: indices out of range")
    return out

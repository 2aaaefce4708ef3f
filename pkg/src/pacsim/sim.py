"""Monte Carlo BLER harness: source and channel models, paired-seed trial
generation, experiment configs, Wilson intervals and CSV output.

Trial t of SNR point i always derives its randomness from
(base_seed, i, t) regardless of the scheme, so joint and separate runs with
the same base seed consume identical (source block, noise) pairs and can be
compared trial by trial.
"""

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .construction import (DEFAULT_SEED, DEFAULT_TRIALS, ChannelCodeSpec,
                           JsccSpec, SourceCodeSpec,
                           build_channel_info_set,
                           build_source_high_entropy_set, read_construction)
from .conv import DEFAULT_G, ConvSpec
from .crc import CrcSpec
from .channel import separate_decode
from .jscc import joint_decode, jscc_encode
from .source import ca_pac_compress, ca_pac_decompress

CSV_HEADER = "scheme,snr_db,sigma,trials,block_errors,bler,ci_low,ci_high,seed"

SCHEMES = ("source-only", "jscc-joint", "jscc-separate")


def bernoulli_block(N, p, seed):
    """N independent bits with P(1) = p from a seeded generator."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    rng = np.random.default_rng(seed)
    return (rng.random(N) < p).astype(np.int8)


def snr_db_to_sigma(snr_db):
    """Es/N0 convention: sigma^2 = 1 / (2 * 10^(snr/10))."""
    return math.sqrt(1.0 / (2.0 * 10.0 ** (snr_db / 10.0)))


def bpsk_awgn_llr(x, snr_db, seed):
    """BPSK (0 -> +1, 1 -> -1) over AWGN; returns LLR = 2y/sigma^2."""
    x = np.asarray(x, dtype=np.int8)
    sigma = snr_db_to_sigma(snr_db)
    rng = np.random.default_rng(seed)
    y = (1.0 - 2.0 * x) + sigma * rng.standard_normal(x.shape[0])
    return 2.0 * y / (sigma * sigma)


def wilson_interval(errors, trials, z=1.959963984540054):
    """95% Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = errors / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = phat + z2 / (2.0 * trials)
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    lo = 0.0 if errors == 0 else max(0.0, (center - half) / denom)
    hi = 1.0 if errors == trials else min(1.0, (center + half) / denom)
    return lo, hi


@dataclass
class SimConfig:
    scheme: str = "jscc-joint"
    n_source: int = 128
    n_channel: int = 128
    p: float = 0.11
    h_size: int = 92
    crc_source: int = 8
    crc_channel: int = 0
    crc_poly: str = "0x07"  # hex mask, shared by both CRCs
    g_source: str = DEFAULT_G
    g_channel: str = DEFAULT_G
    design_snr_db: float = 3.0
    snr_start: float = 2.0
    snr_stop: float = 5.0
    snr_step: float = 0.5
    max_trials: int = 100_000
    target_block_errors: int = 100
    list_c: int = 128
    list_sc: int = 32
    list_s: int = 128
    base_seed: int = 1
    construction_trials: int = DEFAULT_TRIALS
    construction_seed: int = DEFAULT_SEED
    construction_source: str = ""  # optional construction file paths
    construction_channel: str = ""

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.snr_step <= 0:
            raise ValueError("snr step must be positive")
        if self.max_trials < 1:
            raise ValueError("max_trials must be >= 1")

    def snr_grid(self):
        if self.scheme == "source-only":
            return [0.0]  # noiseless: a single degenerate point
        count = int(math.floor((self.snr_stop - self.snr_start) / self.snr_step + 1e-9)) + 1
        return [self.snr_start + i * self.snr_step for i in range(max(count, 1))]


@dataclass(frozen=True)
class BlerPoint:
    scheme: str
    snr_db: float
    sigma: float
    trials: int
    block_errors: int
    bler: float
    ci_low: float
    ci_high: float
    base_seed: int

    def csv_row(self):
        return (f"{self.scheme},{self.snr_db:.6g},{self.sigma:.10g},"
                f"{self.trials},{self.block_errors},{self.bler:.10g},"
                f"{self.ci_low:.10g},{self.ci_high:.10g},{self.base_seed}")


def build_specs(config: SimConfig):
    """Materialize the code specs a config describes (JsccSpec for the jscc
    schemes, SourceCodeSpec for source-only)."""
    if config.construction_source:
        info = read_construction(config.construction_source)
        if info["kind"] != "source" or info["N"] != config.n_source:
            raise ValueError("source construction file does not match config")
        h = info["indices"]
        if h.size != config.h_size:
            raise ValueError(f"construction has {h.size} indices, config wants {config.h_size}")
    else:
        h = build_source_high_entropy_set(
            config.p, config.n_source, config.h_size,
            trials=config.construction_trials, seed=config.construction_seed)
    poly = int(config.crc_poly, 0)
    src = SourceCodeSpec(n=config.n_source, p=config.p, high_set=tuple(int(i) for i in h),
                         g=ConvSpec.from_bitstring(config.g_source),
                         crc=CrcSpec(width=config.crc_source, polynomial=poly))
    if config.scheme == "source-only":
        return src
    k = config.h_size + config.crc_source + config.crc_channel
    if config.construction_channel:
        info = read_construction(config.construction_channel)
        if info["kind"] != "channel" or info["N"] != config.n_channel:
            raise ValueError("channel construction file does not match config")
        iset = info["indices"]
        if iset.size != k:
            raise ValueError(f"construction has {iset.size} indices, config wants {k}")
    else:
        iset = build_channel_info_set(
            config.design_snr_db, config.n_channel, k,
            trials=config.construction_trials, seed=config.construction_seed)
    ch = ChannelCodeSpec(n=config.n_channel, info_set=tuple(int(i) for i in iset),
                         g=ConvSpec.from_bitstring(config.g_channel),
                         crc=CrcSpec(width=config.crc_channel, polynomial=poly)
                         if config.crc_channel else None,
                         design_snr_db=config.design_snr_db)
    return JsccSpec(source=src, channel=ch)


def trial_seeds(base_seed, snr_index, trial):
    """Deterministic per-trial child seeds (source bits, channel noise);
    independent of the scheme so paired runs see identical randomness."""
    ss = np.random.SeedSequence([int(base_seed), int(snr_index), int(trial)])
    return ss.spawn(2)


def trial_data(spec, n_source, p, snr_db, snr_index, trial, base_seed):
    """The (s, llr) pair for one jscc trial under paired seeding."""
    seed_s, seed_n = trial_seeds(base_seed, snr_index, trial)
    s = bernoulli_block(n_source, p, seed_s)
    x = jscc_encode(s, spec)
    return s, bpsk_awgn_llr(x, snr_db, seed_n)


def _run_trial(config, spec, snr_db, snr_index, trial):
    if config.scheme == "source-only":
        seed_s, _ = trial_seeds(config.base_seed, snr_index, trial)
        s = bernoulli_block(spec.n, spec.p, seed_s)
        s_hat, _ = ca_pac_decompress(ca_pac_compress(s, spec), spec, config.list_s)
    else:
        s, llr = trial_data(spec, config.n_source, config.p, snr_db,
                            snr_index, trial, config.base_seed)
        if config.scheme == "jscc-joint":
            s_hat, _ = joint_decode(llr, spec, config.list_c, config.list_sc,
                                    config.list_s)
        else:
            s_hat = separate_decode(llr, spec, config.list_c, config.list_s)
    return not np.array_equal(s, s_hat)


def run_experiment(config: SimConfig, out_csv=None, log=None):
    """Run the configured BLER sweep; returns the list of BlerPoints and
    optionally streams them to a CSV file as each point completes."""
    spec = build_specs(config)
    points = []
    fh = open(out_csv, "w", encoding="ascii") if out_csv else None
    try:
        if fh:
            fh.write(CSV_HEADER + "\n")
            fh.flush()
        for snr_index, snr_db in enumerate(config.snr_grid()):
            errors = 0
            trials = 0
            for t in range(config.max_trials):
                errors += _run_trial(config, spec, snr_db, snr_index, t)
                trials += 1
                if config.target_block_errors > 0 and errors >= config.target_block_errors:
                    break
            lo, hi = wilson_interval(errors, trials)
            sigma = 0.0 if config.scheme == "source-only" else snr_db_to_sigma(snr_db)
            point = BlerPoint(scheme=config.scheme, snr_db=snr_db, sigma=sigma,
                              trials=trials, block_errors=errors,
                              bler=errors / trials, ci_low=lo, ci_high=hi,
                              base_seed=config.base_seed)
            points.append(point)
            if fh:
                fh.write(point.csv_row() + "\n")
                fh.flush()
            if log:
                log(f"{point.scheme} snr={point.snr_db:g} dB: "
                    f"{point.block_errors}/{point.trials} bler={point.bler:.3e}")
    finally:
        if fh:
            fh.close()
    return points


def load_config_file(path):
    """Parse the key = value config schema into a SimConfig."""
    raw = {}
    with open(path, encoding="ascii") as fh:
        for line_no, line in enumerate(fh, 1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{line_no}: expected 'key = value'")
            key, val = (part.strip() for part in stripped.split("=", 1))
            raw[key] = val
    return apply_config_overrides(SimConfig(), raw)


def apply_config_overrides(config, overrides):
    """Apply string key/value overrides to a SimConfig, with type coercion."""
    typed = {}
    by_name = {f.name: f for f in fields(SimConfig)}
    for key, val in overrides.items():
        if val is None:
            continue
        if key not in by_name:
            raise ValueError(f"unknown config key {key!r}")
        ftype = by_name[key].type
        if ftype in (int, "int"):
            typed[key] = int(val)
        elif ftype in (float, "float"):
            typed[key] = float(val)
        else:
            typed[key] = str(val)
    return replace(config, **typed)

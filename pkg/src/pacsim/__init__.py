"""PAC codes for source, channel and joint source-channel coding."""

from .backend import BACKEND
from .channel import ChannelCandidate, pac_encode, pac_scl_decode, separate_decode
from .construction import (ChannelCodeSpec, JsccSpec, SourceCodeSpec,
                           build_channel_info_set,
                           build_source_high_entropy_set, default_jscc_spec,
                           exact_conditional_entropies)
from .conv import ConvSpec, conv_forward, conv_invert, conv_step
from .crc import CrcSpec, crc_check, crc_compute
from .jscc import joint_decode, joint_decode_traced, jscc_encode, pm_source_combine
from .polar import (BitConstraints, bit_reversal_permutation, llr_bit,
                    llr_check, pac_list_decode, polar_transform)
from .sim import (BlerPoint, SimConfig, bernoulli_block, bpsk_awgn_llr,
                  run_experiment, wilson_interval)
from .source import CompressedBlock, ca_pac_compress, ca_pac_decompress

__all__ = [
    "BACKEND",
    "BitConstraints",
    "BlerPoint",
    "ChannelCandidate",
    "ChannelCodeSpec",
    "CompressedBlock",
    "ConvSpec",
    "CrcSpec",
    "JsccSpec",
    "SimConfig",
    "SourceCodeSpec",
    "bernoulli_block",
    "bit_reversal_permutation",
    "bpsk_awgn_llr",
    "build_channel_info_set",
    "build_source_high_entropy_set",
    "ca_pac_compress",
    "ca_pac_decompress",
    "conv_forward",
    "conv_invert",
    "conv_step",
    "crc_check",
    "crc_compute",
    "default_jscc_spec",
    "exact_conditional_entropies",
    "joint_decode",
    "joint_decode_traced",
    "jscc_encode",
    "llr_bit",
    "llr_check",
    "pac_encode",
    "pac_list_decode",
    "pac_scl_decode",
    "pm_source_combine",
    "polar_transform",
    "run_experiment",
    "separate_decode",
    "wilson_interval",
]

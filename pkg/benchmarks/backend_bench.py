#!/usr/bin/env python3
"""Compare the numba and pure-Python/NumPy kernel backends on the decoder
workloads, and check that both produce identical decisions.

Run from the repository root:  python benchmarks/backend_bench.py
"""

import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json
import sys
import time

import numpy as np

import pacsim as ps
from pacsim.construction import (ChannelCodeSpec, JsccSpec, SourceCodeSpec,
                                 build_channel_info_set,
                                 build_source_high_entropy_set)
from pacsim.conv import ConvSpec
from pacsim.crc import CrcSpec
from pacsim.jscc import joint_decode, jscc_encode
from pacsim.source import ca_pac_compress, ca_pac_decompress

h = build_source_high_entropy_set(0.11, 32, 20, trials=4000, seed=5)
src = SourceCodeSpec(n=32, p=0.11, high_set=tuple(int(i) for i in h),
                     g=ConvSpec.from_bitstring("1101"), crc=CrcSpec(width=4, polynomial=0x7))
iset = build_channel_info_set(3.0, 32, 24, trials=4000, seed=5)
ch = ChannelCodeSpec(n=32, info_set=tuple(int(i) for i in iset),
                     g=ConvSpec.from_bitstring("11"), crc=None)
jspec = JsccSpec(source=src, channel=ch)

def source_round(t):
    s = ps.bernoulli_block(32, 0.11, t)
    s_hat, _ = ca_pac_decompress(ca_pac_compress(s, src), src, 8)
    return s_hat

def joint_round(t):
    s = ps.bernoulli_block(32, 0.11, t)
    x = jscc_encode(s, jspec)
    llr = ps.bpsk_awgn_llr(x, 3.0, t + 1000)
    s_hat, _ = joint_decode(llr, jspec, 8, 4, 8)
    return s_hat

rounds = int(sys.argv[1])
source_round(0), joint_round(0)  # warm the JIT outside the timed region

t0 = time.perf_counter()
digest_src = 0
for t in range(rounds):
    digest_src = (digest_src * 31 + int(source_round(t).sum())) & 0xFFFFFFFF
t_src = time.perf_counter() - t0

t0 = time.perf_counter()
digest_joint = 0
for t in range(rounds):
    digest_joint = (digest_joint * 31 + int(joint_round(t).sum())) & 0xFFFFFFFF
t_joint = time.perf_counter() - t0

print(json.dumps({"backend": ps.BACKEND,
                  "source_ms": 1000 * t_src / rounds,
                  "joint_ms": 1000 * t_joint / rounds,
                  "digest_src": digest_src,
                  "digest_joint": digest_joint}))
"""


def run_backend(backend, rounds):
    env = dict(os.environ, PACSIM_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", WORKER, str(rounds)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    rounds = int(sys.argv[1]) if len(sys.argv) > 1 else 40
    print(f"decode benchmark, {rounds} rounds per backend (N=32 toy codes)")
    results = {}
    for backend in ("numba", "numpy"):
        results[backend] = run_backend(backend, rounds)
        r = results[backend]
        print(f"  {backend:6s}: source {r['source_ms']:8.2f} ms/blk   "
              f"joint {r['joint_ms']:8.2f} ms/blk")
    same = (results["numba"]["digest_src"] == results["numpy"]["digest_src"]
            and results["numba"]["digest_joint"] == results["numpy"]["digest_joint"])
    print(f"  decisions identical across backends: {same}")
    if not same:
        raise SystemExit("backend outputs diverged")
    speed = results["numpy"]["joint_ms"] / results["numba"]["joint_ms"]
    print(f"  numba speedup on joint decoding: {speed:.0f}x")


if __name__ == "__main__":
    main()

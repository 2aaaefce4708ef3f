"""Command line front end: ``construct`` emits index-set files, the ``*-sim``
subcommands run BLER sweeps and write CSV."""

import argparse
import sys

from .construction import (DEFAULT_SEED, DEFAULT_TRIALS,
                           build_channel_info_set,
                           build_source_high_entropy_set, write_construction)
from .sim import SimConfig, apply_config_overrides, load_config_file, run_experiment


def _add_sim_flags(p):
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--snr-start", type=float)
    p.add_argument("--snr-stop", type=float)
    p.add_argument("--snr-step", type=float)
    p.add_argument("--trials", type=int, help="maximum trials per SNR point")
    p.add_argument("--target-errors", type=int,
                   help="stop a point after this many block errors (0 = never)")
    p.add_argument("--list-c", type=int)
    p.add_argument("--list-sc", type=int)
    p.add_argument("--list-s", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--construction", action="append", default=[],
                   help="construction file (repeatable; kind read from header)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pacsim",
        description="PAC source / channel / joint source-channel coding simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build and save an index-set file")
    c.add_argument("--kind", choices=("source", "channel"), required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--p", type=float, default=0.11, help="source Bern(p)")
    c.add_argument("--design-snr", type=float, default=3.0)
    c.add_argument("--method", choices=("mc", "exact"), default="mc")
    c.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--out", required=True)

    for name, help_text in (("source-sim", "source compression BLER"),
                            ("jscc-sim", "joint decoding BLER sweep"),
                            ("separate-sim", "separate decoding BLER sweep")):
        _add_sim_flags(sub.add_parser(name, help=help_text))
    return parser


_FLAG_TO_KEY = {
    "snr_start": "snr_start",
    "snr_stop": "snr_stop",
    "snr_step": "snr_step",
    "trials": "max_trials",
    "target_errors": "target_block_errors",
    "list_c": "list_c",
    "list_sc": "list_sc",
    "list_s": "list_s",
    "seed": "base_seed",
}

_SCHEME_BY_COMMAND = {
    "source-sim": "source-only",
    "jscc-sim": "jscc-joint",
    "separate-sim": "jscc-separate",
}


def _config_from_args(args):
    config = load_config_file(args.config) if args.config else SimConfig()
    overrides = {"scheme": _SCHEME_BY_COMMAND[args.command]}
    for flag, key in _FLAG_TO_KEY.items():
        val = getattr(args, flag)
        if val is not None:
            overrides[key] = val
    for path in args.construction:
        with open(path, encoding="ascii") as fh:
            head = fh.read()
        if "kind = source" in head:
            overrides["construction_source"] = path
        elif "kind = channel" in head:
            overrides["construction_channel"] = path
        else:
            raise ValueError(f"{path}: cannot determine construction kind")
    return apply_config_overrides(config, overrides)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "construct":
        if args.kind == "source":
            idx = build_source_high_entropy_set(
                args.p, args.n, args.size, trials=args.trials,
                seed=args.seed, method=args.method)
            param = args.p
        else:
            idx = build_channel_info_set(
                args.design_snr, args.n, args.size, trials=args.trials,
                seed=args.seed)
            param = args.design_snr
        write_construction(args.out, args.kind, args.n, param, idx,
                           args.method, args.seed, args.trials)
        print(f"wrote {args.kind} construction ({args.size} indices) to {args.out}")
        return 0
    config = _config_from_args(args)
    run_experiment(config, out_csv=args.out, log=lambda msg: print(msg, flush=True))
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

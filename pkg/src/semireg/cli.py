"""Command line driver: cohomology, chern, verify and semireg subcommands.

The JSON report goes to stdout (or --out) with sorted keys; a short human
summary and timings go to stderr.  Exit codes: 0 pass, 1 failed check,
2 input error.
"""

import argparse
import json
import sys
import time

from .cech_tot import WindowError
from .suite import (ConfigError, Settings, check_chern_golden, check_deformation, check_linf,
                    chern_coordinate, cohomology_table, semireg_report, verify_all)
from .variety import AtlasError

COMMANDS = ("cohomology", "chern", "verify", "semireg")
CONFIG_KEYS = {"atlas", "bundle", "command", "seed", "trunc_level", "weight_window", "samples",
               "degrees", "mutation"}


class InputError(ValueError):
    pass


def parse_window(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as exc:
        raise InputError(f"window must look like LO..HI, got {text!r}") from exc


def load_config(args):
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(cfg, dict):
            raise InputError("config must be a JSON object")
        unknown = set(cfg) - CONFIG_KEYS
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
    if cfg.get("command", args.command) != args.command:
        raise InputError(f"config command {cfg['command']!r} does not match subcommand {args.command!r}")
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.trunc_level is not None:
        cfg["trunc_level"] = args.trunc_level
    if args.window is not None:
        cfg["weight_window"] = list(parse_window(args.window))
    if args.samples is not None:
        cfg["samples"] = args.samples
    if getattr(args, "mutation", None):
        cfg["mutation"] = args.mutation
    cfg["command"] = args.command
    cfg.setdefault("atlas", "P1")
    cfg.setdefault("bundle", None)
    cfg.setdefault("seed", 0)
    cfg.setdefault("trunc_level", None)
    cfg.setdefault("weight_window", [-4, 4])
    cfg.setdefault("samples", 20)
    for key in ("seed", "samples"):
        if not isinstance(cfg[key], int) or isinstance(cfg[key], bool):
            raise InputError(f"{key} must be an integer")
    if cfg["samples"] < 1:
        raise InputError("samples must be positive")
    w = cfg["weight_window"]
    if isinstance(w, str):
        w = list(parse_window(w))
    if not (isinstance(w, list) and len(w) == 2 and all(isinstance(v, int) for v in w)):
        raise InputError("weight_window must be [LO, HI]")
    cfg["weight_window"] = w
    if cfg.get("mutation") not in (None, "f2_sign", "koszul"):
        raise InputError("mutation must be f2_sign or koszul")
    return cfg


def make_settings(cfg):
    try:
        return Settings(cfg["atlas"], cfg["bundle"], cfg["seed"], cfg["trunc_level"],
                        tuple(cfg["weight_window"]), cfg["samples"])
    except (ConfigError, AtlasError) as exc:
        raise InputError(str(exc)) from exc


def cmd_cohomology(cfg, st):
    try:
        table = cohomology_table(st, degrees=cfg.get("degrees"))
    except WindowError as exc:
        return {"checks": [{"id": "window_stability", "passed": False, "detail": str(exc)}]}
    return {"cohomology": table,
            "checks": [{"id": "window_stability", "passed": True}]}


def cmd_chern(cfg, st):
    try:
        lam = chern_coordinate(st.atlas, st.E, st.lifting(st.E))
    except ConfigError as exc:
        raise InputError(str(exc)) from exc
    out = {"chern": {"bundle": st.E.name, "coordinate": str(lam)}}
    checks = []
    if st.atlas.dim == 1:
        checks.append(check_chern_golden(st))
    out["checks"] = checks
    return out


def cmd_verify(cfg, st):
    checks = verify_all(st)
    mut = cfg.get("mutation")
    if mut:
        kw = {"mutation": "f2_sign"} if mut == "f2_sign" else {"symmetric_chi": True}
        checks.append(check_linf(st, "trace_neg", "f", conditions=(2, 3), **kw))
    return {"checks": sorted(checks, key=lambda c: c["id"])}


def cmd_semireg(cfg, st):
    return {"semireg": semireg_report(st), "checks": [check_deformation(st)]}


HANDLERS = {"cohomology": cmd_cohomology, "chern": cmd_chern, "verify": cmd_verify,
            "semireg": cmd_semireg}


def build_parser():
    p = argparse.ArgumentParser(prog="semireg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", metavar="PATH")
        s.add_argument("--seed", type=int, metavar="N")
        s.add_argument("--trunc-level", type=int, metavar="N")
        s.add_argument("--window", metavar="LO..HI")
        s.add_argument("--samples", type=int, metavar="N")
        s.add_argument("--out", metavar="PATH")
        if name == "verify":
            s.add_argument("--mutation", choices=("f2_sign", "koszul"),
                           help="inject a deliberate sign error (negative control)")
    return p


def _summary(report):
    lines = []
    for c in report.get("checks", []):
        lines.append(f"  {'PASS' if c['passed'] else 'FAIL'}  {c['id']}")
    return "\n".join(lines)


def _glue_window(argv):
    # negative bounds like "-3..3" would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = _glue_window(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    t0 = time.perf_counter()
    try:
        cfg = load_config(args)
        st = make_settings(cfg)
        body = HANDLERS[args.command](cfg, st)
    except InputError as exc:
        print(f"semireg: input error: {exc}", file=sys.stderr)
        return 2
    passed = all(c["passed"] for c in body.get("checks", []))
    echo = {k: cfg[k] for k in ("atlas", "bundle", "seed", "trunc_level", "weight_window", "samples")}
    echo["trunc_level"] = st.trunc_level
    report = {"command": args.command, "config": echo, "result": "PASS" if passed else "FAIL"}
    report.update(body)
    text = json.dumps(report, sort_keys=True, indent=1, default=str) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"semireg: cannot write report: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    summary = _summary(report)
    print(f"semireg {args.command}: {report['result']}", file=sys.stderr)
    if summary:
        print(summary, file=sys.stderr)
    print(f"elapsed {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())

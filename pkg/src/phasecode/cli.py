"""Command-line entry point: ``phasecode {sweep,verify,formulas,decompose}``.

Exit status: 0 success, 1 verification failure, 2 usage or capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from phasecode import analytics
from phasecode.channels import AmplitudeDampingChannel, PhaseDampingChannel
from phasecode.codes import (
    MAX_SYMMETRIC_N,
    Code,
    encode,
    format_state,
    standard_code,
    symmetric_code,
    two_qubit_code,
)
from phasecode.protocol import CSV_FIELDS, ProtocolRun, run_periodic, run_symmetric_sparse
from phasecode.trajectories import branch_weights, decompose
from phasecode.verification import random_logical, run_checks

SWEEP_TOL = 1e-9
DENSE_PHASE_MAX_N = 10
MAX_SPARSE_N = 256
DELTA_FIELDS = ("delta_p_accept", "delta_J", "delta_fidelity")


class UsageError(Exception):
    pass


class CapacityError(UsageError):
    pass


@dataclass
class SweepConfig:
    codes: list[str] = field(default_factory=lambda: ["symmetric:4"])
    channel: str = "phase"
    params: list[float] = field(default_factory=lambda: [0.1])
    amplitudes: str = "0.5"
    ks: list[int] = field(default_factory=lambda: [1])
    seed: int = 0
    out: str | None = None
    workers: int = 1


# Parsing ---------------------------------------------------------------------


def _floats(text: str) -> list[float]:
    try:
        vals = [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None
    if not vals:
        raise UsageError("empty number list")
    return vals


def _ints(text: str) -> list[int]:
    vals = _floats(text)
    if any(v != int(v) or v < 1 for v in vals):
        raise UsageError(f"expected positive integers, got {text!r}")
    return [int(v) for v in vals]


def parse_codes(text: str) -> list[str]:
    """Expand ``standard``, ``two_qubit``, ``symmetric:N``, ``symmetric:A..B``.

    A bare integer after a symmetric selector is another symmetric size, so
    ``symmetric:4,6,8`` works.
    """
    out: list[str] = []
    last_symmetric = False
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in ("standard", "two_qubit"):
            out.append(tok)
            last_symmetric = False
            continue
        if tok.startswith("symmetric:"):
            spec = tok.split(":", 1)[1]
        elif last_symmetric and tok.isdigit():
            spec = tok
        else:
            raise UsageError(f"unknown code selector {tok!r}")
        try:
            if ".." in spec:
                lo, hi = (int(x) for x in spec.split(".."))
                sizes = [n for n in range(lo, hi + 1) if n % 2 == 0]
            else:
                sizes = [int(spec)]
        except ValueError:
            raise UsageError(f"bad symmetric size {spec!r}") from None
        for n in sizes:
            if n < 2 or n % 2:
                raise UsageError(f"symmetric code needs an even N >= 2, got {n}")
            out.append(f"symmetric:{n}")
        last_symmetric = True
    if not out:
        raise UsageError("no code selected")
    return out


def parse_amplitudes(text: str, seed: int) -> list[tuple[complex, complex]]:
    """``x`` or ``x:phase`` entries, ``uniform-grid:m`` or ``random:m``."""
    text = str(text).strip()
    if text.startswith("uniform-grid:"):
        m = _ints(text.split(":", 1)[1])[0]
        pairs = [(x, 0.0) for x in np.linspace(0, 1, m)] if m > 1 else [(0.5, 0.0)]
    elif text.startswith("random:"):
        m = _ints(text.split(":", 1)[1])[0]
        rng = np.random.default_rng(seed)
        return [random_logical(rng) for _ in range(m)]
    else:
        pairs = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            x, _, ph = tok.partition(":")
            try:
                pairs.append((float(x), float(ph) if ph else 0.0))
            except ValueError:
                raise UsageError(f"bad amplitude entry {tok!r}") from None
    out = []
    for x, ph in pairs:
        if not 0 <= x <= 1:
            raise UsageError(f"|c0|^2 must be in [0, 1], got {x}")
        out.append((complex(math.sqrt(x)), math.sqrt(1 - x) * complex(math.cos(ph), math.sin(ph))))
    if not out:
        raise UsageError("no amplitudes given")
    return out


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{num}: expected 'key = value'")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


_CONFIG_KEYS = ("code", "channel", "lambda", "gamma", "c0sq", "k", "seed", "out", "workers")


def build_config(args: argparse.Namespace) -> SweepConfig:
    raw: dict[str, str] = {}
    if args.config:
        raw = read_config_file(args.config)
        unknown = set(raw) - set(_CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for key in _CONFIG_KEYS:
        val = getattr(args, key if key != "lambda" else "lam", None)
        if val is not None:
            raw[key] = str(val)

    cfg = SweepConfig()
    if "code" in raw:
        cfg.codes = parse_codes(raw["code"])
    channel = raw.get("channel", "phase")
    if ":" in channel:
        channel, _, inline = channel.partition(":")
        raw["lambda" if channel == "phase" else "gamma"] = inline
    if channel not in ("phase", "amplitude"):
        raise UsageError(f"channel must be 'phase' or 'amplitude', got {channel!r}")
    cfg.channel = channel
    key = "lambda" if channel == "phase" else "gamma"
    if key in raw:
        cfg.params = _floats(raw[key])
    elif channel == "amplitude":
        raise UsageError("amplitude channel needs --gamma")
    for p in cfg.params:
        if channel == "phase" and not (math.isfinite(p) and p >= 0):
            raise UsageError(f"lambda must be >= 0, got {p}")
        if channel == "amplitude" and not 0 <= p <= 1:
            raise UsageError(f"gamma must be in [0, 1], got {p}")
    if "seed" in raw:
        try:
            cfg.seed = int(raw["seed"])
        except ValueError:
            raise UsageError(f"bad seed {raw['seed']!r}") from None
    cfg.amplitudes = raw.get("c0sq", cfg.amplitudes)
    if "k" in raw:
        cfg.ks = _ints(raw["k"])
    cfg.out = raw.get("out")
    cfg.workers = _ints(raw["workers"])[0] if "workers" in raw else (os.cpu_count() or 1)
    return cfg


# Sweep -----------------------------------------------------------------------


def _code(selector: str) -> Code:
    if selector == "standard":
        return standard_code()
    if selector == "two_qubit":
        return two_qubit_code()
    return symmetric_code(int(selector.split(":")[1]))


def _check_capacity(cfg: SweepConfig) -> None:
    for sel in cfg.codes:
        if not sel.startswith("symmetric:"):
            continue
        n = int(sel.split(":")[1])
        limit = MAX_SPARSE_N if cfg.channel == "phase" else MAX_SYMMETRIC_N
        if n > limit:
            raise CapacityError(
                f"symmetric:{n} exceeds capacity for the {cfg.channel} channel (N <= {limit})"
            )


def _run_point(point) -> dict:
    selector, channel, param, c0, c1, k = point
    if selector.startswith("symmetric:") and channel == "phase":
        n = int(selector.split(":")[1])
        if n > DENSE_PHASE_MAX_N:
            return run_symmetric_sparse(n, param, c0, c1, k).to_record()
    ch = PhaseDampingChannel(param) if channel == "phase" else AmplitudeDampingChannel(param)
    return run_periodic(ProtocolRun(_code(selector), ch, c0, c1, k)).to_record()


def sweep_records(cfg: SweepConfig) -> list[dict]:
    _check_capacity(cfg)
    amps = parse_amplitudes(cfg.amplitudes, cfg.seed)
    points = []
    for ci, sel in enumerate(cfg.codes):
        for param in sorted(cfg.params):
            for ai, (c0, c1) in enumerate(amps):
                for k in sorted(cfg.ks):
                    points.append(((ci, param, ai, k), (sel, cfg.channel, param, c0, c1, k)))
    points.sort(key=lambda p: p[0])
    payload = [p[1] for p in points]
    if cfg.workers > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_run_point, payload, chunksize=max(1, len(payload) // (4 * cfg.workers))))
    return [_run_point(p) for p in payload]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format(v, ".17g")
    return str(v)


def _delta(a, b):
    if a is None or b is None or (isinstance(a, float) and math.isnan(a)):
        return None
    return abs(a - b)


def with_deltas(rec: dict) -> dict:
    rec = dict(rec)
    rec["delta_p_accept"] = _delta(rec["p_accept_meas"], rec["p_accept_form"])
    rec["delta_J"] = _delta(rec["J_meas"], rec["J_form"])
    rec["delta_fidelity"] = _delta(rec["fidelity_meas"], rec["fidelity_form"])
    return rec


def records_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    fields = CSV_FIELDS + DELTA_FIELDS
    w.writerow(fields)
    for rec in records:
        rec = with_deltas(rec)
        w.writerow([_fmt(rec[f]) for f in fields])
    return buf.getvalue()


def summarize(records: list[dict]) -> tuple[list[str], bool]:
    """One line per formula with its worst delta; two-qubit fidelity is not gated."""
    groups: dict[str, list[float]] = {}
    for rec in map(with_deltas, records):
        for label, key in (("p_accept", "delta_p_accept"), ("J", "delta_J"), ("fidelity", "delta_fidelity")):
            d = rec[key]
            if d is None:
                continue
            if label == "fidelity" and rec["code_name"] == "two_qubit":
                label = "fidelity[two_qubit, displayed 1-2|c0|^2|c1|^2/cosh]"
            groups.setdefault(label, []).append(d)
    lines = []
    ok = True
    for label, ds in groups.items():
        worst = max(ds)
        if label.startswith("fidelity[two_qubit"):
            tag = "FINDING"
        else:
            tag = "PASS" if worst <= SWEEP_TOL else "FAIL"
            ok &= worst <= SWEEP_TOL
        lines.append(f"{tag:7s} {label}: max |measured - closed form| = {worst:.3e} over {len(ds)} rows (tol {SWEEP_TOL:.0e})")
    if not groups:
        lines.append("no closed forms available for this grid")
    return lines, ok


def cmd_sweep(args) -> int:
    cfg = build_config(args)
    records = sweep_records(cfg)
    text = records_to_csv(records)
    lines, ok = summarize(records)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
        summary_stream = sys.stdout
    else:
        sys.stdout.write(text)
        summary_stream = sys.stderr
    for line in lines:
        print(line, file=summary_stream)
    return 0 if ok else 1


# Other verbs ------------------------------------------------------------------


def cmd_verify(args) -> int:
    checks = run_checks()
    for c in checks:
        print(c.line(args.verbose))
    gated = [c for c in checks if c.gated]
    failed = [c for c in gated if not c.passed]
    findings = len(checks) - len(gated)
    print(f"verify: {len(gated) - len(failed)}/{len(gated)} checks passed, {findings} findings")
    return 1 if failed else 0


def cmd_formulas(args) -> int:
    names = args.names or sorted(analytics.FORMULAS)
    codes = parse_codes(args.code) if args.code else parse_codes("symmetric:2..10")
    sizes = sorted({int(c.split(":")[1]) for c in codes if c.startswith("symmetric:")}) or [2]
    lams = _floats(args.lam) if args.lam is not None else [0.1]
    eps_list = _floats(args.epsilon) if args.epsilon is not None else [1e-3]
    ks = _ints(args.k) if args.k is not None else [1]
    c0sqs = _floats(args.c0sq) if args.c0sq is not None else [0.5]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["formula", "N", "lam", "eps", "k", "c0sq", "J", "value"])
    seen = set()
    try:
        for name in names:
            for n in sizes:
                for lam in lams:
                    for eps in eps_list:
                        for k in ks:
                            for x in c0sqs:
                                inputs = dict(N=n, lam=lam, eps=eps, k=k, c0sq=x, c1sq=1 - x,
                                              J=analytics.j_form(n, lam))
                                for cf in analytics.evaluate(name, **inputs):
                                    key = (cf.name, tuple(sorted(cf.inputs.items())))
                                    if key in seen:
                                        continue
                                    seen.add(key)
                                    row = [cf.name] + [
                                        _fmt(cf.inputs.get(a)) for a in ("N", "lam", "eps", "k", "c0sq", "J")
                                    ] + [_fmt(cf.value)]
                                    w.writerow(row)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_decompose(args) -> int:
    codes = parse_codes(args.code or "symmetric:4")
    if len(codes) != 1:
        raise UsageError("decompose takes exactly one code")
    sel = codes[0]
    if sel.startswith("symmetric:") and int(sel.split(":")[1]) > MAX_SYMMETRIC_N:
        raise CapacityError(f"{sel} exceeds capacity (N <= {MAX_SYMMETRIC_N})")
    code = _code(sel)
    lam = _floats(args.lam)[0] if args.lam is not None else 0.1
    if lam < 0:
        raise UsageError("lambda must be >= 0")
    c0, c1 = parse_amplitudes(args.c0sq or "0.5", args.seed or 0)[0]
    psi = encode(code, c0, c1)
    ens = decompose(psi, lam)
    weights = branch_weights(ens)
    out = [format_state(psi, f"source {code.name} lambda={lam:.17g}")]
    for n, wgt in enumerate(weights):
        if wgt <= 0:
            continue
        out.append(format_state(ens.dense(n), f"branch n={n} label={n:0{code.width}b} weight={wgt:.17g}"))
    out.append(f"# total weight {weights.sum():.17g}\n")
    sys.stdout.write("".join(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--code", help="standard | two_qubit | symmetric:N | symmetric:A..B (comma list)")
    common.add_argument("--channel", help="phase | amplitude (optionally phase:<list>)")
    common.add_argument("--lambda", dest="lam", help="comma list of phase-damping exponents")
    common.add_argument("--gamma", help="comma list of amplitude-damping probabilities")
    common.add_argument("--c0sq", help="|c0|^2 list (x or x:phase), uniform-grid:m or random:m")
    common.add_argument("--k", help="comma list of correction rounds")
    common.add_argument("--seed", type=int, help="seed for random amplitudes")
    common.add_argument("--out", help="CSV output path (default stdout)")
    common.add_argument("--workers", type=int, help="worker processes (default: all cores)")
    common.add_argument("--config", help="file of 'key = value' lines; flags override it")

    p = argparse.ArgumentParser(prog="phasecode", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)
    sub.add_parser("sweep", parents=[common], help="run a protocol grid and write CSV")
    v = sub.add_parser("verify", help="run every simulation-vs-formula check")
    v.add_argument("-v", "--verbose", action="store_true", help="print deltas for every check")
    f = sub.add_parser("formulas", parents=[common], help="tabulate closed forms")
    f.add_argument("names", nargs="*", help=f"formula names: {', '.join(sorted(analytics.FORMULAS))}")
    f.add_argument("--epsilon", help="comma list of per-step errors for quadratic_watchdog")
    sub.add_parser("decompose", parents=[common], help="dump trajectory branches of a code state")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "sweep": cmd_sweep,
        "verify": cmd_verify,
        "formulas": cmd_formulas,
        "decompose": cmd_decompose,
    }[args.verb]
    try:
        return handler(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

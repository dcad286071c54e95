"""Batch command-line front-end.

Subcommands: prob | sample | permanent | hafnian | permanent-psd | validate | haar.

All numeric output is printed with 17 significant digits.  Reports are
rendered fully before anything is written, and files are written atomically
(temp file + rename), so a failing run never leaves a partial table.  Exit
codes: 0 success, 1 validation error, 2 cost-limit error.

Environment overrides: GBSIM_WORKERS (default worker count for sampling),
GBSIM_OUT_DIR (directory prepended to relative --out paths).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .engines import enumerate_patterns, prob_general, prob_squeezed, prob_thermal
from .errors import CostLimitError, GbsimError, ValidationError
from .fock_oracle import apply_network, pattern_probability, prepare_input
from .interferometer import haar_random, validate_unitary
from .matrix_functions import hafnian, permanent
from .matrixio import dump_complex_matrix, format_complex, load_complex_matrix, matrix_from_json
from .psd_permanent import EXACT_CROSSCHECK_LIMIT, estimate_permanent, exact_permanent_psd
from .qform import build_qform
from .sampler import sample_patterns
from .states import state_from_descriptor

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COST = 2

ORACLE_TOL = 1e-6
_THERMAL_TOL = 1e-14
_PURE_TOL = 1e-12


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ValidationError("config root must be an object")
    if cfg.get("schema") != 1:
        raise ValidationError("config field 'schema' must be 1")
    for field in ("modes", "states", "unitary"):
        if field not in cfg:
            raise ValidationError(f"config field '{field}' is missing")
    return cfg


def _config_states(cfg: dict) -> list:
    states = []
    for i, desc in enumerate(cfg["states"]):
        try:
            states.append(state_from_descriptor(desc))
        except ValidationError as exc:
            raise ValidationError(f"states[{i}]: {exc}") from None
    if len(states) != cfg["modes"]:
        raise ValidationError(f"config declares modes = {cfg['modes']} but lists {len(states)} states")
    return states


def _config_unitary(cfg: dict, base_dir: str):
    entry = cfg["unitary"]
    if isinstance(entry, dict) and "file" in entry:
        path = entry["file"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        u = load_complex_matrix(path)
    elif isinstance(entry, list):
        u = matrix_from_json(entry)
    else:
        raise ValidationError("config field 'unitary' must be an inline array or {\"file\": path}")
    net = validate_unitary(u)
    if net.m != cfg["modes"]:
        raise ValidationError(f"unitary is {net.m}x{net.m} but config declares modes = {cfg['modes']}")
    return net


def _config_patterns(cfg: dict, m: int) -> list[tuple[int, ...]]:
    if "patterns" in cfg:
        pats = []
        for i, p in enumerate(cfg["patterns"]):
            if len(p) != m or any(int(x) not in (0, 1) for x in p):
                raise ValidationError(f"patterns[{i}] must be a length-{m} 0/1 vector")
            pats.append(tuple(int(x) for x in p))
        return pats
    if "n_max" in cfg:
        n_max = int(cfg["n_max"])
        if not 0 <= n_max <= m:
            raise ValidationError(f"n_max must be in [0, {m}]")
        return list(enumerate_patterns(m, n_max))
    raise ValidationError("config needs either 'patterns' or 'n_max'")


def _out_path(path: str) -> str:
    out_dir = os.environ.get("GBSIM_OUT_DIR")
    if out_dir and not os.path.isabs(path):
        return os.path.join(out_dir, path)
    return path


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = _out_path(out)
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".gbsim-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _render(meta: dict, columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"tool": "gbsim", **meta, "rows": rows}, indent=2, sort_keys=False) + "\n"
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    head = [f"# gbsim {meta.get('version', __version__)}"]
    for k, v in meta.items():
        if k != "version":
            head.append(f"# {k}: {v}")
    if fmt == "csv":
        buf = io.StringIO()
        for line in head:
            buf.write(line + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max(len(col), *(len(c[i]) for c in cells)) if cells else len(col) for i, col in enumerate(columns)]
    lines = head + [
        "  ".join(col.ljust(widths[i]) for i, col in enumerate(columns)),
    ]
    for c in cells:
        lines.append("  ".join(c[i].ljust(widths[i]) for i in range(len(columns))))
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _pattern_str(p) -> str:
    return ",".join(str(int(x)) for x in p)


def _applicable_engines(qform) -> list[str]:
    names = ["general"]
    if float(np.abs(qform.lams).max()) <= _THERMAL_TOL:
        names.append("thermal")
    if float(np.abs(qform.mus - 1.0).max()) <= _PURE_TOL:
        names.append("squeezed")
    return names


_ENGINE_FN = {"general": prob_general, "thermal": prob_thermal, "squeezed": prob_squeezed}


def cmd_haar(args) -> int:
    net = haar_random(args.modes, args.seed)
    _emit(dump_complex_matrix(net.u), args.out)
    return EXIT_OK


def cmd_permanent(args) -> int:
    val = permanent(load_complex_matrix(args.matrix))
    _emit(format_complex(val) + "\n", args.out)
    return EXIT_OK


def cmd_hafnian(args) -> int:
    val = hafnian(load_complex_matrix(args.matrix))
    _emit(format_complex(val) + "\n", args.out)
    return EXIT_OK


def cmd_prob(args) -> int:
    cfg = _load_config(args.config)
    states = _config_states(cfg)
    net = _config_unitary(cfg, os.path.dirname(os.path.abspath(args.config)))
    patterns = _config_patterns(cfg, net.m)
    qform = build_qform(states, net)
    applicable = _applicable_engines(qform)
    if args.engine == "auto":
        # prefer the specialized engine when its precondition holds
        engine = applicable[-1]
    else:
        engine = args.engine
        if engine not in applicable:
            raise ValidationError(f"engine '{engine}' is not applicable to these inputs")
    columns = ["pattern", "N", "probability", "engine"]
    if args.validate:
        columns.append("crosscheck_delta")
    rows = []
    for pat in patterns:
        n = sum(pat)
        p = _ENGINE_FN[engine](qform, pat)
        row = {"pattern": _pattern_str(pat), "N": n, "probability": p, "engine": engine}
        if args.validate:
            vals = [_ENGINE_FN[name](qform, pat) for name in applicable]
            row["crosscheck_delta"] = float(max(vals) - min(vals))
        rows.append(row)
    meta = {"version": __version__, "config_hash": _config_hash(cfg)}
    text = _render(meta, columns, rows, args.format)
    if args.dump_qform:
        dump = [
            f"# K = {_fmt(qform.k)}",
            "# C:",
            *("#   " + " ".join(format_complex(z) for z in row) for row in qform.c),
            "# D-tilde:",
            *("#   " + " ".join(format_complex(z) for z in row) for row in qform.d_tilde),
        ]
        text += "\n".join(dump) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    cfg = _load_config(args.config)
    states = _config_states(cfg)
    net = _config_unitary(cfg, os.path.dirname(os.path.abspath(args.config)))
    workers = args.workers or int(os.environ.get("GBSIM_WORKERS", "1"))
    report = sample_patterns(states, net, args.shots, args.seed, workers=workers)
    items = sorted(report.histogram.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    rows = [
        {"pattern": _pattern_str(pat), "count": cnt, "frequency": cnt / report.shots}
        for pat, cnt in items
    ]
    meta = {
        "version": __version__,
        "config_hash": _config_hash(cfg),
        "seed": args.seed,
        "shots": args.shots,
    }
    _emit(_render(meta, ["pattern", "count", "frequency"], rows, args.format), args.out)
    return EXIT_OK


def cmd_permanent_psd(args) -> int:
    h = load_complex_matrix(args.matrix)
    result = estimate_permanent(h, args.shots, args.seed, headroom=args.headroom)
    exact = result.exact
    if exact is None and (args.exact or h.shape[0] <= EXACT_CROSSCHECK_LIMIT):
        exact = exact_permanent_psd(h)
    ratio = result.estimate / exact if exact else None
    rows = [
        {
            "estimate": result.estimate,
            "stderr": result.stderr,
            "count": result.count,
            "shots": result.shots,
            "exact": exact,
            "ratio": ratio,
            "low_confidence": result.low_confidence,
        }
    ]
    meta = {"version": __version__, "matrix": os.path.basename(args.matrix), "seed": args.seed}
    columns = ["estimate", "stderr", "count", "shots", "exact", "ratio", "low_confidence"]
    _emit(_render(meta, columns, rows, args.format), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _load_config(args.config)
    states = _config_states(cfg)
    net = _config_unitary(cfg, os.path.dirname(os.path.abspath(args.config)))
    try:
        patterns = _config_patterns(cfg, net.m)
    except ValidationError:
        patterns = list(enumerate_patterns(net.m, net.m))
    qform = build_qform(states, net)
    applicable = _applicable_engines(qform)
    fock = apply_network(prepare_input(states, cutoff=args.cutoff), net)
    columns = ["pattern", "N"] + applicable + (["oracle"] if args.oracle else []) + ["delta"]
    rows = []
    worst = 0.0
    for pat in patterns:
        oracle_p = pattern_probability(fock, pat)
        row = {"pattern": _pattern_str(pat), "N": sum(pat)}
        delta = 0.0
        for name in applicable:
            p = _ENGINE_FN[name](qform, pat)
            row[name] = p
            delta = max(delta, abs(p - oracle_p))
        if args.oracle:
            row["oracle"] = oracle_p
        row["delta"] = delta
        worst = max(worst, delta)
        rows.append(row)
    meta = {"version": __version__, "config_hash": _config_hash(cfg), "oracle_tolerance": ORACLE_TOL}
    _emit(_render(meta, columns, rows, args.format), args.out)
    if worst > ORACLE_TOL:
        sys.stderr.write(f"gbsim validate: engine-oracle delta {worst:.3e} exceeds {ORACLE_TOL:g}\n")
        return EXIT_VALIDATION
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gbsim", description=__doc__)
    ap.add_argument("--version", action="version", version=f"gbsim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_fmt(p):
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--out", help="write the report to this file (atomic)")

    p = sub.add_parser("haar", help="generate a Haar-random unitary matrix file")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_haar)

    p = sub.add_parser("permanent", help="permanent of a complex matrix file")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_permanent)

    p = sub.add_parser("hafnian", help="hafnian of a complex matrix file")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_hafnian)

    p = sub.add_parser("prob", help="exact detection probabilities from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--engine", choices=["auto", "general", "thermal", "squeezed"], default="auto")
    p.add_argument("--validate", action="store_true", help="cross-check all applicable engines")
    p.add_argument("--dump-qform", action="store_true", help="append the (K, C, D-tilde) report")
    add_fmt(p)
    p.set_defaults(fn=cmd_prob)

    p = sub.add_parser("sample", help="sample photon-count patterns (classical inputs)")
    p.add_argument("--config", required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=0, help="0 = use GBSIM_WORKERS or 1")
    add_fmt(p)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("permanent-psd", help="estimate the permanent of a PSD Hermitian matrix by sampling")
    p.add_argument("--matrix", required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--headroom", type=float, default=0.1)
    p.add_argument("--exact", action="store_true", help="force the Ryser value even for large n")
    add_fmt(p)
    p.set_defaults(fn=cmd_permanent_psd)

    p = sub.add_parser("validate", help="compare every applicable engine against the Fock oracle")
    p.add_argument("--config", required=True)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--oracle", action="store_true", help="add the oracle probability column")
    add_fmt(p)
    p.set_defaults(fn=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CostLimitError as exc:
        sys.stderr.write(f"gbsim: cost limit: {exc}\n")
        return EXIT_COST
    except GbsimError as exc:
        sys.stderr.write(f"gbsim: error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

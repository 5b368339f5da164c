"""Command-line interface: ``netentangle {entropy,sweep,conductance,verify}``.

stdout carries data, stderr diagnostics.  Exit codes: 0 ok, 1 verification
failure, 2 usage or input error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

import numpy as np

from . import verification
from .closed_forms import closed_form_entropy, large_coupling_entropy
from .conductance import ENUMERATION_LIMIT, conductance, entropy_conductance_table
from .exceptions import NumericalError
from .graphs import FAMILIES, Bipartition, four_block_of, load_graph, load_partition, make_family, potential_matrix
from .reduction import entropy, entropy_oracle
from .schur import entropy_via_schur, is_complete_chain

SCHEMA = 1
EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _log_base(text: str):
    if text == "e":
        return "e"
    if text == "2":
        return 2
    raise argparse.ArgumentTypeError("log base must be 'e' or '2'")


def parse_sweep(text: str) -> np.ndarray:
    """``start:stop:points[:log|lin]`` -> array of couplings (log spacing by default)."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise UsageError(f"sweep must be start:stop:points[:log|lin], got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed sweep {text!r}") from None
    scale = parts[3] if len(parts) == 4 else "log"
    if points < 1:
        raise UsageError("sweep needs at least one point")
    if start <= 0 or stop <= 0:
        raise UsageError("all sweep couplings must be positive")
    if scale == "log":
        return np.geomspace(start, stop, points)
    if scale in ("lin", "linear"):
        return np.linspace(start, stop, points)
    raise UsageError(f"sweep scale must be 'log' or 'lin', got {scale!r}")


def _graph(args):
    if (args.graph is None) == (args.family is None):
        raise UsageError("give exactly one of --graph or --family")
    if args.graph is not None:
        return load_graph(args.graph)
    return make_family(args.family, *args.params)


def _partition(args, graph) -> Bipartition:
    if args.part_a is not None and args.partition is not None:
        raise UsageError("give at most one of --part-a or --partition")
    if args.partition is not None:
        part = load_partition(args.partition)
    elif args.part_a is not None:
        part = args.part_a
    else:
        raise UsageError("a partition is required (--part-a or --partition)")
    return Bipartition(graph.n, tuple(part))


def _method_results(graph, part, g, log_base, method):
    v = potential_matrix(graph, g)
    runners = {
        "direct": lambda: entropy(v, part, log_base),
        "schur": lambda: entropy_via_schur(v, part, log_base),
        "closed-form": lambda: closed_form_entropy(graph, part.part_a, g, log_base),
        "oracle": lambda: entropy_oracle(v, part, log_base),
    }
    names = list(runners) if method == "all" else [method]
    out = {name: runners[name]() for name in names}
    if method == "closed-form" and out["closed-form"] is None:
        raise UsageError("no closed form is known for this graph and partition")
    return out


def _emit(payload: dict, rows: list[dict] | None, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    if rows is None:
        rows = [payload]
    fields = list(dict.fromkeys(itertools.chain.from_iterable(r.keys() for r in rows)))
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _cell(r.get(k)) for k in fields})
        return
    cells = [[_cell(r.get(k), short=True) for k in fields] for r in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) for i, f in enumerate(fields)]
    out.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)) + "\n")
    for c in cells:
        out.write("  ".join(x.ljust(w) for x, w in zip(c, widths)) + "\n")


def _base_label(log_base):
    return "e" if log_base == "e" else 2


def _cell(x, short=False) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}" if short else repr(x)
    if isinstance(x, (list, tuple)):
        return " ".join(_cell(y, short) for y in x)
    return str(x)


def cmd_entropy(args, out) -> int:
    graph = _graph(args)
    part = _partition(args, graph)
    if args.g < 0:
        raise UsageError("g must be non-negative")
    results = _method_results(graph, part, args.g, args.log_base, args.method)
    entries = []
    for name, res in results.items():
        entry = {"method": name.replace("-", "_")}
        if res is None:
            entry["available"] = False
        else:
            entry.update(res.to_json())
            entry["method"] = name.replace("-", "_")
        entries.append(entry)
    totals = [e["total"] for e in entries if "total" in e]
    payload = {
        "schema": SCHEMA,
        "command": "entropy",
        "n": graph.n,
        "part_a": list(part.part_a),
        "g": args.g,
        "log_base": _base_label(args.log_base),
        "results": entries,
    }
    if args.method == "all":
        payload["max_pairwise_deviation"] = (
            max(abs(a - b) for a, b in itertools.combinations(totals, 2)) if len(totals) > 1 else 0.0
        )
    rows = [
        {k: e.get(k) for k in ("method", "total", "d", "nu", "mode_entropy")} for e in entries
    ]
    _emit(payload, rows, args.format, out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    graph = _graph(args)
    part = _partition(args, graph)
    gs = parse_sweep(args.sweep)
    fb = four_block_of(graph, part)
    chain = is_complete_chain(graph, fb)
    scale = 1.0 if args.log_base == "e" else np.log(2.0)
    rows = []
    for g in gs:
        res = entropy(potential_matrix(graph, g), part, args.log_base)
        row = {
            "g": float(g),
            "S": res.total,
            "d_max": float(res.spectrum.d[0]),
            "nu_max": float(res.spectrum.nu[0]),
            "asymptotic": large_coupling_entropy(*fb.sizes, g) / scale if chain else None,
        }
        rows.append(row)
    payload = {
        "schema": SCHEMA,
        "command": "sweep",
        "n": graph.n,
        "part_a": list(part.part_a),
        "sizes": list(fb.sizes),
        "log_base": _base_label(args.log_base),
        "rows": rows,
    }
    _emit(payload, rows, args.format, out)
    return EXIT_OK


def cmd_conductance(args, out) -> int:
    graph = _graph(args)
    if args.with_entropy:
        if args.g is None:
            raise UsageError("--with-entropy requires --g")
        report = entropy_conductance_table(graph, args.g, args.log_base, args.limit)
    else:
        report = conductance(graph, args.limit)
    key = args.sort or ("entropy" if args.with_entropy else "ratio")
    records = report.sorted_by(key, descending=(key == "entropy"))
    rows = []
    for r in records:
        row = {
            "part_a": list(r.part_a),
            "cut_edges": r.cut_edges,
            "ratio": str(r.ratio),
            "ratio_value": float(r.ratio),
        }
        if r.entropy is not None:
            row["entropy"] = r.entropy.total
            row["schmidt_rank"] = r.schmidt_rank
        rows.append(row)
    payload = {
        "schema": SCHEMA,
        "command": "conductance",
        "n": graph.n,
        "alpha": str(report.alpha),
        "alpha_value": float(report.alpha),
        "argmin": [list(a) for a in report.argmin],
        "records": rows,
    }
    if args.with_entropy:
        payload["g"] = args.g
        payload["log_base"] = _base_label(args.log_base)
    _emit(payload, rows, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    criteria = None
    if args.criterion:
        criteria = [c for chunk in args.criterion for c in chunk.split(",") if c]
    try:
        results = verification.run(criteria, seed=args.seed, trials=args.trials, perturb=args.debug_perturb)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "verify",
            "seed": args.seed,
            "criteria": [
                {"key": r.key, "passed": r.passed, "detail": r.detail, "elapsed": r.elapsed}
                for r in results
            ],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def _graph_options(p):
    p.add_argument("--graph", help="graph JSON file {\"n\": int, \"edges\": [[i, j], ...]}")
    p.add_argument("--family", choices=sorted(FAMILIES), help="named graph family")
    p.add_argument("--params", type=_int_list, default=[], help="family sizes, e.g. 5,4")


def _partition_options(p):
    p.add_argument("--part-a", type=_int_list, help="comma-separated nodes of part A")
    p.add_argument("--partition", help="partition JSON file {\"part_a\": [...]}")


def _common(p, fmt_default="json"):
    p.add_argument("--log-base", type=_log_base, default="e", help="e (default) or 2")
    p.add_argument("--format", choices=("json", "csv", "table"), default=fmt_default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netentangle",
        description="Ground-state entanglement of harmonic-oscillator networks on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy of one bipartition")
    _graph_options(p)
    _partition_options(p)
    p.add_argument("--g", type=float, required=True, help="coupling strength")
    p.add_argument(
        "--method", choices=("direct", "schur", "closed-form", "oracle", "all"), default="direct"
    )
    _common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("sweep", help="entropy as a function of the coupling")
    _graph_options(p)
    _partition_options(p)
    p.add_argument("--sweep", required=True, help="start:stop:points[:log|lin]")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("conductance", help="conductance by exhaustive enumeration")
    _graph_options(p)
    p.add_argument("--with-entropy", action="store_true", help="annotate every partition with its entropy")
    p.add_argument("--g", type=float, help="coupling for --with-entropy")
    p.add_argument("--sort", choices=("ratio", "entropy", "cut_edges"))
    p.add_argument("--limit", type=int, default=ENUMERATION_LIMIT, help="largest N to enumerate")
    _common(p)
    p.set_defaults(func=cmd_conductance)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument(
        "--criterion",
        action="append",
        help=f"criterion key(s), comma-separated or repeated; from {', '.join(verification.CRITERIA)}",
    )
    p.add_argument("--trials", type=int, help="trial count for the randomized checks")
    p.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)
    p.add_argument(
        "--debug-perturb",
        type=float,
        default=0.0,
        metavar="EPS",
        help="add EPS to V[0,0] on the direct route (negative control)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except NumericalError as exc:
        print(f"netentangle: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"netentangle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run_to_string(argv) -> tuple[int, str]:
    """Run the CLI and capture stdout (handy in tests and notebooks)."""
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

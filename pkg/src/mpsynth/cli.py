"""Command-line front end.

Subcommands:

* ``synthesize {star|isom} N --costs FILE`` - run a synthesizer and
  emit the structure (JSON and/or DOT) plus a summary table,
* ``validate FILE`` - check a structure file against the defining
  properties,
* ``eval FILE --costs FILE`` - exact complexity and latency,
* ``export FILE --format dot|json`` - re-serialize a structure,
* ``verify N --costs FILE`` - run the optimizer-versus-oracle report.

Exit codes: 0 success, 1 usage or config error, 2 infeasible request
(e.g. no uniform tree for this size without ``--prune``), 3 validation
or verification failure.  All numbers print as exact rationals.
Identical invocations write byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .costs import CostModel, CostModelError, format_rational, load_cost_model
from .oracles import DEFAULT_BUDGET, EnumerationBudget, verify_report
from .staropt import synthesize_star
from .structure import Dag, complexity, dumps, latency, loads, to_dot, validate
from .uniform import (
    consecutive_labeling,
    min_uniform_latency,
    structure_from_uniform_tree,
    synthesize_min_latency,
    uniform_tree_from_type_vector,
)

USAGE_ERROR, INFEASIBLE, MISMATCH = 1, 2, 3


def _fail(code: int, message: str) -> int:
    print(json.dumps({"error": message}), file=sys.stderr)
    return code


def _load_costs(path: str) -> CostModel:
    return load_cost_model(Path(path).read_bytes())


def _write_artifacts(
    out_dir: str | None,
    dag: Dag,
    fmt: str,
    manifest: dict,
) -> list[str]:
    written: list[str] = []
    if out_dir is None:
        return written
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if fmt in ("json", "all"):
        (out / "structure.json").write_text(dumps(dag), encoding="ascii")
        written.append("structure.json")
    if fmt in ("dot", "all"):
        (out / "structure.dot").write_text(to_dot(dag), encoding="ascii")
        written.append("structure.dot")
    manifest = dict(manifest, outputs=written)
    (out / "run_manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="ascii"
    )
    return written


def _summary(rows: list[tuple[str, object]]) -> None:
    width = max(len(key) for key, _ in rows)
    for key, value in rows:
        print(f"{key.ljust(width)}  {value}")


def _cmd_synthesize(args: argparse.Namespace) -> int:
    started = time.monotonic()
    try:
        cm = _load_costs(args.costs)
    except (OSError, CostModelError) as exc:
        return _fail(USAGE_ERROR, f"cost model: {exc}")
    if args.n < 3:
        return _fail(USAGE_ERROR, f"synthesis needs n >= 3, got {args.n}")

    rows: list[tuple[str, object]]
    if args.mode == "star":
        result = synthesize_star(args.n, cm, all_optima=True)
        dag = result.structure
        rows = [
            ("mode", "star"),
            ("n", args.n),
            ("complexity", format_rational(result.complexity)),
            ("latency", format_rational(result.latency)),
            ("q", list(result.q)),
        ]
        if args.all_optima:
            rows.append(("all_q", [list(q) for q in result.all_q]))
        extra = {"q": list(result.q)}
    else:
        if args.prune:
            pruned = synthesize_min_latency(args.n, cm)
            dag = pruned.structure
            rows = [
                ("mode", "isom"),
                ("n", args.n),
                ("n_prime", pruned.n_prime),
                ("complexity", format_rational(complexity(dag, cm))),
                ("latency", format_rational(pruned.latency)),
                ("w", list(pruned.w)),
            ]
            extra = {"w": list(pruned.w), "n_prime": pruned.n_prime}
        else:
            try:
                latopt = min_uniform_latency(args.n, cm)
            except ValueError as exc:
                return _fail(INFEASIBLE, f"{exc} (hint: pass --prune)")
            # several optimal type vectors: cheapest by the cyclic formula wins
            def formula_cost(w):
                return sum(args.n * wi * cm.c[i + 2] for i, wi in enumerate(w))

            best_w = min(latopt.type_vectors, key=lambda w: (formula_cost(w), w))
            tree = uniform_tree_from_type_vector(best_w)
            dag = structure_from_uniform_tree(
                tree, consecutive_labeling(tree, args.n), args.n, cm.m
            )
            rows = [
                ("mode", "isom"),
                ("n", args.n),
                ("complexity", format_rational(complexity(dag, cm))),
                ("latency", format_rational(latopt.value)),
                ("w", list(best_w)),
            ]
            if args.all_optima:
                rows.append(("all_w", [list(w) for w in latopt.type_vectors]))
            extra = {"w": list(best_w)}

    manifest = {
        "command": "synthesize",
        "parameters": {
            "mode": args.mode,
            "n": args.n,
            "prune": bool(args.prune),
            "all_optima": bool(args.all_optima),
            "seed_policy": args.seed_policy,
        },
        "cost_model_digest": cm.digest(),
        "tool_version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
        **extra,
    }
    written = _write_artifacts(args.out, dag, args.format, manifest)
    _summary(rows)
    if written:
        for name in written:
            print(f"wrote {Path(args.out) / name}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        dag = loads(Path(args.path).read_bytes())
    except (OSError, ValueError) as exc:
        return _fail(MISMATCH, f"cannot load structure: {exc}")
    report = validate(dag)
    print(json.dumps(report.to_json_dict(), sort_keys=True, indent=2))
    return 0 if report.ok else MISMATCH


def _cmd_eval(args: argparse.Namespace) -> int:
    try:
        cm = _load_costs(args.costs)
    except (OSError, CostModelError) as exc:
        return _fail(USAGE_ERROR, f"cost model: {exc}")
    try:
        dag = loads(Path(args.path).read_bytes())
    except (OSError, ValueError) as exc:
        return _fail(MISMATCH, f"cannot load structure: {exc}")
    try:
        c = complexity(dag, cm)
        l = latency(dag, cm)
    except ValueError as exc:
        return _fail(USAGE_ERROR, str(exc))
    _summary(
        [
            ("n", dag.n),
            ("complexity", format_rational(c)),
            ("latency", format_rational(l)),
        ]
    )
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    try:
        dag = loads(Path(args.path).read_bytes())
    except (OSError, ValueError) as exc:
        return _fail(MISMATCH, f"cannot load structure: {exc}")
    text = to_dot(dag) if args.format == "dot" else dumps(dag)
    if args.out is None:
        print(text, end="")
    else:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        name = "structure.dot" if args.format == "dot" else "structure.json"
        (out / name).write_text(text, encoding="ascii")
        print(f"wrote {out / name}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        cm = _load_costs(args.costs)
    except (OSError, CostModelError) as exc:
        return _fail(USAGE_ERROR, f"cost model: {exc}")
    budget = EnumerationBudget(
        max_star_leaves=args.budget_leaves,
        max_tree_leaves=min(args.budget_leaves, DEFAULT_BUDGET.max_tree_leaves),
        max_labeling_inputs=DEFAULT_BUDGET.max_labeling_inputs,
    )
    report = verify_report(args.n, cm, budget)
    print(json.dumps(report.to_json_dict(), sort_keys=True, indent=2))
    return 0 if report.ok else MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpsynth",
        description="Synthesize and verify cost-optimal multi-input computation structures.",
    )
    parser.add_argument("--version", action="version", version=f"mpsynth {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    syn = sub.add_parser("synthesize", help="build an optimal structure")
    syn.add_argument("mode", choices=["star", "isom"])
    syn.add_argument("n", type=int)
    syn.add_argument("--costs", required=True, help="cost model JSON file")
    syn.add_argument("--out", default=None, help="directory for artifacts")
    syn.add_argument("--format", choices=["json", "dot", "all"], default="all")
    syn.add_argument("--all-optima", action="store_true", dest="all_optima")
    syn.add_argument("--prune", action="store_true")
    syn.add_argument(
        "--seed-policy", choices=["chain", "bushy"], default="chain", dest="seed_policy"
    )
    syn.set_defaults(func=_cmd_synthesize)

    val = sub.add_parser("validate", help="check a structure file")
    val.add_argument("path")
    val.set_defaults(func=_cmd_validate)

    ev = sub.add_parser("eval", help="exact complexity and latency of a structure file")
    ev.add_argument("path")
    ev.add_argument("--costs", required=True)
    ev.set_defaults(func=_cmd_eval)

    exp = sub.add_parser("export", help="re-serialize a structure file")
    exp.add_argument("path")
    exp.add_argument("--format", choices=["json", "dot"], default="dot")
    exp.add_argument("--out", default=None)
    exp.set_defaults(func=_cmd_export)

    ver = sub.add_parser("verify", help="optimizer-versus-oracle report")
    ver.add_argument("n", type=int)
    ver.add_argument("--costs", required=True)
    ver.add_argument(
        "--budget-leaves",
        type=int,
        default=DEFAULT_BUDGET.max_star_leaves,
        dest="budget_leaves",
    )
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; remap to the documented code
        if exc.code not in (0, None):
            return USAGE_ERROR
        raise
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

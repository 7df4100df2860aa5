"""Command line front end: ingest | synth | train | query | serve.

Each subcommand is a thin composition of library calls. Structured results
go to standard output as JSON (or to files named by flags); diagnostics go
to standard error; the exit code is 0 exactly when no error occurred. A
``--config`` JSON file may supply flag defaults, with explicit flags winning.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import data, filtering, service, surrogate, synthetic
from .errors import ExplorerError
from .kernels import BACKEND


def _load_dataset(csv_path: str, schema_path: str) -> data.Dataset:
    schema = data.load_schema(schema_path)
    return data.zero_fill_missing(data.load_csv(csv_path, schema))


def _dims(text) -> tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(int(d) for d in text)
    return tuple(int(part) for part in str(text).split(","))


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_synth(args) -> int:
    dataset = synthetic.synthesize_dataset(args.n, args.seed)
    data.write_csv(dataset, args.out)
    schema_out = args.schema_out or str(Path(args.out).with_suffix(".schema.json"))
    data.save_schema(list(dataset.columns), schema_out)
    _emit(
        {
            "csv": str(args.out),
            "schema": schema_out,
            "rows": dataset.row_count,
            "columns": len(dataset.columns),
            "seed": args.seed,
        }
    )
    return 0


def cmd_ingest(args) -> int:
    dataset = _load_dataset(args.csv, args.schema)
    stats = data.compute_norm_stats(dataset)
    means, stds = data.column_means_stds(dataset)
    if args.out:
        data.write_csv(dataset, args.out)
    groups: dict[str, int] = {}
    for col in dataset.columns:
        groups[col.group.value] = groups.get(col.group.value, 0) + 1
    _emit(
        {
            "rows": dataset.row_count,
            "groups": groups,
            "columns": [
                {
                    "name": col.name,
                    "group": col.group.value,
                    "units": col.units,
                    "mean": float(means[i]),
                    "std": float(stds[i]),
                    "min": float(stats.mins[i]),
                    "max": float(stats.maxs[i]),
                }
                for i, col in enumerate(dataset.columns)
            ],
            "output": str(args.out) if args.out else None,
        }
    )
    return 0


def cmd_train(args) -> int:
    dataset = _load_dataset(args.csv, args.schema)
    config = surrogate.TrainConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        momentum=args.momentum,
        seed=args.seed,
        validation_fraction=args.validation_fraction,
        hidden_dims=_dims(args.hidden_dims),
    )
    model, report = surrogate.train(dataset, config)
    blob = surrogate.save_model(model)
    Path(args.model_out).write_bytes(blob)
    # informational sidecar; the binary file alone is sufficient to reload
    sidecar = {
        "inputs": {
            name: {"mean": float(m), "std": float(s)}
            for name, m, s in zip(model.input_names, model.input_mean, model.input_std)
        },
        "outputs": {
            name: {"mean": float(m), "std": float(s)}
            for name, m, s in zip(model.output_names, model.output_mean, model.output_std)
        },
    }
    Path(str(args.model_out) + ".stats.json").write_text(json.dumps(sidecar, indent=2))
    payload = report.to_json()
    payload["model"] = str(args.model_out)
    payload["model_bytes"] = len(blob)
    payload["layer_dims"] = list(model.layer_dims)
    _emit(payload)
    return 0


def cmd_query(args) -> int:
    dataset = _load_dataset(args.csv, args.schema)
    engine = service.ExplorationEngine({service.DEFAULT_DATASET: dataset})
    session = engine.create_session(n=args.n, seed=args.seed)
    bounds, file_tolerance = filtering.load_bounds_file(args.bounds, session.stats)
    tolerance = args.tolerance if args.tolerance is not None else file_tolerance
    response = engine.update_bounds(session.id, bounds, tolerance, args.k)
    if args.export:
        labels = np.asarray(response["labels"])
        matched = session.row_ids[labels == filtering.LABEL_MATCH]
        Path(args.export).write_text(engine.export_rows(session.id, matched.tolist()))
        response["export"] = {"path": str(args.export), "rows": int(matched.size)}
    _emit(response)
    return 0


def cmd_serve(args) -> int:
    dataset = _load_dataset(args.csv, args.schema)
    model = None
    if args.model:
        model = surrogate.load_model(Path(args.model).read_bytes())
    engine = service.ExplorationEngine({service.DEFAULT_DATASET: dataset}, model=model)
    print(f"kernel backend: {BACKEND}", file=sys.stderr)
    print(f"http://{args.host}:{args.port}", flush=True)
    service.serve(engine, args.host, args.port)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="alloy-explorer",
        description="Inverse-design exploration engine for alloy tables.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    children = []

    def sub(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = subs.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with flag defaults")
        p.set_defaults(handler=handler)
        children.append(p)
        return p

    p = sub("synth", cmd_synth, "generate a synthetic alloy table")
    p.add_argument("--n", type=int, required=True, help="number of rows")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--schema-out", help="schema JSON path (default: <out>.schema.json)")

    p = sub("ingest", cmd_ingest, "validate, zero-fill and summarize a CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--schema", required=True, help="JSON column -> group map")
    p.add_argument("--out", help="write the cleaned table here")

    p = sub("train", cmd_train, "fit the surrogate and write a model file")
    p.add_argument("--csv", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--model-out", required=True)
    p.add_argument("--epochs", type=int, default=surrogate.TrainConfig.epochs)
    p.add_argument("--batch-size", type=int, default=surrogate.TrainConfig.batch_size)
    p.add_argument("--learning-rate", type=float, default=surrogate.TrainConfig.learning_rate)
    p.add_argument("--momentum", type=float, default=surrogate.TrainConfig.momentum)
    p.add_argument("--seed", type=int, default=surrogate.TrainConfig.seed)
    p.add_argument(
        "--validation-fraction", type=float, default=surrogate.TrainConfig.validation_fraction
    )
    p.add_argument(
        "--hidden-dims",
        type=_dims,
        default=surrogate.DEFAULT_HIDDEN_DIMS,
        help="comma separated, e.g. 1024,1024",
    )

    p = sub("query", cmd_query, "classify rows against a bounds file")
    p.add_argument("--csv", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--bounds", required=True, help="bounds JSON file")
    p.add_argument("--tolerance", type=float, help="overrides the file's tolerance")
    p.add_argument("--k", type=int, default=None, help="fallback ranking size")
    p.add_argument("--n", type=int, default=None, help="subsample to n rows first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--export", help="write Match rows to this CSV")

    p = sub("serve", cmd_serve, "run the exploration HTTP API")
    p.add_argument("--csv", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--model", help="surrogate model file for sensitivity curves")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=service.DEFAULT_PORT)

    return parser, children


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, children = build_parser()

    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if known.config:
        defaults = json.loads(Path(known.config).read_text())
        # subparsers own their defaults, so apply to every child
        for child in children:
            child.set_defaults(**{k.replace("-", "_"): v for k, v in defaults.items()})

    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ExplorerError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line pipeline: label, prepare, train, evaluate, cv, report.

Subcommands are independently runnable and communicate only through files
under one run directory, so any completed run replays bit-identically from
its config snapshot (model wall-clock times aside).  Exit codes: 0 success,
1 usage error, 2 data error, 3 internal error.

Run directory layout::

    <out>/label/labeled_<year>.csv     per-year labeled data
    <out>/label/label_stats.json       join + threshold accounting
    <out>/prepared/*.npy, *.json       balanced/pruned/scaled matrices + artifacts
    <out>/models/<name>.model.json     fitted model envelopes
    <out>/reports/<name>.eval.json     per-model test-set reports
    <out>/reports/<name>.cv.json       cross-validation reports
    <out>/report.csv                   benchmark summary table
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import traceback
from pathlib import Path

import numpy as np

from .evaluation import EvalReport, cross_validate, evaluate_model
from .io import (
    DataFormatError,
    RejectionLog,
    format_float,
    iter_labeled_csv,
    iter_records,
    labeled_header,
)
from .labeling import (
    DomainError,
    binarize,
    compute_threshold,
    extract_domain,
    load_pc1_table,
)
from .models.registry import BENCHMARK_NAMES, benchmark_spec
from .models.serialize import load_model, save_model
from .pipeline import prepare_dataset
from .schema import FeatureSchema

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

THRESHOLD_FLAG_TO_MODE = {"paper": "fixed", "median": "median"}

CONFIG_KEYS = {
    "data_csvs": list,
    "schema": str,
    "pc1_table": str,
    "out_dir": str,
    "threshold": str,
    "min_sparsity_fraction": float,
    "seed": int,
    "test_fraction": float,
    "models": list,
    "cv_k": int,
}

CONFIG_DEFAULTS = {
    "threshold": "paper",
    "min_sparsity_fraction": 0.01,
    "seed": 42,
    "test_fraction": 0.2,
    "models": list(BENCHMARK_NAMES),
    "cv_k": 5,
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); route to exit code 1
        raise UsageError(message)


def load_config(path: str | None, overrides: dict) -> dict:
    config = dict(CONFIG_DEFAULTS)
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise DataError(f"config file not found: {path}")
        except json.JSONDecodeError as exc:
            raise DataError(f"config file is not valid JSON: {exc}")
        unknown = set(raw) - set(CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        config.update(raw)
    for key, value in overrides.items():
        if value is not None:
            config[key] = value
    if "threshold" in config and config["threshold"] not in THRESHOLD_FLAG_TO_MODE:
        raise UsageError("threshold must be 'paper' or 'median'")
    if not 0.0 < float(config.get("test_fraction", 0.2)) < 1.0:
        raise UsageError("test_fraction must be in (0, 1)")
    return config


def _require(config: dict, keys: list[str], command: str) -> None:
    missing = [k for k in keys if not config.get(k)]
    if missing:
        raise UsageError(f"{command}: missing required settings {missing}")


def _check_files_exist(paths) -> None:
    for p in paths:
        if not Path(p).is_file():
            raise DataError(f"input file not found: {p}")


# -- label ------------------------------------------------------------------


def cmd_label(config: dict) -> int:
    _require(config, ["data_csvs", "schema", "pc1_table", "out_dir"], "label")
    _check_files_exist(list(config["data_csvs"]) + [config["schema"], config["pc1_table"]])
    schema = FeatureSchema.load(config["schema"])
    table = load_pc1_table(config["pc1_table"])
    mode = THRESHOLD_FLAG_TO_MODE[config["threshold"]]

    out_dir = Path(config["out_dir"]) / "label"
    created: list[Path] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)

        # pass 1: validate rows, join domains, collect matched pc1 values
        rejections = RejectionLog()
        accepted = 0
        matched = 0
        unmatched = 0
        skipped = 0
        pc1_values = []
        for path in config["data_csvs"]:
            for record in iter_records(path, schema, rejections):
                accepted += 1
                try:
                    domain = extract_domain(record.url)
                except DomainError:
                    skipped += 1
                    continue
                pc1 = table.get(domain)
                if pc1 is None:
                    unmatched += 1
                else:
                    matched += 1
                    pc1_values.append(pc1)
        threshold = compute_threshold(pc1_values, mode)

        # pass 2: stream matched rows straight into per-year labeled files
        handles: dict[int, tuple] = {}
        per_year: dict[int, dict] = {}
        try:
            for path in config["data_csvs"]:
                for record in iter_records(path, schema, None):
                    try:
                        domain = extract_domain(record.url)
                    except DomainError:
                        continue
                    pc1 = table.get(domain)
                    if pc1 is None:
                        continue
                    label = binarize(pc1, threshold)
                    year = record.year
                    if year not in handles:
                        year_path = out_dir / f"labeled_{year}.csv"
                        created.append(year_path)
                        handle = open(year_path, "w", encoding="utf-8", newline="")
                        writer = csv.writer(handle)
                        writer.writerow(labeled_header(schema))
                        handles[year] = (handle, writer)
                    handles[year][1].writerow(
                        [record.url, record.text, record.published_at.isoformat()]
                        + [format_float(v) for v in record.features]
                        + [domain, format_float(pc1), str(label)]
                    )
                    counts = per_year.setdefault(
                        year, {"rows": 0, "label_0": 0, "label_1": 0}
                    )
                    counts["rows"] += 1
                    counts[f"label_{label}"] += 1
        finally:
            for handle, _writer in handles.values():
                handle.close()

        stats = {
            "input_rows": accepted + rejections.total,
            "accepted": accepted,
            "rejected": dict(sorted(rejections.counts.items())),
            "skipped_bad_url": skipped,
            "matched": matched,
            "unmatched": unmatched,
            "threshold": threshold.to_dict(),
            "per_year": {str(y): per_year[y] for y in sorted(per_year)},
        }
        stats_path = out_dir / "label_stats.json"
        created.append(stats_path)
        stats_path.write_text(json.dumps(stats, indent=2), encoding="utf-8")
        snapshot = {
            "data_csvs": [str(p) for p in config["data_csvs"]],
            "schema": str(config["schema"]),
            "pc1_table": str(config["pc1_table"]),
            "threshold": config["threshold"],
            "seed": int(config["seed"]),
        }
        snapshot_path = out_dir / "label_config.json"
        created.append(snapshot_path)
        snapshot_path.write_text(
            json.dumps(snapshot, indent=2, sort_keys=True), encoding="utf-8"
        )
        print(f"label: {matched} matched / {unmatched} unmatched / "
              f"{rejections.total} rejected -> {out_dir}")
        return EXIT_OK
    except Exception:
        for path in created:  # no partial outputs on failure
            path.unlink(missing_ok=True)
        raise


# -- prepare ----------------------------------------------------------------


def cmd_prepare(config: dict) -> int:
    _require(config, ["schema", "out_dir"], "prepare")
    out_root = Path(config["out_dir"])
    label_dir = out_root / "label"
    schema = FeatureSchema.load(config["schema"])
    labeled_files = sorted(label_dir.glob("labeled_*.csv"))
    if not labeled_files:
        raise DataError(f"no labeled_<year>.csv files under {label_dir}; run label first")

    features = []
    labels = []
    years = []
    for path in labeled_files:
        for record, _domain, _pc1, label in iter_labeled_csv(path, schema):
            features.append(record.features)
            labels.append(label)
            years.append(record.year)
    X = np.stack(features)
    y = np.array(labels, dtype=np.int64)
    years = np.array(years, dtype=np.int64)

    prepared = prepare_dataset(
        X,
        y,
        years,
        list(schema.names),
        seed=int(config["seed"]),
        test_fraction=float(config["test_fraction"]),
        min_sparsity_fraction=float(config["min_sparsity_fraction"]),
    )

    out_dir = out_root / "prepared"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, arr in (
        ("X_train", prepared.X_train),
        ("y_train", prepared.y_train),
        ("years_train", prepared.years_train),
        ("X_test", prepared.X_test),
        ("y_test", prepared.y_test),
        ("years_test", prepared.years_test),
        ("X_balanced", prepared.X_balanced),
        ("y_balanced", prepared.y_balanced),
        ("years_balanced", prepared.years_balanced),
    ):
        np.save(out_dir / f"{name}.npy", arr)
    (out_dir / "feature_names.json").write_text(
        json.dumps(prepared.feature_names, indent=2), encoding="utf-8"
    )
    (out_dir / "sparsity_report.json").write_text(prepared.sparsity.to_json(), encoding="utf-8")
    (out_dir / "scaler.json").write_text(prepared.scaler.to_json(), encoding="utf-8")
    (out_dir / "split.json").write_text(prepared.split.to_json(), encoding="utf-8")
    (out_dir / "balance.json").write_text(prepared.balance.to_json(), encoding="utf-8")
    snapshot = {k: config[k] for k in
                ("threshold", "min_sparsity_fraction", "seed", "test_fraction")}
    (out_dir / "prepare_config.json").write_text(
        json.dumps(snapshot, indent=2, sort_keys=True), encoding="utf-8"
    )
    print(
        f"prepare: {len(prepared.y_train)} train / {len(prepared.y_test)} test rows, "
        f"{len(prepared.feature_names)} of {len(schema)} features kept -> {out_dir}"
    )
    return EXIT_OK


def _load_prepared(out_root: Path):
    prepared_dir = out_root / "prepared"
    if not prepared_dir.is_dir():
        raise DataError(f"prepared directory not found: {prepared_dir}; run prepare first")
    load = lambda name: np.load(prepared_dir / f"{name}.npy")  # noqa: E731
    return prepared_dir, load


# -- train / evaluate / cv / report ------------------------------------------


def cmd_train(config: dict) -> int:
    _require(config, ["out_dir"], "train")
    names = config["models"]
    unknown = [n for n in names if n not in BENCHMARK_NAMES]
    if unknown:
        raise UsageError(f"unknown model names {unknown}; expected from {BENCHMARK_NAMES}")
    out_root = Path(config["out_dir"])
    _, load = _load_prepared(out_root)
    X_train, y_train = load("X_train"), load("y_train")
    X_test, y_test = load("X_test"), load("y_test")

    models_dir = out_root / "models"
    reports_dir = out_root / "reports"
    models_dir.mkdir(parents=True, exist_ok=True)
    reports_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        display, spec = benchmark_spec(name, seed=int(config["seed"]))
        model = spec.build()
        model.fit(X_train, y_train)
        save_model(model, models_dir / f"{name}.model.json")
        report = evaluate_model(model, X_test, y_test, name=display)
        (reports_dir / f"{name}.eval.json").write_text(report.to_json(), encoding="utf-8")
        auc = "NA" if report.roc_auc is None else f"{report.roc_auc:.4f}"
        print(
            f"train: {name} accuracy={report.accuracy:.4f} f1={report.f1:.4f} "
            f"roc_auc={auc} time={model.train_time_sec_:.2f}s"
        )
    return EXIT_OK


def cmd_evaluate(config: dict, model_path: str, report_out: str | None) -> int:
    _require(config, ["out_dir"], "evaluate")
    _check_files_exist([model_path])
    out_root = Path(config["out_dir"])
    _, load = _load_prepared(out_root)
    model = load_model(model_path)
    report = evaluate_model(model, load("X_test"), load("y_test"))
    text = report.to_json()
    if report_out:
        Path(report_out).write_text(text, encoding="utf-8")
    print(text)
    return EXIT_OK


def cmd_cv(config: dict, model_name: str) -> int:
    _require(config, ["out_dir"], "cv")
    if model_name not in BENCHMARK_NAMES:
        raise UsageError(f"unknown model name {model_name!r}; expected from {BENCHMARK_NAMES}")
    out_root = Path(config["out_dir"])
    _, load = _load_prepared(out_root)
    display, spec = benchmark_spec(model_name, seed=int(config["seed"]))
    report = cross_validate(
        spec,
        load("X_balanced"),
        load("y_balanced"),
        k=int(config["cv_k"]),
        seed=int(config["seed"]),
        name=display,
    )
    reports_dir = out_root / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)
    (reports_dir / f"{model_name}.cv.json").write_text(report.to_json(), encoding="utf-8")
    acc = report.mean["accuracy"]
    std = report.std["accuracy"]
    print(f"cv: {model_name} k={report.k} accuracy={acc:.4f} +/- {std:.4f}")
    return EXIT_OK


REPORT_COLUMNS = ("model", "train_time_sec", "accuracy", "f1", "precision", "recall", "roc_auc")


def cmd_report(config: dict, csv_out: str | None) -> int:
    _require(config, ["out_dir"], "report")
    out_root = Path(config["out_dir"])
    reports_dir = out_root / "reports"
    eval_files = sorted(reports_dir.glob("*.eval.json"))
    if not eval_files:
        raise DataError(f"no *.eval.json reports under {reports_dir}; run train first")
    reports = [EvalReport.from_json(p.read_text(encoding="utf-8")) for p in eval_files]
    reports.sort(key=lambda r: -r.accuracy)

    lines = [",".join(REPORT_COLUMNS)]
    for r in reports:
        auc = "NA" if r.roc_auc is None else repr(r.roc_auc)
        time_s = "NA" if r.train_time_sec is None else repr(r.train_time_sec)
        name = r.model.replace(",", ";")
        lines.append(
            f"{name},{time_s},{r.accuracy!r},{r.f1!r},{r.precision!r},{r.recall!r},{auc}"
        )
    text = "\n".join(lines) + "\n"
    target = Path(csv_out) if csv_out else out_root / "report.csv"
    target.write_text(text, encoding="utf-8")
    print(text, end="")
    return EXIT_OK


# -- argument wiring ----------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="newsquality", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", dest="out_dir", help="run directory")
        p.add_argument("--seed", type=int, help="64-bit experiment seed")
        p.add_argument("--threshold", choices=["paper", "median"],
                       help="labeling threshold mode")
        return p

    p = common(sub.add_parser("label", help="join quality scores, binarize, split by year"))
    p.add_argument("--data", nargs="+", dest="data_csvs", help="input data CSVs")
    p.add_argument("--schema", help="feature schema JSON")
    p.add_argument("--pc1", dest="pc1_table", help="domain quality CSV (domain,pc1)")

    p = common(sub.add_parser("prepare", help="balance, prune, split, scale"))
    p.add_argument("--schema", help="feature schema JSON")
    p.add_argument("--min-fraction", type=float, dest="min_sparsity_fraction",
                   help="sparsity cut (default 0.01)")
    p.add_argument("--test-fraction", type=float, dest="test_fraction",
                   help="held-out fraction (default 0.2)")

    p = common(sub.add_parser("train", help="fit benchmark models, report on test"))
    p.add_argument("--models", help="comma-separated model names (default: all)")

    p = common(sub.add_parser("evaluate", help="evaluate a saved model on the test set"))
    p.add_argument("--model", required=True, help="model envelope JSON path")
    p.add_argument("--report-out", help="where to write the report JSON")

    p = common(sub.add_parser("cv", help="k-fold stratified cross-validation"))
    p.add_argument("--model", required=True, help="benchmark model name")
    p.add_argument("--k", type=int, dest="cv_k", help="number of folds (default 5)")

    p = common(sub.add_parser("report", help="summarize eval reports as CSV"))
    p.add_argument("--csv-out", help="output CSV path (default <out>/report.csv)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        overrides = {
            key: getattr(args, key)
            for key in ("data_csvs", "schema", "pc1_table", "out_dir", "seed",
                        "threshold", "min_sparsity_fraction", "test_fraction", "cv_k")
            if hasattr(args, key)
        }
        if getattr(args, "models", None):
            overrides["models"] = [m.strip() for m in args.models.split(",") if m.strip()]
        config = load_config(args.config, overrides)

        if args.command == "label":
            return cmd_label(config)
        if args.command == "prepare":
            return cmd_prepare(config)
        if args.command == "train":
            return cmd_train(config)
        if args.command == "evaluate":
            return cmd_evaluate(config, args.model, args.report_out)
        if args.command == "cv":
            return cmd_cv(config, args.model)
        if args.command == "report":
            return cmd_report(config, args.csv_out)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, DataFormatError, DomainError, FileNotFoundError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit:
        raise
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

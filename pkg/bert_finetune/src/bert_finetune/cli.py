"""CLI: fine-tune on a labeled CSV and write an EvalReport-schema JSON.

Exit codes match the primary pipeline: 0 success, 1 usage, 2 data error,
3 internal/stage failure (the failing stage is named on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback

from .config import FinetuneConfig
from .model import EncoderLoadError
from .train import finetune_and_evaluate


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"usage error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="bert-finetune", description=__doc__)
    parser.add_argument("--input", required=True, help="labeled CSV (text,label columns)")
    parser.add_argument("--out", required=True, help="report JSON path")
    parser.add_argument("--sample-cap", type=int, default=2000)
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--epochs", type=int, default=5)
    parser.add_argument("--learning-rate", type=float, default=None)
    parser.add_argument("--weight-decay", type=float, default=0.01)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--max-seq-len", type=int, default=64)
    parser.add_argument("--encoder", default="auto",
                        help="auto | local | pretrained:<checkpoint>")
    parser.add_argument("--fp16", action="store_true")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    stage = "configure"
    try:
        config = FinetuneConfig(
            input_csv=args.input,
            output_report=args.out,
            sample_cap=args.sample_cap,
            batch_size=args.batch_size,
            epochs=args.epochs,
            learning_rate=args.learning_rate,
            weight_decay=args.weight_decay,
            seed=args.seed,
            max_seq_len=args.max_seq_len,
            encoder=args.encoder,
            fp16=args.fp16,
        )
        stage = "train"
        report = finetune_and_evaluate(config)
        stage = "write_report"
        from .report import write_report

        write_report(report, args.out)
        print(json.dumps({k: report[k] for k in
                          ("accuracy", "f1", "roc_auc", "train_time_sec")}, indent=2))
        return 0
    except (FileNotFoundError, ValueError) as exc:
        print(f"data error at stage {stage}: {exc}", file=sys.stderr)
        return 2
    except EncoderLoadError as exc:
        print(f"failure at stage load_encoder: {exc}", file=sys.stderr)
        return 3
    except Exception:
        print(f"internal error at stage {stage}:", file=sys.stderr)
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())

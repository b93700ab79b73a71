"""Desk-scale transformer fine-tune harness for labeled headline text."""

from .config import FinetuneConfig
from .data import (
    balanced_subsample,
    make_planted_corpus,
    prepare_text_dataset,
    read_labeled_texts,
    stratified_split,
    write_labeled_csv,
)
from .metrics import binary_metrics, confusion_counts, roc_auc
from .model import CompactTransformerEncoder, EncoderLoadError, load_encoder
from .report import EVAL_REPORT_SCHEMA, validate_report, write_report
from .tokenizer import WhitespaceTokenizer
from .train import finetune_and_evaluate

__version__ = "0.1.0"

__all__ = [
    "FinetuneConfig",
    "read_labeled_texts",
    "balanced_subsample",
    "stratified_split",
    "prepare_text_dataset",
    "make_planted_corpus",
    "write_labeled_csv",
    "binary_metrics",
    "confusion_counts",
    "roc_auc",
    "WhitespaceTokenizer",
    "CompactTransformerEncoder",
    "load_encoder",
    "EncoderLoadError",
    "EVAL_REPORT_SCHEMA",
    "validate_report",
    "write_report",
    "finetune_and_evaluate",
]

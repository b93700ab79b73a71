"""Fine-tune a transformer encoder on labeled link text and report metrics."""

from __future__ import annotations

import random
import time

import numpy as np
import torch
from torch import nn

from .config import REFERENCE_BATCH_SIZE, FinetuneConfig
from .data import prepare_text_dataset
from .metrics import binary_metrics, roc_auc
from .model import load_encoder
from .report import validate_report


def _batches(n: int, batch_size: int, rng: random.Random):
    order = list(range(n))
    rng.shuffle(order)
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def finetune_and_evaluate(config: FinetuneConfig) -> dict:
    """Train on the balanced capped subsample, evaluate the held-out 20%,
    and return a report dict in the shared EvalReport schema."""
    torch.manual_seed(config.seed)
    dataset = prepare_text_dataset(config.input_csv, config.sample_cap, config.seed)
    bundle = load_encoder(config.encoder, dataset.train_texts, config.max_seq_len)
    learning_rate = config.resolved_learning_rate(bundle.pretrained)

    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    use_fp16 = bool(config.fp16 and device.type == "cuda")
    model = bundle.model.to(device)

    X_train = bundle.encode(dataset.train_texts, config.max_seq_len).to(device)
    y_train = torch.tensor(dataset.train_labels, dtype=torch.float32, device=device)
    X_test = bundle.encode(dataset.test_texts, config.max_seq_len).to(device)
    y_test = np.asarray(dataset.test_labels, dtype=np.int64)

    optimizer = torch.optim.AdamW(
        model.parameters(), lr=learning_rate, weight_decay=config.weight_decay
    )
    loss_fn = nn.BCEWithLogitsLoss()
    batch_rng = random.Random(config.seed + 7)

    start = time.perf_counter()
    model.train()
    for _epoch in range(config.epochs):
        for rows in _batches(len(y_train), config.batch_size, batch_rng):
            idx = torch.tensor(rows, dtype=torch.long, device=device)
            optimizer.zero_grad()
            if use_fp16:
                with torch.autocast(device_type=device.type, dtype=torch.float16):
                    logits = model(X_train[idx])
                    loss = loss_fn(logits, y_train[idx])
            else:
                logits = model(X_train[idx])
                loss = loss_fn(logits, y_train[idx])
            loss.backward()
            optimizer.step()
    train_time = time.perf_counter() - start

    model.eval()
    with torch.no_grad():
        logits = []
        for start_idx in range(0, len(y_test), config.batch_size):
            chunk = X_test[start_idx : start_idx + config.batch_size]
            logits.append(model(chunk).float().cpu())
        logits = torch.cat(logits).numpy()
    scores = 1.0 / (1.0 + np.exp(-logits))
    predictions = (scores > 0.5).astype(np.int64)

    bundle_metrics = binary_metrics(y_test, predictions)
    report = {
        "model": "Transformer Finetune",
        "kind": "bert_finetune",
        "seed": config.seed,
        "params": {
            "encoder": bundle.name,
            "pretrained": bundle.pretrained,
            "batch_size": config.batch_size,
            "reference_batch_size": REFERENCE_BATCH_SIZE,
            "epochs": config.epochs,
            "learning_rate": learning_rate,
            "weight_decay": config.weight_decay,
            "max_seq_len": config.max_seq_len,
            "sample_cap": config.sample_cap,
            "fp16": use_fp16,
            "n_train": len(dataset.train_labels),
        },
        "train_time_sec": train_time,
        "n_test": bundle_metrics["n_test"],
        "accuracy": bundle_metrics["accuracy"],
        "precision": bundle_metrics["precision"],
        "recall": bundle_metrics["recall"],
        "f1": bundle_metrics["f1"],
        "roc_auc": roc_auc(y_test, scores),
        "confusion": bundle_metrics["confusion"],
        "warnings": bundle_metrics["warnings"],
    }
    validate_report(report)
    return report

"""Fine-tune run configuration."""

from __future__ import annotations

from dataclasses import dataclass

REFERENCE_BATCH_SIZE = 1536  # full-scale GPU setting, recorded in every report
DEFAULT_DESK_BATCH_SIZE = 32
DEFAULT_PRETRAINED_LR = 2e-5
DEFAULT_LOCAL_LR = 1e-3  # randomly initialized compact encoder needs larger steps


@dataclass
class FinetuneConfig:
    input_csv: str
    output_report: str | None = None
    sample_cap: int = 2000
    batch_size: int = DEFAULT_DESK_BATCH_SIZE
    epochs: int = 5
    learning_rate: float | None = None  # resolved per encoder when unset
    weight_decay: float = 0.01
    seed: int = 42
    max_seq_len: int = 64
    encoder: str = "auto"  # "auto" | "local" | "pretrained:<checkpoint>"
    fp16: bool = False  # applied only when supporting hardware is present

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.learning_rate is not None and self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.sample_cap < 100:
            raise ValueError("sample_cap must be >= 100")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_seq_len < 4:
            raise ValueError("max_seq_len must be >= 4")
        if self.weight_decay < 0:
            raise ValueError("weight_decay must be >= 0")

    def resolved_learning_rate(self, pretrained: bool) -> float:
        if self.learning_rate is not None:
            return self.learning_rate
        return DEFAULT_PRETRAINED_LR if pretrained else DEFAULT_LOCAL_LR

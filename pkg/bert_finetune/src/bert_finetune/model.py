"""Encoders: a pretrained checkpoint when reachable, else a compact local one.

The compact encoder is a small transformer (token + position embeddings,
stacked self-attention blocks, CLS-position readout, single-logit head)
sized for desk hardware; it trains from random initialization in seconds
on planted-signal corpora.  The pretrained path wraps a sequence
classification checkpoint loaded through ``transformers`` and is used only
when that library and its weights are actually available (this sandbox's
network reaches package mirrors, not model hubs).
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn

from .tokenizer import PAD_ID, WhitespaceTokenizer


class CompactTransformerEncoder(nn.Module):
    def __init__(
        self,
        vocab_size: int,
        max_seq_len: int,
        dim: int = 64,
        n_layers: int = 2,
        n_heads: int = 4,
        ff_dim: int = 128,
        dropout: float = 0.1,
    ):
        super().__init__()
        self.token_embedding = nn.Embedding(vocab_size, dim, padding_idx=PAD_ID)
        self.position_embedding = nn.Embedding(max_seq_len, dim)
        layer = nn.TransformerEncoderLayer(
            d_model=dim,
            nhead=n_heads,
            dim_feedforward=ff_dim,
            dropout=dropout,
            batch_first=True,
        )
        self.encoder = nn.TransformerEncoder(
            layer, num_layers=n_layers, enable_nested_tensor=False
        )
        self.head = nn.Linear(dim, 1)

    def forward(self, token_ids: torch.Tensor) -> torch.Tensor:
        positions = torch.arange(token_ids.shape[1], device=token_ids.device)
        hidden = self.token_embedding(token_ids) + self.position_embedding(positions)
        padding_mask = token_ids == PAD_ID
        encoded = self.encoder(hidden, src_key_padding_mask=padding_mask)
        return self.head(encoded[:, 0, :])[:, 0]  # CLS-position logit


@dataclass
class EncoderBundle:
    model: nn.Module
    encode: callable  # texts, max_len -> LongTensor of token ids
    name: str
    pretrained: bool


class EncoderLoadError(RuntimeError):
    """Requested pretrained checkpoint could not be loaded."""


def _load_pretrained(checkpoint: str, max_seq_len: int) -> EncoderBundle:
    try:
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        inner = AutoModelForSequenceClassification.from_pretrained(
            checkpoint, num_labels=2
        )
    except Exception as exc:  # import failure, missing weights, no network
        raise EncoderLoadError(f"cannot load pretrained encoder {checkpoint!r}: {exc}")

    class _Wrapper(nn.Module):
        def __init__(self):
            super().__init__()
            self.inner = inner

        def forward(self, token_ids):
            attention = (token_ids != tokenizer.pad_token_id).long()
            logits = self.inner(input_ids=token_ids, attention_mask=attention).logits
            return logits[:, 1] - logits[:, 0]

    def encode(texts, max_len):
        out = tokenizer(
            list(texts),
            padding="max_length",
            truncation=True,
            max_length=max_len,
            return_tensors="pt",
        )
        return out["input_ids"]

    return EncoderBundle(_Wrapper(), encode, checkpoint, pretrained=True)


def _load_local(train_texts, max_seq_len: int) -> EncoderBundle:
    tokenizer = WhitespaceTokenizer().fit(train_texts)
    model = CompactTransformerEncoder(tokenizer.vocab_size, max_seq_len)

    def encode(texts, max_len):
        return torch.tensor(tokenizer.encode_batch(texts, max_len), dtype=torch.long)

    return EncoderBundle(model, encode, "compact-local", pretrained=False)


def load_encoder(kind: str, train_texts, max_seq_len: int) -> EncoderBundle:
    """``local``, ``pretrained:<checkpoint>``, or ``auto`` (try then fall back)."""
    if kind == "local":
        return _load_local(train_texts, max_seq_len)
    if kind.startswith("pretrained:"):
        return _load_pretrained(kind.split(":", 1)[1], max_seq_len)
    if kind == "auto":
        try:
            return _load_pretrained("distilbert-base-uncased", max_seq_len)
        except EncoderLoadError:
            return _load_local(train_texts, max_seq_len)
    raise ValueError(f"unknown encoder kind {kind!r}")

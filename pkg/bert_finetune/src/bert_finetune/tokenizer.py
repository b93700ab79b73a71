"""Whitespace tokenizer with a train-built vocabulary."""

from __future__ import annotations

from collections import Counter

PAD_ID = 0
UNK_ID = 1
CLS_ID = 2
_N_SPECIAL = 3


class WhitespaceTokenizer:
    """Lowercase whitespace tokens, frequency-ranked vocabulary.

    Ties in frequency break lexicographically so the vocabulary is a pure
    function of the training texts.  Sequences are encoded as
    [CLS] + token ids, padded/truncated to a fixed length.
    """

    def __init__(self, max_vocab: int = 8000):
        self.max_vocab = max_vocab
        self.token_to_id: dict[str, int] = {}

    @staticmethod
    def tokenize(text: str) -> list[str]:
        return text.lower().split()

    def fit(self, texts) -> "WhitespaceTokenizer":
        counts = Counter()
        for text in texts:
            counts.update(self.tokenize(text))
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        self.token_to_id = {
            token: _N_SPECIAL + rank
            for rank, (token, _count) in enumerate(ranked[: self.max_vocab])
        }
        return self

    @property
    def vocab_size(self) -> int:
        return _N_SPECIAL + len(self.token_to_id)

    def encode(self, text: str, max_len: int) -> list[int]:
        ids = [CLS_ID]
        for token in self.tokenize(text)[: max_len - 1]:
            ids.append(self.token_to_id.get(token, UNK_ID))
        ids.extend([PAD_ID] * (max_len - len(ids)))
        return ids

    def encode_batch(self, texts, max_len: int) -> list[list[int]]:
        return [self.encode(t, max_len) for t in texts]

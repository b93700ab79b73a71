"""Hard-voting ensemble over three fixed members."""

from __future__ import annotations

import numpy as np

from .base import BaseClassifier, ScoreUnavailableError
from .forest import RandomForestClassifier
from .linear_sgd import SGDHingeClassifier
from .naive_bayes import GaussianNaiveBayes


class HardVotingClassifier(BaseClassifier):
    """Majority of three hard votes: naive Bayes, SGD hinge, small forest.

    Three binary voters can never tie.  There is no meaningful combined
    score for hard votes, so ``predict_score`` raises
    :class:`ScoreUnavailableError` and reports render the ranking metric
    as unavailable.
    """

    kind = "voting_hard"

    def __init__(self, seed: int = 42):
        self.seed = seed

    def _members(self):
        return [
            GaussianNaiveBayes(),
            SGDHingeClassifier(max_iter=1000, tol=1e-3, seed=self.seed),
            RandomForestClassifier(
                n_estimators=25, max_depth=5, seed=self.seed, n_jobs=1
            ),
        ]

    def _fit(self, X, y):
        if len(np.unique(y)) < 2:
            raise ValueError("training data must contain both classes")
        self.members_ = [m.fit(X, y) for m in self._members()]

    def _predict(self, X):
        votes = np.zeros(X.shape[0], dtype=np.int64)
        for member in self.members_:
            votes += member.predict(X)
        return (votes >= 2).astype(np.int64)

    def _score(self, X):
        raise ScoreUnavailableError(
            "hard voting has no real-valued score; ranking metrics are unavailable"
        )

    def _get_state(self):
        return {
            "members": [
                {"kind": m.kind, "n_features_in": m.n_features_in_, "state": m._get_state()}
                for m in self.members_
            ]
        }

    def _set_state(self, state):
        members = self._members()
        stored = state["members"]
        if len(stored) != len(members):
            raise ValueError("voting state does not match the fixed member list")
        for member, block in zip(members, stored):
            if member.kind != block["kind"]:
                raise ValueError(f"unexpected member kind {block['kind']!r}")
            member.n_features_in_ = int(block["n_features_in"])
            member._set_state(block["state"])
        self.members_ = members

"""Estimator parameter protocol shared by transformers and classifiers.

The classes here follow the scikit-learn convention (``__init__`` stores
constructor arguments verbatim, ``get_params``/``set_params`` expose them)
so estimators from this package compose with pipeline tooling that
duck-types that protocol, without depending on scikit-learn itself.
"""

from __future__ import annotations

import inspect


class NotFittedError(RuntimeError):
    """Raised when transform/predict is called before fit."""


class ParamsMixin:
    """get_params/set_params/clone via ``__init__`` signature introspection."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise ValueError(
                    f"invalid parameter {key!r} for {type(self).__name__}; "
                    f"valid parameters: {sorted(valid)}"
                )
            setattr(self, key, value)
        return self

    def clone(self):
        """Fresh unfitted estimator with identical constructor parameters."""
        return type(self)(**self.get_params())

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


def check_fitted(estimator, attribute: str) -> None:
    if getattr(estimator, attribute, None) is None:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted; call fit() first"
        )

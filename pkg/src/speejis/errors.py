"""Exception types shared across the package."""

from __future__ import annotations

from typing import Sequence


class SpeejisError(Exception):
    """Base class for every error raised by this package."""


class InputError(SpeejisError):
    """Caller passed a value outside the documented domain."""


class ConfigError(SpeejisError):
    """Bad configuration: unusable emoji table, missing endpoint, invalid flags."""


class DecodeError(SpeejisError):
    """Audio payload could not be decoded into a canonical clip."""


class BackendError(SpeejisError):
    """A model backend call failed (transport, protocol, or response validation).

    `span_indices` names the request spans whose results are affected; empty
    means the whole request failed.
    """

    def __init__(self, message: str, span_indices: Sequence[int] = ()):
        super().__init__(message)
        self.span_indices = tuple(span_indices)


class SchemaError(SpeejisError):
    """Descriptor JSON failed validation; `path` points at the first bad field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message

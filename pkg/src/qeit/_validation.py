"""Input validation helpers shared by the compute modules and the CLI."""

from __future__ import annotations

import math
from typing import Any

import numpy as np


class ValidationError(ValueError):
    """Raised when a physical input is outside its admissible range.

    ``field`` names the offending input so front ends can report it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def check_finite(field: str, value: Any) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ValidationError(field, f"expected a real number, got {value!r}") from None
    if not math.isfinite(x):
        raise ValidationError(field, f"must be finite, got {x}")
    return x


def check_positive(field: str, value: Any) -> float:
    x = check_finite(field, value)
    if x <= 0:
        raise ValidationError(field, f"must be > 0, got {x}")
    return x


def check_nonnegative(field: str, value: Any) -> float:
    x = check_finite(field, value)
    if x < 0:
        raise ValidationError(field, f"must be >= 0, got {x}")
    return x


def check_count(field: str, value: Any, minimum: int = 0) -> int:
    if isinstance(value, (bool, np.bool_)):
        raise ValidationError(field, "expected an integer photon number")
    if isinstance(value, (float, np.floating)) and not float(value).is_integer():
        raise ValidationError(field, f"expected an integer, got {value}")
    try:
        n = int(value)
    except (TypeError, ValueError):
        raise ValidationError(field, f"expected an integer, got {value!r}") from None
    if n < minimum:
        raise ValidationError(field, f"must be >= {minimum}, got {n}")
    return n


def check_amplitudes(field: str, values: Any) -> np.ndarray:
    """Return a 1-d complex array; reject empty or non-finite input."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(field, "expected a non-empty 1-d amplitude array")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(field, "amplitudes must be finite")
    return arr


def check_hermitian(matrix: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError("matrix", f"expected a square matrix, got shape {m.shape}")
    scale = max(float(np.max(np.abs(m))), 1.0)
    if np.max(np.abs(m - m.conj().T)) > tol * scale:
        raise ValidationError("matrix", "not Hermitian within tolerance")
    return m

# apps/niveles/services/__init__.py
from .indice_niveles import (
    LevelIndex,
    ZeroClock,
    TimestampOverflowError,
)

__all__ = [
    "LevelIndex",
    "ZeroClock",
    "TimestampOverflowError",
]

# apps/motor/services/__init__.py
from .iterlog import IteratedLogTable
from .motor import DynamicSetCoverEngine

__all__ = [
    "DynamicSetCoverEngine",
    "IteratedLogTable",
]

# apps/motor/actualizaciones.py
"""Actualizaciones que acepta el motor: alta y baja de un elemento."""

from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True)
class Insert:
    elem: int
    members: Tuple[int, ...]

    kind = "+"


@dataclass(frozen=True)
class Delete:
    elem: int

    kind = "-"


Update = Union[Insert, Delete]

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Check:
    """Outcome of a quantifier sweep. Truthy iff the property holds; on failure
    ``witness`` is the lexicographically least violating tuple of carrier indices."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Diagnostic:
    axiom: str
    witness: tuple
    message: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}

    def __str__(self) -> str:
        w = ",".join(str(x) for x in self.witness)
        return f"{self.axiom} violated at ({w}){': ' + self.message if self.message else ''}"

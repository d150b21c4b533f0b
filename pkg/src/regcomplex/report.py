"""Verdict objects returned by the checkers."""
from dataclasses import dataclass, field
from typing import Any


def _plain(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if hasattr(x, "images"):
        return str(x)
    if hasattr(x, "item"):
        return x.item()
    return x


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check; truthy iff the property holds.

    ``witness`` is the first failure in the checker's documented order, and
    ``sampled`` marks verdicts that did not examine every case.
    """

    name: str
    holds: bool
    witness: Any = None
    detail: str = ""
    sampled: bool = False
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.holds)

    def to_dict(self):
        out = {"holds": bool(self.holds), "witness": _plain(self.witness)}
        if self.detail:
            out["detail"] = self.detail
        if self.sampled:
            out["sampled"] = True
        if self.data:
            out["data"] = _plain(self.data)
        return out

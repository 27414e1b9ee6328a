"""Verdicts and witnesses.

Every checker returns a Verdict: either the property holds, or it fails and
the verdict carries a structured witness from which the claimed payoff
change can be recomputed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .rationals import format_rational


@dataclass(frozen=True)
class Witness:
    """A concrete counterexample.

    kind is a short machine-readable tag; data holds the structured fields
    (who deviated, to what, payoffs before/after, who was harmed) with
    Fractions for every quantity.
    """

    kind: str
    description: str
    data: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Witness] = None
    sub_verdicts: Optional[Mapping[str, "Verdict"]] = None
    # set when a check could not be completed (e.g. an agreement run where
    # some nonfaulty player never decided); such verdicts never hold
    incomplete: bool = False

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict must carry a witness")
        if self.holds and self.incomplete:
            raise ValueError("an incomplete verdict cannot hold")


def to_jsonable(obj):
    """Recursively convert verdicts/witnesses to JSON-ready values.

    Fractions become canonical strings; tuples become lists.
    """
    if isinstance(obj, Verdict):
        out = {"holds": obj.holds}
        if obj.incomplete:
            out["incomplete"] = True
        out["witness"] = to_jsonable(obj.witness) if obj.witness else None
        if obj.sub_verdicts:
            out["sub_verdicts"] = {
                name: to_jsonable(sub) for name, sub in obj.sub_verdicts.items()
            }
        return out
    if isinstance(obj, Witness):
        return {
            "kind": obj.kind,
            "description": obj.description,
            "data": to_jsonable(dict(obj.data)),
        }
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")

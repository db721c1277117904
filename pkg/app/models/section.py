from dataclasses import dataclass
from typing import Any, Sequence, Tuple

from app.models.matrix import Matrix
from app.models.ring import InvolutiveRing, RingElement
from app.utils.errors import CodomainViolationError, InvalidElementError


class InvariantTuple:
    """(a_1, ..., a_n) with sigma(a_i) = (-1)^i a_i: the codomain of phi_n."""

    __slots__ = ("ring", "values")

    def __init__(self, ring: InvolutiveRing, values: Sequence[RingElement]):
        if not values:
            raise InvalidElementError("An invariant tuple needs n >= 1 entries")
        for i, a in enumerate(values, start=1):
            if not a.has_parity(i):
                raise CodomainViolationError(
                    f"sigma(a_{i}) != (-1)^{i} a_{i}",
                    index=i,
                    value=a.to_dict(),
                )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "values", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("InvariantTuple is immutable")

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> RingElement:
        """1-based: a[k] is a_k."""
        return self.values[k - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantTuple):
            return NotImplemented
        return self.ring == other.ring and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.ring, self.values))

    def __repr__(self) -> str:
        return f"InvariantTuple({list(self.values)})"

    @classmethod
    def from_dict(cls, ring: InvolutiveRing, payload: Any) -> "InvariantTuple":
        if not isinstance(payload, list):
            raise InvalidElementError("Invariant tuple must be a JSON list of elements")
        return cls(ring, [ring.decode(c) for c in payload])

    def to_dict(self) -> list:
        return [a.to_dict() for a in self.values]


@dataclass(frozen=True)
class SectionResult:
    a: InvariantTuple
    b: Tuple[RingElement, ...]
    alpha: RingElement
    X: Matrix
    report: Any

    @property
    def verified(self) -> bool:
        return self.report.all_passed

    def to_dict(self) -> dict:
        return {
            "n": self.a.n,
            "a": self.a.to_dict(),
            "b": [c.to_dict() for c in self.b],
            "alpha": self.alpha.to_dict(),
            "X": self.X.to_dict(),
            "report": self.report.model_dump(),
        }

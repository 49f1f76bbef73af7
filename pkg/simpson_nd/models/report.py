"""Result values: exactness reports, linear solve outcomes, system residuals."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from simpson_nd.models.polynomial import MultiIndex, monomial_label
from simpson_nd.models.scalar import Scalar, format_scalar, is_zero, scalar_to_dict


@dataclass(frozen=True)
class ExactnessReport:
    """Certified exactness degree of a rule.

    Only monomials are tested; exactness for every polynomial of degree <= degree
    follows by linearity. degree == -1 means even constants are integrated wrongly.
    """

    label: str
    degree: int
    failing: Optional[MultiIndex]
    residual: Optional[Scalar]
    tested: int

    @property
    def failing_label(self) -> Optional[str]:
        return monomial_label(self.failing) if self.failing is not None else None

    def to_dict(self):
        return {
            "label": self.label,
            "degree": self.degree,
            "failing": list(self.failing) if self.failing is not None else None,
            "residual": scalar_to_dict(self.residual) if self.residual is not None else None,
            "tested": self.tested,
        }

    def __str__(self) -> str:
        text = f"{self.label}: exact to degree {self.degree} (tested up to {self.tested})"
        if self.failing is not None:
            text += f"; first failure {self.failing_label}, residual {format_scalar(self.residual)}"
        return text


@dataclass(frozen=True)
class UniqueSolution:
    values: Tuple[Scalar, ...]
    kind: str = field(default="unique", init=False)

    def to_dict(self):
        return {"kind": self.kind, "values": [scalar_to_dict(v) for v in self.values]}


@dataclass(frozen=True)
class Infeasible:
    """No solution. `equations` names the inconsistent equations; for a weight system
    `multipliers` combines them into 0 = `mismatch` with a nonzero mismatch."""

    reason: str
    equations: Tuple[str, ...] = ()
    multipliers: Tuple[Scalar, ...] = ()
    mismatch: Optional[Scalar] = None
    kind: str = field(default="infeasible", init=False)

    def to_dict(self):
        return {
            "kind": self.kind,
            "reason": self.reason,
            "equations": list(self.equations),
            "multipliers": [scalar_to_dict(m) for m in self.multipliers],
            "mismatch": scalar_to_dict(self.mismatch) if self.mismatch is not None else None,
        }


@dataclass(frozen=True)
class Underdetermined:
    particular: Tuple[Scalar, ...]
    nullity: int
    kind: str = field(default="underdetermined", init=False)

    def to_dict(self):
        return {
            "kind": self.kind,
            "particular": [scalar_to_dict(v) for v in self.particular],
            "nullity": self.nullity,
        }


LinearSolveOutcome = Union[UniqueSolution, Infeasible, Underdetermined]


@dataclass(frozen=True)
class SystemResiduals:
    """Named residuals L(f) - I(f) of a parameterised exactness system."""

    names: Tuple[str, ...]
    residuals: Tuple[Scalar, ...]

    def all_zero(self) -> bool:
        return all(is_zero(r) for r in self.residuals)

    def nonzero(self):
        return [(name, r) for name, r in zip(self.names, self.residuals) if not is_zero(r)]

    def __getitem__(self, name: str) -> Scalar:
        return self.residuals[self.names.index(name)]

    def to_dict(self):
        return {
            "all_zero": self.all_zero(),
            "residuals": [{"monomial": n, "residual": scalar_to_dict(r)} for n, r in zip(self.names, self.residuals)],
        }

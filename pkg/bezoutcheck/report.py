from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple, Union

from .errors import Failure
from .numeric_core import Scalar, format_rational
from .polynomial import BiPoly, DensePoly, bi_render, render

Residual = Union[DensePoly, BiPoly, Fraction, int]
Part = Tuple[str, Residual]

SORT_PARAMS = ("n", "m", "k", "p")


def residual_is_zero(residual: Residual) -> bool:
    if isinstance(residual, (DensePoly, BiPoly)):
        return residual.is_zero()
    return residual == 0


def render_residual(residual: Residual) -> str:
    if isinstance(residual, DensePoly):
        return render(residual)
    if isinstance(residual, BiPoly):
        return bi_render(residual)
    return format_rational(residual)


@dataclass(frozen=True)
class CheckReport:
    identity_name: str
    parameters: Dict[str, Scalar]
    passed: bool
    residual: str
    method: str
    numeric_defect: float = field(default=0.0, compare=False)
    # exception class name when the check raised instead of completing
    error: str = field(default="", compare=False)

    @staticmethod
    def exact(
        identity_name: str,
        parameters: Dict[str, Scalar],
        parts: Sequence[Part],
        method: str,
    ) -> "CheckReport":
        """Passes iff every named residual part is exactly zero."""
        failing = [(label, r) for label, r in parts if not residual_is_zero(r)]
        if not failing:
            residual = "0"
        elif len(parts) == 1:
            residual = render_residual(failing[0][1])
        else:
            residual = "; ".join(
                f"{label}: {render_residual(r)}" for label, r in failing
            )
        return CheckReport(
            identity_name, dict(parameters), not failing, residual, method
        )

    @staticmethod
    def numeric(
        identity_name: str,
        parameters: Dict[str, Scalar],
        defect: float,
        tolerance: float,
        method: str,
    ) -> "CheckReport":
        return CheckReport(
            identity_name,
            dict(parameters),
            abs(defect) <= tolerance,
            repr(defect),
            f"{method}; |defect| <= {tolerance:g}",
            numeric_defect=defect,
        )

    @staticmethod
    def aborted(
        identity_name: str, parameters: Dict[str, Scalar], exc: Failure
    ) -> "CheckReport":
        return CheckReport(
            identity_name,
            dict(parameters),
            False,
            exc.message,
            f"aborted: {type(exc).__name__}",
            error=type(exc).__name__,
        )

    def sort_key(self) -> Tuple[Any, ...]:
        ordered = tuple(
            Fraction(self.parameters[name]) if name in self.parameters else Fraction(-1)
            for name in SORT_PARAMS
        )
        rest = tuple(
            sorted(
                (name, str(value))
                for name, value in self.parameters.items()
                if name not in SORT_PARAMS
            )
        )
        return (self.identity_name, ordered, rest)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity_name,
            "params": {
                name: format_rational(value)
                if isinstance(value, (int, Fraction))
                else str(value)
                for name, value in self.parameters.items()
            },
            "passed": self.passed,
            "residual": self.residual,
            "method": self.method,
            **({"error": self.error} if self.error else {}),
        }

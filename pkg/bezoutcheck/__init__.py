"""Exact verification of x^(m+1) P(x) + (1-x)^(n+1) Q(x) = 1 and related identities."""

from .bezout import BezoutSolution, closed_form, mu
from .errors import Failure
from .report import CheckReport

__all__ = ["BezoutSolution", "CheckReport", "Failure", "closed_form", "mu"]

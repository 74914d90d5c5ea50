"""Checkers for the product inequalities behind the joint-number bound.

Rational inputs (ints and ``Fraction``) are evaluated exactly; as soon as a
float is involved the comparison allows an absolute tolerance of ``1e-12``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Any, Dict, List, Sequence, Tuple, Union

from .errors import DomainError

logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1e-12

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class InequalityReport:
    """``lhs >= rhs`` evaluated on one instance."""

    holds: bool
    lhs: Number
    rhs: Number
    slack: Number
    exact: bool

    def __bool__(self) -> bool:
        return self.holds

    @property
    def equality(self) -> bool:
        if self.exact:
            return self.slack == 0
        return abs(self.slack) <= FLOAT_TOLERANCE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "lhs": str(self.lhs) if self.exact else self.lhs,
            "rhs": str(self.rhs) if self.exact else self.rhs,
            "slack": str(self.slack) if self.exact else self.slack,
            "exact": self.exact,
            "equality": self.equality,
        }


def _coerce(*groups: Sequence[Number]) -> Tuple[List[List[Number]], bool]:
    exact = not any(isinstance(v, float) for group in groups for v in group)
    if exact:
        return [[Fraction(v) for v in group] for group in groups], True
    return [[float(v) for v in group] for group in groups], False


def _report(lhs: Number, rhs: Number, exact: bool) -> InequalityReport:
    slack = lhs - rhs
    holds = slack >= 0 if exact else slack >= -FLOAT_TOLERANCE
    return InequalityReport(holds=bool(holds), lhs=lhs, rhs=rhs, slack=slack, exact=exact)


def _require_ascending(values: Sequence[Number], name: str) -> None:
    for i in range(len(values) - 1):
        if values[i] > values[i + 1]:
            raise DomainError(f"{name} must be ascending: {name}[{i}] > {name}[{i + 1}]")


def check_product_decrease(x: Sequence[Number], y: Sequence[Number]) -> InequalityReport:
    """prod(y) >= (x_1 - alpha) * prod(x_2..x_s) with alpha = sum(x_i - y_i).

    Args:
        x: Non-negative values in ascending order
        y: Values with ``0 <= y_i <= x_i``

    Raises:
        DomainError: If x is unordered or a bound on y fails
    """
    (xs, ys), exact = _coerce(x, y)
    if not xs or len(xs) != len(ys):
        raise DomainError(f"x and y must be non-empty and of equal length, got {len(xs)} and {len(ys)}")
    _require_ascending(xs, "x")
    if xs[0] < 0:
        raise DomainError("x must be non-negative")
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not 0 <= yi <= xi:
            raise DomainError(f"need 0 <= y[{i}] <= x[{i}], got y={yi}, x={xi}")
    alpha = sum(xi - yi for xi, yi in zip(xs, ys))
    return _report(prod(ys), (xs[0] - alpha) * prod(xs[1:]), exact)


def _check_min_product_domain(a: Sequence[Number], r: int) -> None:
    if r < 1 or len(a) != r:
        raise DomainError(f"expected r={r} values, got {len(a)}")
    _require_ascending(a, "a")
    if a[0] < 0 or a[-1] > 1:
        raise DomainError("a must lie in [0, 1]")
    if sum(a) < r - 1:
        raise DomainError(f"sum of a is {sum(a)}, below r - 1 = {r - 1}")


def check_min_product(a: Sequence[Number], r: int) -> InequalityReport:
    """prod(a_2..a_r) >= ((r-1)/r)^(r-1) for ascending a in [0,1] with sum >= r-1.

    Equality holds exactly when every a_i equals (r-1)/r.

    Raises:
        DomainError: Naming the failed precondition
    """
    (values,), exact = _coerce(a)
    _check_min_product_domain(values, r)
    base = Fraction(r - 1, r) if exact else (r - 1) / r
    return _report(prod(values[1:]), base ** (r - 1), exact)


def check_perturbed_min_product(a: Sequence[Number], b: Sequence[Number], alpha: Number) -> InequalityReport:
    """prod(b_2..b_r) >= (1 - 2 alpha) ((r-1)/r)^(r-1).

    ``a`` satisfies the :func:`check_min_product` conditions, ``0 <= b_i <= a_i``
    and ``alpha = sum(a_i - b_i) <= 1/4``. A passed ``alpha`` must match that
    sum.

    Raises:
        DomainError: Naming the failed precondition
    """
    (values, lower, (alpha_value,)), exact = _coerce(a, b, [alpha])
    r = len(values)
    _check_min_product_domain(values, r)
    if len(lower) != r:
        raise DomainError(f"b must have {r} entries, got {len(lower)}")
    for i, (ai, bi) in enumerate(zip(values, lower)):
        if not 0 <= bi <= ai:
            raise DomainError(f"need 0 <= b[{i}] <= a[{i}], got b={bi}, a={ai}")
    total = sum(ai - bi for ai, bi in zip(values, lower))
    tolerance = 0 if exact else FLOAT_TOLERANCE
    if abs(total - alpha_value) > tolerance:
        raise DomainError(f"alpha={alpha_value} differs from sum(a - b) = {total}")
    quarter = Fraction(1, 4) if exact else 0.25
    if alpha_value > quarter:
        raise DomainError(f"alpha={alpha_value} exceeds 1/4")
    base = Fraction(r - 1, r) if exact else (r - 1) / r
    return _report(prod(lower[1:]), (1 - 2 * alpha_value) * base ** (r - 1), exact)


check_corollary37 = check_perturbed_min_product

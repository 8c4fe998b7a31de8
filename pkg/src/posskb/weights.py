"""Valuation weights and their total order.

A weight is either a necessity bound ``N a`` or a possibility bound ``P a``
with an exact rational degree ``a`` in (0, 1].  Degrees are kept as
:class:`fractions.Fraction` throughout: the query algorithms compare degrees
and form complements ``1 - b``, and a floating-point representation would
corrupt cut boundaries.

The order places every necessity weight above every possibility weight:
``N a >= N a'`` iff ``a >= a'``, ``P a >= P a'`` iff ``a >= a'``, and
``N a >= P a'`` for all positive ``a`` and any ``a'``.  The bottom element
``P 0`` ("no information") is not a constructible :class:`Weight`; where the
extended lattice is needed (resolvent combination, inconsistency degrees),
``None`` stands for it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import WeightError


class Mode(enum.Enum):
    """Kind of valuation a weight expresses."""

    NECESSITY = "N"
    POSSIBILITY = "P"


NECESSITY = Mode.NECESSITY
POSSIBILITY = Mode.POSSIBILITY


def parse_degree(text: str) -> Fraction:
    """Convert a decimal or ``a/b`` literal to an exact rational."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise WeightError(f"not a valid degree: {text!r}") from exc
    return value


def format_degree(value: Fraction) -> str:
    """Render a degree as ``n/d (decimal)``, lowest terms, exact decimal.

    Non-terminating decimals are marked with ``~`` and truncated to six
    significant digits so output stays canonical.
    """
    if value.denominator == 1:
        return f"{value.numerator} ({value.numerator})"
    frac = f"{value.numerator}/{value.denominator}"
    den = value.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    dec = _exact_decimal(value) if den == 1 else f"~{float(value):.6g}"
    return f"{frac} ({dec})"


def _exact_decimal(value: Fraction) -> str:
    digits = []
    num, den = value.numerator, value.denominator
    whole, num = divmod(num, den)
    while num:
        num *= 10
        d, num = divmod(num, den)
        digits.append(str(d))
    return f"{whole}.{''.join(digits)}"


@dataclass(frozen=True, slots=True)
class Weight:
    """A valuation mode plus a positive degree.

    Degree zero is rejected: a formula weighted ``N 0`` or ``P 0`` is
    satisfied by every possibility distribution and carries no information.
    """

    mode: Mode
    degree: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.degree, Fraction):
            object.__setattr__(self, "degree", Fraction(self.degree))
        if not 0 < self.degree <= 1:
            raise WeightError(f"degree must be in (0, 1], got {self.degree}")

    def __str__(self) -> str:
        return f"{self.mode.value} {format_degree(self.degree)}"

    @property
    def is_necessity(self) -> bool:
        return self.mode is NECESSITY


def necessity(degree: Fraction | str | int) -> Weight:
    return Weight(NECESSITY, parse_degree(str(degree)) if isinstance(degree, str) else Fraction(degree))


def possibility(degree: Fraction | str | int) -> Weight:
    return Weight(POSSIBILITY, parse_degree(str(degree)) if isinstance(degree, str) else Fraction(degree))


def _order_key(w: Weight | None) -> tuple[int, Fraction]:
    if w is None:
        return (0, Fraction(0))
    return (1 if w.mode is NECESSITY else 0, w.degree)


def weight_geq(v: Weight | None, w: Weight | None) -> bool:
    """Total order on weights extended with the ``P 0`` bottom (``None``)."""
    return _order_key(v) >= _order_key(w)


def combine_weights(v: Weight | None, w: Weight | None) -> Weight | None:
    """Weight of a resolvent from parents weighted ``v`` and ``w``.

    ``N a * N a' = N min(a, a')``; two possibility weights yield the bottom;
    a mixed pair yields the possibility weight when the degrees sum over 1,
    and the bottom otherwise.
    """
    if v is None or w is None:
        return None
    if v.mode is NECESSITY and w.mode is NECESSITY:
        return Weight(NECESSITY, min(v.degree, w.degree))
    if v.mode is POSSIBILITY and w.mode is POSSIBILITY:
        return None
    n, p = (v, w) if v.mode is NECESSITY else (w, v)
    if n.degree + p.degree > 1:
        return p
    return None


@dataclass(frozen=True, slots=True)
class InconsDegree:
    """Strength at which a knowledge base contradicts itself.

    ``weight is None`` means completely consistent (the ``P 0`` bottom);
    a possibility weight means possibly inconsistent; a necessity weight
    means necessarily inconsistent.  Instances order by the weight order.
    """

    weight: Weight | None

    @classmethod
    def consistent(cls) -> "InconsDegree":
        return cls(None)

    @classmethod
    def possibly(cls, degree: Fraction) -> "InconsDegree":
        return cls(Weight(POSSIBILITY, degree))

    @classmethod
    def necessarily(cls, degree: Fraction) -> "InconsDegree":
        return cls(Weight(NECESSITY, degree))

    @property
    def completely_consistent(self) -> bool:
        return self.weight is None

    def geq(self, other: "InconsDegree | Weight | None") -> bool:
        bound = other.weight if isinstance(other, InconsDegree) else other
        return weight_geq(self.weight, bound)

    def __str__(self) -> str:
        if self.weight is None:
            return "completely consistent (P 0)"
        return str(self.weight)


COMPLETELY_CONSISTENT = InconsDegree(None)

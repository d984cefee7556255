import json
from fractions import Fraction
from typing import Iterable, Optional

from pydantic import BaseModel

from series import QExpansion


def format_fraction(value: Fraction) -> str:
    """Exact text for a rational, integers without a denominator"""
    return str(value)


def format_qseries(series: QExpansion, variable: str = "q", max_terms: Optional[int] = None) -> str:
    """
    Render a truncated q-series as text
    e.g. 1 + 240*q + 2160*q^2 + O(q^3)
    """
    pieces = []
    shown = 0
    for exponent, value in enumerate(series.coeffs):
        if not value:
            continue
        if max_terms is not None and shown >= max_terms:
            break
        shown += 1
        if exponent == 0:
            monomial = format_fraction(value)
        else:
            power = variable if exponent == 1 else f"{variable}^{exponent}"
            if value == 1:
                monomial = power
            elif value == -1:
                monomial = f"-{power}"
            else:
                monomial = f"{format_fraction(value)}*{power}"
        pieces.append(monomial)

    text = " + ".join(pieces).replace("+ -", "- ") if pieces else "0"
    return f"{text} + O({variable}^{series.precision})"


def format_components(components: Iterable[QExpansion]) -> str:
    """One line per Y-power of a nearly holomorphic form"""
    lines = [f"Y^{index}: {format_qseries(part)}" for index, part in enumerate(components)]
    return "\n".join(lines) if lines else "0"


def to_json(model: BaseModel) -> str:
    """Single-line JSON for a pydantic model, rationals as strings"""
    return json.dumps(model.model_dump(mode="json"), separators=(",", ":"))

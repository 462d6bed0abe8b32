"""Half-up decimal formatting shared by reporting surfaces.

Python's round() is banker's rounding; published tables here round half up,
so every user-facing 2-decimal figure funnels through these helpers.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal


def half_up_2dp(value: Decimal) -> str:
    return str(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def ratio_2dp(numerator: int | Decimal, denominator: int | Decimal, scale: int = 1) -> str:
    return half_up_2dp(Decimal(numerator) * scale / Decimal(denominator))

from __future__ import annotations

import enum
from fractions import Fraction


class Regime(enum.Enum):
    """The two sparsity regimes: mad below 8/3 with D >= 6, and mad below
    14/5 with D >= 10.  Initial charge of a vertex is ``a*d(v) - b``."""

    A = ("A", Fraction(8, 3), 6, (3, 8))
    B = ("B", Fraction(14, 5), 10, (5, 14))

    def __init__(self, label: str, mad_bound: Fraction, delta_min: int, coeffs: tuple[int, int]):
        self.label = label
        self.mad_bound = mad_bound
        self.delta_min = delta_min
        self.charge_coeffs = coeffs

    @classmethod
    def parse(cls, text: str) -> "Regime":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown regime {text!r} (expected A or B)") from None

    @classmethod
    def infer(cls, mad: Fraction, max_degree: int) -> "Regime | None":
        for regime in cls:
            if mad < regime.mad_bound and max_degree >= regime.delta_min:
                return regime
        return None

    def __str__(self) -> str:
        return self.label

"""Built-in example series with closed-form reference limits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from mpmath import mp, sqrt, mpf

from .numerics import HPComplex, PrecisionConfig, DEFAULT_PRECISION, parse_number
from .series import SeriesDef


@dataclass(frozen=True)
class Preset:
    name: str
    alpha: tuple
    beta: tuple
    x: str
    limit: str  # closed form tag or literal

    def series(self, config: PrecisionConfig = DEFAULT_PRECISION) -> SeriesDef:
        return SeriesDef(
            tuple(parse_number(a, config) for a in self.alpha),
            tuple(parse_number(b, config) for b in self.beta),
            parse_number(self.x, config),
            config,
        )

    def reference(self, config: PrecisionConfig = DEFAULT_PRECISION) -> HPComplex:
        prec = config.working
        with mp.workdps(prec):
            if self.limit == "sqrt2":
                return HPComplex.from_mpc((44 * sqrt(mpf(2)) - 16) / 35, prec)
            if self.limit == "sqrt3":
                return HPComplex.from_mpc(3 * sqrt(mpf(3)) / 4, prec)
        return parse_number(self.limit, config)


PRESETS = {
    # alternating 3F2 expansion of the averaged sqrt(1+y^(1/3)) integral
    "ex1": Preset("ex1", ("3", "-1/2"), ("4", "1"), "-1", "sqrt2"),
    # linearly convergent series with x close to 1
    "ex2": Preset("ex2", ("1/6", "1/3"), ("1/2", "1"), "25/27", "sqrt3"),
    # logarithmically convergent complex series at x = 1
    "ex3": Preset(
        "ex3",
        ("1.7+2.5i", "1.5+2.0i"),
        ("1.3-3.0i", "3.2-4.0i"),
        "1",
        "0.7808031959823745-0.2060305207425406i",
    ),
}


def get_preset(name: str) -> Optional[Preset]:
    return PRESETS.get(name)

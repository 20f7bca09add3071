"""Absolutely homogeneous weights reduced to degree and sphere mass.

Every radial computation in the toolkit sees a weight only through two
numbers: its homogeneity degree gamma and its sphere mass (the integral of
the weight over the unit sphere).  For a weight with constant angular part,
omega(x) = c * |x|**gamma, the sphere mass is c times the unit sphere
measure.  Non-constant angular parts are supported through an explicit
sphere-mass override; pointwise evaluation is never needed because every
radial quantity factors as (angular mass) x (radial integral).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum
from typing import Optional, Sequence


def sphere_mass_unit(d: int) -> float:
    """Measure of the unit sphere in R^d: 2 pi^(d/2) / Gamma(d/2)."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


@dataclass(frozen=True)
class HomogeneousWeight:
    """Degree-gamma weight with sphere mass and radial coefficient.

    ``radial_coefficient`` is the constant c of the power-weight model
    c*|x|**gamma; for such weights sphere_mass = c * sphere_mass_unit(d).
    """

    degree: float
    sphere_mass: float
    radial_coefficient: float = 1.0

    def __post_init__(self):
        if not (self.sphere_mass > 0 and math.isfinite(self.sphere_mass)):
            raise ValueError(f"sphere_mass must be positive and finite, got {self.sphere_mass}")
        if not (self.radial_coefficient > 0 and math.isfinite(self.radial_coefficient)):
            raise ValueError(f"radial_coefficient must be positive, got {self.radial_coefficient}")

    @classmethod
    def power(cls, degree: float, coefficient: float = 1.0, d: int = 1) -> "HomogeneousWeight":
        """Weight c*|x|**degree in R^d."""
        return cls(degree=float(degree), sphere_mass=coefficient * sphere_mass_unit(d),
                   radial_coefficient=float(coefficient))

    def shell_mass(self, k: int, d: int) -> float:
        """Integral of the weight over the dyadic shell 2^(k-1) < |x| <= 2^k."""
        s = d + self.degree
        if s <= 0:
            raise ValueError(f"degree must exceed -d, got degree={self.degree}, d={d}")
        return self.sphere_mass * (2.0 ** (k * s) - 2.0 ** ((k - 1) * s)) / s


def product_weight(weights: Sequence[HomogeneousWeight], q_i: Sequence[float], q: float,
                   sphere_mass: Optional[float] = None, d: int = 1) -> HomogeneousWeight:
    """Product weight prod_i omega_i^(q/q_i).

    The degree is q * sum(gamma_i / q_i).  The sphere mass is derived from
    the product of the radial coefficients, which is valid for weights with
    constant angular parts; for general angular parts the product's sphere
    mass is not determined by the factor masses, so pass ``sphere_mass``
    explicitly.
    """
    ws = list(weights)
    if not ws:
        raise ValueError("weights must be nonempty")
    if len(ws) != len(q_i):
        raise ValueError(f"expected {len(ws)} q_i entries, got {len(q_i)}")
    degree = q * fsum(w.degree / qi for w, qi in zip(ws, q_i))
    coefficient = math.prod(w.radial_coefficient ** (q / qi) for w, qi in zip(ws, q_i))
    mass = coefficient * sphere_mass_unit(d) if sphere_mass is None else float(sphere_mass)
    if not mass > 0:
        raise ValueError(f"product weight sphere mass must be positive, got {mass}")
    return HomogeneousWeight(degree=degree, sphere_mass=mass, radial_coefficient=coefficient)

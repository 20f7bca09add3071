"""Per-factor exponents and their aggregate algebra.

An :class:`ExponentSet` holds the scalar data of an m-linear problem:
per-factor Herz indices (alpha_i, p_i, q_i, lambda_i), weight degrees
gamma_i, and the optional commutator data (r_i, beta_i).  Aggregation
follows the additive/harmonic relations of the theory

    alpha = sum alpha_i,     1/p = sum 1/p_i,
    1/q   = sum 1/q_i (+ sum 1/r_i with commutator data),
    lambda = sum lambda_i,   gamma/q = sum gamma_i/q_i,

and the commutator target index  alpha' = alpha - sum beta_i
- sum (d+gamma_i)/r_i.  Sums are accumulated with exact rounding
(``math.fsum``) so aggregates are permutation-invariant bit for bit.

Hypothesis checking is split off into :func:`validate`, which returns a
list of human-readable violations instead of raising: a non-empty list is
data for the caller, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from math import fsum
from typing import Optional, Sequence


class TheoremMode(Enum):
    """Hypothesis set selector for :func:`validate`."""

    MORREY_HERZ_UPPER = "morrey_herz_upper"
    MORREY_HERZ_SHARP = "morrey_herz_sharp"
    HERZ_UPPER = "herz_upper"
    HERZ_LOWER = "herz_lower"
    COMMUTATOR = "commutator"


def _float_tuple(values, m, name, allow_inf=False):
    vals = tuple(float(x) for x in values)
    if len(vals) != m:
        raise ValueError(f"{name} must have {m} entries, got {len(vals)}")
    for x in vals:
        if math.isnan(x):
            raise ValueError(f"{name} entries must not be NaN")
        if math.isinf(x) and not allow_inf:
            raise ValueError(f"{name} entries must be finite")
    return vals


@dataclass(frozen=True)
class ExponentSet:
    """All scalar parameters of one m-linear problem instance.

    r_i entries may be ``math.inf``; an infinite r_i contributes nothing
    to 1/q or to alpha', recovering the non-commutator algebra.

    p_i is only required to be positive at construction; the range
    restrictions of the individual statements (e.g. p_i >= 1) are
    reported by :func:`validate` for the relevant mode.
    """

    m: int
    n: int
    d: int
    alpha_i: Sequence[float]
    p_i: Sequence[float]
    q_i: Sequence[float]
    lambda_i: Sequence[float]
    gamma_i: Sequence[float]
    r_i: Optional[Sequence[float]] = None
    beta_i: Optional[Sequence[float]] = None

    def __post_init__(self):
        for name in ("m", "n", "d"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        m = self.m
        object.__setattr__(self, "alpha_i", _float_tuple(self.alpha_i, m, "alpha_i"))
        object.__setattr__(self, "p_i", _float_tuple(self.p_i, m, "p_i"))
        object.__setattr__(self, "q_i", _float_tuple(self.q_i, m, "q_i"))
        object.__setattr__(self, "lambda_i", _float_tuple(self.lambda_i, m, "lambda_i"))
        object.__setattr__(self, "gamma_i", _float_tuple(self.gamma_i, m, "gamma_i"))
        if self.r_i is not None:
            object.__setattr__(self, "r_i", _float_tuple(self.r_i, m, "r_i", allow_inf=True))
        if self.beta_i is not None:
            object.__setattr__(self, "beta_i", _float_tuple(self.beta_i, m, "beta_i"))

        for p in self.p_i:
            if p <= 0:
                raise ValueError(f"p_i entries must be positive, got {p}")
        for q in self.q_i:
            if q < 1:
                raise ValueError(f"q_i entries must be >= 1, got {q}")
        for lam in self.lambda_i:
            if lam < 0:
                raise ValueError(f"lambda_i entries must be >= 0, got {lam}")
        for g in self.gamma_i:
            if g <= -self.d:
                raise ValueError(f"gamma_i entries must exceed -d = {-self.d}, got {g}")
        if self.r_i is not None:
            for r in self.r_i:
                if r <= 0:
                    raise ValueError(f"r_i entries must lie in (0, inf], got {r}")
        if self.beta_i is not None:
            for b in self.beta_i:
                if not 0.0 < b < 1.0:
                    raise ValueError(f"beta_i entries must lie in (0, 1), got {b}")

    def to_dict(self) -> dict:
        """Flat key-list form used by the CLI config file."""
        out = {
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "alpha_i": list(self.alpha_i),
            "p_i": list(self.p_i),
            "q_i": list(self.q_i),
            "lambda_i": list(self.lambda_i),
            "gamma_i": list(self.gamma_i),
        }
        if self.r_i is not None:
            out["r_i"] = list(self.r_i)
        if self.beta_i is not None:
            out["beta_i"] = list(self.beta_i)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExponentSet":
        def norm_r(x):
            if isinstance(x, str) and x.strip().lower() in ("inf", "infinity"):
                return math.inf
            return float(x)

        r_i = data.get("r_i")
        if r_i is not None:
            r_i = [norm_r(x) for x in r_i]
        return cls(
            m=int(data["m"]),
            n=int(data["n"]),
            d=int(data["d"]),
            alpha_i=data["alpha_i"],
            p_i=data["p_i"],
            q_i=data["q_i"],
            lambda_i=data["lambda_i"],
            gamma_i=data["gamma_i"],
            r_i=r_i,
            beta_i=data.get("beta_i"),
        )


@dataclass(frozen=True)
class Aggregates:
    """Derived aggregate indices; ``lam`` is the aggregate lambda."""

    alpha: float
    p: float
    q: float
    lam: float
    gamma: float
    alpha_prime: Optional[float] = None
    beta: Optional[float] = None


def _aggregate(exponents: ExponentSet) -> Aggregates:
    e = exponents
    alpha = fsum(e.alpha_i)
    p = 1.0 / fsum(1.0 / p for p in e.p_i)
    inv_q_terms = [1.0 / q for q in e.q_i]
    if e.r_i is not None:
        inv_q_terms += [0.0 if math.isinf(r) else 1.0 / r for r in e.r_i]
    q = 1.0 / fsum(inv_q_terms)
    lam = fsum(e.lambda_i)
    gamma = q * fsum(g / qi for g, qi in zip(e.gamma_i, e.q_i))

    beta = fsum(e.beta_i) if e.beta_i is not None else None
    alpha_prime = None
    if e.beta_i is not None:
        r_terms = []
        if e.r_i is not None:
            r_terms = [0.0 if math.isinf(r) else (e.d + g) / r for g, r in zip(e.gamma_i, e.r_i)]
        alpha_prime = alpha - fsum(e.beta_i) - fsum(r_terms)
    return Aggregates(alpha=alpha, p=p, q=q, lam=lam, gamma=gamma,
                      alpha_prime=alpha_prime, beta=beta)


def derive_aggregates(exponents: ExponentSet) -> Aggregates:
    """Aggregate indices for a valid exponent set.

    Raises ValueError when the aggregated q is nonpositive or the
    aggregate weight degree gamma does not exceed -d.
    """
    agg = _aggregate(exponents)
    if agg.q <= 0:
        raise ValueError(f"aggregate q must be positive, got {agg.q}")
    if agg.gamma <= -exponents.d:
        raise ValueError(f"aggregate gamma must exceed -d = {-exponents.d}, got {agg.gamma}")
    return agg


def validate(exponents: ExponentSet, mode: TheoremMode) -> list:
    """Collect hypothesis violations of the selected statement mode.

    Returns an empty list when the hypothesis set holds.  Violations are
    descriptive strings; they are data, not failures.
    """
    e = exponents
    agg = _aggregate(e)
    out = []

    if agg.q < 1:
        out.append(f"aggregate q = {agg.q:.6g} violates q >= 1")
    if agg.gamma <= -e.d:
        out.append(f"aggregate gamma = {agg.gamma:.6g} must exceed -d = {-e.d}")

    has_finite_r = e.r_i is not None and any(not math.isinf(r) for r in e.r_i)
    if has_finite_r and mode is not TheoremMode.COMMUTATOR:
        out.append("finite r_i entries are only meaningful in the commutator mode")

    if mode is TheoremMode.MORREY_HERZ_UPPER:
        if agg.p < 1 and agg.lam <= 0:
            out.append("0<p<1 requires lambda>0")
    elif mode is TheoremMode.MORREY_HERZ_SHARP:
        for i, (a, lam) in enumerate(zip(e.alpha_i, e.lambda_i)):
            if lam <= 0:
                out.append(f"lambda_i>0 required (factor {i})")
            if lam <= a:
                out.append(f"lambda_i>alpha_i required (factor {i})")
    elif mode is TheoremMode.HERZ_UPPER:
        if agg.p < 1:
            out.append(f"p >= 1 required, got p = {agg.p:.6g}")
    elif mode is TheoremMode.HERZ_LOWER:
        pass  # the curve growth hypothesis is a kernel property, checked there
    elif mode is TheoremMode.COMMUTATOR:
        if e.beta_i is None:
            out.append("beta_i required in commutator mode")
        else:
            bsum = fsum(e.beta_i)
            if not 0.0 < bsum < 1.0:
                out.append(f"sum of beta_i must lie in (0,1), got {bsum:.6g}")
        for i, a in enumerate(e.alpha_i):
            if a <= -e.d:
                out.append(f"alpha_i>-d required (factor {i})")
        if agg.alpha <= -e.d:
            out.append(f"aggregate alpha = {agg.alpha:.6g} must exceed -d")
        for i, lam in enumerate(e.lambda_i):
            if lam > 1:
                out.append(f"lambda_i<=1 required (factor {i})")
        if agg.lam > 1:
            out.append(f"aggregate lambda = {agg.lam:.6g} must be <= 1")
        for i, (p, q) in enumerate(zip(e.p_i, e.q_i)):
            if p < 1:
                out.append(f"p_i>=1 required (factor {i})")
            if agg.q > q * (1 + 1e-15):
                out.append(f"q<=q_i required (factor {i})")
        if agg.p < 1 and agg.lam <= 0:
            out.append("0<p<1 requires lambda>0")
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unknown mode {mode!r}")
    return out

"""
Closed-form remainder and risk levels attached to the adaptive estimators.

These are the quantities that govern the high-probability loss bounds: the
remainder terms Q0 (constrained), Q1/Q2 (penalized), the domain ratio κ and
the oracle risk levels. They carry no absolute constants.
"""

from __future__ import annotations

import math
from dataclasses import asdict
from dataclasses import dataclass

from shift_denoise.global_data.enm import Side
from shift_denoise.global_data.exceptions import ConfigurationError


def kappa(m: int, n: int, side: Side | str = Side.BILATERAL) -> float:
    """√((2n+1)/(2m+1)) for bilateral geometry, √((n+1)/(m+1)) for one-sided."""
    if m < 0 or n < 0:
        msg = f"kappa needs m, n >= 0, got m={m}, n={n}"
        raise ConfigurationError(msg)
    if Side(side) == Side.BILATERAL:
        return math.sqrt((2 * n + 1) / (2 * m + 1))
    return math.sqrt((n + 1) / (m + 1))


@dataclass(frozen=True)
class RemainderReport:
    q0: float
    q1: float
    q2: float | None
    kappa: float
    m: int
    n: int
    rho_bar: float
    varrho: float | None
    varkappa: float
    s: int
    alpha: float
    lam: float | None

    @property
    def suggested_lambda(self) -> float:
        return math.sqrt(self.q1)

    def as_dict(self) -> dict:
        return {**asdict(self), "suggested_lambda": self.suggested_lambda}


def remainder_bounds(  # noqa: PLR0913
    m: int,
    n: int,
    rho_bar: float = 1.0,
    varkappa: float = 0.0,
    s: int = 0,
    alpha: float = 0.1,
    lam: float | None = None,
    varrho: float | None = None,
    side: Side | str = Side.BILATERAL,
) -> RemainderReport:
    """
    Evaluate Q0, Q1 and (when ``varrho`` is given) Q2.

    Args:
        m: filter bandwidth.
        n: estimation radius.
        rho_bar: constraint level of the constrained estimator.
        varkappa: shift-invariance defect ϰ.
        s: subspace dimension.
        alpha: confidence level, in (0, 1].
        lam: penalty level, echoed for reference.
        varrho: oracle norm level entering Q2.
        side: ``bilateral`` or ``unilateral`` geometry for κ.

    Returns:
        RemainderReport: the remainders with the inputs echoed.
    """
    if not 0 < alpha <= 1:
        msg = f"alpha must lie in (0, 1], got {alpha}"
        raise ConfigurationError(msg)
    if m + n <= 0:
        msg = "remainder bounds need m + n >= 1"
        raise ConfigurationError(msg)
    k = kappa(m, n, side)
    log_span = math.log((m + n) / alpha)
    deviation = varkappa * math.sqrt(math.log(1 / alpha))
    q0 = rho_bar * (k * k + 1) * log_span + rho_bar * deviation + s
    q1 = (k * k + 1) * log_span + deviation + 1
    q2 = None if varrho is None else varrho * math.log(1 / alpha) + deviation + s
    return RemainderReport(
        q0=q0,
        q1=q1,
        q2=q2,
        kappa=k,
        m=m,
        n=n,
        rho_bar=rho_bar,
        varrho=varrho,
        varkappa=varkappa,
        s=s,
        alpha=alpha,
        lam=lam,
    )


def default_lambda(m: int, n: int, side: Side | str = Side.BILATERAL) -> float:
    """√Q1 with ϰ = 0 and α = 0.1."""
    return remainder_bounds(m, n, varkappa=0.0, alpha=0.1, side=side).suggested_lambda


def oracle_risk_bounds(  # noqa: PLR0913
    rho: float,
    theta: float,
    kappa_value: float,
    sigma: float,
    m: int,
    side: Side | str = Side.BILATERAL,
) -> dict[str, float]:
    """Pointwise and ℓ2 risk levels of an oracle filter with certificate (ρ, θ)."""
    width = 2 * m + 1 if Side(side) == Side.BILATERAL else m + 1
    level = sigma * math.sqrt(1 + theta * theta) * rho
    return {"pointwise": level / math.sqrt(width), "l2": kappa_value * level}


def composite_rate(big_n: int, s: int, sigma: float) -> float:
    """σ√((s³ log(N+1) + s² log²(N+1)) / (2N+1)), the composite estimator's rate shape."""
    log_n = math.log(big_n + 1)
    return sigma * math.sqrt((s**3 * log_n + s**2 * log_n**2) / (2 * big_n + 1))

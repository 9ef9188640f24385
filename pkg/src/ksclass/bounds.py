"""
Coefficient bounds, Fekete-Szego estimates and the coefficient-sum
sufficient condition for K_s^(k)(lam, mu, A, B).

Notation: the Fekete-Szego weight is called ``delta`` everywhere to keep it
apart from the class parameter mu. With

    L1 = 1 + 2 lam - 2 mu + 6 lam mu,    L2 = 1 + lam - mu + 2 lam mu

the multipliers of a_3 and a_2 are 3 L1 and 2 L2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .classes import ClassParams, MoebiusTarget, starlike_kernel
from .series import TruncatedSeries

SLACK_TOL = 1e-9


@dataclass(frozen=True)
class PhiExpansion:
    """phi(z) = 1 + Q1 z + Q2 z^2 + ..., with Q1 > 0."""

    Q1: float
    Q2: float

    def __post_init__(self):
        if not self.Q1 > 0:
            raise ValueError(f"Q1 must be positive, got {self.Q1}")

    @property
    def phi_prime0_abs(self) -> float:
        return abs(self.Q1)

    @classmethod
    def from_moebius(cls, target: MoebiusTarget) -> "PhiExpansion":
        q1 = target.A - target.B
        return cls(q1, -target.B * q1)


@dataclass(frozen=True)
class FSBoundInputs:
    delta: complex
    d1: complex = 2.0

    def __post_init__(self):
        if abs(self.d1) > 2 + 1e-12:
            raise ValueError("|d1| must not exceed 2")


def _l1(params: ClassParams) -> float:
    return 1 + 2 * params.lam - 2 * params.mu + 6 * params.lam * params.mu


def _l2(params: ClassParams) -> float:
    return 1 + params.lam - params.mu + 2 * params.lam * params.mu


def coefficient_bound(params: ClassParams, phi: PhiExpansion, n: int) -> float:
    """(1 + |phi'(0)| (n-1)/2) / (1 + (n-1)(lam - mu + n lam mu))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (1 + phi.phi_prime0_abs * (n - 1) / 2) / params.multiplier(n)


@dataclass
class BoundReport:
    rows: list[dict[str, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["slack"] >= -SLACK_TOL for r in self.rows)

    @property
    def worst_slack(self) -> float:
        return min((r["slack"] for r in self.rows), default=float("inf"))


def verify_coefficient_bounds(f: TruncatedSeries, params: ClassParams, phi: PhiExpansion,
                              n_max: int) -> BoundReport:
    if n_max > f.order:
        raise ValueError(f"n_max={n_max} exceeds series order {f.order}")
    report = BoundReport()
    for n in range(2, n_max + 1):
        a = float(abs(f.coeffs[n]))
        b = coefficient_bound(params, phi, n)
        report.rows.append({"n": n, "abs_a_n": a, "bound": b, "slack": b - a})
    return report


def lemma21_bound(mu_weight: complex) -> float:
    """2 max{1, |2 mu - 1|} for |c_2 - mu c_1^2| over the class P."""
    return 2 * max(1.0, abs(2 * mu_weight - 1))


def lemma22_bound(lambda_weight: float) -> float:
    """max{1, |3 - 4 lambda|} for |b_3 - lambda b_2^2| over starlike functions."""
    return max(1.0, abs(3 - 4 * lambda_weight))


def fekete_szego_functional(f: TruncatedSeries, delta: complex) -> float:
    if f.order < 3:
        raise ValueError("need order >= 3")
    return float(abs(f.coeffs[3] - delta * f.coeffs[2] ** 2))


def fekete_szego_terms(params: ClassParams, phi: PhiExpansion, inputs: FSBoundInputs) -> dict[str, Any]:
    """The three summands of the published Fekete-Szego estimate, evaluated verbatim.

    The published alpha carries L2 unsquared, beta depends on d1, and the
    last term uses the weight delta. None of this is corrected here; the
    caller is expected to compare against sampled members.
    """
    L1, L2 = _l1(params), _l2(params)
    delta, d1 = complex(inputs.delta), complex(inputs.d1)
    Q1, Q2 = phi.Q1, phi.Q2
    alpha = 3 * delta * L1 / (4 * L2)
    beta = 0.5 * (1 - Q2 / Q1 - 3 * delta * Q2 ** 2 * d1 ** 2 * L1 / (4 * L2 ** 2))
    t1 = max(1.0, abs(3 - 4 * alpha)) / (3 * L1)
    t2 = Q1 * max(1.0, abs(2 * beta - 1)) / (3 * L1)
    t3 = 2 * Q1 * (1 / (3 * L1) - delta / (2 * L2 ** 2))
    caveats = ["printed-formula"]
    if abs(t3.imag) > 0:
        caveats.append("complex third term replaced by its modulus")
        t3_val = abs(t3)
    else:
        t3_val = t3.real
    return {
        "alpha": alpha, "beta": beta,
        "terms": [t1, t2, t3_val],
        "value": t1 + t2 + t3_val,
        "caveats": caveats,
    }


def fekete_szego_bound(params: ClassParams, phi: PhiExpansion, inputs: FSBoundInputs) -> float:
    return float(fekete_szego_terms(params, phi, inputs)["value"])


def a2_a3_formulas(B2: complex, B3: complex, phi: PhiExpansion, d1: complex, d2: complex,
                   params: ClassParams) -> tuple[complex, complex]:
    """a_2 and a_3 in terms of B_2, B_3, Q_1, Q_2 and the coefficients d_1, d_2
    of h = (1 + w)/(1 - w)."""
    if abs(d1) > 2 + 1e-12:
        raise ValueError("|d1| must not exceed 2")
    L1, L2 = _l1(params), _l2(params)
    Q1, Q2 = phi.Q1, phi.Q2
    a2 = (2 * B2 + Q1 * d1) / (4 * L2)
    a3 = (2 * B2 * Q1 * d1 + 2 * Q1 * (d2 - d1 ** 2 / 2) + Q2 * d1 ** 2 + 4 * B3) / (12 * L1)
    return complex(a2), complex(a3)


@dataclass(frozen=True)
class SufficientReport:
    lhs: float
    rhs: float
    verdict: bool
    f_sum: float
    g_sum: float
    tail_indicator: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": "pass" if self.verdict else "fail",
            "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack,
            "f_sum": self.f_sum, "g_sum": self.g_sum,
            "tail_indicator": self.tail_indicator,
            "caveat": "sums over retained coefficients only",
        }


def _top_quarter_max(terms: np.ndarray) -> float:
    if terms.size == 0:
        return 0.0
    start = min(3 * terms.size // 4, terms.size - 1)
    return float(np.max(terms[start:]))


def sufficient_condition(f: TruncatedSeries, g: TruncatedSeries, params: ClassParams,
                         target: MoebiusTarget) -> SufficientReport:
    """(1+|B|) sum n M_n |a_n| + (1+|A|) sum |B_n| <= A - B, over retained indices.

    ``tail_indicator`` is the largest summand in the top quarter of either
    sum. It is zero for polynomials of degree below 3/4 of the order and
    small when the dropped terms are likely negligible; it proves nothing.
    """
    n = np.arange(2, f.order + 1)
    f_terms = n * params.multiplier(n) * np.abs(f.coeffs[2:])
    Gk = starlike_kernel(g, params.k)
    g_terms = np.abs(Gk.coeffs[2:])
    f_sum, g_sum = float(f_terms.sum()), float(g_terms.sum())
    lhs = (1 + abs(target.B)) * f_sum + (1 + abs(target.A)) * g_sum
    rhs = target.A - target.B
    tail = max(_top_quarter_max(f_terms), _top_quarter_max(g_terms))
    return SufficientReport(lhs, rhs, bool(lhs <= rhs), f_sum, g_sum, tail)

"""
Class constructions and membership certificates.

The central object is the ratio

    Phi(z) = z F'(z) / G_k(z),

where F is the lambda-mu transform of f and G_k = g_k / z^{k-1} is built
from the rotated product of g. A function f belongs to K_s^(k)(lam, mu, A, B)
when g is starlike of order (k-1)/k and Phi is subordinate to the Moebius
map (1 + A z) / (1 + B z).

All verdicts are sampled certificates on a :class:`~ksclass.disk.DiskGrid`,
never proofs on the open disk.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .disk import DEFAULT_GRID, EPS_STRICT, DiskGrid, grid_values, range_stats, tail_bound
from .errors import InvariantViolation
from .series import TruncatedSeries, differentiate, divide, mul, rotate, shift

SEMANTICS = "sampled sub-disk certificate"
GK_TOL = 1e-10


@dataclass(frozen=True)
class ClassParams:
    k: int = 1
    lam: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or not 1 <= self.k <= 16:
            raise InvariantViolation(f"k must be an integer in [1, 16], got {self.k!r}")
        if not 0.0 <= self.mu <= self.lam <= 1.0:
            raise InvariantViolation(
                f"need 0 <= mu <= lambda <= 1, got lambda={self.lam}, mu={self.mu}"
            )

    @property
    def starlike_order(self) -> float:
        """Order (k-1)/k required of g."""
        return (self.k - 1) / self.k

    def multiplier(self, n):
        """1 + (n-1)(lam - mu + n lam mu), the coefficient factor of F over f."""
        return 1.0 + (n - 1) * (self.lam - self.mu + n * self.lam * self.mu)


@dataclass(frozen=True)
class MoebiusTarget:
    A: float = 1.0
    B: float = -1.0

    def __post_init__(self):
        if not -1.0 <= self.B < self.A <= 1.0:
            raise InvariantViolation(f"need -1 <= B < A <= 1, got A={self.A}, B={self.B}")

    @property
    def phi_prime0(self) -> float:
        return self.A - self.B

    def series(self, order: int) -> TruncatedSeries:
        """(1 + A z)/(1 + B z) = 1 + (A - B) sum (-B)^{n-1} z^n."""
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = 1.0
        n = np.arange(1, order + 1)
        c[1:] = (self.A - self.B) * (-self.B) ** (n - 1)
        return TruncatedSeries(c, "P-candidate")

    def __call__(self, w):
        return (1 + self.A * w) / (1 + self.B * w)


def _pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


@dataclass(frozen=True)
class CheckResult:
    name: str
    margin: float
    witness: complex
    passed: bool
    tail: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "margin": self.margin, "witness": _pair(self.witness),
                "passed": self.passed, "tail": self.tail}


@dataclass(frozen=True)
class CertificateReport:
    """Verdict plus margin; the witness is the argmin of the binding sub-check."""

    verdict: bool
    margin: float
    witness: complex
    checks: tuple[CheckResult, ...]
    grid_label: str
    truncation_order: int
    semantics: str = SEMANTICS

    @classmethod
    def combine(cls, checks, grid: DiskGrid, order: int) -> "CertificateReport":
        checks = tuple(checks)
        binding = min(checks, key=lambda c: c.margin)
        return cls(
            verdict=all(c.passed for c in checks),
            margin=binding.margin,
            witness=binding.witness,
            checks=checks,
            grid_label=grid.label,
            truncation_order=order,
        )

    @property
    def passed(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": "pass" if self.verdict else "fail",
            "margin": self.margin,
            "witness": _pair(self.witness),
            "checks": [c.to_dict() for c in self.checks],
            "grid": self.grid_label,
            "order": self.truncation_order,
            "semantics": self.semantics,
        }


def build_gk(g: TruncatedSeries, k: int) -> TruncatedSeries:
    """g_k(z) = prod_{v<k} eps^{-v} g(eps^v z), eps = exp(2 pi i / k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = g
    for v in range(1, k):
        out = mul(out, rotate(g, 2 * np.pi * v / k))
    return TruncatedSeries(out.coeffs)


def to_Gk(gk: TruncatedSeries, k: int) -> TruncatedSeries:
    """G_k = g_k / z^{k-1}, holding the coefficients B_n."""
    return shift(gk, -(k - 1), tol=GK_TOL).with_tag("G_k")


def starlike_kernel(g: TruncatedSeries, k: int) -> TruncatedSeries:
    """Shorthand for ``to_Gk(build_gk(g, k), k)``."""
    return to_Gk(build_gk(g, k), k)


def lambda_mu_transform(f: TruncatedSeries, params: ClassParams) -> TruncatedSeries:
    """F = (1-lam+mu) f + (lam-mu) z f' + lam mu z^2 f''."""
    n = np.arange(f.order + 1)
    return TruncatedSeries(f.coeffs * params.multiplier(n), f.tag)


def class_ratio(f: TruncatedSeries, g: TruncatedSeries, params: ClassParams) -> TruncatedSeries:
    """Phi = z F'(z) / G_k(z), with Phi(0) = 1 for normalized f and g."""
    F = lambda_mu_transform(f, params)
    Gk = starlike_kernel(g, params.k)
    # z F' / G_k = F' / (G_k / z)
    return divide(differentiate(F), shift(Gk, -1, tol=GK_TOL)).with_tag("Phi")


def _check_from_min_real(name: str, s: TruncatedSeries, grid: DiskGrid, floor: float = 0.0) -> CheckResult:
    st = range_stats(s, grid)
    margin = st.min_real - floor - st.tail_estimate
    return CheckResult(name, float(margin), st.argmin_point, bool(margin > EPS_STRICT), st.tail_estimate)


def certify_positive_real(p: TruncatedSeries, grid: DiskGrid = DEFAULT_GRID) -> CertificateReport:
    if abs(p.coeffs[0] - 1) > 1e-10:
        raise InvariantViolation("p(0) must equal 1")
    check = _check_from_min_real("positive_real", p, grid)
    return CertificateReport.combine([check], grid, p.order)


def certify_starlike_order(g: TruncatedSeries, alpha: float = 0.0,
                           grid: DiskGrid = DEFAULT_GRID) -> CertificateReport:
    """Re(z g'/g) > alpha on the grid, after cancelling the common z."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    ratio = divide(differentiate(g), shift(g, -1, tol=GK_TOL))
    check = _check_from_min_real(f"starlike_order({alpha:g})", ratio, grid, alpha)
    return CertificateReport.combine([check], grid, ratio.order)


def _subordination_check(phi: TruncatedSeries, target: MoebiusTarget, grid: DiskGrid) -> CheckResult:
    if abs(phi.coeffs[0] - 1) > 1e-10:
        raise InvariantViolation("Phi(0) must equal 1")
    pts, vals = grid_values(phi, grid)
    gap = np.abs(vals - 1) - np.abs(target.A - target.B * vals)
    i = int(np.argmax(gap.ravel()))
    tail = tail_bound(phi, grid.r_max)
    # a perturbation t of Phi moves |Phi-1| - |A-B Phi| by at most (1+|B|) t
    margin = -(float(gap.ravel()[i]) + (1 + abs(target.B)) * tail)
    name = f"subordinate_moebius(A={target.A:g},B={target.B:g})"
    return CheckResult(name, margin, complex(pts.ravel()[i]), bool(margin > EPS_STRICT), tail)


def certify_subordinate_moebius(phi: TruncatedSeries, target: MoebiusTarget,
                                grid: DiskGrid = DEFAULT_GRID) -> CertificateReport:
    """|Phi - 1| < |A - B Phi| on the grid.

    This is the form obtained from w = (Phi - 1)/(A - B Phi); it accepts
    the half-plane map as subordinate to itself.
    """
    return CertificateReport.combine([_subordination_check(phi, target, grid)], grid, phi.order)


def certify_subordinate_region(phi: TruncatedSeries, inside_margin: Callable[[np.ndarray], np.ndarray],
                               grid: DiskGrid = DEFAULT_GRID, name: str = "subordinate_region") -> CertificateReport:
    """Subordination to a general convex univalent target via its image region.

    ``inside_margin`` maps an array of values to a real array that is
    positive inside the target's image (a boolean predicate also works,
    but then the margin is only 0 or 1). No tail allowance is applied.
    """
    pts, vals = grid_values(phi, grid)
    m = np.asarray(inside_margin(vals), dtype=float).ravel()
    i = int(np.argmin(m))
    check = CheckResult(name, float(m[i]), complex(pts.ravel()[i]), bool(m[i] > EPS_STRICT))
    return CertificateReport.combine([check], grid, phi.order)


def certify_membership(f: TruncatedSeries, g: TruncatedSeries, params: ClassParams,
                       target: MoebiusTarget, grid: DiskGrid = DEFAULT_GRID,
                       alpha: float | None = None) -> CertificateReport:
    """Composite certificate for f in K_s^(k)(lam, mu, A, B) with the given g.

    ``alpha`` overrides the starlikeness order demanded of g, which
    defaults to (k-1)/k.
    """
    alpha = params.starlike_order if alpha is None else alpha
    g_report = certify_starlike_order(g, alpha, grid)
    phi = class_ratio(f, g, params)
    sub = _subordination_check(phi, target, grid)
    return CertificateReport.combine([g_report.checks[0], sub], grid, phi.order)


def certify_close_to_convex(f: TruncatedSeries, gstar: TruncatedSeries,
                            grid: DiskGrid = DEFAULT_GRID) -> CertificateReport:
    """Re(z f'/gstar) > 0; gstar must be certified starlike by the caller."""
    ratio = divide(differentiate(f), shift(gstar, -1, tol=GK_TOL))
    check = _check_from_min_real("close_to_convex", ratio, grid)
    return CertificateReport.combine([check], grid, ratio.order)

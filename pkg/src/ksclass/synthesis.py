"""
Member synthesis, operator inversion and the extremal-function catalog.

Members of K_s^(k)(lam, mu, phi) are produced from the coefficient
recurrence

    n a_n [1 + (n-1)(lam - mu + n lam mu)] = B_n + sum_{j=1}^{n-1} p_j B_{n-j},

i.e. from z F' = p G_k, with p = phi(w) for an explicit Schwarz function w.
"""
from __future__ import annotations

import cmath
import re
from dataclasses import dataclass

import numpy as np

from .classes import ClassParams, MoebiusTarget, starlike_kernel
from .errors import DegenerateParams, InvalidGamma, UnknownCatalogName
from .series import DEFAULT_ORDER, TruncatedSeries, binomial_series, divide, mul, rotate, shift

ROOT_TOL = 1e-12


def solve_coefficients(p: TruncatedSeries, g: TruncatedSeries, params: ClassParams,
                       order: int) -> TruncatedSeries:
    """The normalized f with z F'(z) = p(z) G_k(z), up to z^order.

    ``p`` needs order >= order - 1 and ``g`` needs order >= order + k - 1.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if abs(p.coeffs[0] - 1) > 1e-10:
        raise ValueError("p(0) must equal 1")
    Gk = starlike_kernel(g, params.k)
    if Gk.order < order or p.order < order - 1:
        raise ValueError(
            f"inputs too short for order {order}: p has order {p.order}, G_k has order {Gk.order}"
        )
    # p_order never meets B_0 = 0, so zero-padding p is exact
    p_pad = TruncatedSeries.from_coeffs(p.coeffs[:order], order)
    zFp = mul(p_pad, Gk.truncate(order))
    n = np.arange(1, order + 1)
    a = np.zeros(order + 1, dtype=np.complex128)
    a[1:] = zFp.coeffs[1:] / (n * params.multiplier(n))
    a[1] = 1.0
    return TruncatedSeries(a, "normalized")


def invert_lambda_mu(F: TruncatedSeries, params: ClassParams) -> TruncatedSeries:
    """a_n = F_n / [1 + (n-1)(lam - mu + n lam mu)].

    The n = 0 multiplier 1 - lam + mu vanishes at lam = 1, mu = 0; the
    constant term then maps to 0, as it must for normalized input.
    """
    n = np.arange(F.order + 1)
    m = params.multiplier(n)
    out = np.divide(F.coeffs, m, out=np.zeros_like(F.coeffs), where=m != 0)
    return TruncatedSeries(out, F.tag)


def bernardi_transform(f: TruncatedSeries, gamma: float) -> TruncatedSeries:
    """(1+gamma) z^{-gamma} int_0^z t^{gamma-1} f(t) dt, coefficientwise.

    ``gamma = inf`` is accepted as the identity limit.
    """
    if not gamma >= 0:
        raise InvalidGamma(f"gamma must be >= 0, got {gamma}")
    if np.isinf(gamma):
        return f
    n = np.arange(f.order + 1)
    mult = np.ones(f.order + 1)
    mult[1:] = (1 + gamma) / (n[1:] + gamma)
    return TruncatedSeries(f.coeffs * mult, f.tag)


@dataclass(frozen=True)
class OperatorDecomposition:
    """alpha, beta of G = f + alpha z f' + beta z^2 f'', and the factorization
    delta + nu = alpha - beta, delta * nu = beta."""

    alpha: float
    beta: float
    delta: complex
    nu: complex
    real_nonneg: bool

    def vieta_residual(self) -> float:
        return max(abs(self.delta + self.nu - (self.alpha - self.beta)),
                   abs(self.delta * self.nu - self.beta))


def decompose_delta_nu(params: ClassParams) -> OperatorDecomposition:
    lam, mu = params.lam, params.mu
    scale = 1 - lam + mu
    if scale <= ROOT_TOL:
        raise DegenerateParams(f"1 - lambda + mu = {scale:g} leaves no decomposition")
    alpha = (lam - mu) / scale
    beta = lam * mu / scale
    s = alpha - beta
    root = cmath.sqrt(s * s - 4 * beta)
    delta, nu = (s + root) / 2, (s - root) / 2
    real_nonneg = all(abs(r.imag) <= ROOT_TOL and r.real >= -ROOT_TOL for r in (delta, nu))
    return OperatorDecomposition(alpha, beta, delta, nu, real_nonneg)


def delta_nu_chain(F: TruncatedSeries, params: ClassParams) -> TruncatedSeries:
    """Two Bernardi stages, gamma = 1/nu then gamma = 1/delta, applied to F.

    The result equals (1+delta)(1+nu)(1-lam+mu) f where F is the
    lambda-mu transform of f; since (1+delta)(1+nu) = 1 + alpha that
    scalar is 1. A zero root gives the identity stage.
    """
    dec = decompose_delta_nu(params)
    if not dec.real_nonneg:
        raise DegenerateParams(
            f"delta, nu = {dec.delta:.6g}, {dec.nu:.6g} are not both real and nonnegative"
        )
    G = F
    for root in (dec.nu.real, dec.delta.real):
        gamma = np.inf if root <= ROOT_TOL else 1.0 / root
        G = bernardi_transform(G, gamma)
    return G


# --- catalog ---------------------------------------------------------------

CATALOG_NAMES = ("koebe", "koebe_sqrt2", "halfplane", "lemma21_even",
                 "s_star_half_example", "gen_koebe", "moebius", "identity")


def catalog(name: str, order: int = DEFAULT_ORDER, aux=None) -> TruncatedSeries:
    """Named extremal and test functions, truncated at ``order``.

    ``gen_koebe`` takes the order alpha of starlikeness as ``aux``;
    ``moebius`` takes the pair (A, B).
    """
    n = np.arange(order + 1)
    if name == "koebe":
        return TruncatedSeries(n.astype(float), "normalized")
    if name == "koebe_sqrt2":
        c = (n % 2 == 1).astype(float)
        return TruncatedSeries(c, "normalized")
    if name == "halfplane":
        c = np.full(order + 1, 2.0)
        c[0] = 1.0
        return TruncatedSeries(c, "P-candidate")
    if name == "lemma21_even":
        c = np.where(n % 2 == 0, 2.0, 0.0)
        c[0] = 1.0
        return TruncatedSeries(c, "P-candidate")
    if name == "s_star_half_example":
        return TruncatedSeries.from_coeffs([0, 1, -1 / 3], order, "normalized")
    if name == "identity":
        return TruncatedSeries.monomial(1, order, tag="normalized")
    if name == "gen_koebe":
        alpha = 0.0 if aux is None else float(aux)
        return shift(binomial_series(2 * (1 - alpha), order - 1), 1).with_tag("normalized")
    if name == "moebius":
        A, B = (1.0, -1.0) if aux is None else aux
        return MoebiusTarget(float(A), float(B)).series(order)
    raise UnknownCatalogName(name)


_CALL = re.compile(r"^\s*([a-z_0-9]+)\s*(?:\((.*)\)|:(.*))?\s*$")


def parse_catalog(text: str, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Resolve ``koebe``, ``catalog:gen_koebe(0.5)``, ``moebius:1,-1`` and similar."""
    if text.startswith("catalog:"):
        text = text[len("catalog:"):]
    m = _CALL.match(text)
    if not m or m.group(1) not in CATALOG_NAMES:
        raise UnknownCatalogName(text)
    raw = m.group(2) if m.group(2) is not None else m.group(3)
    args = [float(x) for x in raw.split(",")] if raw else []
    aux = None
    if args:
        aux = args[0] if len(args) == 1 else tuple(args)
    return catalog(m.group(1), order, aux)


# --- random members --------------------------------------------------------

def blaschke_witness(c: complex, order: int) -> TruncatedSeries:
    """w(z) = z (c + z) / (1 + conj(c) z); w(0) = 0 and |w| < 1 on the disk."""
    if abs(c) >= 1:
        raise ValueError("|c| must be < 1")
    num = TruncatedSeries.from_coeffs([0, c, 1], order)
    den = TruncatedSeries.from_coeffs([1, np.conj(c)], order)
    return divide(num, den).with_tag("w")


def compose_moebius(w: TruncatedSeries, target: MoebiusTarget) -> TruncatedSeries:
    """phi(w) = (1 + A w)/(1 + B w) for w(0) = 0."""
    return divide(1 + target.A * w, 1 + target.B * w).with_tag("P-candidate")


def schwarz_to_caratheodory(w: TruncatedSeries) -> TruncatedSeries:
    """h = (1 + w)/(1 - w), carrying the coefficients d_n."""
    return divide(1 + w, 1 - w).with_tag("P-candidate")


def random_disk_point(rng: np.random.Generator, rmax: float = 0.95) -> complex:
    r = rmax * np.sqrt(rng.uniform())
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def random_target(rng: np.random.Generator, min_gap: float = 0.25) -> MoebiusTarget:
    while True:
        A, B = sorted(rng.uniform(-1, 1, size=2))[::-1]
        if A - B >= min_gap:
            return MoebiusTarget(float(A), float(B))


def random_polynomial_starlike(rng: np.random.Generator, alpha: float, order: int,
                               degree: int = 6, fill: float | None = None) -> TruncatedSeries:
    """z + sum b_n z^n with sum (n - alpha)|b_n| = fill (1 - alpha), fill < 1.

    That coefficient condition is sufficient for starlikeness of order alpha.
    """
    fill = rng.uniform(0.05, 0.9) if fill is None else fill
    b = rng.normal(size=degree - 1) + 1j * rng.normal(size=degree - 1)
    n = np.arange(2, degree + 1)
    b *= fill * (1 - alpha) / np.sum((n - alpha) * np.abs(b))
    return TruncatedSeries.from_coeffs(np.concatenate([[0, 1], b]), order, "normalized")


def random_starlike(rng: np.random.Generator, alpha: float, order: int) -> TruncatedSeries:
    """Either a rotated generalized Koebe function of order >= alpha or a
    polynomial from :func:`random_polynomial_starlike`."""
    if rng.uniform() < 0.5:
        a = alpha + (1 - alpha) * rng.uniform(0.0, 0.9)
        g = catalog("gen_koebe", order, a)
        return rotate(g, 2 * np.pi * rng.uniform()).with_tag("normalized")
    return random_polynomial_starlike(rng, alpha, order)


def random_sufficient_pair(rng: np.random.Generator, params: ClassParams, target: MoebiusTarget,
                           order: int, degree: int = 6) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Random polynomial (f, g) meeting the coefficient-sum sufficient condition.

    g is drawn starlike of order (k-1)/k and then shrunk until its B_n use
    at most a random share of A - B; f fills a random share of what remains.
    """
    budget = target.A - target.B
    share = rng.uniform(0.1, 0.8)
    g = random_polynomial_starlike(rng, params.starlike_order, order, degree)
    tail = g.coeffs[2:].copy()
    while True:
        Gk = starlike_kernel(g, params.k)
        g_cost = (1 + abs(target.A)) * float(np.abs(Gk.coeffs[2:]).sum())
        if g_cost <= share * budget:
            break
        tail = tail / 2
        g = TruncatedSeries(np.concatenate([[0, 1], tail]), "normalized")
    a = rng.normal(size=degree - 1) + 1j * rng.normal(size=degree - 1)
    n = np.arange(2, degree + 1)
    f_cost = (1 + abs(target.B)) * float(np.sum(n * params.multiplier(n) * np.abs(a)))
    a *= rng.uniform(0.5, 1.0) * (budget - g_cost) / f_cost
    f = TruncatedSeries.from_coeffs(np.concatenate([[0, 1], a]), order, "normalized")
    return f, g


@dataclass(frozen=True)
class Member:
    f: TruncatedSeries
    g: TruncatedSeries
    p: TruncatedSeries
    w: TruncatedSeries
    params: ClassParams
    target: MoebiusTarget


def synthesize_member(params: ClassParams, target: MoebiusTarget, order: int,
                      g: TruncatedSeries | None = None, c: complex = 0.3,
                      rng: np.random.Generator | None = None) -> Member:
    """A member built from p = phi(w), w(z) = z (c + z)/(1 + conj(c) z).

    When ``rng`` is given, ``c`` and (if absent) ``g`` are drawn from it.
    """
    if rng is not None:
        c = random_disk_point(rng)
        if g is None:
            g = random_starlike(rng, params.starlike_order, order + params.k - 1)
    if g is None:
        g = catalog("gen_koebe", order + params.k - 1, params.starlike_order)
    w = blaschke_witness(c, order)
    p = compose_moebius(w, target)
    f = solve_coefficients(p, g, params, order)
    return Member(f, g, p, w, params, target)


__all__ = [
    "solve_coefficients", "invert_lambda_mu", "bernardi_transform", "OperatorDecomposition",
    "decompose_delta_nu", "delta_nu_chain", "catalog", "parse_catalog", "CATALOG_NAMES",
    "blaschke_witness", "compose_moebius", "schwarz_to_caratheodory", "random_disk_point",
    "random_target", "random_polynomial_starlike", "random_starlike", "random_sufficient_pair",
    "Member",
    "synthesize_member",
]

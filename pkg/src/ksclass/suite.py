"""Seeded randomized property suite.

Each property is a function ``(rng, ctx) -> slack`` where a trial passes when
slack >= 0; tolerances are folded into the slack. Trial ``t`` of property
``i`` draws from ``default_rng([seed, i, t])`` so rows do not depend on
each other or on execution order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import (
    FSBoundInputs, PhiExpansion, a2_a3_formulas, fekete_szego_bound,
    fekete_szego_functional, lemma21_bound, lemma22_bound, sufficient_condition,
    verify_coefficient_bounds,
)
from .classes import (
    ClassParams, MoebiusTarget, build_gk, certify_close_to_convex, certify_membership,
    certify_starlike_order, class_ratio, lambda_mu_transform, starlike_kernel,
)
from .disk import DEFAULT_GRID, EPS_STRICT, DiskGrid, evaluate
from .series import (
    TruncatedSeries, add, binomial_series, differentiate, divide, mul, rotate,
)
from .synthesis import (
    blaschke_witness, catalog, compose_moebius, decompose_delta_nu, invert_lambda_mu,
    random_disk_point, random_starlike, random_sufficient_pair, random_target,
    schwarz_to_caratheodory, synthesize_member,
)

DEFAULT_SEED = 42
DEFAULT_TRIALS = 200
CERT_ORDER = 2048

LAMBDA_MU_LATTICE = ((0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (0.5, 0.5), (1.0, 0.5))


@dataclass
class Context:
    grid: DiskGrid = DEFAULT_GRID
    order: int = CERT_ORDER


def _random_series(rng, order=None, c0=None):
    n = int(rng.integers(4, 65)) if order is None else order
    c = rng.uniform(-1, 1, n + 1) + 1j * rng.uniform(-1, 1, n + 1)
    c /= np.maximum(1.0, np.abs(c))
    if c0 is not None:
        c[0] = c0
    return TruncatedSeries(c)


def _random_normalized(rng, order=32):
    c = _random_series(rng, order).coeffs.copy()
    c[0], c[1] = 0, 1
    return TruncatedSeries(c, "normalized")


def _random_params(rng, k_max=3):
    k = int(rng.integers(1, k_max + 1))
    lam, mu = LAMBDA_MU_LATTICE[int(rng.integers(len(LAMBDA_MU_LATTICE)))]
    return ClassParams(k, lam, mu)


def ring_axioms(rng, ctx):
    n = int(rng.integers(4, 65))
    a, b, c = (_random_series(rng, n) for _ in range(3))
    res = max(
        mul(a, b).max_abs_diff(mul(b, a)),
        mul(mul(a, b), c).max_abs_diff(mul(a, mul(b, c))),
        mul(a, add(b, c)).max_abs_diff(add(mul(a, b), mul(a, c))),
    )
    return 1e-12 - res


def divide_roundtrip(rng, ctx):
    a = _random_series(rng, 64)
    b = _random_series(rng, 64).coeffs.copy()
    # |b_0| > sum |b_n|: no zeros on the closed disk, so 1/b has bounded coefficients
    b[0] = rng.uniform(1.2, 3.0) * np.abs(b[1:]).sum()
    b = TruncatedSeries(b)
    return 1e-10 - mul(divide(a, b), b).max_abs_diff(a)


def product_rule(rng, ctx):
    a, b = _random_series(rng, 48), _random_series(rng, 48)
    lhs = differentiate(mul(a, b))
    rhs = add(mul(differentiate(a), b), mul(a, differentiate(b)))
    return 1e-12 - lhs.max_abs_diff(rhs)


def rotate_composition(rng, ctx):
    a = _random_series(rng)
    t1, t2 = rng.uniform(-np.pi, np.pi, 2)
    return 1e-13 - rotate(rotate(a, t1), t2).max_abs_diff(rotate(a, t1 + t2))


def binomial_inverse(rng, ctx):
    c = rng.uniform(0.1, 3.0)
    prod = mul(binomial_series(c, 64), binomial_series(-c, 64))
    return 1e-10 - prod.max_abs_diff(TruncatedSeries.constant(1.0, 64))


def horner_vs_naive(rng, ctx):
    a = _random_series(rng)
    z = random_disk_point(rng, 0.99)
    naive = sum(c * z ** n for n, c in enumerate(a.coeffs))
    return 1e-13 - abs(evaluate(a, z) - naive)


def gk_cyclic_relabel(rng, ctx):
    k = int(rng.integers(1, 9))
    g = random_starlike(rng, (k - 1) / k, 64)
    shifted = None
    for v in range(k):
        factor = rotate(g, 2 * np.pi * ((v + 1) % k) / k)
        shifted = factor if shifted is None else mul(shifted, factor)
    return 1e-12 - build_gk(g, k).max_abs_diff(shifted)


def gk_starlike(rng, ctx):
    k = int(rng.integers(1, 5))
    g = random_starlike(rng, (k - 1) / k, ctx.order)
    return certify_starlike_order(starlike_kernel(g, k), 0.0, ctx.grid).margin - EPS_STRICT


def recurrence_roundtrip(rng, ctx):
    params = _random_params(rng)
    target = random_target(rng)
    m = synthesize_member(params, target, 32, rng=rng)
    return 1e-10 - class_ratio(m.f, m.g, params).max_abs_diff(m.p)


def lambda_mu_roundtrip(rng, ctx):
    params = _random_params(rng)
    f = _random_normalized(rng)
    return 1e-12 - invert_lambda_mu(lambda_mu_transform(f, params), params).max_abs_diff(f)


def vieta(rng, ctx):
    lam = rng.uniform(0, 1)
    mu = rng.uniform(0, lam)
    if 1 - lam + mu <= 1e-9:
        return 1e-12
    return 1e-12 - decompose_delta_nu(ClassParams(1, lam, mu)).vieta_residual()


def subordination_majorization(rng, ctx):
    params = _random_params(rng)
    target = random_target(rng)
    m = synthesize_member(params, target, 32, rng=rng)
    phi = class_ratio(m.f, m.g, params)
    return target.A - target.B + 1e-9 - float(np.max(np.abs(phi.coeffs[1:])))


def members_certified(rng, ctx):
    params = _random_params(rng)
    target = random_target(rng)
    m = synthesize_member(params, target, ctx.order, c=0.3)
    report = certify_membership(m.f, m.g, params, target, ctx.grid)
    F = lambda_mu_transform(m.f, params)
    ctc = certify_close_to_convex(F, starlike_kernel(m.g, params.k), ctx.grid)
    if report.verdict and not ctc.verdict:
        return ctc.margin - EPS_STRICT
    return report.margin - EPS_STRICT


def coefficient_domination(rng, ctx):
    params = _random_params(rng)
    target = random_target(rng)
    m = synthesize_member(params, target, 16, rng=rng)
    return verify_coefficient_bounds(m.f, params, PhiExpansion.from_moebius(target), 16).worst_slack + 1e-9


def lemma21_domination(rng, ctx):
    p = compose_moebius(blaschke_witness(random_disk_point(rng), 4), MoebiusTarget(1, -1))
    return min(lemma21_bound(w) + 1e-9 - abs(p[2] - w * p[1] ** 2) for w in (0, 0.25, 0.5, 1))


def lemma22_domination(rng, ctx):
    choice = int(rng.integers(3))
    if choice == 0:
        g = catalog("koebe", 4)
    elif choice == 1:
        g = catalog("koebe_sqrt2", 4)
    else:
        g = catalog("gen_koebe", 4, rng.uniform(0, 1))
    return min(lemma22_bound(w) + 1e-9 - abs(g[3] - w * g[2] ** 2) for w in np.linspace(0, 1, 9))


def sufficient_implies_membership(rng, ctx):
    params = _random_params(rng)
    target = random_target(rng)
    f, g = random_sufficient_pair(rng, params, target, ctx.order)
    if not sufficient_condition(f, g, params, target).verdict:
        return -1.0
    return certify_membership(f, g, params, target, ctx.grid).margin - EPS_STRICT


def fekete_szego_crosscheck(rng, ctx, findings):
    """Pass/fail is the a_2, a_3 formula cross-check; bound excesses
    are collected in ``findings``."""
    params = ClassParams(2, 0.0, 0.0)
    target = random_target(rng)
    phi = PhiExpansion.from_moebius(target)
    m = synthesize_member(params, target, 8, rng=rng)
    h = schwarz_to_caratheodory(m.w)
    Gk = starlike_kernel(m.g, 2)
    a2, a3 = a2_a3_formulas(Gk[2], Gk[3], phi, h[1], h[2], params)
    for delta in (0.0, 0.5, 1.0):
        bound = fekete_szego_bound(params, phi, FSBoundInputs(delta, h[1]))
        findings.append(bound - fekete_szego_functional(m.f, delta))
    return 1e-9 - max(abs(a2 - m.f[2]), abs(a3 - m.f[3]))


PROPERTIES: tuple[tuple[str, Callable], ...] = (
    ("series.ring_axioms", ring_axioms),
    ("series.divide_roundtrip", divide_roundtrip),
    ("series.product_rule", product_rule),
    ("series.rotate_composition", rotate_composition),
    ("series.binomial_inverse", binomial_inverse),
    ("disk.horner_vs_naive", horner_vs_naive),
    ("classes.gk_cyclic_relabel", gk_cyclic_relabel),
    ("classes.gk_starlike", gk_starlike),
    ("synthesis.recurrence_roundtrip", recurrence_roundtrip),
    ("synthesis.lambda_mu_roundtrip", lambda_mu_roundtrip),
    ("synthesis.vieta", vieta),
    ("synthesis.subordination_majorization", subordination_majorization),
    ("synthesis.members_certified", members_certified),
    ("bounds.coefficient_domination", coefficient_domination),
    ("bounds.lemma21_domination", lemma21_domination),
    ("bounds.lemma22_domination", lemma22_domination),
    ("bounds.sufficient_implies_membership", sufficient_implies_membership),
    ("bounds.fekete_szego_crosscheck", fekete_szego_crosscheck),
)


def run_suite(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
              grid: DiskGrid = DEFAULT_GRID, order: int = CERT_ORDER) -> dict:
    """One row per property with pass/fail counts and worst slack."""
    ctx = Context(grid, order)
    rows = []
    if trials > 0:
        for i, (name, prop) in enumerate(PROPERTIES):
            slacks, findings = [], []
            for t in range(trials):
                rng = np.random.default_rng([seed, i, t])
                if prop is fekete_szego_crosscheck:
                    slacks.append(float(prop(rng, ctx, findings)))
                else:
                    slacks.append(float(prop(rng, ctx)))
            failed = sum(s < 0 for s in slacks)
            row = {"name": name, "trials": trials, "passed": trials - failed,
                   "failed": failed, "worst_slack": min(slacks)}
            if findings:
                row["fs_bound_violations"] = sum(s < -1e-6 for s in findings)
                row["fs_bound_worst_slack"] = min(findings)
            rows.append(row)
    return {
        "seed": seed,
        "trials": trials,
        "order": order,
        "grid": grid.to_dict(),
        "all_passed": all(r["failed"] == 0 for r in rows),
        "properties": rows,
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"

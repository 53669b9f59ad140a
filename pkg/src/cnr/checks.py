"""Invariant suites behind the `check` subcommand.

Each suite draws seeded random instances and verifies the structural
identities of the range machinery: containment in the classical range,
diagonal translation, singleton characterization, realness, continuity,
transpose and conjugation invariance, duality certification, the
decomposition equivalence, seminorm axioms, and elliptope membership of
induced correlation matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore, metrics, ucrange
from .decompose import (
    decompose as run_decompose,
    nonnegativity_test,
    sos_certificate,
    verify_certificate,
)
from .crange import SolveConfig, classical_support, range_boundary, support_direction
from .elliptope import validate_correlation
from .errors import CnrError, NotDecomposableError

SUITES = ("basic", "duality", "decompose", "metrics", "ucrange")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _cfg(seed: int) -> SolveConfig:
    return SolveConfig(seed=seed)


def _spread_lower_bound(a: np.ndarray) -> tuple[float, float]:
    """Largest off-diagonal pair weight and its aligned support direction."""
    n = a.shape[0]
    best, phi = 0.0, 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            w = abs(a[i, j]) + abs(a[j, i])
            if w > best:
                best = w
                phi = (np.angle(a[i, j]) + np.angle(a[j, i])) / 2.0
    return best, phi


def basic_suite(n: int, seed: int, count: int = 12, m: int = 12) -> list[CheckResult]:
    """Support-function identities on seeded random matrices."""
    rng = np.random.default_rng([seed, n])
    cfg = _cfg(seed)
    results: list[CheckResult] = []
    worst = {
        "containment_in_classical_range": 0.0,
        "mean_diagonal_membership": 0.0,
        "diagonal_translation": 0.0,
        "singleton_diagonal": 0.0,
        "offdiagonal_spread": 0.0,
        "real_range_criterion": 0.0,
        "continuity_lipschitz": 0.0,
        "transpose_invariance": 0.0,
        "conjugation_invariance": 0.0,
        "radius_vs_shifted_classical": 0.0,
    }
    thetas = 2.0 * math.pi * np.arange(m) / m
    for case in range(count):
        a = matcore.ginibre_random(n, rng)
        c = cfg.derive(case)
        rb = range_boundary(a, m, c)
        hs = rb.supports()

        cls = np.array([classical_support(a, t) for t in thetas])
        worst["containment_in_classical_range"] = max(
            worst["containment_in_classical_range"], float(np.max(hs - cls))
        )

        tau = matcore.normalized_trace(a)
        proj = np.cos(thetas) * tau.real + np.sin(thetas) * tau.imag
        worst["mean_diagonal_membership"] = max(
            worst["mean_diagonal_membership"], float(np.max(proj - hs))
        )

        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        ad = a + np.diag(d)
        taud = complex(np.mean(d))
        hs_d = range_boundary(ad, m, c.derive(1)).supports()
        shift = np.cos(thetas) * taud.real + np.sin(thetas) * taud.imag
        worst["diagonal_translation"] = max(
            worst["diagonal_translation"], float(np.max(np.abs(hs_d - hs - shift)))
        )

        diag_a = np.diag(np.diag(a))
        hs_diag = range_boundary(diag_a, m, c.derive(2)).supports()
        tau_d = matcore.normalized_trace(diag_a)
        proj_d = np.cos(thetas) * tau_d.real + np.sin(thetas) * tau_d.imag
        worst["singleton_diagonal"] = max(
            worst["singleton_diagonal"], float(np.max(np.abs(hs_diag - proj_d)))
        )

        w, phi = _spread_lower_bound(a)
        if w >= 0.1:
            res = support_direction(a, phi, c.derive(3))
            spread = res.value - (math.cos(phi) * tau.real + math.sin(phi) * tau.imag)
            worst["offdiagonal_spread"] = max(
                worst["offdiagonal_spread"], w / n - spread
            )

        s, k = matcore.hermitian_parts(a)
        dr = rng.standard_normal(n)
        real_a = s + 1j * np.diag(dr - np.mean(dr))
        up = support_direction(real_a, math.pi / 2.0, c.derive(4)).value
        dn = support_direction(real_a, 3.0 * math.pi / 2.0, c.derive(5)).value
        worst["real_range_criterion"] = max(worst["real_range_criterion"], up + dn)
        up_g = support_direction(a, math.pi / 2.0, c.derive(6)).value
        dn_g = support_direction(a, 3.0 * math.pi / 2.0, c.derive(7)).value
        if up_g + dn_g <= 1e-8:
            results.append(
                CheckResult(
                    "real_range_criterion_generic",
                    False,
                    "generic matrix reported a real range",
                )
            )

        e = 0.1 * matcore.ginibre_random(n, rng)
        hs_e = range_boundary(a + e, m, c.derive(8)).supports()
        worst["continuity_lipschitz"] = max(
            worst["continuity_lipschitz"],
            float(np.max(np.abs(hs_e - hs))) - matcore.operator_norm(e),
        )

        hs_t = range_boundary(a.T, m, c.derive(9)).supports()
        worst["transpose_invariance"] = max(
            worst["transpose_invariance"], float(np.max(np.abs(hs_t - hs)))
        )

        phases = np.exp(2j * np.pi * rng.random(n))
        perm = rng.permutation(n)
        u = np.diag(phases)[:, perm]
        hs_u = range_boundary(u.conj().T @ a @ u, m, c.derive(10)).supports()
        worst["conjugation_invariance"] = max(
            worst["conjugation_invariance"], float(np.max(np.abs(hs_u - hs)))
        )

        d0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        d0 -= np.mean(d0)
        cls_shift = np.array([classical_support(a + np.diag(d0), t) for t in thetas])
        worst["radius_vs_shifted_classical"] = max(
            worst["radius_vs_shifted_classical"], float(np.max(hs - cls_shift))
        )

    bounds = {
        "containment_in_classical_range": 1e-9,
        "mean_diagonal_membership": 1e-9,
        "diagonal_translation": 1e-8,
        "singleton_diagonal": 1e-9,
        "offdiagonal_spread": 1e-9,
        "real_range_criterion": 1e-8,
        "continuity_lipschitz": 1e-9,
        "transpose_invariance": 1e-8,
        "conjugation_invariance": 1e-8,
        "radius_vs_shifted_classical": 1e-8,
    }
    for name, val in worst.items():
        results.append(
            CheckResult(name, val <= bounds[name], f"worst {val:.3e} (bound {bounds[name]:.0e})")
        )
    return results


def duality_suite(n: int, seed: int, count: int = 25) -> list[CheckResult]:
    """Gap closure rate and exact dual feasibility on random directions."""
    rng = np.random.default_rng([seed, n, 2])
    cfg = _cfg(seed)
    gaps = []
    lam_min = 0.0
    neg_gap = 0.0
    align = 0.0
    for case in range(count):
        z = matcore.ginibre_random(n, rng)
        a = (z + z.conj().T) / 2.0 if case % 2 == 0 else z
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        res = support_direction(a, theta, cfg.derive(case))
        gaps.append(res.gap)
        h = (np.cos(theta) * (a + a.conj().T) / 2.0 + np.sin(theta) * (a - a.conj().T) / 2.0j)
        lam_min = min(lam_min, matcore.lambda_min(np.diag(res.dual_y) - h))
        neg_gap = min(neg_gap, res.gap)
        align = max(
            align,
            abs(
                math.cos(theta) * res.witness_point.real
                + math.sin(theta) * res.witness_point.imag
                - res.value
            ),
        )
        b = res.correlation()
        validate_correlation(b.matrix)
    rate = float(np.mean(np.asarray(gaps) <= 1e-8))
    return [
        CheckResult("gap_closure_rate", rate >= 0.95, f"{rate * 100:.1f}% of {count} within 1e-8"),
        CheckResult("dual_feasibility", lam_min >= -1e-10, f"min eigenvalue {lam_min:.3e}"),
        CheckResult("gap_nonnegative", neg_gap >= -1e-10, f"min gap {neg_gap:.3e}"),
        CheckResult("witness_alignment", align <= 1e-10, f"worst {align:.3e}"),
    ]


def decompose_suite(n: int, seed: int, count: int = 40) -> list[CheckResult]:
    """Nonnegativity verdict == decomposability, margins matched, sound
    certificates."""
    rng = np.random.default_rng([seed, n, 3])
    cfg = _cfg(seed)
    agree = True
    margin_dev = 0.0
    cert_res = 0.0
    recon = 0.0
    psd_floor = 0.0
    for case in range(count):
        z = matcore.ginibre_random(n, rng)
        a = (z + z.conj().T) / 2.0 + rng.uniform(-1.0, 3.0) * np.eye(n)
        nn = nonnegativity_test(a, cfg.derive(case))
        try:
            dec = run_decompose(a, cfg.derive(case))
            ok = True
            recon = max(recon, matcore.frobenius(dec.P + dec.D - a))
            psd_floor = min(psd_floor, matcore.lambda_min(dec.P))
            margin_dev = max(margin_dev, abs(dec.margin - nn.margin))
            cert = sos_certificate(dec)
            rep = verify_certificate(a, cert)
            if not rep.valid:
                agree = False
            cert_res = max(cert_res, rep.entry_max)
        except NotDecomposableError:
            ok = False
        if ok != nn.nonnegative:
            agree = False
    return [
        CheckResult("verdict_equivalence", agree, f"{count} instances"),
        CheckResult("margin_agreement", margin_dev <= 1e-8, f"worst {margin_dev:.3e}"),
        CheckResult("reconstruction", recon <= 1e-9, f"worst {recon:.3e}"),
        CheckResult("split_psd", psd_floor >= -1e-9, f"floor {psd_floor:.3e}"),
        CheckResult("certificate_residual", cert_res <= 1e-8, f"worst {cert_res:.3e}"),
    ]


def metrics_suite(n: int, seed: int, count: int = 8) -> list[CheckResult]:
    """Seminorm axioms and the radius bracket."""
    rng = np.random.default_rng([seed, n, 4])
    cfg = _cfg(seed)
    homog = 0.0
    triangle = 0.0
    bracket = 0.0
    shift_dev = 0.0
    for case in range(count):
        t1 = matcore.ginibre_random(n, rng)
        t2 = matcore.ginibre_random(n, rng)
        c = float(rng.uniform(0.2, 2.0))
        v1 = metrics.correlation_seminorm(t1)
        homog = max(homog, abs(metrics.correlation_seminorm(c * t1) - c * v1))
        triangle = max(
            triangle,
            metrics.correlation_seminorm(t1 + t2) - v1 - metrics.correlation_seminorm(t2),
        )
        from .crange import radius as crad

        w = crad(t1, 48, cfg.derive(case))
        bracket = max(bracket, w - v1, (1.0 / (4 * n + 2)) * v1 - w)
        d0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        d0 -= np.mean(d0)
        w_shift = crad(t1 + np.diag(d0), 48, cfg.derive(1000 + case))
        shift_dev = max(shift_dev, abs(w_shift - w))
    zero_on = metrics.correlation_seminorm(np.diag(np.arange(1, n + 1) - (n + 1) / 2).astype(complex))
    return [
        CheckResult("seminorm_homogeneity", homog <= 2e-6, f"worst {homog:.3e}"),
        CheckResult("seminorm_triangle", triangle <= 2e-6, f"worst {triangle:.3e}"),
        CheckResult("seminorm_zero_on_traceless_diagonals", zero_on <= 1e-10, f"{zero_on:.3e}"),
        CheckResult("radius_seminorm_bracket", bracket <= 1e-6, f"worst violation {bracket:.3e}"),
        CheckResult("radius_shift_invariance", shift_dev <= 1e-7, f"worst {shift_dev:.3e}"),
    ]


def ucrange_suite(n: int, seed: int, count: int = 60) -> list[CheckResult]:
    """Induced correlation matrices stay in the elliptope; sampled induced
    ranges respect the certified half-planes."""
    rng = np.random.default_rng([seed, n, 5])
    cfg = _cfg(seed)
    in_elliptope = True
    for _ in range(count):
        k = int(rng.integers(1, 9))
        kind = int(rng.integers(0, 3))
        if kind == 0:
            tup = ucrange.haar_tuple(n, k, rng)
        elif kind == 1:
            tup = ucrange.phase_tuple(n, k, rng)
        else:
            tup = ucrange.permutation_tuple(n, k, rng)
        try:
            ucrange.induced_correlation(tup)
        except CnrError:
            in_elliptope = False
    t = matcore.ginibre_random(n, rng)
    cmp_res = ucrange.compare_ranges(t, cfg, m=32, samples=300, rng=rng)
    return [
        CheckResult("induced_in_elliptope", in_elliptope, f"{count} tuples"),
        CheckResult(
            "induced_range_inclusion",
            cmp_res.inclusion_margin >= -1e-8,
            f"margin {cmp_res.inclusion_margin:.3e}",
        ),
    ]


def run_suite(suite: str, n: int, seed: int, count: int | None = None) -> list[CheckResult]:
    if suite == "basic":
        return basic_suite(n, seed, count or 12)
    if suite == "duality":
        return duality_suite(n, seed, count or 25)
    if suite == "decompose":
        return decompose_suite(n, seed, count or 40)
    if suite == "metrics":
        return metrics_suite(n, seed, count or 8)
    if suite == "ucrange":
        return ucrange_suite(n, seed, count or 60)
    if suite == "all":
        out = []
        for name in SUITES:
            for r in run_suite(name, n, seed, count):
                out.append(CheckResult(f"{name}.{r.name}", r.passed, r.detail))
        return out
    raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")

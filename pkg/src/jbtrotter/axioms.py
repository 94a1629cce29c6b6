"""Randomized verification of the Jordan identity and the norm axioms.

Each check draws seeded element pairs, evaluates one defining identity or
inequality, and reports the worst scaled residual.  Residuals divide out
a natural magnitude factor so one tolerance works across norm scales;
inequalities report a signed margin (negative means satisfied with room).

``run_axiom_suite`` accepts the product as a parameter so a corrupted
multiplication can be injected to prove the checks have teeth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import AlgebraDescriptor, Element, jb_norm, jordan_mul, random_element

DEFAULT_TOL = 1e-10
COMMUTATIVITY_TOL = 1e-14


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    worst: float
    tolerance: float


def _suite_checks(product):
    def jordan_identity(a: Element, b: Element) -> float:
        asq = product(a, a)
        lhs = product(product(asq, b), a)
        rhs = product(asq, product(b, a))
        scale = (1.0 + jb_norm(a)) ** 3 * (1.0 + jb_norm(b))
        return jb_norm(lhs - rhs) / scale

    def commutativity(a: Element, b: Element) -> float:
        scale = (1.0 + jb_norm(a)) * (1.0 + jb_norm(b))
        return jb_norm(product(a, b) - product(b, a)) / scale

    def norm_submultiplicative(a: Element, b: Element) -> float:
        na, nb = jb_norm(a), jb_norm(b)
        return (jb_norm(product(a, b)) - na * nb) / (1.0 + na * nb)

    def norm_square(a: Element, b: Element) -> float:
        na = jb_norm(a)
        return abs(jb_norm(product(a, a)) - na * na) / (1.0 + na) ** 2

    def norm_square_monotone(a: Element, b: Element) -> float:
        asq, bsq = product(a, a), product(b, b)
        scale = 1.0 + jb_norm(a) ** 2 + jb_norm(b) ** 2
        return (jb_norm(asq) - jb_norm(asq + bsq)) / scale

    return [
        ("jordan-identity", jordan_identity, DEFAULT_TOL),
        ("commutativity", commutativity, COMMUTATIVITY_TOL),
        ("norm-submultiplicative", norm_submultiplicative, DEFAULT_TOL),
        ("norm-square", norm_square, DEFAULT_TOL),
        ("norm-square-monotone", norm_square_monotone, DEFAULT_TOL),
    ]


def run_axiom_suite(
    descriptor: AlgebraDescriptor,
    trials: int = 1000,
    seed: int = 0,
    tol_scale: float = 1.0,
    product=jordan_mul,
) -> list[AxiomResult]:
    """Evaluate every axiom check over seeded pairs; deterministic in seed."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    norms = rng.uniform(0.25, 2.0, size=(trials, 2))
    seeds = rng.integers(0, 2**62, size=(trials, 2))
    pairs = [
        (
            random_element(descriptor, int(seeds[i, 0]), float(norms[i, 0])),
            random_element(descriptor, int(seeds[i, 1]), float(norms[i, 1])),
        )
        for i in range(trials)
    ]
    results = []
    for name, check, tol in _suite_checks(product):
        worst = max(check(a, b) for a, b in pairs)
        limit = tol * tol_scale
        results.append(AxiomResult(name, worst <= limit, float(worst), limit))
    return results

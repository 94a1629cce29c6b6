"""Product-formula approximants for exp(sum A_j) and their error bounds.

Three schemes, named by their tag in the CLI:

``g``  left-nested Jordan products of exp(A_j / n), whole thing to the
       n-th Jordan power.  Any element count m >= 1.
``f``  symmetrized variant: innermost factor exp(A_1 / n), every further
       element wraps the current core W in the triple product
       {exp(A_j / 2n)  W  exp(A_j / 2n)}.  Any m >= 1.
``h``  triple-product chain for an odd count 2m + 1 >= 3: the innermost
       core is {exp(A_2/n) exp(A_1/n) exp(A_3/n)} and layer k wraps with
       exp(A_2k / n) on the left and exp(A_2k+1 / n) on the right.  All
       factors use the full step 1 / n.

Closed-form error bounds (S = sum of the algebra norms, m = element
count) follow the wire names used in sweep output:

``bound_thm31``      S^3 e^S / (3 n^2)            scheme g
``bound_thm33i``     (3^(m-1) + 1) S^3 e^S / (6 n^2)   scheme f
``bound_thm33ii``    2 * 3^m S^2 e^((n+2)S/n) / n      scheme f
``bound_special``    sharpened f bounds valid on sym/herm only:
                     variant i drops the 3^(m-1) factor, variant ii the 3^m.

No closed-form bound is known here for scheme h; planners must use the
measured mode for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .algebras import (
    AlgebraDescriptor,
    Element,
    exp_spectral,
    jb_norm,
    jordan_mul,
    jordan_power,
    quad_map,
    triple_product,
)

SCHEMES = ("g", "f", "h")

# Planner refuses step counts beyond this.
MAX_PLAN_N = 2**30


class SchemeError(ValueError):
    """Scheme incompatible with the given elements or mode."""


class CapacityError(RuntimeError):
    """Planner target needs more steps than the supported maximum."""


class DegenerateDecayError(ValueError):
    """Errors sit at the floating-point floor, no decay rate to fit.

    Typically means the elements operator-commute, so every scheme is
    exact and the measured errors are pure roundoff.
    """


@dataclass(frozen=True)
class SweepRecord:
    """One (scheme, n) measurement with every applicable closed-form bound."""

    scheme: str
    n: int
    error: float
    bound_thm31: float | None = None
    bound_thm33i: float | None = None
    bound_thm33ii: float | None = None
    bound_special_i: float | None = None
    bound_special_ii: float | None = None


def _check_elements(elements) -> list[Element]:
    elems = list(elements)
    if not elems:
        raise ValueError("need at least one element")
    d0 = elems[0].descriptor
    for e in elems[1:]:
        if e.descriptor != d0:
            raise ValueError(f"mixed descriptors {d0} and {e.descriptor}")
    return elems


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"step count n must be a positive integer, got {n!r}")


def approx_g(elements, n: int) -> Element:
    """Left-nested product scheme at step count n."""
    elems = _check_elements(elements)
    _check_n(n)
    factors = [exp_spectral(a / n) for a in elems]
    step = reduce(jordan_mul, factors)
    return jordan_power(step, n)


def approx_f(elements, n: int) -> Element:
    """Symmetrized scheme: half-step triple-product wrappers, then power n."""
    elems = _check_elements(elements)
    _check_n(n)
    core = exp_spectral(elems[0] / n)
    for a in elems[1:]:
        core = quad_map(exp_spectral(a / (2 * n)), core)
    return jordan_power(core, n)


def approx_h(elements, n: int) -> Element:
    """Odd-count triple-product chain at full step 1/n."""
    elems = _check_elements(elements)
    _check_n(n)
    if len(elems) < 3 or len(elems) % 2 == 0:
        raise SchemeError(f"scheme h needs an odd element count >= 3, got {len(elems)}")
    factors = [exp_spectral(a / n) for a in elems]
    core = triple_product(factors[1], factors[0], factors[2])
    for k in range(3, len(factors), 2):
        core = triple_product(factors[k], core, factors[k + 1])
    return jordan_power(core, n)


_APPROX = {"g": approx_g, "f": approx_f, "h": approx_h}


def exp_sum(elements) -> Element:
    """Reference value exp(A_1 + ... + A_m)."""
    elems = _check_elements(elements)
    return exp_spectral(reduce(lambda a, b: a + b, elems))


def measured_error(scheme: str, elements, n: int) -> float:
    """Algebra-norm distance between the scheme at n and exp of the sum."""
    if scheme not in SCHEMES:
        raise SchemeError(f"unknown scheme {scheme!r}")
    return jb_norm(exp_sum(elements) - _APPROX[scheme](elements, n))


# ---------------------------------------------------------------------------
# closed-form bounds


def _norm_sum(norms) -> float:
    vals = [float(v) for v in norms]
    if any(v < 0 for v in vals):
        raise ValueError("norms must be nonnegative")
    return sum(vals)


def bound_thm31(norms, n: int) -> float:
    """Cubic second-order bound for scheme g."""
    _check_n(n)
    s = _norm_sum(norms)
    return s**3 * math.exp(s) / (3.0 * n * n)


def bound_thm33i(norms, n: int) -> float:
    """Cubic second-order bound for scheme f; grows like 3^(m-1) in the count."""
    _check_n(n)
    vals = [float(v) for v in norms]
    s = _norm_sum(vals)
    m = len(vals)
    return (3.0 ** (m - 1) + 1.0) * s**3 * math.exp(s) / (6.0 * n * n)


def bound_thm33ii(norms, n: int) -> float:
    """Quadratic first-order bound for scheme f with an n-dependent exponent."""
    _check_n(n)
    vals = [float(v) for v in norms]
    s = _norm_sum(vals)
    m = len(vals)
    return (2.0 * 3.0**m / n) * s * s * math.exp((n + 2.0) * s / n)


def bound_special(norms, n: int, variant: str) -> float:
    """Sharpened f bounds, valid only on the associatively representable
    families (sym and herm).  Variant "i" is cubic in S and second order
    in n, variant "ii" quadratic in S and first order."""
    _check_n(n)
    s = _norm_sum(norms)
    if variant == "i":
        return s**3 * math.exp(s) / (3.0 * n * n)
    if variant == "ii":
        return (2.0 / n) * s * s * math.exp((n + 2.0) * s / n)
    raise ValueError(f"variant must be 'i' or 'ii', got {variant!r}")


def tightest_bound(scheme: str, norms, n: int, special: bool = False) -> float:
    """Smallest applicable closed-form bound at step count n."""
    if scheme == "g":
        return bound_thm31(norms, n)
    if scheme == "f":
        candidates = [bound_thm33i(norms, n), bound_thm33ii(norms, n)]
        if special:
            candidates.append(bound_special(norms, n, "i"))
            candidates.append(bound_special(norms, n, "ii"))
        return min(candidates)
    raise SchemeError(f"no closed-form bound for scheme {scheme!r}")


# ---------------------------------------------------------------------------
# planner


def plan_min_n(
    scheme: str,
    eps: float,
    *,
    norms=None,
    elements=None,
    mode: str = "bound",
    special: bool = False,
) -> int:
    """Smallest step count with guaranteed (bound mode) or measured error
    at most eps.

    Bound mode needs per-element norms (taken from ``elements`` when not
    given) and satisfies bound(n) <= eps < bound(n - 1).  Measured mode
    needs the elements themselves and uses doubling plus bisection on the
    measured error, which is assumed monotone along the search.
    """
    if scheme not in SCHEMES:
        raise SchemeError(f"unknown scheme {scheme!r}")
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    if mode == "bound":
        if scheme == "h":
            raise SchemeError("scheme h has no closed-form bound, use measured mode")
        if norms is None:
            if elements is None:
                raise ValueError("bound mode needs norms or elements")
            elems = _check_elements(elements)
            norms = [jb_norm(a) for a in elems]
            special = elems[0].descriptor.is_special
        return _plan_bound(scheme, list(norms), eps, special)
    if mode == "measured":
        if elements is None:
            raise ValueError("measured mode needs elements")
        return _plan_measured(scheme, _check_elements(elements), eps)
    raise ValueError(f"mode must be 'bound' or 'measured', got {mode!r}")


def _plan_bound(scheme: str, norms: list, eps: float, special: bool) -> int:
    def value(n: int) -> float:
        return tightest_bound(scheme, norms, n, special)

    if value(1) <= eps:
        return 1
    # Closed-form seed from the second-order piece, then walk to the exact
    # integer threshold; the walk also covers the first-order piece of the
    # f bounds, whose minimum is still monotone in n.
    s = _norm_sum(norms)
    second_order = (
        bound_thm31(norms, 1) if scheme == "g" else
        min(bound_thm33i(norms, 1), bound_special(norms, 1, "i") if special else math.inf)
    )
    guess = max(1, math.isqrt(max(1, math.ceil(second_order / eps))))
    lo, hi = 1, None
    n = guess
    while True:
        if n > MAX_PLAN_N:
            if value(MAX_PLAN_N) > eps:
                raise CapacityError(
                    f"target eps={eps!r} needs more than {MAX_PLAN_N} steps"
                )
            hi = MAX_PLAN_N
            break
        if value(n) <= eps:
            hi = n
            break
        lo = n
        n *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if value(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


def _plan_measured(scheme: str, elems: list, eps: float) -> int:
    target = exp_sum(elems)

    def err(n: int) -> float:
        return jb_norm(target - _APPROX[scheme](elems, n))

    if err(1) <= eps:
        return 1
    lo, n = 1, 2
    while err(n) > eps:
        lo = n
        n *= 2
        if n > MAX_PLAN_N:
            raise CapacityError(
                f"measured error still above eps={eps!r} at {MAX_PLAN_N} steps"
            )
    hi = n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if err(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# sweeps


def sweep(scheme: str, elements, n_values) -> list[SweepRecord]:
    """Measured error plus applicable bounds for each n, in given order."""
    if scheme not in SCHEMES:
        raise SchemeError(f"unknown scheme {scheme!r}")
    elems = _check_elements(elements)
    ns = [int(n) for n in n_values]
    for n in ns:
        _check_n(n)
    target = exp_sum(elems)
    norms = [jb_norm(a) for a in elems]
    special = elems[0].descriptor.is_special
    approx = _APPROX[scheme]
    records = []
    for n in ns:
        error = jb_norm(target - approx(elems, n))
        rec = {"scheme": scheme, "n": n, "error": float(error)}
        if scheme == "g":
            rec["bound_thm31"] = bound_thm31(norms, n)
        elif scheme == "f":
            rec["bound_thm33i"] = bound_thm33i(norms, n)
            rec["bound_thm33ii"] = bound_thm33ii(norms, n)
            if special:
                rec["bound_special_i"] = bound_special(norms, n, "i")
                rec["bound_special_ii"] = bound_special(norms, n, "ii")
        records.append(SweepRecord(**rec))
    return records


def empirical_order(records) -> float:
    """Least-squares decay exponent of error against n.

    Expects one scheme and at least four doubling n values whose errors
    sit above the floating-point floor (1e-13); raises
    ``DegenerateDecayError`` otherwise, which usually flags a commuting
    instance rather than a bug.
    """
    recs = sorted(records, key=lambda r: r.n)
    if not recs:
        raise ValueError("no records")
    schemes = {r.scheme for r in recs}
    if len(schemes) != 1:
        raise ValueError(f"records mix schemes {sorted(schemes)}")
    usable = [r for r in recs if r.error > 1e-13]
    if len(usable) < 4:
        raise DegenerateDecayError(
            f"only {len(usable)} records above the error floor, need 4"
        )
    for a, b in zip(usable, usable[1:]):
        if b.n != 2 * a.n:
            raise ValueError("records must cover doubling n values")
    xs = np.log([r.n for r in usable])
    ys = np.log([r.error for r in usable])
    slope = np.polyfit(xs, ys, 1)[0]
    return float(-slope)

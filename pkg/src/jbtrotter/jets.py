"""Truncated power-series (jet) arithmetic with algebra-element coefficients.

A ``Jet`` holds coefficients c_0 .. c_K of a curve t -> sum c_k t^k with
every c_k an ``Element`` of one algebra.  Products are Cauchy products
truncated at the common degree, with the Jordan product applied on
coefficients, so jets of curves multiply exactly like the curves do
through the retained degree.

This is enough to check, mechanically and per algebra, the Taylor-polynomial
facts behind the second-order error bounds:

* the one-step product curve (scheme g) and the one-step symmetrized
  curve (scheme f) both agree with exp(t * sum A_j) through degree 2;
* pulling the exact exponential back through the inverted symmetrized
  wrappers cancels everything through degree 2, leaving a defect curve
  that starts at degree 3.

Degree-3 coefficients generically differ, which is what keeps the
schemes from being third-order accurate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .algebras import (
    AlgebraDescriptor,
    Element,
    jb_norm,
    jordan_mul,
    unit,
    zero,
)

DEFAULT_DEGREE = 3


@dataclass(frozen=True)
class Jet:
    """Coefficients c_0 .. c_K of a truncated element-valued series."""

    coefficients: tuple[Element, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a jet needs at least the degree-0 coefficient")
        d0 = self.coefficients[0].descriptor
        for c in self.coefficients[1:]:
            if c.descriptor != d0:
                raise ValueError("jet coefficients mix algebras")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def descriptor(self) -> AlgebraDescriptor:
        return self.coefficients[0].descriptor

    def __add__(self, other: "Jet") -> "Jet":
        _check_degrees(self, other)
        return Jet(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "Jet") -> "Jet":
        _check_degrees(self, other)
        return Jet(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, c) -> "Jet":
        return Jet(tuple(coef * c for coef in self.coefficients))

    __rmul__ = __mul__


def _check_degrees(p: Jet, q: Jet) -> None:
    if p.degree != q.degree:
        raise ValueError(f"jet degrees differ: {p.degree} vs {q.degree}")


def jet_unit(descriptor: AlgebraDescriptor, degree: int = DEFAULT_DEGREE) -> Jet:
    one = unit(descriptor)
    nil = zero(descriptor)
    return Jet((one,) + (nil,) * degree)


def jet_zero(descriptor: AlgebraDescriptor, degree: int = DEFAULT_DEGREE) -> Jet:
    nil = zero(descriptor)
    return Jet((nil,) * (degree + 1))


def jet_exp(a: Element, degree: int = DEFAULT_DEGREE) -> Jet:
    """Jet of t -> exp(t a): coefficients a^k / k! (Jordan powers)."""
    coefs = [unit(a.descriptor)]
    for k in range(1, degree + 1):
        coefs.append(jordan_mul(coefs[-1], a) / float(k))
    return Jet(tuple(coefs))


def jet_jordan_mul(p: Jet, q: Jet) -> Jet:
    """Cauchy product with the Jordan product on coefficients."""
    _check_degrees(p, q)
    out = []
    for k in range(p.degree + 1):
        acc = None
        for i in range(k + 1):
            term = jordan_mul(p.coefficients[i], q.coefficients[k - i])
            acc = term if acc is None else acc + term
        out.append(acc)
    return Jet(tuple(out))


def jet_triple(p: Jet, q: Jet, r: Jet) -> Jet:
    """Jet of the triple product {p q r} = (pq)r + (qr)p - (pr)q."""
    return (
        jet_jordan_mul(jet_jordan_mul(p, q), r)
        + jet_jordan_mul(jet_jordan_mul(q, r), p)
        - jet_jordan_mul(jet_jordan_mul(p, r), q)
    )


def _check_family(elements, minimum: int) -> list[Element]:
    elems = list(elements)
    if len(elems) < minimum:
        raise ValueError(f"need at least {minimum} elements, got {len(elems)}")
    d0 = elems[0].descriptor
    for e in elems[1:]:
        if e.descriptor != d0:
            raise ValueError("elements mix algebras")
    return elems


def product_step_jet(elements, degree: int = DEFAULT_DEGREE) -> Jet:
    """Jet of the single scheme-g step exp(tA_1) exp(tA_2) ... left-nested."""
    elems = _check_family(elements, 2)
    return reduce(jet_jordan_mul, (jet_exp(a, degree) for a in elems))


def symmetrized_step_jet(elements, degree: int = DEFAULT_DEGREE) -> Jet:
    """Jet of the single scheme-f step with half-step triple wrappers."""
    elems = _check_family(elements, 2)
    core = jet_exp(elems[0], degree)
    for a in elems[1:]:
        w = jet_exp(0.5 * a, degree)
        core = jet_triple(w, core, w)
    return core


def inverse_sandwich_defect_jet(elements, degree: int = DEFAULT_DEGREE) -> Jet:
    """Exact exponential pulled back through the inverted f-step wrappers.

    Wraps the jet of exp(t sum A_j) in the quadratic maps of exp(-t A_j/2),
    innermost the last element, outermost the first, then subtracts the
    constant unit jet.  Each wrapper removes its element from the exponent
    exactly through second order, so coefficients 0 through 2 of the result
    all vanish; the generic leading term sits at degree 3.
    """
    elems = _check_family(elements, 1)
    total = reduce(lambda a, b: a + b, elems)
    cur = jet_exp(total, degree)
    for a in reversed(elems):
        w = jet_exp(-0.5 * a, degree)
        cur = jet_triple(w, cur, w)
    return cur - jet_unit(elems[0].descriptor, degree)


def evaluate_jet(p: Jet, t: float) -> Element:
    """Horner evaluation of the jet at parameter value t."""
    acc = p.coefficients[-1]
    for coef in reversed(p.coefficients[:-1]):
        acc = coef + float(t) * acc
    return acc


def residual(p: Jet, reference: Jet, through_degree: int) -> float:
    """Largest coefficient-norm gap between two jets through a degree."""
    _check_degrees(p, reference)
    if not 0 <= through_degree <= p.degree:
        raise ValueError(f"degree {through_degree} outside jet degree {p.degree}")
    return max(
        jb_norm(p.coefficients[k] - reference.coefficients[k])
        for k in range(through_degree + 1)
    )

"""Exact tail-probability lower bounds for sums of symmetric random variables.

Given exceedance probabilities p_i = P(|X_i| >= h), the classical lower
bound for P(|S| > t) is

    sum_{k > t/h} 2^{-k} B_p({k})                         (nagaev_bound)

where B_p is the Poisson binomial law of the p_i, and its sharpening is

    sum_{k > t/h} (1 - 2^{-k} F_k(m)) B_p({k})            (improved_bound)

with m = floor(t/h) + 1 and F_k(m) the sum of the m largest binomial
coefficients of order k.  The complementary quantity

    sum_{k=0}^{n} 2^{-k} F_k(m) B_p({k})                  (kanter_supremum)

is the exact maximal probability that the sum lands in a union of m sets of
diameter < 2h, attained by the symmetric three-point laws
(1-p_i) d_0 + (p_i/2)(d_{-h} + d_{+h}).  Everything is exact rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Mapping, Sequence

from .distributions import (
    LatticeDistribution,
    as_success_vector,
    convolve,
    interval_mass,
    point_mass,
    poisson_binomial,
    symmetric_three_point,
)
from .exactmath import largest_binomial_ratio
from .rational import parse_rational


@dataclass(frozen=True)
class BoundReport:
    """Both bounds at a given (t, h) plus the per-k decomposition for audit.

    per_k_terms lists (k, B_p({k}), improved weight 1 - 2^{-k} F_k(m)) for
    every k in 0..n; weights for k <= t/h do not enter the bounds but make
    the complement identity improved = 1 - kanter_sup checkable from the
    report alone.
    """

    t: Fraction
    h: Fraction
    n: int
    m: int
    nagaev: Fraction
    improved: Fraction
    kanter_sup: Fraction
    per_k_terms: tuple[tuple[int, Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        assert 0 <= self.nagaev <= 1, f"nagaev bound {self.nagaev} outside [0,1]"
        assert 0 <= self.improved <= 1, f"improved bound {self.improved} outside [0,1]"
        assert self.improved >= self.nagaev
        assert self.improved == 1 - self.kanter_sup


def _pmf_list(p: Sequence[Fraction]) -> list[Fraction]:
    dist = poisson_binomial(p)
    pmf = [Fraction(0)] * (len(p) + 1)
    for x, m in dist.atoms:
        pmf[int(x)] = m
    return pmf


def _check_domain(n: int, h: Fraction, t: Fraction) -> None:
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    if t < 0 or t >= n * h:
        raise ValueError(f"t={t} outside the bound domain [0, {n * h})")


def window_index(t, h) -> int:
    """m = floor(t/h) + 1, the number of width-2h sets covering [-t, t]-ish."""
    return math.floor(parse_rational(t) / parse_rational(h)) + 1


def nagaev_bound(p: Sequence, h, t) -> Fraction:
    """Exact value of sum_{k > t/h} 2^{-k} B_p({k})."""
    p = as_success_vector(p)
    h, t = parse_rational(h), parse_rational(t)
    _check_domain(len(p), h, t)
    pmf = _pmf_list(p)
    ratio = t / h
    return sum(
        (Fraction(1, 1 << k) * pmf[k] for k in range(len(pmf)) if k > ratio),
        Fraction(0),
    )


def improved_bound(p: Sequence, h, t) -> Fraction:
    """Exact value of sum_{k > t/h} (1 - 2^{-k} F_k(m)) B_p({k})."""
    p = as_success_vector(p)
    h, t = parse_rational(h), parse_rational(t)
    _check_domain(len(p), h, t)
    pmf = _pmf_list(p)
    m = window_index(t, h)
    ratio = t / h
    return sum(
        ((1 - largest_binomial_ratio(k, m)) * pmf[k] for k in range(len(pmf)) if k > ratio),
        Fraction(0),
    )


def kanter_supremum(p: Sequence, m: int) -> Fraction:
    """Exact value of sum_{k=0}^{n} 2^{-k} F_k(m) B_p({k})."""
    p = as_success_vector(p)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    pmf = _pmf_list(p)
    return sum(
        (largest_binomial_ratio(k, m) * pmf[k] for k in range(len(pmf))),
        Fraction(0),
    )


def kanter_supremum_via_stpc(p: Sequence, m: int) -> Fraction:
    """The same supremum read off the symmetric three-point convolution.

    Equals interval mass of [-m+1, m] under the unit-step three-point
    convolution; must agree with kanter_supremum exactly.
    """
    p = as_success_vector(p)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    stpc = symmetric_three_point(p, 1)
    return interval_mass(stpc, -m + 1, m, lo_closed=True, hi_closed=True)


def evaluate_bounds(p: Sequence, h, t) -> BoundReport:
    """Evaluate both bounds at (t, h) with the per-k audit decomposition."""
    p = as_success_vector(p)
    h, t = parse_rational(h), parse_rational(t)
    _check_domain(len(p), h, t)
    pmf = _pmf_list(p)
    m = window_index(t, h)
    ratio = t / h
    terms = tuple(
        (k, pmf[k], 1 - largest_binomial_ratio(k, m)) for k in range(len(pmf))
    )
    nagaev = sum(
        (Fraction(1, 1 << k) * bk for k, bk, _ in terms if k > ratio), Fraction(0)
    )
    improved = sum((w * bk for k, bk, w in terms if k > ratio), Fraction(0))
    kanter = sum(((1 - w) * bk for _, bk, w in terms), Fraction(0))
    return BoundReport(
        t=t,
        h=h,
        n=len(p),
        m=m,
        nagaev=nagaev,
        improved=improved,
        kanter_sup=kanter,
        per_k_terms=terms,
    )


def extremal_distribution(p: Sequence, h) -> list[LatticeDistribution]:
    """The n three-point laws (1-p_i) d_0 + (p_i/2)(d_{-h} + d_{+h}).

    Their convolution attains the concentration supremum among all
    independent symmetric terms with P(|X_i| < h) <= 1 - p_i.
    """
    p = as_success_vector(p)
    h = parse_rational(h)
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    return [
        LatticeDistribution.from_masses({-h: pi / 2, 0: 1 - pi, h: pi / 2})
        for pi in p
    ]


def extremal_interval_check(p: Sequence, h, H) -> tuple[Fraction, Fraction]:
    """Supremum of P(sum in ]-H, H] + a) and its attained extremal value.

    Requires h <= H with m := ceil(H/h) < H/h + 1/2.  The supremum equals
    kanter_supremum(p, m); it is attained by the extremal three-point laws
    at the shift a = m*h - H.  Returns (sup, attained); the two must be
    exactly equal.
    """
    p = as_success_vector(p)
    h, H = parse_rational(h), parse_rational(H)
    if not 0 < h <= H:
        raise ValueError(f"need 0 < h <= H, got h={h}, H={H}")
    m = math.ceil(H / h)
    if not m < H / h + Fraction(1, 2):
        raise ValueError(f"half-integer condition fails: ceil(H/h)={m} >= H/h + 1/2")
    a = m * h - H
    sup = kanter_supremum(p, m)
    total = reduce(convolve, extremal_distribution(p, h), point_mass(0))
    attained = interval_mass(total, -H + a, H + a, lo_closed=False, hi_closed=True)
    return sup, attained


def optimize_h(candidates: Mapping, t) -> tuple[Fraction, Fraction]:
    """Pick the candidate h maximizing the improved bound at t.

    candidates maps each candidate h to the success vector p(h) of
    exceedance probabilities at that threshold.  Candidates violating the
    domain 0 <= t < n*h are skipped; ties break toward smaller h.
    """
    t = parse_rational(t)
    parsed = [(parse_rational(h), as_success_vector(p)) for h, p in candidates.items()]
    best: tuple[Fraction, Fraction] | None = None
    for h, p in sorted(parsed, key=lambda item: item[0]):
        if h <= 0 or t < 0 or t >= len(p) * h:
            continue
        value = improved_bound(p, h, t)
        if best is None or value > best[1]:
            best = (h, value)
    if best is None:
        raise ValueError("no candidate h admits the requested t")
    return best

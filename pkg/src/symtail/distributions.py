"""Exact finite discrete distributions on rational lattices.

A :class:`LatticeDistribution` is a finite probability mass function whose
support points and masses are exact rationals.  All operations here
(convolution, tail and interval queries, symmetry / unimodality / stochastic
ordering predicates) are exact; there is no floating point in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import format_rational, parse_rational


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    # gcd of p1/q1, p2/q2 in lowest terms is gcd(p1,p2)/lcm(q1,q2)
    num = math.gcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


@dataclass(frozen=True)
class LatticeDistribution:
    """Finite exact pmf; atoms are (support point, mass), sorted ascending.

    Invariants enforced at construction: every mass is positive, masses sum
    exactly to 1, support points are strictly increasing.
    """

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("distribution needs at least one atom")
        total = Fraction(0)
        prev = None
        for x, mass in self.atoms:
            if not isinstance(x, Fraction) or not isinstance(mass, Fraction):
                raise ValueError("atoms must hold Fractions")
            if mass <= 0:
                raise ValueError(f"mass at {x} must be positive, got {mass}")
            if prev is not None and x <= prev:
                raise ValueError("support must be strictly increasing")
            prev = x
            total += mass
        if total != 1:
            raise ValueError(f"masses must sum to 1, got {total}")

    @staticmethod
    def from_masses(masses: Mapping) -> "LatticeDistribution":
        """Build from a mapping of support point to mass; zero masses are pruned."""
        cleaned = {}
        for x, mass in masses.items():
            x = parse_rational(x)
            mass = parse_rational(mass)
            if mass == 0:
                continue
            cleaned[x] = cleaned.get(x, Fraction(0)) + mass
        return LatticeDistribution(tuple(sorted(cleaned.items())))

    @property
    def support(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.atoms)

    def mass(self, x) -> Fraction:
        x = parse_rational(x)
        for point, mass in self.atoms:
            if point == x:
                return mass
            if point > x:
                break
        return Fraction(0)

    @property
    def span(self) -> Fraction:
        """Minimal span: gcd of support gaps; 0 for a single point mass."""
        if len(self.atoms) == 1:
            return Fraction(0)
        x0 = self.atoms[0][0]
        g = Fraction(0)
        for x, _ in self.atoms[1:]:
            g = _frac_gcd(g, x - x0) if g else (x - x0)
        return g

    def to_json_dict(self) -> dict:
        return {
            "atoms": [
                {"x": format_rational(x), "mass": format_rational(m)}
                for x, m in self.atoms
            ]
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "LatticeDistribution":
        try:
            atoms = data["atoms"]
        except (KeyError, TypeError) as exc:
            raise ValueError("distribution literal must have an 'atoms' list") from exc
        if not isinstance(atoms, list) or not atoms:
            raise ValueError("'atoms' must be a non-empty list")
        masses: dict[Fraction, Fraction] = {}
        for entry in atoms:
            try:
                x = parse_rational(entry["x"])
                m = parse_rational(entry["mass"])
            except (KeyError, TypeError) as exc:
                raise ValueError(f"bad atom entry: {entry!r}") from exc
            masses[x] = masses.get(x, Fraction(0)) + m
        return LatticeDistribution.from_masses(masses)


def point_mass(c=0) -> LatticeDistribution:
    return LatticeDistribution(((parse_rational(c), Fraction(1)),))


def as_success_vector(values: Iterable) -> tuple[Fraction, ...]:
    """Validate a vector of exceedance probabilities, each in [0, 1]."""
    p = tuple(parse_rational(v) for v in values)
    if not p:
        raise ValueError("success vector must be non-empty")
    for v in p:
        if v < 0 or v > 1:
            raise ValueError(f"success probability {v} outside [0, 1]")
    return p


def bernoulli(p) -> LatticeDistribution:
    p = parse_rational(p)
    return LatticeDistribution.from_masses({0: 1 - p, 1: p})


def poisson_binomial(p: Sequence) -> LatticeDistribution:
    """Exact law of the number of successes among independent Bernoulli(p_i)."""
    p = as_success_vector(p)
    dist = point_mass(0)
    for pi in p:
        dist = convolve(dist, bernoulli(pi))
    return dist


def symmetric_three_point(p: Sequence, h) -> LatticeDistribution:
    """Convolution of the laws (1-p_i) d_0 + (p_i/2)(d_{-h} + d_{+h}).

    This is the extremal family for the concentration supremum: each term
    puts mass p_i split evenly on +-h and the rest at the origin.
    """
    p = as_success_vector(p)
    h = parse_rational(h)
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    dist = point_mass(0)
    for pi in p:
        term = LatticeDistribution.from_masses({-h: pi / 2, 0: 1 - pi, h: pi / 2})
        dist = convolve(dist, term)
    return dist


def convolve(d1: LatticeDistribution, d2: LatticeDistribution) -> LatticeDistribution:
    """Exact law of the sum of independent draws from d1 and d2."""
    masses: dict[Fraction, Fraction] = {}
    for x, mx in d1.atoms:
        for y, my in d2.atoms:
            z = x + y
            masses[z] = masses.get(z, Fraction(0)) + mx * my
    return LatticeDistribution(tuple(sorted(masses.items())))


def interval_mass(
    d: LatticeDistribution,
    lo,
    hi,
    lo_closed: bool = True,
    hi_closed: bool = True,
) -> Fraction:
    """Exact mass of the interval between lo and hi with chosen endpoint rules."""
    lo = parse_rational(lo)
    hi = parse_rational(hi)
    if lo > hi:
        raise ValueError(f"need lo <= hi, got {lo} > {hi}")
    total = Fraction(0)
    for x, m in d.atoms:
        above = x > lo or (lo_closed and x == lo)
        below = x < hi or (hi_closed and x == hi)
        if above and below:
            total += m
    return total


def abs_tail(d: LatticeDistribution, t, strict: bool = True) -> Fraction:
    """Exact P(|X| > t) (strict) or P(|X| >= t) (weak)."""
    t = parse_rational(t)
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    total = Fraction(0)
    for x, m in d.atoms:
        a = -x if x < 0 else x
        if a > t or (not strict and a == t):
            total += m
    return total


def is_symmetric(d: LatticeDistribution) -> bool:
    """True iff the law equals the law of its negation."""
    masses = dict(d.atoms)
    return all(masses.get(-x) == m for x, m in d.atoms)


def is_unimodal_with_span(d: LatticeDistribution, h) -> bool:
    """Unimodality with span h.

    For h > 0: the support must embed in h*Z + a for some offset a, and the
    full mass sequence over the lattice points between min and max of the
    support (unoccupied points counting as zero) must be weakly increasing
    up to some peak and weakly decreasing after it.  For h = 0 the only
    purely atomic laws that qualify are single point masses.
    """
    h = parse_rational(h)
    if h < 0:
        raise ValueError(f"span must be nonnegative, got {h}")
    if len(d.atoms) == 1:
        return True
    if h == 0:
        return False
    x0 = d.atoms[0][0]
    indexed: list[tuple[int, Fraction]] = []
    for x, m in d.atoms:
        q = (x - x0) / h
        if q.denominator != 1:
            return False
        indexed.append((int(q), m))
    seq = [Fraction(0)] * (indexed[-1][0] + 1)
    for k, m in indexed:
        seq[k] = m
    descending = False
    for prev, cur in zip(seq, seq[1:]):
        if cur < prev:
            descending = True
        elif cur > prev and descending:
            return False
    return True


def abs_stochastically_geq(u: LatticeDistribution, v: LatticeDistribution) -> bool:
    """True iff P(|U| >= t) >= P(|V| >= t) for every real t.

    For finite laws it suffices to compare at the absolute support points of
    both distributions (the weak tails are right-continuous step functions
    jumping only there).
    """
    thresholds = {abs(x) for x, _ in u.atoms} | {abs(x) for x, _ in v.atoms}
    for t in thresholds:
        if abs_tail(u, t, strict=False) < abs_tail(v, t, strict=False):
            return False
    return True

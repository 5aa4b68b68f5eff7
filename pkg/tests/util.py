"""Shared helpers for building exact distributions and random instances."""

from __future__ import annotations

import random
from fractions import Fraction

from symtail.distributions import LatticeDistribution


def dist(masses) -> LatticeDistribution:
    return LatticeDistribution.from_masses(masses)


def coin(h=1) -> LatticeDistribution:
    h = Fraction(h)
    return dist({-h: Fraction(1, 2), h: Fraction(1, 2)})


def random_probability(rng: random.Random, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def random_success_vector(rng: random.Random, n: int, positive: bool = False):
    ps = []
    for _ in range(n):
        p = random_probability(rng)
        if positive and p == 0:
            p = Fraction(1, rng.randint(2, 12))
        ps.append(p)
    return tuple(ps)


def random_symmetric_law(
    rng: random.Random, radius: int = 2, den: int = 8, h=1
) -> LatticeDistribution:
    """Random symmetric law on {-radius*h, ..., radius*h} with masses k/den."""
    h = Fraction(h)
    while True:
        units = [0] * (radius + 1)
        remaining = den
        for k in range(radius, 0, -1):
            units[k] = rng.randint(0, remaining // 2)
            remaining -= 2 * units[k]
        units[0] = remaining
        if any(units):
            break
    masses = {}
    if units[0]:
        masses[Fraction(0)] = Fraction(units[0], den)
    for k in range(1, radius + 1):
        if units[k]:
            masses[k * h] = Fraction(units[k], den)
            masses[-k * h] = Fraction(units[k], den)
    return dist(masses)

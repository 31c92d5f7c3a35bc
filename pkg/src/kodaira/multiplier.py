"""Multiplier-ideal coefficients of metrics with SNC analytic singularities.

A metric is a list of (prime divisor id, weight mu >= 0) entries, one weight
per divisor; the prefactor and the divisor multiplicity only enter through
their product, so a single mu per divisor suffices.  The k-th ideal is cut
out by the coefficients c_k = max(floor(k*mu) - k + 1, 0); the clamp keeps
ideal coefficients nonnegative (a negative value would spuriously enlarge
section spaces).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SingularMetricData:
    """Weights mu_j >= 0 indexed by prime-divisor ids (distinct)."""

    entries: tuple  # of (divisor_id, Fraction)

    def __init__(self, entries):
        norm = []
        seen = set()
        for div_id, mu in entries:
            mu = Fraction(mu)
            if mu < 0:
                raise ValueError("metric weight must be nonnegative")
            if div_id in seen:
                raise ValueError(f"duplicate divisor id {div_id!r}")
            seen.add(div_id)
            norm.append((div_id, mu))
        object.__setattr__(self, "entries", tuple(norm))

    def weight(self, div_id):
        for d, mu in self.entries:
            if d == div_id:
                return mu
        return Fraction(0)

    def restrict(self, div_ids):
        """Sub-metric supported on the given divisor ids."""
        keep = set(div_ids)
        return SingularMetricData([(d, mu) for d, mu in self.entries if d in keep])

    def __bool__(self):
        return bool(self.entries)


EMPTY_METRIC = SingularMetricData(())


def multiplier_coeff(mu, k, clamp=True):
    """Coefficient of a prime divisor in the k-th multiplier ideal:
    max(floor(k*mu) - k + 1, 0).  clamp=False drops the max (only for
    falsification tests; real ideals never carry negative coefficients)."""
    mu = Fraction(mu)
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    k = int(k)
    if k < 1:
        raise ValueError("level must be >= 1")
    value = math.floor(k * mu) - k + 1
    if clamp:
        return max(value, 0)
    return value


def coeff_limit(mu):
    """Normalized limit of the coefficients: lim_k c_k / k = max(mu - 1, 0)."""
    mu = Fraction(mu)
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    return max(mu - 1, Fraction(0))


@dataclass
class SubadditivityReport:
    checked: int
    violations: list  # of (mu, k, l, c_k, c_l, c_kl)

    @property
    def ok(self):
        return not self.violations


def subadditivity_scan(mu_grid, k_max=100):
    """Verify c_{k+l} <= c_k + c_l for every mu in the grid, all k, l <= k_max.

    Violations are report content (with witnesses), not exceptions.
    """
    violations = []
    checked = 0
    for mu in mu_grid:
        mu = Fraction(mu)
        coeffs = [0] + [multiplier_coeff(mu, k) for k in range(1, 2 * k_max + 1)]
        for k in range(1, k_max + 1):
            ck = coeffs[k]
            for l in range(k, k_max + 1):
                checked += 1
                if coeffs[k + l] > ck + coeffs[l]:
                    violations.append((mu, k, l, ck, coeffs[l], coeffs[k + l]))
    return SubadditivityReport(checked=checked, violations=violations)


def default_mu_grid(max_value=5, max_den=8):
    """All fractions p/q with 0 <= p/q <= max_value and 1 <= q <= max_den."""
    grid = set()
    for q in range(1, max_den + 1):
        for p in range(0, max_value * q + 1):
            grid.add(Fraction(p, q))
    return sorted(grid)

"""Intersection numbers of invariant divisors with invariant curves.

On a smooth complete toric variety an invariant Cartier divisor is ample
exactly when it meets every invariant curve strictly positively, so both
the ample and the Fano test reduce to one exact scan over the walls.
"""

from dataclasses import dataclass
from functools import lru_cache

from .fan import ensure_smooth_complete, walls


@dataclass(frozen=True)
class TDivisor:
    """Invariant divisor sum(coeffs[i] * V(ray_i)), one integer per ray."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other):
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("divisors live on different fans")
        return TDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TDivisor(tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return TDivisor(tuple(k * a for a in self.coeffs))


def prime_divisor(fan, ray_index):
    """The divisor V(ray_index)."""
    return TDivisor(tuple(int(i == ray_index) for i in range(len(fan.rays))))


def anticanonical_divisor(fan):
    """The anticanonical divisor: coefficient 1 on every ray."""
    return TDivisor((1,) * len(fan.rays))


def principal_divisor(fan, m):
    """div(chi^m): the pairing <m, ray> as the coefficient of each ray."""
    return TDivisor(
        tuple(sum(a * b for a, b in zip(m, ray)) for ray in fan.rays)
    )


def divisor_dot_curve(fan, divisor, wall):
    """D . C for the invariant curve of ``wall``, via the wall relation."""
    c = divisor.coeffs
    if len(c) != len(fan.rays):
        raise ValueError(
            f"divisor has {len(c)} coefficients, fan has {len(fan.rays)} rays"
        )
    return (
        c[wall.apex_a]
        + c[wall.apex_b]
        + sum(a * c[i] for i, a in zip(wall.wall_rays, wall.coeffs))
    )


def anticanonical_degree(fan, wall):
    """-K . C = 2 + sum of the wall coefficients."""
    return 2 + sum(wall.coeffs)


def is_ample(fan, divisor):
    """Strictly positive intersection with every wall."""
    ensure_smooth_complete(fan)
    return all(divisor_dot_curve(fan, divisor, w) > 0 for w in walls(fan))


def is_nef(fan, divisor):
    """Nonnegative intersection with every wall."""
    ensure_smooth_complete(fan)
    return all(divisor_dot_curve(fan, divisor, w) >= 0 for w in walls(fan))


@dataclass(frozen=True)
class DivisorPositivity:
    """One-pass wall scan: ampleness, nefness, and the minimising wall."""

    ample: bool
    nef: bool
    min_degree: int
    min_wall: object


def positivity(fan, divisor):
    ensure_smooth_complete(fan)
    best = None
    best_wall = None
    for w in walls(fan):
        value = divisor_dot_curve(fan, divisor, w)
        if best is None or value < best:
            best, best_wall = value, w
    return DivisorPositivity(best > 0, best >= 0, best, best_wall)


@lru_cache(maxsize=None)
def is_fano(fan):
    """True when the anticanonical degree of every wall is positive."""
    ensure_smooth_complete(fan)
    return all(anticanonical_degree(fan, w) > 0 for w in walls(fan))

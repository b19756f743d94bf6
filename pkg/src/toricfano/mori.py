"""Numerical curve classes, extremality in the cone of curves, contractions.

The cone of effective curves of a smooth projective toric variety is
spanned by the wall classes, so extremality of a wall class is an exact
rational feasibility question against the other wall classes.  Contraction
types follow the count of negative and nonpositive wall coefficients.
"""

from dataclasses import dataclass
from functools import lru_cache

from ._simplex import in_nonneg_span
from .fan import ensure_smooth_complete, walls
from .intersect import anticanonical_degree


@dataclass(frozen=True)
class CurveClass:
    """Intersection numbers of a curve with every prime divisor, in ray order."""

    dots: tuple


def curve_class(fan, wall):
    """Class of the wall curve: 1 on the apexes, the coefficients on the wall."""
    dots = [0] * len(fan.rays)
    dots[wall.apex_a] = 1
    dots[wall.apex_b] = 1
    for i, a in zip(wall.wall_rays, wall.coeffs):
        dots[i] = a
    return CurveClass(tuple(dots))


def pair(divisor, cclass):
    """D . C from a divisor's coefficients and a curve class."""
    return sum(c * d for c, d in zip(divisor.coeffs, cclass.dots))


def is_positive_multiple(base, other):
    """True when other = q * base for some rational q > 0 (exact, integral)."""
    n = len(base)
    for i in range(n):
        for j in range(i + 1, n):
            if base[i] * other[j] != base[j] * other[i]:
                return False
    for x, y in zip(base, other):
        if x != 0:
            return x * y > 0
    return False


@lru_cache(maxsize=None)
def is_extremal(fan, wall):
    """Is the wall class on a one-dimensional face of the cone of curves?

    Decided exactly: the class is extremal iff it is not a nonnegative
    rational combination of the wall classes that are not positive
    multiples of it.
    """
    ensure_smooth_complete(fan)
    target = curve_class(fan, wall).dots
    candidates = []
    seen = set()
    for w in walls(fan):
        dots = curve_class(fan, w).dots
        if dots in seen or is_positive_multiple(target, dots):
            continue
        seen.add(dots)
        candidates.append(dots)
    return not in_nonneg_span(candidates, target)


def is_mori_extremal(fan, wall):
    """Extremal with strictly positive anticanonical degree."""
    return anticanonical_degree(fan, wall) > 0 and is_extremal(fan, wall)


@dataclass(frozen=True)
class ContractionInfo:
    """Type data of the extremal contraction of a wall class.

    alpha counts negative wall coefficients, beta the nonpositive ones.
    alpha = 0 is a projective-space fibration (nothing is contracted
    birationally); alpha = 1 contracts a divisor; alpha >= 2 is small.
    The exceptional locus has dimension dim - alpha and its image has
    dimension beta - alpha in the birational cases.
    """

    alpha: int
    beta: int
    kind: str
    exc_dim: int | None = None
    image_dim: int | None = None
    fiber_note: str | None = None


def contraction_info(fan, wall):
    if not is_mori_extremal(fan, wall):
        raise ValueError("wall class is not Mori extremal")
    alpha = sum(1 for a in wall.coeffs if a < 0)
    beta = sum(1 for a in wall.coeffs if a <= 0)
    n = fan.dim
    if alpha == 0:
        return ContractionInfo(
            alpha, beta, "fibration", fiber_note=f"P^{n - beta}-fibration"
        )
    kind = "divisorial" if alpha == 1 else "small"
    return ContractionInfo(alpha, beta, kind, exc_dim=n - alpha, image_dim=beta - alpha)

"""Fans of smooth complete toric varieties.

A fan is the combinatorial datum of a toric variety: primitive ray
generators plus the full-dimensional simplicial cones, each recorded as a
sorted tuple of ray indices.  This module owns validation, smoothness and
completeness tests, wall (invariant curve) enumeration with exact wall
relations, star-subdivision blow-ups, codimension-two blow-downs, and the
brute-force fan isomorphism search.

Fans are immutable and hashable; all operations are pure functions, cached
where they are hot, so fans can be shared freely between workers.
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from . import kernel, lattice
from ._simplex import in_nonneg_span


class InvalidFanError(ValueError):
    """An operation needed a valid fan and the input is not one."""


@dataclass(frozen=True)
class Fan:
    """dim, primitive ray generators, and maximal cones of size dim.

    ``trusted`` marks fans produced by validity-preserving surgery, letting
    :func:`validate` skip the exact overlap checks; it never affects
    equality or hashing.
    """

    dim: int
    rays: tuple
    max_cones: tuple
    trusted: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "rays", tuple(tuple(int(c) for c in r) for r in self.rays)
        )
        object.__setattr__(
            self,
            "max_cones",
            tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones),
        )

    def ray_matrix(self, cone):
        """Matrix whose columns are the generators of ``cone``."""
        return tuple(
            tuple(self.rays[j][i] for j in cone) for i in range(self.dim)
        )


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple

    @property
    def valid(self):
        return not self.problems


@dataclass(frozen=True)
class Wall:
    """Facet shared by two maximal cones; the fan side of an invariant curve.

    The defining relation holds exactly:

        ray(apex_a) + ray(apex_b) + sum_i coeffs[i] * ray(wall_rays[i]) = 0

    and coeffs[i] is the degree of the i-th summand of the curve's normal
    bundle.  ``coeffs`` is aligned with the sorted ``wall_rays``.
    """

    wall_rays: tuple
    apex_a: int
    apex_b: int
    coeffs: tuple


def _cone_coords(fan, cone, vector):
    """Coordinates of ``vector`` in the generator basis of a smooth cone."""
    nums, den = kernel.solve(fan.ray_matrix(cone), vector)
    if den not in (1, -1):
        raise InvalidFanError("cone generators are not a lattice basis")
    return tuple(x * den for x in nums)


def cone_contains(fan, cone, point):
    """Exact membership of an integer point in a simplicial cone."""
    try:
        nums, den = kernel.solve(fan.ray_matrix(cone), point)
    except ValueError:
        raise InvalidFanError("cone is not simplicial") from None
    return all(x * den >= 0 for x in nums)


@lru_cache(maxsize=None)
def validate(fan):
    """Check every Fan invariant and report each violation with indices."""
    if fan.trusted:
        return ValidationReport(())
    problems = []
    if fan.dim < 2:
        problems.append("dimension must be at least 2")
        return ValidationReport(tuple(problems))
    if not fan.rays:
        problems.append("fan has no rays")
    if not fan.max_cones:
        problems.append("fan has no maximal cones")
    for i, ray in enumerate(fan.rays):
        if len(ray) != fan.dim:
            problems.append(f"ray {i} has dimension {len(ray)}, expected {fan.dim}")
        elif not any(ray):
            problems.append(f"ray {i} is zero")
        elif not lattice.is_primitive(ray):
            problems.append(f"ray {i} not primitive")
    seen = {}
    for i, ray in enumerate(fan.rays):
        if ray in seen:
            problems.append(f"rays {seen[ray]} and {i} are equal")
        else:
            seen[ray] = i
    simplicial = []
    for ci, cone in enumerate(fan.max_cones):
        if len(cone) != fan.dim:
            problems.append(f"cone {ci} has size {len(cone)}, expected {fan.dim}")
            continue
        if len(set(cone)) != len(cone) or not all(
            0 <= i < len(fan.rays) for i in cone
        ):
            problems.append(f"cone {ci} has repeated or out-of-range ray indices")
            continue
        if kernel.det(fan.ray_matrix(cone)) == 0:
            problems.append(f"cone {ci} is not simplicial")
            continue
        simplicial.append(ci)
    used = {i for cone in fan.max_cones for i in cone}
    for i in range(len(fan.rays)):
        if i not in used:
            problems.append(f"ray {i} not used by any maximal cone")
    cone_sets = {}
    for ci, cone in enumerate(fan.max_cones):
        key = tuple(sorted(set(cone)))
        if key in cone_sets:
            problems.append(f"cones {cone_sets[key]} and {ci} have the same rays")
        else:
            cone_sets[key] = ci
    if not problems:
        # exact rational feasibility: an interior point common to two cones
        for ci, cj in combinations(simplicial, 2):
            a, b = fan.max_cones[ci], fan.max_cones[cj]
            cols = [fan.rays[i] for i in a] + [
                tuple(-x for x in fan.rays[i]) for i in b
            ]
            rhs = tuple(
                sum(fan.rays[i][k] for i in b) - sum(fan.rays[i][k] for i in a)
                for k in range(fan.dim)
            )
            if in_nonneg_span(cols, rhs):
                problems.append(f"cones {ci} and {cj} have overlapping interiors")
    return ValidationReport(tuple(problems))


def ensure_valid(fan):
    report = validate(fan)
    if not report.valid:
        raise InvalidFanError("; ".join(report.problems))


@lru_cache(maxsize=None)
def is_smooth(fan):
    """True when every maximal cone's generators are part of a lattice basis."""
    ensure_valid(fan)
    return all(
        kernel.det(fan.ray_matrix(cone)) in (1, -1) for cone in fan.max_cones
    )


def _facet_map(fan):
    facets = {}
    for ci, cone in enumerate(fan.max_cones):
        for drop in cone:
            facets.setdefault(
                tuple(i for i in cone if i != drop), []
            ).append(ci)
    return facets


@lru_cache(maxsize=None)
def is_complete(fan):
    """No boundary facets plus a connected wall-adjacency graph.

    For a valid simplicial fan this is equivalent to the support being all
    of R^n; a deterministic sample of integer points double-checks coverage.
    """
    ensure_valid(fan)
    facets = _facet_map(fan)
    if any(len(cs) != 2 for cs in facets.values()):
        return False
    adj = {ci: set() for ci in range(len(fan.max_cones))}
    for cs in facets.values():
        adj[cs[0]].add(cs[1])
        adj[cs[1]].add(cs[0])
    seen = {0}
    queue = [0]
    while queue:
        for nxt in adj[queue.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    complete = len(seen) == len(fan.max_cones)
    assert not complete or _covers_sample_points(fan)
    return complete


def _covers_sample_points(fan):
    rng = random.Random(0xFA17)
    for _ in range(16):
        point = tuple(rng.randint(-9, 9) for _ in range(fan.dim))
        if not any(point):
            continue
        if not any(cone_contains(fan, cone, point) for cone in fan.max_cones):
            return False
    return True


def ensure_smooth_complete(fan):
    if not is_smooth(fan):
        raise InvalidFanError("fan must be smooth")
    if not is_complete(fan):
        raise InvalidFanError("fan must be complete")


@lru_cache(maxsize=None)
def walls(fan):
    """All walls with their exact integral relations, sorted by wall rays."""
    ensure_smooth_complete(fan)
    out = []
    for facet, cones in sorted(_facet_map(fan).items()):
        ca, cb = cones
        (a,) = set(fan.max_cones[ca]) - set(facet)
        (b,) = set(fan.max_cones[cb]) - set(facet)
        apex_a, apex_b = min(a, b), max(a, b)
        host = fan.max_cones[ca] if a == apex_a else fan.max_cones[cb]
        # write the opposite apex in the basis of the hosting cone; the
        # apex coordinate must be -1 exactly, the rest give the relation
        coords = _cone_coords(fan, host, fan.rays[apex_b])
        position = {i: k for k, i in enumerate(host)}
        if coords[position[apex_a]] != -1:
            raise InvalidFanError("fan not smooth along wall")
        coeffs = tuple(-coords[position[i]] for i in facet)
        out.append(Wall(facet, apex_a, apex_b, coeffs))
    return tuple(out)


def wall_relation_holds(fan, wall):
    """Exact check of the defining relation of a wall."""
    total = list(fan.rays[wall.apex_a])
    for k in range(fan.dim):
        total[k] += fan.rays[wall.apex_b][k]
        total[k] += sum(
            c * fan.rays[i][k] for i, c in zip(wall.wall_rays, wall.coeffs)
        )
    return not any(total)


def star_subdivide(fan, center):
    """Insert the ray sum of ``center`` and re-triangulate its star.

    This is the fan surgery of blowing up along the invariant subvariety
    of ``center``: every maximal cone containing the center is replaced by
    the cones swapping one center ray for the new one.  Smoothness and
    completeness carry over.  A center of size ``dim`` blows up the fixed
    point of that cone.
    """
    center = tuple(sorted(set(int(i) for i in center)))
    if not is_smooth(fan):
        raise InvalidFanError("fan must be smooth")
    if len(center) < 2:
        raise ValueError("center must have dimension at least 2")
    if not all(0 <= i < len(fan.rays) for i in center):
        raise ValueError("center has out-of-range ray indices")
    if not any(set(center) <= set(cone) for cone in fan.max_cones):
        raise ValueError("center is not a face of any maximal cone")
    w = tuple(
        sum(fan.rays[i][k] for i in center) for k in range(fan.dim)
    )
    if w in fan.rays:
        raise InvalidFanError("the center's ray sum is already a ray of the fan")
    assert lattice.is_primitive(w)
    new_index = len(fan.rays)
    cones = []
    for cone in fan.max_cones:
        if set(center) <= set(cone):
            for drop in center:
                cones.append(
                    tuple(sorted(new_index if i == drop else i for i in cone))
                )
        else:
            cones.append(cone)
    return Fan(fan.dim, fan.rays + (w,), tuple(cones), trusted=True)


def contract_codim2(fan, wall):
    """Blow down along a wall whose relation has the blow-down shape.

    The wall must have exactly one coefficient -1 and the rest 0, so the
    ray carrying the -1 is the sum of the two apexes.  That ray is removed
    and the paired cones across it are merged; ray indices above it shift
    down by one.  Returns (new_fan, removed_ray_index).
    """
    ensure_smooth_complete(fan)
    if wall not in walls(fan):
        raise ValueError("wall does not belong to the fan")
    negatives = [k for k, c in enumerate(wall.coeffs) if c == -1]
    if len(negatives) != 1 or any(
        c for k, c in enumerate(wall.coeffs) if k != negatives[0]
    ):
        raise ValueError("not a codimension-two blow-down wall")
    j = wall.wall_rays[negatives[0]]
    a, b = wall.apex_a, wall.apex_b
    pairs = {}
    for cone in fan.max_cones:
        if j not in cone:
            continue
        has_a, has_b = a in cone, b in cone
        if has_a == has_b:
            raise ValueError("fan is not a star subdivision along this wall")
        key = tuple(i for i in cone if i not in (j, a, b))
        pairs.setdefault(key, set()).add(a if has_a else b)
    if any(seen != {a, b} for seen in pairs.values()):
        raise ValueError("fan is not a star subdivision along this wall")

    def shift(i):
        return i if i < j else i - 1

    cones = []
    for cone in fan.max_cones:
        if j not in cone:
            cones.append(tuple(shift(i) for i in cone))
        elif a in cone:
            merged = tuple(
                sorted([shift(i) for i in cone if i != j] + [shift(b)])
            )
            cones.append(merged)
        # the partner cone through b is dropped; the merged cone covers both
    rays = tuple(r for i, r in enumerate(fan.rays) if i != j)
    result = Fan(fan.dim, rays, tuple(cones), trusted=True)
    assert is_smooth(result) and is_complete(result)
    return result, j


@lru_cache(maxsize=None)
def _iso_signature(fan):
    """Cheap isomorphism invariants: wall coefficient and valence multisets."""
    coeff_multiset = tuple(sorted(tuple(sorted(w.coeffs)) for w in walls(fan)))
    valence = tuple(
        sorted(
            sum(1 for cone in fan.max_cones if i in cone)
            for i in range(len(fan.rays))
        )
    )
    return coeff_multiset, valence


def fans_isomorphic(f, g):
    """Search for a determinant +-1 matrix matching rays and maximal cones.

    Anchored brute force: fix the first maximal cone of ``f``; for every
    maximal cone of ``g`` and every ordering of its rays, solve for the
    matrix sending one generator tuple to the other and verify it maps the
    ray set and the cone family bijectively.  Returns one witness matrix
    (tuple of rows) or None.
    """
    ensure_smooth_complete(f)
    ensure_smooth_complete(g)
    if (
        f.dim != g.dim
        or len(f.rays) != len(g.rays)
        or len(f.max_cones) != len(g.max_cones)
    ):
        return None
    if _iso_signature(f) != _iso_signature(g):
        return None
    n = f.dim
    anchor_inv = lattice.matrix_inverse_unimodular(f.ray_matrix(f.max_cones[0]))
    g_ray_index = {ray: i for i, ray in enumerate(g.rays)}
    g_cone_set = set(g.max_cones)
    for target in g.max_cones:
        for perm in permutations(target):
            image_matrix = tuple(
                tuple(g.rays[j][i] for j in perm) for i in range(n)
            )
            m = tuple(
                tuple(
                    sum(image_matrix[i][k] * anchor_inv[k][j] for k in range(n))
                    for j in range(n)
                )
                for i in range(n)
            )
            mapped = []
            for ray in f.rays:
                gi = g_ray_index.get(lattice.matrix_apply(m, ray))
                if gi is None:
                    break
                mapped.append(gi)
            else:
                if len(set(mapped)) == len(mapped) and all(
                    tuple(sorted(mapped[i] for i in cone)) in g_cone_set
                    for cone in f.max_cones
                ):
                    return m
    return None

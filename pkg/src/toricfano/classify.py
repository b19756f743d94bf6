"""Divisor recognition and the two classification verifiers.

Subject matter: which smooth toric Fano n-folds (n >= 3) contain an
invariant divisor isomorphic to projective (n-1)-space, and which smooth
complete toric n-folds become Fano after blowing up a torus-fixed point.
The verified answers: the divisor case is one of a fixed list of 2n+1
varieties (see :func:`catalog`), and the blow-up case forces the variety
to be projective space or the blow-up of projective space along a linear
codimension-two subspace, with the point off the exceptional divisor.

Everything is decided on fans with exact integer arithmetic; whenever a
fan is identified with a catalog member, an explicit unimodular matrix
witness is produced.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import lattice
from .fan import (
    Fan,
    contract_codim2,
    ensure_smooth_complete,
    fans_isomorphic,
    is_complete,
    is_smooth,
    star_subdivide,
    walls,
)
from .intersect import is_fano
from .mori import (
    contraction_info,
    curve_class,
    is_extremal,
    is_mori_extremal,
    is_positive_multiple,
)


class ClassificationViolation(RuntimeError):
    """A verified statement failed on concrete input.

    These conditions cannot occur on valid smooth complete (Fano) fans; a
    raise here means either the input violated a precondition upstream or
    there is a genuine bug.
    """


@dataclass(frozen=True)
class DivisorAnalysis:
    """Outcome of testing V(ray) for being a projective space.

    ``d`` is the self-intersection degree of the divisor along any of its
    lines (the twist of its normal bundle); ``line_class`` is the curve
    class of one such line.  Both are present exactly when
    ``is_proj_space`` holds.
    """

    ray_index: int
    is_proj_space: bool
    d: int | None = None
    line_class: object = None


@dataclass(frozen=True)
class CatalogEntry:
    case_tag: str  # "i" | "ii" | "iii" | "iv"
    nu: int | None
    fan: Fan
    divisor_rays: tuple  # ((ray_index, degree), ...) for every P^(n-1) divisor
    name: str


@dataclass(frozen=True)
class SimplificationStep:
    """One executed blow-down replacing (X, D, d) by (X', D', d+1).

    ``center_cone`` is the pair of result-fan rays whose cone is the
    blow-up center, an invariant P^(n-2) contained in the image divisor.
    """

    wall: object
    removed_ray: int
    result_fan: Fan
    result_divisor_ray: int
    center_cone: tuple


@dataclass(frozen=True)
class ClassificationResult:
    case_tag: str
    nu: int | None
    witness: tuple
    route: str  # point-contraction | line-fibration | bundle-fibration | simplified
    steps: tuple = ()


def divisor_star_fan(fan, ray_index):
    """Fan of the invariant divisor V(ray) in the quotient lattice.

    Collects the maximal cones through the ray, projects the other rays to
    the quotient by the ray's span, and primitivizes the images.  For a
    smooth complete ambient fan the result is again smooth and complete.
    """
    ensure_smooth_complete(fan)
    if fan.dim < 3:
        raise ValueError("divisor fans need ambient dimension at least 3")
    if not 0 <= ray_index < len(fan.rays):
        raise ValueError("ray index out of range")
    v = fan.rays[ray_index]
    star = [cone for cone in fan.max_cones if ray_index in cone]
    images = {}
    order = []
    for cone in star:
        for i in cone:
            if i != ray_index and i not in images:
                images[i] = lattice.primitivize(
                    lattice.quotient_project(v, fan.rays[i])
                )
                order.append(i)
    ray_list = [images[i] for i in order]
    assert len(set(ray_list)) == len(ray_list)
    index_of = {i: k for k, i in enumerate(order)}
    cones = tuple(
        tuple(sorted(index_of[i] for i in cone if i != ray_index))
        for cone in star
    )
    return Fan(fan.dim - 1, tuple(ray_list), cones, trusted=True)


def _line_wall(fan, ray_index):
    """First wall containing the ray; its class is the divisor's line class."""
    for w in walls(fan):
        if ray_index in w.wall_rays:
            return w
    raise ClassificationViolation("complete fans must have a wall through every ray")


@lru_cache(maxsize=None)
def analyze_divisor(fan, ray_index):
    """Decide whether V(ray) is a projective space and read its degree.

    Recognition: the divisor fan lives in dimension n-1 with Picard rank
    (ray count) - (dimension); exactly n rays means rank one, which for a
    smooth complete fan pins projective (n-1)-space.  The degree is the
    coefficient of the ray in any wall relation through it; every such
    wall must agree, since all lines in the divisor are equivalent.
    """
    star = divisor_star_fan(fan, ray_index)
    if len(star.rays) != fan.dim:
        return DivisorAnalysis(ray_index, False)
    d = None
    first = None
    for w in walls(fan):
        if ray_index in w.wall_rays:
            coeff = w.coeffs[w.wall_rays.index(ray_index)]
            if first is None:
                first, d = w, coeff
            elif coeff != d:
                raise ClassificationViolation("line class not well-defined")
    return DivisorAnalysis(ray_index, True, d, curve_class(fan, first))


def find_transverse_extremal(fan, ray_index):
    """Smallest Mori extremal wall meeting V(ray) transversally in one point.

    Candidates carry the ray as an apex and not among the wall rays, which
    makes the divisor-curve intersection exactly 1; the class must not be
    a positive multiple of the divisor's line class.  Returns None when no
    such wall exists.  Walls are scanned in lexicographic ray-index order,
    so the choice is deterministic.
    """
    analysis = analyze_divisor(fan, ray_index)
    if not analysis.is_proj_space:
        raise ValueError("divisor is not a projective space")
    line = analysis.line_class.dots
    for w in walls(fan):
        if ray_index in w.wall_rays or ray_index not in (w.apex_a, w.apex_b):
            continue
        if is_positive_multiple(line, curve_class(fan, w).dots):
            continue
        if is_mori_extremal(fan, w):
            return w
    return None


def simplify_pair(fan, ray_index):
    """One blow-down step turning (X, D, d) into (X', D', d+1) when possible.

    Returns None when no transverse Mori extremal wall exists, or when the
    transverse wall has the all-zero coefficient pattern (the fan is then a
    P^1-bundle over the divisor and nothing contracts).  Any other pattern
    than all-zero / single -1 is impossible on Fano input and raises.
    """
    if not is_fano(fan):
        raise ValueError("simplification is defined on Fano fans")
    analysis = analyze_divisor(fan, ray_index)
    if not analysis.is_proj_space:
        raise ValueError("divisor is not a projective space")
    w = find_transverse_extremal(fan, ray_index)
    if w is None:
        return None
    if not any(w.coeffs):
        return None  # fibration case
    if sorted(w.coeffs) != [-1] + [0] * (len(w.coeffs) - 1):
        raise ClassificationViolation(
            f"transverse extremal wall has coefficients {w.coeffs}; "
            "only all-zero or a single -1 can occur on a Fano fan"
        )
    result, removed = contract_codim2(fan, w)
    new_ray = ray_index if ray_index < removed else ray_index - 1
    if not is_fano(result):
        raise ClassificationViolation(
            "blow-down along a transverse extremal wall left the Fano locus"
        )
    after = analyze_divisor(result, new_ray)
    if not after.is_proj_space or after.d != analysis.d + 1:
        raise ClassificationViolation(
            "blow-down must raise the divisor degree by exactly one"
        )

    def shift(i):
        return i if i < removed else i - 1

    center = tuple(sorted((shift(w.apex_a), shift(w.apex_b))))
    return SimplificationStep(w, removed, result, new_ray, center)


def projective_space_fan(n):
    """Fan of n-dimensional projective space: e_1..e_n and their negated sum."""
    rays = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    rays.append((-1,) * n)
    cones = tuple(tuple(c) for c in combinations(range(n + 1), n))
    return Fan(n, tuple(rays), cones)


def p1_bundle_fan(n, nu):
    """Fan of the P^1-bundle P(O + O(nu)) over P^(n-1).

    Rays: the fiber pair +-e_n (indices 0 and 1), the base rays e_1 ..
    e_{n-1} (indices 2 .. n), and (-1, .., -1, nu) (index n+1).  V(ray 1)
    has normal degree nu and V(ray 0) has -nu.
    """
    f_plus = tuple(int(k == n - 1) for k in range(n))
    f_minus = tuple(-x for x in f_plus)
    base = [tuple(int(i == k) for i in range(n)) for k in range(n - 1)]
    b0 = tuple([-1] * (n - 1) + [nu])
    rays = (f_plus, f_minus, *base, b0)
    cones = []
    for fiber in (0, 1):
        for skip in range(2, n + 2):
            cones.append(
                tuple(sorted([fiber] + [i for i in range(2, n + 2) if i != skip]))
            )
    return Fan(n, rays, tuple(cones))


def _entry(case_tag, nu, fan, expected, name):
    """Build a catalog entry, verifying the fan and its divisor inventory."""
    assert is_smooth(fan) and is_complete(fan) and is_fano(fan), name
    found = {}
    for i in range(len(fan.rays)):
        analysis = analyze_divisor(fan, i)
        if analysis.is_proj_space:
            found[i] = analysis.d
    assert found == expected, (name, found, expected)
    return CatalogEntry(
        case_tag, nu, fan, tuple(sorted(found.items())), name
    )


@lru_cache(maxsize=None)
def catalog(n):
    """The 2n+1 smooth toric Fano n-folds carrying a P^(n-1) divisor.

    (i) projective space; (ii) the blow-up of projective space along a
    linear codimension-two subspace, a P^(n-1)-bundle over the line whose
    fibers are the divisors; (iii) the P^1-bundles P(O + O(nu)) over
    P^(n-1) for 0 <= nu <= n-1; (iv) for 0 <= nu <= n-2 the blow-up of
    P(O + O(nu+1)) along a linear P^(n-2) inside the degree nu+1 divisor.
    Every entry records all its projective-space divisors with degrees.
    """
    if not 3 <= n <= 6:
        raise ValueError("catalog is built for dimensions 3 through 6")
    entries = []
    pn = projective_space_fan(n)
    entries.append(
        _entry("i", None, pn, {i: 1 for i in range(n + 1)}, f"P^{n}")
    )
    # codimension-two center: the cone of two rays cuts out a linear P^(n-2)
    blown = star_subdivide(pn, (0, 1))
    entries.append(
        _entry(
            "ii",
            None,
            blown,
            {0: 0, 1: 0},
            f"B(P^{n}, linear P^{n - 2})",
        )
    )
    for nu in range(n):
        entries.append(
            _entry(
                "iii",
                nu,
                p1_bundle_fan(n, nu),
                {0: -nu, 1: nu},
                f"P(O+O({nu})) over P^{n - 1}",
            )
        )
    for nu in range(n - 1):
        down = p1_bundle_fan(n, nu + 1)
        plus_side = next(
            i for i in (0, 1) if analyze_divisor(down, i).d == nu + 1
        )
        fan4 = star_subdivide(down, tuple(sorted((plus_side, 2))))
        entries.append(
            _entry(
                "iv",
                nu,
                fan4,
                {plus_side: nu, 1 - plus_side: -nu - 1},
                f"B(P(O+O({nu + 1})) over P^{n - 1}, linear P^{n - 2})",
            )
        )
    return tuple(entries)


def _match(fan, expect, route, steps):
    """Identify the fan with an expected catalog entry, with witness."""
    for entry in catalog(fan.dim):
        if (entry.case_tag, entry.nu) not in expect:
            continue
        witness = fans_isomorphic(fan, entry.fan)
        if witness is not None:
            return ClassificationResult(
                entry.case_tag, entry.nu, witness, route, steps
            )
    raise ClassificationViolation(
        f"no catalog match among {sorted(expect)}; classification is broken"
    )


def classify_fano_with_divisor(fan, ray_index):
    """Identify (fan, V(ray)) inside the catalog and return a witness.

    Route: if d >= 0 and the line class spans an extremal ray, the line
    contraction identifies the fan directly (degree 1 contracts everything
    to a point, forcing projective space; degree 0 fibers over a line).
    Otherwise a transverse Mori extremal wall exists; its all-zero pattern
    identifies a P^1-bundle, and the single -1 pattern is blown down once,
    after which the smaller pair must identify without contracting again.
    """
    if fan.dim < 3:
        raise ValueError("classification is stated for dimension at least 3")
    if not is_fano(fan):
        raise ValueError("classification needs a Fano fan")
    return _classify(fan, ray_index, allow_simplify=True)


def _classify(fan, ray_index, allow_simplify):
    analysis = analyze_divisor(fan, ray_index)
    if not analysis.is_proj_space:
        raise ValueError("divisor is not a projective space")
    d = analysis.d
    line_wall = _line_wall(fan, ray_index)
    if d >= 0 and is_extremal(fan, line_wall):
        if d == 0:
            return _match(
                fan, {("ii", None), ("iii", 0)}, "line-fibration", ()
            )
        info = contraction_info(fan, line_wall)
        if d != 1 or info.alpha != 0 or info.beta != 0:
            raise ClassificationViolation(
                f"extremal line class with degree {d} must contract the"
                " fan to a point with degree exactly 1"
            )
        return _match(fan, {("i", None)}, "point-contraction", ())
    w = find_transverse_extremal(fan, ray_index)
    if w is None:
        raise ClassificationViolation(
            "no transverse extremal wall for an effective divisor"
        )
    if not any(w.coeffs):
        nu = abs(d)
        if nu > fan.dim - 1:
            raise ClassificationViolation(
                f"bundle parameter {nu} violates the Fano bound {fan.dim - 1}"
            )
        return _match(fan, {("iii", nu)}, "bundle-fibration", ())
    if not allow_simplify:
        raise ClassificationViolation("pair would blow down twice in a row")
    step = simplify_pair(fan, ray_index)
    assert step is not None
    inner = _classify(step.result_fan, step.result_divisor_ray, allow_simplify=False)
    if inner.case_tag == "i":
        expect = {("ii", None)}
    elif inner.case_tag == "iii":
        expect = {("iv", d if d >= 0 else -d - 1)}
    else:
        raise ClassificationViolation(
            f"blow-down landed on case {inner.case_tag}, which would admit"
            " a second blow-down"
        )
    return _match(fan, expect, "simplified", (step,))


@dataclass(frozen=True)
class FixedPointProbe:
    """Result of blowing up one fixed point (maximal cone)."""

    cone_index: int
    cone: tuple
    blowup_fano: bool
    conclusion: str | None = None  # projective-space | blown-projective-space
    witness: tuple | None = None
    violation: str | None = None


@dataclass(frozen=True)
class Theorem1Report:
    dim: int
    input_fano: bool
    probes: tuple
    global_violations: tuple = ()

    @property
    def violations(self):
        probe_level = tuple(
            f"cone {p.cone_index}: {p.violation}"
            for p in self.probes
            if p.violation
        )
        return probe_level + self.global_violations

    @property
    def fano_cone_indices(self):
        return tuple(p.cone_index for p in self.probes if p.blowup_fano)


def theorem1_check(fan):
    """Blow up every fixed point, test for Fano, identify the input fan.

    For each maximal cone whose star subdivision is Fano, the input fan
    must be projective space (then every fixed point works) or the blow-up
    of projective space along a linear codimension-two subspace (then the
    fixed point avoids the exceptional divisor); both identifications come
    with explicit witnesses.  Contradictions are recorded per fixed point,
    not raised.
    """
    ensure_smooth_complete(fan)
    if fan.dim < 3:
        raise ValueError("the blow-up criterion is stated for dimension at least 3")
    n = fan.dim
    probes = []
    any_fano = False
    for ci, cone in enumerate(fan.max_cones):
        blown = star_subdivide(fan, cone)
        exceptional = len(blown.rays) - 1
        if not is_fano(blown):
            probes.append(FixedPointProbe(ci, cone, False))
            continue
        any_fano = True
        conclusion = witness = violation = None
        try:
            analysis = analyze_divisor(blown, exceptional)
            if not analysis.is_proj_space or analysis.d != -1:
                raise ClassificationViolation(
                    "exceptional divisor of a point blow-up must be a"
                    " projective space of degree -1"
                )
            result = classify_fano_with_divisor(blown, exceptional)
            key = (result.case_tag, result.nu)
            if key == ("iii", 1):
                conclusion = "projective-space"
                witness = fans_isomorphic(fan, projective_space_fan(n))
                if witness is None:
                    raise ClassificationViolation(
                        "blow-up identified as the point blow-up of projective"
                        " space, but the fan is not projective space"
                    )
            elif key == ("iv", 0):
                conclusion = "blown-projective-space"
                entry = next(e for e in catalog(n) if e.case_tag == "ii")
                witness = fans_isomorphic(fan, entry.fan)
                if witness is None:
                    raise ClassificationViolation(
                        "blow-up identified as case iv with parameter 0, but"
                        " the fan is not the codimension-two blow-up of"
                        " projective space"
                    )
                # the entry's exceptional ray is the one appended by its
                # construction; pull it back through the witness
                target_exc = entry.fan.rays[-1]
                own_exc = next(
                    i
                    for i, r in enumerate(fan.rays)
                    if lattice.matrix_apply(witness, r) == target_exc
                )
                if own_exc in cone:
                    raise ClassificationViolation(
                        "fixed point lies on the exceptional divisor yet its"
                        " blow-up is Fano"
                    )
            else:
                raise ClassificationViolation(
                    f"point blow-up classified as case {result.case_tag} with"
                    f" parameter {result.nu}; only the point blow-up of"
                    " projective space or the fiber-type blow-up can occur"
                )
        except ClassificationViolation as err:
            violation = str(err)
        probes.append(
            FixedPointProbe(ci, cone, True, conclusion, witness, violation)
        )
    input_fano = is_fano(fan)
    global_violations = ()
    if any_fano and not input_fano:
        global_violations = (
            "some point blow-up is Fano but the fan itself is not",
        )
    return Theorem1Report(n, input_fano, tuple(probes), global_violations)


def random_corpus(n, count, max_depth, seed):
    """Seeded corpus of smooth complete fans: random subdivisions of P^n."""
    if n not in (3, 4):
        raise ValueError("corpus generation supports dimensions 3 and 4")
    if not 0 <= count <= 1000:
        raise ValueError("count must be between 0 and 1000")
    if not 0 <= max_depth <= 4:
        raise ValueError("max_depth must be between 0 and 4")
    rng = random.Random(seed)
    base = projective_space_fan(n)
    fans = []
    for _ in range(count):
        fan = base
        depth = rng.randint(1, max_depth) if max_depth else 0
        for _ in range(depth):
            cone = fan.max_cones[rng.randrange(len(fan.max_cones))]
            size = rng.randint(2, n)
            center = tuple(sorted(rng.sample(cone, size)))
            fan = star_subdivide(fan, center)
        if not (is_smooth(fan) and is_complete(fan)):
            raise ClassificationViolation(
                "star subdivision failed to preserve smoothness or completeness"
            )
        fans.append(fan)
    return tuple(fans)

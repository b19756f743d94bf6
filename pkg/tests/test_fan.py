import random

import pytest

from toricfano import (
    Fan,
    InvalidFanError,
    contract_codim2,
    fans_isomorphic,
    is_complete,
    is_smooth,
    projective_space_fan,
    random_corpus,
    star_subdivide,
    validate,
    walls,
)
from toricfano import lattice
from toricfano.fan import cone_contains, wall_relation_holds


P2 = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))


class TestValidate:
    def test_p2_is_valid(self):
        assert validate(P2).valid

    def test_non_primitive_ray(self):
        fan = Fan(2, ((2, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
        report = validate(fan)
        assert not report.valid
        assert any("ray 0 not primitive" in p for p in report.problems)

    def test_duplicate_ray(self):
        fan = Fan(2, ((1, 0), (1, 0), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
        assert any("equal" in p for p in validate(fan).problems)

    def test_wrong_cone_size(self):
        fan = Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((0, 1), (0, 1, 2)))
        assert any(
            "cone 0 has size 2, expected 3" in p for p in validate(fan).problems
        )

    def test_overlapping_interiors_detected(self):
        # (1,1) lies inside the first quadrant: the two cones overlap
        fan = Fan(2, ((1, 0), (0, 1), (1, 1)), ((0, 1), (1, 2)))
        report = validate(fan)
        assert not report.valid
        assert any("overlapping interiors" in p for p in report.problems)

    def test_non_simplicial_cone(self):
        fan = Fan(2, ((1, 0), (-1, 0)), ((0, 1),))
        assert any("not simplicial" in p for p in validate(fan).problems)

    def test_unused_ray(self):
        fan = Fan(2, ((1, 0), (0, 1), (-1, -1), (0, -1)), ((0, 1), (1, 2), (0, 2)))
        assert any("not used" in p for p in validate(fan).problems)


class TestSmooth:
    def test_p3(self, p3):
        assert is_smooth(p3)

    def test_singular_cone(self):
        fan = Fan(2, ((1, 0), (-1, -2)), ((0, 1),))
        assert not is_smooth(fan)

    def test_p1xp1(self):
        fan = Fan(
            2,
            ((1, 0), (0, 1), (-1, 0), (0, -1)),
            ((0, 1), (1, 2), (2, 3), (0, 3)),
        )
        assert is_smooth(fan)
        assert is_complete(fan)

    def test_invalid_fan_raises(self):
        fan = Fan(2, ((2, 0), (0, 1)), ((0, 1),))
        with pytest.raises(InvalidFanError):
            is_smooth(fan)


class TestComplete:
    def test_p3(self, p3):
        assert is_complete(p3)

    def test_single_cone(self):
        fan = Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((0, 1, 2),))
        assert not is_complete(fan)

    def test_p3_with_cone_deleted(self, p3):
        fan = Fan(3, p3.rays, p3.max_cones[:-1])
        assert not is_complete(fan)


class TestWalls:
    def test_p3_walls(self, p3, get_wall):
        ws = walls(p3)
        assert len(ws) == 6
        w = get_wall(ws, (0, 1))  # {e1, e2}
        assert (w.apex_a, w.apex_b) == (2, 3)
        assert w.coeffs == (1, 1)
        assert all(wall_relation_holds(p3, w) for w in ws)

    def test_point_blowup_walls(self, blowup_p3_point, get_wall):
        ws = walls(blowup_p3_point)
        assert len(ws) == 9
        w = get_wall(ws, (0, 4))  # {e1, w}
        assert (w.apex_a, w.apex_b) == (1, 2)
        # relation e2 + e3 - w + e1 = 0
        assert dict(zip(w.wall_rays, w.coeffs)) == {0: 1, 4: -1}

    def test_fiber_wall_of_product(self, p1xp2, get_wall):
        ws = walls(p1xp2)
        w = get_wall(ws, (2, 3))  # {b1, b2}
        assert (w.apex_a, w.apex_b) == (0, 1)
        assert w.coeffs == (0, 0)

    def test_wall_incidence_count(self, p3, blowup_p3_point, p1xp2):
        for fan in (p3, blowup_p3_point, p1xp2):
            assert sum(fan.dim for _ in fan.max_cones) == 2 * len(walls(fan))

    def test_walls_require_completeness(self):
        fan = Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((0, 1, 2),))
        with pytest.raises(InvalidFanError):
            walls(fan)


class TestStarSubdivide:
    def test_point_center(self, p3, blowup_p3_point):
        assert len(blowup_p3_point.rays) == 5
        assert len(blowup_p3_point.max_cones) == 6
        assert blowup_p3_point.rays[4] == (1, 1, 1)
        assert is_smooth(blowup_p3_point)
        assert is_complete(blowup_p3_point)

    def test_curve_center(self, blowup_p3_line):
        assert len(blowup_p3_line.rays) == 5
        assert len(blowup_p3_line.max_cones) == 6
        assert blowup_p3_line.rays[4] == (1, 1, 0)

    def test_product_center(self, p1xp2):
        result = star_subdivide(p1xp2, (0, 2))
        assert result.rays[5] == (1, 1, 0)
        # the two cones through {u+, b1} split in two each
        assert len(result.max_cones) == 8

    def test_rejects_small_center(self, p3):
        with pytest.raises(ValueError, match="at least 2"):
            star_subdivide(p3, (0,))

    def test_rejects_non_face(self, p1xp2):
        # {u+, u-} is not contained in any cone
        with pytest.raises(ValueError, match="not a face"):
            star_subdivide(p1xp2, (0, 1))

    def test_preserves_smooth_complete(self, p3):
        rng = random.Random(5)
        fan = p3
        for _ in range(4):
            cone = fan.max_cones[rng.randrange(len(fan.max_cones))]
            size = rng.randint(2, 3)
            fan = star_subdivide(fan, tuple(rng.sample(cone, size)))
            assert is_smooth(fan)
            assert is_complete(fan)


class TestContract:
    def test_round_trip_p1xp2(self, p1xp2, get_wall):
        blown = star_subdivide(p1xp2, (0, 2))
        w = get_wall(walls(blown), (3, 5))  # {b2, w}: relation u+ + b1 - w = 0
        assert dict(zip(w.wall_rays, w.coeffs)) == {3: 0, 5: -1}
        result, removed = contract_codim2(blown, w)
        assert removed == 5
        assert result == p1xp2

    def test_round_trip_p3_line(self, p3, blowup_p3_line, get_wall):
        candidates = [
            w
            for w in walls(blowup_p3_line)
            if 4 in w.wall_rays and dict(zip(w.wall_rays, w.coeffs))[4] == -1
        ]
        result, removed = contract_codim2(blowup_p3_line, candidates[0])
        assert removed == 4
        assert result == p3
        again = star_subdivide(result, (candidates[0].apex_a, candidates[0].apex_b))
        assert again == blowup_p3_line

    def test_contract_interior_ray_index(self, p1xp2):
        # move the exceptional ray to the middle of the ray list; indices
        # above it must shift down and the round trip close up to reorder
        blown = star_subdivide(p1xp2, (0, 2))
        order = [0, 1, 5, 2, 3, 4]
        relabel = {old: new for new, old in enumerate(order)}
        fan = Fan(
            3,
            tuple(blown.rays[i] for i in order),
            tuple(tuple(relabel[i] for i in c) for c in blown.max_cones),
        )
        w = next(
            w
            for w in walls(fan)
            if 2 in w.wall_rays and dict(zip(w.wall_rays, w.coeffs))[2] == -1
        )
        result, removed = contract_codim2(fan, w)
        assert removed == 2
        assert result == p1xp2
        center = tuple(
            sorted(i if i < 2 else i - 1 for i in (w.apex_a, w.apex_b))
        )
        again = star_subdivide(result, center)
        assert again == blown
        assert fans_isomorphic(again, fan) is not None

    def test_rejects_wrong_pattern(self, p3, get_wall):
        w = get_wall(walls(p3), (0, 1))
        with pytest.raises(ValueError, match="not a codimension-two blow-down wall"):
            contract_codim2(p3, w)

    def test_rejects_foreign_wall(self, p3, p1xp2, get_wall):
        w = get_wall(walls(p1xp2), (2, 3))
        with pytest.raises(ValueError, match="does not belong"):
            contract_codim2(p3, w)

    def test_rejects_broken_pairing(self, blowup_p3_line, get_wall):
        # blow up a point inside the exceptional structure: the wall with
        # relation e1 + e2 - w = 0 keeps its blow-down pattern, but the
        # star of w no longer pairs up across the apexes
        fan = star_subdivide(blowup_p3_line, (0, 2, 4))  # cone <e1, e3, w>
        w = get_wall(walls(fan), (3, 4))  # {e0, w}
        assert dict(zip(w.wall_rays, w.coeffs)) == {3: 0, 4: -1}
        with pytest.raises(ValueError, match="not a star subdivision"):
            contract_codim2(fan, w)


def apply_witness(matrix, fan, target):
    mapped = {lattice.matrix_apply(matrix, r) for r in fan.rays}
    return mapped == set(target.rays)


class TestIsomorphism:
    def test_permuted_p3(self, p3):
        order = [3, 1, 0, 2]
        relabel = {old: new for new, old in enumerate(order)}
        permuted = Fan(
            3,
            tuple(p3.rays[i] for i in order),
            tuple(tuple(relabel[i] for i in c) for c in p3.max_cones),
        )
        m = fans_isomorphic(p3, permuted)
        assert m is not None
        assert apply_witness(m, p3, permuted)

    def test_distinct_ray_counts(self, p3, blowup_p3_point):
        assert fans_isomorphic(p3, blowup_p3_point) is None

    def test_reflexive_and_symmetric(self, blowup_p3_line, p1xp2):
        assert fans_isomorphic(blowup_p3_line, blowup_p3_line) is not None
        m = fans_isomorphic(blowup_p3_line, blowup_p3_line)
        assert apply_witness(m, blowup_p3_line, blowup_p3_line)
        blown = star_subdivide(p1xp2, (0, 2))
        other = star_subdivide(p1xp2, (1, 3))
        forward = fans_isomorphic(blown, other)
        backward = fans_isomorphic(other, blown)
        assert forward is not None and backward is not None
        assert apply_witness(forward, blown, other)
        assert apply_witness(backward, other, blown)

    def test_same_counts_different_fans(self, blowup_p3_line):
        from toricfano import p1_bundle_fan

        # both have 5 rays and 6 maximal cones
        assert fans_isomorphic(blowup_p3_line, p1_bundle_fan(3, 1)) is None

    def test_two_blowup_constructions_coincide(self, p1xp2):
        # blowing up the product along a curve in a fiber gives the same
        # fan as the catalog's blow-up of the nu=1 bundle
        from toricfano import catalog

        blown = star_subdivide(p1xp2, (0, 2))
        entry = next(
            e for e in catalog(3) if (e.case_tag, e.nu) == ("iv", 0)
        )
        m = fans_isomorphic(blown, entry.fan)
        assert m is not None
        assert apply_witness(m, blown, entry.fan)


class TestConeContains:
    def test_membership(self, p3):
        assert cone_contains(p3, (0, 1, 2), (2, 3, 1))
        assert not cone_contains(p3, (0, 1, 2), (-1, 0, 0))


def test_random_corpus_contract():
    fans = random_corpus(3, 10, 2, seed=1)
    assert len(fans) == 10
    assert all(len(f.rays) <= 6 for f in fans)
    assert random_corpus(3, 10, 2, seed=1) == fans
    assert random_corpus(3, 1, 0, seed=99) == (projective_space_fan(3),)

import pytest

from toricfano import Fan, projective_space_fan, star_subdivide


@pytest.fixture
def p3():
    return projective_space_fan(3)


@pytest.fixture
def p1xp2():
    # u+- = +-(1,0,0), b1 = (0,1,0), b2 = (0,0,1), b0 = (0,-1,-1)
    return Fan(
        3,
        ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, -1)),
        ((0, 2, 3), (0, 2, 4), (0, 3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4)),
    )


@pytest.fixture
def blowup_p3_point(p3):
    """P^3 blown up at the fixed point of <e1,e2,e3>; adds the ray (1,1,1)."""
    return star_subdivide(p3, (0, 1, 2))


@pytest.fixture
def blowup_p3_line(p3):
    """P^3 blown up along the invariant line <e1,e2>; adds the ray (1,1,0)."""
    return star_subdivide(p3, (0, 1))


def wall_by_rays(fan_walls, rays):
    matches = [w for w in fan_walls if w.wall_rays == tuple(sorted(rays))]
    assert len(matches) == 1
    return matches[0]


@pytest.fixture
def get_wall():
    return wall_by_rays

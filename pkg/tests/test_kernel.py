"""Both kernel backends against a brute-force determinant oracle."""

import random
from itertools import permutations

import pytest

from toricfano import kernel
from toricfano import _kernel_pure


def permutation_det(rows):
    """Independent oracle: signed permutation expansion."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += -prod if inversions % 2 else prod
    return total


BACKENDS = kernel.available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    kernel.set_backend(request.param)
    yield request.param
    kernel.set_backend(kernel.available_backends()[-1])


def random_matrix(rng, n, bound):
    return tuple(
        tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n)
    )


def test_det_matches_permutation_oracle(backend):
    rng = random.Random(101)
    for n in (1, 2, 3, 4, 5):
        for _ in range(40):
            m = random_matrix(rng, n, 9)
            assert kernel.det(m) == permutation_det(m)


def test_det_known_values(backend):
    assert kernel.det(((1, 0), (0, 1))) == 1
    assert kernel.det(((1, 0), (1, 2))) == 2
    assert kernel.det(((1, 1, 1), (1, 0, 0), (0, 1, 0))) == 1
    assert kernel.det(((2, 0), (0, 2))) == 4
    assert kernel.det(((1, 2), (2, 4))) == 0


def test_det_rejects_non_square(backend):
    with pytest.raises(ValueError):
        kernel.det(((1, 2, 3), (4, 5, 6)))
    with pytest.raises(ValueError):
        kernel.det(())


def test_solve_verified_by_substitution(backend):
    rng = random.Random(202)
    done = 0
    while done < 60:
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, 7)
        if kernel.det(m) == 0:
            continue
        rhs = tuple(rng.randint(-9, 9) for _ in range(n))
        nums, den = kernel.solve(m, rhs)
        assert den == kernel.det(m)
        for i in range(n):
            assert sum(m[i][j] * nums[j] for j in range(n)) == rhs[i] * den
        done += 1


def test_solve_singular(backend):
    with pytest.raises(ValueError, match="singular"):
        kernel.solve(((1, 2), (2, 4)), (1, 1))


def test_wrappers_fall_back_on_huge_entries():
    big = 10 ** 30
    m = ((big, 1), (1, big))
    expected = _kernel_pure.det(m)
    assert kernel.det(m) == expected
    nums, den = kernel.solve(m, (big, big))
    assert den == expected
    assert all(
        sum(m[i][j] * nums[j] for j in range(2)) == big * den for i in range(2)
    )


@pytest.mark.skipif(len(BACKENDS) < 2, reason="fast kernel not built")
def test_backends_agree_on_random_inputs():
    rng = random.Random(303)
    from toricfano import _kernel_fast

    for _ in range(200):
        n = rng.randint(1, 6)
        m = random_matrix(rng, n, 50)
        assert _kernel_fast.det(m) == _kernel_pure.det(m)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="fast kernel not built")
def test_fast_kernel_raises_overflow_not_garbage():
    from toricfano import _kernel_fast

    with pytest.raises(OverflowError):
        _kernel_fast.det(((2 ** 63, 0), (0, 1)))
    with pytest.raises(OverflowError):
        _kernel_fast.det(((2 ** 62 + 1, 0), (0, 1)))
    # 13x13 exceeds the stack bound and must defer, not crash
    n = 13
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    with pytest.raises(OverflowError):
        _kernel_fast.det(eye)
    assert kernel.det(eye) == 1

import itertools

import numpy as np
import pytest

from descent3.linalg import (
    crt_idempotents,
    in_span_fp,
    independent_rows_fp,
    kernel_mod,
    nullspace_fp,
    prime_power_parts,
    rank_fp,
    solve_fp,
    solve_mod,
)


def _brute_kernel_size(a: np.ndarray, m: int) -> int:
    cols = a.shape[1]
    xs = np.array(list(itertools.product(range(m), repeat=cols)), dtype=np.int64)
    return int((~(xs @ a.T % m).any(axis=1)).sum())


def test_prime_power_parts():
    assert prime_power_parts(12) == ((2, 2, 4), (3, 1, 3))
    assert prime_power_parts(1) == ()
    with pytest.raises(ValueError):
        prime_power_parts(0)


def test_crt_idempotents():
    e2, e3 = crt_idempotents(12)
    assert (e2 % 4, e2 % 3) == (1, 0)
    assert (e3 % 4, e3 % 3) == (0, 1)
    assert crt_idempotents(9) == (1,)


@pytest.mark.parametrize("m", [4, 8, 9, 6, 12])
@pytest.mark.parametrize("seed", range(4))
def test_kernel_mod_matches_brute_force(m, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, m, size=(2, 3))
    gens = kernel_mod(a, m)
    for vec, order in gens:
        assert not (a @ vec % m).any()
        assert not (order * vec % m).any()
    assert int(np.prod([o for _, o in gens], dtype=np.int64)) == _brute_kernel_size(a, m)


@pytest.mark.parametrize("m", [4, 9, 12])
@pytest.mark.parametrize("seed", range(4))
def test_solve_mod_solvable(m, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, m, size=(3, 3))
    b = a @ rng.integers(0, m, size=3) % m
    x = solve_mod(a, b, m)
    assert x is not None
    assert np.array_equal(a @ x % m, b)


def test_solve_mod_unsolvable():
    assert solve_mod(np.array([[2]]), np.array([1]), 4) is None
    assert solve_mod(np.array([[3]]), np.array([1]), 9) is None


def test_fp_helpers():
    a = np.array([[1, 2, 0], [2, 4, 0]])
    assert rank_fp(a, 3) == 1
    null = nullspace_fp(a, 3)
    assert null.shape == (2, 3)
    assert not (a @ null.T % 3).any()
    x = solve_fp(a, np.array([1, 2]), 3)
    assert np.array_equal(a @ x % 3, [1, 2])
    assert solve_fp(a, np.array([1, 1]), 3) is None
    assert in_span_fp(np.array([[1, 0, 1]]), np.array([2, 0, 2]), 3)
    assert not in_span_fp(np.array([[1, 0, 1]]), np.array([1, 0, 0]), 3)


def test_independent_rows_fp():
    vectors = np.array([[1, 0], [2, 0], [0, 0], [0, 1], [1, 1]])
    assert independent_rows_fp(vectors, 3) == [0, 3]

import random

from flab.zlinalg import (
    FiniteAbelian,
    homology_of_pair,
    kernel_basis,
    mat_mul,
    smith_normal_form,
    solve_in_lattice,
)


def test_snf_known():
    A = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    D, U, V = smith_normal_form(A)
    assert mat_mul(mat_mul(U, A), V) == D
    assert [D[i][i] for i in range(3)] == [2, 2, 156]


def test_snf_random_property():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        A = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        D, U, V = smith_normal_form(A)
        assert mat_mul(mat_mul(U, A), V) == D
        diag = [D[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            if b != 0:
                assert a != 0 and b % a == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert D[i][j] == 0


def test_kernel_basis():
    A = [[1, 2, 3]]
    basis = kernel_basis(A)
    assert len(basis) == 2
    for col in basis:
        assert sum(a * x for a, x in zip(A[0], col)) == 0


def test_solve_in_lattice():
    basis = [[2, 0], [0, 3]]
    assert solve_in_lattice(basis, [4, 3]) == [2, 1]
    assert solve_in_lattice(basis, [1, 0]) is None


def test_homology_zero_map_gives_kernel():
    # 0 -> Z/4 -> 0: H = Z/4
    H = homology_of_pair([4], [[0]], [1], [[0]], [1])
    assert H == FiniteAbelian([4])


def test_homology_exact_sequence_is_trivial():
    # Z/2 --id--> Z/2 --0--> 0 has trivial homology at the middle
    H = homology_of_pair([2], [[1]], [2], [[0]], [1])
    assert H.is_trivial()


def test_homology_mod2_inclusion():
    # Z/2 --x2--> Z/4 --proj--> Z/2: ker(proj) = 2Z/4, im(x2) = 2Z/4
    H = homology_of_pair([4], [[2]], [2], [[1]], [2])
    assert H.is_trivial()

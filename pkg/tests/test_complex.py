import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings, strategies as st

from trackcube.complex import (coboundary_rows, complex_from_faces, disjoint_union,
                               euler_characteristic, gf2_rank, h1_z2_dimension,
                               seven_vertex_torus, validate_complex)
from trackcube.errors import DanglingEdge, DuplicateSimplex, InputError, MissingSimplex
from trackcube.generate import random_disk


def sympy_h1(K):
    """Independent oracle: dense coboundary matrices ranked over GF(2) by sympy."""
    d0, d1 = coboundary_rows(K)

    def rank(rows, width):
        if not rows:
            return 0
        dense = [[(r >> j) & 1 for j in range(width)] for r in rows]
        return DomainMatrix.from_list(dense, GF(2)).rank()

    return (K.E - rank(d1, K.E)) - rank(d0, K.V)


def test_k1_counts(K1):
    assert (K1.V, K1.E, K1.T) == (3, 3, 1)
    assert K1.is_pure and len(K1.boundary_edges) == 3


def test_k2_counts(K2):
    assert (K2.V, K2.E, K2.T) == (4, 5, 2)
    assert K2.edge_faces[(2, 3)] == ((1, 2, 3), (2, 3, 4))


def test_missing_edge():
    with pytest.raises(MissingSimplex):
        validate_complex({"vertices": [1, 2, 3], "edges": [[2, 3], [1, 3]], "faces": [[1, 2, 3]]})


def test_duplicates_and_dangling():
    with pytest.raises(DuplicateSimplex):
        validate_complex({"vertices": [1, 2], "edges": [[1, 2], [2, 1]], "faces": []})
    with pytest.raises(DuplicateSimplex):
        validate_complex({"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3], [1, 3]],
                          "faces": [[1, 2, 3], [3, 2, 1]]})
    K = validate_complex({"vertices": [1, 2, 3, 4], "edges": [[1, 2], [2, 3], [1, 3], [3, 4]],
                          "faces": [[1, 2, 3]]})
    with pytest.raises(DanglingEdge):
        validate_complex(K, pure=True)


def test_malformed_input():
    with pytest.raises(InputError):
        validate_complex({"vertices": [1, 2]})


def test_unknown_fields_warn(caplog):
    validate_complex({"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3], [1, 3]],
                      "faces": [[1, 2, 3]], "colour": "red"})
    assert "colour" in caplog.text


def test_h1(K1):
    assert h1_z2_dimension(K1) == 0
    T = seven_vertex_torus()
    assert (T.V, T.E, T.T) == (7, 21, 14)
    assert h1_z2_dimension(T) == 2
    assert sympy_h1(T) == 2
    assert h1_z2_dimension(disjoint_union(K1, K1)) == 0


def test_euler(K1, K2):
    assert euler_characteristic(K1) == 1
    assert euler_characteristic(K2) == 1
    assert euler_characteristic(seven_vertex_torus()) == 0


def test_gf2_rank_against_dense():
    rng = np.random.default_rng(3)
    for _ in range(50):
        M = rng.integers(0, 2, size=(6, 9))
        rows = [int("".join(map(str, r[::-1])), 2) for r in M]
        # dense oracle by brute force over the row space
        space = {0}
        for r in rows:
            space |= {x ^ r for x in space}
        assert 2 ** gf2_rank(rows) == len(space)


def test_validation_idempotent(K2):
    assert validate_complex(K2) is K2
    assert validate_complex(K2.to_json()) == K2


def cone(n_base):
    # cone over a path: contractible
    return complex_from_faces([(0, i, i + 1) for i in range(1, n_base)])


@given(st.integers(2, 12))
def test_cones_have_trivial_h1(n):
    assert h1_z2_dimension(cone(n)) == 0


@settings(max_examples=40)
@given(st.integers(1, 15), st.integers(1, 15), st.integers(0, 2 ** 32))
def test_euler_additive_and_disks(a, b, seed):
    rng = np.random.default_rng(seed)
    A, B = random_disk(a, rng), random_disk(b, rng)
    assert euler_characteristic(disjoint_union(A, B)) == euler_characteristic(A) + euler_characteristic(B)
    assert euler_characteristic(A) == 1 and h1_z2_dimension(A) == 0
    assert h1_z2_dimension(A) == sympy_h1(A)

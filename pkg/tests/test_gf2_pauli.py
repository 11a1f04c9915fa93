import sys
from itertools import product
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.engine import gf2  # type: ignore
from app.engine.errors import SizeMismatch  # type: ignore
from app.engine.pauli import (  # type: ignore
    PauliGroup,
    PauliOp,
    center,
    commutation_matrix,
    commutes,
    equal_span,
    in_span,
    is_abelian,
    overlap_group,
    rank,
)

I2 = np.eye(2, dtype=complex)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PZ = np.array([[1, 0], [0, -1]], dtype=complex)


def dense(p: PauliOp) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for x, z in zip(p.x, p.z):
        m = I2
        if x:
            m = m @ PX
        if z:
            m = m @ PZ
        out = np.kron(out, m)
    return out


# -------- gf2 --------
def test_rank_and_nullspace():
    M = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert gf2.rank(M) == 2
    N = gf2.nullspace(M)
    assert N.shape == (1, 3)
    assert not gf2.matmul(M, N.T).any()


def test_rank_agrees_with_echelon_pivots():
    rng = np.random.default_rng(7)
    for shape in [(4, 9), (9, 4), (6, 6)]:
        M = rng.integers(0, 2, size=shape).astype(np.uint8)
        _, piv = gf2.row_echelon(M)
        assert gf2.rank(M) == len(piv)
        assert gf2.nullspace(M).shape[0] == shape[1] - len(piv)
    assert gf2.rank(np.zeros((0, 5), dtype=np.uint8)) == 0
    assert gf2.rank(np.zeros((3, 5), dtype=np.uint8)) == 0


def test_solve_rows_and_membership():
    A = np.array([[1, 0, 1, 0], [0, 1, 1, 0]], dtype=np.uint8)
    x = gf2.solve_rows(A, [1, 1, 0, 0])
    assert list(x) == [1, 1]
    assert gf2.solve_rows(A, [0, 0, 0, 1]) is None
    assert gf2.in_rowspan(A, [1, 1, 0, 0])
    assert not gf2.in_rowspan(A, [1, 0, 0, 0])


def test_inverse_roundtrip():
    rng = np.random.default_rng(1)
    for _ in range(20):
        M = rng.integers(0, 2, size=(5, 5)).astype(np.uint8)
        if gf2.rank(M) < 5:
            continue
        assert np.array_equal(gf2.matmul(M, gf2.inverse(M)), np.eye(5, dtype=np.uint8))


def test_inverse_singular_raises():
    with pytest.raises(ValueError):
        gf2.inverse(np.ones((2, 2), dtype=np.uint8))


def test_hex_rows():
    row = np.array([1, 0, 1, 1, 0, 1], dtype=np.uint8)
    assert gf2.to_hex(row) == "b4"
    assert np.array_equal(gf2.from_hex("b4", 6), row)


# -------- pauli --------
def test_commutes_examples():
    assert commutes(PauliOp.from_string("X"), PauliOp.from_string("Z")) == 1
    assert commutes(PauliOp.from_string("XX"), PauliOp.from_string("ZZ")) == 0


def test_commutes_matches_dense_matrices():
    ops = [PauliOp.from_string("".join(t)) for t in product("IXYZ", repeat=2)]
    for a in ops:
        for b in ops:
            A, B = dense(a), dense(b)
            anti = not np.allclose(A @ B, B @ A)
            assert commutes(a, b) == int(anti)


def test_commutes_size_mismatch():
    with pytest.raises(SizeMismatch):
        commutes(PauliOp.from_string("X"), PauliOp.from_string("XX"))


def test_commutes_bilinear():
    rng = np.random.default_rng(7)
    for _ in range(30):
        a, b, c = (PauliOp(rng.integers(0, 2, 4), rng.integers(0, 2, 4)) for _ in range(3))
        assert commutes(a * b, c) == commutes(a, c) ^ commutes(b, c)


def test_from_string_rejects_bad_letter():
    with pytest.raises(ValueError):
        PauliOp.from_string("XQ")


def test_rank_basics():
    G = PauliGroup.from_strings(["XX", "ZZ"])
    assert rank(G) == 2
    assert rank(PauliGroup(3)) == 0
    dup = PauliGroup.from_strings(["XX", "ZZ", "XX", "YY"])
    assert rank(dup) == 2


def test_center_examples():
    assert rank(center(PauliGroup.from_strings(["X", "Z"]))) == 0
    G = PauliGroup.from_strings(["ZZI", "IZZ"])
    assert is_abelian(G)
    assert equal_span(center(G), G)


def test_center_is_abelian():
    G = PauliGroup.from_strings(["XXI", "ZIZ", "IYX", "ZZZ"])
    C = center(G)
    assert is_abelian(C)
    for g in C:
        assert in_span(G, g)
        assert all(commutes(g, h) == 0 for h in G)


def test_hexagon_overlap_ranks():
    # face de 6 vértices: X/Z da face e pares de vértices de cada aresta
    n = 6
    gens = [PauliOp.from_support(n, xs=range(n)), PauliOp.from_support(n, zs=range(n))]
    for j in range(n):
        gens.append(PauliOp.from_support(n, xs=(j, (j + 1) % n)))
        gens.append(PauliOp.from_support(n, zs=(j, (j + 1) % n)))
    G = PauliGroup(n, gens)
    assert rank(G) == 4 * 3 - 2
    assert rank(center(G)) == 2


def test_overlap_group_restriction():
    S = PauliGroup.from_strings(["XXXX", "ZZII", "IZZI"])
    full = overlap_group(S, range(4))
    assert equal_span(full, S)
    assert len(overlap_group(S, [])) == 0
    part = overlap_group(S, [0, 1], compact=True)
    assert part.n == 2
    assert equal_span(part, PauliGroup.from_strings(["XX", "ZZ", "IZ"]))
    again = overlap_group(part, [0, 1], compact=True)
    assert equal_span(again, part)


def test_equal_span_examples():
    assert equal_span(PauliGroup.from_strings(["XX", "ZZ"]), PauliGroup.from_strings(["XX", "YY"]))
    G = PauliGroup.from_strings(["XXI", "IZZ"])
    G2 = PauliGroup.from_strings(["XXI", "IZZ", "XYZ"])
    assert equal_span(G, G2)
    assert not equal_span(PauliGroup.from_strings(["X"]), PauliGroup.from_strings(["Z"]))


def test_commutation_matrix_examples():
    assert commutation_matrix([PauliOp.from_string("X")]).tolist() == [[0]]
    assert commutation_matrix([PauliOp.from_string("X"), PauliOp.from_string("Z")]).tolist() == [[0, 1], [1, 0]]

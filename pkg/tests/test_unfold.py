import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.engine import gf2  # type: ignore
from app.engine.clifford import apply, is_symplectic  # type: ignore
from app.engine.codes import logical_count, logical_operators, toric_code  # type: ignore
from app.engine.errors import InvalidParams  # type: ignore
from app.engine.pauli import PauliGroup, PauliOp, commutes  # type: ignore
from app.engine.unfold import (  # type: ignore
    ancilla_count,
    disentangle,
    local_disentangler,
    symplectic_inverse,
    unfolded_logicals,
    verify_decoupled,
)
from app.lattice.builders import cube_3torus, hex_torus, hypercube_like, simplex_like, square_like_2d, triangular_666  # type: ignore
from app.lattice.derive import shrunk_lattice  # type: ignore


def c0_cells(L):
    d = L.dimension
    return [t for t in L.of_dim(d) if L.cells[t].color == 0 and not L.is_exterior(t)]


def test_hexagon_disentangler_maps_zz_to_edges():
    L = hex_torus(3, 3)
    cell = c0_cells(L)[0]
    M = local_disentangler(L, cell)
    assert M.n == 6
    assert is_symplectic(M.matrix)
    dom = {lab: i for i, lab in enumerate(M.domain)}
    cyc = [lab[1] for lab in M.domain]
    hits = 0
    for j in range(6):
        u, v = cyc[j], cyc[(j + 1) % 6]
        img = apply(M, PauliOp.from_support(6, zs=(dom[("v", u)], dom[("v", v)])))
        if img.weight() == 1 and not img.x.any():
            q = img.support()[0]
            assert L.vertices_of(M.codomain[q][1]) == frozenset((u, v))
            hits += 1
    assert hits >= 5


def test_hexagon_disentangler_face_operators():
    L = hex_torus(3, 3)
    cell = c0_cells(L)[0]
    M = local_disentangler(L, cell)
    xf = apply(M, PauliOp.from_support(6, xs=range(6)))
    zf = apply(M, PauliOp.from_support(6, zs=range(6)))
    assert commutes(xf, zf) == 0
    assert xf.weight() > 0 and zf.weight() > 0


def test_local_disentangler_rejects_wrong_cell():
    L = hex_torus(3, 3)
    other = next(t for t in L.of_dim(2) if L.cells[t].color != 0)
    with pytest.raises(InvalidParams):
        local_disentangler(L, other)


def test_cube_cell_disentangler():
    L = hypercube_like(3)
    cell = c0_cells(L)[0]
    assert ancilla_count(L, cell) == 4
    M = local_disentangler(L, cell)
    assert M.n == 12
    assert sum(1 for lab in M.domain if lab[0] == "a") == 4
    assert all(lab[0] == "e" for lab in M.codomain)


def test_verify_decoupled_examples():
    G = PauliGroup.from_strings(["XX"])
    rep = verify_decoupled(G, [[0], [1]])
    assert not rep.ok
    assert rep.witness.to_string() == "XX"
    assert verify_decoupled(G, [[0, 1]]).ok
    split = PauliGroup.from_strings(["XI", "IZ", "XZ"])
    assert verify_decoupled(split, [[0], [1]]).ok
    with pytest.raises(InvalidParams):
        verify_decoupled(G, [[0], [0, 1]])
    with pytest.raises(InvalidParams):
        verify_decoupled(G, [[0]])


def test_verify_decoupled_with_shared_qubits():
    G = PauliGroup.from_strings(["XIX", "IXX"])
    assert verify_decoupled(G, [[0], [1]], shared=[2]).ok


def test_disentangle_hex_torus():
    res = disentangle(hex_torus(3, 3))
    assert res.report.ok and res.equal_span
    assert len(res.parts) == 2
    assert not res.folded
    assert [p.colors for p in res.parts] == [[1], [2]]
    for part in res.parts:
        assert part.code.n == 9
        assert logical_count(part.code) == 2
    assert sum(logical_count(p.code) for p in res.parts) == logical_count(res.cc)
    assert res.s2 == 0
    assert is_symplectic(res.U.matrix)


def test_disentangle_is_deterministic():
    a = disentangle(hex_torus(3, 3))
    b = disentangle(hex_torus(3, 3))
    assert np.array_equal(a.U.matrix, b.U.matrix)
    assert a.U.codomain == b.U.codomain


def test_disentangle_triangular_single_folded_part():
    res = disentangle(triangular_666(3))
    assert len(res.parts) == 1
    assert res.folded
    assert res.parts[0].colors == [1, 2]
    assert res.parts[0].code.n == 7
    assert logical_count(res.parts[0].code) == 1
    assert len(res.shared) == 3


def test_disentangle_square_like():
    res = disentangle(square_like_2d())
    assert res.equal_span
    assert len(res.parts) == 2
    assert [logical_count(p.code) for p in res.parts] == [1, 1]


def test_disentangle_hypercube_3d():
    res = disentangle(hypercube_like(3))
    assert res.report.ok and res.equal_span
    assert len(res.parts) == 3
    assert sum(res.ancillas.values()) == 4
    assert sum(logical_count(p.code) for p in res.parts) == 3


def test_disentangle_simplex_3d_seam():
    res = disentangle(simplex_like(3))
    assert res.equal_span
    assert res.folded
    assert res.parts[0].colors == [1, 2, 3]
    assert len(res.shared) > 0


def test_symplectic_inverse():
    res = disentangle(square_like_2d())
    M = res.U.matrix
    assert np.array_equal(gf2.matmul(M, symplectic_inverse(M)), np.eye(M.shape[0], dtype=np.uint8))


def test_unfolded_logicals_hex_torus():
    res = disentangle(hex_torus(3, 3))
    ls = unfolded_logicals(res)
    assert len(ls) == 4
    assert [t["part"] for t in ls.tags] == [0, 0, 1, 1]
    for i, x in enumerate(ls.xs):
        assert x.n == res.cc.n
        for j, z in enumerate(ls.zs):
            assert commutes(x, z) == int(i == j)


def test_disentangle_hex_torus_3_6():
    res = disentangle(hex_torus(3, 6))
    assert res.report.ok and res.equal_span
    assert [p.colors for p in res.parts] == [[1], [2]]
    assert [logical_count(p.code) for p in res.parts] == [2, 2]


def test_disentangle_triangular_distance_5():
    res = disentangle(triangular_666(5))
    assert res.equal_span and res.folded
    assert len(res.parts) == 1
    assert logical_count(res.parts[0].code) == 1


def test_disentangle_cube_3torus_into_three_copies():
    res = disentangle(cube_3torus(4))
    assert res.report.ok and res.equal_span
    assert [p.colors for p in res.parts] == [[1], [2], [3]]
    assert [logical_count(p.code) for p in res.parts] == [3, 3, 3]


def test_unfolded_logical_tags_carry_direction():
    ls = unfolded_logicals(disentangle(hex_torus(3, 3)))
    assert [t["direction"] for t in ls.tags] == [1, 1, 2, 2]
    folded = unfolded_logicals(disentangle(triangular_666(3)))
    assert [t["direction"] for t in folded.tags] == [None]
    assert folded.tags[0]["colors"] == [1, 2]


def test_toric_logicals_tagged_with_part_color():
    for color in (1, 2):
        P, _ = shrunk_lattice(hex_torus(3, 3), color)
        ls = logical_operators(toric_code(P, 1))
        assert len(ls) == 2
        assert all(t["color"] == [color] for t in ls.tags)

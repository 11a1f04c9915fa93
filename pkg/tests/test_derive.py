import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.engine.errors import InvalidParams, SeamMismatchError  # type: ignore
from app.lattice.builders import cube_3torus, hex_torus, triangular_666  # type: ignore
from app.lattice.complex import DUAL, euler_characteristic, to_dual  # type: ignore
from app.lattice.derive import QubitMap, attach, attach_maps, derive_L_N, shrunk_lattice  # type: ignore


def make_triangle_parts():
    L = triangular_666(3)
    return L, [shrunk_lattice(L, 1), shrunk_lattice(L, 2)]


def test_shrunk_hex_torus():
    L = hex_torus(3, 3)
    P, qm = shrunk_lattice(L, 1)
    assert P.counts() == {0: 3, 1: 9, 2: 6}
    assert euler_characteristic(P) == 0
    assert all(k[0] == "e" for k in qm.keys.values())
    assert qm.seam_keys() == []
    # cada aresta encolhida vem de uma aresta de L sem a cor 1
    for cid, (_, e) in qm.keys.items():
        assert 1 not in L.colors_of(e)


def test_shrunk_rejects_bad_color():
    L = hex_torus(3, 3)
    with pytest.raises(InvalidParams):
        shrunk_lattice(L, 0)
    with pytest.raises(InvalidParams):
        shrunk_lattice(L, 3)
    with pytest.raises(InvalidParams):
        shrunk_lattice(to_dual(L), 1)


def test_triangle_parts_share_seam():
    L, parts = make_triangle_parts()
    seams = [qm.seam_keys() for _, qm in parts]
    assert seams[0] == seams[1]
    assert len(seams[0]) == 3
    ext0 = next(b for b in L.of_dim(2) if L.is_exterior(b) and L.cells[b].color == 0)
    assert {v for _, v in seams[0]} == set(L.vertices_of(ext0))


def test_attach_identifies_seam_once():
    L, parts = make_triangle_parts()
    P, qm = attach_maps(parts)
    own = sum(len([k for k in q.keys.values() if k[0] == "e"]) for _, q in parts)
    assert len(qm.keys) == own + 3
    assert len(P.of_dim(1)) == own + 3
    seam = [cid for cid in P.of_dim(1) if qm.keys[cid][0] == "v"]
    assert all(qm.part_of[cid] == 0 for cid in seam)
    # só o vértice do meio do lado C toca faces reais das duas partes
    assert len([cid for cid in seam if len(P.cells[cid].faces) == 2]) == 1
    assert len(qm.keys) == L.counts()[0]
    assert attach(parts).counts() == P.counts()


def test_attach_single_part_is_identity():
    _, parts = make_triangle_parts()
    P, qm = attach_maps(parts[:1])
    assert P is parts[0][0] and qm is parts[0][1]


def test_attach_mismatched_seams():
    _, parts = make_triangle_parts()
    (P2, qm2) = parts[1]
    drop = qm2.seam_keys()[0]
    broken = QubitMap(keys={c: k for c, k in qm2.keys.items() if k != drop}, part_of=dict(qm2.part_of))
    with pytest.raises(SeamMismatchError):
        attach_maps([parts[0], (P2, broken)])


def test_derive_L_N_hex():
    K = to_dual(hex_torus(3, 3))
    LN = derive_L_N(K, [1])
    assert LN.mode == DUAL
    assert LN.dimension == 2
    assert LN.counts() == {0: 6, 1: 9, 2: 3}
    for f in LN.of_dim(2):
        assert len(LN.cells[f].faces) == 6


def test_derive_L_N_3_torus():
    K = to_dual(cube_3torus(4))
    LN = derive_L_N(K, [1])
    assert LN.dimension == 3
    assert LN.counts() == {0: 48, 1: 224, 2: 192, 3: 16}
    assert euler_characteristic(LN) == 0
    # cada vértice de cor 1 vira uma 3-célula cercada pelos 24 triângulos do seu elo
    assert all(len(LN.cells[c].faces) == 24 for c in LN.of_dim(3))
    assert all(LN.cells[v].color != 1 for v in LN.of_dim(0))


def test_derive_L_N_rejects():
    K = to_dual(hex_torus(3, 3))
    with pytest.raises(InvalidParams):
        derive_L_N(K, [1, 2])
    with pytest.raises(InvalidParams):
        derive_L_N(K, [0])
    with pytest.raises(InvalidParams):
        derive_L_N(hex_torus(3, 3), [1])
    with pytest.raises(InvalidParams):
        derive_L_N(to_dual(triangular_666(3)), [1])

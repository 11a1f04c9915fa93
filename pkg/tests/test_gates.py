import sys
from itertools import permutations
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.engine.codes import LogicalSet, color_code, logical_operators  # type: ignore
from app.engine.errors import GateError, InvalidParams  # type: ignore
from app.engine.gates import (  # type: ignore
    DiagonalPhaseOp,
    bipartition,
    commutator_chain,
    commutator_with_x,
    controlled_z_table,
    is_cross_copy_controlled_z,
    dense_commutator,
    dense_logical_phases,
    dense_phases,
    is_codespace_identity,
    logical_action,
    phase_monomials,
    preserves_codespace,
    transversal_Rd,
)
from app.engine.pauli import PauliOp  # type: ignore
from app.engine.unfold import disentangle, unfolded_logicals  # type: ignore
from app.lattice.builders import hex_torus, hypercube_like, square_like_2d, triangular_666  # type: ignore


def make_square_setup():
    """Código [[4,2,2]] com X̄ em arestas adjacentes a partir do vértice a."""
    L = square_like_2d()
    code = color_code(L)
    face = next(f for f in L.of_dim(2) if not L.is_exterior(f))
    a, b, c, d = L.cells[face].cycle
    q = {label[1]: i for i, label in enumerate(code.qubit_labels)}
    n = code.n
    xs = [PauliOp.from_support(n, xs=(q[a], q[b])), PauliOp.from_support(n, xs=(q[a], q[d]))]
    zs = [PauliOp.from_support(n, zs=(q[a], q[d])), PauliOp.from_support(n, zs=(q[a], q[b]))]
    return L, code, LogicalSet(xs, zs), (q[a], q[b], q[c], q[d])


def test_diagonal_phase_op_validation():
    with pytest.raises(InvalidParams):
        DiagonalPhaseOp(2, 0, [0, 0])
    with pytest.raises(InvalidParams):
        DiagonalPhaseOp(3, 2, [1, 1])
    D = DiagonalPhaseOp(2, 2, [5, -1], 6)
    assert D.coeffs.tolist() == [1, 3] and D.const == 2
    assert D.phase([1, 1]) == (1 + 3 + 2) % 4
    with pytest.raises(GateError):
        D.z_string()
    assert (D * D.inverse()).is_trivial()


def test_commutator_rule():
    D = DiagonalPhaseOp(3, 3, [1, 7, 3], 0)
    K = commutator_with_x(D, PauliOp.from_string("XXI"))
    assert K.coeffs.tolist() == [2, 14 % 8, 0]
    assert K.const == (-(1 + 7)) % 8
    with pytest.raises(InvalidParams):
        commutator_with_x(D, PauliOp.from_string("ZII"))


def test_commutator_matches_dense_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        level = int(rng.integers(1, 4))
        D = DiagonalPhaseOp(n, level, rng.integers(0, 2 ** level, n), int(rng.integers(0, 2 ** level)))
        a = PauliOp(rng.integers(0, 2, n), np.zeros(n, dtype=np.uint8))
        K = commutator_with_x(D, a)
        assert np.allclose(dense_phases(K), dense_commutator(D, a))


def test_dense_oracle_size_limit():
    with pytest.raises(InvalidParams):
        dense_phases(DiagonalPhaseOp.identity(11, 2))


def test_bipartition_hex_torus():
    L = hex_torus(3, 3)
    bip = bipartition(L)
    assert len(bip.T) == len(bip.Tc) == 9
    T = set(bip.T)
    for e in L.of_dim(1):
        u, v = sorted(L.vertices_of(e))
        assert (u in T) != (v in T)
    assert bip.swapped().T == bip.Tc


def test_transversal_swapped_is_inverse():
    L, code, _, _ = make_square_setup()
    bip = bipartition(L)
    D = transversal_Rd(code, bip, 2)
    E = transversal_Rd(code, bip.swapped(), 2)
    assert (D * E).is_trivial()
    assert sorted(D.coeffs.tolist()) == [1, 1, 3, 3]


def test_codespace_identity():
    L, code, ls, (a, _, _, _) = make_square_setup()
    D = transversal_Rd(code, bipartition(L), 2)
    assert is_codespace_identity(D * D, code, ls)
    single = DiagonalPhaseOp(code.n, 2, np.eye(code.n, dtype=np.int64)[a], 0)
    assert not is_codespace_identity(single, code, ls)
    assert not preserves_codespace(single, code, ls)
    with pytest.raises(GateError):
        logical_action(single, code, ls)


def test_square_transversal_s_is_controlled_z():
    L, code, ls, _ = make_square_setup()
    D = transversal_Rd(code, bipartition(L), 2)
    assert preserves_codespace(D, code, ls)
    table = logical_action(D, code, ls)
    assert table == controlled_z_table(2, 2)
    assert dense_logical_phases(D, code, ls) == [f for _, f in table]


def test_controlled_z_table():
    assert controlled_z_table(2, 2) == [((0, 0), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 2)]
    table = dict(controlled_z_table(3, 3))
    assert table[(1, 1, 1)] == 4
    assert sum(table.values()) == 4


def test_commutator_chain_both_orders():
    L, code, ls, (a, b, _, d) = make_square_setup()
    bip = bipartition(L)
    rep = commutator_chain(code, ls, [0, 1], bip, 2)
    assert rep.ok
    assert rep.final.z_string().support() == sorted((a, b))
    data = rep.to_json()
    assert data["order"] == [1, 2] and data["ok"]
    assert len(data["steps"]) == 1
    back = commutator_chain(code, ls, [1, 0], bip, 2)
    assert back.final.z_string().support() == sorted((a, d))


def test_commutator_chain_rejects_bad_order():
    L, code, ls, _ = make_square_setup()
    with pytest.raises(InvalidParams):
        commutator_chain(code, ls, [0, 0], bipartition(L), 2)
    with pytest.raises(InvalidParams):
        commutator_chain(code, ls, [0], bipartition(L), 2)


def test_triangular_logical_action_matches_dense_oracle():
    L = triangular_666(3)
    code = color_code(L)
    ls = logical_operators(code)
    D = transversal_Rd(code, bipartition(L), 2)
    assert preserves_codespace(D, code, ls)
    table = logical_action(D, code, ls)
    assert table[0] == ((0,), 0)
    assert table[1][1] in (1, 3)
    assert dense_logical_phases(D, code, ls) == [f for _, f in table]


def test_transversal_r3_preserves_cube_code():
    L = hypercube_like(3)
    code = color_code(L)
    D = transversal_Rd(code, bipartition(L), 3)
    assert preserves_codespace(D, code)
    assert not preserves_codespace(DiagonalPhaseOp(code.n, 3, [1] + [0] * (code.n - 1)), code)


def make_unfolded_setup(L):
    res = disentangle(L)
    code = color_code(res.lattice)
    return res.lattice, code, unfolded_logicals(res)


def test_phase_monomials():
    assert phase_monomials(controlled_z_table(3, 3), 3) == [(0, 1, 2)]
    assert phase_monomials(controlled_z_table(2, 2), 2) == [(0, 1)]
    # 2·(a1b2 + a2b1 + a2b2) em duas cópias
    table = []
    for l in [(a1, a2, b1, b2) for a1 in (0, 1) for a2 in (0, 1) for b1 in (0, 1) for b2 in (0, 1)]:
        a1, a2, b1, b2 = l
        table.append((l, 2 * ((a1 * b2 + a2 * b1 + a2 * b2) % 2)))
    assert phase_monomials(table, 2) == [(0, 3), (1, 2), (1, 3)]
    assert is_cross_copy_controlled_z(table, [0, 0, 1, 1], 2)
    assert not is_cross_copy_controlled_z(table, [0, 1, 0, 1], 2)
    assert phase_monomials([((0,), 0), ((1,), 1)], 2) is None


def test_square_unfolded_logicals_give_controlled_z():
    L, code, ls = make_unfolded_setup(square_like_2d())
    D = transversal_Rd(code, bipartition(L), 2)
    table = logical_action(D, code, ls)
    assert table == controlled_z_table(2, 2)
    assert is_cross_copy_controlled_z(table, [t["part"] for t in ls.tags], 2)


def test_hex_torus_is_sum_of_cross_copy_controlled_z():
    L, code, ls = make_unfolded_setup(hex_torus(3, 3))
    assert len(ls) == 4
    D = transversal_Rd(code, bipartition(L), 2)
    assert preserves_codespace(D, code, ls)
    table = logical_action(D, code, ls)
    copies = [t["part"] for t in ls.tags]
    assert is_cross_copy_controlled_z(table, copies, 2)
    assert table != controlled_z_table(4, 2)


def test_hypercube_r3_is_ccz_through_unfolded_logicals():
    L, code, ls = make_unfolded_setup(hypercube_like(3))
    bip = bipartition(L)
    D = transversal_Rd(code, bip, 3)
    table = dict(logical_action(D, code, ls))
    assert table[(1, 1, 1)] == 4
    for order in permutations(range(3)):
        assert commutator_chain(code, ls, list(order), bip, 3).ok

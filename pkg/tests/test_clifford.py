import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.engine import gf2  # type: ignore
from app.engine.clifford import (  # type: ignore
    CliffordMap,
    apply,
    assemble,
    canonical_generators,
    circuit_matrix,
    compose,
    is_symplectic,
    isomorphic,
    symplectic_form,
    synthesize,
    to_circuit,
)
from app.engine.errors import CommutationMismatch, DependentGenerators, SizeMismatch  # type: ignore
from app.engine.pauli import PauliGroup, PauliOp, commutation_matrix, commutes  # type: ignore


def random_symplectic(rng: np.random.Generator, n: int, depth: int = 40) -> np.ndarray:
    gates = []
    for _ in range(depth):
        kind = rng.integers(0, 3)
        if kind == 0:
            gates.append(("H", int(rng.integers(0, n))))
        elif kind == 1:
            gates.append(("S", int(rng.integers(0, n))))
        elif n > 1:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(("CNOT", int(c), int(t)))
    return circuit_matrix(gates, n)


def test_isomorphic_examples():
    assert isomorphic(PauliGroup.from_strings(["X"]), PauliGroup.from_strings(["Z"]))
    assert not isomorphic(PauliGroup.from_strings(["XI", "ZI"]), PauliGroup.from_strings(["XI", "IX"]))


def test_canonical_generators_examples():
    can = canonical_generators(PauliGroup.from_strings(["X", "Z"]))
    assert (can.n1, can.n2) == (1, 1)
    assert [p.to_string() for p in can.paulis()] == ["X", "Z"]
    can = canonical_generators(PauliGroup.from_strings(["ZZ", "XX"]))
    assert (can.n1, can.n2) == (0, 2)


def test_canonical_generators_pairing_structure():
    G = PauliGroup.from_strings(["XXI", "ZIZ", "IYX", "ZZZ"])
    can = canonical_generators(G)
    C = commutation_matrix(can.paulis())
    m = len(G)
    for i in range(m):
        for j in range(m):
            paired = (i in can.pair_a and j == can.pair_b[can.pair_a.index(i)]) or (
                j in can.pair_a and i == can.pair_b[can.pair_a.index(j)]
            )
            assert C[i, j] == int(paired)
    assert np.array_equal(gf2.matmul(can.expr, G.matrix()), can.ops)


def test_canonical_generators_dependent():
    with pytest.raises(DependentGenerators):
        canonical_generators(PauliGroup.from_strings(["XX", "ZZ", "YY"]))


def test_synthesize_identity_on_standard_basis():
    g = [PauliOp.from_string(s) for s in ("XI", "IX", "ZI", "IZ")]
    M = synthesize(g, g)
    assert np.array_equal(M.matrix, np.eye(4, dtype=np.uint8))


def test_synthesize_random_pairs():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        A = random_symplectic(rng, n)
        B = random_symplectic(rng, n)
        m = int(rng.integers(1, 2 * n + 1))
        idx = sorted(rng.choice(2 * n, size=m, replace=False))
        g = [PauliOp.from_vector(A[i]) for i in idx]
        h = [PauliOp.from_vector(B[i]) for i in idx]
        M = synthesize(g, h)
        assert is_symplectic(M.matrix)
        for a, b in zip(g, h):
            assert apply(M, a) == b


def test_synthesize_commutation_mismatch():
    with pytest.raises(CommutationMismatch):
        synthesize([PauliOp.from_string("X"), PauliOp.from_string("Z")], [PauliOp.from_string("X"), PauliOp.from_string("X")])


def test_synthesize_dependent_targets():
    g = [PauliOp.from_string("ZI"), PauliOp.from_string("IZ")]
    h = [PauliOp.from_string("ZZ"), PauliOp.from_string("ZZ")]
    with pytest.raises(DependentGenerators):
        synthesize(g, h)


def test_synthesize_back_and_forth_fixes_span():
    g = [PauliOp.from_string(s) for s in ("ZZI", "IZZ", "XXX")]
    h = [PauliOp.from_string(s) for s in ("ZII", "IZI", "IIX")]
    assert np.array_equal(commutation_matrix(g), commutation_matrix(h))
    there = synthesize(g, h)
    back = synthesize(h, g)
    M = compose(back, there)
    for p in g:
        assert apply(M, p) == p


def test_apply_preserves_commutation():
    rng = np.random.default_rng(3)
    M = CliffordMap(random_symplectic(rng, 4))
    ops = [PauliOp(rng.integers(0, 2, 4), rng.integers(0, 2, 4)) for _ in range(8)]
    for a in ops:
        for b in ops:
            assert commutes(a, b) == commutes(apply(M, a), apply(M, b))


def test_apply_identity_and_group():
    M = CliffordMap.identity(["a", "b"])
    p = PauliOp.from_string("XZ")
    assert apply(M, p) == p
    G = PauliGroup.from_strings(["XX", "ZZ"])
    assert [q.to_string() for q in apply(M, G)] == ["XX", "ZZ"]
    with pytest.raises(SizeMismatch):
        apply(M, PauliOp.from_string("XXX"))


def test_assemble_blocks_and_order():
    hadamard = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    m0 = CliffordMap(hadamard, ["q0"], ["q0"])
    m1 = CliffordMap(hadamard, ["q1"], ["q1"])
    universe = ["q0", "q1", "q2"]
    U = assemble([m0, m1], universe)
    assert apply(U, PauliOp.from_string("XZX")).to_string() == "ZXX"
    U2 = assemble([m1, m0], universe)
    assert np.array_equal(U.matrix, U2.matrix)
    with pytest.raises(SizeMismatch):
        assemble([m0, m0], universe)


def test_json_export_roundtrip_labels():
    rng = np.random.default_rng(5)
    M = CliffordMap(random_symplectic(rng, 3), [("v", 0), ("v", 1), ("v", 2)], [("e", 4), ("e", 5), ("e", 6)])
    data = M.to_json()
    assert data["n"] == 3 and len(data["matrix"]) == 6
    again = CliffordMap.from_json(data)
    assert np.array_equal(again.matrix, M.matrix)
    assert again.codomain == M.codomain


def test_to_circuit_reproduces_matrix():
    rng = np.random.default_rng(11)
    for n in (1, 2, 4, 5):
        M = CliffordMap(random_symplectic(rng, n, depth=60))
        gates = to_circuit(M)
        assert np.array_equal(circuit_matrix(gates, n), M.matrix)


def test_symplectic_form_shape():
    J = symplectic_form(2)
    assert is_symplectic(J)
    assert J.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]

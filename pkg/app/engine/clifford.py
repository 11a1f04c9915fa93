"""
Mapas de Clifford como matrizes simpléticas binárias (convenção de linha: p ↦ p·M).

Contém o teste de isomorfismo de grupos de Pauli (posto e posto do centro),
a forma canônica simplética com rastreamento de expressões, a síntese de um
mapa que leva g_j em h_j, aplicação, composição, montagem por blocos e a
exportação opcional em portas H, S e CNOT.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Sequence, Tuple

import numpy as np

from . import gf2
from .errors import CommutationMismatch, DependentGenerators, SizeMismatch, UnfoldError
from .pauli import PauliGroup, PauliOp, center, commutation_matrix, rank, symplectic_matrix

log = logging.getLogger(__name__)


def symplectic_form(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    J[:n, n:] = np.eye(n, dtype=np.uint8)
    J[n:, :n] = np.eye(n, dtype=np.uint8)
    return J


def is_symplectic(M: np.ndarray) -> bool:
    n = M.shape[0] // 2
    if M.shape != (2 * n, 2 * n):
        return False
    J = symplectic_form(n)
    return bool(np.array_equal(gf2.matmul(gf2.matmul(M, J), M.T), J))


class CliffordMap:
    """Transformação simplética entre rótulos de domínio e de contradomínio."""

    def __init__(
        self,
        matrix,
        domain: Sequence[Hashable] | None = None,
        codomain: Sequence[Hashable] | None = None,
        check: bool = True,
    ):
        self.matrix = gf2.as_bits(matrix)
        self.n = self.matrix.shape[0] // 2
        self.domain = list(domain) if domain is not None else list(range(self.n))
        self.codomain = list(codomain) if codomain is not None else list(self.domain)
        if len(self.domain) != self.n or len(self.codomain) != self.n:
            raise SizeMismatch("rótulos não batem com a dimensão da matriz")
        if check and not is_symplectic(self.matrix):
            raise UnfoldError("matriz não preserva a forma simplética")

    @classmethod
    def identity(cls, labels: Sequence[Hashable]) -> "CliffordMap":
        n = len(labels)
        return cls(np.eye(2 * n, dtype=np.uint8), labels, labels, check=False)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "matrix": [gf2.to_hex(r) for r in self.matrix],
            "domain": [_label_json(x) for x in self.domain],
            "codomain": [_label_json(x) for x in self.codomain],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CliffordMap":
        n = int(data["n"])
        M = np.vstack([gf2.from_hex(h, 2 * n) for h in data["matrix"]]) if n else np.zeros((0, 0), dtype=np.uint8)
        dom = [_label_from_json(x) for x in data.get("domain", range(n))]
        cod = [_label_from_json(x) for x in data.get("codomain", dom)]
        return cls(M, dom, cod)


def _label_json(label: Hashable) -> Any:
    return list(label) if isinstance(label, tuple) else label


def _label_from_json(label: Any) -> Hashable:
    return tuple(label) if isinstance(label, list) else label


def apply(M: CliffordMap, p):
    """Imagem de um PauliOp ou PauliGroup (geradores mapeados um a um)."""
    if isinstance(p, PauliGroup):
        if p.n != M.n:
            raise SizeMismatch(f"grupo sobre {p.n} qubits, mapa sobre {M.n}")
        if not len(p):
            return PauliGroup(M.n)
        return PauliGroup.from_matrix(gf2.matmul(p.matrix(), M.matrix), M.n)
    if p.n != M.n:
        raise SizeMismatch(f"operador sobre {p.n} qubits, mapa sobre {M.n}")
    return PauliOp.from_vector(gf2.matmul(p.vector().reshape(1, -1), M.matrix)[0])


def compose(second: CliffordMap, first: CliffordMap) -> CliffordMap:
    """second ∘ first: aplica `first` e depois `second`."""
    if list(first.codomain) != list(second.domain):
        raise SizeMismatch("contradomínio do primeiro mapa difere do domínio do segundo")
    return CliffordMap(gf2.matmul(first.matrix, second.matrix), first.domain, second.codomain, check=False)


def isomorphic(G1: PauliGroup, G2: PauliGroup) -> bool:
    if G1.n != G2.n:
        raise SizeMismatch(f"grupos sobre {G1.n} e {G2.n} qubits")
    return rank(G1) == rank(G2) and rank(center(G1)) == rank(center(G2))


@dataclass
class CanonicalForm:
    """
    Geradores canônicos A_1..A_{n1+n2}.

    Ordem: a_1..a_{n1}, centrais c_1..c_{n2-n1}, b_1..b_{n1}; o par
    (A_i, A_{n2+i}) anticomuta e os demais pares comutam.
    `expr[i]` dá os coeficientes de A_i como produto dos geradores de entrada.
    """
    ops: np.ndarray
    expr: np.ndarray
    n1: int
    n2: int
    pair_a: List[int] = field(default_factory=list)
    pair_b: List[int] = field(default_factory=list)
    central: List[int] = field(default_factory=list)

    def paulis(self) -> List[PauliOp]:
        return [PauliOp.from_vector(r) for r in self.ops]


def _sym(u: np.ndarray, v: np.ndarray) -> int:
    n = u.size // 2
    return int((np.count_nonzero(u[:n] & v[n:]) + np.count_nonzero(u[n:] & v[:n])) % 2)


def canonical_generators(G: PauliGroup) -> CanonicalForm:
    m = len(G)
    V = G.matrix().copy()
    if m and gf2.rank(V) != m:
        raise DependentGenerators("geradores dependentes na forma canônica")
    E = np.eye(m, dtype=np.uint8)
    remaining = list(range(m))
    a_rows: List[int] = []
    b_rows: List[int] = []
    c_rows: List[int] = []
    while remaining:
        u = remaining[0]
        partner = next((w for w in remaining[1:] if _sym(V[u], V[w])), None)
        if partner is None:
            c_rows.append(u)
            remaining.pop(0)
            continue
        w = partner
        remaining = [r for r in remaining if r not in (u, w)]
        for r in remaining:
            cu, cw = _sym(V[r], V[u]), _sym(V[r], V[w])
            if cw:
                V[r] ^= V[u]
                E[r] ^= E[u]
            if cu:
                V[r] ^= V[w]
                E[r] ^= E[w]
        a_rows.append(u)
        b_rows.append(w)
    order = a_rows + c_rows + b_rows
    n1 = len(a_rows)
    ops = V[order] if m else np.zeros((0, 2 * G.n), dtype=np.uint8)
    expr = E[order] if m else np.zeros((0, 0), dtype=np.uint8)
    return CanonicalForm(
        ops=ops,
        expr=expr,
        n1=n1,
        n2=n1 + len(c_rows),
        pair_a=list(range(n1)),
        pair_b=list(range(n1 + len(c_rows), m)),
        central=list(range(n1, n1 + len(c_rows))),
    )


def _solve_products(constraints: List[np.ndarray], targets: List[int], size: int) -> np.ndarray | None:
    """Vetor d com <u_r, d> = t_r para cada restrição."""
    if not constraints:
        return None
    U = np.vstack(constraints)
    n = size // 2
    UJ = np.concatenate([U[:, n:], U[:, :n]], axis=1)
    return gf2.solve_rows(UJ.T, np.array(targets, dtype=np.uint8))


def complete_basis(pairs: List[Tuple[np.ndarray, np.ndarray]], central: List[np.ndarray], n: int) -> np.ndarray:
    """
    Completa pares simpléticos e vetores centrais isotrópicos até uma base
    simplética de Pauli(n), de forma determinística.

    Retorna matriz 2n×2n com linhas [a_1..a_n, b_1..b_n].
    """
    size = 2 * n
    A = [p[0].copy() for p in pairs]
    B = [p[1].copy() for p in pairs]
    cs = [c.copy() for c in central]
    for j, c in enumerate(cs):
        cons = A + B + cs
        tgt = [0] * (len(A) + len(B)) + [1 if k == j else 0 for k in range(len(cs))]
        d = _solve_products(cons, tgt, size)
        if d is None:
            raise DependentGenerators("não há parceiro simplético para um gerador central")
        A.append(c)
        B.append(d)
    # pares restantes a partir da base canônica de menor índice
    for idx in range(size):
        if len(A) == n:
            break
        v = np.zeros(size, dtype=np.uint8)
        v[idx] = 1
        for a, b in zip(A, B):
            if _sym(v, b):
                v ^= a
            if _sym(v, a):
                v ^= b
        if not v.any():
            continue
        cons = A + B + [v]
        tgt = [0] * (len(A) + len(B)) + [1]
        w = _solve_products(cons, tgt, size)
        if w is None:
            continue
        A.append(v)
        B.append(w)
    if len(A) != n:
        raise UnfoldError("falha ao completar a base simplética")
    return np.vstack(A + B)


def synthesize(
    g: Sequence[PauliOp],
    h: Sequence[PauliOp],
    domain: Sequence[Hashable] | None = None,
    codomain: Sequence[Hashable] | None = None,
) -> CliffordMap:
    """Mapa simplético M com g_j·M = h_j para todo j (extensão determinística)."""
    if len(g) != len(h):
        raise SizeMismatch(f"listas com tamanhos {len(g)} e {len(h)}")
    n = g[0].n if g else (len(domain) if domain is not None else 0)
    if any(p.n != n for p in list(g) + list(h)):
        raise SizeMismatch("operadores sobre números de qubits diferentes")
    if not np.array_equal(commutation_matrix(list(g)), commutation_matrix(list(h))):
        raise CommutationMismatch("relações de comutação diferentes entre g e h")
    Gg = PauliGroup(n, g)
    Gh = PauliGroup(n, h)
    if len(g) and gf2.rank(Gh.matrix()) != len(h):
        raise DependentGenerators("lista h dependente")
    can = canonical_generators(Gg)
    Hm = gf2.matmul(can.expr, Gh.matrix()) if len(h) else np.zeros((0, 2 * n), dtype=np.uint8)

    def basis(ops: np.ndarray) -> np.ndarray:
        pairs = [(ops[a], ops[b]) for a, b in zip(can.pair_a, can.pair_b)]
        central = [ops[c] for c in can.central]
        return complete_basis(pairs, central, n)

    Sg = basis(can.ops)
    Sh = basis(Hm)
    M = gf2.matmul(gf2.inverse(Sg), Sh)
    out = CliffordMap(M, domain, codomain)
    if len(g):
        img = gf2.matmul(Gg.matrix(), M)
        if not np.array_equal(img, Gh.matrix()):
            raise UnfoldError("síntese não reproduziu as imagens pedidas")
    return out


def assemble(
    local_maps: Sequence[CliffordMap],
    domain: Sequence[Hashable],
    codomain: Sequence[Hashable] | None = None,
) -> CliffordMap:
    """
    Mapa global: cada mapa local no seu bloco, identidade (por rótulo) no resto.

    Rótulos fora de todos os blocos precisam existir nos dois universos.
    """
    codomain = list(codomain) if codomain is not None else list(domain)
    N = len(domain)
    if len(codomain) != N:
        raise SizeMismatch("universos de tamanhos diferentes")
    din = {lab: i for i, lab in enumerate(domain)}
    dout = {lab: i for i, lab in enumerate(codomain)}
    used_in: set = set()
    used_out: set = set()
    M = np.zeros((2 * N, 2 * N), dtype=np.uint8)
    for lm in local_maps:
        if used_in & set(lm.domain) or used_out & set(lm.codomain):
            raise SizeMismatch("domínios locais sobrepostos")
        used_in |= set(lm.domain)
        used_out |= set(lm.codomain)
        ri = np.array([din[x] for x in lm.domain], dtype=np.int64)
        co = np.array([dout[x] for x in lm.codomain], dtype=np.int64)
        rows = np.concatenate([ri, ri + N])
        cols = np.concatenate([co, co + N])
        M[np.ix_(rows, cols)] = lm.matrix
    rest_in = [x for x in domain if x not in used_in]
    rest_out = {x for x in codomain if x not in used_out}
    if set(rest_in) != rest_out:
        raise SizeMismatch("qubits fora dos blocos não coincidem entre domínio e contradomínio")
    for x in rest_in:
        i, o = din[x], dout[x]
        M[i, o] = 1
        M[i + N, o + N] = 1
    return CliffordMap(M, domain, codomain, check=False)


# -------- exportação em circuito --------
def _gate_h(M: np.ndarray, q: int, n: int) -> None:
    M[:, [q, q + n]] = M[:, [q + n, q]]


def _gate_s(M: np.ndarray, q: int, n: int) -> None:
    M[:, q + n] ^= M[:, q]


def _gate_cnot(M: np.ndarray, c: int, t: int, n: int) -> None:
    M[:, t] ^= M[:, c]
    M[:, c + n] ^= M[:, t + n]


def apply_gate(M: np.ndarray, gate: Tuple, n: int) -> None:
    if gate[0] == "H":
        _gate_h(M, gate[1], n)
    elif gate[0] == "S":
        _gate_s(M, gate[1], n)
    else:
        _gate_cnot(M, gate[1], gate[2], n)


def to_circuit(cmap: CliffordMap) -> List[Tuple]:
    """
    Decompõe o mapa em portas ("H", q), ("S", q), ("CNOT", c, t), na ordem de aplicação.

    Sem fases: S e H são involuções simpléticas.
    """
    n = cmap.n
    M = cmap.matrix.copy()
    ops: List[Tuple] = []

    def do(gate: Tuple) -> None:
        apply_gate(M, gate, n)
        ops.append(gate)

    for i in range(n):
        r = i
        for j in range(i, n):
            x, z = M[r, j], M[r, j + n]
            if z and not x:
                do(("H", j))
            elif z and x:
                do(("S", j))
        if not M[r, i]:
            t = next(j for j in range(i + 1, n) if M[r, j])
            do(("CNOT", t, i))
        for t in range(i + 1, n):
            if M[r, t]:
                do(("CNOT", i, t))
        s = i + n
        for j in range(i + 1, n):
            x, z = M[s, j], M[s, j + n]
            if x and z:
                do(("S", j))
                do(("H", j))
            elif x:
                do(("H", j))
        for j in range(i + 1, n):
            if M[s, j + n]:
                do(("CNOT", j, i))
        if M[s, i]:
            do(("H", i))
            do(("S", i))
            do(("H", i))
    if not np.array_equal(M, np.eye(2 * n, dtype=np.uint8)):
        raise UnfoldError("decomposição em portas não chegou à identidade")
    return list(reversed(ops))


def circuit_matrix(gates: Sequence[Tuple], n: int) -> np.ndarray:
    M = np.eye(2 * n, dtype=np.uint8)
    for gate in gates:
        apply_gate(M, gate, n)
    return M

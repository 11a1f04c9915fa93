"""
Desdobramento da color code em cópias da toric code.

Para cada d-célula real de cor C_0 constrói um disentangler local (mapa de
Clifford dos vértices da célula, mais ancilas, para as arestas da célula),
monta o mapa global U, transforma CC(L) ⊗ S e confere que o resultado se
separa nos reticulados encolhidos (ou no reticulado colado, com fronteiras).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from app.lattice.complex import DUAL, ColoredComplex, to_primal
from app.lattice.derive import QubitMap, attach_maps, shrunk_lattice

from . import gf2
from .clifford import CliffordMap, apply, assemble, symplectic_form, synthesize
from .codes import CssCode, LogicalSet, add_ancillas, color_code, logical_count, logical_operators, toric_code
from .errors import DecouplingError, InvalidParams, VerificationError
from .pauli import PauliGroup, PauliOp, equal_span, rank

log = logging.getLogger(__name__)

Label = Hashable


# -------- disentanglers locais --------
def _oriented_cycle(L: ColoredComplex, cell: int) -> List[int]:
    """Ciclo de vértices começando no menor, com a primeira aresta sem a cor 2."""
    cyc = list(L.cells[cell].cycle or ())
    if len(cyc) < 4 or len(cyc) % 2:
        raise InvalidParams(f"face {cell} sem ciclo par utilizável: {cyc}")
    first = _edge_between(L, cell, cyc[0], cyc[1])
    if 2 in L.colors_of(first):
        cyc = [cyc[0]] + cyc[1:][::-1]
    return cyc


def _edge_between(L: ColoredComplex, cell: int, u: int, v: int) -> int:
    for e in L.cells[cell].faces:
        if L.vertices_of(e) == frozenset((u, v)):
            return e
    raise InvalidParams(f"vértices {u} e {v} não são vizinhos na face {cell}")


def local_disentangler_2d(L: ColoredComplex, cell: int) -> CliffordMap:
    """
    Face C_0 com 2n vértices v_1..v_2n e arestas e_j = (v_j, v_{j+1}):

        Z_j Z_{j+1}          → Z(e_j)                         j = 1..2n-1
        (∏X) Z_2n Z_1        → Z(e_2n)
        X_j X_{j+1}          → X(e_{j-1}) X(e_{j+1})          j = 1..2n-2, e_0 = e_2n
    """
    cyc = _oriented_cycle(L, cell)
    m = len(cyc)
    edges = [_edge_between(L, cell, cyc[j], cyc[(j + 1) % m]) for j in range(m)]
    g: List[PauliOp] = []
    h: List[PauliOp] = []
    for j in range(m - 1):
        g.append(PauliOp.from_support(m, zs=(j, j + 1)))
        h.append(PauliOp.from_support(m, zs=(j,)))
    g.append(PauliOp.from_support(m, xs=range(m), zs=(m - 1, 0)))
    h.append(PauliOp.from_support(m, zs=(m - 1,)))
    for j in range(m - 2):
        g.append(PauliOp.from_support(m, xs=(j, j + 1)))
        h.append(PauliOp.from_support(m, xs=((j - 1) % m, j + 1)))
    return synthesize(g, h, [("v", v) for v in cyc], [("e", e) for e in edges])


def ancilla_count(L: ColoredComplex, cell: int) -> int:
    if L.dimension < 3:
        return 0
    return len(L.faces_of(cell, 1)) - len(L.vertices_of(cell))


def _spanning_tree(L: ColoredComplex, verts: Sequence[int], edges: Sequence[int]) -> List[int]:
    G = nx.Graph()
    G.add_nodes_from(verts)
    for e in edges:
        u, v = sorted(L.vertices_of(e))
        G.add_edge(u, v, weight=e, cell=e)
    T = nx.minimum_spanning_tree(G, algorithm="kruskal", weight="weight")
    return sorted(data["cell"] for _, _, data in T.edges(data=True))


def local_disentangler_nd(L: ColoredComplex, cell: int) -> CliffordMap:
    """
    d-célula C_0 com V vértices, E arestas e A = E - V ancilas (d >= 3):

      - Z_u Z_v → Z_e nas arestas de uma árvore geradora;
      - X(F) → X(δF) nas (d-1)-faces, exceto a de maior id de cada cor;
      - X(c) e Z das ancilas → Z em meias-faces (arestas de uma 2-face sem
        uma cor), escolhidas gulosamente enquanto aumentam o posto.
    """
    d = L.dimension
    verts = sorted(L.vertices_of(cell))
    edges = L.faces_of(cell, 1)
    A = len(edges) - len(verts)
    if A < 0:
        raise InvalidParams(f"célula {cell} com menos arestas que vértices")
    vi = {v: i for i, v in enumerate(verts)}
    ei = {e: i for i, e in enumerate(edges)}
    nd = len(verts) + A
    ne = len(edges)
    if nd != ne:
        raise InvalidParams(f"célula {cell}: domínio {nd} != contradomínio {ne}")

    g: List[PauliOp] = []
    h: List[PauliOp] = []
    z_img = np.zeros((0, ne), dtype=np.uint8)

    for e in _spanning_tree(L, verts, edges):
        u, v = sorted(L.vertices_of(e))
        g.append(PauliOp.from_support(nd, zs=(vi[u], vi[v])))
        h.append(PauliOp.from_support(ne, zs=(ei[e],)))
        z_img = np.vstack([z_img, h[-1].z])

    by_color: Dict[int, List[int]] = {}
    for F in L.faces_of(cell, d - 1):
        others = sorted(L.colors_of(F) - {0})
        if len(others) != 1:
            raise InvalidParams(f"face {F} da célula {cell} com cores {others}")
        by_color.setdefault(others[0], []).append(F)
    for col in sorted(by_color):
        for F in sorted(by_color[col])[:-1]:
            fv = L.vertices_of(F)
            cut = [ei[e] for e in edges if len(L.vertices_of(e) & fv) == 1]
            g.append(PauliOp.from_support(nd, xs=[vi[v] for v in fv]))
            h.append(PauliOp.from_support(ne, xs=cut))

    picks: List[np.ndarray] = []
    all_colors = set(range(1, d + 1))
    for f in L.faces_of(cell, 2):
        for a in sorted(all_colors - L.colors_of(f)):
            row = np.zeros(ne, dtype=np.uint8)
            for e in L.cells[f].faces:
                if a not in L.colors_of(e):
                    row[ei[e]] ^= 1
            if not row.any():
                continue
            trial = np.vstack([z_img, row])
            if gf2.rank(trial) > z_img.shape[0]:
                z_img = trial
                picks.append(row)
            if len(picks) == A + 1:
                break
        if len(picks) == A + 1:
            break
    if len(picks) < A + 1:
        raise InvalidParams(f"célula {cell}: apenas {len(picks)} meias-faces independentes (esperado {A + 1})")

    zero_e = np.zeros(ne, dtype=np.uint8)
    g.append(PauliOp.from_support(nd, xs=range(len(verts))))
    h.append(PauliOp(zero_e, picks[0]))
    for j in range(A):
        g.append(PauliOp.from_support(nd, zs=(len(verts) + j,)))
        h.append(PauliOp(zero_e, picks[j + 1]))

    domain = [("v", v) for v in verts] + [("a", cell, j) for j in range(A)]
    log.debug("célula %d: V=%d E=%d A=%d, %d geradores", cell, len(verts), ne, A, len(g))
    return synthesize(g, h, domain, [("e", e) for e in edges])


def local_disentangler(L: ColoredComplex, cell: int) -> CliffordMap:
    c = L.cells[cell]
    if c.dim != L.dimension or c.color != 0 or L.is_exterior(cell):
        raise InvalidParams(f"célula {cell} não é uma {L.dimension}-célula real de cor C_0")
    if L.dimension == 2:
        return local_disentangler_2d(L, cell)
    return local_disentangler_nd(L, cell)


# -------- verificação de desacoplamento --------
@dataclass
class DecoupleReport:
    ok: bool
    blocks: List[PauliGroup]
    rank: int
    union_rank: int
    witness: Optional[PauliOp] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rank": self.rank,
            "union_rank": self.union_rank,
            "block_ranks": [len(b) for b in self.blocks],
            "witness": self.witness.to_string() if self.witness is not None else None,
        }


def verify_decoupled(
    group: PauliGroup, partition: Sequence[Iterable[int]], shared: Iterable[int] = ()
) -> DecoupleReport:
    """
    Procura uma base do grupo em que cada elemento vive num bloco
    (bloco ∪ qubits compartilhados). Para cada bloco, escalona com as
    colunas de fora primeiro: linhas com pivô dentro do bloco geram S ∩ P(bloco).
    """
    n = group.n
    blocks = [set(b) for b in partition]
    common = set(shared)
    seen: Set[int] = set(common)
    for b in blocks:
        if b & seen:
            raise InvalidParams("partição com blocos sobrepostos")
        seen |= b
    if seen != set(range(n)):
        raise InvalidParams(f"partição cobre {len(seen)} de {n} qubits")

    M = group.matrix()
    total = gf2.rank(M) if len(group) else 0
    subgroups: List[PauliGroup] = []
    union = np.zeros((0, 2 * n), dtype=np.uint8)
    for b in blocks:
        allowed = sorted(b | common)
        outside = sorted(set(range(n)) - set(allowed))
        # x e z de fora primeiro, depois x e z do bloco
        cols = np.array(outside + [q + n for q in outside] + allowed + [q + n for q in allowed], dtype=np.int64)
        R, piv = gf2.row_echelon(M[:, cols]) if len(group) else (M, [])
        cut = 2 * len(outside)
        inside_rows = [r for r, p in enumerate(piv) if p >= cut]
        inv = np.argsort(cols)
        sub = R[inside_rows][:, inv] if inside_rows else np.zeros((0, 2 * n), dtype=np.uint8)
        subgroups.append(PauliGroup.from_matrix(sub, n))
        union = np.vstack([union, sub])
    union_rank = gf2.rank(union) if union.shape[0] else 0
    witness = None
    if union_rank != total:
        for g in group.gens:
            if not gf2.in_rowspan(union, g.vector()):
                witness = g
                break
    return DecoupleReport(union_rank == total, subgroups, total, union_rank, witness)


# -------- pipeline completo --------
@dataclass
class UnfoldPart:
    colors: List[int]
    complex: ColoredComplex
    qmap: QubitMap
    code: CssCode
    folded: bool = False
    global_index: List[int] = field(default_factory=list)


@dataclass
class UnfoldResult:
    lattice: ColoredComplex
    U: CliffordMap
    cc: CssCode
    transformed: PauliGroup
    expected: PauliGroup
    parts: List[UnfoldPart]
    shrunk: List[Tuple[ColoredComplex, QubitMap]]
    partition: List[List[int]]
    shared: List[int]
    report: DecoupleReport
    ancillas: Dict[int, int]
    equal_span: bool
    s2: int = 0

    @property
    def folded(self) -> bool:
        return any(p.folded for p in self.parts)

    def to_json(self) -> dict:
        return {
            "decoupled": self.report.ok,
            "equal_span": self.equal_span,
            "n_cc": self.cc.n,
            "k_cc": logical_count(self.cc),
            "ancillas": sum(self.ancillas.values()),
            "s2_surplus": self.s2,
            "decoupling": self.report.to_json(),
        }


def embed_code(code: CssCode, qmap: QubitMap, index: Dict[Label, int], n: int) -> Tuple[np.ndarray, np.ndarray, List[int]]:
    cols = [index[qmap.keys[c]] for _, c in code.qubit_labels]

    def place(H: np.ndarray) -> np.ndarray:
        out = np.zeros((H.shape[0], n), dtype=np.uint8)
        if H.shape[0]:
            out[:, cols] = H
        return out

    return place(code.hx), place(code.hz), cols


def disentangle(L: ColoredComplex) -> UnfoldResult:
    if L.mode == DUAL:
        L = to_primal(L)
    d = L.dimension
    cc = color_code(L)

    c0_cells = [t for t in L.of_dim(d) if L.cells[t].color == 0 and not L.is_exterior(t)]
    ancillas = {c: ancilla_count(L, c) for c in c0_cells}
    anc_labels = [("a", c, j) for c in c0_cells for j in range(ancillas[c])]
    cc_s = add_ancillas(cc, len(anc_labels), anc_labels)

    shrunk = [shrunk_lattice(L, i) for i in range(1, d + 1)]
    seam_keys = shrunk[0][1].seam_keys()
    codomain: List[Label] = []
    for _, qm in shrunk:
        codomain += [qm.keys[c] for c in sorted(qm.keys) if qm.keys[c][0] == "e"]
    codomain += seam_keys
    domain = list(cc_s.qubit_labels)
    if len(domain) != len(codomain):
        raise InvalidParams(f"domínio com {len(domain)} qubits, contradomínio com {len(codomain)}")

    local = [local_disentangler(L, c) for c in c0_cells]
    U = assemble(local, domain, codomain)
    transformed = apply(U, cc_s.stabilizers())
    n = U.n
    index = {lab: i for i, lab in enumerate(codomain)}

    if seam_keys:
        P, qm = attach_maps(shrunk, seam=0)
        groups = [(list(range(1, d + 1)), P, qm, True)]
    else:
        groups = [([i + 1], P, qm, False) for i, (P, qm) in enumerate(shrunk)]

    parts: List[UnfoldPart] = []
    hx_all, hz_all = [], []
    for colors, P, qm, folded in groups:
        code = toric_code(P, 1)
        hx, hz, cols = embed_code(code, qm, index, n)
        hx_all.append(hx)
        hz_all.append(hz)
        parts.append(UnfoldPart(colors, P, qm, code, folded, cols))
    zeros = np.zeros((0, n), dtype=np.uint8)
    expected = PauliGroup.from_css(np.vstack(hx_all) if hx_all else zeros, np.vstack(hz_all) if hz_all else zeros)

    shared = [index[k] for k in seam_keys]
    partition = []
    for _, qm in shrunk:
        partition.append(sorted(index[qm.keys[c]] for c in qm.keys if qm.keys[c][0] == "e"))
    report = verify_decoupled(transformed, partition, shared)
    same = equal_span(transformed, expected)
    s2 = rank(transformed) - rank(expected)
    log.info("desdobramento: %d partes, desacoplado=%s, spans iguais=%s", len(parts), report.ok, same)

    result = UnfoldResult(
        lattice=L,
        U=U,
        cc=cc_s,
        transformed=transformed,
        expected=expected,
        parts=parts,
        shrunk=shrunk,
        partition=partition,
        shared=shared,
        report=report,
        ancillas=ancillas,
        equal_span=same,
        s2=s2,
    )
    if not report.ok:
        raise DecouplingError("grupo transformado não se separa nos blocos", witness=report.witness)
    if not same:
        witness = next((g for g in transformed.gens if not gf2.in_rowspan(expected.matrix(), g.vector())), None)
        raise DecouplingError("U(CC ⊗ S) difere da soma das toric codes", witness=witness)
    return result


# -------- lógicos desdobrados --------
def symplectic_inverse(M: np.ndarray) -> np.ndarray:
    n = M.shape[0] // 2
    J = symplectic_form(n)
    return gf2.matmul(gf2.matmul(J, M.T), J)


def unfolded_logicals(result: UnfoldResult) -> LogicalSet:
    """
    Lógicos da color code rotulados pelas cópias da toric code: os
    representantes de cada parte são puxados de volta por U^{-1}; X̄ é a
    parte X nos qubits da color code e Z̄ a parte Z.
    """
    n = result.U.n
    n_cc = result.cc.n - sum(result.ancillas.values())
    Minv = symplectic_inverse(result.U.matrix)
    xs, zs, tags = [], [], []
    for p_idx, part in enumerate(result.parts):
        lset = logical_operators(part.code)
        for j in range(len(lset)):
            for op, bucket in ((lset.xs[j], xs), (lset.zs[j], zs)):
                full = np.zeros(2 * n, dtype=np.uint8)
                for local, q in enumerate(part.global_index):
                    full[q] = op.x[local]
                    full[n + q] = op.z[local]
                back = gf2.matmul(full.reshape(1, -1), Minv)[0]
                bucket.append(back)
            # Z̄ da cópia i corre paralelo à direção i
            direction = part.colors[0] if len(part.colors) == 1 else None
            tags.append({"part": p_idx, "colors": part.colors, "index": j, "direction": direction})
    if not xs:
        return LogicalSet()
    zero = np.zeros(n_cc, dtype=np.uint8)
    X = np.array([v[:n_cc] for v in xs], dtype=np.uint8)
    Z = np.array([v[n: n + n_cc] for v in zs], dtype=np.uint8)
    P = gf2.matmul(X, Z.T)
    if gf2.rank(P) != P.shape[0]:
        raise VerificationError("lógicos puxados de volta não formam pares", check="logicals")
    if not np.array_equal(P, np.eye(P.shape[0], dtype=np.uint8)):
        Z = gf2.matmul(gf2.inverse(P).T, Z)
    return LogicalSet(
        [PauliOp(r, zero) for r in X],
        [PauliOp(zero, r) for r in Z],
        tags,
    )

"""
Contagem de geradores e relações nos grupos de sobreposição de uma d-célula C_0.

As fórmulas usam C_i = número de i-faces do bordo da célula (i = 0..d-1),
com C_d = 1 (a própria célula), e supõem bordo homeomorfo a uma (d-1)-esfera.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Sequence

from app.lattice.complex import ColoredComplex

from .errors import InvalidParams, VerificationError
from .pauli import PauliGroup, PauliOp, center, rank


def _extended(C: Sequence[int], d: int) -> List[int]:
    if len(C) != d:
        raise InvalidParams(f"esperados {d} valores C_0..C_{d - 1}, recebidos {len(C)}")
    return [int(c) for c in C] + [1]


def euler_target(d: int) -> int:
    """χ da (d-1)-esfera."""
    return 1 + (-1) ** (d - 1)


def relation_count(d: int, s: int, C: Sequence[int]) -> int:
    """I(d-1, s): relações independentes entre os geradores de s-faces; I(d-1, d) = 0."""
    if s == d:
        return 0
    if not 1 <= s <= d - 1:
        raise InvalidParams(f"s = {s} fora de 1..{d - 1}")
    Cx = _extended(C, d)
    total = comb(d - 1, s - 1) * (-1) ** (d - 1 - s)
    for i in range(d - s - 1):
        total += comb(s + i, i + 1) * (-1) ** i * Cx[s + i + 1]
    return total


@dataclass
class IdentityReport:
    d: int
    counts: List[int]
    residues: Dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.residues.values())

    @property
    def violations(self) -> List[int]:
        return [s for s, r in self.residues.items() if r]

    def to_json(self) -> dict:
        return {"d": self.d, "counts": self.counts, "residues": {str(s): r for s, r in self.residues.items()}, "ok": self.ok}


def verify_cell_identities(C: Sequence[int], d: int) -> IdentityReport:
    """Resíduo de cada identidade s = 0..d-1; s = 0 é a característica de Euler."""
    Cx = _extended(C, d)
    chi = euler_target(d)
    rep = IdentityReport(d, list(Cx[:d]))
    for s in range(d):
        val = -comb(d - 1, s) * chi + (-1) ** s * Cx[0]
        for i in range(s):
            val += (-1) ** i * comb(d - 2 - i, d - 1 - s) * Cx[d - 1 - i]
        for i in range(s + 1, d):
            val += (-1) ** i * comb(i - 1, s) * Cx[i]
        rep.residues[s] = val
    return rep


def cell_boundary_counts(L: ColoredComplex, cell: int) -> List[int]:
    d = L.dimension
    if L.cells[cell].dim != d:
        raise InvalidParams(f"célula {cell} não é uma {d}-célula")
    C = [len(L.vertices_of(cell))] + [len(L.faces_of(cell, i)) for i in range(1, d)]
    if sum((-1) ** i * c for i, c in enumerate(C)) != euler_target(d):
        raise InvalidParams(f"bordo da célula {cell} não é uma esfera (C = {C})")
    return C


def formula_counts(C: Sequence[int], d: int, k: int) -> Dict[str, int]:
    """Os quatro números G(O_CC ⊗ S), G(Z(O_CC ⊗ S)), G(O_TC), G(Z(O_TC)) pelas fórmulas."""
    Cx = _extended(C, d)

    def I(s: int) -> int:
        return relation_count(d, s, C)

    g_cc = Cx[k + 1] - I(k + 1) + 2 * Cx[d - k - 1] - I(d - k - 1) - Cx[0]
    z_cc = Cx[k + 2] - I(k + 2) + Cx[d - k] - I(d - k) + Cx[d - k - 1] - Cx[0]
    z_tc = sum((-1) ** i * comb(d - k + i, i + 1) * Cx[d - k + i] for i in range(k + 1))
    g_tc = 2 * Cx[d - k - 1] - z_tc
    return {"G_CC": g_cc, "Z_CC": z_cc, "G_TC": g_tc, "Z_TC": z_tc}


def overlap_groups(L: ColoredComplex, cell: int) -> Dict[str, PauliGroup]:
    """Grupos de sobreposição O_CC ⊗ S (vértices + ancilas) e O_TC (arestas) da célula."""
    d = L.dimension
    verts = sorted(L.vertices_of(cell))
    edges = L.faces_of(cell, 1)
    A = len(edges) - len(verts) if d >= 3 else 0
    vi = {v: i for i, v in enumerate(verts)}
    ei = {e: i for i, e in enumerate(edges)}
    n_cc = len(verts) + A
    n_tc = len(edges)

    cc: List[PauliOp] = [PauliOp.from_support(n_cc, xs=range(len(verts)))]
    tc: List[PauliOp] = []
    for F in L.faces_of(cell, d - 1):
        fv = L.vertices_of(F)
        cc.append(PauliOp.from_support(n_cc, xs=[vi[v] for v in fv]))
        cut = [ei[e] for e in edges if len(L.vertices_of(e) & fv) == 1]
        tc.append(PauliOp.from_support(n_tc, xs=cut))
    for f in L.faces_of(cell, 2):
        cc.append(PauliOp.from_support(n_cc, zs=[vi[v] for v in L.vertices_of(f)]))
    for e in edges:
        u, v = sorted(L.vertices_of(e))
        cc.append(PauliOp.from_support(n_cc, zs=(vi[u], vi[v])))
        tc.append(PauliOp.from_support(n_tc, zs=(ei[e],)))
    for j in range(A):
        cc.append(PauliOp.from_support(n_cc, zs=(len(verts) + j,)))
    return {"CC": PauliGroup(n_cc, cc), "TC": PauliGroup(n_tc, tc)}


def operator_counts(L: ColoredComplex, cell: int) -> Dict[str, int]:
    groups = overlap_groups(L, cell)
    return {
        "G_CC": rank(groups["CC"]),
        "Z_CC": rank(center(groups["CC"])),
        "G_TC": rank(groups["TC"]),
        "Z_TC": rank(center(groups["TC"])),
    }


@dataclass
class OverlapReport:
    cell: int
    counts: List[int]
    formula: Dict[str, int]
    operator: Dict[str, int]
    ancillas: int

    @property
    def ok(self) -> bool:
        return (
            self.formula == self.operator
            and self.formula["G_CC"] == self.formula["G_TC"]
            and self.formula["Z_CC"] == self.formula["Z_TC"]
        )

    def to_json(self) -> dict:
        return {
            "cell": self.cell,
            "counts": self.counts,
            "formula": self.formula,
            "operator": self.operator,
            "ancillas": self.ancillas,
            "ok": self.ok,
        }


def verify_overlap_counts(L: ColoredComplex, cell: int, k: int | None = None) -> OverlapReport:
    d = L.dimension
    k = d - 2 if k is None else k
    if k != d - 2:
        raise InvalidParams(f"contagem por operadores só implementada para k = d - 2 (recebido k = {k})")
    if L.cells[cell].color != 0 or L.is_exterior(cell):
        raise InvalidParams(f"célula {cell} não é uma d-célula real de cor C_0")
    C = cell_boundary_counts(L, cell)
    rep = OverlapReport(
        cell=cell,
        counts=C,
        formula=formula_counts(C, d, k),
        operator=operator_counts(L, cell),
        ancillas=(C[1] - C[0]) if d >= 3 else 0,
    )
    if not rep.ok:
        raise VerificationError(
            f"célula {cell}: fórmulas {rep.formula} diferem dos postos {rep.operator}", check="counts"
        )
    return rep


def cycle_rank(L: ColoredComplex, cell: int) -> int:
    """E - V + 1 do 1-esqueleto da célula (conexo)."""
    return len(L.faces_of(cell, 1)) - len(L.vertices_of(cell)) + 1

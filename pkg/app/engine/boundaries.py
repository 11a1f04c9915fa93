"""
Fronteiras do reticulado desdobrado: tipo (rugosa, lisa, costura) por parte
e conjunto de excitações condensadas em cada componente de fronteira.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from app.lattice.complex import ColoredComplex, boundary_components

from . import gf2
from .codes import CssCode, span_elements
from .errors import InvalidParams
from .settings import load_settings
from .unfold import UnfoldResult

log = logging.getLogger(__name__)

ROUGH = "rough"
SMOOTH = "smooth"
SEAM = "seam"

# excitações da toric code i ↔ (cor, tipo de estabilizador violado) na color code 2D
ANYON_DICTIONARY_2D: Dict[str, str] = {"e1": "A_X", "e2": "B_X", "m1": "B_Z", "m2": "A_Z"}


@dataclass
class BoundaryEntry:
    cell: int
    color: int
    kinds: Dict[int, str]
    electric: List[str] = field(default_factory=list)
    magnetic: List[str] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "cell": self.cell,
            "color": self.color,
            "kinds": {str(i): k for i, k in self.kinds.items()},
            "electric": self.electric,
            "magnetic": self.magnetic,
            "labels": self.labels,
        }


def boundary_kind(color: int, part: int) -> str:
    if color == 0:
        return SEAM
    return ROUGH if color == part else SMOOTH


def label_name(bits: Sequence[int], d: int) -> str:
    """Vetor (e_1..e_d, m_1..m_d) → nome; e antes de m, ε_i quando e_i e m_i aparecem juntos."""
    e = [i + 1 for i in range(d) if bits[i] and not bits[d + i]]
    m = [i + 1 for i in range(d) if bits[d + i] and not bits[i]]
    eps = [i + 1 for i in range(d) if bits[i] and bits[d + i]]
    name = "".join(f"e{i}" for i in e) + "".join(f"m{i}" for i in m) + "".join(f"ε{i}" for i in eps)
    return name or "1"


def _names(vectors: List[np.ndarray], d: int, vacuum: bool) -> List[str]:
    if not vectors:
        return ["1"] if vacuum else []
    basis = gf2.row_basis(np.array(vectors, dtype=np.uint8))
    out = sorted({label_name(v, d) for v in span_elements(basis)}, key=lambda s: (len(s), s))
    return out if vacuum else [x for x in out if x != "1"]


def expected_condensation(d: int, color: int) -> Dict[str, List[str]]:
    """Conjuntos condensados esperados numa fronteira de cor `color`."""
    if d == 2:
        table = {
            1: ["1", "e1", "m2", "e1m2"],
            2: ["1", "e2", "m1", "e2m1"],
            0: ["1", "e1e2", "m1m2", "ε1ε2"],
        }
        labels = table[color]
        return {
            "labels": labels,
            "electric": [x for x in labels if x != "1" and "m" not in x and "ε" not in x],
            "magnetic": [x for x in labels if x != "1" and "e" not in x and "ε" not in x],
        }
    if color == 0:
        electric = ["".join(f"e{i}" for i in range(1, d + 1))]
        magnetic = [f"m{i}m{j}" for i, j in combinations(range(1, d + 1), 2)]
    else:
        electric = [f"e{color}"]
        magnetic = [f"m{j}" for j in range(1, d + 1) if j != color]
    return {"labels": electric + magnetic, "electric": electric, "magnetic": magnetic}


def _collar(L: ColoredComplex, cell: int, width: int) -> Set[int]:
    G = nx.Graph()
    G.add_nodes_from(L.of_dim(0))
    for e in L.of_dim(1):
        vs = sorted(L.vertices_of(e))
        if len(vs) == 2:
            G.add_edge(*vs)
    dist = nx.multi_source_dijkstra_path_length(G, set(L.vertices_of(cell)), cutoff=width)
    return set(dist)


def _support(L: ColoredComplex, key: Tuple) -> FrozenSet[int]:
    return L.vertices_of(key[1]) if key[0] == "e" else frozenset([key[1]])


def _ends(L: ColoredComplex, key: Tuple, part: int, magnetic: bool) -> List[int]:
    """
    d-células onde um Pauli no qubit cria (ou deposita) excitações da parte `part`.

    Elétrico: estrelas da parte, isto é, d-células de cor `part` nos extremos
    da aresta; a meia-aresta de costura liga a estrela à célula exterior de cor 0.
    Magnético (2D): plaquetas, isto é, faces que contêm a aresta; na costura,
    as faces do vértice sem a cor `part`.
    """
    d = L.dimension
    if not magnetic:
        if key[0] == "e":
            tops = [L.top_cell_of_color(u, part) for u in sorted(L.vertices_of(key[1]))]
        else:
            tops = [L.top_cell_of_color(key[1], part), L.top_cell_of_color(key[1], 0)]
        return [t for t in tops if t is not None]
    if key[0] == "e":
        return L.containing(key[1], d)
    return [t for t in L.containing(key[1], d) if L.cells[t].color != part]


def _absorbers(L: ColoredComplex, result: UnfoldResult, magnetic: bool) -> Dict[int, np.ndarray]:
    """Para cada célula exterior b: matriz d × n com a paridade de excitações depositadas em b."""
    d = L.dimension
    n = result.U.n
    out = {b: np.zeros((d, n), dtype=np.uint8) for b in boundary_components(L)}
    owner = {key: i for i, (_, qm) in enumerate(result.shrunk, start=1) for key in qm.keys.values() if key[0] == "e"}
    for q, key in enumerate(result.U.codomain):
        if key[0] == "e":
            parts = [owner[key]]
        elif key[0] == "v":
            parts = list(range(1, d + 1))
        else:
            continue
        for i in parts:
            for t in _ends(L, key, i, magnetic):
                if t in out:
                    out[t][i - 1, q] ^= 1
    return out


def _deposits(absorbers: Dict[int, np.ndarray], L: ColoredComplex, b: int, cols: List[int]) -> List[np.ndarray]:
    """
    Excitações condensáveis em b: depósitos E_b·x dos operadores x no colar
    que não depositam nada nas fronteiras de outra cor.
    """
    if not cols:
        return []
    color = L.cells[b].color
    others = [A[:, cols] for t, A in absorbers.items() if L.cells[t].color != color]
    S = np.vstack(others) if others else np.zeros((0, len(cols)), dtype=np.uint8)
    V = gf2.nullspace(S) if S.any() else np.eye(len(cols), dtype=np.uint8)
    if not V.shape[0]:
        return []
    D = gf2.matmul(V, absorbers[b][:, cols].T)
    return [row for row in gf2.row_basis(D) if row.any()]


def classify_boundaries(
    L: ColoredComplex, result: UnfoldResult, collar_width: Optional[int] = None
) -> List[BoundaryEntry]:
    """
    Uma entrada por d-célula exterior.

    Cada célula exterior absorve as excitações que chegam a ela. Os rótulos
    condensados em b são os depósitos em b dos Paulis suportados no colar de
    largura `collar_width` que não deixam excitação em fronteiras de outra cor.
    Fronteiras da mesma cor ficam livres: um e_i pode ir de uma à outra.
    Em d ≥ 3 os fluxos são laços; os magnéticos condensados são os que braidam
    trivialmente com todos os elétricos condensados.
    """
    L = result.lattice
    exteriors = boundary_components(L)
    if not exteriors:
        return []
    d = L.dimension
    w = collar_width if collar_width is not None else load_settings()["collar_width"]
    if w < 0:
        raise InvalidParams(f"largura do colar negativa: {w}")
    absorb_e = _absorbers(L, result, magnetic=False)
    absorb_m = _absorbers(L, result, magnetic=True) if d == 2 else {}
    support = [_support(L, key) if key[0] in ("e", "v") else frozenset() for key in result.U.codomain]

    out: List[BoundaryEntry] = []
    for b in exteriors:
        color = L.cells[b].color
        collar = _collar(L, b, w)
        cols = [q for q, verts in enumerate(support) if verts & collar]

        e_vecs = [np.concatenate([e, np.zeros(d, dtype=np.uint8)]) for e in _deposits(absorb_e, L, b, cols)]
        if d == 2:
            m_part = _deposits(absorb_m, L, b, cols)
        else:
            basis = np.array([v[:d] for v in e_vecs], dtype=np.uint8).reshape(-1, d)
            m_part = list(gf2.nullspace(basis)) if basis.shape[0] else list(np.eye(d, dtype=np.uint8))
        m_vecs = [np.concatenate([np.zeros(d, dtype=np.uint8), m]) for m in m_part]

        entry = BoundaryEntry(
            cell=b,
            color=color,
            kinds={i: boundary_kind(color, i) for i in range(1, d + 1)},
            electric=_names(e_vecs, d, vacuum=False),
            magnetic=_names(m_vecs, d, vacuum=False),
            labels=_names(e_vecs + m_vecs, d, vacuum=True),
        )
        log.debug("fronteira %d (cor %d, colar de %d qubits): %s", b, color, len(cols), entry.labels)
        out.append(entry)
    return out


def label_vector(name: str, d: int) -> np.ndarray:
    """Inverso de `label_name`: "e1m2ε3" → vetor (e_1..e_d, m_1..m_d)."""
    v = np.zeros(2 * d, dtype=np.uint8)
    for kind, idx in re.findall(r"([emε])(\d+)", name):
        i = int(idx) - 1
        if kind in "eε":
            v[i] ^= 1
        if kind in "mε":
            v[d + i] ^= 1
    return v


def condensation_span(labels: Sequence[str], d: int) -> List[str]:
    """Todos os rótulos do grupo gerado por `labels`, com o vácuo."""
    return _names([label_vector(x, d) for x in labels], d, vacuum=True)


def syndrome_colors(code: CssCode, L: ColoredComplex, qubit: int) -> List[int]:
    """Cores das linhas X da color code violadas por Z num qubit."""
    cols = []
    for r, (cell, _) in enumerate(code.x_labels):
        if code.hx[r, qubit]:
            cols.append(L.cells[cell].color)
    return sorted(c for c in cols if c is not None)


def fusion_check(code: CssCode, L: ColoredComplex) -> bool:
    """Z num vértice interior viola exatamente uma face de cada cor."""
    d = L.dimension
    full = list(range(d + 1))
    for q, label in enumerate(code.qubit_labels):
        if label[0] != "v" or L.cells[label[1]].boundary:
            continue
        if syndrome_colors(code, L, q) != full:
            return False
    return True

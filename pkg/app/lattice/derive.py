"""
Complexos derivados: reticulados encolhidos, colagem ao longo da costura
C_0 e a construção L_N sobre o complexo simplicial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.engine.errors import InvalidParams, SeamMismatchError

from .complex import DUAL, PRIMAL, Cell, ColoredComplex, link

Key = Tuple[str, int]


@dataclass
class QubitMap:
    """Aresta do complexo derivado → origem no reticulado primal.

    ("e", id) é uma aresta de L; ("v", id) é o vértice de costura que
    virou meia-aresta.
    """

    keys: Dict[int, Key] = field(default_factory=dict)
    part_of: Dict[int, int] = field(default_factory=dict)
    ancillas: List[int] = field(default_factory=list)

    def by_key(self) -> Dict[Key, int]:
        return {k: cid for cid, k in self.keys.items()}

    def seam_keys(self) -> List[Key]:
        return sorted(k for k in self.keys.values() if k[0] == "v")


def _check_colored(L: ColoredComplex) -> None:
    if L.mode != PRIMAL:
        raise InvalidParams("operação exige reticulado no modo primal")
    for t in L.of_dim(L.dimension):
        if L.cells[t].color is None:
            raise InvalidParams(f"{L.dimension}-célula {t} sem cor")


def shrunk_lattice(L: ColoredComplex, color: int) -> Tuple[ColoredComplex, QubitMap]:
    """
    Encolhe as d-células da cor `color` a pontos.

    Vértices: d-células reais da cor. Arestas: arestas de L sem a cor cuja
    C_0-célula é real; com um extremo exterior viram arestas abertas
    (fronteira rugosa). Cada vértice de L na costura ∂L^{C_0} contribui uma
    meia-aresta. Células de dimensão >= 2: células reais de L sem a cor.
    """
    _check_colored(L)
    d = L.dimension
    if not 1 <= color <= d:
        raise InvalidParams(f"cor {color} fora de 1..{d}")

    verts = [t for t in L.of_dim(d) if L.cells[t].color == color and not L.is_exterior(t)]
    new_id: Dict[int, int] = {t: i for i, t in enumerate(verts)}
    cells: List[Cell] = [Cell(id=i, dim=0, color=color) for i in range(len(verts))]
    qmap = QubitMap()

    def ci(v: int) -> Optional[int]:
        t = L.top_cell_of_color(v, color)
        return new_id.get(t) if t is not None else None

    edge_id: Dict[int, int] = {}
    for e in L.of_dim(1):
        if color in L.colors_of(e):
            continue
        c0 = L.top_cell_of_color(e, 0)
        if c0 is None or L.is_exterior(c0):
            continue
        ends = [ci(v) for v in sorted(L.vertices_of(e))]
        faces = tuple(sorted(x for x in ends if x is not None))
        nid = len(cells)
        cells.append(Cell(id=nid, dim=1, faces=faces, boundary=len(faces) < 2))
        edge_id[e] = nid
        qmap.keys[nid] = ("e", e)
        qmap.part_of[nid] = color

    half_id: Dict[int, int] = {}
    for v in L.of_dim(0):
        c0 = L.top_cell_of_color(v, 0)
        if c0 is None or not L.is_exterior(c0):
            continue
        x = ci(v)
        nid = len(cells)
        cells.append(Cell(id=nid, dim=1, faces=(x,) if x is not None else (), boundary=True))
        half_id[v] = nid
        qmap.keys[nid] = ("v", v)
        qmap.part_of[nid] = 0

    prev: Dict[int, int] = edge_id
    for k in range(2, d + 1):
        cur: Dict[int, int] = {}
        for c in L.of_dim(k):
            if L.is_exterior(c) or color in L.colors_of(c):
                continue
            faces = {prev[f] for f in L.cells[c].faces if f in prev}
            if k == 2:
                faces |= {half_id[v] for v in L.vertices_of(c) if v in half_id}
            if not faces:
                continue
            nid = len(cells)
            cells.append(Cell(id=nid, dim=k, faces=tuple(sorted(faces))))
            cur[c] = nid
        prev = cur

    return ColoredComplex(d, cells, PRIMAL), qmap


def attach_maps(
    parts: Sequence[Tuple[ColoredComplex, QubitMap]], seam: int = 0
) -> Tuple[ColoredComplex, QubitMap]:
    """
    Cola as partes identificando as meias-arestas da costura (chaves "v").

    Ordem dos ids: vértices de cada parte, arestas próprias de cada parte,
    arestas da costura (uma vez), depois células superiores parte a parte.
    """
    if not parts:
        raise InvalidParams("nenhuma parte para colar")
    if len(parts) == 1:
        return parts[0]
    seams = [set(qm.seam_keys()) for _, qm in parts]
    for i, s in enumerate(seams[1:], start=1):
        if s != seams[0]:
            raise SeamMismatchError(
                f"costura {seam}: parte {i} identifica {len(s)} qubits, parte 0 identifica {len(seams[0])}"
            )
    d = max(P.dimension for P, _ in parts)
    cells: List[Cell] = []
    remap: List[Dict[int, int]] = [dict() for _ in parts]

    for p, (P, _) in enumerate(parts):
        for v in P.of_dim(0):
            remap[p][v] = len(cells)
            cells.append(Cell(id=len(cells), dim=0, color=P.cells[v].color))

    out_map = QubitMap()
    for p, (P, qm) in enumerate(parts):
        for e in P.of_dim(1):
            key = qm.keys.get(e)
            if key is not None and key[0] == "v":
                continue
            nid = len(cells)
            faces = tuple(sorted(remap[p][f] for f in P.cells[e].faces))
            cells.append(Cell(id=nid, dim=1, faces=faces, boundary=P.cells[e].boundary))
            remap[p][e] = nid
            if key is not None:
                out_map.keys[nid] = key
                out_map.part_of[nid] = qm.part_of.get(e, p + 1)

    seam_faces: Dict[Key, set] = {k: set() for k in sorted(seams[0])}
    for p, (P, qm) in enumerate(parts):
        for e, key in qm.keys.items():
            if key[0] == "v":
                seam_faces[key] |= {remap[p][f] for f in P.cells[e].faces}
    seam_id: Dict[Key, int] = {}
    for key, faces in seam_faces.items():
        nid = len(cells)
        cells.append(Cell(id=nid, dim=1, faces=tuple(sorted(faces)), boundary=len(faces) < 2))
        seam_id[key] = nid
        out_map.keys[nid] = key
        out_map.part_of[nid] = seam
    for p, (P, qm) in enumerate(parts):
        for e, key in qm.keys.items():
            if key[0] == "v":
                remap[p][e] = seam_id[key]

    for k in range(2, d + 1):
        for p, (P, _) in enumerate(parts):
            for c in P.of_dim(k):
                nid = len(cells)
                faces = tuple(sorted(remap[p][f] for f in P.cells[c].faces))
                cells.append(Cell(id=nid, dim=k, faces=faces, boundary=P.cells[c].boundary))
                remap[p][c] = nid

    for _, qm in parts:
        out_map.ancillas.extend(qm.ancillas)
    return ColoredComplex(d, cells, PRIMAL), out_map


def attach(parts: Sequence[Tuple[ColoredComplex, QubitMap]], seam: int = 0) -> ColoredComplex:
    return attach_maps(parts, seam)[0]


def derive_L_N(K: ColoredComplex, N: Sequence[int]) -> ColoredComplex:
    """
    Complexo L_N a partir do simplicial fechado K, com k = d - 1 - |N|.

    Mantém os simplexos de dimensão <= k+1 sem cores de N e acrescenta uma
    (k+2)-célula por (d-2-k)-simplexo τ de cores exatamente N, cujas faces
    são o elo link_{k+1}(τ).
    """
    if K.mode != DUAL:
        raise InvalidParams("derive_L_N exige complexo simplicial (modo dual)")
    if not K.is_closed:
        raise InvalidParams("derive_L_N exige complexo fechado")
    d = K.dimension
    cols = frozenset(int(c) for c in N)
    if len(cols) != len(N) or not cols <= set(range(1, d + 1)):
        raise InvalidParams(f"N deve ser subconjunto sem repetição de 1..{d}: {list(N)}")
    k = d - 1 - len(cols)
    if not 0 <= k <= d - 2:
        raise InvalidParams(f"|N| = {len(cols)} dá k = {k} fora de 0..{d - 2}")

    keep = [c.id for c in K.cells if c.dim <= k + 1 and not (K.colors_of(c.id) & cols)]
    new_id = {s: i for i, s in enumerate(keep)}
    cells: List[Cell] = []
    for s in keep:
        src = K.cells[s]
        cells.append(
            Cell(
                id=new_id[s],
                dim=src.dim,
                faces=tuple(sorted(new_id[f] for f in src.faces)),
                color=src.color,
            )
        )
    for tau in K.of_dim(d - 2 - k):
        if K.colors_of(tau) != cols:
            continue
        faces = tuple(sorted(new_id[f] for f in link(K, tau, k + 1) if f in new_id))
        cells.append(Cell(id=len(cells), dim=k + 2, faces=faces))
    return ColoredComplex(k + 2, cells, DUAL)

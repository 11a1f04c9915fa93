"""
Complexos celulares coloridos.

Um único tipo cobre os dois modos:
  - primal: células de dimensão k, cores nas d-células; qubits da color code nos vértices;
  - dual: complexo simplicial com cores nos vértices (usado pelos construtores).

Vértices virtuais (modo dual) representam componentes de fronteira; no modo
primal eles viram d-células exteriores, marcadas com boundary=True.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from app.engine.errors import InvalidParams, LatticeFormatError

PRIMAL = "primal"
DUAL = "dual"


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    faces: Tuple[int, ...] = ()
    boundary: bool = False
    color: Optional[int] = None
    cycle: Optional[Tuple[int, ...]] = None


class ColoredComplex:
    def __init__(self, dimension: int, cells: Iterable[Cell], mode: str = PRIMAL):
        if mode not in (PRIMAL, DUAL):
            raise LatticeFormatError(f"modo desconhecido: {mode!r}")
        self.dimension = int(dimension)
        self.mode = mode
        self.cells: Tuple[Cell, ...] = tuple(cells)
        for i, c in enumerate(self.cells):
            if c.id != i:
                raise LatticeFormatError(f"ids devem ser 0..N-1 em ordem (posição {i} tem id {c.id})")
        self._verts: Dict[int, FrozenSet[int]] = {}

    # -------- consultas básicas --------
    @property
    def num_colors(self) -> int:
        return self.dimension + 1

    def __len__(self) -> int:
        return len(self.cells)

    @cached_property
    def _by_dim(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for c in self.cells:
            out.setdefault(c.dim, []).append(c.id)
        return out

    def of_dim(self, k: int) -> List[int]:
        return list(self._by_dim.get(k, []))

    def counts(self) -> Dict[int, int]:
        return {k: len(v) for k, v in sorted(self._by_dim.items())}

    @cached_property
    def _cofaces(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {c.id: [] for c in self.cells}
        for c in self.cells:
            for f in sorted(set(c.faces)):
                if f in out:
                    out[f].append(c.id)
        return out

    def cofaces(self, cid: int) -> List[int]:
        return list(self._cofaces[cid])

    def vertices_of(self, cid: int) -> FrozenSet[int]:
        if cid in self._verts:
            return self._verts[cid]
        c = self.cells[cid]
        if c.dim == 0:
            out = frozenset([cid])
        else:
            acc: Set[int] = set()
            for f in c.faces:
                acc |= self.vertices_of(f)
            out = frozenset(acc)
        self._verts[cid] = out
        return out

    def faces_of(self, cid: int, k: int) -> List[int]:
        """k-células no fecho inferior da célula (inclui ela própria se k = dim)."""
        layer = {cid}
        dim = self.cells[cid].dim
        if k > dim:
            return []
        while dim > k:
            layer = {f for c in layer for f in self.cells[c].faces}
            dim -= 1
        return sorted(layer)

    def containing(self, cid: int, k: int) -> List[int]:
        """k-células que contêm a célula (fecho superior)."""
        layer = {cid}
        dim = self.cells[cid].dim
        if k < dim:
            return []
        while dim < k:
            layer = {t for c in layer for t in self._cofaces[c]}
            dim += 1
        return sorted(layer)

    def is_exterior(self, cid: int) -> bool:
        c = self.cells[cid]
        return self.mode == PRIMAL and c.dim == self.dimension and c.boundary

    def colors_of(self, cid: int) -> FrozenSet[int]:
        """Primal: cores das d-células que contêm a célula. Dual: cores dos vértices."""
        if self.mode == PRIMAL:
            tops = self.containing(cid, self.dimension)
            return frozenset(self.cells[t].color for t in tops if self.cells[t].color is not None)
        return frozenset(self.cells[v].color for v in self.vertices_of(cid) if self.cells[v].color is not None)

    def top_cell_of_color(self, vertex: int, color: int) -> Optional[int]:
        for t in self.containing(vertex, self.dimension):
            if self.cells[t].color == color:
                return t
        return None

    @property
    def is_closed(self) -> bool:
        return not any(c.boundary for c in self.cells)

    @cached_property
    def simplex_index(self) -> Dict[FrozenSet[int], int]:
        if self.mode != DUAL:
            raise InvalidParams("índice de simplexos só existe no modo dual")
        return {self.vertices_of(c.id): c.id for c in self.cells}

    # -------- JSON --------
    def to_json(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "mode": self.mode,
            "cells": [
                {
                    "id": c.id,
                    "dim": c.dim,
                    "faces": list(c.faces),
                    "color": c.color,
                    "boundary": c.boundary,
                    "cycle": list(c.cycle) if c.cycle is not None else None,
                }
                for c in self.cells
            ],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ColoredComplex":
        try:
            cells = []
            for raw in data["cells"]:
                cycle = raw.get("cycle")
                color = raw.get("color")
                cells.append(
                    Cell(
                        id=int(raw["id"]),
                        dim=int(raw["dim"]),
                        faces=tuple(sorted(int(f) for f in raw.get("faces", []))),
                        boundary=bool(raw.get("boundary", False)),
                        color=int(color) if color is not None else None,
                        cycle=tuple(int(v) for v in cycle) if cycle is not None else None,
                    )
                )
            cells.sort(key=lambda c: c.id)
            out = cls(int(data["dimension"]), cells, data.get("mode", PRIMAL))
        except LatticeFormatError:
            raise
        except Exception as e:
            raise LatticeFormatError(f"JSON de reticulado inválido: {e}") from e
        for c in out.cells:
            for f in c.faces:
                if not 0 <= f < len(out.cells):
                    raise LatticeFormatError(f"célula {c.id} referencia face inexistente {f}")
        return out


def save_json(L: ColoredComplex, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(L.to_json(), indent=1), encoding="utf-8")
    return p


def load_json(path: str | Path) -> ColoredComplex:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise LatticeFormatError(f"arquivo não encontrado: {p}") from e
    except json.JSONDecodeError as e:
        raise LatticeFormatError(f"JSON corrompido em {p}: {e}") from e
    if not isinstance(data, dict):
        raise LatticeFormatError("JSON de reticulado deve ser um objeto")
    return ColoredComplex.from_json(data)


# -------- validação --------
@dataclass
class ValidationReport:
    structure: List[str] = field(default_factory=list)
    valence: List[str] = field(default_factory=list)
    coloring: List[str] = field(default_factory=list)
    homogeneity: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues()

    def issues(self) -> List[str]:
        return self.structure + self.valence + self.coloring + self.homogeneity

    def to_json(self) -> Dict[str, List[str]]:
        return {
            "structure": self.structure,
            "valence": self.valence,
            "coloring": self.coloring,
            "homogeneity": self.homogeneity,
        }


def validate(L: ColoredComplex) -> ValidationReport:
    rep = ValidationReport()
    d = L.dimension
    for c in L.cells:
        if c.dim == 0 and c.faces:
            rep.structure.append(f"vértice {c.id} com faces")
        for f in c.faces:
            if not 0 <= f < len(L.cells) or L.cells[f].dim != c.dim - 1:
                rep.structure.append(f"célula {c.id}: face {f} inexistente ou de dimensão errada")
    if rep.structure:
        return rep

    covered = set(L.of_dim(d))
    for k in range(d, 0, -1):
        for cid in [x for x in covered if L.cells[x].dim == k]:
            covered.update(L.cells[cid].faces)
    for c in L.cells:
        if c.id not in covered:
            rep.homogeneity.append(f"célula {c.id} (dim {c.dim}) não pertence a nenhuma {d}-célula")

    if L.mode == PRIMAL:
        _validate_primal(L, rep)
    else:
        _validate_dual(L, rep)
    return rep


def _validate_primal(L: ColoredComplex, rep: ValidationReport) -> None:
    d = L.dimension
    for v in L.of_dim(0):
        if L.cells[v].boundary:
            continue
        deg = len(L.cofaces(v))
        if deg != d + 1:
            rep.valence.append(f"vértice {v} tem {deg} arestas (esperado {d + 1})")
    for t in L.of_dim(d):
        col = L.cells[t].color
        if col is None or not 0 <= col <= d:
            rep.coloring.append(f"{d}-célula {t} sem cor válida")
    for r in L.of_dim(d - 1):
        tops = L.cofaces(r)
        real = [t for t in tops if not L.cells[t].boundary]
        if len(tops) != 2 or (not L.cells[r].boundary and len(real) != 2) or not real:
            rep.structure.append(f"({d - 1})-célula {r} está em {len(tops)} {d}-células ({len(real)} reais)")
            continue
        a, b = tops
        if L.cells[a].color is not None and L.cells[a].color == L.cells[b].color:
            rep.coloring.append(f"{d}-células adjacentes {a} e {b} com a mesma cor {L.cells[a].color}")


def _validate_dual(L: ColoredComplex, rep: ValidationReport) -> None:
    d = L.dimension
    for c in L.cells:
        if c.dim > 0 and len(set(c.faces)) != c.dim + 1:
            rep.structure.append(f"simplexo {c.id} de dim {c.dim} tem {len(set(c.faces))} faces")
    for v in L.of_dim(0):
        col = L.cells[v].color
        if col is None or not 0 <= col <= d:
            rep.coloring.append(f"vértice {v} sem cor válida")
    for e in L.of_dim(1):
        a, b = L.cells[e].faces
        if L.cells[a].color == L.cells[b].color:
            rep.coloring.append(f"vértices adjacentes {a} e {b} com a mesma cor")


# -------- estrela e elo (modo dual) --------
def _require_dual(L: ColoredComplex, cid: int) -> None:
    if L.mode != DUAL:
        raise InvalidParams("estrela/elo exigem complexo no modo dual")
    if not 0 <= cid < len(L.cells):
        raise InvalidParams(f"célula {cid} não encontrada")


def star(L: ColoredComplex, cid: int, n: int) -> Set[int]:
    """n-simplexos que contêm a célula."""
    _require_dual(L, cid)
    return set(L.containing(cid, n))


def link(L: ColoredComplex, cid: int, n: int) -> Set[int]:
    """n-faces dos d-simplexos que contêm a célula, disjuntas dela."""
    _require_dual(L, cid)
    base = L.vertices_of(cid)
    out: Set[int] = set()
    for top in L.containing(cid, L.dimension):
        rest = sorted(L.vertices_of(top) - base)
        for sub in combinations(rest, n + 1):
            sid = L.simplex_index.get(frozenset(sub))
            if sid is not None:
                out.add(sid)
    return out


# -------- construção e conversão primal/dual --------
def simplicial_complex(
    d: int,
    facets: Sequence[Sequence[int]],
    colors: Sequence[int],
    virtual: Sequence[bool] | None = None,
) -> ColoredComplex:
    """Complexo simplicial (modo dual) gerado pelas facetas; ids por (dim, vértices)."""
    nv = len(colors)
    virtual = list(virtual) if virtual is not None else [False] * nv
    tops = [tuple(sorted(f)) for f in facets]
    if len(set(tops)) != len(tops):
        raise InvalidParams("facetas repetidas (reticulado pequeno demais)")
    simplices: Set[Tuple[int, ...]] = set()
    for f in tops:
        if len(f) != d + 1 or len(set(f)) != d + 1:
            raise InvalidParams(f"faceta degenerada {f}")
        for r in range(1, d + 2):
            simplices.update(combinations(f, r))
    ordered = sorted(simplices, key=lambda s: (len(s), s))
    if ordered[:nv] != [(v,) for v in range(nv)]:
        raise InvalidParams("há vértices fora de todas as facetas")
    index = {s: i for i, s in enumerate(ordered)}
    cells = []
    for i, s in enumerate(ordered):
        k = len(s) - 1
        faces = tuple(sorted(index[s[:j] + s[j + 1:]] for j in range(len(s)))) if k else ()
        cells.append(
            Cell(
                id=i,
                dim=k,
                faces=faces,
                boundary=any(virtual[v] for v in s),
                color=int(colors[s[0]]) if k == 0 else None,
            )
        )
    return ColoredComplex(d, cells, DUAL)


def _walk(edges: Sequence[Tuple[int, ...]]) -> Tuple[int, ...]:
    adj: Dict[int, Set[int]] = {}
    for e in edges:
        if len(e) != 2:
            continue
        a, b = e
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if not adj:
        return ()
    ends = [v for v, nb in adj.items() if len(nb) == 1]
    cur = min(ends) if ends else min(adj)
    order = [cur]
    seen = {cur}
    while True:
        nxt = sorted(v for v in adj[cur] if v not in seen)
        if not nxt:
            break
        cur = nxt[0]
        seen.add(cur)
        order.append(cur)
    return tuple(order)


def boundary_simplices(K: ColoredComplex) -> Set[int]:
    """Fecho dos (d-1)-simplexos contidos numa única faceta (∂K)."""
    d = K.dimension
    on_bd: Set[int] = set()
    for r in K.of_dim(d - 1):
        n_tops = len(K.cofaces(r))
        if n_tops > 2:
            raise InvalidParams(f"({d - 1})-simplexo {r} em {n_tops} facetas")
        if n_tops == 1:
            verts = sorted(K.vertices_of(r))
            for size in range(1, len(verts) + 1):
                for sub in combinations(verts, size):
                    on_bd.add(K.simplex_index[frozenset(sub)])
    return on_bd


def to_primal(K: ColoredComplex) -> ColoredComplex:
    """
    Primal de um complexo simplicial colorido.

    Simplexos fora de ∂K viram células de dimensão d - k; cada vértice
    (inclusive virtual) vira uma d-célula com a cor do vértice.
    """
    if K.mode != DUAL:
        raise InvalidParams("to_primal exige complexo no modo dual")
    d = K.dimension
    on_bd = boundary_simplices(K)
    for v in K.of_dim(0):
        if v in on_bd and not K.cells[v].boundary:
            raise InvalidParams(f"vértice real {v} na fronteira do complexo")
    keep = [c.id for c in K.cells if c.id not in on_bd or c.dim == 0]
    order = sorted(keep, key=lambda s: (-K.cells[s].dim, s))
    pid = {s: i for i, s in enumerate(order)}
    faces_of: Dict[int, Tuple[int, ...]] = {}
    for s in order:
        faces_of[pid[s]] = tuple(sorted(pid[t] for t in K.cofaces(s) if t in pid))
    cells = []
    for s in order:
        src = K.cells[s]
        i = pid[s]
        cycle = None
        if d - src.dim == 2:
            cycle = _walk([faces_of[e] for e in faces_of[i]])
        cells.append(
            Cell(
                id=i,
                dim=d - src.dim,
                faces=faces_of[i],
                boundary=src.boundary,
                color=src.color if src.dim == 0 else None,
                cycle=cycle,
            )
        )
    return ColoredComplex(d, cells, PRIMAL)


def to_dual(L: ColoredComplex) -> ColoredComplex:
    """Complexo simplicial dual: vértices = d-células, facetas = vértices primais."""
    if L.mode != PRIMAL:
        raise InvalidParams("to_dual exige complexo no modo primal")
    d = L.dimension
    tops = L.of_dim(d)
    kv = {t: i for i, t in enumerate(tops)}
    facets = []
    for v in L.of_dim(0):
        around = L.containing(v, d)
        if len(around) != d + 1:
            raise InvalidParams(f"vértice {v} está em {len(around)} {d}-células (esperado {d + 1})")
        facets.append([kv[t] for t in around])
    colors = [L.cells[t].color for t in tops]
    if any(c is None for c in colors):
        raise InvalidParams("d-células sem cor")
    virtual = [L.cells[t].boundary for t in tops]
    return simplicial_complex(d, facets, colors, virtual)


# -------- topologia 2D --------
def euler_characteristic(L: ColoredComplex) -> int:
    """Soma alternada sobre células reais (d-células exteriores excluídas)."""
    total = 0
    for c in L.cells:
        if L.is_exterior(c.id):
            continue
        total += (-1) ** c.dim
    return total


def boundary_components(L: ColoredComplex) -> List[int]:
    return [t for t in L.of_dim(L.dimension) if L.is_exterior(t)]

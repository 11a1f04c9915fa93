"""
Códigos CSS sobre complexos coloridos: color code CC_k e toric code TC_k,
operadores lógicos, qubits ancilares e exportação (JSON / alist).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Sequence

import numpy as np

from app.lattice.complex import DUAL, PRIMAL, ColoredComplex, boundary_simplices, validate

from . import gf2
from .errors import InvalidParams, VerificationError
from .pauli import PauliGroup, PauliOp
from .settings import load_settings

log = logging.getLogger(__name__)


@dataclass
class CssCode:
    hx: np.ndarray
    hz: np.ndarray
    qubit_labels: List[Hashable]
    x_labels: List[Hashable] = field(default_factory=list)
    z_labels: List[Hashable] = field(default_factory=list)
    geometry: Optional[ColoredComplex] = None
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.qubit_labels)

    def stabilizers(self) -> PauliGroup:
        n = self.n
        gens = [PauliOp(r, np.zeros(n, dtype=np.uint8)) for r in self.hx]
        gens += [PauliOp(np.zeros(n, dtype=np.uint8), r) for r in self.hz]
        return PauliGroup(n, gens)

    def to_json(self) -> Dict[str, Any]:
        def lab(x):
            return list(x) if isinstance(x, tuple) else x

        return {
            "name": self.name,
            "n": self.n,
            "k": logical_count(self),
            "hx": [gf2.to_hex(r) for r in self.hx],
            "hz": [gf2.to_hex(r) for r in self.hz],
            "labels": {
                "qubits": [lab(q) for q in self.qubit_labels],
                "x": [lab(s) for s in self.x_labels],
                "z": [lab(s) for s in self.z_labels],
            },
        }

    def to_alist(self) -> str:
        return "# HX\n" + _alist(self.hx, self.n) + "\n# HZ\n" + _alist(self.hz, self.n)


def _alist(H: np.ndarray, n: int) -> str:
    """Formato alist (linhas e colunas 1-indexadas)."""
    H = gf2.as_bits(H, n)
    m = H.shape[0]
    cols = [list(np.flatnonzero(H[:, j]) + 1) for j in range(n)]
    rows = [list(np.flatnonzero(H[i]) + 1) for i in range(m)]
    out = [
        f"{n} {m}",
        f"{max((len(c) for c in cols), default=0)} {max((len(r) for r in rows), default=0)}",
        " ".join(str(len(c)) for c in cols),
        " ".join(str(len(r)) for r in rows),
    ]
    out += [" ".join(str(int(x)) for x in c) for c in cols]
    out += [" ".join(str(int(x)) for x in r) for r in rows]
    return "\n".join(out) + "\n"


def _rows(supports: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """Suportes → matriz binária; repetições cancelam mod 2."""
    M = np.zeros((len(supports), n), dtype=np.uint8)
    for i, s in enumerate(supports):
        for q in s:
            M[i, q] ^= 1
    return M


def _require_valid(L: ColoredComplex) -> None:
    rep = validate(L)
    for check, issues in rep.to_json().items():
        if issues:
            raise VerificationError(f"reticulado inválido ({check}): {issues[0]}", check=check)


def _check_commuting(code: CssCode) -> None:
    if code.hx.shape[0] and code.hz.shape[0] and gf2.matmul(code.hx, code.hz.T).any():
        raise VerificationError(f"{code.name}: estabilizadores X e Z não comutam", check="commutation")


# -------- color code --------
def color_code(L: ColoredComplex, k: int | None = None) -> CssCode:
    """
    CC_k(L). Primal: qubits nos vértices, X nas (k+2)-células, Z nas
    (d-k)-células. Dual: qubits nos d-simplexos, X e Z pelas estrelas dos
    (d-k-2)- e k-simplexos. d-células exteriores e simplexos de ∂K não geram linhas.
    """
    d = L.dimension
    k = d - 2 if k is None else int(k)
    if not 0 <= k <= d - 2:
        raise InvalidParams(f"k = {k} fora de 0..{d - 2}")
    _require_valid(L)

    if L.mode == PRIMAL:
        qubits = L.of_dim(0)
        qi = {v: i for i, v in enumerate(qubits)}
        n = len(qubits)

        def gens(dim: int):
            cells = [c for c in L.of_dim(dim) if not L.is_exterior(c)]
            return cells, _rows([[qi[v] for v in L.vertices_of(c)] for c in cells], n)

        xc, hx = gens(k + 2)
        zc, hz = gens(d - k)
        labels = [("v", v) for v in qubits]
    else:
        qubits = L.of_dim(d)
        qi = {t: i for i, t in enumerate(qubits)}
        n = len(qubits)
        skip = boundary_simplices(L)

        def gens(dim: int):
            cells = [c for c in L.of_dim(dim) if c not in skip and not (dim == 0 and L.cells[c].boundary)]
            return cells, _rows([[qi[t] for t in L.containing(c, d)] for c in cells], n)

        xc, hx = gens(d - k - 2)
        zc, hz = gens(k)
        labels = [("s", t) for t in qubits]

    code = CssCode(
        hx=gf2.as_bits(hx, n),
        hz=gf2.as_bits(hz, n),
        qubit_labels=labels,
        x_labels=[(c, "X") for c in xc],
        z_labels=[(c, "Z") for c in zc],
        geometry=L,
        name=f"CC_{k}",
    )
    _check_commuting(code)
    log.debug("color code %s: n=%d, %d linhas X, %d linhas Z", code.name, n, len(xc), len(zc))
    return code


# -------- toric code --------
def toric_code(L: ColoredComplex, k: int = 1) -> CssCode:
    """
    TC_k(L): qubits nas k-células.

    Primal: X pelas estrelas das (k-1)-células, Z pelas faces das (k+1)-células.
    Dual: X pelas faces das (k+1)-células, Z pelas estrelas das (k-1)-células.
    Linhas nulas são descartadas; faces repetidas cancelam mod 2.
    """
    d = L.dimension
    if not 1 <= k <= d - 1:
        raise InvalidParams(f"k = {k} fora de 1..{d - 1}")
    qubits = L.of_dim(k)
    qi = {c: i for i, c in enumerate(qubits)}
    n = len(qubits)

    lower = L.of_dim(k - 1)
    upper = [c for c in L.of_dim(k + 1) if not L.is_exterior(c)]
    stars = [[qi[t] for t in L.cofaces(c) if t in qi] for c in lower]
    bounds = [[qi[f] for f in L.cells[c].faces if f in qi] for c in upper]
    if L.mode == DUAL:
        xc, xs, zc, zs = upper, bounds, lower, stars
    else:
        xc, xs, zc, zs = lower, stars, upper, bounds

    def nonzero(cells, supports):
        M = _rows(supports, n)
        keep = [i for i in range(M.shape[0]) if M[i].any()]
        return [cells[i] for i in keep], gf2.as_bits(M[keep], n)

    xc, hx = nonzero(xc, xs)
    zc, hz = nonzero(zc, zs)
    code = CssCode(
        hx=hx,
        hz=hz,
        qubit_labels=[("c", c) for c in qubits],
        x_labels=[(c, "X") for c in xc],
        z_labels=[(c, "Z") for c in zc],
        geometry=L,
        name=f"TC_{k}",
    )
    _check_commuting(code)
    return code


# -------- lógicos --------
def logical_count(code: CssCode) -> int:
    return code.n - gf2.rank(code.hx) - gf2.rank(code.hz)


@dataclass
class LogicalSet:
    xs: List[PauliOp] = field(default_factory=list)
    zs: List[PauliOp] = field(default_factory=list)
    tags: List[Dict[str, Any]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.xs)

    def x_matrix(self, n: int) -> np.ndarray:
        return gf2.as_bits(np.array([p.x for p in self.xs], dtype=np.uint8), n) if self.xs else np.zeros((0, n), dtype=np.uint8)

    def z_matrix(self, n: int) -> np.ndarray:
        return gf2.as_bits(np.array([p.z for p in self.zs], dtype=np.uint8), n) if self.zs else np.zeros((0, n), dtype=np.uint8)


def span_elements(basis: np.ndarray) -> np.ndarray:
    """Todos os 2^r elementos do espaço-linha (r pequeno)."""
    n = basis.shape[1]
    S = np.zeros((1, n), dtype=np.uint8)
    for row in basis:
        S = np.vstack([S, S ^ row])
    return S


def _coset_reps(kernel_of: np.ndarray, modulo: np.ndarray, n: int) -> np.ndarray:
    """Representantes de ker(kernel_of) / rowspan(modulo), na ordem da base do núcleo."""
    ker = gf2.nullspace(gf2.as_bits(kernel_of, n)) if kernel_of.shape[0] else np.eye(n, dtype=np.uint8)
    acc = gf2.row_basis(modulo) if modulo.shape[0] else np.zeros((0, n), dtype=np.uint8)
    base_rank = acc.shape[0]
    reps = []
    for v in ker:
        trial = np.vstack([acc, v])
        if gf2.rank(trial) > acc.shape[0]:
            acc = trial
            reps.append(v)
    log.debug("lógicos: %d representantes sobre posto %d", len(reps), base_rank)
    return np.array(reps, dtype=np.uint8).reshape(len(reps), n)


def _min_weight(reps: np.ndarray, modulo: np.ndarray) -> np.ndarray:
    basis = gf2.row_basis(modulo) if modulo.shape[0] else np.zeros((0, reps.shape[1]), dtype=np.uint8)
    S = span_elements(basis)
    out = reps.copy()
    for i, r in enumerate(reps):
        cand = S ^ r
        w = cand.sum(axis=1)
        out[i] = cand[int(np.argmin(w))]
    return out


def logical_operators(code: CssCode, settings: Dict[str, Any] | None = None) -> LogicalSet:
    """
    Pares (X̄_i, Z̄_i) com X̄_i·Z̄_j = δ_ij.

    Para n pequeno cada representante é trocado pelo de menor peso na sua
    classe (empates: primeiro na enumeração), antes do emparelhamento.
    """
    cfg = settings or load_settings()
    n = code.n
    hx = gf2.as_bits(code.hx, n)
    hz = gf2.as_bits(code.hz, n)
    X = _coset_reps(hz, hx, n)
    Z = _coset_reps(hx, hz, n)
    if X.shape[0] == 0:
        return LogicalSet()
    if n <= cfg["min_weight_max_n"]:
        if gf2.rank(hx) <= cfg["min_weight_max_rank"]:
            X = _min_weight(X, hx)
        if gf2.rank(hz) <= cfg["min_weight_max_rank"]:
            Z = _min_weight(Z, hz)
    P = gf2.matmul(X, Z.T)
    if not np.array_equal(P, np.eye(P.shape[0], dtype=np.uint8)):
        Z = gf2.matmul(gf2.inverse(P).T, Z)
    zero = np.zeros(n, dtype=np.uint8)
    xs = [PauliOp(r, zero) for r in X]
    zs = [PauliOp(zero, r) for r in Z]
    tags = [
        {
            "index": i,
            "x_weight": xs[i].weight(),
            "z_weight": zs[i].weight(),
            "color": _support_colors(code, Z[i]),
        }
        for i in range(len(xs))
    ]
    return LogicalSet(xs, zs, tags)


def _support_colors(code: CssCode, row: np.ndarray) -> List[int]:
    """Cores dos vértices tocados pelas arestas do suporte (toric code sobre um reticulado encolhido)."""
    L = code.geometry
    if L is None:
        return []
    out = set()
    for q in np.flatnonzero(row):
        label = code.qubit_labels[q]
        if not (isinstance(label, tuple) and label[0] == "c"):
            continue
        for f in L.cells[label[1]].faces:
            if L.cells[f].dim == 0 and L.cells[f].color is not None:
                out.add(int(L.cells[f].color))
    return sorted(out)


def code_distance(code: CssCode, max_n: int = 30) -> int:
    """Distância por busca exaustiva nos núcleos (n pequeno). 0 se não há lógicos."""
    n = code.n
    if n > max_n:
        raise InvalidParams(f"busca exaustiva limitada a n <= {max_n} (n = {n})")
    logicals = logical_operators(code)
    if not len(logicals):
        return 0
    best = n
    for H, dual_logicals in ((code.hz, logicals.z_matrix(n)), (code.hx, logicals.x_matrix(n))):
        ker = gf2.nullspace(gf2.as_bits(H, n)) if H.shape[0] else np.eye(n, dtype=np.uint8)
        S = span_elements(ker)
        nontrivial = gf2.matmul(S, dual_logicals.T).any(axis=1)
        if nontrivial.any():
            best = min(best, int(S[nontrivial].sum(axis=1).min()))
    return best


def add_ancillas(code: CssCode, m: int, labels: Sequence[Hashable] | None = None) -> CssCode:
    """Acrescenta m qubits desacoplados, cada um estabilizado por um Z."""
    if m < 0:
        raise InvalidParams(f"m = {m} negativo")
    if m == 0:
        return code
    n = code.n
    hx = np.concatenate([gf2.as_bits(code.hx, n), np.zeros((code.hx.shape[0], m), dtype=np.uint8)], axis=1)
    hz_old = np.concatenate([gf2.as_bits(code.hz, n), np.zeros((code.hz.shape[0], m), dtype=np.uint8)], axis=1)
    extra = np.concatenate([np.zeros((m, n), dtype=np.uint8), np.eye(m, dtype=np.uint8)], axis=1)
    anc = list(labels) if labels is not None else [("a", j) for j in range(m)]
    if len(anc) != m:
        raise InvalidParams(f"{len(anc)} rótulos para {m} ancilas")
    return CssCode(
        hx=hx,
        hz=np.vstack([hz_old, extra]),
        qubit_labels=list(code.qubit_labels) + anc,
        x_labels=list(code.x_labels),
        z_labels=list(code.z_labels) + [(a, "Z") for a in anc],
        geometry=code.geometry,
        name=code.name,
    )


def expected_logical_count_2d(n_boundaries: int, chi: int) -> int:
    """n - 2χ para color codes 2D com pelo menos uma fronteira."""
    if n_boundaries < 1:
        raise InvalidParams("fórmula n - 2χ só vale com fronteiras")
    return n_boundaries - 2 * chi

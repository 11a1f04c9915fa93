"""
Portas diagonais transversais: R_d transversal, comutadores com strings X,
preservação do espaço de código e ação lógica (C^{d-1}Z em cópias da toric code).

Fases são inteiras em Z_{2^d}, em unidades de 2π/2^d:
θ(x) = Σ_j coeffs_j·x_j + const.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.lattice.complex import ColoredComplex

from . import gf2
from .codes import CssCode, LogicalSet, logical_operators
from .errors import GateError, InvalidParams
from .pauli import PauliOp
from .settings import load_settings

log = logging.getLogger(__name__)


@dataclass
class DiagonalPhaseOp:
    n: int
    level: int
    coeffs: np.ndarray
    const: int = 0

    def __post_init__(self):
        if self.level < 1:
            raise InvalidParams(f"nível {self.level} < 1")
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64).reshape(-1) % self.modulus
        if self.coeffs.size != self.n:
            raise InvalidParams(f"{self.coeffs.size} coeficientes para {self.n} qubits")
        self.const = int(self.const) % self.modulus

    @property
    def modulus(self) -> int:
        return 2 ** self.level

    @classmethod
    def identity(cls, n: int, level: int) -> "DiagonalPhaseOp":
        return cls(n, level, np.zeros(n, dtype=np.int64), 0)

    def phase(self, x) -> int:
        bits = gf2.as_bits(x, self.n).reshape(-1).astype(np.int64)
        return int((int(self.coeffs @ bits) + self.const) % self.modulus)

    def is_trivial(self) -> bool:
        return not self.coeffs.any() and self.const == 0

    def is_level_one(self) -> bool:
        """Coeficientes em {0, 2^(d-1)}: uma string Z com sinal."""
        half = self.modulus // 2
        return bool(np.all((self.coeffs == 0) | (self.coeffs == half)))

    def z_string(self) -> PauliOp:
        if not self.is_level_one():
            raise GateError("operador não é de nível 1")
        z = (self.coeffs != 0).astype(np.uint8)
        return PauliOp(np.zeros(self.n, dtype=np.uint8), z)

    def inverse(self) -> "DiagonalPhaseOp":
        return DiagonalPhaseOp(self.n, self.level, -self.coeffs, -self.const)

    def __mul__(self, other: "DiagonalPhaseOp") -> "DiagonalPhaseOp":
        if other.n != self.n or other.level != self.level:
            raise InvalidParams("operadores diagonais incompatíveis")
        return DiagonalPhaseOp(self.n, self.level, self.coeffs + other.coeffs, self.const + other.const)

    def key(self) -> Tuple[bytes, int]:
        return self.coeffs.tobytes(), self.const

    def to_json(self) -> dict:
        return {"n": self.n, "level": self.level, "coeffs": [int(c) for c in self.coeffs], "const": self.const}


@dataclass
class Bipartition:
    T: List[int]
    Tc: List[int]

    def swapped(self) -> "Bipartition":
        return Bipartition(list(self.Tc), list(self.T))


def bipartition(L: ColoredComplex) -> Bipartition:
    """2-coloração do grafo de qubits (1-esqueleto); o menor vértice de cada componente fica em T."""
    G = nx.Graph()
    G.add_nodes_from(L.of_dim(0))
    for e in L.of_dim(1):
        vs = sorted(L.vertices_of(e))
        if len(vs) == 2:
            G.add_edge(*vs)
        else:
            raise GateError(f"aresta {e} é um laço; grafo não bipartido")
    side: Dict[int, int] = {}
    for comp in sorted(nx.connected_components(G), key=min):
        root = min(comp)
        for v, depth in nx.single_source_shortest_path_length(G, root).items():
            side[v] = depth % 2
    for u, v in G.edges():
        if side[u] == side[v]:
            raise GateError(f"grafo de qubits não é bipartido (aresta {u}-{v})")
    return Bipartition(
        sorted(v for v, s in side.items() if s == 0),
        sorted(v for v, s in side.items() if s == 1),
    )


def transversal_Rd(code: CssCode, bip: Bipartition, level: int) -> DiagonalPhaseOp:
    """R_d nos qubits de T e R_d^{-1} nos de T^c."""
    mod = 2 ** level
    T = set(bip.T)
    Tc = set(bip.Tc)
    coeffs = np.zeros(code.n, dtype=np.int64)
    for q, label in enumerate(code.qubit_labels):
        if label[0] != "v":
            continue
        v = label[1]
        if v in T:
            coeffs[q] = 1
        elif v in Tc:
            coeffs[q] = mod - 1
    return DiagonalPhaseOp(code.n, level, coeffs, 0)


def commutator_with_x(D: DiagonalPhaseOp, a: PauliOp) -> DiagonalPhaseOp:
    """
    K[D, X_a] = D X_a D† X_a, diagonal com fase θ(x) - θ(x ⊕ a):
    coeficiente 2·c_j em supp(a), constante -Σ_{supp(a)} c_j.
    """
    if not a.is_x_type():
        raise InvalidParams("comutador exige um operador do tipo X")
    if a.n != D.n:
        raise InvalidParams(f"operador sobre {a.n} qubits, fase sobre {D.n}")
    mask = a.x.astype(np.int64)
    coeffs = 2 * D.coeffs * mask
    const = -int((D.coeffs * mask).sum())
    return DiagonalPhaseOp(D.n, D.level, coeffs, const)


def _x_generators(code: CssCode, logicals: Optional[LogicalSet]) -> List[PauliOp]:
    n = code.n
    zero = np.zeros(n, dtype=np.uint8)
    gens = [PauliOp(r, zero) for r in gf2.row_basis(code.hx)] if code.hx.shape[0] else []
    ls = logicals if logicals is not None else logical_operators(code)
    return gens + list(ls.xs)


def is_codespace_identity(
    D: DiagonalPhaseOp, code: CssCode, logicals: Optional[LogicalSet] = None
) -> bool:
    """
    D age como identidade no espaço de código sse θ ≡ 0 no espaço gerado pelas
    linhas X e pelos X̄: θ(0) = 0 e cada comutador com um gerador é trivial.
    A recursão termina porque os coeficientes dobram a cada nível.
    """
    gens = _x_generators(code, logicals)
    memo: Dict[Tuple[bytes, int], bool] = {}

    def trivial(op: DiagonalPhaseOp) -> bool:
        k = op.key()
        if k in memo:
            return memo[k]
        if not op.coeffs.any():
            res = op.const == 0
        else:
            res = op.const == 0 and all(trivial(commutator_with_x(op, g)) for g in gens)
        memo[k] = res
        return res

    return trivial(D)


def preserves_codespace(D: DiagonalPhaseOp, code: CssCode, logicals: Optional[LogicalSet] = None) -> bool:
    zero = np.zeros(code.n, dtype=np.uint8)
    for r in code.hx:
        if not is_codespace_identity(commutator_with_x(D, PauliOp(r, zero)), code, logicals):
            return False
    return True


def logical_action(D: DiagonalPhaseOp, code: CssCode, logicals: LogicalSet) -> List[Tuple[Tuple[int, ...], int]]:
    """Tabela f(l) = θ(XOR dos X̄_i com l_i = 1)."""
    if not preserves_codespace(D, code, logicals):
        raise GateError("operador não preserva o espaço de código")
    k = len(logicals)
    X = logicals.x_matrix(code.n)
    table = []
    for l in product((0, 1), repeat=k):
        x = np.zeros(code.n, dtype=np.uint8)
        for i, bit in enumerate(l):
            if bit:
                x ^= X[i]
        table.append((tuple(l), D.phase(x)))
    return table


def controlled_z_table(k: int, level: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Tabela esperada de C^{k-1}Z em unidades de 2π/2^level: 2^(level-1)·l_1···l_k."""
    half = 2 ** (level - 1)
    return [(l, half * int(all(l))) for l in product((0, 1), repeat=k)]


def phase_monomials(table: Sequence[Tuple[Tuple[int, ...], int]], level: int) -> Optional[List[Tuple[int, ...]]]:
    """
    Escreve f = 2^(level-1)·g com g booleana e devolve os monômios da forma
    normal algébrica de g (índices dos lógicos). None se f não é múltiplo de 2^(level-1).
    """
    half = 2 ** (level - 1)
    if any(f % half for _, f in table):
        return None
    coeff = {l: (f // half) % 2 for l, f in table}
    k = len(table[0][0]) if table else 0
    for p in range(k):
        for l in coeff:
            if l[p]:
                coeff[l] ^= coeff[l[:p] + (0,) + l[p + 1:]]
    return sorted(tuple(i for i, b in enumerate(l) if b) for l, c in coeff.items() if c)


def is_cross_copy_controlled_z(
    table: Sequence[Tuple[Tuple[int, ...], int]], copies: Sequence[int], level: int
) -> bool:
    """
    f = 2^(level-1)·Σ de produtos com exatamente um lógico de cada cópia.

    `copies[i]` é a cópia da toric code do lógico i. Com um lógico por cópia
    isso é a tabela de C^{level-1}Z; em variedades fechadas aparecem vários
    termos cruzados, um por tripla (ou par) de lógicos que se cruzam.
    """
    groups = sorted(set(copies))
    if len(groups) != level or len(copies) != len(table[0][0] if table else ()):
        return False
    monomials = phase_monomials(table, level)
    if not monomials:
        return False
    return all(sorted(copies[i] for i in m) == groups for m in monomials)


@dataclass
class ChainReport:
    order: List[int]
    steps: List[dict] = field(default_factory=list)
    final: Optional[DiagonalPhaseOp] = None
    ok: bool = False

    def to_json(self) -> dict:
        return {
            "order": [i + 1 for i in self.order],
            "steps": self.steps,
            "final_const": self.final.const if self.final is not None else None,
            "final_z": self.final.z_string().support() if self.final is not None and self.final.is_level_one() else None,
            "ok": self.ok,
        }


def commutator_chain(
    code: CssCode,
    logicals: LogicalSet,
    order: Sequence[int],
    bip: Bipartition,
    level: Optional[int] = None,
) -> ChainReport:
    """
    Comuta R_d transversal com X̄^{(order_1)}, ..., X̄^{(order_{d-1})} e
    confere que o resultado é Z̄^{(order_d)} módulo as linhas Z.
    """
    d = level if level is not None else len(logicals)
    if sorted(order) != list(range(len(logicals))) or len(order) != d:
        raise InvalidParams(f"ordem {list(order)} não é permutação de 0..{len(logicals) - 1}")
    D = transversal_Rd(code, bip, d)
    rep = ChainReport(order=list(order))
    for j in order[:-1]:
        D = commutator_with_x(D, logicals.xs[j])
        rep.steps.append({"x_bar": j + 1, "support": int(np.count_nonzero(D.coeffs)), "const": D.const})
    rep.final = D
    if not D.is_level_one():
        raise GateError(f"cadeia {[i + 1 for i in order]} terminou num operador de nível > 1")
    target = logicals.zs[order[-1]].z
    diff = D.z_string().z ^ target
    if not gf2.in_rowspan(code.hz, diff):
        raise GateError(f"cadeia {[i + 1 for i in order]}: string Z final difere de Z̄^({order[-1] + 1})")
    rep.ok = True
    log.debug("cadeia %s ok (const %d)", [i + 1 for i in order], D.const)
    return rep


# -------- oráculos densos (n pequeno) --------
def _check_dense(n: int) -> None:
    limit = load_settings()["dense_oracle_max_n"]
    if n > limit:
        raise InvalidParams(f"oráculo denso limitado a n <= {limit} (n = {n})")


def _basis(n: int) -> np.ndarray:
    idx = np.arange(2 ** n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64)


def dense_phases(D: DiagonalPhaseOp) -> np.ndarray:
    """Diagonal de D como vetor complexo de tamanho 2^n (bit j do índice = qubit j)."""
    _check_dense(D.n)
    theta = (_basis(D.n) @ D.coeffs + D.const) % D.modulus
    return np.exp(2j * np.pi * theta / D.modulus)


def _x_index(a: PauliOp) -> int:
    return int(sum(1 << q for q in np.flatnonzero(a.x)))


def dense_commutator(D: DiagonalPhaseOp, a: PauliOp) -> np.ndarray:
    """Diagonal de D X_a D† X_a calculada diretamente."""
    ph = dense_phases(D)
    idx = np.arange(ph.size) ^ _x_index(a)
    return ph * np.conj(ph[idx])


def dense_logical_phases(D: DiagonalPhaseOp, code: CssCode, logicals: LogicalSet) -> List[int]:
    """⟨l̄|D|l̄⟩ para cada l, convertido em inteiro mod 2^d."""
    _check_dense(code.n)
    n = code.n
    ph = dense_phases(D)
    hx = gf2.row_basis(code.hx) if code.hx.shape[0] else np.zeros((0, n), dtype=np.uint8)
    stab = set()
    for combo in product((0, 1), repeat=hx.shape[0]):
        s = np.zeros(n, dtype=np.uint8)
        for i, bit in enumerate(combo):
            if bit:
                s ^= hx[i]
        stab.add(int(sum(1 << q for q in np.flatnonzero(s))))
    X = logicals.x_matrix(n)
    out = []
    for l in product((0, 1), repeat=len(logicals)):
        x = np.zeros(n, dtype=np.uint8)
        for i, bit in enumerate(l):
            if bit:
                x ^= X[i]
        base = int(sum(1 << q for q in np.flatnonzero(x)))
        support = sorted({base ^ s for s in stab})
        amp = ph[support].sum() / len(support)
        angle = np.angle(amp) / (2 * np.pi) * D.modulus
        out.append(int(round(angle)) % D.modulus)
    return out

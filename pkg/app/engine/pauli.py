"""
Operadores de Pauli sem fase: pares (x, z) de bits sobre n qubits.

Y é representado por x=1, z=1. Grupos são listas de geradores com a
semântica de espaço gerado sobre GF(2).
"""
from __future__ import annotations

from typing import Iterable, List, Sequence

import numpy as np

from . import gf2
from .errors import SizeMismatch

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


class PauliOp:
    __slots__ = ("n", "x", "z")

    def __init__(self, x, z):
        self.x = gf2.as_bits(x).reshape(-1)
        self.z = gf2.as_bits(z).reshape(-1)
        if self.x.size != self.z.size:
            raise SizeMismatch(f"|x|={self.x.size} difere de |z|={self.z.size}")
        self.n = int(self.x.size)

    # -------- construtores --------
    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_string(cls, text: str) -> "PauliOp":
        t = text.strip().upper()
        x = np.array([1 if c in "XY" else 0 for c in t], dtype=np.uint8)
        z = np.array([1 if c in "ZY" else 0 for c in t], dtype=np.uint8)
        bad = [c for c in t if c not in "IXYZ"]
        if bad:
            raise ValueError(f"caractere de Pauli inválido: {bad[0]!r}")
        return cls(x, z)

    @classmethod
    def from_support(cls, n: int, xs: Iterable[int] = (), zs: Iterable[int] = ()) -> "PauliOp":
        """Operador com X nos índices `xs` e Z nos índices `zs` (repetições cancelam)."""
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q in xs:
            x[q] ^= 1
        for q in zs:
            z[q] ^= 1
        return cls(x, z)

    @classmethod
    def from_vector(cls, v) -> "PauliOp":
        v = gf2.as_bits(v).reshape(-1)
        n = v.size // 2
        return cls(v[:n], v[n:])

    # -------- consultas --------
    def vector(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    def support(self) -> List[int]:
        return [int(q) for q in np.flatnonzero(self.x | self.z)]

    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def is_x_type(self) -> bool:
        return not self.z.any()

    def is_z_type(self) -> bool:
        return not self.x.any()

    def restrict(self, qubits: Iterable[int]) -> "PauliOp":
        """Restrição a Q mantendo n (zera fora de Q)."""
        mask = np.zeros(self.n, dtype=np.uint8)
        for q in qubits:
            mask[q] = 1
        return PauliOp(self.x & mask, self.z & mask)

    def take(self, qubits: Sequence[int]) -> "PauliOp":
        """Restrição reindexada: o qubit qubits[i] vira o qubit i."""
        idx = np.asarray(list(qubits), dtype=np.int64)
        return PauliOp(self.x[idx], self.z[idx])

    def to_string(self) -> str:
        return "".join(_LETTERS[(int(a), int(b))] for a, b in zip(self.x, self.z))

    # -------- álgebra --------
    def __mul__(self, other: "PauliOp") -> "PauliOp":
        _check(self, other)
        return PauliOp(self.x ^ other.x, self.z ^ other.z)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOp):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.x, other.x)) and bool(np.array_equal(self.z, other.z))

    def __hash__(self) -> int:
        return hash((self.n, self.x.tobytes(), self.z.tobytes()))

    def __repr__(self) -> str:
        return f"PauliOp({self.to_string()!r})"


def _check(a: PauliOp, b: PauliOp) -> None:
    if a.n != b.n:
        raise SizeMismatch(f"tamanhos diferentes: {a.n} e {b.n}")


def commutes(a: PauliOp, b: PauliOp) -> int:
    """Produto simplético: 0 se comutam, 1 se anticomutam."""
    _check(a, b)
    return int((np.count_nonzero(a.x & b.z) + np.count_nonzero(a.z & b.x)) % 2)


def symplectic_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """c[i][j] = <A_i, B_j> para linhas [x|z]."""
    A = gf2.as_bits(A)
    B = gf2.as_bits(B)
    n = A.shape[1] // 2
    ax, az = A[:, :n].astype(np.int64), A[:, n:].astype(np.int64)
    bx, bz = B[:, :n].astype(np.int64), B[:, n:].astype(np.int64)
    return ((ax @ bz.T + az @ bx.T) % 2).astype(np.uint8)


class PauliGroup:
    """Grupo gerado por uma lista de Paulis (todos sobre o mesmo n)."""

    def __init__(self, n: int, gens: Iterable[PauliOp] = ()):
        self.n = n
        self.gens: List[PauliOp] = list(gens)
        for g in self.gens:
            if g.n != n:
                raise SizeMismatch(f"gerador com {g.n} qubits num grupo de {n}")

    @classmethod
    def from_matrix(cls, M, n: int | None = None) -> "PauliGroup":
        A = gf2.as_bits(M, 2 * n if n is not None else None)
        size = n if n is not None else A.shape[1] // 2
        return cls(size, [PauliOp.from_vector(r) for r in A])

    @classmethod
    def from_css(cls, hx, hz) -> "PauliGroup":
        hx = gf2.as_bits(hx)
        hz = gf2.as_bits(hz)
        n = max(hx.shape[1], hz.shape[1])
        gens = [PauliOp(r, np.zeros(n, dtype=np.uint8)) for r in hx]
        gens += [PauliOp(np.zeros(n, dtype=np.uint8), r) for r in hz]
        return cls(n, gens)

    @classmethod
    def from_strings(cls, texts: Sequence[str]) -> "PauliGroup":
        ops = [PauliOp.from_string(t) for t in texts]
        return cls(ops[0].n if ops else 0, ops)

    def matrix(self) -> np.ndarray:
        if not self.gens:
            return np.zeros((0, 2 * self.n), dtype=np.uint8)
        return np.vstack([g.vector() for g in self.gens])

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self) -> str:
        return f"PauliGroup(n={self.n}, gens={[g.to_string() for g in self.gens]})"


def rank(G: PauliGroup) -> int:
    return gf2.rank(G.matrix()) if len(G) else 0


def commutation_matrix(gens: Sequence[PauliOp]) -> np.ndarray:
    if not gens:
        return np.zeros((0, 0), dtype=np.uint8)
    M = np.vstack([g.vector() for g in gens])
    return symplectic_matrix(M, M)


def center(G: PauliGroup) -> PauliGroup:
    """Geradores independentes do centro {p ∈ <G> : p comuta com todo g}."""
    if not len(G):
        return PauliGroup(G.n)
    M = G.matrix()
    C = symplectic_matrix(M, M)
    coeffs = gf2.nullspace(C)
    if coeffs.shape[0] == 0:
        return PauliGroup(G.n)
    elems = gf2.matmul(coeffs, M)
    return PauliGroup.from_matrix(gf2.row_basis(elems), G.n)


def overlap_group(S: PauliGroup, qubits: Iterable[int], compact: bool = False) -> PauliGroup:
    """
    Grupo gerado pelas restrições dos geradores de S a Q.

    Com `compact=True` os qubits de Q são reindexados na ordem dada.
    Restrições triviais são descartadas.
    """
    Q = list(qubits)
    out: List[PauliOp] = []
    for g in S.gens:
        r = g.take(Q) if compact else g.restrict(Q)
        if r.weight():
            out.append(r)
    return PauliGroup(len(Q) if compact else S.n, out)


def equal_span(G1: PauliGroup, G2: PauliGroup) -> bool:
    if G1.n != G2.n:
        raise SizeMismatch(f"grupos sobre {G1.n} e {G2.n} qubits")
    return gf2.same_rowspan(G1.matrix(), G2.matrix())


def in_span(G: PauliGroup, p: PauliOp) -> bool:
    _check(PauliOp.identity(G.n), p)
    return gf2.in_rowspan(G.matrix(), p.vector())


def is_abelian(G: PauliGroup) -> bool:
    return not commutation_matrix(G.gens).any()

"""
Álgebra linear sobre GF(2) com matrizes numpy uint8 (um bit por entrada).

Todas as funções devolvem cópias; nenhuma entrada é alterada.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import galois
import numpy as np


def as_bits(M, ncols: int | None = None) -> np.ndarray:
    """Normaliza para matriz 2D uint8 com entradas 0/1."""
    A = np.asarray(M, dtype=np.uint8)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, ncols or 0), dtype=np.uint8)
    if A.size == 0 and ncols is not None:
        return np.zeros((A.shape[0], ncols), dtype=np.uint8)
    return (A & 1).copy()


def row_echelon(M, ncols_pivot: int | None = None) -> Tuple[np.ndarray, List[int]]:
    """
    Forma escalonada reduzida (RREF) sobre GF(2).

    Pivôs escolhidos pelo menor índice de coluna; apenas as primeiras
    `ncols_pivot` colunas podem receber pivô (o resto acompanha as operações).
    """
    R = as_bits(M)
    m, n = R.shape
    limit = n if ncols_pivot is None else ncols_pivot
    pivots: List[int] = []
    r = 0
    for col in range(limit):
        if r == m:
            break
        hits = np.flatnonzero(R[r:, col]) + r
        if hits.size == 0:
            continue
        p = int(hits[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        mask = R[:, col].astype(bool)
        mask[r] = False
        if mask.any():
            R[mask] ^= R[r]
        pivots.append(col)
        r += 1
    return R, pivots


def rank(M) -> int:
    A = as_bits(M)
    if A.size == 0:
        return 0
    return int(np.linalg.matrix_rank(galois.GF2(A)))


def row_basis(M) -> np.ndarray:
    """Linhas independentes (em RREF) que geram o espaço-linha de M."""
    R, piv = row_echelon(M)
    return R[: len(piv)].copy()


def nullspace(M) -> np.ndarray:
    """Base (em linhas) de {v : M v = 0}."""
    A = as_bits(M)
    n = A.shape[1]
    R, piv = row_echelon(A)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, p in enumerate(piv):
            out[i, p] = R[r, f]
    return out


def solve_rows(A, b) -> Optional[np.ndarray]:
    """
    Encontra x com x·A = b (b como combinação de linhas de A).

    Retorna None se b não pertence ao espaço-linha.
    """
    A = as_bits(A)
    m, n = A.shape
    b = as_bits(b, n).reshape(-1)
    if m == 0:
        return np.zeros(0, dtype=np.uint8) if not b.any() else None
    aug = np.concatenate([A, np.eye(m, dtype=np.uint8)], axis=1)
    R, piv = row_echelon(aug, ncols_pivot=n)
    v = b.copy()
    x = np.zeros(m, dtype=np.uint8)
    for r, p in enumerate(piv):
        if v[p]:
            v ^= R[r, :n]
            x ^= R[r, n:]
    if v.any():
        return None
    return x


def in_rowspan(A, b) -> bool:
    A = as_bits(A)
    b = as_bits(b, A.shape[1]).reshape(-1)
    if A.shape[0] == 0:
        return not b.any()
    return rank(np.vstack([A, b])) == rank(A)


def same_rowspan(A, B) -> bool:
    A = as_bits(A)
    B = as_bits(B)
    if A.shape[1] != B.shape[1]:
        return False
    ra, rb = rank(A), rank(B)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(np.vstack([A, B])) == ra


def inverse(M) -> np.ndarray:
    """Inversa de uma matriz quadrada invertível sobre GF(2)."""
    A = as_bits(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matriz não é quadrada")
    aug = np.concatenate([A, np.eye(n, dtype=np.uint8)], axis=1)
    R, piv = row_echelon(aug, ncols_pivot=n)
    if len(piv) != n:
        raise ValueError("matriz singular sobre GF(2)")
    return R[:, n:].copy()


def matmul(A, B) -> np.ndarray:
    # float64 usa BLAS; somas exatas até 2**53
    P = as_bits(A).astype(np.float64) @ as_bits(B).astype(np.float64)
    return (P.astype(np.int64) % 2).astype(np.uint8)


def to_hex(row) -> str:
    """Linha de bits → string hexadecimal (bit 0 à esquerda, preenchida a múltiplo de 4)."""
    bits = "".join("1" if b else "0" for b in np.asarray(row).reshape(-1))
    if not bits:
        return ""
    pad = (-len(bits)) % 4
    bits += "0" * pad
    return "".join(f"{int(bits[i:i + 4], 2):x}" for i in range(0, len(bits), 4))


def from_hex(text: str, n: int) -> np.ndarray:
    bits = "".join(f"{int(ch, 16):04b}" for ch in text)
    out = np.zeros(n, dtype=np.uint8)
    for i in range(min(n, len(bits))):
        out[i] = 1 if bits[i] == "1" else 0
    return out

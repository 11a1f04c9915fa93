"""
Famílias de reticulados coloridos.

Cada construtor monta o complexo simplicial dual (vértices coloridos,
vértices virtuais para as fronteiras) e devolve o primal correspondente.
Ids são determinísticos: mesma família e parâmetros geram o mesmo JSON.
"""
from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Dict, List, Sequence, Tuple

from app.engine.errors import InvalidParams

from .complex import ColoredComplex, simplicial_complex, to_primal, validate


def _torus_index(shape: Sequence[int]) -> Callable[[Sequence[int]], int]:
    def idx(p: Sequence[int]) -> int:
        out = 0
        for c, s in zip(p, shape):
            out = out * s + (c % s)
        return out
    return idx


def hex_torus(a: int, b: int) -> ColoredComplex:
    """Favo de mel 3-colorível no toro (dual: triangulação de Z_a × Z_b)."""
    if a < 3 or b < 3 or a % 3 or b % 3:
        raise InvalidParams(f"hex_torus exige períodos >= 3 e divisíveis por 3 (recebido {a}, {b})")
    idx = _torus_index((a, b))
    colors = [(x + y) % 3 for x in range(a) for y in range(b)]
    facets = []
    for x in range(a):
        for y in range(b):
            p = (x, y)
            diag = (x + 1, y + 1)
            facets.append([idx(p), idx((x + 1, y)), idx(diag)])
            facets.append([idx(p), idx((x, y + 1)), idx(diag)])
    return to_primal(simplicial_complex(2, facets, colors))


def cube_3torus(size: int) -> ColoredComplex:
    """
    Reticulado 4-colorível no 3-toro: triangulação de Freudenthal de Z_L^3.

    As 3-células do primal são octaedros truncados.
    """
    if size < 4 or size % 4:
        raise InvalidParams(f"cube_3torus exige L >= 4 e múltiplo de 4 (recebido {size})")
    idx = _torus_index((size, size, size))
    colors = [(x + y + z) % 4 for x, y, z in product(range(size), repeat=3)]
    facets = []
    for p in product(range(size), repeat=3):
        for perm in permutations(range(3)):
            cur = list(p)
            simplex = [idx(cur)]
            for axis in perm:
                cur[axis] += 1
                simplex.append(idx(cur))
            facets.append(simplex)
    return to_primal(simplicial_complex(3, facets, colors))


def triangular_666(distance: int) -> ColoredComplex:
    """Código triangular 6.6.6 de distância ímpar; três fronteiras virtuais C, A, B."""
    if distance < 3 or distance % 2 == 0:
        raise InvalidParams(f"triangular_666 exige distância ímpar >= 3 (recebido {distance})")
    size = 3 * (distance - 1) // 2
    anc_pos = {0: 2, 1: 0, 2: 1}
    face_color = {0: 1, 1: 2, 2: 0}
    faces: Dict[Tuple[int, int], int] = {}
    qubits: List[Tuple[int, int]] = []
    for y in range(size + 1):
        for x in range(y, 2 * size - y + 1, 2):
            pos = (x - y) // 2 % 3
            if pos == anc_pos[y % 3]:
                faces[(x, y)] = face_color[pos]
            else:
                qubits.append((x, y))
    order = sorted(faces, key=lambda p: (p[1], p[0]))
    kid = {p: i for i, p in enumerate(order)}
    colors = [faces[p] for p in order]
    virtual_of = {}
    for c in (0, 1, 2):
        virtual_of[c] = len(colors)
        colors.append(c)
    virtual = [False] * len(order) + [True] * 3
    facets = []
    for q in qubits:
        x, y = q
        around = {}
        for dx, dy in ((2, 0), (-2, 0), (1, 1), (-1, 1), (1, -1), (-1, -1)):
            f = (x + dx, y + dy)
            if f in faces:
                around[faces[f]] = kid[f]
        facets.append([around.get(c, virtual_of[c]) for c in (0, 1, 2)])
    return to_primal(simplicial_complex(2, facets, colors, virtual))


def hypercube_like(d: int) -> ColoredComplex:
    """
    Menor reticulado hipercúbico de dimensão d: um único vértice real de cor 0
    e dois vértices virtuais por direção j (fronteiras opostas de cor j).
    """
    if d < 2:
        raise InvalidParams(f"hypercube_like exige d >= 2 (recebido {d})")
    colors = [0]
    for j in range(1, d + 1):
        colors += [j, j]
    virtual = [False] + [True] * (2 * d)
    facets = [[0] + [2 * j - 1 + pick for j, pick in zip(range(1, d + 1), choice)]
              for choice in product((0, 1), repeat=d)]
    return to_primal(simplicial_complex(d, facets, colors, virtual))


def square_like_2d(size: int = 1) -> ColoredComplex:
    if size != 1:
        raise InvalidParams("square_like_2d só está disponível no tamanho mínimo (size=1)")
    return hypercube_like(2)


def simplex_like(d: int) -> ColoredComplex:
    """
    Reticulado de d+1 fronteiras coloridas (triângulo, tetraedro, ...):
    vértices reais X_c e virtuais X'_c; facetas = todas as escolhas menos a só virtual.
    """
    if d < 2:
        raise InvalidParams(f"simplex_like exige d >= 2 (recebido {d})")
    colors = list(range(d + 1)) * 2
    virtual = [False] * (d + 1) + [True] * (d + 1)
    facets = []
    for choice in product((0, 1), repeat=d + 1):
        if all(choice):
            continue
        facets.append([c + (d + 1) * pick for c, pick in enumerate(choice)])
    return to_primal(simplicial_complex(d, facets, colors, virtual))


def tetrahedron_like_3d(size: int = 1) -> ColoredComplex:
    if size != 1:
        raise InvalidParams("tetrahedron_like_3d só está disponível no tamanho mínimo (size=1)")
    return simplex_like(3)


FAMILIES: Dict[str, Callable[..., ColoredComplex]] = {
    "hex_torus": hex_torus,
    "triangular_666": triangular_666,
    "square_like_2d": square_like_2d,
    "cube_3torus": cube_3torus,
    "tetrahedron_like_3d": tetrahedron_like_3d,
    "hypercube_like": hypercube_like,
    "simplex_like": simplex_like,
}


def build_lattice(family: str, params: Sequence[int] = ()) -> ColoredComplex:
    builder = FAMILIES.get(family)
    if builder is None:
        raise InvalidParams(f"família desconhecida: {family!r} (opções: {', '.join(sorted(FAMILIES))})")
    try:
        L = builder(*[int(p) for p in params])
    except TypeError as e:
        raise InvalidParams(f"parâmetros inválidos para {family}: {list(params)}") from e
    rep = validate(L)
    if not rep.ok:
        raise InvalidParams(f"{family}{tuple(params)} gerou reticulado inválido: {rep.issues()[0]}")
    return L

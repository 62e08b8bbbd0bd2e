"""Curvature and Ricci tensors of a left-invariant connection."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connection import ConnectionTable
from .lie import SIGNATURE, LiePresentation, basis_vector, bracket, vsub
from .poly import Poly

RICCI_WEIGHTS = (-1, -1, 1)

Matrix = tuple[tuple[Poly, ...], ...]


@dataclass(frozen=True)
class SymTensor:
    entries: Matrix
    symmetric: bool = True

    def __post_init__(self):
        if self.symmetric:
            for i in range(3):
                for j in range(i):
                    if self.entries[i][j] != self.entries[j][i]:
                        raise ValueError("tensor flagged symmetric has asymmetric entries")

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def upper(self) -> list[Poly]:
        """Entries (1,1),(1,2),(1,3),(2,2),(2,3),(3,3)."""
        return [self.entries[i][j] for i, j in UPPER_PAIRS]

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in row] for row in self.entries]


UPPER_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class CurvatureTensor:
    # R[i][j][k][l] = coefficient of e_l in R(e_i, e_j) e_k
    R: tuple

    def __getitem__(self, idx):
        i, j, k, l = idx
        return self.R[i][j][k][l]


def curvature(c: ConnectionTable, L: LiePresentation) -> CurvatureTensor:
    """``R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``."""
    e = [basis_vector(i) for i in range(3)]
    R = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            if j < i:
                R[i][j] = [tuple(-x for x in R[j][i][k]) for k in range(3)]
                continue
            if i == j:
                R[i][j] = [(Poly(), Poly(), Poly())] * 3
                continue
            brk = bracket(L, e[i], e[j])
            for k in range(3):
                first = c.covariant(e[i], c.gamma[j][k])
                second = c.covariant(e[j], c.gamma[i][k])
                third = c.covariant(brk, e[k])
                R[i][j][k] = vsub(vsub(first, second), third)
    return CurvatureTensor(tuple(tuple(tuple(R[i][j]) for j in range(3)) for i in range(3)))


def ricci(Rt: CurvatureTensor) -> Matrix:
    """``rho(X,Y) = -g(R(X,e1)Y,e1) - g(R(X,e2)Y,e2) + g(R(X,e3)Y,e3)``."""
    out = []
    for x in range(3):
        row = []
        for y in range(3):
            s = Poly()
            for m in range(3):
                s = s + Rt.R[x][m][y][m] * (RICCI_WEIGHTS[m] * SIGNATURE[m])
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def ricci_symmetrized(rho: Matrix) -> SymTensor:
    half = Fraction(1, 2)
    return SymTensor(tuple(tuple((rho[i][j] + rho[j][i]) * half for j in range(3))
                           for i in range(3)))

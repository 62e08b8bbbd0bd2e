"""Left-invariant connections on a three-dimensional Lorentzian Lie group.

All connections are stored as full coefficient tables
``gamma[i][j][k]`` = coefficient of ``e_k`` in ``nabla_{e_i} e_j``.

Kinds:

* ``LC`` Levi-Civita connection (Koszul formula),
* ``C0`` canonical connection ``nabla_X Y - 1/2 (nabla_X J) J Y``,
* ``C1`` Kobayashi-Nomizu connection
  ``C0_X Y - 1/4 [(nabla_Y J) J X - (nabla_{JY} J) X]``,
* ``C2``/``C3`` the ``lbar``-perturbations of ``C0``/``C1`` which add
  ``lbar * e3*(X) e3*(Y) e3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lie import (
    J_DIAGONAL,
    SIGNATURE,
    LiePresentation,
    Vector,
    apply_J,
    basis_vector,
    bracket,
    vsub,
)
from .poly import Poly

KINDS = ("LC", "C0", "C1", "C2", "C3")
SOLITON_KINDS = ("C0", "C1", "C2", "C3")

Table = tuple[tuple[Vector, ...], ...]


class ConnectionKindError(ValueError):
    pass


@dataclass(frozen=True)
class ConnectionTable:
    gamma: Table
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConnectionKindError(f"unknown connection kind {self.kind!r}")

    def entry(self, i: int, j: int) -> Vector:
        return self.gamma[i][j]

    def covariant(self, x: Vector, y: Vector) -> Vector:
        """``nabla_x y`` for left-invariant fields with constant coefficients."""
        out = [Poly(), Poly(), Poly()]
        for i in range(3):
            if x[i].is_zero():
                continue
            for j in range(3):
                if y[j].is_zero():
                    continue
                c = x[i] * y[j]
                for k in range(3):
                    g = self.gamma[i][j][k]
                    if not g.is_zero():
                        out[k] = out[k] + c * g
        return tuple(out)  # type: ignore[return-value]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "gamma": [[[str(c) for c in self.gamma[i][j]] for j in range(3)] for i in range(3)],
        }


def _table(fn) -> Table:
    return tuple(tuple(fn(i, j) for j in range(3)) for i in range(3))


def levi_civita(L: LiePresentation) -> ConnectionTable:
    """Koszul: ``2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``."""
    half = Fraction(1, 2)

    def entry(i: int, j: int) -> Vector:
        out = []
        for k in range(3):
            lowered = (
                SIGNATURE[k] * L.brackets[i][j][k]
                - SIGNATURE[i] * L.brackets[j][k][i]
                + SIGNATURE[j] * L.brackets[k][i][j]
            ) * half
            out.append(lowered * SIGNATURE[k])
        return tuple(out)

    return ConnectionTable(_table(entry), "LC")


def nabla_J(lc: ConnectionTable) -> Table:
    """``(nabla_{e_i} J) e_j = nabla_{e_i}(J e_j) - J(nabla_{e_i} e_j)``."""
    if lc.kind != "LC":
        raise ConnectionKindError("nabla_J expects the Levi-Civita connection")
    return _table(lambda i, j: vsub(
        tuple(c * J_DIAGONAL[j] for c in lc.gamma[i][j]), apply_J(lc.gamma[i][j])))


def canonical(lc: ConnectionTable) -> ConnectionTable:
    if lc.kind != "LC":
        raise ConnectionKindError("canonical connection is built from the Levi-Civita connection")
    nj = nabla_J(lc)
    # (nabla_{e_i} J)(J e_j) = s_j (nabla_{e_i} J) e_j
    return ConnectionTable(_table(lambda i, j: tuple(
        lc.gamma[i][j][k] - nj[i][j][k] * Fraction(J_DIAGONAL[j], 2) for k in range(3))), "C0")


def kobayashi_nomizu(lc: ConnectionTable, c0: ConnectionTable) -> ConnectionTable:
    if lc.kind != "LC" or c0.kind != "C0":
        raise ConnectionKindError("Kobayashi-Nomizu needs the LC and C0 tables")
    nj = nabla_J(lc)

    # (nabla_{e_j} J)(J e_i) - (nabla_{J e_j} J) e_i = (s_i - s_j) (nabla_{e_j} J) e_i
    def entry(i: int, j: int) -> Vector:
        w = Fraction(J_DIAGONAL[i] - J_DIAGONAL[j], 4)
        if not w:
            return c0.gamma[i][j]
        return tuple(c0.gamma[i][j][k] - nj[j][i][k] * w for k in range(3))

    return ConnectionTable(_table(entry), "C1")


def _add_perturbation(c: ConnectionTable, kind: str) -> ConnectionTable:
    lbar = Poly.var("lbar")
    rows = [[list(v) for v in row] for row in c.gamma]
    rows[2][2][2] = rows[2][2][2] + lbar
    return ConnectionTable(tuple(tuple(tuple(v) for v in row) for row in rows), kind)


def perturb(c: ConnectionTable) -> ConnectionTable:
    if c.kind == "C0":
        return _add_perturbation(c, "C2")
    if c.kind == "C1":
        return _add_perturbation(c, "C3")
    raise ConnectionKindError(f"only C0 and C1 can be perturbed, got {c.kind}")


def connection(L: LiePresentation, kind: str) -> ConnectionTable:
    """Build the connection of the given kind for ``L``."""
    lc = levi_civita(L)
    if kind == "LC":
        return lc
    c0 = canonical(lc)
    if kind == "C0":
        return c0
    if kind == "C2":
        return perturb(c0)
    c1 = kobayashi_nomizu(lc, c0)
    if kind == "C1":
        return c1
    if kind == "C3":
        return perturb(c1)
    raise ConnectionKindError(f"unknown connection kind {kind!r}")


# -- identities used as checks ----------------------------------------------

def torsion_defect(c: ConnectionTable, L: LiePresentation) -> list[tuple[int, int, Vector]]:
    """Entries where ``nabla_i e_j - nabla_j e_i - [e_i, e_j]`` is nonzero."""
    bad = []
    for i in range(3):
        for j in range(3):
            d = vsub(vsub(c.gamma[i][j], c.gamma[j][i]),
                     bracket(L, basis_vector(i), basis_vector(j)))
            if any(not x.is_zero() for x in d):
                bad.append((i, j, d))
    return bad


def metric_defect(c: ConnectionTable) -> list[tuple[int, int, int, Poly]]:
    """Entries where ``g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k)`` is nonzero."""
    bad = []
    for i in range(3):
        for j in range(3):
            for k in range(3):
                v = SIGNATURE[k] * c.gamma[i][j][k] + SIGNATURE[j] * c.gamma[i][k][j]
                if not v.is_zero():
                    bad.append((i, j, k, v))
    return bad


def j_parallel_defect(c: ConnectionTable) -> list[tuple[int, int, int, Poly]]:
    """Entries where ``nabla_i (J e_k) != J nabla_i e_k``."""
    bad = []
    for i in range(3):
        for k in range(3):
            for m in range(3):
                if J_DIAGONAL[k] != J_DIAGONAL[m] and not c.gamma[i][k][m].is_zero():
                    bad.append((i, k, m, c.gamma[i][k][m]))
    return bad

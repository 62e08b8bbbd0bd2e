"""Floating-point cross-check of the soliton equations.

Everything below works on plain numpy arrays: structure constants are
evaluated at a sample point first and the connection, curvature, Ricci and
Lie-derivative tensors are rebuilt from them in operator form, without any of
the exact-arithmetic shortcuts used by the symbolic pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .families import SolutionFamily, find_witness, parse_family
from .lie import LiePresentation, get_presentation
from .poly import Poly
from .soliton import PAIR_LABELS, build_system

TOLERANCE = 1e-9
SAMPLE_RETRIES = 10_000

G = np.diag([1.0, 1.0, -1.0])
J = np.diag([1.0, 1.0, -1.0])
E3 = np.array([0.0, 0.0, 1.0])
UPPER = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def structure_constants(L: LiePresentation, point: Mapping[str, float]) -> np.ndarray:
    """``C[i, j, k]`` with ``[e_i, e_j] = sum_k C[i, j, k] e_k``."""
    C = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                c = L.brackets[i][j][k]
                if not c.is_zero():
                    C[i, j, k] = float(c.evaluate(point))
    return C


class NumericConnection:
    """``nabla_X Y`` for constant-coefficient fields, as a bilinear map."""

    def __init__(self, gamma: np.ndarray):
        self.gamma = gamma          # gamma[i, j, k]: e_k-coefficient of nabla_{e_i} e_j

    def op(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``Y -> nabla_x Y``."""
        return np.einsum("i,ijk->kj", x, self.gamma)

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.gamma)


def _from_bilinear(fn) -> NumericConnection:
    e = np.eye(3)
    return NumericConnection(np.array([[fn(e[i], e[j]) for j in range(3)] for i in range(3)]))


def levi_civita_numeric(C: np.ndarray) -> NumericConnection:
    # 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)
    Cl = np.einsum("ijm,mk->ijk", C, G)          # g([e_i,e_j], e_k)
    low = 0.5 * (Cl - np.transpose(Cl, (2, 0, 1)) + np.transpose(Cl, (1, 2, 0)))
    # low[i,j,k] = g(nabla_i e_j, e_k); raise the last index
    return NumericConnection(np.einsum("ijm,mk->ijk", low, np.linalg.inv(G)))


def connection_numeric(C: np.ndarray, kind: str, lbar: float = 0.0) -> NumericConnection:
    lc = levi_civita_numeric(C)

    def nablaJ(x):          # matrix of (nabla_x J) = [nabla_x, J]
        A = lc.op(x)
        return A @ J - J @ A

    def c0(x, y):
        return lc(x, y) - 0.5 * nablaJ(x) @ (J @ y)

    def c1(x, y):
        return c0(x, y) - 0.25 * (nablaJ(y) @ (J @ x) - nablaJ(J @ y) @ x)

    base = {"C0": c0, "C2": c0, "C1": c1, "C3": c1}.get(kind)
    if base is None:
        raise ValueError(f"unknown connection kind {kind!r}")
    if kind in ("C2", "C3"):
        return _from_bilinear(lambda x, y: base(x, y) + lbar * (E3 @ x) * (E3 @ y) * E3)
    return _from_bilinear(base)


def ricci_numeric(conn: NumericConnection, C: np.ndarray) -> np.ndarray:
    """``rho(X, Y) = -trace(Z -> R(X, Z) Y)``, then symmetrized."""
    B = [conn.op(np.eye(3)[i]) for i in range(3)]
    R = np.zeros((3, 3, 3, 3))      # R[i, j] = matrix of R(e_i, e_j)
    for i in range(3):
        for j in range(3):
            R[i, j] = B[i] @ B[j] - B[j] @ B[i] - sum(C[i, j, m] * B[m] for m in range(3))
    # R[x, m][m, y] is the e_m-component of R(e_x, e_m) e_y
    rho = -np.einsum("xmmy->xy", R)
    return 0.5 * (rho + rho.T)


def lie_derivative_numeric(conn: NumericConnection, V: np.ndarray) -> np.ndarray:
    e = np.eye(3)
    nV = [conn(e[j], V) for j in range(3)]
    return np.array([[nV[j] @ G @ e[k] + e[j] @ G @ nV[k] for k in range(3)] for j in range(3)])


def residuals_numeric(group: str | LiePresentation, kind: str,
                      point: Mapping[str, float]) -> np.ndarray:
    """The six soliton residuals at ``point`` (all symbols given as floats)."""
    L = get_presentation(group) if isinstance(group, str) else group
    C = structure_constants(L, point)
    conn = connection_numeric(C, kind, float(point.get("lbar", 0.0)))
    rt = ricci_numeric(conn, C)
    V = np.array([float(point.get(v, 0.0)) for v in ("l1", "l2", "l3")])
    lv = lie_derivative_numeric(conn, V)
    total = lv + 2 * rt + 2 * float(point.get("lam", 0.0)) * G
    return np.array([total[i, j] for i, j in UPPER])


# -- sampling ---------------------------------------------------------------

@dataclass
class FamilySample:
    theorem: str | None
    label: str
    eta: int | None
    points: int = 0
    max_residual: float = 0.0
    failed: int = 0


@dataclass
class SampleReport:
    group: str
    kind: str
    seed: int
    requested: int
    families: list[FamilySample] = field(default_factory=list)

    @property
    def points(self) -> int:
        return sum(f.points for f in self.families)

    @property
    def max_residual(self) -> float:
        return max((f.max_residual for f in self.families), default=0.0)

    @property
    def sampling_failures(self) -> int:
        return sum(f.failed for f in self.families)

    @property
    def ok(self) -> bool:
        return self.max_residual < TOLERANCE and self.sampling_failures == 0

    def to_json(self) -> dict:
        return {
            "group": self.group, "kind": self.kind, "seed": self.seed,
            "requested_points": self.requested, "points": self.points,
            "max_residual": self.max_residual, "tolerance": TOLERANCE,
            "sampling_failures": self.sampling_failures, "ok": self.ok,
            "families": [
                {"theorem": f.theorem, "label": f.label, "eta": f.eta, "points": f.points,
                 "max_residual": f.max_residual, "failed": f.failed}
                for f in self.families
            ],
        }


def _registered_families(group: str, kind: str) -> list[tuple[str | None, SolutionFamily]]:
    from .registry import load_registry
    return [(t.id, f) for t in load_registry() if t.group == group and t.kind == kind
            for f in t.families]


def sample_numeric_check(group: str, kind: str, points: int = 100, seed: int = 0,
                         families: Iterable[tuple[str | None, SolutionFamily]] | None = None,
                         presentation: LiePresentation | None = None) -> SampleReport:
    """Evaluate ``points`` seeded family instances through the float pipeline.

    Points are spread round-robin over the registered families of
    ``(group, kind)`` and their ``eta`` branches.  Each point is an exact
    witness drawn with its own seed; drawing gives up after
    ``SAMPLE_RETRIES`` attempts, which is reported as a sampling failure.
    """
    if points < 1:
        raise ValueError("points must be at least 1")
    L = presentation or get_presentation(group)
    system = build_system(group, kind) if presentation is None else _system_for(L, kind)
    fams = list(families) if families is not None else _registered_families(group, kind)
    report = SampleReport(group, kind, seed, points)
    slots = []
    for tid, fam in fams:
        for eta, sub in system.eta_branches():
            f = fam if eta is None else fam.specialize({"eta": Poly.const(eta)})
            slots.append((FamilySample(tid, fam.label, eta), sub, f))
    if not slots:
        return report
    report.families = [s[0] for s in slots]
    surd_only: set[int] = set()
    for n in range(points):
        k = n % len(slots)
        rec, sub, f = slots[k]
        budget = (0, SAMPLE_RETRIES) if k in surd_only else (SAMPLE_RETRIES // 2, SAMPLE_RETRIES // 2)
        witness, _ = find_witness(sub, f, seed * 1_000_003 + n, *budget)
        if witness is None:
            rec.failed += 1
            continue
        if any(getattr(v, "b", 0) for v in witness.values()):
            surd_only.add(k)
        pt = {name: float(v) for name, v in witness.items()}
        if rec.eta is not None:
            pt["eta"] = float(rec.eta)
        r = float(np.max(np.abs(residuals_numeric(L, kind, pt))))
        rec.points += 1
        rec.max_residual = max(rec.max_residual, r)
    return report


def _system_for(L: LiePresentation, kind: str):
    from .soliton import tensors_for
    return tensors_for(L, kind).system


def trivial_family(label: str = "V=0") -> SolutionFamily:
    """``lam = 0`` and ``V = 0``: a soliton exactly when the symmetrized Ricci tensor vanishes."""
    return parse_family(label, ["lam = 0", "l1 = 0", "l2 = 0", "l3 = 0"])


def residual_labels() -> tuple[str, ...]:
    return PAIR_LABELS

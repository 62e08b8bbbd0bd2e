"""Affine Ricci soliton systems ``L_V g + 2 rho~ + 2 lam g = 0``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .connection import SOLITON_KINDS, ConnectionKindError, ConnectionTable, connection
from .curvature import UPPER_PAIRS, SymTensor, curvature, ricci, ricci_symmetrized
from .groebner import Ideal, groebner_basis, ideal_membership
from .lie import SIGNATURE, LiePresentation, basis_vector, get_presentation, metric
from .poly import Poly, equal_up_to_scalar, reduce

PAIR_LABELS = ("11", "12", "13", "22", "23", "33")
SOLITON_SYMBOLS = ("lam", "l1", "l2", "l3")


def field_V():
    return (Poly.var("l1"), Poly.var("l2"), Poly.var("l3"))


def lie_derivative_metric(c: ConnectionTable) -> SymTensor:
    """``(L_V g)(e_j, e_k) = g(nabla_{e_j} V, e_k) + g(e_j, nabla_{e_k} V)``
    for ``V = l1 e1 + l2 e2 + l3 e3``."""
    if c.kind not in SOLITON_KINDS:
        raise ConnectionKindError("Lie derivative is taken for C0..C3")
    V = field_V()
    e = [basis_vector(i) for i in range(3)]
    nV = [c.covariant(e[j], V) for j in range(3)]
    return SymTensor(tuple(tuple(metric(nV[j], e[k]) + metric(e[j], nV[k]) for k in range(3))
                           for j in range(3)))


@dataclass(frozen=True)
class SolitonSystem:
    group: str
    kind: str
    equations: tuple[Poly, ...]
    constraints: tuple[Poly, ...] = ()
    inequations: tuple[Poly, ...] = ()
    eta_valued: bool = False
    params: tuple[str, ...] = ()

    def labelled(self) -> list[tuple[str, Poly]]:
        return list(zip(PAIR_LABELS, self.equations))

    def nonzero(self) -> list[Poly]:
        return [e for e in self.equations if not e.is_zero()]

    def symbols(self) -> set[str]:
        out = set(self.params) | set(SOLITON_SYMBOLS)
        if self.kind in ("C2", "C3"):
            out.add("lbar")
        return out - ({"eta"} if not self.eta_valued else set())

    def specialize(self, bindings: dict[str, Poly]) -> "SolitonSystem":
        sub = lambda p: p.substitute(bindings)  # noqa: E731
        return SolitonSystem(
            self.group, self.kind, tuple(sub(e) for e in self.equations),
            tuple(c for c in (sub(p) for p in self.constraints) if not c.is_zero()),
            tuple(sub(p) for p in self.inequations),
            False,
            tuple(p for p in self.params if p not in bindings),
        )

    def eta_branches(self) -> list[tuple[int | None, "SolitonSystem"]]:
        if not self.eta_valued:
            return [(None, self)]
        return [(s, self.specialize({"eta": Poly.const(s)})) for s in (1, -1)]

    def to_text(self) -> str:
        lines = [f"# {self.group} {self.kind}"]
        lines += [f"({k[0]},{k[1]}): {e} = 0" for k, e in self.labelled()]
        if self.constraints:
            lines += [f"constraint: {c} = 0" for c in self.constraints]
        lines += [f"inequation: {q} != 0" for q in self.inequations]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "kind": self.kind,
            "equations": {k: str(e) for k, e in self.labelled()},
            "constraints": [str(c) for c in self.constraints],
            "inequations": [str(q) for q in self.inequations],
            "eta_split": self.eta_valued,
        }


def assemble_system(lv: SymTensor, rt: SymTensor, *, group: str = "?", kind: str = "?",
                    presentation: LiePresentation | None = None) -> SolitonSystem:
    lam = Poly.var("lam")
    eqs = tuple(lv[i, j] + rt[i, j] * 2 + (lam * (2 * SIGNATURE[i]) if i == j else Poly())
                for i, j in UPPER_PAIRS)
    constraints: tuple[Poly, ...] = ()
    inequations: tuple[Poly, ...] = ()
    eta_valued = False
    params: tuple[str, ...] = ()
    if presentation is not None:
        constraints = presentation.constraints
        inequations = presentation.inequations
        eta_valued = presentation.eta_valued
        params = presentation.params
    if kind in ("C2", "C3"):
        inequations = inequations + (Poly.var("lbar"),)
    return SolitonSystem(group, kind, eqs, constraints, inequations, eta_valued, params)


@dataclass(frozen=True)
class Tensors:
    presentation: LiePresentation
    connection: ConnectionTable
    rho: tuple
    rho_tilde: SymTensor
    lie_derivative: SymTensor
    system: SolitonSystem


@lru_cache(maxsize=None)
def tensors(group: str, kind: str) -> Tensors:
    L = get_presentation(group)
    return tensors_for(L, kind)


def tensors_for(L: LiePresentation, kind: str) -> Tensors:
    c = connection(L, kind)
    rho = ricci(curvature(c, L))
    rt = ricci_symmetrized(rho)
    lv = lie_derivative_metric(c)
    system = assemble_system(lv, rt, group=L.name, kind=kind, presentation=L)
    return Tensors(L, c, rho, rt, lv, system)


def build_system(group: str, kind: str) -> SolitonSystem:
    return tensors(group, kind).system


# -- matching against a displayed reference system ----------------------------

@dataclass
class EquationMatch:
    label: str           # assembled pair label, e.g. "13"
    equation: Poly
    status: str          # direct | reduced | implied | duplicate | unmatched
    reference_index: int | None = None
    scalar: Fraction | None = None


@dataclass
class MatchReport:
    group: str
    kind: str
    matches: list[EquationMatch] = field(default_factory=list)
    unmatched_reference: list[int] = field(default_factory=list)
    pinned: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not self.unmatched_reference
                and all(m.status != "unmatched" for m in self.matches))

    @property
    def strict(self) -> bool:
        """Bijection of scalar classes with no relaxed matches."""
        return self.ok and all(m.status in ("direct", "duplicate") for m in self.matches)

    def scalars(self) -> dict[str, str]:
        return {m.label: str(m.scalar) for m in self.matches if m.scalar is not None}

    def to_json(self) -> dict:
        return {
            "group": self.group, "kind": self.kind, "ok": self.ok, "strict": self.strict,
            "pinned": self.pinned,
            "equations": [
                {"pair": m.label, "status": m.status, "reference": m.reference_index,
                 "scalar": None if m.scalar is None else str(m.scalar)}
                for m in self.matches
            ],
            "unmatched_reference": self.unmatched_reference,
        }


def _pinned_symbols(ref: list[Poly]) -> list[str]:
    # reference lines of the form c*x (a single variable forced to zero)
    out = []
    for p in ref:
        if len(p) == 1 and p.total_degree() == 1:
            out.extend(p.variables())
    return sorted(set(out))


def match_reference(system: SolitonSystem, ref: list[Poly]) -> MatchReport:
    """Match assembled equations against a displayed reference system.

    Each nonzero assembled equation is classified as

    * ``direct``: a nonzero scalar multiple of a reference equation;
    * ``duplicate``: a scalar multiple of an earlier assembled equation that
      was itself matched (references list coinciding entries once);
    * ``reduced``: a scalar multiple of a reference equation once both are
      reduced modulo the pinned variables (reference lines ``x = 0``);
    * ``implied``: in the ideal generated by the reference equations;
    * ``unmatched``: none of the above.

    Every reference equation must be hit by a direct or reduced match.
    """
    report = MatchReport(system.group, system.kind)
    ref = [p for p in ref]
    pinned = _pinned_symbols(ref)
    report.pinned = pinned
    pin_basis = [Poly.var(x) for x in pinned]
    hit: set[int] = set()
    seen: list[tuple[Poly, EquationMatch]] = []
    pending: list[EquationMatch] = []

    for label, e in system.labelled():
        if e.is_zero():
            continue
        dup = next((m for p, m in seen if equal_up_to_scalar(e, p) is not None), None)
        if dup is not None:
            m = EquationMatch(label, e, "duplicate", dup.reference_index,
                              equal_up_to_scalar(e, dup.equation))
            report.matches.append(m)
            if dup.status == "unmatched" or dup in pending:
                pending.append(m)
            continue
        m = EquationMatch(label, e, "unmatched")
        for idx, p in enumerate(ref):
            c = equal_up_to_scalar(e, p)
            if c is not None:
                m.status, m.reference_index, m.scalar = "direct", idx, c
                hit.add(idx)
                break
        seen.append((e, m))
        report.matches.append(m)
        if m.status == "unmatched":
            pending.append(m)

    # relaxed tiers for what is left
    for m in pending:
        if m.status == "duplicate":
            continue
        if pin_basis:
            er = reduce(m.equation, pin_basis)
            for idx, p in enumerate(ref):
                if idx in hit:
                    continue
                pr = reduce(p, pin_basis)
                c = equal_up_to_scalar(er, pr) if not er.is_zero() else None
                if c is not None:
                    m.status, m.reference_index, m.scalar = "reduced", idx, c
                    hit.add(idx)
                    break
        if m.status == "unmatched" and ref and ideal_membership(m.equation, Ideal(list(ref))):
            m.status = "implied"
    for m in pending:
        if m.status == "duplicate":
            origin = next(o for p, o in seen if equal_up_to_scalar(m.equation, p) is not None)
            m.status = "duplicate" if origin.status != "unmatched" else "unmatched"
            m.reference_index = origin.reference_index
    report.unmatched_reference = [i for i in range(len(ref)) if i not in hit]
    return report


def match_paper_system(system: SolitonSystem, ref: list[Poly]) -> MatchReport:
    return match_reference(system, ref)

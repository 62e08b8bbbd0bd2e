"""Real-infeasibility certificates for soliton systems.

A proof is a list of steps replayed against an ideal that starts as the
system equations plus the group's equality constraints:

``saturate``      adjoin ``1 - t*q`` for a declared inequation ``q`` (fresh ``t``)
``real_sos``      ``p`` lies in the ideal and, over the reals, forces its
                  variables to a single point (or to nothing); adjoin that
``substitute``    ``x - e`` lies in the ideal; replace ``x`` by ``e``
``case_split``    two sub-proofs, for ``x = 0`` and for ``x`` invertible
``groebner_one``  the reduced Groebner basis is ``{1}``; closes a branch

``real_sos`` accepts a quadratic ``p`` with constant rational coefficients
whose quadratic part is positive definite in ``vars``.  Writing
``p = (x - c)^T A (x - c) + r`` (``c`` the unique critical point), ``r > 0``
means no real zero, and ``r = 0`` means ``x = c``.  For homogeneous ``p`` this is
the usual "positive-definite form in the ideal kills its variables".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

from .groebner import DEFAULT_MAX_PAIRS, Ideal, ResourceLimitError, groebner_basis, is_unit_ideal
from .parse import parse_poly
from .poly import UNIVERSE, Poly, reduce
from .soliton import SolitonSystem

PROOF_FORMAT = "lorentz-solitons.proof/1"
MAX_SPLIT_DEPTH = 4


class ProofError(ValueError):
    """A proof step failed to replay."""


# -- exact linear algebra -----------------------------------------------------

def _det(m: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _solve(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(m)
    a = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col] / a[col][col]
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]


def _quadratic_parts(p: Poly, vars: list[str]):
    """Split ``p`` into (A, b, c) with ``p = x^T A x + b.x + c``; None if ``p``
    has other variables or degree above two."""
    idx = {v: k for k, v in enumerate(vars)}
    n = len(vars)
    A = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    c = Fraction(0)
    for mono, coeff in p.items():
        powers = [(UNIVERSE.name(i), e) for i, e in enumerate(mono) if e]
        if any(name not in idx for name, _ in powers):
            return None
        deg = sum(e for _, e in powers)
        if deg == 0:
            c += coeff
        elif deg == 1:
            b[idx[powers[0][0]]] += coeff
        elif deg == 2:
            if len(powers) == 1:
                k = idx[powers[0][0]]
                A[k][k] += coeff
            else:
                i, j = idx[powers[0][0]], idx[powers[1][0]]
                A[i][j] += coeff / 2
                A[j][i] += coeff / 2
        else:
            return None
    return A, b, c


def _positive_definite(A: list[list[Fraction]]) -> bool:
    return all(_det([row[:k] for row in A[:k]]) > 0 for k in range(1, len(A) + 1))


def pd_quadratic_check(p: Poly, vars) -> bool:
    """True iff ``p`` is a positive-definite quadratic form in ``vars``
    (homogeneous of degree 2, constant rational coefficients)."""
    vars = list(vars)
    if not vars or p.is_zero():
        return False
    parts = _quadratic_parts(p, vars)
    if parts is None:
        return False
    A, b, c = parts
    if any(b) or c:
        return False
    return _positive_definite(A)


def real_sos_consequences(p: Poly, vars) -> list[Poly] | None:
    """Polynomials vanishing on every real zero of ``p``, or None if the rule
    does not apply.  ``[1]`` means ``p`` has no real zero."""
    vars = list(vars)
    if not vars or p.is_zero():
        return None
    parts = _quadratic_parts(p, vars)
    if parts is None:
        return None
    A, b, c = parts
    if not _positive_definite(A):
        return None
    center = _solve(A, [-x / 2 for x in b])
    r = c + sum(b[i] * center[i] for i in range(len(vars))) / 2
    if r < 0:
        return None
    if r > 0:
        return [Poly.const(1)]
    return [Poly.var(v) - center[i] for i, v in enumerate(vars)]


# -- proof objects ----------------------------------------------------------

@dataclass
class Step:
    op: str
    poly: Poly | None = None
    var: str | None = None
    vars: tuple[str, ...] = ()
    expr: Poly | None = None
    zero: list["Step"] = field(default_factory=list)
    nonzero: list["Step"] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        d: dict[str, Any] = {"op": self.op}
        if self.op == "saturate":
            d.update(poly=str(self.poly), var=self.var)
        elif self.op == "real_sos":
            d.update(poly=str(self.poly), vars=list(self.vars))
        elif self.op == "substitute":
            d.update(var=self.var, expr=str(self.expr))
        elif self.op == "case_split":
            d.update(var=self.var, zero=[s.to_json() for s in self.zero],
                     nonzero=[s.to_json() for s in self.nonzero])
        return d

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "Step":
        op = d.get("op")
        try:
            if op == "saturate":
                UNIVERSE.aux(int(d["var"][1:]))
                return cls(op, poly=parse_poly(d["poly"]), var=d["var"])
            if op == "real_sos":
                return cls(op, poly=parse_poly(d["poly"]), vars=tuple(d["vars"]))
            if op == "substitute":
                return cls(op, var=d["var"], expr=parse_poly(d["expr"]))
            if op == "case_split":
                return cls(op, var=d["var"], zero=[cls.from_json(s) for s in d["zero"]],
                           nonzero=[cls.from_json(s) for s in d["nonzero"]])
            if op == "groebner_one":
                return cls(op)
        except (KeyError, TypeError, ValueError) as exc:
            raise ProofError(f"malformed {op!r} step: {exc}") from None
        raise ProofError(f"unknown proof step {op!r}")


@dataclass
class Branch:
    eta: int | None
    steps: list[Step]


@dataclass
class InfeasibilityProof:
    group: str
    kind: str
    branches: list[Branch]
    theorem: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "format": PROOF_FORMAT,
            "theorem": self.theorem,
            "group": self.group,
            "kind": self.kind,
            "branches": [{"eta": b.eta, "steps": [s.to_json() for s in b.steps]}
                         for b in self.branches],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "InfeasibilityProof":
        if d.get("format") != PROOF_FORMAT:
            raise ProofError(f"unsupported proof format {d.get('format')!r}")
        try:
            branches = [Branch(b["eta"], [Step.from_json(s) for s in b["steps"]])
                        for b in d["branches"]]
            return cls(d["group"], d["kind"], branches, d.get("theorem"))
        except (KeyError, TypeError) as exc:
            raise ProofError(f"malformed proof: {exc}") from None

    @classmethod
    def loads(cls, text: str) -> "InfeasibilityProof":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ProofError(f"proof is not valid JSON: {exc}") from None

    def steps(self):
        def walk(steps):
            for s in steps:
                yield s
                yield from walk(s.zero)
                yield from walk(s.nonzero)
        for b in self.branches:
            yield from walk(b.steps)


# -- replay -----------------------------------------------------------------

def _initial(system: SolitonSystem) -> tuple[list[Poly], list[Poly]]:
    gens = [e for e in system.equations if not e.is_zero()] + list(system.constraints)
    return gens, list(system.inequations)


def _declared(q: Poly, declared: list[Poly]) -> bool:
    return any(q == d or q == -d for d in declared)


def _replay(steps: list[Step], gens: list[Poly], declared: list[Poly], where: str) -> None:
    gens = list(gens)
    declared = list(declared)
    for n, step in enumerate(steps):
        last = n == len(steps) - 1
        tag = f"{where} step {n + 1} ({step.op})"
        if step.op == "saturate":
            if not _declared(step.poly, declared):
                raise ProofError(f"{tag}: {step.poly} is not a declared inequation")
            if not UNIVERSE.is_aux(step.var) or any(step.var in g.variables() for g in gens):
                raise ProofError(f"{tag}: {step.var} is not a fresh auxiliary variable")
            gens.append(1 - Poly.var(step.var) * step.poly)
        elif step.op == "real_sos":
            if set(step.poly.variables()) - set(step.vars):
                raise ProofError(f"{tag}: polynomial has variables outside {step.vars}")
            consequences = real_sos_consequences(step.poly, step.vars)
            if consequences is None:
                raise ProofError(f"{tag}: {step.poly} is not a positive-definite quadratic")
            if not reduce(step.poly, groebner_basis(gens)).is_zero():
                raise ProofError(f"{tag}: {step.poly} is not in the ideal")
            gens.extend(consequences)
        elif step.op == "substitute":
            lin = Poly.var(step.var) - step.expr
            if step.var in step.expr.variables():
                raise ProofError(f"{tag}: {step.var} occurs in its own replacement")
            if not reduce(lin, groebner_basis(gens)).is_zero():
                raise ProofError(f"{tag}: {lin} is not in the ideal")
            gens = [g.substitute({step.var: step.expr}) for g in gens] + [lin]
            declared = [q.substitute({step.var: step.expr}) for q in declared]
        elif step.op == "case_split":
            if not last:
                raise ProofError(f"{tag}: a case split must be the last step")
            x = Poly.var(step.var)
            _replay(step.zero, gens + [x], declared, f"{where}/{step.var}=0")
            _replay(step.nonzero, gens, declared + [x], f"{where}/{step.var}!=0")
            return
        elif step.op == "groebner_one":
            if not last:
                raise ProofError(f"{tag}: steps after a closing step")
            if not is_unit_ideal(groebner_basis(gens)):
                raise ProofError(f"{tag}: Groebner basis is not {{1}}")
            return
        else:
            raise ProofError(f"{tag}: unknown step")
    raise ProofError(f"{where}: branch does not end in groebner_one")


def verify_proof(proof: InfeasibilityProof, system: SolitonSystem) -> None:
    """Replay ``proof`` against ``system``; raises :class:`ProofError` on failure.

    The starting ideal and declared inequations come from ``system`` itself,
    never from the proof file.
    """
    if (proof.group, proof.kind) != (system.group, system.kind):
        raise ProofError(f"proof is for {proof.group} {proof.kind}, "
                         f"system is {system.group} {system.kind}")
    expected = [eta for eta, _ in system.eta_branches()]
    if [b.eta for b in proof.branches] != expected:
        raise ProofError(f"proof branches {[b.eta for b in proof.branches]} "
                         f"do not cover eta cases {expected}")
    for b, (eta, sub) in zip(proof.branches, system.eta_branches()):
        gens, declared = _initial(sub)
        _replay(b.steps, gens, declared, f"eta={eta}" if eta is not None else "main")


def replays(proof: InfeasibilityProof, system: SolitonSystem) -> bool:
    try:
        verify_proof(proof, system)
        return True
    except ProofError:
        return False


# -- search -----------------------------------------------------------------

@dataclass
class Budget:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_depth: int = MAX_SPLIT_DEPTH


class _Search:
    def __init__(self, probes: list[Poly], split_vars: list[str], budget: Budget):
        self.probes = probes
        self.split_vars = split_vars
        self.budget = budget
        self.aux = 0

    def fresh(self) -> str:
        self.aux += 1
        return UNIVERSE.aux(self.aux)

    def saturate(self, gens, q, steps):
        t = self.fresh()
        steps.append(Step("saturate", poly=q, var=t))
        gens.append(1 - Poly.var(t) * q)

    def _sos_candidate(self, basis: list[Poly]):
        seen = set()
        pool = _solved_probes(self.probes, basis) + list(basis)
        # prefer forms free of saturation variables: they read as statements
        # about the original unknowns
        pool.sort(key=lambda p: any(UNIVERSE.is_aux(v) for v in p.variables()))
        for p in pool:
            for cand in (p, -p):
                if cand.is_zero() or cand in seen:
                    continue
                seen.add(cand)
                vars = sorted(cand.variables(), key=UNIVERSE.index)
                cons = real_sos_consequences(cand, vars)
                if cons is None:
                    continue
                if all(reduce(c, basis).is_zero() for c in cons):
                    continue
                return cand, vars, cons
        return None

    def close(self, gens: list[Poly], depth: int) -> list[Step] | None:
        gens = list(gens)
        steps: list[Step] = []
        while True:
            basis = groebner_basis(gens, max_pairs=self.budget.max_pairs)
            if is_unit_ideal(basis):
                steps.append(Step("groebner_one"))
                return steps
            found = self._sos_candidate(basis)
            if found is None:
                break
            p, vars, cons = found
            steps.append(Step("real_sos", poly=p, vars=tuple(vars)))
            gens.extend(cons)
        if depth <= 0:
            return None
        mark = self.aux
        for x in self.split_vars:
            xp = Poly.var(x)
            if reduce(xp, basis).is_zero():
                continue
            self.aux = mark
            zero = self.close(gens + [xp], depth - 1)
            if zero is None:
                continue
            nz_steps: list[Step] = []
            nz_gens = list(gens)
            self.saturate(nz_gens, xp, nz_steps)
            rest = self.close(nz_gens, depth - 1)
            if rest is None:
                continue
            steps.append(Step("case_split", var=x, zero=zero, nonzero=nz_steps + rest))
            return steps
        return None


_SOLVE_ORDER = ("lam", "l1", "l2", "l3", "alpha", "beta", "gamma", "delta", "lbar")


def _solved_probes(probes: list[Poly], basis: list[Poly]) -> list[Poly]:
    """Rewrite probes with every variable the basis determines linearly.

    A basis element ``c*x + r`` with constant ``c`` and ``x`` absent from ``r``
    lets ``x`` be replaced by ``-r/c``; bindings are applied in turn so the
    result is triangular.  Probes lie in the ideal, and so do their rewrites.
    """
    rest = list(basis)
    out = list(probes)
    for x in _SOLVE_ORDER:
        for g in rest:
            parts = g.coefficients_in(x)
            if set(parts) != {0, 1} and set(parts) != {1}:
                continue
            c = parts[1]
            if not c.is_constant():
                continue
            expr = -parts.get(0, Poly()) / c.constant_value()
            rest = [h.substitute({x: expr}) for h in rest if h != g]
            out = [p.substitute({x: expr}) for p in out]
            break
    return out


def _probes(eqs: list[Poly]) -> list[Poly]:
    return eqs + [a + b for a, b in combinations(eqs, 2)] + [a - b for a, b in combinations(eqs, 2)]


def prove_infeasible(system: SolitonSystem, budget: Budget | None = None,
                     theorem: str | None = None) -> InfeasibilityProof | None:
    """Search for a proof that ``system`` has no real solution respecting its
    inequations.  Returns None when the budget is exhausted."""
    budget = budget or Budget()
    branches = []
    for eta, sub in system.eta_branches():
        gens, declared = _initial(sub)
        split_vars = [v for v in UNIVERSE.names
                      if v in sub.symbols() and not UNIVERSE.is_aux(v) and v != "eta"]
        search = _Search(_probes([e for e in sub.equations if not e.is_zero()]), split_vars, budget)
        steps: list[Step] = []
        for q in declared:
            search.saturate(gens, q, steps)
        try:
            rest = None
            for depth in range(budget.max_depth + 1):
                mark = search.aux
                rest = search.close(gens, depth)
                if rest is not None:
                    break
                search.aux = mark
        except ResourceLimitError:
            return None
        if rest is None:
            return None
        branches.append(Branch(eta, steps + rest))
    return InfeasibilityProof(system.group, system.kind, branches, theorem)


def ideal_of(system: SolitonSystem) -> Ideal:
    gens, _ = _initial(system)
    return Ideal(gens)

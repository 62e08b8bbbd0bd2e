"""Solution families and their verification.

A family is a triangular list of assignments ``x := num/den`` (each right-hand
side may use variables assigned earlier in the list), plus equality and
inequation side conditions on the remaining free symbols.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping

from .groebner import groebner_basis, is_unit_ideal
from .parse import parse_fraction, parse_poly
from .poly import UNIVERSE, Poly, divide, reduce
from .soliton import SolitonSystem

NUM_RANGE = 10
DEN_RANGE = 10
RATIONAL_ATTEMPTS = 2000
SURD_ATTEMPTS = 2000


@dataclass(frozen=True)
class Assignment:
    var: str
    num: Poly
    den: Poly = field(default_factory=lambda: Poly.const(1))

    def __str__(self) -> str:
        if self.den == 1:
            return f"{self.var} = {self.num}"
        return f"{self.var} = ({self.num})/({self.den})"


@dataclass(frozen=True)
class SolutionFamily:
    label: str
    assignments: tuple[Assignment, ...]
    equalities: tuple[Poly, ...] = ()
    inequations: tuple[Poly, ...] = ()

    @property
    def assigned(self) -> tuple[str, ...]:
        return tuple(a.var for a in self.assignments)

    def check_shape(self, known_nonzero=()) -> None:
        """Triangularity, and every denominator a product of inequations
        (declared here or in ``known_nonzero``, e.g. the system's own)."""
        nonzero = tuple(self.inequations) + tuple(known_nonzero)
        seen: set[str] = set()
        for a in self.assignments:
            if a.var in seen:
                raise ValueError(f"{self.label}: {a.var} assigned twice")
            later = {b.var for b in self.assignments} - seen - {a.var}
            used = (a.num.variables() | a.den.variables()) & (later | {a.var})
            if used:
                raise ValueError(f"{self.label}: {a.var} uses {sorted(used)} before assignment")
            seen.add(a.var)
            if not a.den.is_constant() and not _covered(a.den, nonzero):
                raise ValueError(f"{self.label}: denominator {a.den} is not a declared inequation")

    def free_symbols(self, system: SolitonSystem) -> list[str]:
        names = system.symbols() - set(self.assigned)
        return sorted(names, key=UNIVERSE.index)

    def specialize(self, bindings: Mapping[str, Poly]) -> "SolutionFamily":
        sub = lambda p: p.substitute(bindings)  # noqa: E731
        return SolutionFamily(
            self.label,
            tuple(Assignment(a.var, sub(a.num), sub(a.den)) for a in self.assignments
                  if a.var not in bindings),
            tuple(q for q in (sub(p) for p in self.equalities) if not q.is_zero()),
            tuple(sub(p) for p in self.inequations),
        )

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "assignments": [str(a) for a in self.assignments],
            "equalities": [str(p) for p in self.equalities],
            "inequations": [str(p) for p in self.inequations],
        }


def _covered(den: Poly, inequations) -> bool:
    """``den`` is a product of declared inequations up to a constant."""
    if den.is_constant():
        return not den.is_zero()
    for q in inequations:
        if q.is_constant():
            continue
        (quot,), r = divide(den, [q])
        if r.is_zero() and _covered(quot, inequations):
            return True
    return False


def parse_family(label: str, assignments, equalities=(), inequations=(),
                 env: Mapping[str, Poly] | None = None, known_nonzero=()) -> SolutionFamily:
    """Build a family from ``"var = expr"`` strings; ``expr`` may divide."""
    out = []
    for text in assignments:
        name, sep, rhs = text.partition("=")
        if not sep:
            raise ValueError(f"{label}: expected 'var = expr', got {text!r}")
        num, den = parse_fraction(rhs.strip(), env)
        lead = den.leading_coefficient()
        out.append(Assignment(name.strip(), num / lead, den / lead))
    fam = SolutionFamily(
        label, tuple(out),
        tuple(parse_poly(t, env) for t in equalities),
        tuple(parse_poly(t, env) for t in inequations),
    )
    fam.check_shape(known_nonzero)
    return fam


# -- quadratic surds ----------------------------------------------------------

class Surd:
    """``a + b*sqrt(d)`` with rational ``a, b`` and square-free integer ``d > 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    def _lift(self, x) -> "Surd":
        if isinstance(x, Surd):
            if x.d != self.d and x.b and self.b:
                raise ValueError("mixed quadratic extensions")
            return x
        return Surd(x, 0, self.d)

    def __add__(self, x):
        x = self._lift(x)
        return Surd(self.a + x.a, self.b + x.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, x):
        return self + (-self._lift(x))

    def __rsub__(self, x):
        return self._lift(x) - self

    def __mul__(self, x):
        x = self._lift(x)
        return Surd(self.a * x.a + self.b * x.b * self.d, self.a * x.b + self.b * x.a, self.d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Surd(1, 0, self.d)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Surd":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("zero surd")
        return Surd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, x):
        return self * self._lift(x).inverse()

    def __rtruediv__(self, x):
        return self._lift(x) * self.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, x):
        if isinstance(x, (int, Fraction)):
            return self.b == 0 and self.a == x
        return isinstance(x, Surd) and (self.a, self.b) == (x.a, x.b) and (
            self.d == x.d or self.b == 0)

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"

    __repr__ = __str__


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, Surd) else x == 0


def _squarefree(n: int) -> tuple[int, int]:
    """``n = k^2 * d`` with ``d`` square-free; returns ``(k, d)``."""
    k, d, f = 1, n, 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            k *= f
        f += 1
    return k, d


def _sqrt(q: Fraction, allow_surd: bool):
    """Square root of a non-negative rational, rational or a :class:`Surd`."""
    n, m = q.numerator * q.denominator, q.denominator
    r = isqrt(n)
    if r * r == n:
        return Fraction(r, m)
    if not allow_surd:
        return None
    k, d = _squarefree(n)
    return Surd(0, Fraction(k, m), d)


# -- verification ------------------------------------------------------------

@dataclass
class FamilyReport:
    label: str
    residuals: list[tuple[str, Poly]]
    witness: dict[str, object] | None
    witness_rational: bool
    attempts: int
    eta: int | None = None

    @property
    def residuals_ok(self) -> bool:
        return all(r.is_zero() for _, r in self.residuals)

    @property
    def first_residual(self) -> tuple[str, Poly] | None:
        return next(((k, r) for k, r in self.residuals if not r.is_zero()), None)

    @property
    def ok(self) -> bool:
        return self.residuals_ok and self.witness is not None

    def witness_field(self) -> str | None:
        if self.witness is None:
            return None
        ds = {v.d for v in self.witness.values() if isinstance(v, Surd) and v.b}
        return "Q" if not ds else f"Q(sqrt({ds.pop()}))"

    def to_json(self) -> dict:
        first = self.first_residual
        return {
            "label": self.label,
            "eta": self.eta,
            "residuals_zero": self.residuals_ok,
            "first_residual": None if first is None else {"equation": first[0], "value": str(first[1])},
            "witness": None if self.witness is None else {k: str(v) for k, v in self.witness.items()},
            "witness_field": self.witness_field(),
        }


def _clear(p: Poly, a: Assignment) -> Poly:
    """Substitute ``a`` into ``p`` and multiply through by ``den^deg``."""
    parts = p.coefficients_in(a.var)
    if set(parts) <= {0}:
        return p
    k = max(parts)
    out = Poly()
    for e, c in parts.items():
        out = out + c * a.num ** e * a.den ** (k - e)
    return out


def substitute_family(p: Poly, fam: SolutionFamily) -> Poly:
    for a in reversed(fam.assignments):
        p = _clear(p, a)
    return p


def family_residuals(system: SolitonSystem, fam: SolutionFamily) -> list[tuple[str, Poly]]:
    """Normal forms of the substituted equations modulo the side conditions.

    Reduction is modulo the equalities, the group constraints and the
    saturation by every denominator and declared inequation (``1 - t*Q``), so
    a zero residual means the equation vanishes wherever the side conditions
    hold.
    """
    side = [substitute_family(q, fam) for q in fam.equalities]
    side += [substitute_family(c, fam) for c in system.constraints]
    nonzero = [substitute_family(q, fam) for q in fam.inequations]
    nonzero += [a.den for a in fam.assignments if not a.den.is_constant()]
    side = [q for q in side if not q.is_zero()]
    basis = groebner_basis(side) if side else []
    out = []
    for label, e in system.labelled():
        r = substitute_family(e, fam)
        if not r.is_zero() and basis:
            r = reduce(r, basis)
        if not r.is_zero() and nonzero:
            r = _saturated_normal_form(r, side, nonzero)
        out.append((label, r))
    return out


def _saturated_normal_form(r: Poly, side: list[Poly], nonzero: list[Poly]) -> Poly:
    t = Poly.var(UNIVERSE.aux(1))
    prod = Poly.const(1)
    for q in nonzero:
        prod = prod * q
    basis = groebner_basis(side + [1 - t * prod])
    if is_unit_ideal(basis) or reduce(r, basis).is_zero():
        return Poly()
    return r


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-NUM_RANGE, NUM_RANGE), rng.randint(1, DEN_RANGE))


def _evaluate(p: Poly, point: Mapping[str, object]):
    v = p.evaluate(point)
    return Fraction(v) if isinstance(v, int) else v


def _solve_plan(equalities: list[Poly], free: list[str]) -> list[tuple[Poly, str]] | None:
    """Pick a distinct variable to solve each equality for (lowest degree first)."""
    plan = []
    used: set[str] = set()
    for eq in equalities:
        cands = [v for v in free if v in eq.variables() and v not in used and eq.degree(v) <= 2]
        if not cands:
            return None
        # linear first, then variables shared with few other equalities
        cands.sort(key=lambda v: (eq.degree(v), sum(v in e.variables() for e in equalities),
                                  -UNIVERSE.index(v)))
        plan.append((eq, cands[0]))
        used.add(cands[0])
    return plan


def _attempt(rng, fam: SolutionFamily, system: SolitonSystem, free: list[str],
             plan, allow_surd: bool):
    solved = {v for _, v in plan}
    point: dict[str, object] = {v: _random_rational(rng) for v in free if v not in solved}
    todo = list(plan)
    while todo:
        # next equality whose other variables are all known, if any
        pick = next((k for k, (eq, v) in enumerate(todo)
                     if eq.variables() - {v} <= set(point)), 0)
        eq, v = todo.pop(pick)
        parts = eq.coefficients_in(v)
        for m in eq.variables() - {v} - set(point):
            point[m] = _random_rational(rng)
        coeffs = {e: _evaluate(c, point) for e, c in parts.items()}
        c2, c1, c0 = (coeffs.get(2, Fraction(0)), coeffs.get(1, Fraction(0)),
                      coeffs.get(0, Fraction(0)))
        if not _is_zero(c2):
            if isinstance(c2, Surd) or isinstance(c1, Surd) or isinstance(c0, Surd):
                return None
            disc = c1 * c1 - 4 * c2 * c0
            if disc < 0:
                return None
            root = _sqrt(disc, allow_surd)
            if root is None:
                return None
            sign = rng.choice((1, -1))
            point[v] = (-c1 + sign * root) / (2 * c2)
        elif not _is_zero(c1):
            point[v] = -c0 / c1
        else:
            return None
    for a in fam.assignments:
        den = _evaluate(a.den, point)
        if _is_zero(den):
            return None
        point[a.var] = _evaluate(a.num, point) / den
    return point


def check_witness(point: Mapping[str, object], system: SolitonSystem,
                  fam: SolutionFamily) -> bool:
    """Exact check: every equation, constraint and side equality vanishes and
    every inequation is nonzero at ``point``."""
    for p in list(system.equations) + list(system.constraints) + list(fam.equalities):
        if not _is_zero(_evaluate(p, point)):
            return False
    for q in list(system.inequations) + list(fam.inequations):
        if _is_zero(_evaluate(q, point)):
            return False
    return True


def find_witness(system: SolitonSystem, fam: SolutionFamily, seed: int = 0,
                 rational_attempts: int = RATIONAL_ATTEMPTS,
                 surd_attempts: int = SURD_ATTEMPTS) -> tuple[dict | None, int]:
    """Seeded search for a point of the family; rational first, then with one
    quadratic surd.  Returns ``(point, attempts)``."""
    free = fam.free_symbols(system)
    eqs = [q for q in list(fam.equalities) + list(system.constraints)
           if not substitute_family(q, fam).is_zero()]
    eqs = [substitute_family(q, fam) for q in eqs]
    plan = _solve_plan(eqs, free)
    if plan is None:
        return None, 0
    rng = random.Random(seed)
    attempts = 0
    for allow_surd, budget in ((False, rational_attempts), (True, surd_attempts)):
        for _ in range(budget):
            attempts += 1
            try:
                point = _attempt(rng, fam, system, free, plan, allow_surd)
            except (ZeroDivisionError, ValueError):
                continue
            if point is not None and check_witness(point, system, fam):
                names = sorted(point, key=UNIVERSE.index)
                return {k: point[k] for k in names}, attempts
    return None, attempts


def verify_family(system: SolitonSystem, fam: SolutionFamily, seed: int = 0) -> list[FamilyReport]:
    """Residual check and witness search, once per ``eta`` branch."""
    out = []
    for eta, sub in system.eta_branches():
        f = fam if eta is None else fam.specialize({"eta": Poly.const(eta)})
        residuals = family_residuals(sub, f)
        witness, attempts = (None, 0)
        if all(r.is_zero() for _, r in residuals):
            witness, attempts = find_witness(sub, f, seed)
        rational = witness is not None and not any(isinstance(v, Surd) and v.b
                                                  for v in witness.values())
        out.append(FamilyReport(f.label, residuals, witness, rational, attempts, eta))
    return out

"""Three-dimensional Lie algebra presentations with a Lorentzian frame.

A presentation fixes the structure constants ``[e_i, e_j] = sum_k c^k_ij e_k``
on a pseudo-orthonormal basis with ``e3`` timelike, plus the polynomial
constraints and inequations on its parameters.  Presentations are read from
and written to the ``.liealg`` text format::

    [algebra]
    name = G1
    eta = split            # optional: eta takes the values 1 and -1
    [params]
    alpha, beta
    [brackets]
    [e1,e2] = alpha*e1 - beta*e3
    [e1,e3] = -alpha*e1 - beta*e2
    [e2,e3] = beta*e1 + alpha*e2 + alpha*e3
    [constraints]
    [inequations]
    alpha
    [shorthands]
    a3 = 1/2*(alpha + beta - gamma)

Unlisted brackets are zero.  Bracket right-hand sides are linear
combinations of ``e1, e2, e3`` with coefficients in the polynomial grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .parse import ParseError, parse_poly, parse_with
from .poly import UNIVERSE, Poly

Vector = tuple[Poly, Poly, Poly]

SIGNATURE = (1, 1, -1)
J_DIAGONAL = (1, 1, -1)
BUILTIN_GROUPS = ("G1", "G2", "G3", "G4", "G5", "G6", "G7")


class PresentationError(ValueError):
    pass


def basis_vector(i: int) -> Vector:
    return tuple(Poly.const(1) if k == i else Poly() for k in range(3))  # type: ignore[return-value]


def vector(*coeffs) -> Vector:
    if len(coeffs) != 3:
        raise ValueError("vectors have exactly three components")
    return tuple(Poly.coerce(c) for c in coeffs)  # type: ignore[return-value]


ZERO_VECTOR: Vector = (Poly(), Poly(), Poly())


def vadd(x: Vector, y: Vector) -> Vector:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2])


def vsub(x: Vector, y: Vector) -> Vector:
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2])


def vscale(c, x: Vector) -> Vector:
    return (x[0] * c, x[1] * c, x[2] * c)


def metric(x: Vector, y: Vector) -> Poly:
    """Lorentzian inner product ``g(x, y)`` in the frame ``(e1, e2, e3)``."""
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2]


def apply_J(x: Vector) -> Vector:
    """Product structure: fixes ``e1, e2`` and negates ``e3``."""
    return (x[0], x[1], -x[2])


@dataclass(frozen=True)
class LiePresentation:
    name: str
    params: tuple[str, ...]
    brackets: tuple[tuple[Vector, ...], ...]
    constraints: tuple[Poly, ...] = ()
    inequations: tuple[Poly, ...] = ()
    eta_valued: bool = False
    shorthands: tuple[tuple[str, Poly], ...] = field(default=())

    def __post_init__(self):
        allowed = set(self.params)
        for i in range(3):
            if any(not c.is_zero() for c in self.brackets[i][i]):
                raise PresentationError(f"{self.name}: [e{i+1},e{i+1}] must vanish")
            for j in range(3):
                if self.brackets[j][i] != tuple(-c for c in self.brackets[i][j]):
                    raise PresentationError(f"{self.name}: bracket table is not antisymmetric")
                for c in self.brackets[i][j]:
                    _check_symbols(c, allowed, f"{self.name}: bracket [e{i+1},e{j+1}]")
        for p in self.constraints:
            _check_symbols(p, allowed, f"{self.name}: constraint {p}")
        for p in self.inequations:
            _check_symbols(p, allowed, f"{self.name}: inequation {p}")

    def structure(self, i: int, j: int) -> Vector:
        return self.brackets[i][j]

    def bracket(self, x: Vector, y: Vector) -> Vector:
        return bracket(self, x, y)

    @property
    def shorthand_env(self) -> dict[str, Poly]:
        return dict(self.shorthands)

    def with_shorthand(self, name: str, value: Poly) -> "LiePresentation":
        env = dict(self.shorthands)
        env[name] = value
        return LiePresentation(self.name, self.params, self.brackets, self.constraints,
                               self.inequations, self.eta_valued, tuple(env.items()))

    def specialize(self, bindings: dict[str, Poly]) -> "LiePresentation":
        """Substitute parameter values (used for the two ``eta`` branches)."""
        sub = lambda p: p.substitute(bindings)  # noqa: E731
        brackets = tuple(tuple(tuple(sub(c) for c in v) for v in row) for row in self.brackets)
        params = tuple(p for p in self.params if p not in bindings)
        return LiePresentation(
            self.name, params, brackets,
            tuple(c for c in (sub(p) for p in self.constraints) if not c.is_zero()),
            tuple(sub(p) for p in self.inequations),
            False,
            tuple((k, sub(v)) for k, v in self.shorthands),
        )


def _check_symbols(p: Poly, allowed: set[str], where: str) -> None:
    extra = p.variables() - allowed
    if extra:
        raise PresentationError(f"{where} uses symbols outside params: {sorted(extra)}")


def bracket(L: LiePresentation, x: Vector, y: Vector) -> Vector:
    out = [Poly(), Poly(), Poly()]
    for i in range(3):
        if x[i].is_zero():
            continue
        for j in range(3):
            if y[j].is_zero() or i == j:
                continue
            coeff = x[i] * y[j]
            for k, c in enumerate(L.brackets[i][j]):
                if not c.is_zero():
                    out[k] = out[k] + coeff * c
    return tuple(out)  # type: ignore[return-value]


def jacobi_residual(L: LiePresentation) -> list[Vector]:
    """Cyclic sums ``[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`` over the three rotations
    of ``(e1, e2, e3)``.  These all vanish for a genuine Lie algebra."""
    e = [basis_vector(i) for i in range(3)]
    out = []
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        x, y, z = e[a], e[b], e[c]
        s = vadd(vadd(bracket(L, x, bracket(L, y, z)), bracket(L, y, bracket(L, z, x))),
                 bracket(L, z, bracket(L, x, y)))
        out.append(s)
    return out


def jacobi_holds(L: LiePresentation) -> bool:
    """Jacobi residual lies in the ideal of the presentation's constraints."""
    from .groebner import Ideal, ideal_membership

    entries = [c for v in jacobi_residual(L) for c in v if not c.is_zero()]
    if not entries:
        return True
    if not L.constraints:
        return False
    ideal = Ideal(list(L.constraints))
    return all(ideal_membership(c, ideal) for c in entries)


# -- .liealg reader / writer -----------------------------------------------

_SECTION = re.compile(r"^\[(algebra|params|brackets|constraints|inequations|shorthands)\]$")
_BRACKET = re.compile(r"^\[\s*e([123])\s*,\s*e([123])\s*\]\s*=(.*)$")


class _LinVec:
    """Linear combination of basis vectors with polynomial coefficients."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = tuple(v)

    def __add__(self, other):
        if isinstance(other, _LinVec):
            return _LinVec(a + b for a, b in zip(self.v, other.v))
        if isinstance(other, Poly) and other.is_zero():
            return self
        raise TypeError("cannot add a scalar to a basis vector combination")

    __radd__ = __add__

    def __neg__(self):
        return _LinVec(-a for a in self.v)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _LinVec):
            raise TypeError("product of basis vectors is not linear")
        return _LinVec(a * other for a in self.v)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n == 1:
            return self
        raise TypeError("powers of basis vectors are not linear")


def parse_liealg(text: str) -> LiePresentation:
    section = None
    name = None
    eta_valued = False
    params: list[str] = []
    table: dict[tuple[int, int], Vector] = {}
    constraints: list[Poly] = []
    inequations: list[Poly] = []
    shorthands: dict[str, Poly] = {}

    def scalar(expr: str, lineno: int, col: int) -> Poly:
        try:
            return parse_poly(expr, shorthands, symbols=set(params), line=lineno)
        except ParseError as exc:
            raise ParseError(exc.message, lineno, exc.column + col) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        offset = len(line) - len(line.lstrip())
        m = _SECTION.match(stripped)
        if m:
            section = m.group(1)
            continue
        if section is None:
            raise ParseError("content before the first section header", lineno, offset + 1)
        if section == "algebra":
            key, sep, value = stripped.partition("=")
            if not sep:
                raise ParseError("expected 'key = value'", lineno, offset + 1)
            key, value = key.strip(), value.strip()
            if key == "name":
                name = value
            elif key == "eta":
                if value != "split":
                    raise ParseError("eta must be 'split'", lineno, offset + 1)
                eta_valued = True
            else:
                raise ParseError(f"unknown algebra key {key!r}", lineno, offset + 1)
        elif section == "params":
            for item in stripped.split(","):
                sym = item.strip()
                if not sym:
                    continue
                if sym not in UNIVERSE or UNIVERSE.is_aux(sym):
                    col = offset + line.strip().find(sym) + 1
                    raise ParseError(f"unknown parameter symbol {sym!r}", lineno, col)
                if sym in params:
                    raise ParseError(f"duplicate parameter {sym!r}", lineno, offset + 1)
                params.append(sym)
        elif section == "brackets":
            m = _BRACKET.match(stripped)
            if not m:
                raise ParseError("expected '[ei,ej] = combination of e1, e2, e3'", lineno, offset + 1)
            i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
            if i == j:
                raise ParseError("bracket of a basis vector with itself", lineno, offset + 1)
            if (i, j) in table or (j, i) in table:
                raise ParseError(f"bracket [e{i+1},e{j+1}] given twice", lineno, offset + 1)
            rhs = m.group(3)
            col0 = offset + stripped.index("=") + 1
            env = {f"e{k+1}": _LinVec(Poly.const(1) if n == k else Poly() for n in range(3))
                   for k in range(3)}
            allowed = set(params)

            def resolve(sym: str, env=env, allowed=allowed):
                if sym in env:
                    return env[sym]
                if sym in shorthands:
                    return shorthands[sym]
                if sym not in allowed:
                    raise KeyError(sym)
                return Poly.var(sym)

            try:
                value = parse_with(rhs, resolve, line=lineno)
            except ParseError as exc:
                raise ParseError(exc.message, lineno, exc.column + col0) from None
            if isinstance(value, Poly):
                if not value.is_zero():
                    raise ParseError("bracket value must be a combination of e1, e2, e3",
                                     lineno, col0 + 1)
                value = _LinVec((Poly(), Poly(), Poly()))
            table[(i, j)] = value.v
        elif section in ("constraints", "inequations"):
            p = scalar(stripped, lineno, offset)
            (constraints if section == "constraints" else inequations).append(p)
        elif section == "shorthands":
            key, sep, value = stripped.partition("=")
            key = key.strip()
            if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", key):
                raise ParseError("expected 'name = expression'", lineno, offset + 1)
            if key in UNIVERSE:
                raise ParseError(f"shorthand {key!r} shadows a universe symbol", lineno, offset + 1)
            shorthands[key] = scalar(value, lineno, offset + len(key) + 2)

    if name is None:
        raise ParseError("missing 'name' in [algebra] section", 1, 1)
    if eta_valued and "eta" not in params:
        raise ParseError("eta = split requires eta among the params", 1, 1)
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            if (i, j) in table:
                row.append(table[(i, j)])
            elif (j, i) in table:
                row.append(tuple(-c for c in table[(j, i)]))
            else:
                row.append((Poly(), Poly(), Poly()))
        rows.append(tuple(row))
    return LiePresentation(name, tuple(params), tuple(rows), tuple(constraints),
                           tuple(inequations), eta_valued, tuple(shorthands.items()))


def _combination(v: Vector) -> str:
    parts = []
    for k, c in enumerate(v):
        if c.is_zero():
            continue
        basis = f"e{k+1}"
        if c == 1:
            body, neg = basis, False
        elif c == -1:
            body, neg = basis, True
        elif len(c) == 1:
            (mono, coeff), = c.items()
            neg = coeff < 0
            mag = -c if neg else c
            body = f"{mag}*{basis}"
        else:
            body, neg = f"({c})*{basis}", False
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def format_liealg(L: LiePresentation) -> str:
    out = ["[algebra]", f"name = {L.name}"]
    if L.eta_valued:
        out.append("eta = split")
    out += ["[params]", ", ".join(L.params), "[brackets]"]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        out.append(f"[e{i+1},e{j+1}] = {_combination(L.brackets[i][j])}")
    out.append("[constraints]")
    out += [str(p) for p in L.constraints]
    out.append("[inequations]")
    out += [str(p) for p in L.inequations]
    if L.shorthands:
        out.append("[shorthands]")
        out += [f"{k} = {v}" for k, v in L.shorthands]
    return "\n".join(out) + "\n"


@lru_cache(maxsize=None)
def _builtin(name: str) -> LiePresentation:
    text = resources.files("lorentz_solitons").joinpath("data", "algebras", f"{name}.liealg")
    return parse_liealg(text.read_text(encoding="utf-8"))


def builtin_source(name: str) -> str:
    path = resources.files("lorentz_solitons").joinpath("data", "algebras", f"{name}.liealg")
    return path.read_text(encoding="utf-8")


def get_presentation(ident: str | Path) -> LiePresentation:
    """Built-in group ``G1``..``G7``, ``abelian``, or a path to a ``.liealg`` file."""
    if isinstance(ident, str) and (ident in BUILTIN_GROUPS or ident == "abelian"):
        return _builtin(ident)
    path = Path(ident)
    if not path.exists():
        raise PresentationError(f"unknown presentation {ident!s}")
    return parse_liealg(path.read_text(encoding="utf-8"))

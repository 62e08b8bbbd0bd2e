"""Sparse multivariate polynomials over the rationals.

Every scalar quantity in the engine (structure constants, connection
coefficients, curvature entries, soliton equations) is a :class:`Poly` over a
single global :data:`UNIVERSE` of symbols.  Coefficients are
:class:`fractions.Fraction`, so arithmetic is exact and always normalized.

Monomials are exponent tuples indexed by universe position with trailing
zeros trimmed, which keeps the representation canonical while the universe
grows a tail of auxiliary variables ``t1, t2, ...`` for saturation.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import zip_longest
from typing import Callable, Iterable, Mapping, Union

BASE_SYMBOLS = ("alpha", "beta", "gamma", "delta", "eta", "lam", "l1", "l2", "l3", "lbar")

ORDERS = ("grevlex", "lex")
DEFAULT_ORDER = "grevlex"

Rational = Fraction
Monomial = tuple
Number = Union[int, Fraction]


class UnknownSymbolError(KeyError):
    pass


class VarUniverse:
    """Ordered symbol list shared by every polynomial.

    The base symbols come first in a fixed order; auxiliary variables
    ``t1 .. tn`` are appended on demand and never removed.
    """

    def __init__(self, base: Iterable[str]):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._lock = threading.Lock()
        for name in base:
            self._add(name)
        self.base_size = len(self._names)

    def _add(self, name: str) -> int:
        if name in self._index:
            raise ValueError(f"duplicate symbol {name!r}")
        self._index[name] = len(self._names)
        self._names.append(name)
        return self._index[name]

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbolError(name) from None

    def name(self, i: int) -> str:
        return self._names[i]

    def aux(self, n: int) -> str:
        """Name of auxiliary variable ``t<n>``, creating ``t1..tn`` as needed."""
        if n < 1:
            raise ValueError("auxiliary variables are numbered from 1")
        with self._lock:
            for k in range(1, n + 1):
                name = f"t{k}"
                if name not in self._index:
                    self._add(name)
        return f"t{n}"

    def is_aux(self, name: str) -> bool:
        return self.index(name) >= self.base_size


UNIVERSE = VarUniverse(BASE_SYMBOLS)


# -- monomial helpers ------------------------------------------------------

def _trim(exps: Iterable[int]) -> Monomial:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def mono_divides(b: Monomial, a: Monomial) -> bool:
    """True if monomial ``b`` divides ``a``."""
    if len(b) > len(a):
        return False
    return all(x <= y for x, y in zip(b, a))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return _trim(x - y for x, y in zip_longest(a, b, fillvalue=0))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip_longest(a, b, fillvalue=0))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def order_key(order: str) -> Callable[[Monomial], tuple]:
    """Sort key realizing ``order``; larger key means larger monomial."""
    if order == "lex":
        return lambda m: m
    if order == "grevlex":
        def key(m: Monomial) -> tuple:
            n = len(UNIVERSE)
            padded = m + (0,) * (n - len(m))
            return (sum(m), tuple(-e for e in reversed(padded)))
        return key
    raise ValueError(f"unknown monomial order {order!r}; expected one of {ORDERS}")


def _coerce_coeff(c: object) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Poly:
    """Immutable sparse polynomial: a map from monomials to nonzero rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce_coeff(c)
                if c:
                    mono = _trim(mono)
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Poly":
        # caller guarantees trimmed monomials and nonzero Fraction coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = _coerce_coeff(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        i = UNIVERSE.index(name)
        return cls._raw({(0,) * i + (1,): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "Poly":
        vec = [0] * len(UNIVERSE)
        for name, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            vec[UNIVERSE.index(name)] += e
        return cls({tuple(vec): coeff})

    @staticmethod
    def coerce(x: object) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)  # type: ignore[arg-type]

    # -- basic protocol ----------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: object) -> "Poly":
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Poly.const(other)
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other: object) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: object) -> "Poly":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Poly.const(other) + (-self)

    def __mul__(self, other: object) -> "Poly":
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Poly":
        if isinstance(other, Poly):
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / Fraction(other))

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Number) -> "Poly":
        c = _coerce_coeff(c)
        if not c:
            return Poly._raw({})
        return Poly._raw({m: c * v for m, v in self._terms.items()})

    def mul_term(self, mono: Monomial, c: Fraction) -> "Poly":
        return Poly._raw({mono_mul(m, mono): c * v for m, v in self._terms.items()})

    # -- structure ---------------------------------------------------------

    def variables(self) -> set[str]:
        used: set[int] = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return {UNIVERSE.name(i) for i in used}

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree(self, name: str) -> int:
        i = UNIVERSE.index(name)
        if not self._terms:
            return -1
        return max((m[i] if i < len(m) else 0) for m in self._terms)

    def coefficients_in(self, name: str) -> dict[int, "Poly"]:
        """Write ``self = sum_k c_k * name^k``; returns ``{k: c_k}``."""
        i = UNIVERSE.index(name)
        parts: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            k = m[i] if i < len(m) else 0
            rest = list(m)
            if k:
                rest[i] = 0
            parts.setdefault(k, {})[_trim(rest)] = c
        return {k: Poly._raw(t) for k, t in parts.items()}

    def leading(self, order: str = DEFAULT_ORDER) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = order_key(order)
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def leading_monomial(self, order: str = DEFAULT_ORDER) -> Monomial:
        return self.leading(order)[0]

    def leading_coefficient(self, order: str = DEFAULT_ORDER) -> Fraction:
        return self.leading(order)[1]

    def monic(self, order: str = DEFAULT_ORDER) -> "Poly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def sorted_terms(self, order: str = DEFAULT_ORDER) -> list[tuple[Monomial, Fraction]]:
        key = order_key(order)
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at ``point`` (symbol -> value); values may be any ring elements
        supporting ``+``, ``*`` and ``**`` with rational scalars.
        """
        values: dict[int, object] = {}
        total = 0
        for m, c in self._terms.items():
            term = c
            for i, e in enumerate(m):
                if not e:
                    continue
                if i not in values:
                    name = UNIVERSE.name(i)
                    if name not in point:
                        raise UnknownSymbolError(f"no value for {name!r}")
                    values[i] = point[name]
                term = term * values[i] ** e
            total = total + term
        return total

    def substitute(self, bindings: Mapping[str, "Poly | Number"]) -> "Poly":
        return substitute(self, bindings)

    # -- printing ----------------------------------------------------------

    def to_str(self, order: str = DEFAULT_ORDER) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for idx, (m, c) in enumerate(self.sorted_terms(order)):
            neg = c < 0
            a = -c if neg else c
            factors = [
                UNIVERSE.name(i) if e == 1 else f"{UNIVERSE.name(i)}^{e}"
                for i, e in enumerate(m) if e
            ]
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(a)] + factors)
            if idx == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r})"


ZERO = Poly()
ONE = Poly.const(1)


def var(name: str) -> Poly:
    return Poly.var(name)


def symbols(*names: str) -> tuple[Poly, ...]:
    return tuple(Poly.var(n) for n in names)


# -- module-level operations ------------------------------------------------

def arith(a: Poly, b: Poly, kind: str) -> Poly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def substitute(p: Poly, bindings: Mapping[str, "Poly | Number"]) -> Poly:
    """Simultaneous substitution of symbols by polynomials."""
    if not bindings:
        return p
    table = {UNIVERSE.index(name): Poly.coerce(value) for name, value in bindings.items()}
    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in powers:
            powers[key] = table[i] ** e
        return powers[key]

    result = Poly()
    for m, c in p.items():
        kept = list(m)
        factor = Poly.const(c)
        for i, e in enumerate(m):
            if e and i in table:
                kept[i] = 0
                factor = factor * power(i, e)
        result = result + factor.mul_term(_trim(kept), Fraction(1))
    return result


def divide(p: Poly, basis: list[Poly], order: str = DEFAULT_ORDER) -> tuple[list[Poly], Poly]:
    """Multivariate division: ``p = sum(q_i * basis_i) + r`` with ``r`` reduced."""
    if not basis or any(g.is_zero() for g in basis):
        raise ValueError("division basis must be non-empty and nonzero")
    key = order_key(order)
    leads = [g.leading(order) for g in basis]
    quotients: list[dict[Monomial, Fraction]] = [{} for _ in basis]
    remainder: dict[Monomial, Fraction] = {}
    work = dict(p.items())
    while work:
        m = max(work, key=key)
        c = work[m]
        for idx, (lm, lc) in enumerate(leads):
            if mono_divides(lm, m):
                qm = mono_div(m, lm)
                qc = c / lc
                quotients[idx][qm] = quotients[idx].get(qm, Fraction(0)) + qc
                for gm, gc in basis[idx].items():
                    tm = mono_mul(gm, qm)
                    v = work.get(tm, Fraction(0)) - qc * gc
                    if v:
                        work[tm] = v
                    else:
                        work.pop(tm, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return [Poly(q) for q in quotients], Poly._raw(remainder)


def reduce(p: Poly, basis: list[Poly], order: str = DEFAULT_ORDER) -> Poly:
    """Normal form of ``p`` with respect to ``basis`` (full reduction)."""
    return divide(p, basis, order)[1]


def equal_up_to_scalar(a: Poly, b: Poly) -> Fraction | None:
    """Return ``c != 0`` with ``a == c*b``, or ``None``.  ``(0, 0)`` gives 1."""
    if a.is_zero() and b.is_zero():
        return Fraction(1)
    if a.is_zero() or b.is_zero() or len(a) != len(b):
        return None
    ta, tb = a.terms, b.terms
    if ta.keys() != tb.keys():
        return None
    m0 = next(iter(ta))
    c = ta[m0] / tb[m0]
    if all(ta[m] == c * tb[m] for m in ta):
        return c
    return None

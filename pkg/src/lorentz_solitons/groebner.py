"""Buchberger's algorithm over the rationals.

The pair queue uses the normal selection strategy (smallest lcm first) with
Buchberger's coprime and chain criteria.  Output bases are reduced, monic and
sorted by leading monomial, so they are deterministic for a given order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .poly import (
    DEFAULT_ORDER,
    Poly,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    order_key,
    reduce,
)

DEFAULT_MAX_PAIRS = int(os.environ.get("LORENTZ_SOLITONS_MAX_PAIRS", "50000"))


class ResourceLimitError(RuntimeError):
    """Pair-queue bound exceeded; carries the partial basis."""

    def __init__(self, message: str, partial: list[Poly], pairs_processed: int):
        super().__init__(message)
        self.partial = partial
        self.pairs_processed = pairs_processed


@dataclass
class Ideal:
    generators: list[Poly]
    order: str = DEFAULT_ORDER
    _basis: list[Poly] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]

    def basis(self, max_pairs: int | None = None) -> list[Poly]:
        if self._basis is None:
            self._basis = groebner_basis(self, max_pairs=max_pairs)
        return self._basis


def s_polynomial(f: Poly, g: Poly, order: str = DEFAULT_ORDER) -> Poly:
    mf, cf = f.leading(order)
    mg, cg = g.leading(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_div(lcm, mf), 1 / cf) - g.mul_term(mono_div(lcm, mg), 1 / cg)


def _interreduce(basis: list[Poly], order: str) -> list[Poly]:
    key = order_key(order)
    # drop elements whose leading monomial is divisible by another's
    basis = sorted(basis, key=lambda p: key(p.leading_monomial(order)))
    minimal: list[Poly] = []
    for p in basis:
        lm = p.leading_monomial(order)
        if not any(mono_divides(q.leading_monomial(order), lm) for q in minimal):
            minimal.append(p)
    reduced = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = reduce(p, others, order) if others else p
        reduced.append(r.monic(order))
    reduced.sort(key=lambda p: key(p.leading_monomial(order)))
    return reduced


def groebner_basis(ideal: Ideal | list[Poly], order: str | None = None,
                   max_pairs: int | None = None) -> list[Poly]:
    if isinstance(ideal, Ideal):
        gens, order = ideal.generators, order or ideal.order
    else:
        gens, order = [g for g in ideal if not g.is_zero()], order or DEFAULT_ORDER
    max_pairs = DEFAULT_MAX_PAIRS if max_pairs is None else max_pairs
    key = order_key(order)

    G: list[Poly] = []
    for g in gens:
        g = g.monic(order)
        if g.is_constant():
            return [Poly.const(1)]
        if g not in G:
            G.append(g)
    if not G:
        return []

    pairs: set[tuple[int, int]] = set()
    for j in range(len(G)):
        for i in range(j):
            pairs.add((i, j))
    processed = 0

    def lcm_of(pair):
        i, j = pair
        return mono_lcm(G[i].leading_monomial(order), G[j].leading_monomial(order))

    while pairs:
        pair = min(pairs, key=lambda pr: (key(lcm_of(pr)), pr))
        pairs.discard(pair)
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitError(
                f"pair queue exceeded {max_pairs} pairs", _interreduce(G, order), processed)
        i, j = pair
        li, lj = G[i].leading_monomial(order), G[j].leading_monomial(order)
        if mono_coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        # chain criterion: some G[k] with lm dividing lcm and both side-pairs done
        skip = False
        for k, gk in enumerate(G):
            if k in (i, j):
                continue
            if mono_divides(gk.leading_monomial(order), lcm):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = reduce(s_polynomial(G[i], G[j], order), G, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        if r.is_constant():
            return [Poly.const(1)]
        G.append(r)
        n = len(G) - 1
        for k in range(n):
            pairs.add((k, n))
    return _interreduce(G, order)


def ideal_membership(p: Poly, ideal: Ideal) -> bool:
    if p.is_zero():
        return True
    basis = ideal.basis()
    if not basis:
        return False
    return reduce(p, basis, ideal.order).is_zero()


def is_unit_ideal(basis: list[Poly]) -> bool:
    return len(basis) == 1 and basis[0] == 1


def is_groebner(basis: list[Poly], order: str = DEFAULT_ORDER) -> bool:
    """Every S-polynomial of ``basis`` reduces to zero (Buchberger's criterion)."""
    for j in range(len(basis)):
        for i in range(j):
            if not reduce(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
                return False
    return True


def is_reduced(basis: list[Poly], order: str = DEFAULT_ORDER) -> bool:
    for i, p in enumerate(basis):
        if p.leading_coefficient(order) != 1:
            return False
        others = [q.leading_monomial(order) for k, q in enumerate(basis) if k != i]
        for m, _ in p.items():
            if any(mono_divides(lm, m) for lm in others):
                return False
    return True

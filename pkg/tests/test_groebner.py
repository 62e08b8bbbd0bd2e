import random

import pytest

from _helpers import random_ideal
from lorentz_solitons.groebner import (
    Ideal, ResourceLimitError, groebner_basis, ideal_membership, is_groebner, is_reduced,
    is_unit_ideal,
)
from lorentz_solitons.parse import parse_poly
from lorentz_solitons.poly import UNIVERSE, Poly, var

P = parse_poly
a, b = var("alpha"), var("beta")


def test_single_generator():
    assert groebner_basis([a]) == [a]


def test_hand_elimination_lex():
    G = groebner_basis([a**2 + b**2 - 1, a - b], order="lex")
    assert sorted(map(str, G)) == sorted(["alpha - beta", "beta^2 - 1/2"])


def test_rabinowitsch_contradiction():
    t = var(UNIVERSE.aux(1))
    assert is_unit_ideal(groebner_basis([a, 1 - t * a]))


@pytest.mark.parametrize("p, gens, expected", [
    ("alpha*beta", ["alpha"], True),
    ("beta", ["alpha"], False),
    ("alpha*gamma*delta", ["alpha*gamma + beta*delta", "beta"], True),
    ("0", ["alpha"], True),
])
def test_membership(p, gens, expected):
    assert ideal_membership(P(p), Ideal([P(g) for g in gens])) is expected


@pytest.mark.parametrize("order", ("grevlex", "lex"))
def test_random_ideals_are_reduced_groebner_bases(order):
    rng = random.Random(11)
    for _ in range(15):
        gens = random_ideal(rng, max_degree=2)
        G = groebner_basis(gens, order=order)
        assert is_groebner(G, order) and is_reduced(G, order)
        for g in gens:
            assert ideal_membership(g, Ideal(gens, order))


def test_deterministic():
    gens = random_ideal(random.Random(4))
    assert groebner_basis(gens) == groebner_basis(list(gens))


def test_budget_exhaustion_reports_partial_progress():
    gens = [P("alpha^3 - beta*gamma + 1"), P("beta^3 - alpha*delta"), P("gamma^3 - delta^2 + alpha")]
    with pytest.raises(ResourceLimitError) as exc:
        groebner_basis(gens, max_pairs=1)
    assert exc.value.partial and exc.value.pairs_processed >= 1


def test_zero_generators_dropped():
    assert Ideal([Poly(), a]).generators == [a]
    assert groebner_basis([]) == []

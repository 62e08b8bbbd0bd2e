import pytest

from lorentz_solitons.connection import connection
from lorentz_solitons.curvature import SymTensor, curvature, ricci, ricci_symmetrized
from lorentz_solitons.lie import BUILTIN_GROUPS, get_presentation
from lorentz_solitons.parse import parse_poly
from lorentz_solitons.poly import Poly
from lorentz_solitons.soliton import tensors

P = parse_poly


@pytest.mark.parametrize("kind", ("LC", "C0", "C1", "C2", "C3"))
def test_abelian_is_flat(kind):
    L = get_presentation("abelian")
    R = curvature(connection(L, kind), L)
    assert all(x.is_zero() for a in R.R for b in a for c in b for x in c)
    rt = ricci_symmetrized(ricci(R))
    assert all(x.is_zero() for x in rt.upper())


@pytest.mark.parametrize("group", BUILTIN_GROUPS)
@pytest.mark.parametrize("kind", ("C0", "C1", "C2", "C3"))
def test_curvature_antisymmetry(group, kind):
    L = get_presentation(group)
    R = curvature(connection(L, kind), L)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for m in range(3):
                    assert R[i, j, k, m] == -R[j, i, k, m]
                    if i == j:
                        assert R[i, j, k, m].is_zero()


@pytest.mark.parametrize("kind", ("C0", "C2"))
def test_g5_canonical_ricci_vanishes(kind):
    rt = tensors("G5", kind).rho_tilde
    assert all(x.is_zero() for x in rt.upper())


@pytest.mark.parametrize("group, kind, pair, expected", [
    ("G1", "C0", (0, 0), "-(alpha^2 + beta^2/2)"),
    ("G6", "C1", (1, 1), "-alpha^2"),
    ("G1", "C1", (0, 1), "alpha*beta"),
    ("G7", "C1", (1, 2), "1/2*(beta*gamma + alpha*delta + 2*delta^2)"),
])
def test_table_entries(group, kind, pair, expected):
    assert tensors(group, kind).rho_tilde[pair] == P(expected)


def test_symmetrisation():
    sym = ((P("alpha"), P("beta"), Poly()), (P("beta"), Poly(), Poly()), (Poly(), Poly(), P("lam")))
    assert ricci_symmetrized(sym).entries == sym
    asym = ((Poly(), P("alpha"), Poly()), (Poly(), Poly(), Poly()), (Poly(), Poly(), Poly()))
    assert ricci_symmetrized(asym)[0, 1] == P("alpha/2") == ricci_symmetrized(asym)[1, 0]


def test_symmetric_flag_is_checked():
    bad = ((Poly(), P("alpha"), Poly()), (Poly(), Poly(), Poly()), (Poly(), Poly(), Poly()))
    with pytest.raises(ValueError):
        SymTensor(bad)
    assert SymTensor(bad, symmetric=False)[0, 1] == P("alpha")


@pytest.mark.parametrize("group, kind, pair, delta", [
    ("G1", "C2", (1, 2), "lbar*alpha/2"),
    ("G4", "C2", (0, 2), "lbar/2"),
])
def test_perturbation_deltas(group, kind, pair, delta):
    base = {"C2": "C0", "C3": "C1"}[kind]
    d = tensors(group, kind).rho_tilde[pair] - tensors(group, base).rho_tilde[pair]
    assert d == P(delta)


def test_g7_perturbed_entry_gains_beta_lbar():
    d = tensors("G7", "C2").rho_tilde[0, 2] - tensors("G7", "C0").rho_tilde[0, 2]
    assert d == P("beta*lbar/2")

import pytest

from lorentz_solitons.connection import (
    KINDS, ConnectionKindError, _add_perturbation, canonical, connection, j_parallel_defect,
    kobayashi_nomizu, levi_civita, metric_defect, nabla_J, perturb, torsion_defect,
)
from lorentz_solitons.lie import BUILTIN_GROUPS, apply_J, get_presentation, vector
from lorentz_solitons.parse import parse_poly
from lorentz_solitons.poly import Poly
from lorentz_solitons.soliton import tensors

P = parse_poly
ABELIAN = get_presentation("abelian")
G1 = get_presentation("G1")


def zero_table(c):
    return all(x.is_zero() for row in c.gamma for v in row for x in v)


def test_abelian_connections_vanish():
    for kind in ("LC", "C0", "C1"):
        assert zero_table(connection(ABELIAN, kind))
    assert all(x.is_zero() for row in nabla_J(levi_civita(ABELIAN)) for v in row for x in v)


def test_g1_levi_civita():
    lc = levi_civita(G1)
    assert lc.gamma[0][0] == vector(0, P("-alpha"), P("-alpha"))
    diff = tuple(x - y for x, y in zip(lc.gamma[0][1], lc.gamma[1][0]))
    assert diff == vector(P("alpha"), 0, P("-beta"))


def test_g1_nabla_J_and_canonical():
    lc = levi_civita(G1)
    assert nabla_J(lc)[0][0] == vector(0, 0, P("-2*alpha"))
    assert canonical(lc).gamma[0][0] == vector(0, P("-alpha"), 0)


def test_lie_derivative_examples():
    assert tensors("G1", "C0").lie_derivative[0, 0] == P("2*l2*alpha")
    assert tensors("G1", "C1").lie_derivative[1, 2] == P("beta*l1 - alpha*l2 - alpha*l3")
    assert tensors("G6", "C1").lie_derivative[0, 2] == P("-delta*l3")


@pytest.mark.parametrize("group", BUILTIN_GROUPS + ("abelian",))
def test_levi_civita_identities(group):
    L = get_presentation(group)
    lc = levi_civita(L)
    assert torsion_defect(lc, L) == []
    assert metric_defect(lc) == []


@pytest.mark.parametrize("group", BUILTIN_GROUPS)
def test_nabla_J_anticommutes_with_J(group):
    nj = nabla_J(levi_civita(get_presentation(group)))
    s = (1, 1, -1)
    for i in range(3):
        for j in range(3):
            lhs = tuple(c * s[j] for c in nj[i][j])       # (nabla_i J)(J e_j)
            assert lhs == tuple(-c for c in apply_J(nj[i][j]))


@pytest.mark.parametrize("group", BUILTIN_GROUPS + ("abelian",))
@pytest.mark.parametrize("kind", ("C0", "C1", "C2", "C3"))
def test_J_is_parallel(group, kind):
    assert j_parallel_defect(connection(get_presentation(group), kind)) == []


@pytest.mark.parametrize("group", BUILTIN_GROUPS)
def test_perturbation_touches_one_entry(group):
    L = get_presentation(group)
    for base, pert in (("C0", "C2"), ("C1", "C3")):
        c, p = connection(L, base), connection(L, pert)
        assert p.kind == pert
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    d = p.gamma[i][j][k] - c.gamma[i][j][k]
                    assert d == (Poly.var("lbar") if (i, j, k) == (2, 2, 2) else Poly())


def test_abelian_perturbation():
    p = connection(ABELIAN, "C2")
    nonzero = [(i, j, k) for i in range(3) for j in range(3) for k in range(3)
               if not p.gamma[i][j][k].is_zero()]
    assert nonzero == [(2, 2, 2)]


def test_double_perturbation_adds_twice_but_is_forbidden():
    c0 = connection(G1, "C0")
    twice = _add_perturbation(_add_perturbation(c0, "C2"), "C2")
    assert twice.gamma[2][2][2] - c0.gamma[2][2][2] == 2 * Poly.var("lbar")
    with pytest.raises(ConnectionKindError):
        perturb(perturb(c0))


def test_kind_guards():
    lc = levi_civita(G1)
    with pytest.raises(ConnectionKindError):
        canonical(canonical(lc))
    with pytest.raises(ConnectionKindError):
        kobayashi_nomizu(canonical(lc), lc)
    with pytest.raises(ConnectionKindError):
        connection(G1, "C9")
    assert set(KINDS) == {"LC", "C0", "C1", "C2", "C3"}


def test_connection_json_shape():
    d = connection(G1, "C0").to_json()
    assert d["kind"] == "C0"
    assert len(d["gamma"]) == 3 and all(len(r) == 3 and all(len(v) == 3 for v in r) for r in d["gamma"])
    assert d["gamma"][0][0] == ["0", "-alpha", "0"]

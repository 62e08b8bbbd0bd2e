import pytest

from lorentz_solitons.parse import ParseError, parse_poly
from lorentz_solitons.reference import (
    GROUPS, KINDS, ReferenceError, all_discrepancies, check_system, compare_table,
    infer_shorthand, inferred_shorthands, load_reference, parse_reference, perturbation_delta,
    stated_delta,
)

P = parse_poly
PAIRS = [(g, k) for g in GROUPS for k in KINDS]


def test_inferred_a2():
    assert inferred_shorthands("G3") == {"a2": P("1/2*(alpha - beta + gamma)")}


def test_infer_requires_linear_template():
    with pytest.raises(ReferenceError):
        infer_shorthand("a2", "a2^2", P("alpha"), {})
    assert infer_shorthand("a2", "2*a2 + beta", P("alpha + beta"), {}) == P("alpha/2")


@pytest.mark.parametrize("group, kind", PAIRS)
def test_tables_match_up_to_whitelisted_misprints(group, kind):
    for where in ("ricci", "lie_derivative"):
        rep = compare_table(group, kind, where)
        assert rep.ok, [d.to_json() for d in rep.discrepancies]
        assert len(rep.entries) == 6


def test_lie_derivative_tables_have_no_discrepancies():
    for g, k in PAIRS:
        assert compare_table(g, k, "lie_derivative").discrepancies == []


def test_expected_discrepancies():
    found = {(d.group, d.kind, d.where) for d in all_discrepancies()}
    assert found == {("G3", "C0", "ricci 11"), ("G3", "C0", "ricci 22"),
                     ("G3", "C1", "ricci 11"), ("G2", "C2", "system 6")}
    assert all(d.whitelisted for d in all_discrepancies())
    d = next(d for d in all_discrepancies() if d.where == "ricci 11" and d.kind == "C1")
    assert d.printed == "lam*(a1 - a3)" and P(d.computed) == P("-beta*gamma")


@pytest.mark.parametrize("group, kind", [(g, k) for g in GROUPS for k in ("C2", "C3")])
def test_stated_deltas(group, kind):
    assert perturbation_delta(group, kind) == stated_delta(group, kind)


@pytest.mark.parametrize("group, kind", PAIRS)
def test_systems_match(group, kind):
    assert check_system(group, kind).ok


def test_perturbed_reference_inherits_base():
    ref = load_reference("G4", "C2")
    assert ref.base == "C0"


def test_wrong_erratum_is_not_whitelisted(monkeypatch):
    import lorentz_solitons.reference as R
    original = R.load_reference
    ref = original("G3", "C1")
    patched = R.Reference(**{**ref.__dict__, "errata": {("ricci", "11"): "gamma"}})
    monkeypatch.setattr(R, "load_reference",
                        lambda g, k: patched if (g, k) == ("G3", "C1") else original(g, k))
    (d,) = R.compare_table("G3", "C1", "ricci").discrepancies
    assert not d.whitelisted


def test_parse_reference_errors():
    with pytest.raises(ParseError):
        parse_reference("[meta]\ngroup = G1\nkind = C0\n[bogus]\n")
    with pytest.raises(ParseError):
        parse_reference("[ricci]\n14 = 0\n")
    with pytest.raises(ParseError):
        parse_reference("11 = 0\n")
    with pytest.raises(ReferenceError):
        parse_reference("[meta]\ngroup = G1\n")

"""Bundled reference tables and their comparison with computed tensors.

One ``.ref`` file per (group, kind) under ``data/reference``::

    [meta]
    group = G3
    kind = C1
    base = C0            # perturbed kinds only: unlisted entries equal the base kind
    infer = a2 from ricci 22

    [ricci]              # symmetrized Ricci entries, pair = poly
    11 = lam*(a1 - a3)
    [lie_derivative]     # entries of L_V g
    [system]             # one displayed equation per line (implicit "= 0")
    [errata]             # known misprints: "<section> <key> = <corrected>"

Entries are kept exactly as printed.  A printed value that disagrees with the
computed one is a discrepancy; it is whitelisted when an erratum line gives
the computed value as the corrected reading.

``infer = NAME from SECTION KEY`` recovers a shorthand that is used but never
defined: the printed entry must be linear in NAME, and NAME is solved for so
that the printed entry equals the computed one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .curvature import UPPER_PAIRS
from .lie import get_presentation
from .parse import ParseError, parse_poly
from .poly import UNIVERSE, Poly, divide
from .soliton import PAIR_LABELS, MatchReport, match_reference, tensors

SECTIONS = ("meta", "ricci", "lie_derivative", "system", "errata")


class ReferenceError(ValueError):
    pass


@dataclass
class Reference:
    group: str
    kind: str
    base: str | None = None
    infer: list[tuple[str, str, str]] = field(default_factory=list)
    ricci: dict[str, tuple[int, str]] = field(default_factory=dict)
    lie_derivative: dict[str, tuple[int, str]] = field(default_factory=dict)
    system: list[tuple[int, str]] = field(default_factory=list)
    errata: dict[tuple[str, str], str] = field(default_factory=dict)


def parse_reference(text: str) -> Reference:
    section = None
    meta: dict[str, list[str]] = {}
    ref = Reference("", "")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ParseError(f"unknown section [{section}]", lineno, 1)
            continue
        if section is None:
            raise ParseError("content before the first section header", lineno, 1)
        if section == "system":
            ref.system.append((lineno, line))
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, value = key.strip(), value.strip()
        if section == "meta":
            meta.setdefault(key, []).append(value)
        elif section in ("ricci", "lie_derivative"):
            if key not in PAIR_LABELS:
                raise ParseError(f"unknown pair {key!r}", lineno, 1)
            getattr(ref, section)[key] = (lineno, value)
        else:
            where, _, which = key.partition(" ")
            ref.errata[(where, which.strip())] = value
    try:
        ref.group = meta["group"][0]
        ref.kind = meta["kind"][0]
    except KeyError as exc:
        raise ReferenceError(f"reference file lacks meta field {exc}") from None
    ref.base = meta.get("base", [None])[0]
    for spec in meta.get("infer", []):
        name, _, rest = spec.partition(" from ")
        where, _, key = rest.strip().partition(" ")
        ref.infer.append((name.strip(), where, key.strip()))
    return ref


@lru_cache(maxsize=None)
def load_reference(group: str, kind: str) -> Reference:
    path = resources.files("lorentz_solitons") / "data" / "reference" / f"{group}_{kind}.ref"
    return parse_reference(path.read_text())


def infer_shorthand(name: str, template: str, target: Poly, env: dict[str, Poly]) -> Poly:
    """Solve ``template(name) == target`` for ``name``; ``template`` must be
    linear in ``name`` with an exactly dividing coefficient."""
    t = UNIVERSE.aux(1)
    p = parse_poly(template, {**env, name: Poly.var(t)})
    parts = p.coefficients_in(t)
    if set(parts) - {0, 1} or 1 not in parts:
        raise ReferenceError(f"{template!r} is not linear in {name}")
    c1, c0 = parts[1], parts.get(0, Poly())
    (q,), r = divide(target - c0, [c1])
    if not r.is_zero() or t in q.variables():
        raise ReferenceError(f"cannot solve {template!r} = {target} for {name}")
    return q


@lru_cache(maxsize=None)
def shorthand_env(group: str) -> dict[str, Poly]:
    """Declared shorthands of ``group`` plus those inferred from its tables."""
    env = dict(get_presentation(group).shorthand_env)
    for kind in ("C0", "C1"):
        ref = load_reference(group, kind)
        for name, where, key in ref.infer:
            table = _computed(group, kind, where)
            env[name] = infer_shorthand(name, getattr(ref, where)[key][1], table[key], env)
    return env


def inferred_shorthands(group: str) -> dict[str, Poly]:
    declared = get_presentation(group).shorthand_env
    return {k: v for k, v in shorthand_env(group).items() if k not in declared}


def _computed(group: str, kind: str, where: str) -> dict[str, Poly]:
    t = tensors(group, kind)
    table = t.rho_tilde if where == "ricci" else t.lie_derivative
    return {lbl: table[i, j] for lbl, (i, j) in zip(PAIR_LABELS, UPPER_PAIRS)}


# -- comparison -------------------------------------------------------------

@dataclass
class Discrepancy:
    group: str
    kind: str
    where: str          # "ricci 11", "system 6", ...
    printed: str
    computed: str
    whitelisted: bool

    def to_json(self) -> dict:
        return {"group": self.group, "kind": self.kind, "where": self.where,
                "printed": self.printed, "computed": self.computed,
                "whitelisted": self.whitelisted}


@dataclass
class EntryCheck:
    pair: str
    printed: Poly
    computed: Poly
    stated: bool        # False when inherited from the base kind

    @property
    def equal(self) -> bool:
        return self.printed == self.computed


@dataclass
class TableReport:
    group: str
    kind: str
    table: str
    entries: list[EntryCheck]
    discrepancies: list[Discrepancy]

    @property
    def ok(self) -> bool:
        return all(d.whitelisted for d in self.discrepancies)


def expected_table(group: str, kind: str, where: str) -> dict[str, tuple[str, bool]]:
    """Printed entries for ``where`` with the base kind filled in for perturbed kinds.

    Values are ``(text, stated)``.
    """
    ref = load_reference(group, kind)
    out: dict[str, tuple[str, bool]] = {}
    if ref.base is not None:
        base = expected_table(group, ref.base, where)
        out.update({k: (v, False) for k, (v, _) in base.items()})
    out.update({k: (v, True) for k, (_, v) in getattr(ref, where).items()})
    return out


def compare_table(group: str, kind: str, where: str) -> TableReport:
    env = shorthand_env(group)
    computed = _computed(group, kind, where)
    ref = load_reference(group, kind)
    entries, disc = [], []
    base = _computed(group, ref.base, where) if ref.base is not None else None
    for pair, (text, stated) in expected_table(group, kind, where).items():
        printed = parse_poly(text, env)
        entry = EntryCheck(pair, printed, computed[pair], stated)
        entries.append(entry)
        if entry.equal:
            continue
        if not stated and base is not None and base[pair] == computed[pair]:
            # inherited unchanged; any misprint is reported against the base kind
            continue
        fix = _erratum(group, kind, where, pair)
        disc.append(Discrepancy(
            group, kind, f"{where} {pair}", text, str(computed[pair]),
            fix is not None and parse_poly(fix, env) == computed[pair]))
    return TableReport(group, kind, where, entries, disc)


def _erratum(group: str, kind: str, where: str, key: str) -> str | None:
    ref = load_reference(group, kind)
    if (where, key) in ref.errata:
        return ref.errata[(where, key)]
    if ref.base is not None:
        return _erratum(group, ref.base, where, key)
    return None


def perturbation_delta(group: str, kind: str) -> dict[str, Poly]:
    """Nonzero entries of the symmetrized Ricci change caused by the perturbation."""
    base = {"C2": "C0", "C3": "C1"}[kind]
    a, b = tensors(group, kind).rho_tilde, tensors(group, base).rho_tilde
    out = {}
    for lbl, (i, j) in zip(PAIR_LABELS, UPPER_PAIRS):
        d = a[i, j] - b[i, j]
        if not d.is_zero():
            out[lbl] = d
    return out


def stated_delta(group: str, kind: str) -> dict[str, Poly]:
    """Entries stated to change under perturbation, as printed minus base printed."""
    ref = load_reference(group, kind)
    env = shorthand_env(group)
    base = expected_table(group, ref.base, "ricci")
    out = {}
    for pair, (_, text) in ref.ricci.items():
        d = parse_poly(text, env) - parse_poly(base[pair][0], env)
        if not d.is_zero():
            out[pair] = d
    return out


@dataclass
class SystemCheck:
    match: MatchReport
    discrepancies: list[Discrepancy]

    @property
    def ok(self) -> bool:
        return self.match.ok and all(d.whitelisted for d in self.discrepancies)


def reference_system(group: str, kind: str) -> tuple[list[Poly], list[Discrepancy]]:
    """Parsed reference equations with errata applied, and the applied errata."""
    ref = load_reference(group, kind)
    env = shorthand_env(group)
    eqs, disc = [], []
    for n, (lineno, text) in enumerate(ref.system, start=1):
        fix = ref.errata.get(("system", str(n)))
        if fix is None:
            eqs.append(parse_poly(text, env, line=lineno))
            continue
        corrected = parse_poly(fix, env, line=lineno)
        eqs.append(corrected)
        disc.append(Discrepancy(group, kind, f"system {n}", text, fix, True))
    return eqs, disc


def check_system(group: str, kind: str) -> SystemCheck:
    eqs, disc = reference_system(group, kind)
    report = match_reference(tensors(group, kind).system, eqs)
    # an erratum only stays whitelisted if the corrected line is actually hit
    for d in disc:
        n = int(d.where.split()[1]) - 1
        d.whitelisted = n not in report.unmatched_reference
    return SystemCheck(report, disc)


GROUPS = ("G1", "G2", "G3", "G4", "G5", "G6", "G7")
KINDS = ("C0", "C1", "C2", "C3")


def all_discrepancies(pairs=None) -> list[Discrepancy]:
    """Discrepancies for the given (group, kind) pairs, default all 28."""
    if pairs is None:
        pairs = [(g, k) for g in GROUPS for k in KINDS]
    out: list[Discrepancy] = []
    for g, k in pairs:
        for where in ("ricci", "lie_derivative"):
            out += compare_table(g, k, where).discrepancies
        out += check_system(g, k).discrepancies
    return out

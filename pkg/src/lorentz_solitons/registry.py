"""Bundled theorem registry (``data/theorems.yaml``)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import yaml

from .families import SolutionFamily, parse_family
from .reference import shorthand_env
from .soliton import SolitonSystem, build_system

VERDICTS = ("infeasible", "families")


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class Theorem:
    id: str
    group: str
    kind: str
    verdict: str
    proof: str | None = None
    families: tuple[SolutionFamily, ...] = ()
    notes: dict[str, str] = field(default_factory=dict)

    def system(self) -> SolitonSystem:
        return build_system(self.group, self.kind)

    def proof_text(self) -> str:
        if self.proof is None:
            raise RegistryError(f"theorem {self.id} has no bundled proof")
        return (resources.files("lorentz_solitons") / "data" / "proofs" / self.proof).read_text()


def _theorem(rec: dict) -> Theorem:
    try:
        tid, group, kind, verdict = (str(rec[k]) for k in ("id", "group", "kind", "verdict"))
    except KeyError as exc:
        raise RegistryError(f"theorem record lacks {exc}: {rec!r}") from None
    if verdict not in VERDICTS:
        raise RegistryError(f"theorem {tid}: unknown verdict {verdict!r}")
    fams, notes = [], {}
    env = shorthand_env(group)
    for f in rec.get("families", []) or []:
        label = str(f["label"])
        fams.append(parse_family(label, f.get("assign", []), f.get("equalities", []),
                                 f.get("inequations", []), env,
                                 build_system(group, kind).inequations))
        if "note" in f:
            notes[label] = str(f["note"])
    if verdict == "infeasible" and "proof" not in rec:
        raise RegistryError(f"theorem {tid}: infeasible verdict needs a proof file")
    if verdict == "families" and not fams:
        raise RegistryError(f"theorem {tid}: no families listed")
    return Theorem(tid, group, kind, verdict, rec.get("proof"), tuple(fams), notes)


def parse_registry(text: str) -> list[Theorem]:
    doc = yaml.safe_load(text) or {}
    return [_theorem(r) for r in doc.get("theorems", [])]


@lru_cache(maxsize=None)
def load_registry() -> tuple[Theorem, ...]:
    path = resources.files("lorentz_solitons") / "data" / "theorems.yaml"
    return tuple(parse_registry(path.read_text()))


def get_theorem(tid: str) -> Theorem:
    for t in load_registry():
        if t.id == tid:
            return t
    raise KeyError(f"unknown theorem {tid!r}")
